#include "numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "errors.hpp"

namespace spadimo {

namespace {

double frobenius(const SymmetricMatrix& s) {
  double acc = 0.0;
  const int d = s.dim();
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k) acc += s(j, k) * s(j, k);
  return std::sqrt(acc);
}

double off_diagonal_frobenius(const Matrix& a) {
  double acc = 0.0;
  const int d = a.rows();
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k)
      if (j != k) acc += a(j, k) * a(j, k);
  return std::sqrt(acc);
}

int rank_above(const Vector& eigenvalues, double rank_tolerance) {
  if (eigenvalues.empty()) return 0;
  const double lambda_max = eigenvalues.front();
  if (!(lambda_max > 0.0)) return 0;
  int r = 0;
  for (double v : eigenvalues)
    if (v > rank_tolerance * lambda_max) ++r;
  return r;
}

}  // namespace

SpectralDecomposition sym_eigen(const SymmetricMatrix& s, double rank_tolerance) {
  if (!s.all_finite()) raise(ErrorCode::InvalidInput, "sym_eigen: non-finite entries");
  if (!(rank_tolerance > 0.0 && rank_tolerance < 1.0))
    raise(ErrorCode::InvalidInput, "sym_eigen: rank_tolerance must be in (0, 1)");

  const int d = s.dim();
  Matrix a(d, d);
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k) a(j, k) = s(j, k);
  Matrix v(d, d, 0.0);
  for (int j = 0; j < d; ++j) v(j, j) = 1.0;

  const double target = 1e-12 * std::max(frobenius(s), std::numeric_limits<double>::min());
  const int max_sweeps = 64;
  for (int sweep = 0; sweep < max_sweeps && off_diagonal_frobenius(a) > target; ++sweep) {
    for (int p = 0; p < d - 1; ++p) {
      for (int q = p + 1; q < d; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * c;
        for (int k = 0; k < d; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - sn * akq;
          a(k, q) = sn * akp + c * akq;
        }
        for (int k = 0; k < d; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - sn * aqk;
          a(q, k) = sn * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (int k = 0; k < d; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - sn * vkq;
          v(k, q) = sn * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<int> order(static_cast<std::size_t>(d));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return a(x, x) > a(y, y); });

  SpectralDecomposition out;
  out.eigenvalues.resize(static_cast<std::size_t>(d));
  out.eigenvectors = Matrix(d, d);
  for (int k = 0; k < d; ++k) {
    const int src = order[static_cast<std::size_t>(k)];
    out.eigenvalues[static_cast<std::size_t>(k)] = a(src, src);
    for (int j = 0; j < d; ++j) out.eigenvectors(j, k) = v(j, src);
  }
  out.retained_rank = rank_above(out.eigenvalues, rank_tolerance);
  return out;
}

SpectralDecomposition spectral_from_rows(const Matrix& a, double rank_tolerance) {
  const int n = a.rows();
  const int p = a.cols();
  SymmetricMatrix gram(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) gram.set(i, j, dot(a.row(i), a.row(j)));

  SpectralDecomposition g = sym_eigen(gram, rank_tolerance);

  // Keep pairs above the numerical noise floor; near-zero Gram eigenvalues
  // produce unusable eigenvectors after the 1/sqrt(lambda) scaling.
  const double lambda_max = g.eigenvalues.empty() ? 0.0 : std::max(g.eigenvalues.front(), 0.0);
  const double floor = std::max(1e-14 * lambda_max, 0.0);
  int kept = 0;
  for (double lambda : g.eigenvalues)
    if (lambda > floor) ++kept;

  SpectralDecomposition out;
  out.eigenvalues.assign(g.eigenvalues.begin(), g.eigenvalues.begin() + kept);
  out.eigenvectors = Matrix(p, kept);
  for (int k = 0; k < kept; ++k) {
    const double inv = 1.0 / std::sqrt(out.eigenvalues[static_cast<std::size_t>(k)]);
    for (int j = 0; j < p; ++j) {
      double acc = 0.0;
      for (int i = 0; i < n; ++i) acc += a(i, j) * g.eigenvectors(i, k);
      out.eigenvectors(j, k) = acc * inv;
    }
  }
  out.retained_rank = rank_above(out.eigenvalues, rank_tolerance);
  return out;
}

Matrix cholesky_lower(const SymmetricMatrix& s) {
  if (!s.all_finite()) raise(ErrorCode::InvalidInput, "cholesky_lower: non-finite entries");
  const int d = s.dim();
  Matrix l(d, d, 0.0);
  const double floor = 1e-14 * std::max(s.max_abs(), std::numeric_limits<double>::min());
  for (int j = 0; j < d; ++j) {
    double diag = s(j, j);
    for (int k = 0; k < j; ++k) diag -= l(j, k) * l(j, k);
    if (!(diag > floor)) raise(ErrorCode::SingularMatrix, "cholesky_lower: matrix not positive-definite");
    const double ljj = std::sqrt(diag);
    l(j, j) = ljj;
    for (int i = j + 1; i < d; ++i) {
      double acc = s(i, j);
      for (int k = 0; k < j; ++k) acc -= l(i, k) * l(j, k);
      l(i, j) = acc / ljj;
    }
  }
  return l;
}

Vector solve_spd(const SymmetricMatrix& s, const Vector& b) {
  const int d = s.dim();
  if (static_cast<int>(b.size()) != d) raise(ErrorCode::InvalidInput, "solve_spd: size mismatch");
  const Matrix l = cholesky_lower(s);
  Vector y(b);
  for (int i = 0; i < d; ++i) {
    double acc = y[static_cast<std::size_t>(i)];
    for (int k = 0; k < i; ++k) acc -= l(i, k) * y[static_cast<std::size_t>(k)];
    y[static_cast<std::size_t>(i)] = acc / l(i, i);
  }
  for (int i = d - 1; i >= 0; --i) {
    double acc = y[static_cast<std::size_t>(i)];
    for (int k = i + 1; k < d; ++k) acc -= l(k, i) * y[static_cast<std::size_t>(k)];
    y[static_cast<std::size_t>(i)] = acc / l(i, i);
  }
  return y;
}

namespace {

double ln_gamma(double x) {
  static const double cof[14] = {57.1562356658629235,     -59.5979603554754912,
                                 14.1360979747417471,     -0.491913816097620199,
                                 0.339946499848118887e-4, 0.465236289270485756e-4,
                                 -0.983744753048795646e-4, 0.158088703224912494e-3,
                                 -0.210264441724104883e-3, 0.217439618115212643e-3,
                                 -0.164318106536763890e-3, 0.844182239838527433e-4,
                                 -0.261908384015814087e-4, 0.368991826595316234e-5};
  double y = x;
  double tmp = x + 5.24218750000000000;
  tmp = (x + 0.5) * std::log(tmp) - tmp;
  double ser = 0.999999999999997092;
  for (int j = 0; j < 14; ++j) ser += cof[j] / ++y;
  return tmp + std::log(2.5066282746310005 * ser / x);
}

// Series expansion, converges fastest for x < a + 1.
double gamma_p_series(double a, double x) {
  const double gln = ln_gamma(a);
  double ap = a;
  double sum = 1.0 / a;
  double del = sum;
  for (int i = 0; i < 10000; ++i) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::abs(del) < std::abs(sum) * 1e-16) break;
  }
  return sum * std::exp(-x + a * std::log(x) - gln);
}

// Lentz continued fraction for Q(a, x), preferred for x >= a + 1.
double gamma_q_cf(double a, double x) {
  const double gln = ln_gamma(a);
  const double fpmin = std::numeric_limits<double>::min() / 1e-30;
  double b = x + 1.0 - a;
  double c = 1.0 / fpmin;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 10000; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < fpmin) d = fpmin;
    c = b + an / c;
    if (std::abs(c) < fpmin) c = fpmin;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) break;
  }
  return std::exp(-x + a * std::log(x) - gln) * h;
}

// Acklam's rational approximation of the standard normal quantile; only used
// to seed the Newton iteration in chi2_quantile.
double normal_quantile_approx(double prob) {
  static const double a[6] = {-3.969683028665376e+01, 2.209460984245205e+02,  -2.759285104469687e+02,
                              1.383577518672690e+02,  -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[5] = {-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
                              6.680131188771972e+01,  -1.328068155288572e+01};
  static const double c[6] = {-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
                              -2.549732539343734e+00, 4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[4] = {7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
                              3.754408661907416e+00};
  const double plow = 0.02425;
  if (prob < plow) {
    const double q = std::sqrt(-2.0 * std::log(prob));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (prob > 1.0 - plow) {
    const double q = std::sqrt(-2.0 * std::log(1.0 - prob));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double q = prob - 0.5;
  const double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

}  // namespace

double gamma_p(double a, double x) {
  if (!(a > 0.0) || !(x >= 0.0) || !std::isfinite(a) || !std::isfinite(x))
    raise(ErrorCode::InvalidInput, "gamma_p: requires a > 0 and x >= 0");
  if (x == 0.0) return 0.0;
  if (x < a + 1.0) return gamma_p_series(a, x);
  return 1.0 - gamma_q_cf(a, x);
}

double chi2_quantile(double prob, int df) {
  if (!(prob > 0.0 && prob < 1.0)) raise(ErrorCode::InvalidInput, "chi2_quantile: prob must be in (0, 1)");
  if (df < 1) raise(ErrorCode::InvalidInput, "chi2_quantile: df must be >= 1");

  const double a = 0.5 * df;
  const double gln = ln_gamma(a);

  // Wilson-Hilferty starting point.
  const double z = normal_quantile_approx(prob);
  const double t = 1.0 - 2.0 / (9.0 * df) + z * std::sqrt(2.0 / (9.0 * df));
  double x = df * t * t * t;
  if (!(x > 0.0)) x = 0.5;

  double lo = 0.0;
  double hi = std::numeric_limits<double>::infinity();
  for (int iter = 0; iter < 200; ++iter) {
    const double f = gamma_p(a, 0.5 * x) - prob;
    if (f > 0.0)
      hi = std::min(hi, x);
    else
      lo = std::max(lo, x);
    if (std::abs(f) < 1e-14) break;
    // chi2 density at x
    const double logpdf = (a - 1.0) * std::log(0.5 * x) - 0.5 * x - gln - std::log(2.0);
    const double pdf = std::exp(logpdf);
    double next = x - f / pdf;
    if (!(pdf > 0.0) || !std::isfinite(next) || next <= lo || next >= hi) {
      next = std::isfinite(hi) ? 0.5 * (lo + hi) : 2.0 * std::max(x, 1.0);
    }
    if (std::abs(next - x) < 1e-13 * std::max(1.0, x)) {
      x = next;
      break;
    }
    x = next;
  }
  return x;
}

}  // namespace spadimo
