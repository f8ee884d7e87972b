#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"

namespace spadimo {

using Vector = std::vector<double>;

// Dense row-major matrix of doubles.
class Matrix {
public:
  Matrix() = default;
  Matrix(int rows, int cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), fill) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  double& operator()(int i, int j) { return data_[idx(i, j)]; }
  double operator()(int i, int j) const { return data_[idx(i, j)]; }

  double* row_ptr(int i) { return data_.data() + idx(i, 0); }
  const double* row_ptr(int i) const { return data_.data() + idx(i, 0); }
  std::span<const double> row(int i) const { return {row_ptr(i), static_cast<std::size_t>(cols_)}; }

  Vector column(int j) const {
    Vector out(static_cast<std::size_t>(rows_));
    for (int i = 0; i < rows_; ++i) out[static_cast<std::size_t>(i)] = (*this)(i, j);
    return out;
  }

  bool all_finite() const {
    for (double v : data_)
      if (!std::isfinite(v)) return false;
    return true;
  }

  const Vector& storage() const { return data_; }

private:
  std::size_t idx(int i, int j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(cols_) + static_cast<std::size_t>(j);
  }

  int rows_ = 0;
  int cols_ = 0;
  Vector data_;
};

// Symmetric matrix with full dense storage; set() keeps both triangles in sync.
class SymmetricMatrix {
public:
  SymmetricMatrix() = default;
  explicit SymmetricMatrix(int dim, double fill = 0.0)
      : dim_(dim), data_(static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim), fill) {
    if (dim < 1) raise(ErrorCode::InvalidInput, "symmetric matrix dimension must be >= 1");
  }

  static SymmetricMatrix identity(int dim) {
    SymmetricMatrix s(dim);
    for (int j = 0; j < dim; ++j) s.set(j, j, 1.0);
    return s;
  }

  int dim() const { return dim_; }

  double operator()(int j, int k) const { return data_[idx(j, k)]; }

  void set(int j, int k, double v) {
    data_[idx(j, k)] = v;
    data_[idx(k, j)] = v;
  }

  bool all_finite() const {
    for (double v : data_)
      if (!std::isfinite(v)) return false;
    return true;
  }

  double max_abs() const {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::abs(v));
    return m;
  }

  const double* data() const { return data_.data(); }
  double* data() { return data_.data(); }

private:
  std::size_t idx(int j, int k) const {
    return static_cast<std::size_t>(j) * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(k);
  }

  int dim_ = 0;
  Vector data_;
};

// n x p observation matrix with optional column labels.
struct DataMatrix {
  Matrix values;
  std::vector<std::string> column_names;  // empty, or exactly p entries

  int n() const { return values.rows(); }
  int p() const { return values.cols(); }

  // Header name when present, else the 1-based column index as text.
  std::string name_of(int j) const {
    if (!column_names.empty()) return column_names[static_cast<std::size_t>(j)];
    return std::to_string(j + 1);
  }

  void validate() const {
    if (n() < 2 || p() < 1) raise(ErrorCode::InvalidInput, "data matrix needs n >= 2 and p >= 1");
    if (!values.all_finite()) raise(ErrorCode::InvalidInput, "data matrix contains non-finite entries");
    if (!column_names.empty() && static_cast<int>(column_names.size()) != p())
      raise(ErrorCode::InvalidInput, "column name count does not match p");
  }
};

inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

inline Vector matvec(const SymmetricMatrix& s, const Vector& v) {
  const int d = s.dim();
  Vector out(static_cast<std::size_t>(d), 0.0);
  for (int j = 0; j < d; ++j) {
    double acc = 0.0;
    for (int k = 0; k < d; ++k) acc += s(j, k) * v[static_cast<std::size_t>(k)];
    out[static_cast<std::size_t>(j)] = acc;
  }
  return out;
}

}  // namespace spadimo
