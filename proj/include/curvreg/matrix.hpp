#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "rng.hpp"

namespace curvreg {

/// Dense row-major matrix. An Embedding is a Matrix whose row i is the
/// representation x_i of node i.
struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(int r, int c, double fill = 0.0)
      : rows(r), cols(c), data(static_cast<std::size_t>(r) * static_cast<std::size_t>(c), fill) {
    if (r < 0 || c < 0) throw std::invalid_argument("Matrix: negative shape");
  }

  std::span<double> row(int i) {
    return {data.data() + static_cast<std::size_t>(i) * cols, static_cast<std::size_t>(cols)};
  }
  std::span<const double> row(int i) const {
    return {data.data() + static_cast<std::size_t>(i) * cols, static_cast<std::size_t>(cols)};
  }

  double& at(int i, int j) { return data[static_cast<std::size_t>(i) * cols + j]; }
  double at(int i, int j) const { return data[static_cast<std::size_t>(i) * cols + j]; }

  void set_zero() { std::fill(data.begin(), data.end(), 0.0); }

  bool all_finite() const {
    for (double v : data)
      if (!std::isfinite(v)) return false;
    return true;
  }

  bool empty() const { return rows == 0 || cols == 0; }
};

inline double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: dimension mismatch");
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

/// y += a * x
inline void axpy(double a, std::span<const double> x, std::span<double> y) {
  for (std::size_t k = 0; k < x.size(); ++k) y[k] += a * x[k];
}

/// B += a * A, elementwise over whole matrices.
inline void add_scaled(Matrix& b, double a, const Matrix& x) {
  if (b.rows != x.rows || b.cols != x.cols)
    throw std::invalid_argument("add_scaled: shape mismatch");
  for (std::size_t k = 0; k < b.data.size(); ++k) b.data[k] += a * x.data[k];
}

inline Matrix random_matrix(int rows, int cols, double lo, double hi, std::uint64_t seed) {
  Matrix m(rows, cols);
  Rng rng(seed);
  for (double& v : m.data) v = lo + (hi - lo) * rng.next_double();
  return m;
}

/// Shortest round-trippable decimal form; used everywhere a double reaches a
/// file so re-runs are byte-identical.
inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// Text matrix format: first line "n d", then one space-separated row per node
/// in internal-id order.
inline void save_matrix_text(std::ostream& os, const Matrix& m) {
  os << m.rows << ' ' << m.cols << '\n';
  for (int i = 0; i < m.rows; ++i) {
    auto r = m.row(i);
    for (int j = 0; j < m.cols; ++j) {
      if (j) os << ' ';
      os << format_double(r[j]);
    }
    os << '\n';
  }
}

inline Matrix load_matrix_text(std::istream& is) {
  int rows = 0, cols = 0;
  if (!(is >> rows >> cols) || rows < 0 || cols < 0)
    throw std::runtime_error("embedding file: bad header, expected \"n d\"");
  Matrix m(rows, cols);
  for (double& v : m.data)
    if (!(is >> v)) throw std::runtime_error("embedding file: truncated matrix body");
  return m;
}

}  // namespace curvreg
