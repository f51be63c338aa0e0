#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <type_traits>
#include <utility>
#include <vector>

namespace tariffnet {

/// Dense row-major matrix. Small sizes only (n countries, n <= ~10).
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, T fill = T(0))
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < cols_; ++c) {
      std::swap((*this)(a, c), (*this)(b, c));
    }
  }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

/// q(i, j): quantity produced in country j and consumed in country i.
using FlowMatrix = Matrix<double>;

/// Gauss-Jordan elimination on a square system. Floating types use partial
/// pivoting and treat pivots below `singular_eps` (relative to the largest
/// entry) as zero; exact types pivot on the first nonzero entry.
/// Returns nullopt when the system is singular.
template <typename T>
std::optional<std::vector<T>> solve_linear(Matrix<T> a, std::vector<T> b,
                                           double singular_eps = 1e-12) {
  const std::size_t n = a.rows();
  if (!a.square() || b.size() != n) return std::nullopt;

  T norm = T(0);
  if constexpr (std::is_floating_point_v<T>) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t c = 0; c < n; ++c) norm = std::max(norm, std::abs(a(i, c)));
    }
  }

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = n;
    if constexpr (std::is_floating_point_v<T>) {
      T best = 0;
      for (std::size_t i = k; i < n; ++i) {
        if (std::abs(a(i, k)) > best) {
          best = std::abs(a(i, k));
          pivot = i;
        }
      }
      if (pivot == n || best <= singular_eps * norm) return std::nullopt;
    } else {
      for (std::size_t i = k; i < n; ++i) {
        if (a(i, k) != T(0)) {
          pivot = i;
          break;
        }
      }
      if (pivot == n) return std::nullopt;
    }
    a.swap_rows(k, pivot);
    std::swap(b[k], b[pivot]);

    const T inv = T(1) / a(k, k);
    for (std::size_t c = k; c < n; ++c) a(k, c) *= inv;
    b[k] *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || a(i, k) == T(0)) continue;
      const T factor = a(i, k);
      for (std::size_t c = k; c < n; ++c) a(i, c) -= factor * a(k, c);
      b[i] -= factor * b[k];
    }
  }
  return b;
}

}  // namespace tariffnet
