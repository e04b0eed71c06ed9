#pragma once

#include <optional>
#include <vector>

#include "ipsforge/gf.hpp"

namespace ipsforge::linalg {

using gf::Field;
using gf::FieldElem;

class Matrix {
 public:
  Matrix(const Field& f, std::size_t rows, std::size_t cols)
      : f_(&f), rows_(rows), cols_(cols), a_(rows * cols, f.zero()) {}

  const Field& field() const { return *f_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  FieldElem& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  const FieldElem& at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

  Matrix transposed() const {
    Matrix t(*f_, cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
    return t;
  }

 private:
  const Field* f_;
  std::size_t rows_, cols_;
  std::vector<FieldElem> a_;
};

// In-place reduced row echelon form. Pivot columns are taken left to right and
// the pivot row is the first remaining row with a nonzero entry. Returns the
// pivot column of each pivot row.
inline std::vector<std::size_t> rref(Matrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < m.cols() && row < m.rows(); ++c) {
    std::size_t sel = row;
    while (sel < m.rows() && m.at(sel, c).is_zero()) ++sel;
    if (sel == m.rows()) continue;
    if (sel != row)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(sel, j), m.at(row, j));
    const FieldElem iv = m.at(row, c).inv();
    for (std::size_t j = c; j < m.cols(); ++j)
      if (!m.at(row, j).is_zero()) m.at(row, j) *= iv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || m.at(r, c).is_zero()) continue;
      const FieldElem f = m.at(r, c);
      for (std::size_t j = c; j < m.cols(); ++j)
        if (!m.at(row, j).is_zero()) m.at(r, j) -= f * m.at(row, j);
    }
    pivots.push_back(c);
    ++row;
  }
  return pivots;
}

inline std::size_t rank(Matrix m) { return rref(m).size(); }

// Solves m x = b. Free variables are set to zero, so the answer is unique
// given the column order.
inline std::optional<std::vector<FieldElem>> solve(const Matrix& m, const std::vector<FieldElem>& b) {
  Matrix aug(m.field(), m.rows(), m.cols() + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) aug.at(r, c) = m.at(r, c);
    aug.at(r, m.cols()) = b[r];
  }
  const auto pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;
  std::vector<FieldElem> x(m.cols(), m.field().zero());
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug.at(i, m.cols());
  return x;
}

inline std::optional<Matrix> inverse(const Matrix& m) {
  const std::size_t n = m.rows();
  if (m.cols() != n) return std::nullopt;
  Matrix aug(m.field(), n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug.at(r, c) = m.at(r, c);
    aug.at(r, n + r) = m.field().one();
  }
  const auto pivots = rref(aug);
  if (pivots.size() < n || (n > 0 && pivots[n - 1] != n - 1)) return std::nullopt;
  Matrix inv(m.field(), n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) inv.at(r, c) = aug.at(r, n + c);
  return inv;
}

}  // namespace ipsforge::linalg
