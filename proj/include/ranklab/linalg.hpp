#pragma once

// Dense matrices over an exact coefficient ring, with Gaussian elimination
// for field rings and division-free Laplace determinants for integral
// domains. Pivot choice is always the first nonzero entry in scan order, so
// every routine is deterministic.

#include <optional>
#include <utility>
#include <vector>

#include "ranklab/common.hpp"

namespace ranklab {

template <class R>
class Matrix {
 public:
  using Element = typename R::Element;

  Matrix(const R& ring, int rows, int cols)
      : ring_(ring),
        rows_(rows),
        cols_(cols),
        data_(static_cast<std::size_t>(rows) * cols, ring.zero()) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix shape");
  }

  static Matrix identity(const R& ring, int n) {
    Matrix m(ring, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = ring.one();
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const R& ring() const { return ring_; }

  Element& at(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
  const Element& at(int i, int j) const {
    return data_[static_cast<std::size_t>(i) * cols_ + j];
  }

  Matrix multiply(const Matrix& other) const {
    if (cols_ != other.rows_) throw std::invalid_argument("matrix shape mismatch");
    Matrix out(ring_, rows_, other.cols_);
    for (int i = 0; i < rows_; ++i) {
      for (int k = 0; k < cols_; ++k) {
        const Element& a = at(i, k);
        if (ring_.is_zero(a)) continue;
        for (int j = 0; j < other.cols_; ++j) {
          out.at(i, j) = ring_.add(out.at(i, j), ring_.mul(a, other.at(k, j)));
        }
      }
    }
    return out;
  }

  std::vector<Element> apply(const std::vector<Element>& x) const {
    if (static_cast<int>(x.size()) != cols_) {
      throw std::invalid_argument("vector length mismatch");
    }
    std::vector<Element> y(static_cast<std::size_t>(rows_), ring_.zero());
    for (int i = 0; i < rows_; ++i) {
      for (int j = 0; j < cols_; ++j) {
        y[i] = ring_.add(y[i], ring_.mul(at(i, j), x[j]));
      }
    }
    return y;
  }

  Matrix transposed() const {
    Matrix out(ring_, cols_, rows_);
    for (int i = 0; i < rows_; ++i) {
      for (int j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
    }
    return out;
  }

  bool operator==(const Matrix& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_) return false;
    for (std::size_t i = 0; i < data_.size(); ++i) {
      if (!ring_.eq(data_[i], other.data_[i])) return false;
    }
    return true;
  }

 private:
  R ring_;
  int rows_;
  int cols_;
  std::vector<Element> data_;
};

// In-place reduced row echelon form; returns the rank. Field rings only.
template <class R>
int row_reduce(Matrix<R>& m, std::vector<int>* pivot_cols = nullptr) {
  static_assert(R::kIsField, "row reduction needs a field");
  const R& ring = m.ring();
  int r = 0;
  for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
    int pr = -1;
    for (int i = r; i < m.rows(); ++i) {
      if (!ring.is_zero(m.at(i, c))) {
        pr = i;
        break;
      }
    }
    if (pr < 0) continue;
    if (pr != r) {
      for (int j = 0; j < m.cols(); ++j) std::swap(m.at(pr, j), m.at(r, j));
    }
    const auto piv_inv = ring.inv(m.at(r, c));
    for (int j = c; j < m.cols(); ++j) m.at(r, j) = ring.mul(m.at(r, j), piv_inv);
    for (int i = 0; i < m.rows(); ++i) {
      if (i == r || ring.is_zero(m.at(i, c))) continue;
      const auto f = m.at(i, c);
      for (int j = c; j < m.cols(); ++j) {
        m.at(i, j) = ring.sub(m.at(i, j), ring.mul(f, m.at(r, j)));
      }
    }
    if (pivot_cols != nullptr) pivot_cols->push_back(c);
    ++r;
  }
  return r;
}

template <class R>
int matrix_rank(Matrix<R> m) {
  return row_reduce(m);
}

// Factors out one solve matrix so many right-hand sides share the reduction:
// keeps E with E*A in reduced row echelon form.
template <class R>
class LinearSolver {
 public:
  using Element = typename R::Element;

  explicit LinearSolver(const Matrix<R>& a)
      : ring_(a.ring()), rref_(a), ops_(Matrix<R>::identity(a.ring(), a.rows())) {
    int r = 0;
    for (int c = 0; c < rref_.cols() && r < rref_.rows(); ++c) {
      int pr = -1;
      for (int i = r; i < rref_.rows(); ++i) {
        if (!ring_.is_zero(rref_.at(i, c))) {
          pr = i;
          break;
        }
      }
      if (pr < 0) continue;
      if (pr != r) {
        for (int j = 0; j < rref_.cols(); ++j) std::swap(rref_.at(pr, j), rref_.at(r, j));
        for (int j = 0; j < ops_.cols(); ++j) std::swap(ops_.at(pr, j), ops_.at(r, j));
      }
      const auto piv_inv = ring_.inv(rref_.at(r, c));
      for (int j = 0; j < rref_.cols(); ++j) {
        rref_.at(r, j) = ring_.mul(rref_.at(r, j), piv_inv);
      }
      for (int j = 0; j < ops_.cols(); ++j) {
        ops_.at(r, j) = ring_.mul(ops_.at(r, j), piv_inv);
      }
      for (int i = 0; i < rref_.rows(); ++i) {
        if (i == r || ring_.is_zero(rref_.at(i, c))) continue;
        const auto f = rref_.at(i, c);
        for (int j = 0; j < rref_.cols(); ++j) {
          rref_.at(i, j) = ring_.sub(rref_.at(i, j), ring_.mul(f, rref_.at(r, j)));
        }
        for (int j = 0; j < ops_.cols(); ++j) {
          ops_.at(i, j) = ring_.sub(ops_.at(i, j), ring_.mul(f, ops_.at(r, j)));
        }
      }
      pivot_cols_.push_back(c);
      ++r;
    }
  }

  int rank() const { return static_cast<int>(pivot_cols_.size()); }

  // Particular solution with free variables zero, or nullopt.
  std::optional<std::vector<Element>> solve(const std::vector<Element>& b) const {
    const auto y = ops_.apply(b);
    for (int i = rank(); i < rref_.rows(); ++i) {
      if (!ring_.is_zero(y[i])) return std::nullopt;
    }
    std::vector<Element> x(static_cast<std::size_t>(rref_.cols()), ring_.zero());
    for (int i = 0; i < rank(); ++i) x[pivot_cols_[i]] = y[i];
    return x;
  }

 private:
  R ring_;
  Matrix<R> rref_;
  Matrix<R> ops_;
  std::vector<int> pivot_cols_;
};

template <class R>
std::vector<std::vector<typename R::Element>> nullspace_basis(Matrix<R> m) {
  const R ring = m.ring();
  std::vector<int> pivots;
  const int rank = row_reduce(m, &pivots);
  std::vector<std::vector<typename R::Element>> basis;
  std::vector<bool> is_pivot(static_cast<std::size_t>(m.cols()), false);
  for (int c : pivots) is_pivot[c] = true;
  for (int c = 0; c < m.cols(); ++c) {
    if (is_pivot[c]) continue;
    std::vector<typename R::Element> v(static_cast<std::size_t>(m.cols()), ring.zero());
    v[c] = ring.one();
    for (int i = 0; i < rank; ++i) v[pivots[i]] = ring.neg(m.at(i, c));
    basis.push_back(std::move(v));
  }
  return basis;
}

// Writes A as a sum of rank(A) outer products u*v^T; pairs are produced in a
// deterministic scan order. Field rings only.
template <class R>
std::vector<std::pair<std::vector<typename R::Element>,
                      std::vector<typename R::Element>>>
rank_one_decomposition(Matrix<R> a) {
  static_assert(R::kIsField, "rank-one peeling needs a field");
  const R ring = a.ring();
  std::vector<std::pair<std::vector<typename R::Element>,
                        std::vector<typename R::Element>>>
      terms;
  for (;;) {
    int pr = -1, pc = -1;
    for (int i = 0; i < a.rows() && pr < 0; ++i) {
      for (int j = 0; j < a.cols(); ++j) {
        if (!ring.is_zero(a.at(i, j))) {
          pr = i;
          pc = j;
          break;
        }
      }
    }
    if (pr < 0) break;
    const auto piv_inv = ring.inv(a.at(pr, pc));
    std::vector<typename R::Element> u(static_cast<std::size_t>(a.rows()));
    std::vector<typename R::Element> v(static_cast<std::size_t>(a.cols()));
    for (int i = 0; i < a.rows(); ++i) u[i] = ring.mul(a.at(i, pc), piv_inv);
    for (int j = 0; j < a.cols(); ++j) v[j] = a.at(pr, j);
    for (int i = 0; i < a.rows(); ++i) {
      if (ring.is_zero(u[i])) continue;
      for (int j = 0; j < a.cols(); ++j) {
        a.at(i, j) = ring.sub(a.at(i, j), ring.mul(u[i], v[j]));
      }
    }
    terms.emplace_back(std::move(u), std::move(v));
  }
  return terms;
}

// Laplace expansion along the first column; works over any commutative ring.
template <class R>
typename R::Element determinant_laplace(const Matrix<R>& m) {
  const R& ring = m.ring();
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square");
  const int n = m.rows();
  if (n == 0) return ring.one();
  if (n == 1) return m.at(0, 0);
  auto res = ring.zero();
  for (int i = 0; i < n; ++i) {
    if (ring.is_zero(m.at(i, 0))) continue;
    Matrix<R> sub(ring, n - 1, n - 1);
    for (int r = 0, sr = 0; r < n; ++r) {
      if (r == i) continue;
      for (int c = 1; c < n; ++c) sub.at(sr, c - 1) = m.at(r, c);
      ++sr;
    }
    auto term = ring.mul(m.at(i, 0), determinant_laplace(sub));
    if (i % 2 == 1) term = ring.neg(term);
    res = ring.add(res, term);
  }
  return res;
}

// Tests linear independence over the fraction field of an integral domain by
// searching for a nonzero maximal minor.
template <class R>
bool rows_independent(const R& ring, const std::vector<std::vector<typename R::Element>>& rows) {
  if (rows.empty()) return true;
  const int k = static_cast<int>(rows.size());
  const int n = static_cast<int>(rows[0].size());
  if (k > n) return false;
  std::vector<int> cols(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) cols[i] = i;
  for (;;) {
    Matrix<R> sub(ring, k, k);
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < k; ++j) sub.at(i, j) = rows[i][cols[j]];
    }
    if (!ring.is_zero(determinant_laplace(sub))) return true;
    int i = k - 1;
    while (i >= 0 && cols[i] == n - k + i) --i;
    if (i < 0) return false;
    ++cols[i];
    for (int j = i + 1; j < k; ++j) cols[j] = cols[j - 1] + 1;
  }
}

}  // namespace ranklab
