#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "dht/error.hpp"

namespace dht {

using Int = boost::multiprecision::cpp_int;

/// Dense row-major integer matrix.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), a_(rows * cols) {}

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static IntMatrix from_rows(const std::vector<std::vector<long long>>& rows) {
    IntMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t i = 0; i < m.r_; ++i)
      for (std::size_t j = 0; j < m.c_; ++j) m(i, j) = rows[i].at(j);
    return m;
  }

  std::size_t rows() const noexcept { return r_; }
  std::size_t cols() const noexcept { return c_; }
  Int& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
  const Int& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

  bool is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](const Int& x) { return x == 0; });
  }

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < c_; ++k) std::swap((*this)(i, k), (*this)(j, k));
  }
  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < r_; ++k) std::swap((*this)(k, i), (*this)(k, j));
  }
  /// row_i += q * row_j
  void add_row(std::size_t i, std::size_t j, const Int& q) {
    if (q == 0) return;
    for (std::size_t k = 0; k < c_; ++k)
      if ((*this)(j, k) != 0) (*this)(i, k) += q * (*this)(j, k);
  }
  /// col_i += q * col_j
  void add_col(std::size_t i, std::size_t j, const Int& q) {
    if (q == 0) return;
    for (std::size_t k = 0; k < r_; ++k)
      if ((*this)(k, j) != 0) (*this)(k, i) += q * (*this)(k, j);
  }
  void negate_row(std::size_t i) {
    for (std::size_t k = 0; k < c_; ++k) (*this)(i, k) = -(*this)(i, k);
  }
  void negate_col(std::size_t j) {
    for (std::size_t k = 0; k < r_; ++k) (*this)(k, j) = -(*this)(k, j);
  }

  friend IntMatrix operator*(const IntMatrix& x, const IntMatrix& y) {
    if (x.c_ != y.r_) throw Error(Errc::DimensionMismatch, "matrix product shape mismatch");
    IntMatrix z(x.r_, y.c_);
    for (std::size_t i = 0; i < x.r_; ++i)
      for (std::size_t k = 0; k < x.c_; ++k) {
        const Int& xik = x(i, k);
        if (xik == 0) continue;
        for (std::size_t j = 0; j < y.c_; ++j)
          if (y(k, j) != 0) z(i, j) += xik * y(k, j);
      }
    return z;
  }

  friend bool operator==(const IntMatrix& x, const IntMatrix& y) {
    return x.r_ == y.r_ && x.c_ == y.c_ && x.a_ == y.a_;
  }

 private:
  std::size_t r_ = 0, c_ = 0;
  std::vector<Int> a_;
};

/// Bareiss fraction-free determinant.
inline Int determinant(IntMatrix m) {
  if (m.rows() != m.cols()) throw Error(Errc::DimensionMismatch, "determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  Int sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      m.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

/// U * M * V = D with U, V unimodular; inverses are tracked alongside.
struct SmithForm {
  IntMatrix D, U, V, Uinv, Vinv;
  std::size_t rank = 0;
  std::vector<Int> diagonal;  // the rank nonzero entries, each dividing the next
};

/// Smith normal form by pivoting on the entry of least absolute value.
/// With `transforms` false only D, rank and the diagonal are filled.
inline SmithForm smith_normal_form(const IntMatrix& M, bool transforms = true) {
  SmithForm s;
  s.D = M;
  const std::size_t R = M.rows(), C = M.cols();
  if (transforms) {
    s.U = s.Uinv = IntMatrix::identity(R);
    s.V = s.Vinv = IntMatrix::identity(C);
  }
  IntMatrix& A = s.D;
  auto row_swap = [&](std::size_t i, std::size_t j) {
    A.swap_rows(i, j);
    if (transforms) {
      s.U.swap_rows(i, j);
      s.Uinv.swap_cols(i, j);
    }
  };
  auto col_swap = [&](std::size_t i, std::size_t j) {
    A.swap_cols(i, j);
    if (transforms) {
      s.V.swap_cols(i, j);
      s.Vinv.swap_rows(i, j);
    }
  };
  // row_i += q row_j
  auto row_add = [&](std::size_t i, std::size_t j, const Int& q) {
    A.add_row(i, j, q);
    if (transforms) {
      s.U.add_row(i, j, q);
      s.Uinv.add_col(j, i, -q);
    }
  };
  // col_i += q col_j
  auto col_add = [&](std::size_t i, std::size_t j, const Int& q) {
    A.add_col(i, j, q);
    if (transforms) {
      s.V.add_col(i, j, q);
      s.Vinv.add_row(j, i, -q);
    }
  };
  auto row_neg = [&](std::size_t i) {
    A.negate_row(i);
    if (transforms) {
      s.U.negate_row(i);
      s.Uinv.negate_col(i);
    }
  };

  const std::size_t lim = std::min(R, C);
  for (std::size_t t = 0; t < lim; ++t) {
    // smallest nonzero entry of the trailing block
    std::size_t pi = R, pj = C;
    Int best;
    for (std::size_t i = t; i < R; ++i)
      for (std::size_t j = t; j < C; ++j)
        if (A(i, j) != 0 && (pi == R || abs(A(i, j)) < best)) {
          best = abs(A(i, j));
          pi = i;
          pj = j;
        }
    if (pi == R) break;
    row_swap(t, pi);
    col_swap(t, pj);
    while (true) {
      bool dirty = false;
      for (std::size_t i = t + 1; i < R; ++i)
        if (A(i, t) != 0) {
          Int q = A(i, t) / A(t, t);
          row_add(i, t, -q);
          if (A(i, t) != 0) dirty = true;
        }
      for (std::size_t j = t + 1; j < C; ++j)
        if (A(t, j) != 0) {
          Int q = A(t, j) / A(t, t);
          col_add(j, t, -q);
          if (A(t, j) != 0) dirty = true;
        }
      if (dirty) {
        // move the smallest remainder in row/column t to the pivot
        std::size_t bi = t, bj = t;
        Int b = abs(A(t, t));
        for (std::size_t i = t + 1; i < R; ++i)
          if (A(i, t) != 0 && abs(A(i, t)) < b) {
            b = abs(A(i, t));
            bi = i;
            bj = t;
          }
        for (std::size_t j = t + 1; j < C; ++j)
          if (A(t, j) != 0 && abs(A(t, j)) < b) {
            b = abs(A(t, j));
            bi = t;
            bj = j;
          }
        row_swap(t, bi);
        col_swap(t, bj);
        continue;
      }
      // divisibility: fold in a row holding a non-multiple
      std::size_t bad = R;
      for (std::size_t i = t + 1; i < R && bad == R; ++i)
        for (std::size_t j = t + 1; j < C; ++j)
          if (A(i, j) % A(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad == R) break;
      row_add(t, bad, 1);
    }
    if (A(t, t) < 0) row_neg(t);
    s.diagonal.push_back(A(t, t));
    ++s.rank;
  }
  return s;
}

inline bool divisibility_chain(const std::vector<Int>& d) {
  for (std::size_t i = 0; i + 1 < d.size(); ++i)
    if (d[i] == 0 || d[i + 1] % d[i] != 0) return false;
  return std::all_of(d.begin(), d.end(), [](const Int& x) { return x > 0; });
}

/// Checks U*M*V = D, |det U| = |det V| = 1, D diagonal with a divisibility
/// chain, and that the stored inverses are inverses.
inline Verdict check_smith(const IntMatrix& M, const SmithForm& s) {
  if (!(s.U * M * s.V == s.D)) return Verdict::fail("U*M*V != D");
  for (std::size_t i = 0; i < s.D.rows(); ++i)
    for (std::size_t j = 0; j < s.D.cols(); ++j)
      if (i != j && s.D(i, j) != 0) return Verdict::fail("D is not diagonal");
  for (std::size_t i = 0; i < std::min(s.D.rows(), s.D.cols()); ++i) {
    bool nz = i < s.rank;
    if (nz != (s.D(i, i) != 0)) return Verdict::fail("nonzero diagonal entries are not leading");
  }
  if (!divisibility_chain(s.diagonal)) return Verdict::fail("diagonal is not a divisibility chain");
  if (abs(determinant(s.U)) != 1) return Verdict::fail("U is not unimodular");
  if (abs(determinant(s.V)) != 1) return Verdict::fail("V is not unimodular");
  if (!(s.U * s.Uinv == IntMatrix::identity(s.U.rows()))) return Verdict::fail("Uinv is wrong");
  if (!(s.V * s.Vinv == IntMatrix::identity(s.V.rows()))) return Verdict::fail("Vinv is wrong");
  return Verdict::pass();
}

// ---- sparse elimination ------------------------------------------------

/// Sparse integer matrix given by triplets; duplicates are summed.
struct SparseMatrix {
  std::size_t rows = 0, cols = 0;
  std::vector<std::pair<std::size_t, std::size_t>> pos;
  std::vector<long long> val;

  void add(std::size_t r, std::size_t c, long long v) {
    pos.emplace_back(r, c);
    val.push_back(v);
  }
};

/// Rank and the invariant factors > 1 of an integer matrix.
struct InvariantFactors {
  std::size_t rank = 0;
  std::vector<Int> torsion;  // invariant factors different from 1, ascending
};

namespace detail {

struct Overflow {};

inline long long checked_mul(long long a, long long b) {
  long long r;
  if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
  return r;
}
inline long long checked_sub(long long a, long long b) {
  long long r;
  if (__builtin_sub_overflow(a, b, &r)) throw Overflow{};
  return r;
}
inline Int checked_mul(const Int& a, const Int& b) { return a * b; }
inline Int checked_sub(const Int& a, const Int& b) { return a - b; }

template <class T>
bool is_unit(const T& x) {
  return x == 1 || x == -1;
}

/// Unit-pivot Schur elimination over the "row" side (the smaller side),
/// then dense Smith form of whatever is left.
template <class T>
InvariantFactors sparse_factors(const SparseMatrix& m) {
  const bool transpose = m.rows > m.cols;
  const std::size_t R = transpose ? m.cols : m.rows;
  const std::size_t C = transpose ? m.rows : m.cols;
  using Row = std::vector<std::pair<std::size_t, T>>;
  std::vector<Row> rows(R);
  {
    std::vector<std::tuple<std::size_t, std::size_t, long long>> trip;
    trip.reserve(m.pos.size());
    for (std::size_t k = 0; k < m.pos.size(); ++k) {
      auto [r, c] = m.pos[k];
      if (transpose) std::swap(r, c);
      trip.emplace_back(r, c, m.val[k]);
    }
    std::sort(trip.begin(), trip.end());
    for (std::size_t k = 0; k < trip.size();) {
      auto [r, c, v] = trip[k];
      long long sum = 0;
      while (k < trip.size() && std::get<0>(trip[k]) == r && std::get<1>(trip[k]) == c) sum += std::get<2>(trip[k++]);
      if (sum != 0) rows[r].emplace_back(c, T(sum));
    }
  }
  std::vector<std::vector<std::size_t>> colrows(C);  // may hold stale entries
  for (std::size_t r = 0; r < R; ++r)
    for (const auto& [c, v] : rows[r]) colrows[c].push_back(r);
  std::vector<bool> alive(R, true);
  std::vector<std::size_t> colcount(C, 0);
  for (std::size_t c = 0; c < C; ++c) colcount[c] = colrows[c].size();

  InvariantFactors out;
  auto entry = [&](std::size_t r, std::size_t c) -> const T* {
    const Row& row = rows[r];
    auto it = std::lower_bound(row.begin(), row.end(), c, [](const auto& e, std::size_t x) { return e.first < x; });
    if (it == row.end() || it->first != c) return nullptr;
    return &it->second;
  };

  using QE = std::pair<std::size_t, std::size_t>;  // (length, row)
  std::priority_queue<QE, std::vector<QE>, std::greater<>> pq;
  for (std::size_t r = 0; r < R; ++r)
    if (!rows[r].empty()) pq.emplace(rows[r].size(), r);
  Row merged;
  while (!pq.empty()) {
    auto [len, r] = pq.top();
    pq.pop();
    if (!alive[r] || rows[r].size() != len || rows[r].empty()) continue;
    // unit entry whose column is sparsest
    std::size_t pc = C;
    for (const auto& [c, v] : rows[r])
      if (is_unit(v) && (pc == C || colcount[c] < colcount[pc])) pc = c;
    if (pc == C) continue;  // no unit here; left for the dense phase
    alive[r] = false;
    ++out.rank;
    const T piv = *entry(r, pc);
    std::vector<std::size_t> touched;
    for (std::size_t i : colrows[pc])
      if (alive[i] && entry(i, pc)) touched.push_back(i);
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
    for (std::size_t i : touched) {
      // row_i -= (a_i,pc / piv) * row_r, piv = ±1
      T q = *entry(i, pc);
      if (piv == -1) q = -q;
      merged.clear();
      const Row& a = rows[i];
      const Row& b = rows[r];
      std::size_t x = 0, y = 0;
      while (x < a.size() || y < b.size()) {
        if (y == b.size() || (x < a.size() && a[x].first < b[y].first)) {
          merged.push_back(a[x++]);
        } else if (x == a.size() || b[y].first < a[x].first) {
          T v = checked_sub(T(0), checked_mul(q, b[y].second));
          colrows[b[y].first].push_back(i);
          ++colcount[b[y].first];
          merged.emplace_back(b[y].first, v);
          ++y;
        } else {
          T v = checked_sub(a[x].second, checked_mul(q, b[y].second));
          if (v != 0) merged.emplace_back(a[x].first, v);
          else --colcount[a[x].first];
          ++x;
          ++y;
        }
      }
      rows[i].swap(merged);
      if (!rows[i].empty()) pq.emplace(rows[i].size(), i);
    }
    for (const auto& [c, v] : rows[r]) --colcount[c];
    rows[r].clear();
    colrows[pc].clear();
  }
  // dense remainder
  std::vector<std::size_t> left;
  std::vector<std::size_t> cols;
  for (std::size_t r = 0; r < R; ++r)
    if (alive[r] && !rows[r].empty()) {
      left.push_back(r);
      for (const auto& [c, v] : rows[r]) cols.push_back(c);
    }
  if (!left.empty()) {
    std::sort(cols.begin(), cols.end());
    cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
    IntMatrix d(left.size(), cols.size());
    for (std::size_t i = 0; i < left.size(); ++i)
      for (const auto& [c, v] : rows[left[i]]) {
        std::size_t j = static_cast<std::size_t>(std::lower_bound(cols.begin(), cols.end(), c) - cols.begin());
        d(i, j) = Int(v);
      }
    auto s = smith_normal_form(d, false);
    out.rank += s.rank;
    for (const auto& x : s.diagonal)
      if (x != 1) out.torsion.push_back(x);
  }
  return out;
}

}  // namespace detail

inline InvariantFactors invariant_factors(const SparseMatrix& m) {
  try {
    return detail::sparse_factors<long long>(m);
  } catch (const detail::Overflow&) {
    return detail::sparse_factors<Int>(m);
  }
}

inline InvariantFactors invariant_factors(const IntMatrix& m) {
  auto s = smith_normal_form(m, false);
  InvariantFactors out;
  out.rank = s.rank;
  for (const auto& x : s.diagonal)
    if (x != 1) out.torsion.push_back(x);
  return out;
}

}  // namespace dht
