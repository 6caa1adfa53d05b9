#pragma once

#include <string>
#include <vector>

#include "dht/cubes.hpp"
#include "dht/error.hpp"
#include "dht/graph.hpp"
#include "dht/smith.hpp"

namespace dht {

/// Z^rank plus the listed cyclic torsion factors.
struct HomologyGroup {
  std::size_t rank = 0;
  std::vector<Int> torsion;  // each > 1, each dividing the next

  bool trivial() const { return rank == 0 && torsion.empty(); }

  std::string str() const {
    std::string s;
    if (rank == 1) s = "Z";
    else if (rank > 1) s = "Z^" + std::to_string(rank);
    for (const auto& t : torsion) {
      if (!s.empty()) s += " + ";
      s += "Z/" + t.str();
    }
    return s.empty() ? "0" : s;
  }
  friend bool operator==(const HomologyGroup&, const HomologyGroup&) = default;
};

/// Sizes and ranks behind one homology computation.
struct HomologyReport {
  int dim = 0;
  HomologyGroup group;
  std::size_t basis_size = 0;       // nondegenerate n-cubes
  std::size_t lower_size = 0;       // nondegenerate (n-1)-cubes
  std::size_t upper_size = 0;       // nondegenerate (n+1)-cubes
  std::size_t rank_in = 0;          // rank of the boundary out of degree n
  std::size_t rank_out = 0;         // rank of the boundary into degree n
};

/// DH_n(G) = ker d_n / im d_{n+1} over the nondegenerate cube bases.
inline HomologyReport homology_report(const Graph& g, int n, std::size_t budget = kDefaultCubeBudget) {
  if (n < 0) throw Error(Errc::InvalidParameter, "homology degree must be >= 0");
  HomologyReport r;
  r.dim = n;
  CubeList mid = enumerate_cubes(g, n, true, budget);
  CubeList up = enumerate_cubes(g, n + 1, true, budget);
  r.basis_size = mid.size();
  r.upper_size = up.size();
  if (n >= 1) {
    CubeList low = enumerate_cubes(g, n - 1, true, budget);
    r.lower_size = low.size();
    r.rank_in = invariant_factors(boundary_matrix(mid, low)).rank;
  }
  auto f = invariant_factors(boundary_matrix(up, mid));
  r.rank_out = f.rank;
  r.group.rank = r.basis_size - r.rank_in - r.rank_out;
  r.group.torsion = f.torsion;
  return r;
}

inline HomologyGroup homology(const Graph& g, int n, std::size_t budget = kDefaultCubeBudget) {
  return homology_report(g, n, budget).group;
}

/// Chain as a coefficient vector over a sorted cube basis.
inline std::vector<Int> chain_vector(const Chain& z, const CubeList& basis) {
  std::vector<Int> y(basis.size());
  for (const auto& [k, v] : z.terms()) {
    std::size_t i = basis.find(std::span<const VertexId>(k));
    if (i == basis.size()) throw Error(Errc::DimensionMismatch, "chain term outside the basis");
    y[i] = v;
  }
  return y;
}

/// Explicit coordinates on DH_n(G) from two Smith forms. With
/// U_B d_{n+1} V_B = D_B, a cycle y has torsion coordinates (U_B y)_i mod
/// d_i and free coordinates read off a kernel basis of d_n U_B^{-1}
/// restricted to the trailing columns. Dense; meant for small graphs.
/// Largest dense boundary matrix (cells) an explicit basis may build.
inline constexpr std::size_t kDenseCellBudget = 20'000'000;

class HomologyBasis {
 public:
  HomologyBasis(const Graph& g, int n, std::size_t budget = kDefaultCubeBudget) : graph_(g), n_(n) {
    basis_ = enumerate_cubes(g, n, true, budget);
    CubeList up = enumerate_cubes(g, n + 1, true, budget);
    const std::size_t N = basis_.size();
    if (up.size() * N > kDenseCellBudget)
      throw Error(Errc::BudgetExceeded, "explicit basis needs a dense " + std::to_string(up.size()) + " x " +
                                            std::to_string(N) + " matrix");
    IntMatrix B = to_dense(boundary_matrix(up, basis_));
    sb_ = smith_normal_form(B, true);
    IntMatrix A(0, N);
    if (n >= 1) {
      CubeList low = enumerate_cubes(g, n - 1, true, budget);
      A = to_dense(boundary_matrix(basis_, low));
    }
    A_ = A;
    const std::size_t rb = sb_.rank;
    IntMatrix Ap = A * sb_.Uinv;
    IntMatrix tail(Ap.rows(), N - rb);
    for (std::size_t i = 0; i < Ap.rows(); ++i)
      for (std::size_t j = rb; j < N; ++j) tail(i, j - rb) = Ap(i, j);
    sa_ = smith_normal_form(tail, true);
    group_.rank = N - rb - sa_.rank;
    for (std::size_t i = 0; i < rb; ++i)
      if (sb_.diagonal[i] != 1) {
        torsion_index_.push_back(i);
        group_.torsion.push_back(sb_.diagonal[i]);
      }
  }

  const HomologyGroup& group() const { return group_; }
  const CubeList& basis() const { return basis_; }
  int dim() const { return n_; }

  bool is_cycle(const std::vector<Int>& y) const {
    for (std::size_t i = 0; i < A_.rows(); ++i) {
      Int s = 0;
      for (std::size_t j = 0; j < y.size(); ++j)
        if (y[j] != 0 && A_(i, j) != 0) s += A_(i, j) * y[j];
      if (s != 0) return false;
    }
    return true;
  }

  /// Torsion coordinates first (reduced into [0, d)), then free ones.
  std::vector<Int> coordinates(const Chain& z) const {
    if (z.dim() != n_ && !z.is_zero()) throw Error(Errc::DimensionMismatch, "chain has the wrong dimension");
    std::vector<Int> y = chain_vector(z, basis_);
    if (!is_cycle(y)) throw Error(Errc::InvalidParameter, "chain is not a cycle");
    const std::size_t N = basis_.size();
    std::vector<Int> yp(N);
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j)
        if (y[j] != 0 && sb_.U(i, j) != 0) yp[i] += sb_.U(i, j) * y[j];
    std::vector<Int> out;
    for (std::size_t idx : torsion_index_) {
      Int d = sb_.diagonal[idx];
      Int r = yp[idx] % d;
      if (r < 0) r += d;
      out.push_back(r);
    }
    const std::size_t rb = sb_.rank;
    const std::size_t T = N - rb;
    for (std::size_t i = sa_.rank; i < T; ++i) {
      Int s = 0;
      for (std::size_t j = 0; j < T; ++j)
        if (yp[rb + j] != 0 && sa_.Vinv(i, j) != 0) s += sa_.Vinv(i, j) * yp[rb + j];
      out.push_back(s);
    }
    return out;
  }

 private:
  Graph graph_;
  int n_;
  CubeList basis_;
  IntMatrix A_;
  SmithForm sb_, sa_;
  HomologyGroup group_;
  std::vector<std::size_t> torsion_index_;
};

/// Whether the class of the cycle z generates DH_n(G) when that group is
/// infinite cyclic: the columns of d_{n+1} together with z must span the
/// full cycle lattice, i.e. rank equals dim ker d_n and every invariant
/// factor is 1. Works on the sparse matrices, so it scales to big bases.
struct GeneratorCheck {
  bool cycle = false;
  bool generates = false;
  std::size_t kernel_rank = 0;
  std::size_t span_rank = 0;
  std::vector<Int> torsion;
};

inline GeneratorCheck check_generator(const Graph& g, const Chain& z, std::size_t budget = kDefaultCubeBudget) {
  const int n = z.dim();
  GeneratorCheck out;
  if (n < 1) throw Error(Errc::InvalidParameter, "generator check needs degree >= 1");
  out.cycle = boundary(z).is_zero();
  if (!out.cycle) return out;
  CubeList mid = enumerate_cubes(g, n, true, budget);
  CubeList low = enumerate_cubes(g, n - 1, true, budget);
  CubeList up = enumerate_cubes(g, n + 1, true, budget);
  const std::size_t rank_in = invariant_factors(boundary_matrix(mid, low)).rank;
  out.kernel_rank = mid.size() - rank_in;
  SparseMatrix B = boundary_matrix(up, mid);
  std::vector<Int> y = chain_vector(z, mid);
  const std::size_t col = B.cols++;
  for (std::size_t i = 0; i < y.size(); ++i)
    if (y[i] != 0) B.add(i, col, static_cast<long long>(y[i]));
  auto f = invariant_factors(B);
  out.span_rank = f.rank;
  out.torsion = f.torsion;
  out.generates = f.rank == out.kernel_rank && f.torsion.empty();
  return out;
}

}  // namespace dht
