#pragma once

// Exact integer lattice algebra: Smith and Hermite normal forms, integer
// kernels and solves, and finitely generated abelian group presentations.
// Everything is int64; inputs in this project are desk scale.

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <vector>

#include "tropvb/error.hpp"

namespace tropvb {

using Int = long long;
using IntVec = std::vector<Int>;
using IntMat = std::vector<IntVec>;  // row major

inline Int floordiv(Int a, Int b) {
  assert(b != 0);
  Int q = a / b, r = a % b;
  if (r != 0 && ((r < 0) != (b < 0))) --q;
  return q;
}

inline Int vec_gcd(const IntVec& v) {
  Int g = 0;
  for (Int x : v) g = std::gcd(g, std::llabs(x));
  return g;
}

inline bool is_zero_vec(const IntVec& v) {
  return std::all_of(v.begin(), v.end(), [](Int x) { return x == 0; });
}

inline Int dot(const IntVec& a, const IntVec& b) {
  assert(a.size() == b.size());
  Int s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline IntVec vec_add(const IntVec& a, const IntVec& b) {
  assert(a.size() == b.size());
  IntVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline IntVec vec_sub(const IntVec& a, const IntVec& b) {
  assert(a.size() == b.size());
  IntVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline IntVec vec_neg(const IntVec& a) {
  IntVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

inline IntVec vec_scale(Int k, const IntVec& a) {
  IntVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = k * a[i];
  return r;
}

inline IntMat identity_mat(size_t n) {
  IntMat m(n, IntVec(n, 0));
  for (size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline IntMat mat_mul_int(const IntMat& a, const IntMat& b) {
  size_t m = a.size(), k = b.size(), n = k ? b[0].size() : 0;
  IntMat r(m, IntVec(n, 0));
  for (size_t i = 0; i < m; ++i) {
    assert(a[i].size() == k);
    for (size_t p = 0; p < k; ++p) {
      if (a[i][p] == 0) continue;
      for (size_t j = 0; j < n; ++j) r[i][j] += a[i][p] * b[p][j];
    }
  }
  return r;
}

inline IntVec mat_vec(const IntMat& a, const IntVec& x) {
  IntVec r(a.size(), 0);
  for (size_t i = 0; i < a.size(); ++i) r[i] = dot(a[i], x);
  return r;
}

inline IntMat transpose(const IntMat& a, size_t cols_hint = 0) {
  size_t rows = a.size();
  size_t cols = rows ? a[0].size() : cols_hint;
  IntMat r(cols, IntVec(rows, 0));
  for (size_t i = 0; i < rows; ++i)
    for (size_t j = 0; j < cols; ++j) r[j][i] = a[i][j];
  return r;
}

/// U * A * V = diag(d_1..d_r, 0..) with U, V unimodular and d_1 | d_2 | ... .
/// Inverse transforms are tracked so that preimages of presentation
/// coordinates are available without a separate matrix inversion.
struct SmithForm {
  IntMat u, uinv;  // rows x rows
  IntMat v, vinv;  // cols x cols
  IntVec diag;     // length min(rows, cols), zeros past rank
  size_t rows = 0, cols = 0;
  int rank = 0;
};

inline SmithForm smith_form(IntMat a) {
  SmithForm s;
  s.rows = a.size();
  s.cols = s.rows ? a[0].size() : 0;
  s.u = identity_mat(s.rows);
  s.uinv = identity_mat(s.rows);
  s.v = identity_mat(s.cols);
  s.vinv = identity_mat(s.cols);
  size_t m = s.rows, n = s.cols;

  auto row_add = [&](size_t dst, size_t src, Int k) {  // row dst += k * row src
    for (size_t j = 0; j < n; ++j) a[dst][j] += k * a[src][j];
    for (size_t j = 0; j < m; ++j) s.u[dst][j] += k * s.u[src][j];
    for (size_t i = 0; i < m; ++i) s.uinv[i][src] -= k * s.uinv[i][dst];
  };
  auto row_swap = [&](size_t r1, size_t r2) {
    std::swap(a[r1], a[r2]);
    std::swap(s.u[r1], s.u[r2]);
    for (size_t i = 0; i < m; ++i) std::swap(s.uinv[i][r1], s.uinv[i][r2]);
  };
  auto row_neg = [&](size_t r) {
    for (size_t j = 0; j < n; ++j) a[r][j] = -a[r][j];
    for (size_t j = 0; j < m; ++j) s.u[r][j] = -s.u[r][j];
    for (size_t i = 0; i < m; ++i) s.uinv[i][r] = -s.uinv[i][r];
  };
  auto col_add = [&](size_t dst, size_t src, Int k) {  // col dst += k * col src
    for (size_t i = 0; i < m; ++i) a[i][dst] += k * a[i][src];
    for (size_t i = 0; i < n; ++i) s.v[i][dst] += k * s.v[i][src];
    for (size_t j = 0; j < n; ++j) s.vinv[src][j] -= k * s.vinv[dst][j];
  };
  auto col_swap = [&](size_t c1, size_t c2) {
    for (size_t i = 0; i < m; ++i) std::swap(a[i][c1], a[i][c2]);
    for (size_t i = 0; i < n; ++i) std::swap(s.v[i][c1], s.v[i][c2]);
    std::swap(s.vinv[c1], s.vinv[c2]);
  };

  size_t t = 0;
  while (t < m && t < n) {
    // Find a nonzero entry of minimal magnitude in the trailing block.
    size_t pi = t, pj = t;
    Int best = 0;
    for (size_t i = t; i < m; ++i)
      for (size_t j = t; j < n; ++j)
        if (a[i][j] != 0 && (best == 0 || std::llabs(a[i][j]) < best)) {
          best = std::llabs(a[i][j]);
          pi = i;
          pj = j;
        }
    if (best == 0) break;
    if (pi != t) row_swap(t, pi);
    if (pj != t) col_swap(t, pj);
    if (a[t][t] < 0) row_neg(t);

    bool dirty = false;
    for (size_t i = t + 1; i < m; ++i) {
      if (a[i][t] == 0) continue;
      row_add(i, t, -floordiv(a[i][t], a[t][t]));
      if (a[i][t] != 0) dirty = true;  // remainder smaller than pivot
    }
    for (size_t j = t + 1; j < n; ++j) {
      if (a[t][j] == 0) continue;
      col_add(j, t, -floordiv(a[t][j], a[t][t]));
      if (a[t][j] != 0) dirty = true;
    }
    if (dirty) continue;  // re-pick a smaller pivot

    // Pivot must divide the trailing block for the divisibility chain.
    bool divides = true;
    for (size_t i = t + 1; i < m && divides; ++i)
      for (size_t j = t + 1; j < n; ++j)
        if (a[i][j] % a[t][t] != 0) {
          row_add(t, i, 1);
          divides = false;
          break;
        }
    if (!divides) continue;
    ++t;
  }

  s.diag.assign(std::min(m, n), 0);
  for (size_t i = 0; i < t; ++i) s.diag[i] = a[i][i];
  s.rank = static_cast<int>(t);
  return s;
}

/// Basis of { x : A x = 0 } as a saturated sublattice of Z^cols.
inline std::vector<IntVec> kernel_basis(const IntMat& a, size_t cols) {
  if (a.empty()) {
    std::vector<IntVec> basis;
    for (size_t j = 0; j < cols; ++j) {
      IntVec e(cols, 0);
      e[j] = 1;
      basis.push_back(e);
    }
    return basis;
  }
  SmithForm s = smith_form(a);
  std::vector<IntVec> basis;
  for (size_t j = s.rank; j < s.cols; ++j) {
    IntVec col(s.cols);
    for (size_t i = 0; i < s.cols; ++i) col[i] = s.v[i][j];
    basis.push_back(col);
  }
  return basis;
}

/// One integer solution of A x = b, if any.
inline std::optional<IntVec> solve_integer(const IntMat& a, const IntVec& b,
                                           size_t cols) {
  if (a.empty()) return is_zero_vec(b) ? std::optional<IntVec>(IntVec(cols, 0))
                                       : std::nullopt;
  SmithForm s = smith_form(a);
  IntVec c = mat_vec(s.u, b);
  IntVec y(s.cols, 0);
  for (size_t i = 0; i < s.rows; ++i) {
    if (i < static_cast<size_t>(s.rank)) {
      if (c[i] % s.diag[i] != 0) return std::nullopt;
      y[i] = c[i] / s.diag[i];
    } else if (c[i] != 0) {
      return std::nullopt;
    }
  }
  return mat_vec(s.v, y);
}

inline int lattice_rank(const std::vector<IntVec>& gens) {
  if (gens.empty()) return 0;
  return smith_form(gens).rank;
}

/// Row-style Hermite form of the span of the given vectors; used for
/// canonical coset representatives and sublattice membership.
class SublatticeReducer {
 public:
  SublatticeReducer() = default;

  SublatticeReducer(const std::vector<IntVec>& gens, size_t dim) : dim_(dim) {
    IntMat h;
    for (const auto& g : gens)
      if (!is_zero_vec(g)) h.push_back(g);
    size_t r = 0;
    for (size_t c = 0; c < dim_ && r < h.size(); ++c) {
      // gcd elimination in column c among rows r..
      for (;;) {
        size_t best = h.size();
        for (size_t i = r; i < h.size(); ++i)
          if (h[i][c] != 0 &&
              (best == h.size() || std::llabs(h[i][c]) < std::llabs(h[best][c])))
            best = i;
        if (best == h.size()) break;
        std::swap(h[r], h[best]);
        bool clean = true;
        for (size_t i = r + 1; i < h.size(); ++i) {
          if (h[i][c] == 0) continue;
          Int q = floordiv(h[i][c], h[r][c]);
          for (size_t j = 0; j < dim_; ++j) h[i][j] -= q * h[r][j];
          if (h[i][c] != 0) clean = false;
        }
        if (clean) break;
      }
      if (h[r][c] == 0) continue;
      if (h[r][c] < 0)
        for (size_t j = 0; j < dim_; ++j) h[r][j] = -h[r][j];
      for (size_t i = 0; i < r; ++i) {
        Int q = floordiv(h[i][c], h[r][c]);
        if (q != 0)
          for (size_t j = 0; j < dim_; ++j) h[i][j] -= q * h[r][j];
      }
      pivots_.push_back(c);
      ++r;
    }
    h.resize(r);
    hnf_ = std::move(h);
  }

  /// Canonical representative of u modulo the sublattice.
  IntVec reduce(IntVec u) const {
    assert(u.size() == dim_);
    for (size_t i = 0; i < hnf_.size(); ++i) {
      Int q = floordiv(u[pivots_[i]], hnf_[i][pivots_[i]]);
      if (q != 0)
        for (size_t j = 0; j < dim_; ++j) u[j] -= q * hnf_[i][j];
    }
    return u;
  }

  bool contains(const IntVec& u) const { return is_zero_vec(reduce(u)); }

  const IntMat& hermite_rows() const { return hnf_; }
  int rank() const { return static_cast<int>(hnf_.size()); }
  size_t dim() const { return dim_; }

 private:
  size_t dim_ = 0;
  IntMat hnf_;
  std::vector<size_t> pivots_;
};

inline bool same_sublattice(const std::vector<IntVec>& a,
                            const std::vector<IntVec>& b, size_t dim) {
  return SublatticeReducer(a, dim).hermite_rows() ==
         SublatticeReducer(b, dim).hermite_rows();
}

/// Z^n / <gens> in Smith normal form. Presentation coordinates are ordered
/// torsion part first (matching invariant_factors), then the free part.
/// projection * lift is the identity on presentation coordinates.
struct AbelianGroupPresentation {
  size_t ambient_rank = 0;
  IntVec invariant_factors;  // each > 1, divisibility chain
  Int free_rank = 0;
  IntMat projection;  // (torsion + free) x ambient
  IntMat lift;        // ambient x (torsion + free)

  size_t coords() const { return invariant_factors.size() + free_rank; }

  /// Reduce a coordinate vector: torsion entries into [0, d_i).
  IntVec normalize(IntVec x) const {
    assert(x.size() == coords());
    for (size_t i = 0; i < invariant_factors.size(); ++i)
      x[i] -= floordiv(x[i], invariant_factors[i]) * invariant_factors[i];
    return x;
  }

  IntVec project(const IntVec& ambient) const {
    return normalize(mat_vec(projection, ambient));
  }

  bool is_trivial_element(const IntVec& coords_vec) const {
    return is_zero_vec(normalize(coords_vec));
  }

  bool same_group(const AbelianGroupPresentation& o) const {
    return free_rank == o.free_rank && invariant_factors == o.invariant_factors;
  }
};

inline AbelianGroupPresentation lattice_quotient(size_t n,
                                                 const std::vector<IntVec>& gens) {
  // Subgroup generators as columns.
  IntMat g(n, IntVec(gens.size(), 0));
  for (size_t k = 0; k < gens.size(); ++k) {
    if (gens[k].size() != n) throw Error("BadSubgroup", "generator has wrong length");
    for (size_t i = 0; i < n; ++i) g[i][k] = gens[k][i];
  }
  AbelianGroupPresentation pres;
  pres.ambient_rank = n;
  if (gens.empty()) {
    pres.free_rank = static_cast<Int>(n);
    pres.projection = identity_mat(n);
    pres.lift = identity_mat(n);
    return pres;
  }
  SmithForm s = smith_form(g);
  std::vector<size_t> keep;  // torsion rows then free rows of U
  for (int i = 0; i < s.rank; ++i)
    if (s.diag[i] != 1) {
      pres.invariant_factors.push_back(s.diag[i]);
      keep.push_back(i);
    }
  for (size_t i = s.rank; i < n; ++i) keep.push_back(i);
  pres.free_rank = static_cast<Int>(n) - s.rank;
  pres.projection.reserve(keep.size());
  for (size_t i : keep) pres.projection.push_back(s.u[i]);
  pres.lift.assign(n, IntVec(keep.size(), 0));
  for (size_t j = 0; j < keep.size(); ++j)
    for (size_t i = 0; i < n; ++i) pres.lift[i][j] = s.uinv[i][keep[j]];
  return pres;
}

}  // namespace tropvb
