#pragma once

// Rational polyhedral cones with exact integer ray generators. Dual cones,
// faces and membership are enumerated by brute force over active-constraint
// subsets, exact and complete for lattice rank <= 4. Cones are stored by
// primitive, deduplicated, lexicographically sorted rays so structural
// equality is canonical; duals of lower-dimensional cones are not pointed
// and carry opposite ray pairs, strong convexity is therefore validated
// where required rather than enforced at construction.

#include <algorithm>
#include <cassert>
#include <optional>
#include <vector>

#include "tropvb/error.hpp"
#include "tropvb/intlin.hpp"

namespace tropvb {

constexpr int kMaxEnumerationRank = 4;

/// v / gcd(entries); direction preserved.
inline IntVec primitive(const IntVec& v) {
  if (is_zero_vec(v)) throw Error("ZeroVector", "zero vector has no direction");
  Int g = vec_gcd(v);
  IntVec r(v.size());
  for (size_t i = 0; i < v.size(); ++i) r[i] = v[i] / g;
  return r;
}

class Cone {
 public:
  Cone() = default;

  /// Canonicalizes to primitive, deduplicated, sorted rays. Does not reduce
  /// to extremal generators; see extremal_rays().
  Cone(int rank, std::vector<IntVec> rays) : rank_(rank) {
    if (rank < 1) throw Error("BadRank", "lattice rank must be >= 1");
    for (auto& r : rays) {
      if (r.size() != static_cast<size_t>(rank))
        throw Error("DimensionMismatch", "ray length does not match rank");
      if (is_zero_vec(r)) throw Error("ZeroVector", "zero is not a ray");
      r = primitive(r);
    }
    std::sort(rays.begin(), rays.end());
    rays.erase(std::unique(rays.begin(), rays.end()), rays.end());
    rays_ = std::move(rays);
  }

  static Cone zero(int rank) { return Cone(rank, {}); }

  int rank() const { return rank_; }
  const std::vector<IntVec>& rays() const { return rays_; }
  bool is_zero() const { return rays_.empty(); }

  int dim() const { return lattice_rank(rays_); }

  friend bool operator==(const Cone& a, const Cone& b) {
    return a.rank_ == b.rank_ && a.rays_ == b.rays_;
  }
  friend bool operator!=(const Cone& a, const Cone& b) { return !(a == b); }
  friend bool operator<(const Cone& a, const Cone& b) {
    return a.rays_ < b.rays_;
  }

 private:
  int rank_ = 1;
  std::vector<IntVec> rays_;
};

namespace detail {

// Subsets of {0..m-1} of size <= k, emitted through a callback.
template <class F>
void for_each_subset_upto(size_t m, size_t k, F&& f) {
  std::vector<size_t> idx;
  auto rec = [&](auto&& self, size_t start) -> void {
    f(idx);
    if (idx.size() == k) return;
    for (size_t i = start; i < m; ++i) {
      idx.push_back(i);
      self(self, i + 1);
      idx.pop_back();
    }
  };
  rec(rec, 0);
}

}  // namespace detail

/// Generators of the dual cone { u : <u, v> >= 0 for all rays v }, as
/// primitive integer vectors: a lineality basis (as opposite pairs) plus the
/// extreme rays of the pointed part. Exact; bounded at rank 4.
inline Cone dual_cone(const Cone& c) {
  const int n = c.rank();
  if (n > kMaxEnumerationRank)
    throw Error("RankTooHigh", "dual enumeration bounded at rank 4");
  const IntMat& a = c.rays();  // constraint rows
  std::vector<IntVec> out;

  // Lineality of the dual: vectors orthogonal to every ray.
  std::vector<IntVec> lin = kernel_basis(a, n);
  for (const auto& b : lin) {
    out.push_back(primitive(b));
    out.push_back(primitive(vec_neg(b)));
  }

  // Extreme rays of the pointed part { u : a u >= 0, u orthogonal to lin }.
  size_t nlin = lin.size();
  auto feasible = [&](const IntVec& u) {
    for (const auto& row : a)
      if (dot(row, u) < 0) return false;
    return true;
  };
  detail::for_each_subset_upto(a.size(), static_cast<size_t>(n) - 1,
                               [&](const std::vector<size_t>& subset) {
    if (subset.size() + nlin + 1 < static_cast<size_t>(n)) return;
    IntMat m;
    for (size_t i : subset) m.push_back(a[i]);
    for (const auto& b : lin) m.push_back(b);
    auto ker = kernel_basis(m, n);
    if (ker.size() != 1) return;  // need active constraints of rank n - 1
    IntVec w = primitive(ker[0]);
    if (feasible(w)) out.push_back(w);
    IntVec wn = vec_neg(w);
    if (feasible(wn)) out.push_back(wn);
  });

  return Cone(n, std::move(out));
}

/// Membership via the dual description.
inline bool cone_contains(const Cone& c, const IntVec& v) {
  Cone d = dual_cone(c);
  for (const auto& u : d.rays())
    if (dot(u, v) < 0) return false;
  return true;
}

/// Contains no line: the pointed part of the dual spans the whole space.
inline bool is_strongly_convex(const Cone& c) {
  if (c.is_zero()) return true;
  return lattice_rank(dual_cone(c).rays()) == c.rank();
}

/// Drop generators lying in the cone of the remaining ones. For a strongly
/// convex cone the result is the unique set of extreme rays.
inline Cone extremal_rays(const Cone& c) {
  std::vector<IntVec> rays = c.rays();
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i < rays.size(); ++i) {
      std::vector<IntVec> rest;
      for (size_t j = 0; j < rays.size(); ++j)
        if (j != i) rest.push_back(rays[j]);
      if (cone_contains(Cone(c.rank(), rest), rays[i])) {
        rays.erase(rays.begin() + i);
        changed = true;
        break;
      }
    }
  }
  return Cone(c.rank(), std::move(rays));
}

/// All faces of a strongly convex cone, each cut out by a subset of dual
/// generators; includes the zero cone and the cone itself.
inline std::vector<Cone> faces(const Cone& c) {
  if (c.rank() > kMaxEnumerationRank)
    throw Error("RankTooHigh", "face enumeration bounded at rank 4");
  Cone d = dual_cone(c);
  std::vector<Cone> out;
  size_t m = d.rays().size();
  if (m >= 20) throw Error("TooManyFacets", "dual generator set too large");
  for (unsigned long mask = 0; mask < (1ul << m); ++mask) {
    std::vector<IntVec> sel;
    for (const auto& v : c.rays()) {
      bool in_face = true;
      for (size_t i = 0; i < m && in_face; ++i)
        if (mask & (1ul << i)) in_face = dot(d.rays()[i], v) == 0;
      if (in_face) sel.push_back(v);
    }
    Cone f(c.rank(), std::move(sel));
    if (std::find(out.begin(), out.end(), f) == out.end())
      out.push_back(std::move(f));
  }
  std::sort(out.begin(), out.end(), [](const Cone& a, const Cone& b) {
    if (a.rays().size() != b.rays().size())
      return a.rays().size() < b.rays().size();
    return a < b;
  });
  return out;
}

inline bool is_face_of(const Cone& face, const Cone& c) {
  auto fs = faces(c);
  return std::find(fs.begin(), fs.end(), face) != fs.end();
}

/// sigma cap tau, computed through the dual: the intersection is the dual
/// of the cone generated by both dual generator sets.
inline Cone intersect(const Cone& a, const Cone& b) {
  if (a.rank() != b.rank()) throw Error("DimensionMismatch", "rank mismatch");
  std::vector<IntVec> gens = dual_cone(a).rays();
  std::vector<IntVec> more = dual_cone(b).rays();
  gens.insert(gens.end(), more.begin(), more.end());
  return dual_cone(Cone(a.rank(), std::move(gens)));
}

/// Integer basis of the lattice vectors orthogonal to the cone. This is the
/// unit group of the chart monoid attached to the cone. No rank bound.
inline std::vector<IntVec> perp_lattice(const Cone& c) {
  return kernel_basis(c.rays(), c.rank());
}

}  // namespace tropvb
