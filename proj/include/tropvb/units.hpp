#pragma once

// Units of monoid algebras K[M] for a semifield K: every unit is a nonzero
// scalar times a character, so a unit is a (scalar, lattice exponent) pair
// and multiplication is componentwise.

#include <utility>
#include <vector>

#include "tropvb/cone.hpp"
#include "tropvb/error.hpp"
#include "tropvb/intlin.hpp"
#include "tropvb/semiring.hpp"

namespace tropvb {

template <class S>
struct MonoidUnit {
  S scalar;         // nonzero element of K
  IntVec exponent;  // element of the unit group of the monoid

  static MonoidUnit one(size_t dim) {
    return MonoidUnit{S::one(), IntVec(dim, 0)};
  }

  MonoidUnit inverse() const {
    return MonoidUnit{scalar.inverse(), vec_neg(exponent)};
  }

  friend MonoidUnit operator*(const MonoidUnit& a, const MonoidUnit& b) {
    return MonoidUnit{a.scalar * b.scalar, vec_add(a.exponent, b.exponent)};
  }
  friend bool operator==(const MonoidUnit& a, const MonoidUnit& b) {
    return a.scalar == b.scalar && a.exponent == b.exponent;
  }
  friend bool operator!=(const MonoidUnit& a, const MonoidUnit& b) {
    return !(a == b);
  }
};

/// Unit group of K[S_sigma] where S_sigma is the chart monoid of a cone:
/// the nonzero scalars of K times the characters orthogonal to the cone.
struct MonoidUnitGroup {
  SemiringKind scalar_units;       // K^x, described by the semifield tag
  std::vector<IntVec> char_basis;  // integer basis of the character part
};

inline MonoidUnitGroup monoid_algebra_units(SemiringKind tag, const Cone& sigma) {
  if (!flags_of(tag).semifield)
    throw Error("NotSemifield", "unit group requires a semifield base");
  return MonoidUnitGroup{tag, perp_lattice(sigma)};
}

/// A direct sum decomposition of the exponent lattice, given by bases of
/// the two summands inside the ambient lattice.
struct LatticeSplit {
  size_t dim = 0;
  std::vector<IntVec> first;
  std::vector<IntVec> second;

  /// The block split Z^{n1} (+) Z^{n2} inside Z^{n1+n2}.
  static LatticeSplit coordinate_blocks(size_t n1, size_t n2) {
    LatticeSplit s;
    s.dim = n1 + n2;
    for (size_t i = 0; i < n1; ++i) {
      IntVec e(s.dim, 0);
      e[i] = 1;
      s.first.push_back(e);
    }
    for (size_t i = 0; i < n2; ++i) {
      IntVec e(s.dim, 0);
      e[n1 + i] = 1;
      s.second.push_back(e);
    }
    return s;
  }
};

/// Factor a unit over a product monoid into factors over the two pieces.
/// The scalar lands in the first factor; the second factor has scalar 1.
/// BadSplit when the exponent is not in the span of the declared summands.
template <class S>
std::pair<MonoidUnit<S>, MonoidUnit<S>> factor_unit(const MonoidUnit<S>& u,
                                                    const LatticeSplit& split) {
  if (u.exponent.size() != split.dim)
    throw Error("DimensionMismatch", "exponent does not live in the split lattice");
  // Solve exponent = sum over first basis + sum over second basis.
  size_t k1 = split.first.size(), k2 = split.second.size();
  IntMat m(split.dim, IntVec(k1 + k2, 0));
  for (size_t j = 0; j < k1; ++j)
    for (size_t i = 0; i < split.dim; ++i) m[i][j] = split.first[j][i];
  for (size_t j = 0; j < k2; ++j)
    for (size_t i = 0; i < split.dim; ++i) m[i][k1 + j] = split.second[j][i];
  auto sol = solve_integer(m, u.exponent, k1 + k2);
  if (!sol) throw Error("BadSplit", "exponent is not in the declared direct sum");
  IntVec e1(split.dim, 0), e2(split.dim, 0);
  for (size_t j = 0; j < k1; ++j)
    e1 = vec_add(e1, vec_scale((*sol)[j], split.first[j]));
  for (size_t j = 0; j < k2; ++j)
    e2 = vec_add(e2, vec_scale((*sol)[k1 + j], split.second[j]));
  return {MonoidUnit<S>{u.scalar, e1}, MonoidUnit<S>{S::one(), e2}};
}

}  // namespace tropvb
