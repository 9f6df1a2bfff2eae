#pragma once

// Classification data for torus-equivariant bundles on the toric scheme of
// a fan over an idempotent semifield.
//
//   * A family assigns to every cone a character class modulo the unit
//     group of the chart monoid; compatible families classify equivariant
//     line bundles.
//   * Cocycles carry chart-overlap transition units; rank-n cocycles have
//     generalized-permutation transitions and split into line cocycles.
//   * A filtration space records, per ray, the jump values of a rank-n
//     decreasing exhaustive filtration; these classify rank-n bundles up to
//     a column permutation.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "tropvb/error.hpp"
#include "tropvb/fan.hpp"
#include "tropvb/intlin.hpp"
#include "tropvb/semimatrix.hpp"
#include "tropvb/units.hpp"

namespace tropvb {

// ---------------------------------------------------------------------------
// Families

struct KlyachkoFamily {
  Fan fan;
  std::vector<IntVec> reps;  // one representative per cone, canonical

  friend bool operator==(const KlyachkoFamily& a, const KlyachkoFamily& b) {
    return a.fan == b.fan && a.reps == b.reps;
  }
};

/// Canonical representative of u modulo the perp lattice of the cone,
/// reduced against the Hermite form of that sublattice.
inline IntVec canonical_rep(const Fan& fan, int cone_index, const IntVec& u) {
  SublatticeReducer red(perp_lattice(fan.cones()[cone_index]), fan.rank());
  return red.reduce(u);
}

struct FamilyViolation {
  int sigma = -1;  // cone whose representative is incompatible
  int other = -1;  // the witnessing face or ray cone
  std::string detail;
};

struct FamilyConditionReport {
  bool congruence = true;       // u_sigma = u_tau modulo the face unit group
  bool face_pairings = true;    // equal pairings on every face, per inclusion
  bool ray_pairings = true;     // equal pairings against shared rays only
  std::optional<FamilyViolation> violation;

  bool agree() const {
    return congruence == face_pairings && face_pairings == ray_pairings;
  }
  bool ok() const { return congruence && face_pairings && ray_pairings; }
};

/// Evaluate the three equivalent compatibility conditions independently.
/// They must agree on every input, valid or not; check_family asserts this.
inline FamilyConditionReport check_family_conditions(
    const Fan& fan, const std::vector<IntVec>& reps) {
  if (reps.size() != fan.size())
    throw Error("MissingCone", "family must cover every cone of the fan");
  for (const auto& u : reps)
    if (u.size() != static_cast<size_t>(fan.rank()))
      throw Error("DimensionMismatch", "representative has wrong length");

  FamilyConditionReport rep;

  // Singleton cone index per fan ray.
  std::vector<int> ray_cone(fan.rays().size(), -1);
  for (size_t c = 0; c < fan.size(); ++c)
    if (fan.ray_indices(static_cast<int>(c)).size() == 1)
      ray_cone[fan.ray_indices(static_cast<int>(c))[0]] = static_cast<int>(c);

  // Condition on shared rays only.
  for (size_t s = 0; s < fan.size(); ++s)
    for (int r : fan.ray_indices(static_cast<int>(s))) {
      if (ray_cone[r] < 0)
        throw Error("MissingCone", "fan lacks the singleton cone of a ray");
      const IntVec& v = fan.rays()[r];
      if (dot(reps[s], v) != dot(reps[ray_cone[r]], v)) {
        rep.ray_pairings = false;
        if (!rep.violation)
          rep.violation = FamilyViolation{
              static_cast<int>(s), ray_cone[r],
              "pairing against ray " + std::to_string(r) + " differs"};
      }
    }

  // Per-inclusion conditions.
  for (size_t s = 0; s < fan.size(); ++s)
    for (size_t t = 0; t < fan.size(); ++t) {
      if (s == t || !fan.is_face(static_cast<int>(t), static_cast<int>(s)))
        continue;
      IntVec diff = vec_sub(reps[s], reps[t]);
      SublatticeReducer red(perp_lattice(fan.cones()[t]), fan.rank());
      bool congruent = red.contains(diff);
      bool pairings = true;
      for (const auto& v : fan.cones()[t].rays())
        if (dot(diff, v) != 0) pairings = false;
      if (congruent != pairings)
        throw Error("InternalCheck",
                    "congruence and pairing conditions disagree");
      if (!congruent) rep.congruence = false;
      if (!pairings) rep.face_pairings = false;
    }

  if (!rep.agree())
    throw Error("InternalCheck", "equivalent compatibility conditions disagree");
  return rep;
}

/// First violation of the compatibility condition, if any.
inline std::optional<FamilyViolation> check_family(
    const Fan& fan, const std::vector<IntVec>& reps) {
  return check_family_conditions(fan, reps).violation;
}

/// Validate and canonicalize.
inline KlyachkoFamily make_family(const Fan& fan, std::vector<IntVec> reps) {
  if (auto v = check_family(fan, reps))
    throw Error("InvalidFamily", v->detail);
  for (size_t c = 0; c < reps.size(); ++c)
    reps[c] = canonical_rep(fan, static_cast<int>(c), reps[c]);
  return KlyachkoFamily{fan, std::move(reps)};
}

inline KlyachkoFamily trivial_family(const Fan& fan) {
  return KlyachkoFamily{fan,
                        std::vector<IntVec>(fan.size(), IntVec(fan.rank(), 0))};
}

/// Tensor product on classes: pointwise addition of representatives.
inline KlyachkoFamily family_mul(const KlyachkoFamily& a,
                                 const KlyachkoFamily& b) {
  if (a.fan != b.fan) throw Error("FanMismatch", "families over different fans");
  std::vector<IntVec> reps(a.reps.size());
  for (size_t c = 0; c < reps.size(); ++c)
    reps[c] = canonical_rep(a.fan, static_cast<int>(c),
                            vec_add(a.reps[c], b.reps[c]));
  return KlyachkoFamily{a.fan, std::move(reps)};
}

inline KlyachkoFamily family_inv(const KlyachkoFamily& a) {
  std::vector<IntVec> reps(a.reps.size());
  for (size_t c = 0; c < reps.size(); ++c)
    reps[c] = canonical_rep(a.fan, static_cast<int>(c), vec_neg(a.reps[c]));
  return KlyachkoFamily{a.fan, std::move(reps)};
}

// ---------------------------------------------------------------------------
// Line cocycles

/// Chart-overlap transition units for a line bundle. Charts are cone
/// indices (by default the maximal cones); the transition for an ordered
/// chart pair lives in the unit group of the overlap chart monoid, so its
/// exponent lies in the perp lattice of the intersection cone.
template <class S>
struct LineCocycle {
  Fan fan;
  std::vector<int> charts;
  std::map<std::pair<int, int>, MonoidUnit<S>> transitions;
};

struct CocycleViolation {
  std::string code;
  int i = -1, j = -1, k = -1;
  std::string detail;
};

/// Fill implied data: identity on the diagonal and inverses for pairs given
/// in one direction only.
template <class S>
void complete_cocycle_transitions(
    const std::vector<int>& charts, size_t dim,
    std::map<std::pair<int, int>, MonoidUnit<S>>& t) {
  for (int c : charts) t.erase({c, c});
  for (int a : charts)
    for (int b : charts) {
      if (a == b) continue;
      auto ab = t.find({a, b});
      auto ba = t.find({b, a});
      if (ab == t.end() && ba == t.end())
        throw Error("MissingTransition",
                    "no transition between charts " + std::to_string(a) +
                        " and " + std::to_string(b));
      if (ab == t.end()) t[{a, b}] = ba->second.inverse();
    }
}

template <class S>
std::optional<CocycleViolation> validate_line_cocycle(const LineCocycle<S>& c) {
  const auto& charts = c.charts;
  std::set<int> chart_set(charts.begin(), charts.end());
  if (chart_set.size() != charts.size())
    return CocycleViolation{"DuplicateChart"};
  for (int i : charts)
    if (i < 0 || i >= static_cast<int>(c.fan.size()))
      return CocycleViolation{"BadChart", i};
  for (int a : charts)
    for (int b : charts) {
      if (a == b) continue;
      auto it = c.transitions.find({a, b});
      if (it == c.transitions.end())
        return CocycleViolation{"MissingTransition", a, b};
      if (it->second.scalar.is_zero())
        return CocycleViolation{"ZeroScalar", a, b};
      Cone overlap = intersect(c.fan.cones()[a], c.fan.cones()[b]);
      SublatticeReducer red(perp_lattice(overlap), c.fan.rank());
      if (!red.contains(it->second.exponent))
        return CocycleViolation{
            "ExponentNotUnit", a, b, -1,
            "exponent is not orthogonal to the overlap cone"};
    }
  for (int a : charts)
    for (int b : charts) {
      if (a == b) continue;
      auto ab = c.transitions.at({a, b});
      auto ba = c.transitions.at({b, a});
      if (ab * ba != MonoidUnit<S>::one(c.fan.rank()))
        return CocycleViolation{"NotInverse", a, b};
    }
  for (int a : charts)
    for (int b : charts)
      for (int d : charts) {
        if (a == b || b == d || a == d) continue;
        auto lhs = c.transitions.at({a, b}) * c.transitions.at({b, d});
        if (lhs != c.transitions.at({a, d}))
          return CocycleViolation{"TripleIdentity", a, b, d};
      }
  return std::nullopt;
}

/// Transitions of the line bundle glued from a family: for the ordered
/// chart pair (i, j) the exponent is u_j - u_i and the scalar is 1.
template <class S>
LineCocycle<S> family_to_cocycle(const KlyachkoFamily& f) {
  static_assert(flags_of(S::kind).semifield, "cocycles need a semifield base");
  if (auto v = check_family(f.fan, f.reps))
    throw Error("InvalidFamily", v->detail);
  LineCocycle<S> c;
  c.fan = f.fan;
  c.charts = f.fan.maximal_cones();
  for (int a : c.charts)
    for (int b : c.charts) {
      if (a == b) continue;
      c.transitions[{a, b}] =
          MonoidUnit<S>{S::one(), vec_sub(f.reps[b], f.reps[a])};
    }
  return c;
}

// ---------------------------------------------------------------------------
// Affine trivialization

template <class S>
struct AffineTrivialization {
  std::map<int, MonoidUnit<S>> units;  // f per chart; transitions factor as
                                       // f_a^{-1} f_b
};

struct EquivariantObstruction {
  IntVec character;
  IntVec witness_ray;  // a ray of the cone pairing nonzero with the character
};

/// Trivialize a line cocycle on the face fan of a single cone. Line bundles
/// there are trivial, so valid cocycles always factor. With an attached
/// character the equivariant structure trivializes exactly when the
/// character is orthogonal to the cone.
template <class S>
std::variant<AffineTrivialization<S>, EquivariantObstruction> trivialize_affine(
    const LineCocycle<S>& c, const std::optional<IntVec>& character = {}) {
  auto maximal = c.fan.maximal_cones();
  if (maximal.size() != 1)
    throw Error("NotAffineSubfan", "expected the face fan of a single cone");
  std::set<int> chart_set(c.charts.begin(), c.charts.end());
  if (chart_set.size() != c.fan.size())
    throw Error("NotAffineSubfan", "charts must be all faces of the cone");
  if (auto v = validate_line_cocycle(c))
    throw Error("NotACocycle", v->code);
  int top = maximal[0];
  const Cone& sigma = c.fan.cones()[top];
  if (character) {
    if (character->size() != static_cast<size_t>(c.fan.rank()))
      throw Error("DimensionMismatch", "character has wrong length");
    for (const auto& v : sigma.rays())
      if (dot(*character, v) != 0)
        return EquivariantObstruction{*character, v};
  }
  AffineTrivialization<S> out;
  for (int ch : c.charts)
    out.units[ch] = ch == top ? MonoidUnit<S>::one(c.fan.rank())
                              : c.transitions.at({top, ch});
  return out;
}

// ---------------------------------------------------------------------------
// Rank-n cocycles and splitting

template <class S>
using MonomialMat = std::vector<std::vector<std::optional<MonoidUnit<S>>>>;

template <class S>
struct RankCocycle {
  Fan fan;
  int rank = 0;
  std::vector<int> charts;
  std::map<std::pair<int, int>, MonomialMat<S>> transitions;
};

/// Generalized permutation matrix with monoid-unit entries; the invertible
/// form of a rank-n transition.
template <class S>
struct GenPermUnit {
  Perm perm;
  std::vector<MonoidUnit<S>> diag;

  static GenPermUnit identity(int n, size_t dim) {
    return {identity_perm(n),
            std::vector<MonoidUnit<S>>(n, MonoidUnit<S>::one(dim))};
  }

  GenPermUnit inverse() const {
    GenPermUnit r;
    r.perm = inverse_perm(perm);
    r.diag.resize(diag.size());
    for (size_t i = 0; i < diag.size(); ++i)
      r.diag[perm[i]] = diag[i].inverse();
    return r;
  }

  friend GenPermUnit operator*(const GenPermUnit& a, const GenPermUnit& b) {
    GenPermUnit r;
    r.perm = compose(a.perm, b.perm);
    r.diag.resize(a.diag.size());
    for (size_t i = 0; i < a.diag.size(); ++i)
      r.diag[i] = a.diag[b.perm[i]] * b.diag[i];
    return r;
  }
  friend bool operator==(const GenPermUnit& a, const GenPermUnit& b) {
    return a.perm == b.perm && a.diag == b.diag;
  }
  friend bool operator!=(const GenPermUnit& a, const GenPermUnit& b) {
    return !(a == b);
  }

  MonomialMat<S> materialize() const {
    size_t n = perm.size();
    MonomialMat<S> m(n, std::vector<std::optional<MonoidUnit<S>>>(n));
    for (size_t i = 0; i < n; ++i) m[perm[i]][i] = diag[i];
    return m;
  }
};

/// Support-pattern decomposition of a monomial matrix; is_unit decides
/// whether an entry is invertible over the overlap chart.
template <class S, class UnitPred>
std::variant<GenPermUnit<S>, NotInvertible> decompose_monomial(
    const MonomialMat<S>& m, UnitPred is_unit) {
  size_t n = m.size();
  GenPermUnit<S> g;
  g.perm.assign(n, -1);
  g.diag.resize(n);
  std::vector<int> row_used(n, -1);
  for (size_t j = 0; j < n; ++j) {
    size_t found = n;
    for (size_t i = 0; i < n; ++i) {
      if (m[i].size() != n) throw Error("DimensionMismatch", "ragged matrix");
      if (!m[i][j] || m[i][j]->scalar.is_zero()) continue;
      if (found != n)
        return NotInvertible{NotInvertible::Reason::MultipleInColumn, j, i};
      found = i;
    }
    if (found == n)
      return NotInvertible{NotInvertible::Reason::EmptyColumn, j, 0};
    if (!is_unit(*m[found][j]))
      return NotInvertible{NotInvertible::Reason::NonUnitEntry, j, found};
    if (row_used[found] >= 0)
      return NotInvertible{NotInvertible::Reason::NotPermutationSupport, j,
                           found};
    row_used[found] = static_cast<int>(j);
    g.perm[j] = static_cast<int>(found);
    g.diag[j] = *m[found][j];
  }
  return g;
}

/// Block-diagonal direct sum of line cocycles over a common fan and cover.
template <class S>
RankCocycle<S> direct_sum(const std::vector<LineCocycle<S>>& lines) {
  if (lines.empty()) throw Error("EmptySum", "need at least one line cocycle");
  RankCocycle<S> c;
  c.fan = lines[0].fan;
  c.charts = lines[0].charts;
  c.rank = static_cast<int>(lines.size());
  for (const auto& l : lines)
    if (l.fan != c.fan || l.charts != c.charts)
      throw Error("FanMismatch", "line cocycles over different covers");
  for (int a : c.charts)
    for (int b : c.charts) {
      if (a == b) continue;
      MonomialMat<S> m(c.rank,
                       std::vector<std::optional<MonoidUnit<S>>>(c.rank));
      for (int k = 0; k < c.rank; ++k)
        m[k][k] = lines[k].transitions.at({a, b});
      c.transitions[{a, b}] = std::move(m);
    }
  return c;
}

/// Change the frame on each chart: transition (a, b) becomes
/// C_a * t * C_b^{-1}. Conjugator exponents must be units of their chart
/// monoid for the result to remain a cocycle over the same cover.
template <class S>
RankCocycle<S> conjugate(const RankCocycle<S>& c,
                         const std::map<int, GenPermUnit<S>>& frames) {
  RankCocycle<S> out = c;
  for (auto& [key, mat] : out.transitions) {
    auto dec = decompose_monomial<S>(mat, [](const MonoidUnit<S>&) { return true; });
    if (!std::holds_alternative<GenPermUnit<S>>(dec))
      throw Error("NotInvertibleTransition", "cannot conjugate this transition");
    GenPermUnit<S> t = std::get<GenPermUnit<S>>(dec);
    t = frames.at(key.first) * t * frames.at(key.second).inverse();
    mat = t.materialize();
  }
  return out;
}

enum class SplitAnchor { SmallestChart, LargestChart };

struct SplitFailure {
  std::string code;  // NotInvertibleTransition | InconsistentPermutationCocycle
  int chart_i = -1, chart_j = -1;
  std::optional<NotInvertible> witness;
  std::string detail;
};

/// Split a rank-n cocycle into the multiset of its line summands. Extracts
/// the permutation part of every transition; over a connected cover these
/// form a cocycle into a constant group, so one global relabeling anchored
/// at a single chart turns every transition diagonal. The anchor choice
/// only permutes the returned summands.
template <class S>
std::variant<std::vector<LineCocycle<S>>, SplitFailure> split_cocycle(
    const RankCocycle<S>& c, SplitAnchor anchor = SplitAnchor::SmallestChart) {
  if (validate_fan(c.fan))
    throw Error("InvalidFan", "split requires a validated fan");
  if (!cover_graph_connected(c.fan))
    throw Error("NotIrreducible", "cover graph must be connected");
  if (c.rank < 1) throw Error("BadRank", "rank must be positive");
  const size_t dim = c.fan.rank();

  // Decompose every transition, diagnosing the first failure.
  std::map<std::pair<int, int>, GenPermUnit<S>> dec;
  for (int a : c.charts)
    for (int b : c.charts) {
      if (a == b) continue;
      auto it = c.transitions.find({a, b});
      if (it == c.transitions.end())
        throw Error("MissingTransition", "transition pair absent");
      if (it->second.size() != static_cast<size_t>(c.rank))
        throw Error("DimensionMismatch", "transition size differs from rank");
      Cone overlap = intersect(c.fan.cones()[a], c.fan.cones()[b]);
      SublatticeReducer red(perp_lattice(overlap), dim);
      auto r = decompose_monomial<S>(it->second, [&](const MonoidUnit<S>& u) {
        return !u.scalar.is_zero() && red.contains(u.exponent);
      });
      if (auto* w = std::get_if<NotInvertible>(&r))
        return SplitFailure{"NotInvertibleTransition", a, b, *w};
      dec[{a, b}] = std::get<GenPermUnit<S>>(r);
    }

  // Cocycle identities on the decomposed transitions.
  for (int a : c.charts)
    for (int b : c.charts) {
      if (a == b) continue;
      if (dec[{a, b}] * dec[{b, a}] != GenPermUnit<S>::identity(c.rank, dim))
        return SplitFailure{"InconsistentPermutationCocycle", a, b, {},
                            "transition and its reverse do not cancel"};
    }
  for (int a : c.charts)
    for (int b : c.charts)
      for (int d : c.charts) {
        if (a == b || b == d || a == d) continue;
        if (dec[{a, b}] * dec[{b, d}] != dec[{a, d}])
          return SplitFailure{"InconsistentPermutationCocycle", a, d, {},
                              "triple identity fails through chart " +
                                  std::to_string(b)};
      }

  // Global relabeling anchored at one chart.
  std::vector<int> charts_sorted = c.charts;
  std::sort(charts_sorted.begin(), charts_sorted.end());
  int a0 = anchor == SplitAnchor::SmallestChart ? charts_sorted.front()
                                                : charts_sorted.back();
  std::map<int, GenPermUnit<S>> frame;
  for (int ch : c.charts) {
    Perm p = ch == a0 ? identity_perm(c.rank) : dec[{a0, ch}].perm;
    frame[ch] = GenPermUnit<S>{
        p, std::vector<MonoidUnit<S>>(c.rank, MonoidUnit<S>::one(dim))};
  }

  std::vector<LineCocycle<S>> lines(c.rank);
  for (auto& l : lines) {
    l.fan = c.fan;
    l.charts = c.charts;
  }
  for (int a : c.charts)
    for (int b : c.charts) {
      if (a == b) continue;
      GenPermUnit<S> t = frame[a] * dec[{a, b}] * frame[b].inverse();
      if (t.perm != identity_perm(c.rank))
        throw Error("InternalCheck", "relabeling did not diagonalize");
      for (int k = 0; k < c.rank; ++k)
        lines[k].transitions[{a, b}] = t.diag[k];
    }
  return lines;
}

// ---------------------------------------------------------------------------
// Filtration spaces

/// Rank-n jump data: jumps[r][k] is the largest i with basis vector k still
/// inside the ray-r filtration step E^r(i). Filtrations are decreasing and
/// exhaustive by construction.
struct DeltaKlyachkoSpace {
  Fan fan;
  int rank = 0;
  std::vector<IntVec> jumps;  // [fan ray index][k]

  friend bool operator==(const DeltaKlyachkoSpace& a,
                         const DeltaKlyachkoSpace& b) {
    return a.fan == b.fan && a.rank == b.rank && a.jumps == b.jumps;
  }
};

/// jumps[r][k] = <u_{rho, k}, v_rho>, well defined by family compatibility.
inline DeltaKlyachkoSpace tuple_to_space(const std::vector<KlyachkoFamily>& tuple) {
  if (tuple.empty()) throw Error("EmptyTuple", "need at least one family");
  const Fan& fan = tuple[0].fan;
  for (const auto& f : tuple) {
    if (f.fan != fan) throw Error("FanMismatch", "families over different fans");
    if (auto v = check_family(fan, f.reps))
      throw Error("InvalidFamily", v->detail);
  }
  std::vector<int> ray_cone(fan.rays().size(), -1);
  for (size_t c = 0; c < fan.size(); ++c)
    if (fan.ray_indices(static_cast<int>(c)).size() == 1)
      ray_cone[fan.ray_indices(static_cast<int>(c))[0]] = static_cast<int>(c);
  DeltaKlyachkoSpace s;
  s.fan = fan;
  s.rank = static_cast<int>(tuple.size());
  s.jumps.assign(fan.rays().size(), IntVec(tuple.size(), 0));
  for (size_t r = 0; r < fan.rays().size(); ++r) {
    if (ray_cone[r] < 0) throw Error("MissingCone", "ray without singleton cone");
    for (size_t k = 0; k < tuple.size(); ++k)
      s.jumps[r][k] = dot(tuple[k].reps[ray_cone[r]], fan.rays()[r]);
  }
  return s;
}

struct SpaceInvalid {
  int cone = -1;
  int column = -1;
  std::string detail;
};

/// Recover the defining tuple, unique up to a column permutation: for each
/// column and cone, solve for a character matching the jumps on the cone's
/// rays. Solutions are unique modulo the cone's perp lattice; failure means
/// the jumps admit no per-cone isotypic decomposition.
inline std::variant<std::vector<KlyachkoFamily>, SpaceInvalid> space_to_tuple(
    const DeltaKlyachkoSpace& s) {
  const Fan& fan = s.fan;
  if (s.jumps.size() != fan.rays().size())
    throw Error("ShapeMismatch", "one jump row per fan ray required");
  for (const auto& row : s.jumps)
    if (row.size() != static_cast<size_t>(s.rank))
      throw Error("ShapeMismatch", "jump row length must equal the rank");

  std::vector<KlyachkoFamily> tuple(
      s.rank, KlyachkoFamily{fan, std::vector<IntVec>(fan.size())});
  for (size_t c = 0; c < fan.size(); ++c) {
    const auto& ray_idx = fan.ray_indices(static_cast<int>(c));
    IntMat a;
    for (int r : ray_idx) a.push_back(fan.rays()[r]);
    // The solution is determined modulo exactly the perp lattice.
    if (!same_sublattice(kernel_basis(a, fan.rank()),
                         perp_lattice(fan.cones()[c]), fan.rank()))
      throw Error("InternalCheck", "ambiguity beyond the perp lattice");
    for (int k = 0; k < s.rank; ++k) {
      IntVec b;
      for (int r : ray_idx) b.push_back(s.jumps[r][k]);
      auto u = solve_integer(a, b, fan.rank());
      if (!u)
        return SpaceInvalid{static_cast<int>(c), k,
                            "no character matches the jumps on cone " +
                                std::to_string(c)};
      tuple[k].reps[c] = canonical_rep(fan, static_cast<int>(c), *u);
    }
  }
  for (auto& f : tuple)
    if (auto v = check_family(fan, f.reps))
      throw Error("InternalCheck", "recovered tuple is not compatible");
  return tuple;
}

/// Isomorphism of filtration spaces: equality of the jump matrices up to a
/// column permutation (multiset of columns).
inline bool isomorphic(const DeltaKlyachkoSpace& a, const DeltaKlyachkoSpace& b) {
  if (a.fan != b.fan || a.rank != b.rank)
    throw Error("ShapeMismatch", "spaces over different fans or ranks");
  auto columns = [](const DeltaKlyachkoSpace& s) {
    std::vector<IntVec> cols(s.rank, IntVec(s.jumps.size()));
    for (size_t r = 0; r < s.jumps.size(); ++r)
      for (int k = 0; k < s.rank; ++k) cols[k][r] = s.jumps[r][k];
    std::sort(cols.begin(), cols.end());
    return cols;
  };
  return columns(a) == columns(b);
}

// ---------------------------------------------------------------------------
// Valuated-matroid export

struct MatroidFlat {
  Int threshold;             // filtration index i
  std::vector<int> members;  // ground set elements in E^rho(i)
};

struct MatroidRayChain {
  int ray = -1;
  std::vector<MatroidFlat> flats;  // thresholds decreasing, first flat empty
};

/// Free matroid of rank n on {0..n-1} with one chain of flats per ray.
struct MatroidBundle {
  int ground = 0;
  std::vector<MatroidRayChain> rays;
};

inline MatroidBundle matroid_bundle(const DeltaKlyachkoSpace& s) {
  MatroidBundle m;
  m.ground = s.rank;
  for (size_t r = 0; r < s.jumps.size(); ++r) {
    MatroidRayChain chain;
    chain.ray = static_cast<int>(r);
    IntVec levels = s.jumps[r];
    std::sort(levels.begin(), levels.end(), std::greater<Int>());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
    Int top = levels.empty() ? 0 : levels.front();
    chain.flats.push_back(MatroidFlat{top + 1, {}});  // empty above all jumps
    for (Int t : levels) {
      MatroidFlat f;
      f.threshold = t;
      for (int k = 0; k < s.rank; ++k)
        if (s.jumps[r][k] >= t) f.members.push_back(k);
      chain.flats.push_back(std::move(f));
    }
    m.rays.push_back(std::move(chain));
  }
  return m;
}

}  // namespace tropvb
