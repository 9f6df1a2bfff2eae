#pragma once

// The group of equivariant line bundle classes, the character map into it,
// and the ordinary class group as its cokernel, all in Smith normal form.
// The four-term sequence
//
//   0 -> (common perp of all cones) -> Lambda -> Pic_G -> Pic -> 0
//
// is certified exact on every fan this module processes.

#include <algorithm>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tropvb/error.hpp"
#include "tropvb/fan.hpp"
#include "tropvb/intlin.hpp"
#include "tropvb/klyachko.hpp"

namespace tropvb {

/// Integer basis of the characters acting trivially on every chart: the
/// intersection of the perp lattices of all cones, i.e. the kernel of the
/// pairing against every fan ray.
inline std::vector<IntVec> character_kernel(const Fan& fan) {
  IntMat rows;
  for (const auto& r : fan.rays()) rows.push_back(r);
  return kernel_basis(rows, fan.rank());
}

/// Shared computation behind the equivariant and ordinary class groups.
/// Families are coordinatized by their representatives on maximal cones:
/// the compatible tuples form a lattice, the per-cone perp shifts span the
/// trivial directions, and both quotients are presented via Smith form.
class PicardContext {
 public:
  explicit PicardContext(Fan fan) : fan_(std::move(fan)) {
    if (validate_fan(fan_))
      throw Error("InvalidFan", "class group computation needs a valid fan");
    maximal_ = fan_.maximal_cones();
    const size_t n = fan_.rank();
    const size_t m = maximal_.size();
    const size_t dim = n * m;

    // Ray-compatibility equations between maximal cones: for every ray of a
    // pairwise intersection, the two representatives must pair equally.
    IntMat equations;
    for (size_t i = 0; i < m; ++i)
      for (size_t j = i + 1; j < m; ++j) {
        Cone meet = intersect(fan_.cones()[maximal_[i]], fan_.cones()[maximal_[j]]);
        for (const auto& v : meet.rays()) {
          IntVec row(dim, 0);
          for (size_t t = 0; t < n; ++t) {
            row[i * n + t] += v[t];
            row[j * n + t] -= v[t];
          }
          equations.push_back(std::move(row));
        }
      }
    sol_basis_ = kernel_basis(equations, dim);

    // The same lattice as a column matrix, for coordinate solves.
    sol_cols_.assign(dim, IntVec(sol_basis_.size(), 0));
    for (size_t k = 0; k < sol_basis_.size(); ++k)
      for (size_t i = 0; i < dim; ++i) sol_cols_[i][k] = sol_basis_[k][i];

    // Trivial directions: a perp-lattice shift on a single maximal cone.
    std::vector<IntVec> trivial;
    for (size_t i = 0; i < m; ++i)
      for (const auto& w : perp_lattice(fan_.cones()[maximal_[i]])) {
        IntVec t(dim, 0);
        for (size_t s = 0; s < n; ++s) t[i * n + s] = w[s];
        trivial.push_back(coords_of_tuple(t));
      }
    trivial_coords_ = trivial;
    pic_g_ = lattice_quotient(sol_basis_.size(), trivial);

    // Characters embed as constant tuples.
    psi_coords_.clear();
    for (size_t s = 0; s < n; ++s) {
      IntVec t(dim, 0);
      for (size_t i = 0; i < m; ++i) t[i * n + s] = 1;
      psi_coords_.push_back(coords_of_tuple(t));
    }
    std::vector<IntVec> combined = trivial;
    combined.insert(combined.end(), psi_coords_.begin(), psi_coords_.end());
    pic_ = lattice_quotient(sol_basis_.size(), combined);
  }

  const Fan& fan() const { return fan_; }
  const std::vector<int>& maximal() const { return maximal_; }
  const AbelianGroupPresentation& pic_g() const { return pic_g_; }
  const AbelianGroupPresentation& pic() const { return pic_; }

  /// psi in presentation coordinates: column i is the Pic_G class of the
  /// i-th standard character.
  IntMat psi_matrix() const {
    IntMat cols;
    for (const auto& y : psi_coords_) cols.push_back(pic_g_.project(y));
    return transpose(cols, pic_g_.coords());
  }

  /// The forgetful map in coordinates: column per Pic_G generator.
  IntMat forget_matrix() const {
    IntMat cols;
    for (size_t c = 0; c < pic_g_.coords(); ++c) {
      IntVec y(sol_basis_.size(), 0);
      for (size_t i = 0; i < sol_basis_.size(); ++i) y[i] = pic_g_.lift[i][c];
      cols.push_back(pic_.project(y));
    }
    return transpose(cols, pic_.coords());
  }

  IntVec pic_g_class(const KlyachkoFamily& f) const {
    return pic_g_.project(family_coords(f));
  }
  IntVec pic_class(const KlyachkoFamily& f) const {
    return pic_.project(family_coords(f));
  }

  /// Family whose maximal-cone representatives are the given stacked tuple;
  /// faces inherit from their smallest-index maximal cone.
  KlyachkoFamily family_from_tuple(const IntVec& tuple) const {
    const size_t n = fan_.rank();
    std::vector<IntVec> reps(fan_.size(), IntVec(n, 0));
    for (size_t c = 0; c < fan_.size(); ++c) {
      int mx = fan_.maximal_over(static_cast<int>(c));
      size_t pos = std::find(maximal_.begin(), maximal_.end(), mx) - maximal_.begin();
      for (size_t s = 0; s < n; ++s) reps[c][s] = tuple[pos * n + s];
    }
    return make_family(fan_, std::move(reps));
  }

  /// Generator families for the presentation coordinates of Pic_G.
  std::vector<KlyachkoFamily> pic_g_generators() const {
    std::vector<KlyachkoFamily> out;
    for (size_t c = 0; c < pic_g_.coords(); ++c) {
      IntVec y(sol_basis_.size(), 0);
      for (size_t i = 0; i < sol_basis_.size(); ++i) y[i] = pic_g_.lift[i][c];
      out.push_back(family_from_tuple(tuple_of_coords(y)));
    }
    return out;
  }

  /// Exactness certificate; throws ExactnessViolation on any failure.
  void certify_exact() const {
    const size_t n = fan_.rank();
    std::vector<IntVec> kernel = character_kernel(fan_);

    // Reported kernel maps to the trivial Pic_G class.
    for (const auto& k : kernel)
      if (!pic_g_.is_trivial_element(psi_of(k)))
        throw Error("ExactnessViolation", "kernel element maps nontrivially");

    // The kernel of psi is exactly the reported sublattice: x is in the
    // kernel iff its constant tuple lies among the trivial shifts.
    std::vector<IntVec> psi_ker = psi_kernel_direct();
    if (!same_sublattice(psi_ker, kernel, n))
      throw Error("ExactnessViolation", "psi kernel mismatch");

    // Rank accounting for the first half of the sequence.
    std::vector<IntVec> triv_and_psi = trivial_coords_;
    triv_and_psi.insert(triv_and_psi.end(), psi_coords_.begin(), psi_coords_.end());
    int image_rank = lattice_rank(triv_and_psi) - lattice_rank(trivial_coords_);
    if (lattice_rank(kernel) + image_rank != static_cast<int>(n))
      throw Error("ExactnessViolation", "rank identity fails");

    // Characters die in Pic.
    for (const auto& y : psi_coords_)
      if (!pic_.is_trivial_element(pic_.project(y)))
        throw Error("ExactnessViolation", "character image survives in Pic");

    // Every Pic_G generator killed by the forgetful map is an explicit
    // combination of a character image and a trivial shift.
    for (size_t c = 0; c < pic_g_.coords(); ++c) {
      IntVec y(sol_basis_.size(), 0);
      for (size_t i = 0; i < sol_basis_.size(); ++i) y[i] = pic_g_.lift[i][c];
      bool dies = pic_.is_trivial_element(pic_.project(y));
      bool member = SublatticeReducer(triv_and_psi, sol_basis_.size()).contains(y);
      if (dies != member)
        throw Error("ExactnessViolation", "forgetful kernel is not the psi image");
    }
  }

  IntVec psi_of(const IntVec& x) const {
    IntVec acc(pic_g_.coords(), 0);
    for (size_t s = 0; s < x.size(); ++s)
      acc = vec_add(acc, vec_scale(x[s], pic_g_.project(psi_coords_[s])));
    return pic_g_.normalize(acc);
  }

 private:
  IntVec family_coords(const KlyachkoFamily& f) const {
    if (f.fan != fan_) throw Error("FanMismatch", "family over a different fan");
    const size_t n = fan_.rank();
    IntVec tuple(n * maximal_.size(), 0);
    for (size_t i = 0; i < maximal_.size(); ++i)
      for (size_t s = 0; s < n; ++s) tuple[i * n + s] = f.reps[maximal_[i]][s];
    return coords_of_tuple(tuple);
  }

  IntVec coords_of_tuple(const IntVec& tuple) const {
    auto sol = solve_integer(sol_cols_, tuple, sol_basis_.size());
    if (!sol)
      throw Error("InternalCheck", "tuple is not a compatible family tuple");
    return *sol;
  }

  IntVec tuple_of_coords(const IntVec& y) const {
    IntVec tuple(fan_.rank() * maximal_.size(), 0);
    for (size_t k = 0; k < sol_basis_.size(); ++k)
      if (y[k] != 0) tuple = vec_add(tuple, vec_scale(y[k], sol_basis_[k]));
    return tuple;
  }

  /// Characters with trivial Pic_G class, computed directly: solve for x
  /// with constant-tuple coordinates inside the trivial-shift lattice.
  std::vector<IntVec> psi_kernel_direct() const {
    const size_t n = fan_.rank();
    const size_t s = sol_basis_.size();
    const size_t k = trivial_coords_.size();
    // Rows: psi_coords (as s x n matrix) alongside -trivial generators;
    // kernel vectors (x, t) with psi(x) = sum t_i triv_i.
    IntMat m(s, IntVec(n + k, 0));
    for (size_t col = 0; col < n; ++col)
      for (size_t row = 0; row < s; ++row) m[row][col] = psi_coords_[col][row];
    for (size_t col = 0; col < k; ++col)
      for (size_t row = 0; row < s; ++row)
        m[row][n + col] = -trivial_coords_[col][row];
    std::vector<IntVec> raw = kernel_basis(m, n + k);
    std::vector<IntVec> out;
    for (const auto& v : raw)
      out.push_back(IntVec(v.begin(), v.begin() + n));
    // Project away duplicate directions.
    SublatticeReducer red(out, n);
    return red.hermite_rows().empty() ? std::vector<IntVec>{}
                                      : red.hermite_rows();
  }

  Fan fan_;
  std::vector<int> maximal_;
  std::vector<IntVec> sol_basis_;   // basis of compatible tuples
  IntMat sol_cols_;                 // same lattice, generators as columns
  std::vector<IntVec> trivial_coords_;
  std::vector<IntVec> psi_coords_;  // coordinates of the constant tuples
  AbelianGroupPresentation pic_g_;
  AbelianGroupPresentation pic_;
};

struct EquivariantPicard {
  AbelianGroupPresentation group;
  std::vector<KlyachkoFamily> generators;
};

inline EquivariantPicard equivariant_picard(const Fan& fan) {
  PicardContext ctx(fan);
  return EquivariantPicard{ctx.pic_g(), ctx.pic_g_generators()};
}

struct PicardReport {
  std::vector<IntVec> kernel;  // basis of the character kernel in Lambda
  AbelianGroupPresentation pic_g;
  AbelianGroupPresentation pic;
  IntMat psi;     // pic_g coordinates x rank
  IntMat forget;  // pic coordinates x pic_g coordinates
};

inline PicardReport picard(const Fan& fan) {
  PicardContext ctx(fan);
  ctx.certify_exact();
  return PicardReport{character_kernel(fan), ctx.pic_g(), ctx.pic(),
                      ctx.psi_matrix(), ctx.forget_matrix()};
}

struct LineBundleClass {
  IntVec pic_coords;
  KlyachkoFamily lift;  // an equivariant class over the same cocycle
};

/// Class of a line cocycle in Pic, plus one equivariant lift. The scalar
/// parts never obstruct: over a cover in which all charts meet, constants
/// cancel against an anchor chart, so the class is carried by exponents.
template <class S>
LineBundleClass classify_line_bundle(const PicardContext& ctx,
                                     const LineCocycle<S>& c) {
  if (c.fan != ctx.fan()) throw Error("FanMismatch", "cocycle over a different fan");
  if (auto v = validate_line_cocycle(c))
    throw Error("NotACocycle", v->code + " between charts " +
                                   std::to_string(v->i) + " and " +
                                   std::to_string(v->j));
  std::vector<int> charts = c.charts;
  std::sort(charts.begin(), charts.end());
  if (charts != ctx.maximal())
    throw Error("BadChart", "classification expects the maximal-cone cover");
  const size_t n = ctx.fan().rank();
  int anchor = charts.front();
  IntVec tuple(n * charts.size(), 0);
  for (size_t i = 0; i < charts.size(); ++i) {
    if (charts[i] == anchor) continue;
    const IntVec& e = c.transitions.at({anchor, charts[i]}).exponent;
    for (size_t s = 0; s < n; ++s) tuple[i * n + s] = e[s];
  }
  KlyachkoFamily lift = ctx.family_from_tuple(tuple);
  return LineBundleClass{ctx.pic_class(lift), lift};
}

}  // namespace tropvb
