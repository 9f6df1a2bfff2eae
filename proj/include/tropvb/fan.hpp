#pragma once

// Fans: finite collections of strongly convex rational polyhedral cones,
// closed under faces, with pairwise intersections that are common faces.
// Cones and rays keep their file order so that indices in serialized
// families and filtration data are stable.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tropvb/cone.hpp"
#include "tropvb/error.hpp"
#include "tropvb/intlin.hpp"

namespace tropvb {

struct FanViolation {
  std::string code;     // stable identifier, e.g. "IntersectionNotFace"
  std::string message;  // human readable detail
  int cone_a = -1;      // offending cone indices where applicable
  int cone_b = -1;
};

class Fan {
 public:
  Fan() = default;

  /// rays: primitive generators, file order preserved. cones: each cone as
  /// the set of indices of its extremal rays; the zero cone is the empty
  /// set. Structure is taken as given; call validate() to certify it.
  Fan(int rank, std::vector<IntVec> rays, std::vector<std::vector<int>> cone_rays)
      : rank_(rank), rays_(std::move(rays)) {
    for (auto& idx : cone_rays) {
      std::sort(idx.begin(), idx.end());
      idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
      std::vector<IntVec> gens;
      for (int i : idx) {
        if (i < 0 || i >= static_cast<int>(rays_.size()))
          throw Error("BadRayIndex", "cone references a ray out of range");
        gens.push_back(rays_[i]);
      }
      cones_.emplace_back(rank_, std::move(gens));
      cone_ray_indices_.push_back(std::move(idx));
    }
  }

  int rank() const { return rank_; }
  const std::vector<IntVec>& rays() const { return rays_; }
  const std::vector<Cone>& cones() const { return cones_; }
  const std::vector<std::vector<int>>& cone_ray_indices() const {
    return cone_ray_indices_;
  }
  size_t size() const { return cones_.size(); }

  int index_of(const Cone& c) const {
    for (size_t i = 0; i < cones_.size(); ++i)
      if (cones_[i] == c) return static_cast<int>(i);
    return -1;
  }

  /// tau is a proper or improper face of sigma (both fan members).
  bool is_face(int tau, int sigma) const {
    return is_face_of(cones_[tau], cones_[sigma]);
  }

  /// Indices of cones that are not proper faces of any other cone.
  std::vector<int> maximal_cones() const {
    std::vector<int> out;
    for (size_t i = 0; i < cones_.size(); ++i) {
      bool maximal = true;
      for (size_t j = 0; j < cones_.size() && maximal; ++j)
        if (i != j && cones_[i] != cones_[j] && is_face(static_cast<int>(i), static_cast<int>(j)))
          maximal = false;
      if (maximal) out.push_back(static_cast<int>(i));
    }
    return out;
  }

  /// Smallest-index maximal cone having the given cone as a face.
  int maximal_over(int cone_index) const {
    for (int m : maximal_cones())
      if (is_face(cone_index, m)) return m;
    throw Error("BadFan", "cone is not a face of any maximal cone");
  }

  /// Ray indices of the rays spanning the given cone.
  const std::vector<int>& ray_indices(int cone_index) const {
    return cone_ray_indices_[cone_index];
  }

  friend bool operator==(const Fan& a, const Fan& b) {
    return a.rank_ == b.rank_ && a.rays_ == b.rays_ &&
           a.cone_ray_indices_ == b.cone_ray_indices_;
  }
  friend bool operator!=(const Fan& a, const Fan& b) { return !(a == b); }

 private:
  int rank_ = 1;
  std::vector<IntVec> rays_;
  std::vector<Cone> cones_;
  std::vector<std::vector<int>> cone_ray_indices_;
};

/// Full structural check; returns the first violation found, if any.
inline std::optional<FanViolation> validate_fan(const Fan& fan) {
  const auto& rays = fan.rays();
  for (size_t i = 0; i < rays.size(); ++i) {
    if (is_zero_vec(rays[i]))
      return FanViolation{"ZeroRay", "ray " + std::to_string(i) + " is zero"};
    if (rays[i] != primitive(rays[i]))
      return FanViolation{"NonPrimitiveRay",
                          "ray " + std::to_string(i) + " is not primitive"};
    for (size_t j = i + 1; j < rays.size(); ++j)
      if (rays[i] == rays[j])
        return FanViolation{"DuplicateRay",
                            "rays " + std::to_string(i) + " and " +
                                std::to_string(j) + " coincide"};
  }

  std::set<int> used;
  for (const auto& idx : fan.cone_ray_indices()) used.insert(idx.begin(), idx.end());
  for (size_t i = 0; i < rays.size(); ++i)
    if (!used.count(static_cast<int>(i)))
      return FanViolation{"UnusedRay",
                          "ray " + std::to_string(i) + " appears in no cone"};

  for (size_t i = 0; i < fan.size(); ++i) {
    const Cone& c = fan.cones()[i];
    if (!is_strongly_convex(c))
      return FanViolation{"NotStronglyConvex",
                          "cone " + std::to_string(i) + " contains a line",
                          static_cast<int>(i)};
    if (extremal_rays(c) != c)
      return FanViolation{"RedundantGenerator",
                          "cone " + std::to_string(i) +
                              " lists a non-extremal ray",
                          static_cast<int>(i)};
    for (size_t j = i + 1; j < fan.size(); ++j)
      if (fan.cones()[i] == fan.cones()[j])
        return FanViolation{"DuplicateCone", "cones " + std::to_string(i) +
                                                 " and " + std::to_string(j) +
                                                 " coincide",
                            static_cast<int>(i), static_cast<int>(j)};
  }

  // Closure under faces (this also forces the zero cone to be present).
  for (size_t i = 0; i < fan.size(); ++i)
    for (const Cone& f : faces(fan.cones()[i]))
      if (fan.index_of(f) < 0)
        return FanViolation{"FacesNotClosed",
                            "a face of cone " + std::to_string(i) +
                                " is missing from the fan",
                            static_cast<int>(i)};
  if (fan.size() == 0)
    return FanViolation{"FacesNotClosed", "fan is empty"};

  // Pairwise intersections must be common faces.
  for (size_t i = 0; i < fan.size(); ++i)
    for (size_t j = i + 1; j < fan.size(); ++j) {
      Cone meet = intersect(fan.cones()[i], fan.cones()[j]);
      if (!is_face_of(meet, fan.cones()[i]) ||
          !is_face_of(meet, fan.cones()[j]))
        return FanViolation{"IntersectionNotFace",
                            "cones " + std::to_string(i) + " and " +
                                std::to_string(j) +
                                " intersect in a non-face",
                            static_cast<int>(i), static_cast<int>(j)};
    }
  return std::nullopt;
}

/// Graph on the cones with edges for face relations; connected for every
/// valid fan since the zero cone is a face of everything. Exists to certify
/// the irreducibility hypothesis behind cocycle splitting.
inline bool cover_graph_connected(const Fan& fan) {
  size_t n = fan.size();
  if (n == 0) return false;
  std::vector<std::vector<int>> adj(n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      if (i != j && fan.cones()[i] != fan.cones()[j] &&
          is_face_of(fan.cones()[i], fan.cones()[j])) {
        adj[i].push_back(static_cast<int>(j));
        adj[j].push_back(static_cast<int>(i));
      }
  std::vector<bool> seen(n, false);
  std::vector<int> stack{0};
  seen[0] = true;
  size_t reached = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : adj[v])
      if (!seen[w]) {
        seen[w] = true;
        ++reached;
        stack.push_back(w);
      }
  }
  return reached == n;
}

/// The monomial prime of the chart monoid attached to a face tau of sigma:
/// the monoid elements pairing strictly positively somewhere on the
/// relative interior of tau. The prime is described by its complement, the
/// face of the dual cone orthogonal to tau.
struct OrbitPrime {
  Cone face;                             // tau
  std::vector<IntVec> complement_gens;   // generators of dual(sigma) cap tau-perp
};

/// Bijection between the faces of sigma and the monomial primes of its
/// chart monoid. Larger faces give larger primes and smaller complements,
/// mirroring the reversed order on orbit closures.
inline std::vector<OrbitPrime> orbit_cone_primes(const Cone& sigma) {
  if (!is_strongly_convex(sigma))
    throw Error("NotStronglyConvex", "cone contains a line");
  Cone dual = dual_cone(sigma);
  std::vector<OrbitPrime> out;
  for (const Cone& tau : faces(sigma)) {
    std::vector<IntVec> complement;
    for (const auto& u : dual.rays()) {
      bool orth = true;
      for (const auto& v : tau.rays())
        if (dot(u, v) != 0) orth = false;
      if (orth) complement.push_back(u);
    }
    // Canonicalize the complement as extreme rays of the face of the dual.
    Cone comp = extremal_rays(Cone(sigma.rank(), complement));
    out.push_back(OrbitPrime{tau, comp.rays()});
  }
  return out;
}

}  // namespace tropvb
