#pragma once

// S_n represented over a connected base: a point of the representing
// semiring is a homomorphism sending exactly one basis idempotent e_sigma
// to 1 and the rest to 0. The group law is convolution through the
// comultiplication e_sigma -> sum_tau e_tau (x) e_{tau^-1 sigma}; over a
// connected base this reproduces composition of permutations.

#include <vector>

#include "tropvb/error.hpp"
#include "tropvb/semimatrix.hpp"
#include "tropvb/semiring.hpp"

namespace tropvb {

/// A homomorphism from the semiring representing S_n into a connected
/// semiring, recorded by the unique selected permutation.
struct SnSelection {
  int n = 1;
  Perm sigma;

  static SnSelection identity(int n) { return {n, identity_perm(n)}; }

  friend bool operator==(const SnSelection& a, const SnSelection& b) {
    return a.n == b.n && a.sigma == b.sigma;
  }
};

/// (f*g)(e_sigma) = sum_tau f(e_tau) g(e_{tau^-1 sigma}), evaluated
/// literally over B. Exactly one sigma receives 1; that is the result.
inline SnSelection convolve(const SnSelection& f, const SnSelection& g) {
  if (f.n != g.n) throw Error("SizeMismatch", "selections of different degree");
  const std::vector<Perm> elements = all_permutations(f.n);
  auto eval = [](const SnSelection& s, const Perm& p) {
    return Boole(s.sigma == p);
  };
  SnSelection result{f.n, {}};
  int hits = 0;
  for (const Perm& sigma : elements) {
    Boole acc = Boole::zero();
    for (const Perm& tau : elements) {
      // e_{tau^-1 sigma}
      Perm rest = compose(inverse_perm(tau), sigma);
      acc = acc + eval(f, tau) * eval(g, rest);
    }
    if (acc == Boole::one()) {
      result.sigma = sigma;
      ++hits;
    }
  }
  if (hits != 1)
    throw Error("BadSelection", "convolution did not select a unique element");
  return result;
}

/// Composition with the antipode e_sigma -> e_{sigma^-1}.
inline SnSelection antipode(const SnSelection& f) {
  return {f.n, inverse_perm(f.sigma)};
}

}  // namespace tropvb
