#pragma once

// Matrices over the base semirings and the structure of their invertible
// elements: every invertible matrix over a zero-sum-free semiring with only
// trivial idempotent pairs is a generalized permutation matrix, i.e. a
// permutation support pattern with unit entries.

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <numeric>
#include <variant>
#include <vector>

#include "tropvb/error.hpp"
#include "tropvb/semiring.hpp"

namespace tropvb {

// ---------------------------------------------------------------------------
// Permutations. perm[i] is the image of i; composition acts left to right on
// values: compose(a, b)(i) = a(b(i)). This convention is fixed globally and
// the convolution in sn_group.hpp is tested against it.

using Perm = std::vector<int>;

inline Perm identity_perm(int n) {
  Perm p(n);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

inline bool is_permutation(const Perm& p) {
  std::vector<bool> seen(p.size(), false);
  for (int v : p) {
    if (v < 0 || v >= static_cast<int>(p.size()) || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

inline Perm compose(const Perm& a, const Perm& b) {
  assert(a.size() == b.size());
  Perm r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[b[i]];
  return r;
}

inline Perm inverse_perm(const Perm& p) {
  Perm r(p.size());
  for (size_t i = 0; i < p.size(); ++i) r[p[i]] = static_cast<int>(i);
  return r;
}

inline std::vector<Perm> all_permutations(int n) {
  Perm p = identity_perm(n);
  std::vector<Perm> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

// ---------------------------------------------------------------------------

template <class S>
class Matrix {
 public:
  Matrix() = default;
  Matrix(size_t rows, size_t cols, S fill = S::zero())
      : rows_(rows), cols_(cols), e_(rows * cols, fill) {}

  static Matrix identity(size_t n) {
    Matrix m(n, n);
    for (size_t i = 0; i < n; ++i) m.at(i, i) = S::one();
    return m;
  }

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  S& at(size_t i, size_t j) { return e_[i * cols_ + j]; }
  const S& at(size_t i, size_t j) const { return e_[i * cols_ + j]; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_)
      throw Error("DimensionMismatch", "inner dimensions disagree");
    Matrix r(a.rows_, b.cols_);
    for (size_t i = 0; i < a.rows_; ++i)
      for (size_t j = 0; j < b.cols_; ++j) {
        S acc = S::zero();
        for (size_t k = 0; k < a.cols_; ++k)
          acc = acc + a.at(i, k) * b.at(k, j);
        r.at(i, j) = acc;
      }
    return r;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

 private:
  size_t rows_ = 0, cols_ = 0;
  std::vector<S> e_;
};

/// Invertible matrix in closed form: the matrix A with A[perm[i]][i] =
/// diag[i] and zeros elsewhere. diag entries are units.
template <class S>
struct GenPerm {
  Perm perm;
  std::vector<S> diag;

  int n() const { return static_cast<int>(perm.size()); }

  Matrix<S> to_matrix() const {
    Matrix<S> m(perm.size(), perm.size());
    for (size_t i = 0; i < perm.size(); ++i) m.at(perm[i], i) = diag[i];
    return m;
  }

  GenPerm inverse() const {
    GenPerm r;
    r.perm = inverse_perm(perm);
    r.diag.resize(diag.size());
    for (size_t i = 0; i < diag.size(); ++i) r.diag[perm[i]] = diag[i].inverse();
    return r;
  }

  friend GenPerm operator*(const GenPerm& a, const GenPerm& b) {
    if (a.perm.size() != b.perm.size())
      throw Error("DimensionMismatch", "sizes disagree");
    GenPerm r;
    r.perm = compose(a.perm, b.perm);
    r.diag.resize(a.diag.size());
    for (size_t i = 0; i < a.diag.size(); ++i)
      r.diag[i] = a.diag[b.perm[i]] * b.diag[i];
    return r;
  }

  friend bool operator==(const GenPerm& a, const GenPerm& b) {
    return a.perm == b.perm && a.diag == b.diag;
  }
};

// ---------------------------------------------------------------------------
// Invertibility via the support pattern.

struct NotInvertible {
  enum class Reason {
    EmptyColumn,            // no nonzero entry in some column
    MultipleInColumn,       // two or more nonzero entries in some column
    NonUnitEntry,           // the candidate entry is nonzero but not a unit
    NotPermutationSupport,  // two columns hit the same row
  };
  Reason reason;
  size_t col = 0;
  size_t row = 0;  // second witness index where applicable

  const char* reason_name() const {
    switch (reason) {
      case Reason::EmptyColumn: return "EmptyColumn";
      case Reason::MultipleInColumn: return "MultipleInColumn";
      case Reason::NonUnitEntry: return "NonUnitEntry";
      case Reason::NotPermutationSupport: return "NotPermutationSupport";
    }
    return "?";
  }
};

template <class S>
using DecomposeResult = std::variant<GenPerm<S>, NotInvertible>;

/// Decide invertibility of a square matrix and return the generalized
/// permutation form, or a witness describing exactly why the support
/// pattern fails. Requires a zero-sum-free semiring with only trivial
/// idempotent pairs; the closed world guarantees this for B, T, N.
template <class S>
DecomposeResult<S> decompose_invertible(const Matrix<S>& a) {
  constexpr SemiringFlags f = flags_of(S::kind);
  static_assert(f.zero_sum_free, "requires a zero-sum-free semiring");
  if (!f.connected_spectrum)
    throw Error("WrongTag", "semiring may have nontrivial idempotent pairs");
  if (a.rows() != a.cols())
    throw Error("DimensionMismatch", "only square matrices can be invertible");
  size_t n = a.rows();
  GenPerm<S> g;
  g.perm.assign(n, -1);
  g.diag.assign(n, S::zero());
  std::vector<int> row_used(n, -1);
  for (size_t j = 0; j < n; ++j) {
    size_t found = n;
    for (size_t i = 0; i < n; ++i) {
      if (a.at(i, j).is_zero()) continue;
      if (found != n)
        return NotInvertible{NotInvertible::Reason::MultipleInColumn, j, i};
      found = i;
    }
    if (found == n)
      return NotInvertible{NotInvertible::Reason::EmptyColumn, j, 0};
    if (!a.at(found, j).is_unit())
      return NotInvertible{NotInvertible::Reason::NonUnitEntry, j, found};
    if (row_used[found] >= 0)
      return NotInvertible{NotInvertible::Reason::NotPermutationSupport, j,
                           found};
    row_used[found] = static_cast<int>(j);
    g.perm[j] = static_cast<int>(found);
    g.diag[j] = a.at(found, j);
  }
  return g;
}

/// All invertible n x n matrices over B: exactly the n! permutation
/// matrices, since B has a single unit.
inline std::vector<GenPerm<Boole>> enumerate_invertible_boolean(int n) {
  if (n < 1 || n > 4) throw Error("TooLarge", "enumeration bounded at n <= 4");
  std::vector<GenPerm<Boole>> out;
  for (const Perm& p : all_permutations(n))
    out.push_back(GenPerm<Boole>{p, std::vector<Boole>(n, Boole::one())});
  return out;
}

/// The two halves of the semidirect structure: the unit diagonal and the
/// underlying permutation. The permutation part is a group homomorphism to
/// S_n whose kernel is exactly the diagonal matrices.
template <class S>
std::pair<std::vector<S>, Perm> split_sequence_maps(const GenPerm<S>& a) {
  return {a.diag, a.perm};
}

}  // namespace tropvb
