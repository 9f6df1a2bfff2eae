#pragma once

// Exact arithmetic for the closed world of base semirings: the Boolean
// semifield B, the tropical (max-plus) semifield T over exact rationals,
// and the naturals N. No floating point anywhere.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tropvb/error.hpp"

namespace tropvb {

using Rat = boost::multiprecision::cpp_rational;

enum class SemiringKind { Boolean, TropicalRational, Naturals };

struct SemiringFlags {
  bool idempotent;
  bool zero_sum_free;
  bool semifield;
  bool connected_spectrum;  // only trivial idempotent pairs
};

// Table-driven constants, not runtime proofs.
constexpr SemiringFlags flags_of(SemiringKind k) {
  switch (k) {
    case SemiringKind::Boolean:
      return {true, true, true, true};
    case SemiringKind::TropicalRational:
      return {true, true, true, true};
    case SemiringKind::Naturals:
      return {false, true, false, true};
  }
  return {false, false, false, false};
}

inline const char* semiring_name(SemiringKind k) {
  switch (k) {
    case SemiringKind::Boolean: return "B";
    case SemiringKind::TropicalRational: return "T";
    case SemiringKind::Naturals: return "N";
  }
  return "?";
}

/// The two-element semifield {0, 1} with 1 + 1 = 1.
class Boole {
 public:
  static constexpr SemiringKind kind = SemiringKind::Boolean;

  constexpr Boole() : v_(false) {}
  constexpr explicit Boole(bool v) : v_(v) {}

  static constexpr Boole zero() { return Boole(false); }
  static constexpr Boole one() { return Boole(true); }

  bool value() const { return v_; }
  bool is_zero() const { return !v_; }
  bool is_unit() const { return v_; }
  Boole inverse() const {
    if (!v_) throw Error("NotAUnit", "0 has no inverse in B");
    return *this;
  }

  friend Boole operator+(Boole a, Boole b) { return Boole(a.v_ || b.v_); }
  friend Boole operator*(Boole a, Boole b) { return Boole(a.v_ && b.v_); }
  friend bool operator==(Boole a, Boole b) { return a.v_ == b.v_; }
  friend bool operator!=(Boole a, Boole b) { return a.v_ != b.v_; }

 private:
  bool v_;
};

/// Max-plus over exact rationals. The additive identity is -infinity and
/// the multiplicative identity is the rational 0.
class Trop {
 public:
  static constexpr SemiringKind kind = SemiringKind::TropicalRational;

  Trop() : neg_inf_(true) {}
  explicit Trop(Rat v) : neg_inf_(false), v_(std::move(v)) {}
  explicit Trop(long long v) : neg_inf_(false), v_(v) {}

  static Trop zero() { return Trop(); }
  static Trop one() { return Trop(Rat(0)); }
  static Trop neg_infinity() { return Trop(); }

  bool is_neg_infinity() const { return neg_inf_; }
  bool is_zero() const { return neg_inf_; }
  bool is_unit() const { return !neg_inf_; }

  /// Finite value; only valid when not -infinity.
  const Rat& finite_value() const {
    if (neg_inf_) throw Error("NotFinite", "-inf has no finite value");
    return v_;
  }

  Trop inverse() const {
    if (neg_inf_) throw Error("NotAUnit", "-inf has no inverse in T");
    return Trop(Rat(-v_));
  }

  friend Trop operator+(const Trop& a, const Trop& b) {  // max
    if (a.neg_inf_) return b;
    if (b.neg_inf_) return a;
    return Trop(a.v_ >= b.v_ ? a.v_ : b.v_);
  }
  friend Trop operator*(const Trop& a, const Trop& b) {  // ordinary addition
    if (a.neg_inf_ || b.neg_inf_) return Trop();
    return Trop(Rat(a.v_ + b.v_));
  }
  friend bool operator==(const Trop& a, const Trop& b) {
    if (a.neg_inf_ || b.neg_inf_) return a.neg_inf_ == b.neg_inf_;
    return a.v_ == b.v_;
  }
  friend bool operator!=(const Trop& a, const Trop& b) { return !(a == b); }

 private:
  bool neg_inf_;
  Rat v_;
};

/// The naturals with ordinary arithmetic; zero-sum free, not idempotent,
/// not a semifield.
class Nat {
 public:
  static constexpr SemiringKind kind = SemiringKind::Naturals;

  constexpr Nat() : v_(0) {}
  explicit Nat(unsigned long long v) : v_(v) {}

  static Nat zero() { return Nat(); }
  static Nat one() { return Nat(1); }

  unsigned long long value() const { return v_; }
  bool is_zero() const { return v_ == 0; }
  bool is_unit() const { return v_ == 1; }
  Nat inverse() const {
    if (v_ != 1) throw Error("NotAUnit", "only 1 is invertible in N");
    return *this;
  }

  friend Nat operator+(Nat a, Nat b) { return Nat(a.v_ + b.v_); }
  friend Nat operator*(Nat a, Nat b) { return Nat(a.v_ * b.v_); }
  friend bool operator==(Nat a, Nat b) { return a.v_ == b.v_; }
  friend bool operator!=(Nat a, Nat b) { return a.v_ != b.v_; }

 private:
  unsigned long long v_;
};

/// Runtime-tagged scalar for the CLI, JSON, and the expression evaluator.
class Scalar {
 public:
  Scalar() : v_(Boole(false)) {}
  Scalar(Boole b) : v_(b) {}
  Scalar(Trop t) : v_(std::move(t)) {}
  Scalar(Nat n) : v_(n) {}

  SemiringKind kind() const {
    if (std::holds_alternative<Boole>(v_)) return SemiringKind::Boolean;
    if (std::holds_alternative<Trop>(v_)) return SemiringKind::TropicalRational;
    return SemiringKind::Naturals;
  }

  static Scalar zero(SemiringKind k) {
    switch (k) {
      case SemiringKind::Boolean: return Scalar(Boole::zero());
      case SemiringKind::TropicalRational: return Scalar(Trop::zero());
      case SemiringKind::Naturals: return Scalar(Nat::zero());
    }
    throw Error("UnknownSemiring", "bad kind");
  }
  static Scalar one(SemiringKind k) {
    switch (k) {
      case SemiringKind::Boolean: return Scalar(Boole::one());
      case SemiringKind::TropicalRational: return Scalar(Trop::one());
      case SemiringKind::Naturals: return Scalar(Nat::one());
    }
    throw Error("UnknownSemiring", "bad kind");
  }

  const Boole& as_boole() const { return expect<Boole>(); }
  const Trop& as_trop() const { return expect<Trop>(); }
  const Nat& as_nat() const { return expect<Nat>(); }

  bool is_zero() const {
    return std::visit([](const auto& x) { return x.is_zero(); }, v_);
  }
  bool is_unit() const {
    return std::visit([](const auto& x) { return x.is_unit(); }, v_);
  }

  friend Scalar operator+(const Scalar& a, const Scalar& b) {
    return a.combine(b, [](const auto& x, const auto& y) { return x + y; });
  }
  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    return a.combine(b, [](const auto& x, const auto& y) { return x * y; });
  }
  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.v_ == b.v_;
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

 private:
  template <class T>
  const T& expect() const {
    const T* p = std::get_if<T>(&v_);
    if (!p) throw Error("WrongTag", "scalar belongs to a different semiring");
    return *p;
  }

  template <class F>
  Scalar combine(const Scalar& o, F f) const {
    if (kind() != o.kind())
      throw Error("WrongTag", "mixed semirings in one operation");
    return std::visit(
        [&](const auto& x) -> Scalar {
          using T = std::decay_t<decltype(x)>;
          return Scalar(f(x, std::get<T>(o.v_)));
        },
        v_);
  }

  std::variant<Boole, Trop, Nat> v_;
};

// ---------------------------------------------------------------------------
// Expression trees

/// Arithmetic expression over a single semiring: add, mul, the two
/// constants, and leaves. Sub/Div nodes exist so that requests for the
/// missing operations fail loudly instead of silently.
struct Expr {
  enum class Op { Constant, Zero, One, Add, Mul, Sub, Div };

  Op op = Op::Zero;
  std::optional<Scalar> constant;
  std::vector<Expr> args;

  static Expr lit(Scalar s) {
    Expr e;
    e.op = Op::Constant;
    e.constant = std::move(s);
    return e;
  }
  static Expr zero() { return node(Op::Zero, {}); }
  static Expr one() { return node(Op::One, {}); }
  static Expr add(Expr a, Expr b) { return node(Op::Add, {std::move(a), std::move(b)}); }
  static Expr mul(Expr a, Expr b) { return node(Op::Mul, {std::move(a), std::move(b)}); }
  static Expr sub(Expr a, Expr b) { return node(Op::Sub, {std::move(a), std::move(b)}); }
  static Expr div(Expr a, Expr b) { return node(Op::Div, {std::move(a), std::move(b)}); }

 private:
  static Expr node(Op op, std::vector<Expr> args) {
    Expr e;
    e.op = op;
    e.args = std::move(args);
    return e;
  }
};

inline Scalar eval_expr(SemiringKind tag, const Expr& e) {
  switch (e.op) {
    case Expr::Op::Constant:
      if (!e.constant || e.constant->kind() != tag)
        throw Error("WrongTag", "constant does not belong to the tagged semiring");
      return *e.constant;
    case Expr::Op::Zero:
      return Scalar::zero(tag);
    case Expr::Op::One:
      return Scalar::one(tag);
    case Expr::Op::Add:
      return eval_expr(tag, e.args.at(0)) + eval_expr(tag, e.args.at(1));
    case Expr::Op::Mul:
      return eval_expr(tag, e.args.at(0)) * eval_expr(tag, e.args.at(1));
    case Expr::Op::Sub:
    case Expr::Op::Div:
      throw Error("DivisionRequested",
                  "semirings expose neither subtraction nor division");
  }
  throw Error("BadExpression", "unknown node");
}

// ---------------------------------------------------------------------------
// Idempotent pairs

enum class IdempotentPairClass { NotPair, TrivialPair, NontrivialPair };

/// (e, f) is an idempotent pair when e + f = 1 and e * f = 0; the pair is
/// trivial when {e, f} = {0, 1}.
inline IdempotentPairClass classify_idempotent_pair(const Scalar& e,
                                                    const Scalar& f) {
  SemiringKind k = e.kind();
  if (f.kind() != k) throw Error("WrongTag", "pair from different semirings");
  if (e + f != Scalar::one(k) || e * f != Scalar::zero(k))
    return IdempotentPairClass::NotPair;
  bool trivial = (e == Scalar::zero(k) && f == Scalar::one(k)) ||
                 (e == Scalar::one(k) && f == Scalar::zero(k));
  return trivial ? IdempotentPairClass::TrivialPair
                 : IdempotentPairClass::NontrivialPair;
}

}  // namespace tropvb
