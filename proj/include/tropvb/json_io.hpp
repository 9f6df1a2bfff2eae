#pragma once

// JSON codecs for every serialized surface. Encodings are canonical so
// output is byte-stable: tropical scalars as {"t": "-inf"} or {"t": "p/q"}
// with q > 0 and gcd(p, q) = 1, Boolean scalars as 0/1, fans as
// {"rank", "rays", "cones"} with cones listing extremal ray indices and the
// zero cone as the empty list. Object keys keep insertion order.

#include <json.hpp>

#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "tropvb/error.hpp"
#include "tropvb/fan.hpp"
#include "tropvb/klyachko.hpp"
#include "tropvb/picard.hpp"
#include "tropvb/semimatrix.hpp"
#include "tropvb/semiring.hpp"
#include "tropvb/units.hpp"

namespace tropvb::io {

using Json = nlohmann::ordered_json;

inline Error parse_error(const std::string& what) {
  return Error("ParseError", what);
}

// ---------------------------------------------------------------------------
// Scalars

inline std::string rational_string(const Rat& r) {
  return boost::multiprecision::numerator(r).str() + "/" +
         boost::multiprecision::denominator(r).str();
}

inline Rat parse_rational(const std::string& s) {
  try {
    Rat r(s);  // accepts "p" and "p/q"
    return r;
  } catch (const std::exception&) {
    throw parse_error("bad rational: " + s);
  }
}

inline Json scalar_to_json(const Scalar& s) {
  switch (s.kind()) {
    case SemiringKind::Boolean:
      return s.as_boole().value() ? 1 : 0;
    case SemiringKind::TropicalRational: {
      const Trop& t = s.as_trop();
      Json j;
      j["t"] = t.is_neg_infinity() ? std::string("-inf")
                                   : rational_string(t.finite_value());
      return j;
    }
    case SemiringKind::Naturals:
      return s.as_nat().value();
  }
  throw parse_error("unknown scalar kind");
}

inline Scalar scalar_from_json(SemiringKind kind, const Json& j) {
  switch (kind) {
    case SemiringKind::Boolean: {
      if (!j.is_number_integer() || (j.get<int>() != 0 && j.get<int>() != 1))
        throw parse_error("Boolean scalar must be 0 or 1");
      return Scalar(Boole(j.get<int>() == 1));
    }
    case SemiringKind::TropicalRational: {
      if (!j.is_object() || !j.contains("t"))
        throw parse_error("tropical scalar must be {\"t\": ...}");
      std::string v = j.at("t").get<std::string>();
      if (v == "-inf") return Scalar(Trop::neg_infinity());
      return Scalar(Trop(parse_rational(v)));
    }
    case SemiringKind::Naturals: {
      if (!j.is_number_integer() || j.get<long long>() < 0)
        throw parse_error("natural scalar must be a nonnegative integer");
      return Scalar(Nat(j.get<unsigned long long>()));
    }
  }
  throw parse_error("unknown semiring tag");
}

inline SemiringKind tag_from_string(const std::string& s) {
  if (s == "B") return SemiringKind::Boolean;
  if (s == "T") return SemiringKind::TropicalRational;
  if (s == "N") return SemiringKind::Naturals;
  throw parse_error("unknown semiring tag: " + s);
}

template <class S>
S scalar_as(const Scalar& s);
template <>
inline Boole scalar_as<Boole>(const Scalar& s) { return s.as_boole(); }
template <>
inline Trop scalar_as<Trop>(const Scalar& s) { return s.as_trop(); }
template <>
inline Nat scalar_as<Nat>(const Scalar& s) { return s.as_nat(); }

// ---------------------------------------------------------------------------
// Integer vectors and matrices

inline Json intvec_to_json(const IntVec& v) {
  Json j = Json::array();
  for (Int x : v) j.push_back(x);
  return j;
}

inline IntVec intvec_from_json(const Json& j) {
  if (!j.is_array()) throw parse_error("expected an integer array");
  IntVec v;
  for (const auto& x : j) {
    if (!x.is_number_integer()) throw parse_error("expected an integer");
    v.push_back(x.get<Int>());
  }
  return v;
}

inline Json intmat_to_json(const IntMat& m) {
  Json j = Json::array();
  for (const auto& row : m) j.push_back(intvec_to_json(row));
  return j;
}

// ---------------------------------------------------------------------------
// Cones and fans

inline Json cone_to_json(const Cone& c) {
  Json j;
  j["rank"] = c.rank();
  j["rays"] = intmat_to_json(c.rays());
  return j;
}

inline Cone cone_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("rank") || !j.contains("rays"))
    throw parse_error("cone needs \"rank\" and \"rays\"");
  std::vector<IntVec> rays;
  for (const auto& r : j.at("rays")) rays.push_back(intvec_from_json(r));
  return Cone(j.at("rank").get<int>(), std::move(rays));
}

inline Json fan_to_json(const Fan& f) {
  Json j;
  j["rank"] = f.rank();
  j["rays"] = intmat_to_json(f.rays());
  Json cones = Json::array();
  for (const auto& idx : f.cone_ray_indices()) {
    Json cj = Json::array();
    for (int i : idx) cj.push_back(i);
    cones.push_back(cj);
  }
  j["cones"] = cones;
  return j;
}

inline Fan fan_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("rank") || !j.contains("rays") ||
      !j.contains("cones"))
    throw parse_error("fan needs \"rank\", \"rays\" and \"cones\"");
  std::vector<IntVec> rays;
  for (const auto& r : j.at("rays")) rays.push_back(intvec_from_json(r));
  std::vector<std::vector<int>> cones;
  for (const auto& c : j.at("cones")) {
    if (!c.is_array()) throw parse_error("each cone must be a list of ray indices");
    std::vector<int> idx;
    for (const auto& x : c) idx.push_back(x.get<int>());
    cones.push_back(std::move(idx));
  }
  return Fan(j.at("rank").get<int>(), std::move(rays), std::move(cones));
}

inline Json fan_violation_to_json(const FanViolation& v) {
  Json j;
  j["code"] = v.code;
  j["message"] = v.message;
  if (v.cone_a >= 0) j["cone_a"] = v.cone_a;
  if (v.cone_b >= 0) j["cone_b"] = v.cone_b;
  return j;
}

// ---------------------------------------------------------------------------
// Families and spaces

inline Json family_to_json(const KlyachkoFamily& f) {
  Json reps = Json::object();
  for (size_t c = 0; c < f.reps.size(); ++c)
    reps[std::to_string(c)] = intvec_to_json(f.reps[c]);
  Json j;
  j["fan"] = fan_to_json(f.fan);
  j["reps"] = reps;
  return j;
}

/// Raw representatives keyed by cone index; validation happens separately.
inline std::vector<IntVec> family_reps_from_json(const Fan& fan, const Json& j) {
  if (!j.is_object() || !j.contains("reps"))
    throw parse_error("family needs \"reps\"");
  std::vector<IntVec> reps(fan.size());
  std::vector<bool> seen(fan.size(), false);
  for (const auto& [key, val] : j.at("reps").items()) {
    int c = 0;
    try {
      c = std::stoi(key);
    } catch (const std::exception&) {
      throw parse_error("cone index key must be an integer: " + key);
    }
    if (c < 0 || c >= static_cast<int>(fan.size()))
      throw parse_error("cone index out of range: " + key);
    reps[c] = intvec_from_json(val);
    seen[c] = true;
  }
  for (size_t c = 0; c < fan.size(); ++c)
    if (!seen[c])
      throw Error("MissingCone", "no representative for cone " + std::to_string(c));
  return reps;
}

inline Json space_to_json(const DeltaKlyachkoSpace& s) {
  Json jumps = Json::object();
  for (size_t r = 0; r < s.jumps.size(); ++r)
    jumps[std::to_string(r)] = intvec_to_json(s.jumps[r]);
  Json j;
  j["rank"] = s.rank;
  j["jumps"] = jumps;
  return j;
}

inline DeltaKlyachkoSpace space_from_json(const Fan& fan, const Json& j) {
  if (!j.is_object() || !j.contains("rank") || !j.contains("jumps"))
    throw parse_error("space needs \"rank\" and \"jumps\"");
  DeltaKlyachkoSpace s;
  s.fan = fan;
  s.rank = j.at("rank").get<int>();
  if (s.rank < 1) throw parse_error("rank must be positive");
  s.jumps.assign(fan.rays().size(), IntVec(s.rank, 0));
  std::vector<bool> seen(fan.rays().size(), false);
  for (const auto& [key, val] : j.at("jumps").items()) {
    int r = 0;
    try {
      r = std::stoi(key);
    } catch (const std::exception&) {
      throw parse_error("ray index key must be an integer: " + key);
    }
    if (r < 0 || r >= static_cast<int>(fan.rays().size()))
      throw parse_error("ray index out of range: " + key);
    IntVec row = intvec_from_json(val);
    if (row.size() != static_cast<size_t>(s.rank))
      throw parse_error("jump row length must equal the rank");
    s.jumps[r] = std::move(row);
    seen[r] = true;
  }
  for (size_t r = 0; r < fan.rays().size(); ++r)
    if (!seen[r]) throw parse_error("no jumps for ray " + std::to_string(r));
  return s;
}

// ---------------------------------------------------------------------------
// Units and cocycles

template <class S>
Json unit_to_json(const MonoidUnit<S>& u) {
  Json j;
  j["scalar"] = scalar_to_json(Scalar(u.scalar));
  j["exp"] = intvec_to_json(u.exponent);
  return j;
}

template <class S>
MonoidUnit<S> unit_from_json(const Json& j, size_t dim) {
  if (!j.is_object() || !j.contains("exp"))
    throw parse_error("unit needs \"exp\"");
  MonoidUnit<S> u;
  u.exponent = intvec_from_json(j.at("exp"));
  if (u.exponent.size() != dim)
    throw parse_error("unit exponent has wrong length");
  u.scalar = j.contains("scalar")
                 ? scalar_as<S>(scalar_from_json(S::kind, j.at("scalar")))
                 : S::one();
  if (u.scalar.is_zero()) throw parse_error("unit scalar must be nonzero");
  return u;
}

template <class S>
Json line_cocycle_to_json(const LineCocycle<S>& c) {
  Json j;
  j["tag"] = semiring_name(S::kind);
  j["charts"] = Json::array();
  for (int ch : c.charts) j["charts"].push_back(ch);
  Json ts = Json::array();
  for (const auto& [key, unit] : c.transitions) {
    Json t;
    t["i"] = key.first;
    t["j"] = key.second;
    t["unit"] = unit_to_json(unit);
    ts.push_back(t);
  }
  j["transitions"] = ts;
  return j;
}

template <class S>
LineCocycle<S> line_cocycle_from_json(const Fan& fan, const Json& j) {
  LineCocycle<S> c;
  c.fan = fan;
  if (j.contains("charts"))
    for (const auto& x : j.at("charts")) c.charts.push_back(x.get<int>());
  else
    c.charts = fan.maximal_cones();
  if (!j.contains("transitions"))
    throw parse_error("cocycle needs \"transitions\"");
  for (const auto& t : j.at("transitions")) {
    int a = t.at("i").get<int>(), b = t.at("j").get<int>();
    c.transitions[{a, b}] = unit_from_json<S>(t.at("unit"), fan.rank());
  }
  complete_cocycle_transitions<S>(c.charts, fan.rank(), c.transitions);
  return c;
}

template <class S>
Json rank_cocycle_to_json(const RankCocycle<S>& c) {
  Json j;
  j["tag"] = semiring_name(S::kind);
  j["rank"] = c.rank;
  j["charts"] = Json::array();
  for (int ch : c.charts) j["charts"].push_back(ch);
  Json ts = Json::array();
  for (const auto& [key, mat] : c.transitions) {
    Json t;
    t["i"] = key.first;
    t["j"] = key.second;
    Json rows = Json::array();
    for (const auto& row : mat) {
      Json r = Json::array();
      for (const auto& entry : row)
        r.push_back(entry ? unit_to_json(*entry) : Json(nullptr));
      rows.push_back(r);
    }
    t["matrix"] = rows;
    ts.push_back(t);
  }
  j["transitions"] = ts;
  return j;
}

template <class S>
RankCocycle<S> rank_cocycle_from_json(const Fan& fan, const Json& j) {
  RankCocycle<S> c;
  c.fan = fan;
  if (!j.contains("rank") || !j.contains("transitions"))
    throw parse_error("rank cocycle needs \"rank\" and \"transitions\"");
  c.rank = j.at("rank").get<int>();
  if (c.rank < 1) throw parse_error("rank must be positive");
  if (j.contains("charts"))
    for (const auto& x : j.at("charts")) c.charts.push_back(x.get<int>());
  else
    c.charts = fan.maximal_cones();
  for (const auto& t : j.at("transitions")) {
    int a = t.at("i").get<int>(), b = t.at("j").get<int>();
    const Json& rows = t.at("matrix");
    if (static_cast<int>(rows.size()) != c.rank)
      throw parse_error("transition matrix must be rank x rank");
    MonomialMat<S> m(c.rank, std::vector<std::optional<MonoidUnit<S>>>(c.rank));
    for (int i = 0; i < c.rank; ++i) {
      if (static_cast<int>(rows[i].size()) != c.rank)
        throw parse_error("transition matrix must be rank x rank");
      for (int k = 0; k < c.rank; ++k)
        if (!rows[i][k].is_null())
          m[i][k] = unit_from_json<S>(rows[i][k], fan.rank());
    }
    c.transitions[{a, b}] = std::move(m);
  }
  // Missing reverse transitions are filled from inverses when decomposable.
  for (int a : c.charts)
    for (int b : c.charts) {
      if (a >= b) continue;
      bool has_ab = c.transitions.count({a, b});
      bool has_ba = c.transitions.count({b, a});
      if (!has_ab && !has_ba)
        throw Error("MissingTransition",
                    "no transition between charts " + std::to_string(a) +
                        " and " + std::to_string(b));
      if (has_ab && has_ba) continue;
      auto [src, dst] = has_ab ? std::make_pair(std::make_pair(a, b), std::make_pair(b, a))
                               : std::make_pair(std::make_pair(b, a), std::make_pair(a, b));
      auto dec = decompose_monomial<S>(c.transitions.at(src),
                                       [](const MonoidUnit<S>&) { return true; });
      if (auto* g = std::get_if<GenPermUnit<S>>(&dec))
        c.transitions[dst] = g->inverse().materialize();
      else
        throw Error("NotInvertibleTransition",
                    "cannot derive the reverse of a non-invertible transition");
    }
  return c;
}

// ---------------------------------------------------------------------------
// Matrices over a tagged semiring

template <class S>
Json matrix_to_json(const Matrix<S>& m) {
  Json j;
  j["tag"] = semiring_name(S::kind);
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  Json rows = Json::array();
  for (size_t i = 0; i < m.rows(); ++i) {
    Json r = Json::array();
    for (size_t k = 0; k < m.cols(); ++k)
      r.push_back(scalar_to_json(Scalar(m.at(i, k))));
    rows.push_back(r);
  }
  j["entries"] = rows;
  return j;
}

template <class S>
Matrix<S> matrix_from_json_typed(const Json& j) {
  const Json& rows = j.at("entries");
  size_t r = rows.size();
  size_t c = r ? rows[0].size() : 0;
  Matrix<S> m(r, c);
  for (size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw parse_error("ragged matrix");
    for (size_t k = 0; k < c; ++k)
      m.at(i, k) = scalar_as<S>(scalar_from_json(S::kind, rows[i][k]));
  }
  return m;
}

template <class S>
Json genperm_to_json(const GenPerm<S>& g) {
  Json j;
  Json perm = Json::array();
  for (int p : g.perm) perm.push_back(p);
  Json diag = Json::array();
  for (const auto& d : g.diag) diag.push_back(scalar_to_json(Scalar(d)));
  j["perm"] = perm;
  j["diag"] = diag;
  return j;
}

inline Json not_invertible_to_json(const NotInvertible& w) {
  Json j;
  j["reason"] = w.reason_name();
  j["col"] = w.col;
  if (w.reason == NotInvertible::Reason::NonUnitEntry ||
      w.reason == NotInvertible::Reason::MultipleInColumn ||
      w.reason == NotInvertible::Reason::NotPermutationSupport)
    j["row"] = w.row;
  return j;
}

// ---------------------------------------------------------------------------
// Group presentations and reports

inline Json presentation_to_json(const AbelianGroupPresentation& p) {
  Json j;
  j["free_rank"] = p.free_rank;
  Json tors = Json::array();
  for (Int d : p.invariant_factors) tors.push_back(d);
  j["torsion"] = tors;
  return j;
}

inline Json picard_report_to_json(const PicardReport& r) {
  Json j;
  Json kernel;
  kernel["rank"] = r.kernel.size();
  kernel["basis"] = intmat_to_json(r.kernel);
  j["kernel"] = kernel;
  j["pic_g"] = presentation_to_json(r.pic_g);
  j["pic"] = presentation_to_json(r.pic);
  j["psi"] = intmat_to_json(r.psi);
  j["forget"] = intmat_to_json(r.forget);
  j["exact"] = true;  // picard() certifies before reporting
  return j;
}

inline Json matroid_to_json(const MatroidBundle& m) {
  Json j;
  j["ground"] = m.ground;
  Json rays = Json::array();
  for (const auto& chain : m.rays) {
    Json c;
    c["ray"] = chain.ray;
    Json flats = Json::array();
    for (const auto& f : chain.flats) {
      Json fj;
      fj["i"] = f.threshold;
      Json members = Json::array();
      for (int k : f.members) members.push_back(k);
      fj["flat"] = members;
      flats.push_back(fj);
    }
    c["chain"] = flats;
    rays.push_back(c);
  }
  j["rays"] = rays;
  return j;
}

// ---------------------------------------------------------------------------
// Files

inline Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("IoError", "cannot open " + path);
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw parse_error(std::string("invalid JSON in ") + path + ": " + e.what());
  }
  return j;
}

inline void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw Error("IoError", "cannot write " + path);
  out << j.dump(2) << "\n";
}

}  // namespace tropvb::io
