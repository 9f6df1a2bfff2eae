// Command-line frontend. Every verb reads JSON inputs, dispatches to the
// kernel, and prints a result envelope:
//
//   exit 0   {"ok": true, "result": ...}
//   exit 1   {"ok": false, "error": {"code", "message", "witness"}}
//   exit 2   I/O or parse failure (same envelope shape)
//
// Domain error codes mirror kernel error names verbatim and witnesses are
// passed through intact.

#include <CLI11.hpp>

#include <algorithm>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "tropvb/corpus.hpp"
#include "tropvb/error.hpp"
#include "tropvb/fan.hpp"
#include "tropvb/json_io.hpp"
#include "tropvb/klyachko.hpp"
#include "tropvb/picard.hpp"
#include "tropvb/semimatrix.hpp"
#include "tropvb/sn_group.hpp"

namespace {

using tropvb::io::Json;

struct DomainFailure {
  std::string code;
  std::string message;
  Json witness;
};

struct Output {
  std::string path;  // empty: stdout

  void emit_ok(const Json& result) const {
    Json envelope;
    envelope["ok"] = true;
    envelope["result"] = result;
    write(envelope);
  }

  [[noreturn]] void fail(const DomainFailure& f, int code = 1) const {
    Json envelope;
    envelope["ok"] = false;
    Json err;
    err["code"] = f.code;
    err["message"] = f.message;
    err["witness"] = f.witness;
    envelope["error"] = err;
    write(envelope);
    std::exit(code);
  }

  void write(const Json& j) const {
    if (path.empty())
      std::cout << j.dump(2) << std::endl;
    else
      tropvb::io::write_json_file(path, j);
  }
};

tropvb::Fan load_fan(const std::string& path, bool force, const Output& out) {
  tropvb::Fan fan = tropvb::io::fan_from_json(tropvb::io::load_json_file(path));
  if (!force)
    if (auto v = tropvb::validate_fan(fan))
      out.fail({v->code, "fan fails validation (use --force to override)",
                tropvb::io::fan_violation_to_json(*v)});
  return fan;
}

/// Family JSON may carry an inline copy of its fan; if present it must
/// agree with the fan passed on the command line.
std::vector<tropvb::IntVec> load_family_reps(const tropvb::Fan& fan,
                                             const std::string& path) {
  Json j = tropvb::io::load_json_file(path);
  if (j.contains("fan") && j.at("fan").is_object() &&
      tropvb::io::fan_from_json(j.at("fan")) != fan)
    throw tropvb::Error("FanMismatch",
                        "family file embeds a different fan than " + path);
  return tropvb::io::family_reps_from_json(fan, j);
}

tropvb::SemiringKind parse_tag(const std::string& tag) {
  return tropvb::io::tag_from_string(tag);
}

Json family_classes_json(const tropvb::PicardContext& ctx,
                         const std::vector<tropvb::LineBundleClass>& classes) {
  Json arr = Json::array();
  for (const auto& c : classes) {
    Json j;
    j["pic_class"] = tropvb::io::intvec_to_json(c.pic_coords);
    j["lift"] = tropvb::io::family_to_json(c.lift);
    arr.push_back(j);
  }
  (void)ctx;
  return arr;
}

template <class S>
void run_family_to_cocycle(const tropvb::Fan& fan,
                           const std::vector<tropvb::IntVec>& reps,
                           const Output& out) {
  if (auto v = tropvb::check_family(fan, reps)) {
    Json w;
    w["sigma"] = v->sigma;
    w["other"] = v->other;
    w["detail"] = v->detail;
    out.fail({"InvalidFamily", "family violates the compatibility condition", w});
  }
  auto fam = tropvb::make_family(fan, reps);
  out.emit_ok(tropvb::io::line_cocycle_to_json(tropvb::family_to_cocycle<S>(fam)));
}

template <class S>
void run_split(const tropvb::Fan& fan, const Json& cocycle_json,
               tropvb::SplitAnchor anchor, const Output& out) {
  auto cocycle = tropvb::io::rank_cocycle_from_json<S>(fan, cocycle_json);
  auto result = tropvb::split_cocycle(cocycle, anchor);
  if (auto* fail = std::get_if<tropvb::SplitFailure>(&result)) {
    Json w;
    w["chart_i"] = fail->chart_i;
    w["chart_j"] = fail->chart_j;
    if (fail->witness) w["entry"] = tropvb::io::not_invertible_to_json(*fail->witness);
    if (!fail->detail.empty()) w["detail"] = fail->detail;
    out.fail({fail->code, "cocycle does not split", w});
  }
  const auto& lines = std::get<std::vector<tropvb::LineCocycle<S>>>(result);
  tropvb::PicardContext ctx(fan);
  std::vector<tropvb::LineBundleClass> classes;
  Json jlines = Json::array();
  for (const auto& l : lines) {
    classes.push_back(tropvb::classify_line_bundle(ctx, l));
    jlines.push_back(tropvb::io::line_cocycle_to_json(l));
  }
  Json result_json;
  result_json["rank"] = cocycle.rank;
  result_json["summands"] = family_classes_json(ctx, classes);
  result_json["line_cocycles"] = jlines;
  out.emit_ok(result_json);
}

template <class S>
void run_trivialize(const tropvb::Fan& fan, const Json& cocycle_json,
                    const std::optional<tropvb::IntVec>& character,
                    const Output& out) {
  auto cocycle = tropvb::io::line_cocycle_from_json<S>(fan, cocycle_json);
  auto result = tropvb::trivialize_affine(cocycle, character);
  if (auto* obs = std::get_if<tropvb::EquivariantObstruction>(&result)) {
    Json w;
    w["character"] = tropvb::io::intvec_to_json(obs->character);
    w["witness_ray"] = tropvb::io::intvec_to_json(obs->witness_ray);
    out.fail({"Obstructed",
              "character is not orthogonal to the cone, no equivariant "
              "trivialization exists",
              w});
  }
  const auto& triv = std::get<tropvb::AffineTrivialization<S>>(result);
  Json units = Json::array();
  for (const auto& [chart, unit] : triv.units) {
    Json u;
    u["chart"] = chart;
    u["unit"] = tropvb::io::unit_to_json(unit);
    units.push_back(u);
  }
  Json j;
  j["trivializes"] = true;
  j["units"] = units;
  out.emit_ok(j);
}

void run_gl_decompose(const Json& input, const Output& out) {
  if (!input.contains("tag") || !input.contains("entries"))
    throw tropvb::Error("ParseError", "matrix needs \"tag\" and \"entries\"");
  auto emit = [&](auto matrix) {
    auto result = tropvb::decompose_invertible(matrix);
    using S = std::decay_t<decltype(matrix.at(0, 0))>;
    if (auto* w = std::get_if<tropvb::NotInvertible>(&result))
      out.fail({"NotInvertible", "matrix is not invertible",
                tropvb::io::not_invertible_to_json(*w)});
    out.emit_ok(tropvb::io::genperm_to_json(std::get<tropvb::GenPerm<S>>(result)));
  };
  switch (parse_tag(input.at("tag").get<std::string>())) {
    case tropvb::SemiringKind::Boolean:
      emit(tropvb::io::matrix_from_json_typed<tropvb::Boole>(input));
      break;
    case tropvb::SemiringKind::TropicalRational:
      emit(tropvb::io::matrix_from_json_typed<tropvb::Trop>(input));
      break;
    case tropvb::SemiringKind::Naturals:
      emit(tropvb::io::matrix_from_json_typed<tropvb::Nat>(input));
      break;
  }
}

int run(int argc, char** argv) {
  CLI::App app{"Exact classification kernel for torus-equivariant vector "
               "bundles on toric schemes over idempotent semifields"};
  app.require_subcommand(1);

  Output out;
  bool force = false;
  unsigned long long seed = 0;  // reserved for randomized demo subcommands
  app.add_option("-o,--output", out.path, "write the result envelope to a file");
  app.add_flag("--force", force, "skip fan validation on input files");
  app.add_option("--seed", seed, "seed for randomized subcommands");

  std::string fan_path, aux_path, aux_path2, tag = "T", anchor = "smallest";
  std::vector<std::string> family_paths;
  std::string character_csv;
  int sn_n = 3;
  std::string gallery_dir;

  auto* validate = app.add_subcommand("validate-fan", "check fan structure");
  validate->add_option("fan", fan_path)->required();

  auto* dual = app.add_subcommand("dual-cone", "dual of a cone");
  dual->add_option("cone", fan_path)->required();

  auto* orbit = app.add_subcommand("orbit-primes",
                                   "faces and monomial primes of a cone");
  orbit->add_option("cone", fan_path)->required();

  auto* pic = app.add_subcommand("picard", "class groups and exact sequence");
  pic->add_option("fan", fan_path)->required();

  auto* piceq = app.add_subcommand("picard-equivariant",
                                   "equivariant class group with generators");
  piceq->add_option("fan", fan_path)->required();

  auto* kcheck = app.add_subcommand("klyachko-check", "family compatibility");
  kcheck->add_option("fan", fan_path)->required();
  kcheck->add_option("family", aux_path)->required();

  auto* f2c = app.add_subcommand("family-to-cocycle",
                                 "transition units of the glued line bundle");
  f2c->add_option("fan", fan_path)->required();
  f2c->add_option("family", aux_path)->required();
  f2c->add_option("--tag", tag, "semifield tag (T or B)");

  auto* split = app.add_subcommand("split", "split a rank-n cocycle");
  split->add_option("fan", fan_path)->required();
  split->add_option("cocycle", aux_path)->required();
  split->add_option("--tag", tag, "semifield tag (T or B)");
  split->add_option("--anchor", anchor, "relabeling anchor: smallest or largest");

  auto* triv = app.add_subcommand("trivialize-affine",
                                  "trivialize a line cocycle on a face fan");
  triv->add_option("fan", fan_path)->required();
  triv->add_option("cocycle", aux_path)->required();
  triv->add_option("--tag", tag, "semifield tag (T or B)");
  triv->add_option("--character", character_csv,
                   "attached character, comma separated integers");

  auto* t2s = app.add_subcommand("tuple-to-space", "jump matrix of a tuple");
  t2s->add_option("fan", fan_path)->required();
  t2s->add_option("families", family_paths)->required()->expected(-1);

  auto* s2t = app.add_subcommand("space-to-tuple", "recover the family tuple");
  s2t->add_option("fan", fan_path)->required();
  s2t->add_option("space", aux_path)->required();

  auto* siso = app.add_subcommand("space-iso", "isomorphism of two spaces");
  siso->add_option("fan", fan_path)->required();
  siso->add_option("a", aux_path)->required();
  siso->add_option("b", aux_path2)->required();

  auto* mexp = app.add_subcommand("matroid-export", "valuated-matroid bundle");
  mexp->add_option("fan", fan_path)->required();
  mexp->add_option("space", aux_path)->required();

  auto* gl = app.add_subcommand("gl-decompose",
                                "generalized permutation form of a matrix");
  gl->add_option("matrix", fan_path)->required();

  auto* sn = app.add_subcommand("sn-table", "convolution table of S_n");
  sn->add_option("n", sn_n)->required()->check(CLI::Range(1, 4));

  auto* gal = app.add_subcommand("gallery", "write the bundled example fans");
  gal->add_option("dir", gallery_dir)->required();

  CLI11_PARSE(app, argc, argv);
  (void)seed;

  if (validate->parsed()) {
    tropvb::Fan fan = tropvb::io::fan_from_json(tropvb::io::load_json_file(fan_path));
    if (auto v = tropvb::validate_fan(fan))
      out.fail({v->code, v->message, tropvb::io::fan_violation_to_json(*v)});
    Json j;
    j["valid"] = true;
    j["cones"] = fan.size();
    j["maximal"] = fan.maximal_cones().size();
    j["cover_graph_connected"] = tropvb::cover_graph_connected(fan);
    out.emit_ok(j);
  } else if (dual->parsed()) {
    tropvb::Cone c = tropvb::io::cone_from_json(tropvb::io::load_json_file(fan_path));
    out.emit_ok(tropvb::io::cone_to_json(tropvb::dual_cone(c)));
  } else if (orbit->parsed()) {
    tropvb::Cone c = tropvb::io::cone_from_json(tropvb::io::load_json_file(fan_path));
    Json arr = Json::array();
    for (const auto& p : tropvb::orbit_cone_primes(c)) {
      Json j;
      j["face"] = tropvb::io::cone_to_json(p.face);
      j["prime_complement"] = tropvb::io::intmat_to_json(p.complement_gens);
      arr.push_back(j);
    }
    out.emit_ok(arr);
  } else if (pic->parsed()) {
    tropvb::Fan fan = load_fan(fan_path, force, out);
    out.emit_ok(tropvb::io::picard_report_to_json(tropvb::picard(fan)));
  } else if (piceq->parsed()) {
    tropvb::Fan fan = load_fan(fan_path, force, out);
    auto eq = tropvb::equivariant_picard(fan);
    Json j;
    j["pic_g"] = tropvb::io::presentation_to_json(eq.group);
    Json gens = Json::array();
    for (const auto& g : eq.generators) gens.push_back(tropvb::io::family_to_json(g));
    j["generators"] = gens;
    out.emit_ok(j);
  } else if (kcheck->parsed()) {
    tropvb::Fan fan = load_fan(fan_path, force, out);
    auto reps = load_family_reps(fan, aux_path);
    if (auto v = tropvb::check_family(fan, reps)) {
      Json w;
      w["sigma"] = v->sigma;
      w["other"] = v->other;
      w["detail"] = v->detail;
      out.fail({"InvalidFamily", "family violates the compatibility condition", w});
    }
    Json j;
    j["valid"] = true;
    j["canonical"] = tropvb::io::family_to_json(tropvb::make_family(fan, reps));
    out.emit_ok(j);
  } else if (f2c->parsed()) {
    tropvb::Fan fan = load_fan(fan_path, force, out);
    auto reps = load_family_reps(fan, aux_path);
    if (parse_tag(tag) == tropvb::SemiringKind::Boolean)
      run_family_to_cocycle<tropvb::Boole>(fan, reps, out);
    else
      run_family_to_cocycle<tropvb::Trop>(fan, reps, out);
  } else if (split->parsed()) {
    tropvb::Fan fan = load_fan(fan_path, force, out);
    Json j = tropvb::io::load_json_file(aux_path);
    tropvb::SplitAnchor a = anchor == "largest"
                                ? tropvb::SplitAnchor::LargestChart
                                : tropvb::SplitAnchor::SmallestChart;
    if (parse_tag(tag) == tropvb::SemiringKind::Boolean)
      run_split<tropvb::Boole>(fan, j, a, out);
    else
      run_split<tropvb::Trop>(fan, j, a, out);
  } else if (triv->parsed()) {
    tropvb::Fan fan = load_fan(fan_path, force, out);
    Json j = tropvb::io::load_json_file(aux_path);
    std::optional<tropvb::IntVec> character;
    if (!character_csv.empty()) {
      tropvb::IntVec x;
      std::stringstream ss(character_csv);
      std::string item;
      while (std::getline(ss, item, ',')) x.push_back(std::stoll(item));
      character = x;
    }
    if (parse_tag(tag) == tropvb::SemiringKind::Boolean)
      run_trivialize<tropvb::Boole>(fan, j, character, out);
    else
      run_trivialize<tropvb::Trop>(fan, j, character, out);
  } else if (t2s->parsed()) {
    tropvb::Fan fan = load_fan(fan_path, force, out);
    std::vector<tropvb::KlyachkoFamily> tuple;
    for (const auto& p : family_paths)
      tuple.push_back(tropvb::make_family(fan, load_family_reps(fan, p)));
    out.emit_ok(tropvb::io::space_to_json(tropvb::tuple_to_space(tuple)));
  } else if (s2t->parsed()) {
    tropvb::Fan fan = load_fan(fan_path, force, out);
    auto space = tropvb::io::space_from_json(fan, tropvb::io::load_json_file(aux_path));
    auto result = tropvb::space_to_tuple(space);
    if (auto* bad = std::get_if<tropvb::SpaceInvalid>(&result)) {
      Json w;
      w["cone"] = bad->cone;
      w["column"] = bad->column;
      w["detail"] = bad->detail;
      out.fail({"NoSolution", "jumps are not interpolable per cone", w});
    }
    Json arr = Json::array();
    for (const auto& f : std::get<std::vector<tropvb::KlyachkoFamily>>(result))
      arr.push_back(tropvb::io::family_to_json(f));
    out.emit_ok(arr);
  } else if (siso->parsed()) {
    tropvb::Fan fan = load_fan(fan_path, force, out);
    auto a = tropvb::io::space_from_json(fan, tropvb::io::load_json_file(aux_path));
    auto b = tropvb::io::space_from_json(fan, tropvb::io::load_json_file(aux_path2));
    Json j;
    j["isomorphic"] = tropvb::isomorphic(a, b);
    out.emit_ok(j);
  } else if (mexp->parsed()) {
    tropvb::Fan fan = load_fan(fan_path, force, out);
    auto space = tropvb::io::space_from_json(fan, tropvb::io::load_json_file(aux_path));
    out.emit_ok(tropvb::io::matroid_to_json(tropvb::matroid_bundle(space)));
  } else if (gl->parsed()) {
    run_gl_decompose(tropvb::io::load_json_file(fan_path), out);
  } else if (sn->parsed()) {
    auto elements = tropvb::all_permutations(sn_n);
    Json j;
    j["n"] = sn_n;
    Json elems = Json::array();
    for (const auto& p : elements) {
      Json pj = Json::array();
      for (int v : p) pj.push_back(v);
      elems.push_back(pj);
    }
    j["elements"] = elems;
    auto index_of = [&](const tropvb::Perm& p) {
      return std::find(elements.begin(), elements.end(), p) - elements.begin();
    };
    Json table = Json::array();
    for (const auto& a : elements) {
      Json row = Json::array();
      for (const auto& b : elements)
        row.push_back(index_of(
            tropvb::convolve({sn_n, a}, {sn_n, b}).sigma));
      table.push_back(row);
    }
    Json inv = Json::array();
    for (const auto& a : elements)
      inv.push_back(index_of(tropvb::antipode({sn_n, a}).sigma));
    j["table"] = table;
    j["antipode"] = inv;
    out.emit_ok(j);
  } else if (gal->parsed()) {
    tropvb::corpus::write_gallery(gallery_dir);
    Json j;
    j["dir"] = gallery_dir;
    Json files = Json::array();
    for (const auto& e : tropvb::corpus::gallery()) files.push_back(e.file);
    files.push_back("manifest.json");
    j["files"] = files;
    out.emit_ok(j);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  Output plain;
  try {
    return run(argc, argv);
  } catch (const tropvb::Error& e) {
    bool parse_or_io = e.code() == "ParseError" || e.code() == "IoError";
    plain.fail({e.code(), e.what(), Json(nullptr)}, parse_or_io ? 2 : 1);
  } catch (const std::exception& e) {
    plain.fail({"ParseError", e.what(), Json(nullptr)}, 2);
  }
}
