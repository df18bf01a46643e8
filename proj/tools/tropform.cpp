// Command-line front end: validate, lift, tropicalize, roundtrip, good-coord, torsor-check.
//
// Exit codes: 0 success, 1 semantic failure, 2 input or structural error,
// 3 internal invariant violation.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "tropform/error.hpp"
#include "tropform/io.hpp"
#include "tropform/lifting.hpp"
#include "tropform/torsor.hpp"

using namespace tropform;

namespace {

struct Globals {
  std::string precision = "24";
  int window = kExpansionWindow;
  std::string format = "json";
  std::uint64_t seed = 1;

  Rational rel() const { return parse_rational(precision); }
  bool json() const { return format == "json"; }
};

void emit(const Json& j, const std::string& out) {
  const std::string text = j.dump(2) + "\n";
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out);
  if (!f) throw Error(ErrorKind::InvalidInput, "cannot write " + out);
  f << text;
}

void print_report(const ValidationReport& r) {
  for (const auto& c : r.records) {
    std::cout << to_string(c.status) << "  " << c.check << "  " << c.location;
    for (const auto& [k, v] : c.witness) std::cout << "  " << k << "=" << v;
    std::cout << "\n";
  }
  std::cout << (r.passed() ? "PASS" : "FAIL") << ": " << r.count(CheckStatus::Pass) << " pass, "
            << r.count(CheckStatus::Fail) << " fail, " << r.count(CheckStatus::Indeterminate) << " indeterminate\n";
}

void print_grc(const GrcReport& r) {
  for (const auto& c : r.components) {
    std::cout << "GRC above " << to_string(r.threshold) << " {";
    bool first = true;
    for (const auto& v : c.vertices) {
      std::cout << (first ? "" : ", ") << v;
      first = false;
    }
    std::cout << "}: legs " << c.sides.legs.to_string() << ", crossing " << c.sides.crossing.to_string() << ", equality "
              << to_string(c.equality);
    if (c.legs_negative) std::cout << ", t^" << to_string(Rational(-r.threshold)) << " coefficient " << to_string(c.top_component);
    std::cout << "\n";
  }
}

int run_validate(const Globals& g, const std::string& file, const std::optional<std::string>& grc) {
  const TropicalReductionDatum d = datum_from_json(read_json_file(file));
  const ValidationReport rep = validate(d);
  bool ok = rep.passed();
  Json out{{"report", to_json(rep)}};
  std::optional<GrcReport> grep;
  if (grc) {
    grep = global_residue_check(d, parse_rational(*grc));
    ok = ok && grep->passed();
    out["grc"] = to_json(*grep);
  }
  if (g.json()) {
    emit(out, "");
  } else {
    print_report(rep);
    if (grep) print_grc(*grep);
  }
  return ok ? 0 : 1;
}

/// Validation failures of an input datum are semantic failures, not input errors.
bool report_invalid(const Globals& g, const TropicalReductionDatum& d) {
  const ValidationReport rep = validate(d);
  if (rep.passed()) return false;
  if (g.json()) {
    emit(Json{{"passed", false}, {"report", to_json(rep)}}, "");
  } else {
    print_report(rep);
  }
  return true;
}

int run_lift(const Globals& g, const std::string& file, const std::string& out) {
  const TropicalReductionDatum d = datum_from_json(read_json_file(file));
  if (report_invalid(g, d)) return 1;
  const GluedModel m = lift(d, g.rel());
  emit(to_json(m), out);
  return 0;
}

int run_tropicalize(const Globals& g, const std::string& file, const std::string& out) {
  emit(to_json(tropicalize(model_from_json(read_json_file(file)), g.window)), out);
  return 0;
}

int run_roundtrip(const Globals& g, const std::string& file) {
  const TropicalReductionDatum d = datum_from_json(read_json_file(file));
  if (report_invalid(g, d)) return 1;
  const GluedModel m = lift(d, g.rel());
  // the model goes through its JSON form so that the file format is exercised as well
  const GluedModel reread = model_from_json(Json::parse(to_json(m).dump()));
  const TropicalReductionDatum back = tropicalize(reread, g.window);
  std::vector<std::string> diff = datum_differences(back, d);
  for (const auto& [id, gl] : reread.gluings) {
    if (!gluing_consistent(reread, gl)) diff.push_back("gluing across " + id + " does not match the binomials");
  }
  if (!validate(back).passed()) diff.push_back("tropicalization fails validation");
  if (g.json()) {
    emit(Json{{"passed", diff.empty()}, {"differences", diff}}, "");
  } else {
    for (const auto& s : diff) std::cout << "MISMATCH " << s << "\n";
    std::cout << (diff.empty() ? "PASS" : "FAIL") << ": round trip of " << file << "\n";
  }
  return diff.empty() ? 0 : 1;
}

int run_good_coord(const Globals& g, const std::string& file) {
  const Json j = read_json_file(file);
  AnnulusSeries s = series_from_json(j);
  const GoodCoordinate gc = good_coordinate(AnnulusForm{s}, g.rel());
  if (g.json()) {
    emit(to_json(gc), "");
  } else {
    std::cout << "n = " << gc.n << ", c_n = " << gc.c_n.to_string() << ", c_0 = " << gc.c_0.to_string() << ", "
              << gc.iterations << " iterations, gaps";
    for (const auto& e : gc.gaps) std::cout << " " << to_string(e);
    std::cout << "\n";
  }
  return 0;
}

struct TorsorOptions {
  int l = 1;
  int count = 20;
  int order = kFormalOrder;
  std::string model;
  std::string edge;
};

Rational draw(std::mt19937_64& rng, bool nonzero) {
  std::uniform_int_distribution<int> num(nonzero ? 1 : -5, 5), den(1, 4), sign(0, 1);
  const Rational q = frac(num(rng), den(rng));
  return nonzero && sign(rng) ? Rational(-q) : q;
}

int run_torsor_check(const Globals& g, const TorsorOptions& o) {
  Json out;
  bool ok = true;
  if (!o.model.empty()) {
    const GluedModel m = model_from_json(read_json_file(o.model));
    const Edge& e = m.complex.edge(o.edge);
    if (e.is_leg()) throw Error(ErrorKind::InvalidInput, o.edge + " is a leg");
    const GradedCoordinate tau = edge_coordinate(m, o.edge);
    const GradedCoordinate img = phi_e(m, o.edge, tau);
    const bool involution = phi_e(m, *e.opposite, img) == tau;
    const GradedCoordinate moved = scale(tau, 1, 2);
    const bool anti = phi_e(m, o.edge, moved) == scale(img, -1, Rational(1, 2));
    const auto& sides = m.gluings.count(o.edge) ? m.gluings.at(o.edge).tail : m.gluings.at(*e.opposite).head;
    const Rational dl = gauss_level(m.pieces.at(e.head)) - gauss_level(m.pieces.at(e.tail));
    const bool grade = sides.n * (tau.grade + img.grade) == dl;
    ok = involution && anti && grade;
    out = Json{{"edge", o.edge},       {"tau", to_json(tau)},      {"phi", to_json(img)},
               {"involution", involution}, {"anti_equivariant", anti}, {"grade_shift", grade}};
  } else {
    if (o.l < 1) throw Error(ErrorKind::InvalidInput, "--l must be positive");
    std::mt19937_64 rng(g.seed);
    int law = 0, trans = 0;
    for (int i = 0; i < o.count; ++i) {
      const FormalForm w{-o.l, draw(rng, true), draw(rng, false)};
      const GnElement a{draw(rng, true), draw(rng, false)}, b{draw(rng, true), draw(rng, false)};
      law += verify_group_law(w, a, b, o.order);
      const FormalSeries t1 = act(a, w, o.order);
      const FormalSeries t2 = good_formal_by_integration(w, draw(rng, true), draw(rng, false), o.order);
      trans += is_good_formal(w, t2, o.order) && transitivity(w, t1, t2, o.order).has_value();
    }
    ok = law == o.count && trans == o.count;
    out = Json{{"l", o.l}, {"order", o.order}, {"seed", g.seed}, {"count", o.count},
               {"group_law", law}, {"transitivity", trans}};
  }
  out["passed"] = ok;
  if (g.json()) {
    emit(out, "");
  } else {
    std::cout << (ok ? "PASS" : "FAIL") << ": " << out.dump() << "\n";
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tropical reductions of differential forms"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--precision", g.precision, "relative precision in exponent units")->capture_default_str();
  app.add_option("--window", g.window, "half-width of annulus expansion windows")->capture_default_str();
  app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"json", "text"}))->capture_default_str();
  app.add_option("--seed", g.seed, "seed for randomized checks")->capture_default_str();

  std::string file, out;
  std::optional<std::string> grc;
  TorsorOptions topt;
  int code = 0;

  auto* validate_cmd = app.add_subcommand("validate", "check a tropical reduction datum");
  validate_cmd->add_option("file", file)->required();
  validate_cmd->add_option("--grc", grc, "also run the global residue check above this level");
  auto* lift_cmd = app.add_subcommand("lift", "build a glued model from a datum");
  lift_cmd->add_option("file", file)->required();
  lift_cmd->add_option("-o,--output", out);
  auto* trop_cmd = app.add_subcommand("tropicalize", "read the datum off a glued model");
  trop_cmd->add_option("file", file)->required();
  trop_cmd->add_option("-o,--output", out);
  auto* rt_cmd = app.add_subcommand("roundtrip", "lift, then tropicalize, and compare");
  rt_cmd->add_option("file", file)->required();
  auto* gc_cmd = app.add_subcommand("good-coord", "good coordinate of a form on an annulus");
  gc_cmd->add_option("file", file)->required();
  auto* ts_cmd = app.add_subcommand("torsor-check", "group law and transitivity, or phi_e on a model edge");
  ts_cmd->add_option("--l", topt.l)->capture_default_str();
  ts_cmd->add_option("--count", topt.count)->capture_default_str();
  ts_cmd->add_option("--order", topt.order)->capture_default_str();
  ts_cmd->add_option("--model", topt.model);
  auto* edge_opt = ts_cmd->add_option("--edge", topt.edge);
  ts_cmd->get_option("--model")->needs(edge_opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*validate_cmd) code = run_validate(g, file, grc);
    if (*lift_cmd) code = run_lift(g, file, out);
    if (*trop_cmd) code = run_tropicalize(g, file, out);
    if (*rt_cmd) code = run_roundtrip(g, file);
    if (*gc_cmd) code = run_good_coord(g, file);
    if (*ts_cmd) code = run_torsor_check(g, topt);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::logic_error& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return code;
}
