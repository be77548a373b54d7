// herbrand-lab: command-line front end for the herbrand library.
//
// Every subcommand reads its input from --input FILE, --spec JSON or inline
// flags, writes data to stdout (json or csv) and diagnostics to stderr.
// Exit status: 0 ok, 1 parse/validation error, 2 verify found a failure.

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "herbrand/enumerate.hpp"
#include "herbrand/json_io.hpp"
#include "herbrand/reps.hpp"

using namespace herbrand;

namespace {

struct Options {
  std::string input_file;
  std::string spec_text;
  std::string format = "json";

  std::int64_t p = 3;
  std::vector<std::int64_t> breaks;
  std::vector<std::int64_t> orders;
  bool abelian = false;
  std::vector<std::int64_t> increments;
  std::int64_t e_F = 1;
  std::vector<std::int64_t> tame;
  std::int64_t m = 1;
  std::int64_t t = 1;
  std::int64_t sigma = -1;

  std::vector<std::string> sample;

  std::int64_t r = 1;
  std::int64_t l_max = 30;
  std::int64_t sigma_max = -1;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// --- input -------------------------------------------------------------------

std::optional<Json> json_input(const Options& o) {
  if (!o.input_file.empty() && !o.spec_text.empty()) throw UsageError("give either --input or --spec, not both");
  if (!o.spec_text.empty()) return parse_json_text(o.spec_text);
  if (o.input_file.empty()) return std::nullopt;
  std::ifstream in(o.input_file, std::ios::binary);
  if (!in) throw UsageError("cannot read " + o.input_file);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str());
}

bool has_inline_wild(const Options& o) { return !o.increments.empty() || !o.breaks.empty(); }

CyclicWildSpec inline_cyclic(const Options& o) {
  return CyclicWildSpec{o.p, static_cast<std::int64_t>(o.increments.size()), o.e_F, o.increments};
}

Json inline_filtration_json(const Options& o) {
  Json j{{"p", o.p}, {"breaks", o.breaks}};
  if (!o.orders.empty()) j["orders"] = o.orders;
  j["abelian"] = o.abelian;
  return j;
}

Filtration inline_wild(const Options& o) {
  if (!o.increments.empty() && !o.breaks.empty()) throw UsageError("give either --increments or --breaks, not both");
  if (!o.increments.empty()) return to_filtration(inline_cyclic(o));
  return filtration_from_json(inline_filtration_json(o));
}

TowerSpec tower_input(const Options& o) {
  if (auto j = json_input(o)) {
    if (j->contains("layers")) return tower_from_json(*j);
    for (const char* key : {"tame", "e"})
      if (j->contains(key)) return tower_from_json(Json{{"layers", Json::array({Json{{"tame", (*j)[key]}}})}});
    return tower_from_json(Json{{"layers", Json::array({Json{{"wild", *j}}})}});
  }
  TowerSpec t;
  for (auto e : o.tame) t.layers.emplace_back(TameLayer{e});
  if (has_inline_wild(o)) t.layers.emplace_back(inline_wild(o));
  if (t.layers.empty()) throw UsageError("no input: use --input, --spec, --tame, --breaks or --increments");
  check_tower(t);
  return t;
}

CarayolSpec carayol_input(const Options& o) {
  if (auto j = json_input(o)) return carayol_from_json(*j);
  if (!has_inline_wild(o)) throw UsageError("no input: use --input, --spec, or --breaks/--increments with --sigma");
  if (o.sigma < 0) throw UsageError("--sigma is required with inline flags");
  CarayolSpec c;
  c.tame_top = o.m;
  c.core_tame = o.t;
  c.core_wild = inline_wild(o);
  c.character.slope = o.sigma;
  check_carayol_structure(c);
  return c;
}

// --- output ------------------------------------------------------------------

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return out + "\"";
}

void csv_row(const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) std::cout << (i ? "," : "") << csv_field(fields[i]);
  std::cout << '\n';
}

std::string joined(const std::vector<std::int64_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ";" : "") + std::to_string(v[i]);
  return s;
}

std::string joined(const std::vector<Rational>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ";" : "") + to_fraction_string(v[i]);
  return s;
}

bool csv(const Options& o) { return o.format == "csv"; }

void emit(const Json& j) { std::cout << j.dump(2) << '\n'; }

Json rationals_json(const std::vector<Rational>& v) {
  Json a = Json::array();
  for (const auto& q : v) a.push_back(to_json(q));
  return a;
}

// --- subcommands -------------------------------------------------------------

int run_function(const Options& o, bool want_phi) {
  const TowerSpec tower = tower_input(o);
  const PLFunction f = want_phi ? compose_tower_phi(tower) : compose_tower_psi(tower);
  const char* name = want_phi ? "phi" : "psi";

  if (!o.sample.empty()) {
    const Rational a = parse_rational(o.sample[0]), b = parse_rational(o.sample[1]);
    const Rational n_q = parse_rational(o.sample[2]);
    if (!is_integer(n_q) || n_q < 1) throw UsageError("--sample n must be a positive integer");
    if (a < 0 || b < a) throw UsageError("--sample needs 0 <= a <= b");
    const std::int64_t n = to_int64(n_q.get_num());
    std::vector<std::pair<Rational, Rational>> pts;
    for (std::int64_t k = 0; k <= n; ++k) {
      const Rational x = a + (b - a) * make_rational(k, n);
      pts.emplace_back(x, eval(f, x));
    }
    if (csv(o)) {
      csv_row({"x", "y", "y_decimal_display_only"});
      for (const auto& [x, y] : pts) csv_row({to_fraction_string(x), to_fraction_string(y), to_decimal_string(y)});
      return 0;
    }
    Json samples = Json::array();
    for (const auto& [x, y] : pts)
      samples.push_back(Json{{"x", to_json(x)}, {"y", to_json(y)}, {"y_decimal", to_decimal_string(y)}});
    emit(Json{{name, to_json(f)},
              {"samples", samples},
              {"y_decimal_note", "20 significant digits, display only; x and y are exact"}});
    return 0;
  }

  if (csv(o)) {
    csv_row({"piece", "x_start", "y_start", "slope"});
    for (std::size_t k = 0; k < f.piece_count(); ++k)
      csv_row({std::to_string(k), to_fraction_string(f.breakpoints()[k].x), to_fraction_string(f.breakpoints()[k].y),
               to_fraction_string(f.piece_slope(k))});
    return 0;
  }
  emit(Json{{name, to_json(f)}});
  return 0;
}

int run_jumps(const Options& o) {
  const TowerSpec tower = tower_input(o);
  const PLFunction psi = compose_tower_psi(tower);
  const auto upper = jumps(psi);
  const auto lower = jumps(compose_tower_phi(tower));
  std::vector<Rational> ratios;
  for (const auto& u : upper) ratios.push_back(jump_ratio(psi, u));
  if (csv(o)) {
    csv_row({"index", "lower", "upper", "psi_ratio"});
    for (std::size_t k = 0; k < upper.size(); ++k)
      csv_row({std::to_string(k + 1), to_fraction_string(lower[k]), to_fraction_string(upper[k]),
               to_fraction_string(ratios[k])});
    return 0;
  }
  emit(Json{{"lower", rationals_json(lower)}, {"upper", rationals_json(upper)}, {"psi_ratios", rationals_json(ratios)}});
  return 0;
}

int run_slope(const Options& o) {
  const CarayolSpec spec = carayol_input(o);
  const SlopeReport r = slope_report(spec);
  std::optional<AdjointDomain> domain;
  if (r.carayol) domain = adjoint_slope_closed(spec).domain;
  if (csv(o)) {
    csv_row({"dim", "swan", "slope", "carayol", "domain"});
    csv_row({std::to_string(r.dim), std::to_string(r.swan), to_fraction_string(r.slope), r.carayol ? "true" : "false",
             domain ? to_string(*domain) : ""});
    return 0;
  }
  emit(to_json(r, domain));
  return 0;
}

int run_swan(const Options& o) {
  const CarayolSpec spec = carayol_input(o);
  const SlopeReport r = slope_report(spec);
  std::optional<std::int64_t> adj;
  if (r.carayol && spec.tame_top == 1 && spec.core_tame == 1) adj = adjoint_swan_mackey(spec);
  std::int64_t w = 0;
  for (const auto& c : tower_wild_classes(wild_core_tower(spec))) w += c.count * c.delta;
  if (csv(o)) {
    csv_row({"swan", "dim", "wild_exponent", "adjoint_swan"});
    csv_row({std::to_string(r.swan), std::to_string(r.dim), std::to_string(w), adj ? std::to_string(*adj) : ""});
    return 0;
  }
  emit(Json{{"swan", r.swan},
            {"dim", r.dim},
            {"wild_exponent", w},
            {"adjoint_swan", adj ? Json(*adj) : Json(nullptr)}});
  return 0;
}

int run_adjoint(const Options& o) {
  const CarayolSpec spec = carayol_input(o);
  const ClosedForm closed = adjoint_slope_closed(spec);
  const Rational mackey = adjoint_slope_mackey(spec);
  const Rational sl = slope_report(spec).slope;
  if (csv(o)) {
    csv_row({"closed", "mackey", "domain", "slope", "agree"});
    csv_row({to_fraction_string(closed.value), to_fraction_string(mackey), to_string(closed.domain),
             to_fraction_string(sl), closed.value == mackey ? "true" : "false"});
    return 0;
  }
  emit(Json{{"closed", to_json(closed.value)},
            {"mackey", to_json(mackey)},
            {"domain", to_string(closed.domain)},
            {"slope", to_json(sl)},
            {"agree", closed.value == mackey}});
  return 0;
}

int run_epipelagic(const Options& o) {
  const CarayolSpec spec = carayol_input(o);
  const Rational v = epipelagic_adjoint(spec);
  if (csv(o)) {
    csv_row({"value"});
    csv_row({to_fraction_string(v)});
    return 0;
  }
  emit(Json{{"value", to_json(v)}});
  return 0;
}

int run_validate(const Options& o) {
  std::vector<Violation> violations;
  std::string kind;
  auto structural = [&](auto&& f) {
    try {
      f();
    } catch (const InvalidSpec& e) {
      violations.push_back({"structure", e.what()});
    }
  };

  const auto j = json_input(o);
  if (j && j->contains("layers")) {
    kind = "tower";
    structural([&] { tower_from_json(*j); });
  } else if (j && j->contains("core_wild")) {
    kind = "carayol";
    structural([&] {
      const CarayolSpec c = carayol_from_json(*j);
      const SlopeReport r = slope_report(c);
      if (!r.carayol)
        violations.push_back({"carayol", "gcd(Sw = " + std::to_string(r.swan) + ", dim = " + std::to_string(r.dim) +
                                             ") != 1"});
    });
  } else if (j ? j->contains("increments") : !o.increments.empty()) {
    kind = "cyclic";
    const CyclicWildSpec s = j ? cyclic_from_json(*j) : inline_cyclic(o);
    violations = validate_cyclic(s);
  } else if (j || !o.breaks.empty()) {
    kind = "filtration";
    const Filtration f = filtration_fields_from_json(j ? *j : inline_filtration_json(o));
    violations = filtration_violations(f);
  } else {
    throw UsageError("no input: use --input, --spec, --breaks or --increments");
  }

  const bool valid = violations.empty();
  if (csv(o)) {
    csv_row({"kind", "valid", "constraint", "detail"});
    if (valid) csv_row({kind, "true", "", ""});
    for (const auto& v : violations) csv_row({kind, "false", v.constraint, v.detail});
  } else {
    Json vs = Json::array();
    for (const auto& v : violations) vs.push_back(Json{{"constraint", v.constraint}, {"detail", v.detail}});
    emit(Json{{"kind", kind}, {"valid", valid}, {"violations", vs}});
  }
  for (const auto& v : violations) std::cerr << "violation [" << v.constraint << "]: " << v.detail << '\n';
  return valid ? 0 : 1;
}

int run_enum(const Options& o) {
  const auto specs = enum_cyclic(o.p, o.r, o.e_F, o.l_max);
  if (csv(o)) {
    std::vector<std::string> header{"p", "r", "e_F", "increments", "lower_jumps", "upper_jumps", "wild_exponent"};
    if (o.sigma_max >= 0) header.push_back("carayol_slopes");
    csv_row(header);
    for (const auto& s : specs) {
      std::vector<std::string> row{std::to_string(s.p),          std::to_string(s.r),
                                   std::to_string(s.e_F),        joined(s.increments),
                                   joined(lower_jumps(s)),       joined(upper_jumps(s)),
                                   std::to_string(wild_exponent(to_filtration(s)))};
      if (o.sigma_max >= 0) row.push_back(joined(enum_carayol_slopes(s, o.sigma_max)));
      csv_row(row);
    }
    return 0;
  }
  Json out = Json::array();
  for (const auto& s : specs) {
    Json e = to_json(s);
    e["lower_jumps"] = lower_jumps(s);
    e["upper_jumps"] = upper_jumps(s);
    e["wild_exponent"] = wild_exponent(to_filtration(s));
    if (o.sigma_max >= 0) e["carayol_slopes"] = enum_carayol_slopes(s, o.sigma_max);
    out.push_back(e);
  }
  emit(out);
  return 0;
}

unsigned worker_count() {
  if (const char* env = std::getenv("HERBRAND_LAB_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && n >= 1) return static_cast<unsigned>(n);
    std::cerr << "warning: ignoring HERBRAND_LAB_THREADS=" << env << '\n';
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

int run_verify(const Options& o) {
  const auto j = json_input(o);
  const SweepConfig config = j ? sweep_config_from_json(*j) : SweepConfig{};
  check_config(config);
  const VerificationReport report = sweep_verify(config, worker_count());
  if (csv(o)) {
    csv_row({"check", "tested", "passed", "failed", "out_of_scope"});
    for (const auto& [name, c] : report.counts)
      csv_row({name, std::to_string(c.tested), std::to_string(c.passed), std::to_string(c.failed),
               std::to_string(c.out_of_scope)});
  } else {
    emit(to_json(report));
  }
  if (!report.ok()) {
    std::cerr << "verify: " << report.total_failed() << " in-scope failure(s)\n";
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Herbrand functions, Swan conductors and adjoint slopes"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--input", o.input_file, "JSON spec file");
    sub->add_option("--spec", o.spec_text, "inline JSON spec");
    sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "csv"}));
  };
  auto add_wild = [&](CLI::App* sub) {
    sub->add_option("--p", o.p, "residue characteristic");
    sub->add_option("--breaks", o.breaks, "lower jumps l_1 < ... < l_n")->delimiter(',');
    sub->add_option("--orders", o.orders, "subgroup orders g_0 > ... > g_n = 1 (default: drop by p per break)")
        ->delimiter(',');
    sub->add_flag("--abelian", o.abelian, "check Hasse-Arf");
    sub->add_option("--increments", o.increments, "cyclic upper-jump increments i_0,...,i_{r-1}")->delimiter(',');
    sub->add_option("--e-F", o.e_F, "absolute ramification index of the base");
  };
  auto add_rep = [&](CLI::App* sub) {
    add_wild(sub);
    sub->add_option("--m", o.m, "tame top degree");
    sub->add_option("--t", o.t, "core tame degree");
    sub->add_option("--sigma", o.sigma, "character slope");
  };

  std::map<std::string, std::function<int()>> handlers;
  auto sub = [&](const std::string& name, const std::string& help, std::function<int()> run) {
    CLI::App* s = app.add_subcommand(name, help);
    add_common(s);
    handlers[name] = std::move(run);
    return s;
  };

  for (const bool phi : {true, false}) {
    CLI::App* s = sub(phi ? "phi" : "psi", phi ? "Herbrand phi of a tower" : "Herbrand psi of a tower",
                      [&o, phi] { return run_function(o, phi); });
    add_wild(s);
    s->add_option("--tame", o.tame, "tame layer degrees, base first, below the wild layer")->delimiter(',');
    s->add_option("--sample", o.sample, "a b n: n+1 equally spaced exact samples on [a, b]")->expected(3);
  }
  {
    CLI::App* s = sub("jumps", "lower and upper jumps of a tower", [&o] { return run_jumps(o); });
    add_wild(s);
    s->add_option("--tame", o.tame, "tame layer degrees, base first, below the wild layer")->delimiter(',');
  }
  add_rep(sub("slope", "slope report of a Carayol representation", [&o] { return run_slope(o); }));
  add_rep(sub("swan", "Swan conductor and adjoint Swan sum", [&o] { return run_swan(o); }));
  add_rep(sub("adjoint", "adjoint slope: closed form and Mackey oracle", [&o] { return run_adjoint(o); }));
  add_rep(sub("epipelagic", "adjoint slope of an Sw = 1 representation", [&o] { return run_epipelagic(o); }));
  add_wild(sub("validate", "check a spec against its invariants", [&o] { return run_validate(o); }));
  {
    CLI::App* s = sub("enum", "admissible cyclic specs", [&o] { return run_enum(o); });
    s->add_option("--p", o.p, "residue characteristic")->required();
    s->add_option("--r", o.r, "number of jumps")->required();
    s->add_option("--e-F", o.e_F, "absolute ramification index of the base");
    s->add_option("--l-max", o.l_max, "bound on the largest lower jump");
    s->add_option("--sigma-max", o.sigma_max, "also list Carayol slopes up to this bound");
  }
  sub("verify", "sweep every property over a bounded search space", [&o] { return run_verify(o); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    for (auto* s : app.get_subcommands()) return handlers.at(s->get_name())();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
