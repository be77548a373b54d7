#include "herbrand/json_io.hpp"

#include <limits>

namespace herbrand {

namespace {

[[noreturn]] void bad(const std::string& field, const std::string& what) {
  throw InvalidSpec("field '" + field + "': " + what);
}

const Json& need(const Json& j, const char* key) {
  if (!j.is_object()) bad(key, "expected an object containing it");
  auto it = j.find(key);
  if (it == j.end()) bad(key, "missing");
  return *it;
}

std::int64_t int_of(const Json& j, const std::string& field) {
  if (j.is_number_integer()) return j.get<std::int64_t>();
  if (j.is_number_float()) {
    const double d = j.get<double>();
    if (d == static_cast<double>(static_cast<std::int64_t>(d))) return static_cast<std::int64_t>(d);
  }
  bad(field, "expected an integer, got " + j.dump());
}

std::vector<std::int64_t> ints_of(const Json& j, const std::string& field) {
  if (!j.is_array()) bad(field, "expected an array of integers");
  std::vector<std::int64_t> out;
  for (const auto& e : j) out.push_back(int_of(e, field));
  return out;
}

std::pair<std::int64_t, std::int64_t> range_of(const Json& j, const std::string& field) {
  if (j.is_number()) {
    const auto v = int_of(j, field);
    return {v, v};
  }
  const auto v = ints_of(j, field);
  if (v.size() != 2) bad(field, "expected [low, high]");
  return {v[0], v[1]};
}

Json ints_json(const std::vector<std::int64_t>& v) {
  Json a = Json::array();
  for (auto x : v) a.push_back(x);
  return a;
}

Json wild_json(const Filtration& f) { return to_json(f); }

std::string reproduce_command(const Certificate& c) {
  if (c.carayol) return "herbrand-lab adjoint --spec '" + to_json(*c.carayol).dump() + "'";
  if (c.cyclic) return "herbrand-lab validate --spec '" + to_json(*c.cyclic).dump() + "'";
  if (c.filtration) return "herbrand-lab psi --spec '" + to_json(*c.filtration).dump() + "'";
  return {};
}

}  // namespace

// --- emitters ----------------------------------------------------------------

Json to_json(const Integer& z) {
  if (z.fits_slong_p()) return static_cast<std::int64_t>(z.get_si());
  return z.get_str();
}

Json to_json(const Rational& q) { return Json::array({to_json(q.get_num()), to_json(q.get_den())}); }

Json to_json(const PLFunction& f) {
  Json pts = Json::array();
  for (const auto& b : f.breakpoints()) pts.push_back(Json::array({to_json(b.x), to_json(b.y)}));
  return Json{{"breakpoints", pts}, {"final_slope", to_json(f.final_slope())}};
}

Json to_json(const Filtration& f) {
  return Json{{"p", f.p}, {"breaks", ints_json(f.breaks)}, {"orders", ints_json(f.orders)}, {"abelian", f.abelian}};
}

Json to_json(const CyclicWildSpec& s) {
  return Json{{"p", s.p}, {"r", s.r}, {"e_F", s.e_F}, {"increments", ints_json(s.increments)}};
}

Json to_json(const TowerSpec& t) {
  Json layers = Json::array();
  for (const auto& layer : t.layers) {
    if (const auto* tame = std::get_if<TameLayer>(&layer))
      layers.push_back(Json{{"tame", tame->degree}});
    else
      layers.push_back(Json{{"wild", wild_json(std::get<Filtration>(layer))}});
  }
  return Json{{"layers", layers}};
}

Json to_json(const CarayolSpec& c) {
  Json j{{"tame_top", c.tame_top}};
  if (c.wild_mid) j["wild_mid"] = to_json(*c.wild_mid);
  j["core_tame"] = c.core_tame;
  j["core_wild"] = to_json(c.core_wild);
  j["character"] = Json{{"slope", c.character.slope}};
  return j;
}

Json to_json(const SlopeReport& r, std::optional<AdjointDomain> domain) {
  Json j{{"dim", r.dim}, {"swan", Json::array({r.swan})}, {"slope", to_json(r.slope)}, {"carayol", r.carayol}};
  j["domain"] = domain ? Json(to_string(*domain)) : Json(nullptr);
  return j;
}

Json to_json(const SweepConfig& c) {
  Json checks = Json::array();
  for (const auto& s : c.checks) checks.push_back(s);
  return Json{{"primes", ints_json(c.primes)},
              {"r_range", Json::array({c.r_range.first, c.r_range.second})},
              {"e_F_range", Json::array({c.e_F_range.first, c.e_F_range.second})},
              {"l_max", c.l_max},
              {"sigma_max", c.sigma_max},
              {"tame_wrappers", ints_json(c.tame_wrappers)},
              {"checks", checks},
              {"random_filtrations", c.random_filtrations},
              {"seed", c.seed},
              {"max_certificates", c.max_certificates}};
}

Json to_json(const Certificate& c) {
  Json j{{"check", c.check}};
  if (c.cyclic) j["cyclic"] = to_json(*c.cyclic);
  if (c.filtration) j["filtration"] = to_json(*c.filtration);
  if (c.carayol) j["carayol"] = to_json(*c.carayol);
  Json values = Json::object();
  for (const auto& [k, v] : c.values) values[k] = v;
  j["values"] = values;
  if (!c.note.empty()) j["note"] = c.note;
  j["reproduce"] = reproduce_command(c);
  return j;
}

Json to_json(const VerificationReport& r) {
  Json counts = Json::object();
  for (const auto& [name, c] : r.counts)
    counts[name] =
        Json{{"tested", c.tested}, {"passed", c.passed}, {"failed", c.failed}, {"out_of_scope", c.out_of_scope}};
  Json failures = Json::array(), scope = Json::array();
  for (const auto& c : r.failures) failures.push_back(to_json(c));
  for (const auto& c : r.out_of_scope) scope.push_back(to_json(c));
  return Json{{"ok", r.ok()},
              {"specs_enumerated", r.specs_enumerated},
              {"total_failed", r.total_failed()},
              {"counts", counts},
              {"failures", failures},
              {"out_of_scope", scope}};
}

// --- parsers -----------------------------------------------------------------

Rational rational_from_json(const Json& j) {
  try {
    if (j.is_number_integer()) return Rational(Integer(static_cast<long>(j.get<std::int64_t>())));
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_array() && j.size() == 2) {
      auto part = [](const Json& e) {
        if (e.is_number_integer()) return Integer(static_cast<long>(e.get<std::int64_t>()));
        if (e.is_string()) return Integer(e.get<std::string>());
        throw std::invalid_argument("non-integer component " + e.dump());
      };
      return make_rational(part(j[0]), part(j[1]));
    }
  } catch (const std::invalid_argument& e) {
    bad("rational", e.what());
  }
  bad("rational", "expected [num, den], an integer or \"n/d\", got " + j.dump());
}

PLFunction plfunction_from_json(const Json& j) {
  std::vector<Breakpoint> pts;
  const Json& raw = need(j, "breakpoints");
  if (!raw.is_array()) bad("breakpoints", "expected an array of [x, y] pairs");
  for (const auto& b : raw) {
    if (!b.is_array() || b.size() != 2) bad("breakpoints", "expected [x, y], got " + b.dump());
    pts.push_back({rational_from_json(b[0]), rational_from_json(b[1])});
  }
  try {
    return PLFunction(std::move(pts), rational_from_json(need(j, "final_slope")));
  } catch (const InvalidSpec&) {
    throw;
  } catch (const std::invalid_argument& e) {
    bad("breakpoints", e.what());
  }
}

Filtration filtration_fields_from_json(const Json& j) {
  Filtration f;
  f.p = int_of(need(j, "p"), "p");
  f.breaks = ints_of(need(j, "breaks"), "breaks");
  if (j.contains("orders")) {
    f.orders = ints_of(j["orders"], "orders");
  } else {
    // Default: each break drops the order by exactly p.
    f.orders.assign(1, 1);
    for (std::size_t k = 0; k < f.breaks.size(); ++k) f.orders.insert(f.orders.begin(), f.orders.front() * f.p);
  }
  if (j.contains("abelian")) {
    if (!j["abelian"].is_boolean()) bad("abelian", "expected a boolean");
    f.abelian = j["abelian"].get<bool>();
  }
  return f;
}

Filtration filtration_from_json(const Json& j) {
  Filtration f = filtration_fields_from_json(j);
  check_filtration(f);
  return f;
}

CyclicWildSpec cyclic_from_json(const Json& j) {
  CyclicWildSpec s;
  s.p = int_of(need(j, "p"), "p");
  s.increments = ints_of(need(j, "increments"), "increments");
  s.r = j.contains("r") ? int_of(j["r"], "r") : static_cast<std::int64_t>(s.increments.size());
  s.e_F = int_of(need(j, "e_F"), "e_F");
  return s;
}

Filtration wild_layer_from_json(const Json& j) {
  if (j.is_object() && j.contains("increments")) return to_filtration(cyclic_from_json(j));
  return filtration_from_json(j);
}

TowerSpec tower_from_json(const Json& j) {
  const Json& layers = need(j, "layers");
  if (!layers.is_array()) bad("layers", "expected an array");
  TowerSpec t;
  for (const auto& layer : layers) {
    if (layer.is_object() && layer.contains("tame"))
      t.layers.emplace_back(TameLayer{int_of(layer["tame"], "tame")});
    else if (layer.is_object() && layer.contains("wild"))
      t.layers.emplace_back(wild_layer_from_json(layer["wild"]));
    else
      bad("layers", "each layer must be {\"tame\": e} or {\"wild\": {...}}, got " + layer.dump());
  }
  check_tower(t);
  return t;
}

CarayolSpec carayol_from_json(const Json& j) {
  CarayolSpec c;
  if (j.contains("tame_top")) c.tame_top = int_of(j["tame_top"], "tame_top");
  if (j.contains("wild_mid") && !j["wild_mid"].is_null()) c.wild_mid = wild_layer_from_json(j["wild_mid"]);
  if (j.contains("core_tame")) c.core_tame = int_of(j["core_tame"], "core_tame");
  c.core_wild = wild_layer_from_json(need(j, "core_wild"));
  const Json& ch = need(j, "character");
  c.character.slope = ch.is_object() ? int_of(need(ch, "slope"), "character.slope") : int_of(ch, "character");
  check_carayol_structure(c);
  return c;
}

SweepConfig sweep_config_from_json(const Json& j) {
  if (!j.is_object()) bad("config", "expected an object");
  SweepConfig c;
  for (const auto& [key, value] : j.items()) {
    if (key == "primes") c.primes = ints_of(value, key);
    else if (key == "r_range") c.r_range = range_of(value, key);
    else if (key == "e_F_range") c.e_F_range = range_of(value, key);
    else if (key == "l_max") c.l_max = int_of(value, key);
    else if (key == "sigma_max") c.sigma_max = int_of(value, key);
    else if (key == "tame_wrappers") c.tame_wrappers = ints_of(value, key);
    else if (key == "random_filtrations") c.random_filtrations = int_of(value, key);
    else if (key == "max_certificates") c.max_certificates = int_of(value, key);
    else if (key == "seed") {
      if (!value.is_number_unsigned() && !(value.is_number_integer() && value.get<std::int64_t>() >= 0))
        bad(key, "expected a nonnegative integer");
      c.seed = value.get<std::uint64_t>();
    } else if (key == "checks") {
      if (!value.is_array()) bad(key, "expected an array of check names");
      c.checks.clear();
      for (const auto& s : value) {
        if (!s.is_string()) bad(key, "expected check names as strings");
        c.checks.push_back(s.get<std::string>());
      }
    } else {
      bad(key, "unknown config key");
    }
  }
  check_config(c);
  return c;
}

Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InvalidSpec(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace herbrand
