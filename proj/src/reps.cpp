#include "herbrand/reps.hpp"

#include <algorithm>
#include <numeric>

namespace herbrand {

std::string to_string(AdjointDomain d) {
  switch (d) {
    case AdjointDomain::MGreaterOne: return "MGreaterOne";
    case AdjointDomain::WildInduced: return "WildInduced";
    case AdjointDomain::GeneralCarayol: return "GeneralCarayol";
    case AdjointDomain::OutOfTheoremScope: return "OutOfTheoremScope";
  }
  return "?";
}

std::optional<std::int64_t> twist_slope(std::int64_t sigma, std::int64_t delta, std::int64_t p) {
  if (sigma < 0 || delta < 0) throw InvalidSpec("twist_slope needs sigma >= 0 and delta >= 0");
  if (delta == 0) return sigma;  // tame lambda preserves the slope
  if (sigma <= delta) return 0;
  if ((sigma - delta) % p != 0) return sigma - delta;
  return std::nullopt;
}

// --- induced from a character ----------------------------------------------

void check_induced(const InducedSpec& spec) {
  check_filtration(spec.extension);
  if (spec.character.slope < 0) throw InvalidSpec("character slope must be nonnegative");
  if (!spec.extension.trivial() && spec.character.slope < spec.extension.breaks.back())
    throw InvalidSpec("character slope " + std::to_string(spec.character.slope) +
                      " is below the largest lower jump " + std::to_string(spec.extension.breaks.back()) +
                      " (induced representation would be reducible)");
}

std::int64_t swan_of_induced(const InducedSpec& spec) {
  check_induced(spec);
  return spec.character.slope + wild_exponent(spec.extension);
}

Rational slope_of_induced(const InducedSpec& spec) {
  check_induced(spec);
  const Rational sl = eval(phi_of(spec.extension), Rational(spec.character.slope));
  const Rational via_swan = make_rational(swan_of_induced(spec), spec.extension.degree());
  if (sl != via_swan)
    throw std::logic_error("slope " + to_fraction_string(sl) + " disagrees with Sw/dim " +
                           to_fraction_string(via_swan));
  return sl;
}

Rational slope_of_induced(const TowerSpec& tower, const CharacterData& character) {
  if (character.slope < 0) throw InvalidSpec("character slope must be nonnegative");
  return eval(compose_tower_phi(tower), Rational(character.slope));
}

bool is_carayol(const SlopeReport& report) { return std::gcd(report.swan, report.dim) == 1; }

// --- Carayol towers ----------------------------------------------------------

TowerSpec wild_core_tower(const CarayolSpec& spec) {
  TowerSpec t;
  if (spec.wild_mid) t.layers.emplace_back(*spec.wild_mid);
  if (spec.core_tame != 1) t.layers.emplace_back(TameLayer{spec.core_tame});
  t.layers.emplace_back(spec.core_wild);
  return t;
}

TowerSpec full_tower(const CarayolSpec& spec) {
  TowerSpec t;
  if (spec.tame_top != 1) t.layers.emplace_back(TameLayer{spec.tame_top});
  for (auto& layer : wild_core_tower(spec).layers) t.layers.push_back(std::move(layer));
  return t;
}

std::int64_t dimension(const CarayolSpec& spec) {
  return spec.tame_top * (spec.wild_mid ? spec.wild_mid->degree() : 1) * spec.core_wild.degree();
}

std::int64_t p_exponent(const CarayolSpec& spec) {
  std::int64_t n = dimension(spec) / spec.tame_top, r = 0;
  const std::int64_t p = residue_char(spec);
  while (n % p == 0) {
    n /= p;
    ++r;
  }
  return r;
}

std::int64_t residue_char(const CarayolSpec& spec) { return spec.core_wild.p; }

void check_carayol_structure(const CarayolSpec& spec) {
  if (spec.tame_top < 1 || spec.core_tame < 1) throw InvalidSpec("tame degrees must be positive");
  if (spec.wild_mid && spec.wild_mid->p != spec.core_wild.p)
    throw InvalidSpec("wild layers must share the same p");
  check_tower(full_tower(spec));
  if (std::gcd(spec.tame_top, spec.core_wild.p) != 1 || std::gcd(spec.core_tame, spec.core_wild.p) != 1)
    throw InvalidSpec("tame degrees must be coprime to p");
  if (spec.character.slope < 0) throw InvalidSpec("character slope must be nonnegative");

  const auto classes = tower_wild_classes(wild_core_tower(spec));
  if (!classes.empty() && spec.character.slope < classes.back().delta)
    throw InvalidSpec("character slope " + std::to_string(spec.character.slope) +
                      " is below the largest lower jump " + std::to_string(classes.back().delta) +
                      " of the wild tower (representation would be reducible)");

  const Rational swan = compose_tower_phi(full_tower(spec))(Rational(spec.character.slope)) * dimension(spec);
  if (!is_integer(swan))
    throw InvalidSpec("Swan conductor " + to_fraction_string(swan) + " is not an integer");
}

SlopeReport slope_report(const CarayolSpec& spec) {
  check_carayol_structure(spec);
  SlopeReport rep;
  rep.dim = dimension(spec);
  rep.slope = compose_tower_phi(full_tower(spec))(Rational(spec.character.slope));
  rep.swan = to_int64(Rational(rep.slope * rep.dim).get_num());
  rep.carayol = is_carayol(rep);
  return rep;
}

namespace {

SlopeReport require_carayol(const CarayolSpec& spec) {
  const SlopeReport rep = slope_report(spec);
  if (!rep.carayol)
    throw InvalidSpec("not Carayol: gcd(Sw = " + std::to_string(rep.swan) + ", dim = " + std::to_string(rep.dim) +
                      ") != 1");
  return rep;
}

std::int64_t checked_twist(std::int64_t sigma, std::int64_t delta, std::int64_t p) {
  const auto t = twist_slope(sigma, delta, p);
  if (!t)
    throw IndeterminateTwist("twist slope undetermined: sigma = " + std::to_string(sigma) +
                             " == delta = " + std::to_string(delta) + " (mod " + std::to_string(p) + ")");
  return *t;
}

}  // namespace

Rational adjoint_slope_mackey(const CarayolSpec& spec) {
  require_carayol(spec);
  const std::int64_t p = residue_char(spec);
  const std::int64_t sigma = spec.character.slope;

  // Non-trivial elements of the tame top F'/F have valuation 1. Elements of
  // the core tame step are not summands.
  std::int64_t best = 0;
  if (spec.tame_top > 1) best = checked_twist(sigma, 0, p);
  const auto classes = tower_wild_classes(wild_core_tower(spec));
  for (const auto& c : classes) best = std::max(best, checked_twist(sigma, c.delta, p));

  // Each summand Ind_{K/F} chi' is trivial on W_F^v only once W_F^v lies in
  // W_K, i.e. past the largest jump of psi_{K/F}. So its slope is
  // max(phi(sl chi'), that jump); the identity summand (regular
  // representation) attains the floor.
  const PLFunction phi = compose_tower_phi(full_tower(spec));
  const Rational floor = classes.empty() ? Rational(0) : phi(Rational(classes.back().delta));
  return std::max(phi(Rational(best)), floor);
}

ClosedForm adjoint_slope_closed(const CarayolSpec& spec) {
  const SlopeReport rep = require_carayol(spec);
  if (spec.tame_top > 1) return {rep.slope, AdjointDomain::MGreaterOne};

  const TowerSpec tower = full_tower(spec);
  if (tower_wild_classes(tower).empty()) return {rep.slope, AdjointDomain::OutOfTheoremScope};

  const Rational phi_i0 = compose_tower_phi(tower)(Rational(smallest_nonzero_jump(tower)));
  const Rational value = rep.slope - phi_i0 / rep.dim;
  if (p_exponent(spec) < 2) return {value, AdjointDomain::OutOfTheoremScope};
  return {value, spec.core_tame == 1 ? AdjointDomain::WildInduced : AdjointDomain::GeneralCarayol};
}

std::int64_t adjoint_swan_mackey(const CarayolSpec& spec) {
  if (spec.tame_top != 1 || spec.core_tame != 1)
    throw InvalidSpec("adjoint Swan sum needs a character-induced representation (tame_top = core_tame = 1)");
  require_carayol(spec);
  const std::int64_t p = residue_char(spec);
  const std::int64_t sigma = spec.character.slope;
  const auto classes = tower_wild_classes(wild_core_tower(spec));

  std::int64_t w = 0;
  for (const auto& c : classes) w += c.count * c.delta;
  // Sw(Ind_{K/F} psi) = Sw(psi) + w; the identity summand is Ind of the trivial character.
  std::int64_t total = w;
  for (const auto& c : classes) total += c.count * (checked_twist(sigma, c.delta, p) + w);
  return total;
}

Rational epipelagic_adjoint_value(bool tame_top_nontrivial, const Rational& phi_of_i0, std::int64_t dim) {
  if (tame_top_nontrivial) return make_rational(1, dim);
  return (1 - phi_of_i0) / dim;
}

Rational epipelagic_adjoint(const CarayolSpec& spec) {
  const SlopeReport rep = slope_report(spec);
  if (rep.swan != 1) throw NotEpipelagic("Sw(rho) = " + std::to_string(rep.swan) + ", expected 1");

  Rational phi_i0 = 0;
  if (spec.tame_top == 1) {
    const TowerSpec tower = full_tower(spec);
    phi_i0 = compose_tower_phi(tower)(Rational(smallest_nonzero_jump(tower)));
  }
  const Rational value = epipelagic_adjoint_value(spec.tame_top > 1, phi_i0, rep.dim);
  const ClosedForm closed = adjoint_slope_closed(spec);
  if (closed.value != value)
    throw std::logic_error("epipelagic value " + to_fraction_string(value) + " disagrees with closed form " +
                           to_fraction_string(closed.value));
  return value;
}

}  // namespace herbrand
