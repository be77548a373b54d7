#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "herbrand/ramification.hpp"

namespace herbrand {

class IndeterminateTwist : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotEpipelagic : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A character only carries its slope, which equals its Swan conductor.
struct CharacterData {
  std::int64_t slope = 0;
};

// rho = Ind_{E/F} chi over a wild Galois layer.
struct InducedSpec {
  Filtration extension;
  CharacterData character;
};

/**
 * Carayol tower F c F' c E c T c K with a character chi of W_K:
 *   F'/F  totally tame of degree tame_top (induction step),
 *   E/F'  totally wild (optional further induction),
 *   T/E   tame of degree core_tame (restriction step, rho|_T irreducible),
 *   K/T   totally wild, tau|_T = Ind_{K/T} chi.
 */
struct CarayolSpec {
  std::int64_t tame_top = 1;
  std::optional<Filtration> wild_mid;
  std::int64_t core_tame = 1;
  Filtration core_wild;
  CharacterData character;
};

struct SlopeReport {
  std::int64_t dim = 1;
  std::int64_t swan = 0;
  Rational slope;
  bool carayol = false;
};

enum class AdjointDomain { MGreaterOne, WildInduced, GeneralCarayol, OutOfTheoremScope };

std::string to_string(AdjointDomain d);

struct ClosedForm {
  Rational value;
  AdjointDomain domain;
};

// Slope of chi^{lambda-1} for lambda with v(lambda) - 1 == delta; delta == 0
// means lambda has valuation 1 (tame). std::nullopt is the Indeterminate
// outcome: sigma > delta and sigma == delta (mod p).
std::optional<std::int64_t> twist_slope(std::int64_t sigma, std::int64_t delta, std::int64_t p);

// --- induced from a character ----------------------------------------------

void check_induced(const InducedSpec& spec);
std::int64_t swan_of_induced(const InducedSpec& spec);
Rational slope_of_induced(const InducedSpec& spec);
// Through an arbitrary tower, e.g. purely tame induction of degree e gives sigma/e.
Rational slope_of_induced(const TowerSpec& tower, const CharacterData& character);

bool is_carayol(const SlopeReport& report);

// --- Carayol towers ----------------------------------------------------------

TowerSpec full_tower(const CarayolSpec& spec);         // [tame m, mid?, tame t, core]
TowerSpec wild_core_tower(const CarayolSpec& spec);    // [mid?, tame t, core], above F'
std::int64_t dimension(const CarayolSpec& spec);
std::int64_t p_exponent(const CarayolSpec& spec);      // r with dim = m p^r
std::int64_t residue_char(const CarayolSpec& spec);

// Structural checks plus irreducibility (sigma >= largest lower jump) and
// integrality of the Swan conductor. Throws InvalidSpec.
void check_carayol_structure(const CarayolSpec& spec);

// Never throws for structurally valid specs; carayol may be false.
SlopeReport slope_report(const CarayolSpec& spec);

// Both throw InvalidSpec when the Carayol condition fails.
//
// Mackey value: the maximum slope over the summands Ind chi^{lambda-1}. A
// summand's slope is phi(twist) floored at the largest jump of psi_{K/F},
// because an induced representation stays nontrivial on every upper
// ramification group not contained in W_K.
Rational adjoint_slope_mackey(const CarayolSpec& spec);  // throws IndeterminateTwist
ClosedForm adjoint_slope_closed(const CarayolSpec& spec);

// Sum of Sw(Ind chi^{lambda-1}) over the whole group; needs tame_top == 1 and
// core_tame == 1.
std::int64_t adjoint_swan_mackey(const CarayolSpec& spec);

// Epipelagic closed form; throws NotEpipelagic when Sw(rho) != 1.
Rational epipelagic_adjoint(const CarayolSpec& spec);
Rational epipelagic_adjoint_value(bool tame_top_nontrivial, const Rational& phi_of_i0, std::int64_t dim);

}  // namespace herbrand
