#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "herbrand/plfun.hpp"
#include "herbrand/rational.hpp"

namespace herbrand {

class InvalidSpec : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/**
 * Lower-numbering ramification filtration of a totally wildly ramified
 * Galois layer.
 *
 * |G_x| = orders[0] for 0 < x <= breaks[0], orders[k] for
 * breaks[k-1] < x <= breaks[k], and orders.back() == 1 past the last break.
 * A layer with no breaks and orders == {1} is the trivial extension.
 */
struct Filtration {
  std::int64_t p = 3;
  std::vector<std::int64_t> breaks;
  std::vector<std::int64_t> orders{1};
  bool abelian = false;

  std::int64_t degree() const { return orders.front(); }
  bool trivial() const { return breaks.empty(); }

  friend bool operator==(const Filtration&, const Filtration&) = default;
};

// Totally ramified cyclic extension of degree p^r over a base with absolute
// ramification index e_F, described by its upper-jump increments i_0..i_{r-1}.
struct CyclicWildSpec {
  std::int64_t p = 3;
  std::int64_t r = 1;
  std::int64_t e_F = 1;
  std::vector<std::int64_t> increments;

  friend bool operator==(const CyclicWildSpec&, const CyclicWildSpec&) = default;
};

struct TameLayer {
  std::int64_t degree = 1;
  friend bool operator==(const TameLayer&, const TameLayer&) = default;
};

using Layer = std::variant<TameLayer, Filtration>;

// Layers listed from the base field upward.
struct TowerSpec {
  std::vector<Layer> layers;
};

// All non-identity group elements sharing v(lambda) - 1 == delta.
struct ElementClass {
  std::int64_t delta = 0;
  std::int64_t count = 0;
  friend bool operator==(const ElementClass&, const ElementClass&) = default;
};

struct Violation {
  std::string constraint;
  std::string detail;
};

// One canonical sublayer read off a psi function: jump position, sublayer
// degree (slope ratio at the jump) and accumulated wild exponent.
struct PsiStep {
  Rational jump;
  std::int64_t degree = 1;
  std::int64_t wild_exp = 0;
};

bool is_odd_prime(std::int64_t p);

// --- Filtration ------------------------------------------------------------

std::vector<Violation> filtration_violations(const Filtration& filt);
void check_filtration(const Filtration& filt);  // throws InvalidSpec

PLFunction phi_of(const Filtration& filt);
PLFunction psi_of(const Filtration& filt);
std::int64_t wild_exponent(const Filtration& filt);
std::vector<Rational> upper_jumps(const Filtration& filt);
std::vector<ElementClass> element_classes(const Filtration& filt, std::int64_t tame_order = 1);
std::vector<PsiStep> decompose_psi(const Filtration& filt);

// Splits G at its k-th break (1 <= k < #breaks) into the ramification
// subgroup H = G_{l_k + 1} and the quotient G/H, both in their own lower
// numbering. psi_of(G) == compose(psi_of(H), psi_of(G/H)).
std::pair<Filtration, Filtration> split_at_break(const Filtration& filt, std::size_t k);

// --- Cyclic layers ---------------------------------------------------------

std::vector<std::int64_t> lower_jumps(const CyclicWildSpec& spec);
std::vector<std::int64_t> upper_jumps(const CyclicWildSpec& spec);
std::vector<Violation> validate_cyclic(const CyclicWildSpec& spec);
Filtration to_filtration(const CyclicWildSpec& spec);  // throws InvalidSpec if inadmissible
PLFunction cyclic_psi(const CyclicWildSpec& spec);
PLFunction cyclic_phi(const CyclicWildSpec& spec);

// --- Towers ----------------------------------------------------------------

void check_tower(const TowerSpec& tower);
PLFunction compose_tower_phi(const TowerSpec& tower);
PLFunction compose_tower_psi(const TowerSpec& tower);

// psi of an intermediate step E/F, from psi_{E1/E} and psi_{E1/F}.
PLFunction psi_relative(const PLFunction& psi_big_mid, const PLFunction& psi_big_base);

// Classes of the wild inertia G(K/F)_1 minus the identity, valued in the
// lower numbering of the top field K. Wild layers below the top are lifted
// through psi of everything above them.
std::vector<ElementClass> tower_wild_classes(const TowerSpec& tower);
std::int64_t tower_wild_order(const TowerSpec& tower);
std::int64_t tower_tame_degree(const TowerSpec& tower);

// Smallest nonzero lower jump of the full tower group (top-field numbering).
// Throws InvalidSpec("tower is tame") when no wild layer is present.
std::int64_t smallest_nonzero_jump(const TowerSpec& tower);

}  // namespace herbrand
