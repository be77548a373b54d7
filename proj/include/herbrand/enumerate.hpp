#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "herbrand/ramification.hpp"
#include "herbrand/reps.hpp"

namespace herbrand {

// Admissible cyclic specs with l_r <= l_max, lexicographic in the increments.
// The visitor form prunes with the admissibility constraints while
// descending, so it never materializes rejected tuples.
void for_each_cyclic(std::int64_t p, std::int64_t r, std::int64_t e_F, std::int64_t l_max,
                     const std::function<void(const CyclicWildSpec&)>& visit);
std::vector<CyclicWildSpec> enum_cyclic(std::int64_t p, std::int64_t r, std::int64_t e_F, std::int64_t l_max);

// sigma in [l_r, sigma_max] with p not dividing sigma + w, ascending.
std::vector<std::int64_t> enum_carayol_slopes(const CyclicWildSpec& spec, std::int64_t sigma_max);

// Monotone/divisibility-valid filtration with 1..4 breaks; not necessarily
// realizable by a field extension.
Filtration random_filtration(std::mt19937_64& rng, std::int64_t p);

// m = 1 Carayol spec over a cyclic core (no mid layer, no core tame step).
CarayolSpec induced_carayol(const CyclicWildSpec& spec, std::int64_t sigma, std::int64_t tame_top = 1);

namespace checks {
inline constexpr const char* kClosedVsMackey = "closed_vs_mackey";
inline constexpr const char* kTameInvariance = "tame_invariance";
inline constexpr const char* kJumpGap = "jump_gap";
inline constexpr const char* kHerbrandRoundtrip = "herbrand_roundtrip";
inline constexpr const char* kSwanIdentity = "swan_identity";
inline constexpr const char* kSanityInequality = "sanity_inequality";
inline constexpr const char* kMonotoneBound = "monotone_bound";
inline constexpr const char* kHasseArf = "hasse_arf";
inline constexpr const char* kTowerDecomposition = "tower_decomposition";

const std::vector<std::string>& all();
}  // namespace checks

struct SweepConfig {
  std::vector<std::int64_t> primes{3, 5, 7};
  std::pair<std::int64_t, std::int64_t> r_range{2, 3};     // inclusive; empty when first > second
  std::pair<std::int64_t, std::int64_t> e_F_range{1, 4};
  std::int64_t l_max = 60;
  std::int64_t sigma_max = 120;
  std::vector<std::int64_t> tame_wrappers{1, 2, 4};
  std::vector<std::string> checks;  // empty selects every check
  std::int64_t random_filtrations = 200;
  std::uint64_t seed = 20240601;
  std::int64_t max_certificates = 100;  // per check and per list; counts stay exact
};

// Throws InvalidSpec on non-odd-prime entries, non-positive bounds or unknown checks.
void check_config(const SweepConfig& config);

struct CheckCounts {
  std::int64_t tested = 0;
  std::int64_t passed = 0;
  std::int64_t failed = 0;
  std::int64_t out_of_scope = 0;
};

// Full reproduction data for one instance: the cyclic spec, the Carayol input
// when the check involves a representation, and the values that disagreed.
struct Certificate {
  std::string check;
  std::optional<CyclicWildSpec> cyclic;
  std::optional<Filtration> filtration;
  std::optional<CarayolSpec> carayol;
  std::vector<std::pair<std::string, std::string>> values;
  std::string note;
};

struct VerificationReport {
  std::vector<std::pair<std::string, CheckCounts>> counts;  // in checks::all() order
  std::vector<Certificate> failures;
  std::vector<Certificate> out_of_scope;
  std::int64_t specs_enumerated = 0;

  const CheckCounts& at(const std::string& check) const;
  std::int64_t total_failed() const;
  bool ok() const { return total_failed() == 0; }
};

// Deterministic for a given config regardless of the worker count.
VerificationReport sweep_verify(const SweepConfig& config, unsigned workers = 1);

}  // namespace herbrand
