#include "herbrand/enumerate.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <numeric>
#include <thread>

namespace herbrand {

// --- generators --------------------------------------------------------------

namespace {

void descend(const CyclicWildSpec& base, std::int64_t l_max, std::vector<std::int64_t>& incs, std::int64_t l_prev,
             std::int64_t pk, const std::function<void(const CyclicWildSpec&)>& visit) {
  const std::int64_t p = base.p, e_F = base.e_F;
  const auto k = static_cast<std::int64_t>(incs.size());
  if (k == base.r) {
    CyclicWildSpec spec = base;
    spec.increments = incs;
    visit(spec);
    return;
  }
  if (pk > l_max - l_prev) return;  // even i = 1 overshoots

  auto recurse = [&](std::int64_t i) {
    incs.push_back(i);
    descend(base, l_max, incs, l_prev + i * pk, pk * p, visit);
    incs.pop_back();
  };

  if (k == 0) {
    for (std::int64_t i = 1; i * (p - 1) <= p * e_F && i <= l_max; ++i) recurse(i);
    return;
  }
  // pk == p^k; the case split compares l_k against p^{k-1} e_F / (p-1).
  if (l_prev * (p - 1) >= (pk / p) * e_F) {
    if (l_prev + pk * e_F <= l_max) recurse(e_F);
    return;
  }
  const std::int64_t lo = (1 + p * (p - 1)) * l_prev;
  const std::int64_t hi_scaled = pk * p * e_F - (p - 1) * (p - 1) * l_prev;
  std::int64_t i = std::max<std::int64_t>(1, (lo - l_prev + pk - 1) / pk);
  for (; l_prev + i * pk <= l_max && (l_prev + i * pk) * (p - 1) <= hi_scaled; ++i) recurse(i);
}

}  // namespace

void for_each_cyclic(std::int64_t p, std::int64_t r, std::int64_t e_F, std::int64_t l_max,
                     const std::function<void(const CyclicWildSpec&)>& visit) {
  if (!is_odd_prime(p) || r < 1 || e_F < 1 || l_max < 1) return;
  std::vector<std::int64_t> incs;
  descend(CyclicWildSpec{p, r, e_F, {}}, l_max, incs, 0, 1, visit);
}

std::vector<CyclicWildSpec> enum_cyclic(std::int64_t p, std::int64_t r, std::int64_t e_F, std::int64_t l_max) {
  std::vector<CyclicWildSpec> out;
  for_each_cyclic(p, r, e_F, l_max, [&](const CyclicWildSpec& s) { out.push_back(s); });
  return out;
}

std::vector<std::int64_t> enum_carayol_slopes(const CyclicWildSpec& spec, std::int64_t sigma_max) {
  const Filtration filt = to_filtration(spec);
  const std::int64_t w = wild_exponent(filt);
  std::vector<std::int64_t> out;
  for (std::int64_t s = filt.breaks.back(); s <= sigma_max; ++s)
    if ((s + w) % spec.p != 0) out.push_back(s);
  return out;
}

Filtration random_filtration(std::mt19937_64& rng, std::int64_t p) {
  // Raw engine output only; distribution objects are not portable across
  // standard libraries and the report must be reproducible.
  auto pick = [&rng](std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
  };
  const std::int64_t n = pick(1, 4);
  Filtration f{p, {}, {}, false};
  std::int64_t order = 1, b = 0;
  std::vector<std::int64_t> orders{1};
  for (std::int64_t k = 0; k < n; ++k) {
    const std::int64_t step = pick(1, 2);
    for (std::int64_t s = 0; s < step; ++s) order *= p;
    orders.push_back(order);
    b += pick(1, 12);
    f.breaks.push_back(b);
  }
  std::reverse(orders.begin(), orders.end());
  f.orders = orders;
  return f;
}

CarayolSpec induced_carayol(const CyclicWildSpec& spec, std::int64_t sigma, std::int64_t tame_top) {
  CarayolSpec c;
  c.tame_top = tame_top;
  c.core_wild = to_filtration(spec);
  c.character.slope = sigma;
  return c;
}

// --- sweep -------------------------------------------------------------------

const std::vector<std::string>& checks::all() {
  static const std::vector<std::string> names{kClosedVsMackey,   kTameInvariance, kJumpGap,
                                              kHerbrandRoundtrip, kSwanIdentity,   kSanityInequality,
                                              kMonotoneBound,     kHasseArf,       kTowerDecomposition};
  return names;
}

void check_config(const SweepConfig& config) {
  for (auto p : config.primes)
    if (!is_odd_prime(p)) throw InvalidSpec("sweep prime " + std::to_string(p) + " is not an odd prime");
  if (config.r_range.first < 1 && config.r_range.first <= config.r_range.second)
    throw InvalidSpec("r_range must be positive");
  if (config.e_F_range.first < 1 && config.e_F_range.first <= config.e_F_range.second)
    throw InvalidSpec("e_F_range must be positive");
  if (config.l_max < 1 || config.sigma_max < 1) throw InvalidSpec("l_max and sigma_max must be positive");
  for (auto m : config.tame_wrappers)
    if (m < 1) throw InvalidSpec("tame wrapper degrees must be positive");
  if (config.random_filtrations < 0 || config.max_certificates < 0)
    throw InvalidSpec("random_filtrations and max_certificates must be nonnegative");
  for (const auto& c : config.checks)
    if (std::find(checks::all().begin(), checks::all().end(), c) == checks::all().end())
      throw InvalidSpec("unknown check '" + c + "'");
}

const CheckCounts& VerificationReport::at(const std::string& check) const {
  for (const auto& [name, c] : counts)
    if (name == check) return c;
  throw std::out_of_range("no check named " + check);
}

std::int64_t VerificationReport::total_failed() const {
  std::int64_t n = 0;
  for (const auto& [name, c] : counts) n += c.failed;
  return n;
}

namespace {

struct Partial {
  std::map<std::string, CheckCounts> counts;
  std::vector<Certificate> failures;
  std::vector<Certificate> out_of_scope;
};

class Recorder {
 public:
  Recorder(Partial& out, const SweepConfig& config) : out_(out) {
    for (const auto& c : config.checks.empty() ? checks::all() : config.checks) enabled_.push_back(c);
  }

  bool enabled(const std::string& check) const {
    return std::find(enabled_.begin(), enabled_.end(), check) != enabled_.end();
  }

  void pass(const std::string& check) {
    auto& c = out_.counts[check];
    ++c.tested;
    ++c.passed;
  }
  void fail(Certificate cert) {
    auto& c = out_.counts[cert.check];
    ++c.tested;
    ++c.failed;
    out_.failures.push_back(std::move(cert));
  }
  void scope(Certificate cert) {
    auto& c = out_.counts[cert.check];
    ++c.tested;
    ++c.out_of_scope;
    out_.out_of_scope.push_back(std::move(cert));
  }
  void expect(bool ok, Certificate cert) {
    if (ok)
      pass(cert.check);
    else
      fail(std::move(cert));
  }

 private:
  Partial& out_;
  std::vector<std::string> enabled_;
};

Certificate cert_for(const std::string& check, const CyclicWildSpec& spec, std::string note = {}) {
  Certificate c;
  c.check = check;
  c.cyclic = spec;
  c.note = std::move(note);
  return c;
}

Certificate cert_for(const std::string& check, const CarayolSpec& rep, const CyclicWildSpec& spec) {
  Certificate c = cert_for(check, spec);
  c.carayol = rep;
  return c;
}

// Round trip, jump identification and last-piece law for one filtration.
std::string roundtrip_problem(const Filtration& filt) {
  const PLFunction phi = phi_of(filt), psi = psi_of(filt);
  if (invert(phi) != psi) return "invert(phi) != psi";
  if (compose(phi, psi) != PLFunction::identity()) return "phi o psi != id";
  if (compose(psi, phi) != PLFunction::identity()) return "psi o phi != id";
  if (jumps(psi) != upper_jumps(filt)) return "jumps(psi) != upper jumps";
  for (const auto& j : jumps(psi))
    if (jump_ratio(psi, j) <= 1) return "jump ratio <= 1 at a jump";
  std::int64_t w = 0;
  for (const auto& c : element_classes(filt)) w += c.count * c.delta;
  if (w != wild_exponent(filt)) return "wild exponent mismatch between psi intercept and class sum";
  if (!filt.breaks.empty()) {
    const Rational u = upper_jumps(filt).back();
    if (psi(u) != filt.degree() * u - w) return "last psi piece is not g_0 x - w";
  }
  return {};
}

// Sub/quotient lemma, composition law and the tower inequality on the
// canonical layers of a filtration.
std::string decomposition_problem(const Filtration& filt) {
  const auto steps = decompose_psi(filt);
  const PLFunction psi = psi_of(filt);
  for (const auto& s : steps) {
    if (jump_ratio(psi, s.jump) != s.degree) return "decomposition degree != jump ratio";
    if (psi(s.jump) != Rational(psi.slope_right_of(s.jump)) * s.jump - s.wild_exp)
      return "decomposition intercept mismatch";
  }
  const std::int64_t smallest = filt.breaks.front(), largest = filt.breaks.back();
  for (std::size_t k = 1; k < filt.breaks.size(); ++k) {
    const auto [sub, quo] = split_at_break(filt, k);
    if (compose(psi_of(sub), psi_of(quo)) != psi) return "psi_G != psi_H o psi_{G/H}";
    if (sub.breaks.front() < smallest) return "sub-group smallest jump below the group's";
    if (Rational(quo.breaks.front()) < phi_of(sub)(Rational(smallest))) return "quotient smallest jump below phi(i)";
  }
  // Canonical layers from the top: layer i has the single break phi_i'(l_{n-i+1}).
  const std::size_t n = filt.breaks.size();
  PLFunction phi_above;  // phi_{K/E_{i-1}}
  for (std::size_t i = 1; i <= n; ++i) {
    const std::size_t top_index = n - i;  // 0-based index of the break realized by layer i
    const Rational layer_jump = phi_above(Rational(filt.breaks[top_index]));
    if (!(phi_above(Rational(smallest)) <= layer_jump && layer_jump <= phi_above(Rational(largest))))
      return "layer jump outside [phi_i'(l_0'), phi_i'(l_0)]";
    if (phi_above(Rational(largest - smallest)) < 0) return "tower inequality violated";
    // Layer i's own filtration: G_{l_{top-1}+1} / G_{l_top + 1}.
    const std::int64_t below = filt.orders[top_index + 1];
    const Filtration layer{filt.p, {to_int64(layer_jump.get_num())}, {filt.orders[top_index] / below, 1}, false};
    if (!is_integer(layer_jump)) return "non-integral canonical layer jump";
    phi_above = compose(phi_of(layer), phi_above);
    Filtration subgroup{filt.p, {}, {}, false};
    subgroup.breaks.assign(filt.breaks.begin() + static_cast<std::ptrdiff_t>(top_index), filt.breaks.end());
    subgroup.orders.assign(filt.orders.begin() + static_cast<std::ptrdiff_t>(top_index), filt.orders.end());
    if (phi_above != phi_of(subgroup)) return "composed layer phi != phi of ramification subgroup";
  }
  return {};
}

void verify_spec(const CyclicWildSpec& spec, const SweepConfig& config, Recorder& rec) {
  const Filtration filt = to_filtration(spec);
  const std::int64_t p = spec.p, r = spec.r;
  const auto l = lower_jumps(spec);
  const auto j = upper_jumps(spec);

  if (rec.enabled(checks::kHasseArf)) {
    const auto u = upper_jumps(filt);
    bool ok = filtration_violations(filt).empty() && u.size() == j.size();
    for (std::size_t k = 0; ok && k < u.size(); ++k) ok = u[k] == Rational(j[k]);
    rec.expect(ok, cert_for(checks::kHasseArf, spec, "upper jumps not integral or not the increment partial sums"));
  }

  if (rec.enabled(checks::kJumpGap) && r >= 2) {
    Certificate c = cert_for(checks::kJumpGap, spec);
    c.values = {{"l_r - l_1", std::to_string(l.back() - l.front())}, {"j_r", std::to_string(j.back())}};
    rec.expect(l.back() - l.front() >= j.back(), std::move(c));
  }

  if (rec.enabled(checks::kHerbrandRoundtrip)) {
    std::string problem = roundtrip_problem(filt);
    if (problem.empty() && cyclic_psi(spec) != psi_of(filt)) problem = "closed-form psi != integral psi";
    if (problem.empty() && cyclic_phi(spec) != phi_of(filt)) problem = "closed-form phi != integral phi";
    if (problem.empty())
      for (const auto& x : jumps(psi_of(filt)))
        if (jump_ratio(psi_of(filt), x) != p) problem = "cyclic jump ratio != p";
    rec.expect(problem.empty(), cert_for(checks::kHerbrandRoundtrip, spec, problem));
  }

  if (rec.enabled(checks::kTowerDecomposition)) {
    const std::string problem = decomposition_problem(filt);
    rec.expect(problem.empty(), cert_for(checks::kTowerDecomposition, spec, problem));
  }

  const bool any_rep_check = rec.enabled(checks::kClosedVsMackey) || rec.enabled(checks::kTameInvariance) ||
                             rec.enabled(checks::kSwanIdentity) || rec.enabled(checks::kSanityInequality) ||
                             rec.enabled(checks::kMonotoneBound);
  if (!any_rep_check) return;

  const Integer pr = ipow(p, static_cast<unsigned>(r));
  for (const std::int64_t sigma : enum_carayol_slopes(spec, config.sigma_max)) {
    const CarayolSpec rep = induced_carayol(spec, sigma);
    try {
      const SlopeReport sr = slope_report(rep);
      const Rational mackey = adjoint_slope_mackey(rep);

      if (rec.enabled(checks::kClosedVsMackey)) {
        const ClosedForm closed = adjoint_slope_closed(rep);
        Certificate c = cert_for(checks::kClosedVsMackey, rep, spec);
        c.values = {{"closed", to_fraction_string(closed.value)},
                    {"mackey", to_fraction_string(mackey)},
                    {"domain", to_string(closed.domain)},
                    {"slope", to_fraction_string(sr.slope)}};
        if (r >= 2) {
          rec.expect(closed.domain == AdjointDomain::WildInduced && closed.value == mackey, std::move(c));
        } else if (closed.value == mackey) {
          rec.pass(checks::kClosedVsMackey);
        } else {
          c.note = "r = 1 lies outside the closed form's hypotheses";
          rec.scope(std::move(c));
        }
      }
      if (rec.enabled(checks::kSwanIdentity) || rec.enabled(checks::kSanityInequality)) {
        const std::int64_t adj_swan = adjoint_swan_mackey(rep);
        if (rec.enabled(checks::kSwanIdentity)) {
          Certificate c = cert_for(checks::kSwanIdentity, rep, spec);
          const Integer expected = (pr - 1) * Integer(static_cast<long>(sr.swan));
          c.values = {{"adjoint_swan", std::to_string(adj_swan)}, {"(p^r-1) Sw", expected.get_str()}};
          rec.expect(Integer(static_cast<long>(adj_swan)) == expected, std::move(c));
        }
        if (rec.enabled(checks::kSanityInequality)) {
          Certificate c = cert_for(checks::kSanityInequality, rep, spec);
          const Rational lhs = Rational(pr * pr) * mackey;
          c.values = {{"p^2r sl(Ad)", to_fraction_string(lhs)}, {"Sw(Ad)", std::to_string(adj_swan)}};
          rec.expect(lhs >= adj_swan, std::move(c));
        }
      }
      if (rec.enabled(checks::kMonotoneBound)) {
        Certificate c = cert_for(checks::kMonotoneBound, rep, spec);
        c.values = {{"mackey", to_fraction_string(mackey)}, {"slope", to_fraction_string(sr.slope)}};
        rec.expect(mackey < sr.slope, std::move(c));
      }
    } catch (const std::exception& e) {
      Certificate c = cert_for(checks::kClosedVsMackey, rep, spec);
      c.note = e.what();
      rec.fail(std::move(c));
      continue;
    }

    for (const std::int64_t m : config.tame_wrappers) {
      if (m == 1 || std::gcd(m, p) != 1) continue;
      const CarayolSpec wrapped = induced_carayol(spec, sigma, m);
      const SlopeReport sr = slope_report(wrapped);
      if (!sr.carayol) continue;  // the tame wrapper must keep Sw coprime to m p^r
      try {
        const Rational mackey = adjoint_slope_mackey(wrapped);
        if (rec.enabled(checks::kTameInvariance)) {
          const ClosedForm closed = adjoint_slope_closed(wrapped);
          Certificate c = cert_for(checks::kTameInvariance, wrapped, spec);
          c.values = {{"mackey", to_fraction_string(mackey)},
                      {"closed", to_fraction_string(closed.value)},
                      {"slope", to_fraction_string(sr.slope)}};
          rec.expect(mackey == sr.slope && closed.value == sr.slope && closed.domain == AdjointDomain::MGreaterOne,
                     std::move(c));
        }
        if (rec.enabled(checks::kMonotoneBound)) {
          Certificate c = cert_for(checks::kMonotoneBound, wrapped, spec);
          c.values = {{"mackey", to_fraction_string(mackey)}, {"slope", to_fraction_string(sr.slope)}};
          rec.expect(mackey <= sr.slope, std::move(c));
        }
      } catch (const std::exception& e) {
        Certificate c = cert_for(checks::kTameInvariance, wrapped, spec);
        c.note = e.what();
        rec.fail(std::move(c));
      }
    }
  }
}

void verify_random(const Filtration& filt, Recorder& rec) {
  if (rec.enabled(checks::kHerbrandRoundtrip)) {
    Certificate c;
    c.check = checks::kHerbrandRoundtrip;
    c.filtration = filt;
    c.note = roundtrip_problem(filt);
    rec.expect(c.note.empty(), std::move(c));
  }
  if (rec.enabled(checks::kTowerDecomposition)) {
    Certificate c;
    c.check = checks::kTowerDecomposition;
    c.filtration = filt;
    c.note = decomposition_problem(filt);
    rec.expect(c.note.empty(), std::move(c));
  }
}

}  // namespace

VerificationReport sweep_verify(const SweepConfig& config, unsigned workers) {
  check_config(config);

  std::vector<CyclicWildSpec> specs;
  for (auto p : config.primes)
    for (auto r = config.r_range.first; r <= config.r_range.second; ++r)
      for (auto e = config.e_F_range.first; e <= config.e_F_range.second; ++e)
        for_each_cyclic(p, r, e, config.l_max, [&](const CyclicWildSpec& s) { specs.push_back(s); });

  std::vector<Partial> partials(specs.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < specs.size(); i = next++) {
      Recorder rec(partials[i], config);
      verify_spec(specs[i], config, rec);
    }
  };
  workers = std::max(1u, workers);
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  Partial randoms;
  if (!config.primes.empty()) {
    std::mt19937_64 rng(config.seed);
    Recorder rec(randoms, config);
    for (std::int64_t n = 0; n < config.random_filtrations; ++n) {
      const auto p = config.primes[static_cast<std::size_t>(rng() % config.primes.size())];
      verify_random(random_filtration(rng, p), rec);
    }
  }
  partials.push_back(std::move(randoms));

  VerificationReport report;
  report.specs_enumerated = static_cast<std::int64_t>(specs.size());
  std::map<std::string, CheckCounts> totals;
  std::map<std::string, std::int64_t> kept_fail, kept_scope;
  for (auto& part : partials) {
    for (const auto& [name, c] : part.counts) {
      auto& t = totals[name];
      t.tested += c.tested;
      t.passed += c.passed;
      t.failed += c.failed;
      t.out_of_scope += c.out_of_scope;
    }
    for (auto& c : part.failures)
      if (kept_fail[c.check]++ < config.max_certificates) report.failures.push_back(std::move(c));
    for (auto& c : part.out_of_scope)
      if (kept_scope[c.check]++ < config.max_certificates) report.out_of_scope.push_back(std::move(c));
  }
  for (const auto& name : config.checks.empty() ? checks::all() : config.checks) {
    if (std::find_if(report.counts.begin(), report.counts.end(), [&](const auto& e) { return e.first == name; }) ==
        report.counts.end())
      report.counts.emplace_back(name, totals[name]);
  }
  // Keep the canonical order even when the config lists checks differently.
  std::stable_sort(report.counts.begin(), report.counts.end(), [](const auto& a, const auto& b) {
    const auto& all = checks::all();
    return std::find(all.begin(), all.end(), a.first) < std::find(all.begin(), all.end(), b.first);
  });
  return report;
}

}  // namespace herbrand
