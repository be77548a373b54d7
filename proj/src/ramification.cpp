#include "herbrand/ramification.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace herbrand {

namespace {

std::string join(const std::vector<std::int64_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return "(" + s + ")";
}

bool is_power_of(std::int64_t n, std::int64_t p) {
  if (n < 1) return false;
  while (n % p == 0) n /= p;
  return n == 1;
}

const Filtration* as_wild(const Layer& layer) { return std::get_if<Filtration>(&layer); }

std::vector<ElementClass> merge_classes(std::vector<ElementClass> classes) {
  std::map<std::int64_t, std::int64_t> by_delta;
  for (const auto& c : classes) by_delta[c.delta] += c.count;
  std::vector<ElementClass> out;
  for (const auto& [delta, count] : by_delta)
    if (count > 0) out.push_back({delta, count});
  return out;
}

}  // namespace

bool is_odd_prime(std::int64_t p) {
  if (p < 3 || p % 2 == 0) return false;
  for (std::int64_t d = 3; d * d <= p; d += 2)
    if (p % d == 0) return false;
  return true;
}

// --- Filtration ------------------------------------------------------------

std::vector<Violation> filtration_violations(const Filtration& filt) {
  std::vector<Violation> out;
  if (!is_odd_prime(filt.p)) out.push_back({"residue_char", "p = " + std::to_string(filt.p) + " is not an odd prime"});
  if (filt.orders.size() != filt.breaks.size() + 1) {
    out.push_back({"shape", "need #orders == #breaks + 1, got breaks " + join(filt.breaks) + " orders " +
                                join(filt.orders)});
    return out;
  }
  for (std::size_t k = 0; k < filt.breaks.size(); ++k) {
    if (filt.breaks[k] < 1 || (k > 0 && filt.breaks[k] <= filt.breaks[k - 1]))
      out.push_back({"breaks", "breaks must be strictly increasing positive integers: " + join(filt.breaks)});
  }
  if (filt.orders.back() != 1) out.push_back({"orders", "last order must be 1: " + join(filt.orders)});
  for (std::size_t k = 0; k < filt.orders.size(); ++k) {
    if (!is_odd_prime(filt.p)) break;
    if (!is_power_of(filt.orders[k], filt.p))
      out.push_back({"orders", std::to_string(filt.orders[k]) + " is not a power of p = " + std::to_string(filt.p)});
    else if (k > 0 && (filt.orders[k] >= filt.orders[k - 1] || filt.orders[k - 1] % filt.orders[k] != 0))
      out.push_back({"orders", "each order must strictly divide its predecessor: " + join(filt.orders)});
  }
  if (out.empty() && filt.abelian) {
    for (const auto& u : upper_jumps(filt)) {
      if (!is_integer(u))
        out.push_back({"hasse_arf", "abelian filtration has non-integral upper jump " + to_fraction_string(u)});
    }
  }
  return out;
}

void check_filtration(const Filtration& filt) {
  const auto v = filtration_violations(filt);
  if (!v.empty()) throw InvalidSpec("invalid filtration [" + v.front().constraint + "]: " + v.front().detail);
}

PLFunction phi_of(const Filtration& filt) {
  std::vector<Rational> knots{Rational(0)};
  std::vector<Rational> slopes;
  const Rational g0(filt.orders.front());
  for (std::size_t k = 0; k < filt.breaks.size(); ++k) {
    slopes.push_back(make_rational(filt.orders[k], filt.orders.front()));
    knots.push_back(Rational(filt.breaks[k]));
  }
  slopes.push_back(make_rational(filt.orders.back(), filt.orders.front()));
  return PLFunction::from_slopes(knots, slopes);
}

PLFunction psi_of(const Filtration& filt) { return invert(phi_of(filt)); }

std::int64_t wild_exponent(const Filtration& filt) {
  // Read off the last psi piece g_0 * x - w.
  const PLFunction psi = psi_of(filt);
  const auto& last = psi.breakpoints().back();
  const Rational w = psi.final_slope() * last.x - last.y;
  return to_int64(w.get_num());
}

std::vector<Rational> upper_jumps(const Filtration& filt) {
  const PLFunction phi = phi_of(filt);
  std::vector<Rational> out;
  for (auto b : filt.breaks) out.push_back(phi(Rational(b)));
  return out;
}

std::vector<ElementClass> element_classes(const Filtration& filt, std::int64_t tame_order) {
  if (tame_order < 1) throw InvalidSpec("tame order must be positive");
  std::vector<ElementClass> out;
  const std::int64_t g0 = filt.orders.front();
  if (tame_order > 1) out.push_back({0, g0 * tame_order - g0});
  for (std::size_t k = 0; k < filt.breaks.size(); ++k)
    out.push_back({filt.breaks[k], filt.orders[k] - filt.orders[k + 1]});
  return out;
}

std::vector<PsiStep> decompose_psi(const Filtration& filt) {
  const PLFunction psi = psi_of(filt);
  std::vector<PsiStep> out;
  for (std::size_t i = 1; i < psi.breakpoints().size(); ++i) {
    const auto& b = psi.breakpoints()[i];
    const Rational ratio = psi.piece_slope(i) / psi.piece_slope(i - 1);
    const Rational w = psi.piece_slope(i) * b.x - b.y;
    if (!is_integer(ratio) || !is_integer(w))
      throw InvalidSpec("psi decomposition produced non-integral data at " + to_fraction_string(b.x));
    out.push_back({b.x, to_int64(ratio.get_num()), to_int64(w.get_num())});
  }
  return out;
}

std::pair<Filtration, Filtration> split_at_break(const Filtration& filt, std::size_t k) {
  if (k < 1 || k >= filt.breaks.size()) throw InvalidSpec("split index out of range");
  Filtration sub{filt.p, {}, {}, filt.abelian};
  sub.breaks.assign(filt.breaks.begin() + static_cast<std::ptrdiff_t>(k), filt.breaks.end());
  sub.orders.assign(filt.orders.begin() + static_cast<std::ptrdiff_t>(k), filt.orders.end());

  // Quotient jumps sit at phi_H(l_i) == l_i for i <= k, since H has no break below l_{k+1}.
  const PLFunction phi_sub = phi_of(sub);
  Filtration quo{filt.p, {}, {}, filt.abelian};
  for (std::size_t i = 0; i < k; ++i) {
    const Rational b = phi_sub(Rational(filt.breaks[i]));
    if (!is_integer(b)) throw InvalidSpec("quotient break is not integral");
    quo.breaks.push_back(to_int64(b.get_num()));
  }
  for (std::size_t i = 0; i <= k; ++i) quo.orders.push_back(filt.orders[i] / filt.orders[k]);
  return {sub, quo};
}

// --- Cyclic layers ---------------------------------------------------------

std::vector<std::int64_t> lower_jumps(const CyclicWildSpec& spec) {
  std::vector<std::int64_t> out;
  std::int64_t l = 0, pk = 1;
  for (auto i : spec.increments) {
    l += i * pk;
    pk *= spec.p;
    out.push_back(l);
  }
  return out;
}

std::vector<std::int64_t> upper_jumps(const CyclicWildSpec& spec) {
  std::vector<std::int64_t> out;
  std::int64_t j = 0;
  for (auto i : spec.increments) out.push_back(j += i);
  return out;
}

std::vector<Violation> validate_cyclic(const CyclicWildSpec& spec) {
  std::vector<Violation> out;
  const std::int64_t p = spec.p;
  if (!is_odd_prime(p)) {
    out.push_back({"residue_char", "p = " + std::to_string(p) + " is not an odd prime"});
    return out;
  }
  if (spec.r < 1 || spec.increments.size() != static_cast<std::size_t>(spec.r)) {
    out.push_back({"shape", "need r >= 1 increments, got r = " + std::to_string(spec.r) + " with increments " +
                                join(spec.increments)});
    return out;
  }
  if (spec.e_F < 1) {
    out.push_back({"shape", "e_F must be positive, got " + std::to_string(spec.e_F)});
    return out;
  }
  for (auto i : spec.increments) {
    if (i < 1) {
      out.push_back({"shape", "increments must be positive: " + join(spec.increments)});
      return out;
    }
  }

  const auto l = lower_jumps(spec);
  for (std::size_t k = 1; k < l.size(); ++k) {
    if ((l[k] - l[0]) % p != 0)
      out.push_back({"congruence", "lower jumps " + join(l) + " are not all congruent mod " + std::to_string(p)});
  }

  const Integer P(static_cast<long>(p)), eF(static_cast<long>(spec.e_F));
  // i_0 <= p e_F / (p - 1)
  if (Integer(static_cast<long>(spec.increments[0])) * (P - 1) > P * eF) {
    out.push_back({"first_jump_bound", "i_0 = " + std::to_string(spec.increments[0]) + " exceeds p*e_F/(p-1) = " +
                                           to_fraction_string(make_rational(P * eF, P - 1))});
  }

  for (std::size_t k = 1; k < l.size(); ++k) {
    // Step from l_{k} to l_{k+1} in 1-based terms; here prev = l[k-1], cur = l[k].
    const Integer prev(static_cast<long>(l[k - 1])), cur(static_cast<long>(l[k]));
    const Integer case1_threshold = ipow(p, static_cast<unsigned>(k - 1)) * eF;  // compare prev*(p-1)
    const std::string step = "l_" + std::to_string(k) + " = " + prev.get_str() + " -> l_" + std::to_string(k + 1) +
                             " = " + cur.get_str();
    if (prev * (P - 1) >= case1_threshold) {
      const Integer forced = prev + ipow(p, static_cast<unsigned>(k)) * eF;
      if (cur != forced)
        out.push_back({"fontaine_viennot_case1", step + ": l_" + std::to_string(k) + " >= p^" +
                                                     std::to_string(k - 1) + " e_F/(p-1) forces l_" +
                                                     std::to_string(k + 1) + " = " + forced.get_str() + " (i_" +
                                                     std::to_string(k) + " = e_F = " + eF.get_str() + ")"});
    } else {
      const Integer lo = (1 + P * (P - 1)) * prev;
      // cur <= p^{k+1} e_F/(p-1) - (p-1) prev, multiplied through by (p-1)
      const Integer hi_scaled = ipow(p, static_cast<unsigned>(k + 1)) * eF - (P - 1) * (P - 1) * prev;
      if (cur < lo || cur * (P - 1) > hi_scaled)
        out.push_back({"fontaine_viennot_case2",
                       step + ": window is [" + lo.get_str() + ", " +
                           to_fraction_string(make_rational(hi_scaled, P - 1)) + "]"});
    }
  }
  return out;
}

Filtration to_filtration(const CyclicWildSpec& spec) {
  const auto v = validate_cyclic(spec);
  if (!v.empty()) throw InvalidSpec("inadmissible cyclic spec [" + v.front().constraint + "]: " + v.front().detail);
  Filtration filt{spec.p, lower_jumps(spec), {}, true};
  for (std::int64_t k = spec.r; k >= 0; --k) filt.orders.push_back(to_int64(ipow(spec.p, static_cast<unsigned>(k))));
  return filt;
}

PLFunction cyclic_psi(const CyclicWildSpec& spec) {
  const auto v = validate_cyclic(spec);
  if (!v.empty()) throw InvalidSpec("inadmissible cyclic spec [" + v.front().constraint + "]: " + v.front().detail);
  // On [j_k, j_{k+1}]: psi(x) = p^k x - sum_{l<k} i_l (p^k - p^l).
  const auto j = upper_jumps(spec);
  std::vector<Breakpoint> pts{{Rational(0), Rational(0)}};
  for (std::size_t k = 1; k <= j.size(); ++k) {
    const Integer pk = ipow(spec.p, static_cast<unsigned>(k));
    Integer intercept = 0;
    for (std::size_t l = 0; l < k; ++l)
      intercept += Integer(static_cast<long>(spec.increments[l])) * (pk - ipow(spec.p, static_cast<unsigned>(l)));
    const Rational x(j[k - 1]);
    pts.push_back({x, Rational(pk) * x - Rational(intercept)});
  }
  return PLFunction(std::move(pts), Rational(ipow(spec.p, static_cast<unsigned>(spec.r))));
}

PLFunction cyclic_phi(const CyclicWildSpec& spec) {
  const auto v = validate_cyclic(spec);
  if (!v.empty()) throw InvalidSpec("inadmissible cyclic spec [" + v.front().constraint + "]: " + v.front().detail);
  // Piece k: x / p^k + w_{E_k} / p^k, beginning at the lower jump l_k.
  const auto l = lower_jumps(spec);
  const auto j = upper_jumps(spec);
  std::vector<Breakpoint> pts{{Rational(0), Rational(0)}};
  for (std::size_t k = 0; k < l.size(); ++k) pts.push_back({Rational(l[k]), Rational(j[k])});
  return PLFunction(std::move(pts), 1 / Rational(ipow(spec.p, static_cast<unsigned>(spec.r))));
}

// --- Towers ----------------------------------------------------------------

void check_tower(const TowerSpec& tower) {
  std::int64_t p = 0;
  for (const auto& layer : tower.layers) {
    if (const auto* w = as_wild(layer)) {
      check_filtration(*w);
      if (p != 0 && w->p != p) throw InvalidSpec("wild layers must share the same p");
      p = w->p;
    } else if (std::get<TameLayer>(layer).degree < 1) {
      throw InvalidSpec("tame degree must be positive");
    }
  }
  if (p == 0) return;
  for (const auto& layer : tower.layers) {
    if (const auto* t = std::get_if<TameLayer>(&layer); t && std::gcd(t->degree, p) != 1)
      throw InvalidSpec("tame degree " + std::to_string(t->degree) + " is not coprime to p = " + std::to_string(p));
  }
}

PLFunction compose_tower_phi(const TowerSpec& tower) {
  check_tower(tower);
  // phi_{K/F} = phi_{layer 1} o phi_{layer 2} o ... o phi_{top layer}.
  PLFunction result;
  for (auto it = tower.layers.rbegin(); it != tower.layers.rend(); ++it) {
    const PLFunction layer_phi = as_wild(*it) ? phi_of(*as_wild(*it))
                                              : PLFunction::linear(make_rational(1, std::get<TameLayer>(*it).degree));
    result = compose(layer_phi, result);
  }
  return result;
}

PLFunction compose_tower_psi(const TowerSpec& tower) {
  check_tower(tower);
  PLFunction result;
  for (const auto& layer : tower.layers) {
    const PLFunction layer_psi = as_wild(layer) ? psi_of(*as_wild(layer))
                                                : PLFunction::linear(Rational(std::get<TameLayer>(layer).degree));
    result = compose(layer_psi, result);
  }
  return result;
}

PLFunction psi_relative(const PLFunction& psi_big_mid, const PLFunction& psi_big_base) {
  return compose(invert(psi_big_mid), psi_big_base);
}

std::vector<ElementClass> tower_wild_classes(const TowerSpec& tower) {
  check_tower(tower);
  // Walk downward. For a wild layer W under the part Q already processed, an
  // element of W with delta d lifts (at best) to delta y = psi_{K/top(W)}(d);
  // the coset of that lift by Q has delta y on {q : delta_q >= y} and delta_q
  // elsewhere.
  std::vector<ElementClass> classes;
  PLFunction psi_above;
  for (auto it = tower.layers.rbegin(); it != tower.layers.rend(); ++it) {
    if (const auto* w = as_wild(*it)) {
      std::vector<ElementClass> next = classes;
      for (const auto& c : element_classes(*w)) {
        const Rational y = psi_above(Rational(c.delta));
        if (!is_integer(y))
          throw InvalidSpec("lifted lower jump " + to_fraction_string(y) + " of tower layer is not integral");
        const std::int64_t yi = to_int64(y.get_num());
        std::int64_t at_y = 1;
        for (const auto& q : classes) {
          if (q.delta >= yi)
            at_y += q.count;
          else
            next.push_back({q.delta, c.count * q.count});
        }
        next.push_back({yi, c.count * at_y});
      }
      classes = merge_classes(std::move(next));
      psi_above = compose(psi_above, psi_of(*w));
    } else {
      psi_above = compose(psi_above, PLFunction::linear(Rational(std::get<TameLayer>(*it).degree)));
    }
  }
  return classes;
}

std::int64_t tower_wild_order(const TowerSpec& tower) {
  std::int64_t n = 1;
  for (const auto& layer : tower.layers)
    if (const auto* w = as_wild(layer)) n *= w->degree();
  return n;
}

std::int64_t tower_tame_degree(const TowerSpec& tower) {
  std::int64_t n = 1;
  for (const auto& layer : tower.layers)
    if (const auto* t = std::get_if<TameLayer>(&layer)) n *= t->degree;
  return n;
}

std::int64_t smallest_nonzero_jump(const TowerSpec& tower) {
  const auto classes = tower_wild_classes(tower);
  if (classes.empty()) throw InvalidSpec("tower is tame");
  return classes.front().delta;
}

}  // namespace herbrand
