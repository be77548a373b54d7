#include "herbrand/plfun.hpp"

#include <algorithm>
#include <stdexcept>

namespace herbrand {

PLFunction::PLFunction() : points_{{Rational(0), Rational(0)}}, final_slope_(1), slopes_{Rational(1)} {}

PLFunction::PLFunction(std::vector<Breakpoint> breakpoints, Rational final_slope) {
  if (breakpoints.empty() || breakpoints.front().x != 0 || breakpoints.front().y != 0)
    throw std::invalid_argument("piecewise-linear function must start at the origin");
  if (final_slope <= 0) throw std::invalid_argument("final slope must be positive");
  for (std::size_t i = 1; i < breakpoints.size(); ++i) {
    if (breakpoints[i].x <= breakpoints[i - 1].x || breakpoints[i].y <= breakpoints[i - 1].y)
      throw std::invalid_argument("breakpoints must be strictly increasing in x and y");
  }

  // Merge collinear pieces: drop interior points whose two adjacent slopes agree.
  std::vector<Breakpoint> kept{breakpoints.front()};
  std::vector<Rational> slopes;
  for (std::size_t i = 1; i < breakpoints.size(); ++i) {
    Rational s = (breakpoints[i].y - kept.back().y) / (breakpoints[i].x - kept.back().x);
    if (!slopes.empty() && slopes.back() == s) {
      kept.back() = breakpoints[i];
    } else {
      slopes.push_back(s);
      kept.push_back(breakpoints[i]);
    }
  }
  if (!slopes.empty() && slopes.back() == final_slope) {
    kept.pop_back();
    slopes.pop_back();
  }
  slopes.push_back(final_slope);
  points_ = std::move(kept);
  final_slope_ = std::move(final_slope);
  slopes_ = std::move(slopes);
}

PLFunction PLFunction::linear(const Rational& slope) { return PLFunction({{Rational(0), Rational(0)}}, slope); }

PLFunction PLFunction::from_slopes(const std::vector<Rational>& knots, const std::vector<Rational>& slopes) {
  if (knots.empty() || knots.size() != slopes.size() || knots.front() != 0)
    throw std::invalid_argument("from_slopes needs one slope per knot, starting at 0");
  std::vector<Breakpoint> pts{{Rational(0), Rational(0)}};
  for (std::size_t k = 1; k < knots.size(); ++k) {
    if (slopes[k - 1] <= 0) throw std::invalid_argument("piece slopes must be positive");
    Rational y = pts.back().y + slopes[k - 1] * (knots[k] - knots[k - 1]);
    pts.push_back({knots[k], std::move(y)});
  }
  return PLFunction(std::move(pts), slopes.back());
}

std::size_t PLFunction::piece_index(const Rational& x) const {
  auto it = std::upper_bound(points_.begin(), points_.end(), x,
                             [](const Rational& v, const Breakpoint& b) { return v < b.x; });
  return static_cast<std::size_t>(std::distance(points_.begin(), it)) - 1;
}

Rational PLFunction::operator()(const Rational& x) const {
  const std::size_t k = piece_index(x);
  return points_[k].y + slopes_[k] * (x - points_[k].x);
}

Rational PLFunction::preimage(const Rational& y) const {
  if (y < 0) throw std::domain_error("preimage of a negative value");
  auto it = std::upper_bound(points_.begin(), points_.end(), y,
                             [](const Rational& v, const Breakpoint& b) { return v < b.y; });
  const std::size_t k = static_cast<std::size_t>(std::distance(points_.begin(), it)) - 1;
  return points_[k].x + (y - points_[k].y) / slopes_[k];
}

Rational PLFunction::slope_right_of(const Rational& x) const { return slopes_[piece_index(x)]; }

Rational PLFunction::slope_left_of(const Rational& x) const {
  if (x <= 0) throw std::domain_error("no left slope at or below 0");
  std::size_t k = piece_index(x);
  if (points_[k].x == x) --k;
  return slopes_[k];
}

Rational eval(const PLFunction& f, const Rational& x) {
  if (x < 0) throw std::domain_error("evaluation at negative argument " + to_fraction_string(x));
  return f(x);
}

PLFunction invert(const PLFunction& f) {
  std::vector<Breakpoint> pts;
  pts.reserve(f.breakpoints().size());
  for (const auto& b : f.breakpoints()) pts.push_back({b.y, b.x});
  return PLFunction(std::move(pts), 1 / f.final_slope());
}

PLFunction compose(const PLFunction& outer, const PLFunction& inner) {
  std::vector<Rational> xs;
  xs.reserve(inner.breakpoints().size() + outer.breakpoints().size());
  for (const auto& b : inner.breakpoints()) xs.push_back(b.x);
  for (const auto& b : outer.breakpoints()) xs.push_back(inner.preimage(b.x));
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  std::vector<Breakpoint> pts;
  pts.reserve(xs.size());
  for (auto& x : xs) {
    Rational y = outer(inner(x));
    pts.push_back({std::move(x), std::move(y)});
  }
  return PLFunction(std::move(pts), outer.final_slope() * inner.final_slope());
}

std::vector<Rational> jumps(const PLFunction& f) {
  std::vector<Rational> out;
  for (std::size_t i = 1; i < f.breakpoints().size(); ++i) out.push_back(f.breakpoints()[i].x);
  return out;
}

Rational jump_ratio(const PLFunction& f, const Rational& x) {
  if (x <= 0) throw std::domain_error("jump ratio needs x > 0");
  return f.slope_right_of(x) / f.slope_left_of(x);
}

}  // namespace herbrand
