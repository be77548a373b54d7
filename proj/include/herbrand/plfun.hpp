#pragma once

#include <vector>

#include "herbrand/rational.hpp"

namespace herbrand {

struct Breakpoint {
  Rational x;
  Rational y;

  friend bool operator==(const Breakpoint&, const Breakpoint&) = default;
};

/**
 * Continuous, strictly increasing piecewise-linear map [0, inf) -> [0, inf).
 *
 * Stored as the list of breakpoints (starting at the origin) plus the slope
 * of the unbounded last piece. The representation is canonical: adjacent
 * pieces never share a slope, so operator== is equality of functions.
 * Herbrand's phi and psi of every extension in this library are values of
 * this type.
 */
class PLFunction {
 public:
  PLFunction();  // identity

  // Validates the invariants (origin first, x and y strictly increasing,
  // positive final slope) and merges collinear pieces. Throws
  // std::invalid_argument on violation.
  PLFunction(std::vector<Breakpoint> breakpoints, Rational final_slope);

  static PLFunction identity() { return PLFunction(); }
  static PLFunction linear(const Rational& slope);

  // Piece k covers [knots[k], knots[k+1]) with slope slopes[k]; knots[0] must
  // be 0 and slopes.size() == knots.size().
  static PLFunction from_slopes(const std::vector<Rational>& knots, const std::vector<Rational>& slopes);

  const std::vector<Breakpoint>& breakpoints() const { return points_; }
  const Rational& final_slope() const { return final_slope_; }

  // Slope of piece k; k == breakpoints().size() - 1 is the unbounded piece.
  const Rational& piece_slope(std::size_t k) const { return slopes_[k]; }
  std::size_t piece_count() const { return slopes_.size(); }

  Rational operator()(const Rational& x) const;

  // Unique t >= 0 with f(t) == y.
  Rational preimage(const Rational& y) const;

  Rational slope_left_of(const Rational& x) const;
  Rational slope_right_of(const Rational& x) const;

  friend bool operator==(const PLFunction& a, const PLFunction& b) {
    return a.final_slope_ == b.final_slope_ && a.points_ == b.points_;
  }

 private:
  std::size_t piece_index(const Rational& x) const;

  std::vector<Breakpoint> points_;
  Rational final_slope_;
  std::vector<Rational> slopes_;
};

// Rejects x < 0 with std::domain_error.
Rational eval(const PLFunction& f, const Rational& x);

PLFunction invert(const PLFunction& f);

// outer o inner.
PLFunction compose(const PLFunction& outer, const PLFunction& inner);

// x-coordinates where the derivative is discontinuous.
std::vector<Rational> jumps(const PLFunction& f);

// (right slope)/(left slope) at x; rejects x <= 0 with std::domain_error.
Rational jump_ratio(const PLFunction& f, const Rational& x);

}  // namespace herbrand
