#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "srinterp/rng.hpp"

namespace srinterp {

/// Subscript-rounding strategies. Ceil is the deterministic rule (DR);
/// SrEq3 is the quantized-r stochastic rule with the round-up exception;
/// SrMode1/SrMode2 are the classic equal-probability and
/// distance-proportional stochastic modes.
enum class RoundingStrategy { Ceil, Floor, SrEq3, SrMode1, SrMode2 };

std::string_view to_string(RoundingStrategy strategy);
RoundingStrategy parse_rounding_strategy(std::string_view name);

/// True for strategies that consume one draw per rounded subscript.
constexpr bool is_stochastic(RoundingStrategy s) {
  return s == RoundingStrategy::SrEq3 || s == RoundingStrategy::SrMode1 || s == RoundingStrategy::SrMode2;
}

/// A positive 1-based fractional source coordinate.
class Subscript {
 public:
  explicit Subscript(double value);

  double value() const noexcept { return value_; }
  /// Integral test with a small tolerance so i/ratio products land on integers.
  bool is_integer() const noexcept;
  double fractional_part() const noexcept;
  long floor() const noexcept;
  long ceil() const noexcept;

 private:
  double value_;
};

struct RoundingOutcome {
  long index = 1;
  RoundingStrategy strategy = RoundingStrategy::Ceil;
  std::optional<QuantizedDraw> r_used;  // SrEq3 only
  std::optional<double> p_used;         // SrMode2 only
};

RoundingOutcome dr(Subscript x);
RoundingOutcome floor_round(Subscript x);
RoundingOutcome sr_eq3(Subscript x, QuantizedDraw r);
RoundingOutcome sr_mode1(Subscript x, DrawStream& stream);
RoundingOutcome sr_mode2(Subscript x, DrawStream& stream);

/// Dispatches on strategy. Stochastic strategies draw exactly once per call,
/// including on integer subscripts, and require a non-null stream.
RoundingOutcome round_subscript(Subscript x, RoundingStrategy strategy, DrawStream* stream);

/// Element-wise rounding; draws are consumed in element order.
std::vector<RoundingOutcome> round_subscript_vector(std::span<const Subscript> xs,
                                                    RoundingStrategy strategy, DrawStream* stream);

}  // namespace srinterp
