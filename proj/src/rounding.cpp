#include "srinterp/rounding.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "srinterp/error.hpp"

namespace srinterp {

namespace {

constexpr double kIntegerTolerance = 1e-9;

// ceil() that treats values within tolerance of an integer as that integer.
long snapped_ceil(double v) {
  const double nearest = std::round(v);
  if (std::abs(v - nearest) <= kIntegerTolerance * std::max(1.0, std::abs(v))) {
    return static_cast<long>(nearest);
  }
  return static_cast<long>(std::ceil(v));
}

long at_least_one(long v) { return std::max(v, 1L); }

DrawStream& require_stream(DrawStream* stream, RoundingStrategy strategy) {
  if (stream == nullptr) {
    throw Error(ErrorCode::InvalidArgument,
                std::string(to_string(strategy)) + " needs a draw stream");
  }
  return *stream;
}

}  // namespace

std::string_view to_string(RoundingStrategy strategy) {
  switch (strategy) {
    case RoundingStrategy::Ceil: return "ceil";
    case RoundingStrategy::Floor: return "floor";
    case RoundingStrategy::SrEq3: return "sr-eq3";
    case RoundingStrategy::SrMode1: return "sr-mode1";
    case RoundingStrategy::SrMode2: return "sr-mode2";
  }
  return "?";
}

RoundingStrategy parse_rounding_strategy(std::string_view name) {
  if (name == "ceil" || name == "dr") return RoundingStrategy::Ceil;
  if (name == "floor") return RoundingStrategy::Floor;
  if (name == "sr-eq3" || name == "sr") return RoundingStrategy::SrEq3;
  if (name == "sr-mode1") return RoundingStrategy::SrMode1;
  if (name == "sr-mode2") return RoundingStrategy::SrMode2;
  throw Error(ErrorCode::InvalidArgument, "unknown rounding strategy '" + std::string(name) + "'");
}

Subscript::Subscript(double value) : value_(value) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw Error(ErrorCode::InvalidArgument, "subscript must be a finite positive value, got " +
                                                std::to_string(value));
  }
}

bool Subscript::is_integer() const noexcept {
  return std::abs(value_ - std::round(value_)) <= kIntegerTolerance * std::max(1.0, value_);
}

double Subscript::fractional_part() const noexcept {
  return is_integer() ? 0.0 : value_ - std::floor(value_);
}

long Subscript::floor() const noexcept {
  return is_integer() ? static_cast<long>(std::round(value_)) : static_cast<long>(std::floor(value_));
}

long Subscript::ceil() const noexcept {
  return is_integer() ? static_cast<long>(std::round(value_)) : static_cast<long>(std::ceil(value_));
}

RoundingOutcome dr(Subscript x) { return {at_least_one(x.ceil()), RoundingStrategy::Ceil, {}, {}}; }

RoundingOutcome floor_round(Subscript x) {
  return {at_least_one(x.floor()), RoundingStrategy::Floor, {}, {}};
}

RoundingOutcome sr_eq3(Subscript x, QuantizedDraw r) {
  RoundingOutcome out{0, RoundingStrategy::SrEq3, r, {}};
  if (x.is_integer()) {
    out.index = x.floor();
  } else if (x.value() - r.value() > kIntegerTolerance) {
    out.index = snapped_ceil(x.value() - r.value());
  } else {
    // Fractional x not exceeding r: the floor branch would give 0, so round up.
    out.index = x.ceil();
  }
  return out;
}

RoundingOutcome sr_mode1(Subscript x, DrawStream& stream) {
  const double coin = stream.next_unit();
  RoundingOutcome out{0, RoundingStrategy::SrMode1, {}, {}};
  if (x.is_integer()) {
    out.index = x.floor();
  } else {
    out.index = at_least_one(coin < 0.5 ? x.ceil() : x.floor());
  }
  return out;
}

RoundingOutcome sr_mode2(Subscript x, DrawStream& stream) {
  const double unit = stream.next_unit();
  const double p = x.fractional_part();
  RoundingOutcome out{0, RoundingStrategy::SrMode2, {}, p};
  if (x.is_integer()) {
    out.index = x.floor();
  } else {
    out.index = at_least_one(unit < p ? x.ceil() : x.floor());
  }
  return out;
}

RoundingOutcome round_subscript(Subscript x, RoundingStrategy strategy, DrawStream* stream) {
  switch (strategy) {
    case RoundingStrategy::Ceil: return dr(x);
    case RoundingStrategy::Floor: return floor_round(x);
    case RoundingStrategy::SrEq3: return sr_eq3(x, require_stream(stream, strategy).next_r());
    case RoundingStrategy::SrMode1: return sr_mode1(x, require_stream(stream, strategy));
    case RoundingStrategy::SrMode2: return sr_mode2(x, require_stream(stream, strategy));
  }
  throw Error(ErrorCode::Internal, "unhandled rounding strategy");
}

std::vector<RoundingOutcome> round_subscript_vector(std::span<const Subscript> xs,
                                                    RoundingStrategy strategy, DrawStream* stream) {
  std::vector<RoundingOutcome> out;
  out.reserve(xs.size());
  for (const Subscript& x : xs) out.push_back(round_subscript(x, strategy, stream));
  return out;
}

}  // namespace srinterp
