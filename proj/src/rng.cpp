#include "srinterp/rng.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "srinterp/error.hpp"

namespace srinterp {

namespace {

constexpr std::size_t kShift = 397;
constexpr std::uint32_t kMatrixA = 0x9908b0dfu;
constexpr std::uint32_t kUpperMask = 0x80000000u;
constexpr std::uint32_t kLowerMask = 0x7fffffffu;

}  // namespace

Mt19937::Mt19937(std::uint32_t seed) : seed_(seed) {
  state_[0] = seed;
  for (std::size_t i = 1; i < kStateSize; ++i) {
    const std::uint32_t prev = state_[i - 1];
    state_[i] = 1812433253u * (prev ^ (prev >> 30)) + static_cast<std::uint32_t>(i);
  }
  index_ = kStateSize;
}

void Mt19937::twist() {
  for (std::size_t i = 0; i < kStateSize; ++i) {
    const std::uint32_t y = (state_[i] & kUpperMask) | (state_[(i + 1) % kStateSize] & kLowerMask);
    std::uint32_t next = state_[(i + kShift) % kStateSize] ^ (y >> 1);
    if (y & 1u) next ^= kMatrixA;
    state_[i] = next;
  }
  index_ = 0;
}

std::uint32_t Mt19937::next_u32() {
  if (index_ >= kStateSize) twist();
  std::uint32_t y = state_[index_++];
  y ^= (y >> 11);
  y ^= (y << 7) & 0x9d2c5680u;
  y ^= (y << 15) & 0xefc60000u;
  y ^= (y >> 18);
  return y;
}

QuantizedDraw::QuantizedDraw(int tenths) : tenths_(tenths) {
  if (tenths < 0 || tenths > 5) {
    throw Error(ErrorCode::InvalidDraw, "draw must lie in {0.0, ..., 0.5}, got " +
                                            std::to_string(tenths) + " tenths");
  }
}

QuantizedDraw quantize_draw(double unit) {
  if (!(unit >= 0.0 && unit <= 1.0)) {
    throw Error(ErrorCode::InvalidDraw, "unit draw outside [0,1]: " + std::to_string(unit));
  }
  // Half-up rounding of unit * 0.5 to one decimal.
  const int tenths = static_cast<int>(std::floor(unit * 5.0 + 0.5));
  return QuantizedDraw(std::min(tenths, 5));
}

QuantizedDraw quantize_draw(std::uint32_t u) {
  // floor(u * 5 / 2^32 + 1/2) without leaving integers.
  const std::uint64_t scaled = static_cast<std::uint64_t>(u) * 5u + (std::uint64_t{1} << 31);
  return QuantizedDraw(static_cast<int>(scaled >> 32));
}

std::uint32_t derive_seed(std::uint32_t seed, std::uint64_t index) {
  // splitmix64 finalizer over the packed pair.
  std::uint64_t z = (static_cast<std::uint64_t>(seed) << 32) ^ (index + 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  z ^= z >> 31;
  return static_cast<std::uint32_t>(z ^ (z >> 32));
}

DrawStream DrawStream::from_seed(std::uint32_t seed) { return DrawStream(Mt19937(seed)); }

DrawStream DrawStream::from_values(std::vector<double> values) {
  return DrawStream(Injected{std::move(values), 0});
}

DrawStream DrawStream::parse(std::string_view text) {
  std::vector<double> values;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    try {
      std::size_t used = 0;
      values.push_back(std::stod(line.substr(first), &used));
      if (line.find_first_not_of(" \t\r", first + used) != std::string::npos) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidDraw, "line " + std::to_string(line_no) + ": not a number: '" + line + "'");
    }
  }
  return from_values(std::move(values));
}

DrawStream DrawStream::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open draw file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse(text.str());
}

double DrawStream::next_injected() {
  auto& inj = std::get<Injected>(source_);
  if (inj.position >= inj.values.size()) {
    throw Error(ErrorCode::InjectedStreamExhausted,
                "requested draw " + std::to_string(inj.position + 1) + " but only " +
                    std::to_string(inj.values.size()) + " were supplied");
  }
  return inj.values[inj.position++];
}

QuantizedDraw DrawStream::next_r() {
  QuantizedDraw draw;
  if (auto* mt = std::get_if<Mt19937>(&source_)) {
    draw = quantize_draw(mt->next_u32());
  } else {
    const double v = next_injected();
    const double tenths = std::round(v * 10.0);
    if (!(v >= 0.0 && v <= 0.5) || std::abs(v * 10.0 - tenths) > 1e-9) {
      throw Error(ErrorCode::InvalidDraw, "injected r must be one of 0.0..0.5, got " + std::to_string(v));
    }
    draw = QuantizedDraw(static_cast<int>(tenths));
  }
  ++draws_emitted_;
  return draw;
}

double DrawStream::next_unit() {
  double unit;
  if (auto* mt = std::get_if<Mt19937>(&source_)) {
    unit = unit_from_u32(mt->next_u32());
  } else {
    unit = next_injected();
    if (!(unit >= 0.0 && unit < 1.0)) {
      throw Error(ErrorCode::InvalidDraw, "injected unit draw outside [0,1): " + std::to_string(unit));
    }
  }
  ++draws_emitted_;
  return unit;
}

std::optional<std::uint32_t> DrawStream::seed() const {
  if (const auto* mt = std::get_if<Mt19937>(&source_)) return mt->seed();
  return std::nullopt;
}

std::size_t DrawStream::remaining() const {
  if (const auto* inj = std::get_if<Injected>(&source_)) return inj->values.size() - inj->position;
  return static_cast<std::size_t>(-1);
}

}  // namespace srinterp
