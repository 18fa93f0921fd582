#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

namespace srinterp {

/// 32-bit Mersenne Twister (MT19937) with the reference scalar seeding.
class Mt19937 {
 public:
  static constexpr std::size_t kStateSize = 624;
  static constexpr std::uint32_t kDefaultSeed = 5489u;

  explicit Mt19937(std::uint32_t seed = kDefaultSeed);

  std::uint32_t next_u32();

  std::uint32_t seed() const noexcept { return seed_; }
  std::size_t index() const noexcept { return index_; }

 private:
  void twist();

  std::array<std::uint32_t, kStateSize> state_{};
  std::size_t index_ = kStateSize;
  std::uint32_t seed_ = kDefaultSeed;
};

inline Mt19937 seed_mt(std::uint32_t seed) { return Mt19937(seed); }

/// A draw r in {0.0, 0.1, ..., 0.5}, stored as an integer count of tenths so
/// that comparisons against subscripts never see binary rounding noise.
class QuantizedDraw {
 public:
  constexpr QuantizedDraw() = default;
  explicit QuantizedDraw(int tenths);

  constexpr int tenths() const noexcept { return tenths_; }
  constexpr double value() const noexcept { return tenths_ / 10.0; }

  friend constexpr bool operator==(QuantizedDraw, QuantizedDraw) = default;

 private:
  int tenths_ = 0;
};

/// u / 2^32, the half-open [0,1) mapping of genrand_res32-style generators.
constexpr double unit_from_u32(std::uint32_t u) { return u * (1.0 / 4294967296.0); }

/// Scales a unit real to [0, 0.5] and rounds to one decimal, half up.
QuantizedDraw quantize_draw(double unit);

/// Same quantization as quantize_draw(unit_from_u32(u)) in exact integer math.
QuantizedDraw quantize_draw(std::uint32_t u);

/// Mixes a base seed with an index (frame number, cell id) into an
/// independent 32-bit seed.
std::uint32_t derive_seed(std::uint32_t seed, std::uint64_t index);

/// Source of random draws for the stochastic rounding strategies: either a
/// seeded MT19937 or an injected, replayable list of values.
class DrawStream {
 public:
  static DrawStream from_seed(std::uint32_t seed);
  static DrawStream from_values(std::vector<double> values);
  /// One value per line; blank lines and lines starting with '#' are skipped.
  static DrawStream parse(std::string_view text);
  static DrawStream from_file(const std::filesystem::path& path);

  /// Next r. In injected mode the value itself must already be one of the
  /// six quantized levels.
  QuantizedDraw next_r();

  /// Next uniform real in [0,1), used by the literature SR modes.
  double next_unit();

  std::uint64_t draws_emitted() const noexcept { return draws_emitted_; }
  bool injected() const noexcept { return std::holds_alternative<Injected>(source_); }
  std::optional<std::uint32_t> seed() const;
  std::size_t remaining() const;

 private:
  struct Injected {
    std::vector<double> values;
    std::size_t position = 0;
  };

  explicit DrawStream(std::variant<Mt19937, Injected> source) : source_(std::move(source)) {}

  double next_injected();

  std::variant<Mt19937, Injected> source_;
  std::uint64_t draws_emitted_ = 0;
};

}  // namespace srinterp
