#pragma once

// Test-only transcription of the Matsumoto-Nishimura reference generator
// (mt19937ar.c: init_genrand + genrand_int32), kept in its original C shape
// so it shares no code with the library implementation.

#include <cstdint>

namespace oracle {

class Mt19937ar {
 public:
  explicit Mt19937ar(std::uint32_t s) { init_genrand(s); }

  std::uint32_t genrand_int32() {
    std::uint32_t y;
    static const std::uint32_t mag01[2] = {0x0u, MATRIX_A};
    if (mti >= N) {
      int kk;
      for (kk = 0; kk < N - M; kk++) {
        y = (mt[kk] & UPPER_MASK) | (mt[kk + 1] & LOWER_MASK);
        mt[kk] = mt[kk + M] ^ (y >> 1) ^ mag01[y & 0x1u];
      }
      for (; kk < N - 1; kk++) {
        y = (mt[kk] & UPPER_MASK) | (mt[kk + 1] & LOWER_MASK);
        mt[kk] = mt[kk + (M - N)] ^ (y >> 1) ^ mag01[y & 0x1u];
      }
      y = (mt[N - 1] & UPPER_MASK) | (mt[0] & LOWER_MASK);
      mt[N - 1] = mt[M - 1] ^ (y >> 1) ^ mag01[y & 0x1u];
      mti = 0;
    }
    y = mt[mti++];
    y ^= (y >> 11);
    y ^= (y << 7) & 0x9d2c5680u;
    y ^= (y << 15) & 0xefc60000u;
    y ^= (y >> 18);
    return y;
  }

 private:
  static constexpr int N = 624;
  static constexpr int M = 397;
  static constexpr std::uint32_t MATRIX_A = 0x9908b0dfu;
  static constexpr std::uint32_t UPPER_MASK = 0x80000000u;
  static constexpr std::uint32_t LOWER_MASK = 0x7fffffffu;

  void init_genrand(std::uint32_t s) {
    mt[0] = s & 0xffffffffu;
    for (mti = 1; mti < N; mti++) {
      mt[mti] = (1812433253u * (mt[mti - 1] ^ (mt[mti - 1] >> 30)) + static_cast<std::uint32_t>(mti));
    }
  }

  std::uint32_t mt[N];
  int mti = N + 1;
};

}  // namespace oracle
