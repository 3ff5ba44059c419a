#pragma once

#include <array>
#include <cstdint>

namespace qdec {

/// Philox4x32-10 counter-based generator. A stream is fully determined by
/// (seed, stream, substream), so per-shot streams keyed on (seed, shot_index,
/// sector) reproduce bit-identically under any parallel schedule.
class PhiloxRng {
 public:
  PhiloxRng(uint64_t seed, uint64_t stream, uint32_t substream = 0)
      : key_{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32)},
        base_{0, static_cast<uint32_t>(stream), static_cast<uint32_t>(stream >> 32), substream} {}

  uint32_t next_u32() {
    if (index_ == 4) refill();
    return out_[index_++];
  }

  /// Uniform in [0, 1) with 53 random bits.
  double next_double() {
    const uint64_t hi = next_u32();
    const uint64_t lo = next_u32();
    return static_cast<double>(((hi << 32) | lo) >> 11) * 0x1.0p-53;
  }

 private:
  static void mul_hi_lo(uint32_t a, uint32_t b, uint32_t& hi, uint32_t& lo) {
    const uint64_t p = static_cast<uint64_t>(a) * b;
    hi = static_cast<uint32_t>(p >> 32);
    lo = static_cast<uint32_t>(p);
  }

  void refill() {
    std::array<uint32_t, 4> ctr = base_;
    ctr[0] = static_cast<uint32_t>(block_);
    std::array<uint32_t, 2> key = key_;
    for (int round = 0; round < 10; ++round) {
      uint32_t hi0, lo0, hi1, lo1;
      mul_hi_lo(0xD2511F53u, ctr[0], hi0, lo0);
      mul_hi_lo(0xCD9E8D57u, ctr[2], hi1, lo1);
      ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
      key[0] += 0x9E3779B9u;
      key[1] += 0xBB67AE85u;
    }
    out_ = ctr;
    ++block_;
    index_ = 0;
  }

  std::array<uint32_t, 2> key_;
  std::array<uint32_t, 4> base_;
  std::array<uint32_t, 4> out_{};
  uint64_t block_ = 0;
  int index_ = 4;
};

}  // namespace qdec
