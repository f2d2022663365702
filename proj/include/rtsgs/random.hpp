#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <span>

namespace rtsgs {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
///
/// A stream is identified by a 64-bit key and a 64-bit stream index; the
/// remaining 64 counter bits enumerate blocks inside the stream.  Two
/// generators with the same (key, stream) produce identical sequences, and
/// distinct streams can be consumed in any order.
class Philox4x32 {
 public:
  using Block = std::array<std::uint32_t, 4>;
  using result_type = std::uint64_t;

  Philox4x32(std::uint64_t key, std::uint64_t stream) noexcept : key_(key), stream_(stream) {}

  /// Raw bijection: encrypt one counter block under a key.
  static Block encrypt(Block counter, std::array<std::uint32_t, 2> key) noexcept;

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept {
    if (next_ == kBuffered) refill();
    return buffer_[next_++];
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, bound) by multiply-shift.
  std::uint64_t below(std::uint64_t bound) noexcept {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>((*this)()) * bound) >> 64);
  }

  std::uint64_t key() const noexcept { return key_; }
  std::uint64_t stream() const noexcept { return stream_; }

 private:
  void refill() noexcept;

  std::uint64_t key_;
  std::uint64_t stream_;
  // four blocks per refill; within a block the high word pair is served first
  static constexpr int kBuffered = 8;
  std::uint64_t counter_ = 0;
  std::array<std::uint64_t, kBuffered> buffer_{};
  int next_ = kBuffered;
};

/// Derives an independent 64-bit seed from a parent seed and a tuple of tags.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag_a, std::uint64_t tag_b = 0,
                          std::uint64_t tag_c = 0);

/// Standard normal draws from one Philox stream.
class NormalStream {
 public:
  NormalStream(std::uint64_t key, std::uint64_t stream) : engine_(key, stream) {}
  double operator()();
  void fill(std::span<double> out);

 private:
  Philox4x32 engine_;
};

}  // namespace rtsgs
