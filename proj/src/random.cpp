#include "rtsgs/random.hpp"

#include <boost/random/normal_distribution.hpp>

namespace rtsgs {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t product = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(product >> 32);
  lo = static_cast<std::uint32_t>(product);
}

inline std::uint32_t lo32(std::uint64_t v) { return static_cast<std::uint32_t>(v); }
inline std::uint32_t hi32(std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); }

inline Philox4x32::Block philox_rounds(Philox4x32::Block ctr, std::uint32_t k0, std::uint32_t k1) noexcept {
#pragma GCC unroll 10
  for (int round = 0; round < 10; ++round) {
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kMul0, ctr[0], hi0, lo0);
    mulhilo(kMul1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ k0, lo1, hi0 ^ ctr[3] ^ k1, lo0};
    k0 += kWeyl0;
    k1 += kWeyl1;
  }
  return ctr;
}

}  // namespace

Philox4x32::Block Philox4x32::encrypt(Block ctr, std::array<std::uint32_t, 2> key) noexcept {
  return philox_rounds(ctr, key[0], key[1]);
}

void Philox4x32::refill() noexcept {
  const std::uint32_t k0 = lo32(key_), k1 = hi32(key_);
  for (int b = 0; b < kBuffered / 2; ++b) {
    const std::uint64_t c = counter_ + static_cast<std::uint64_t>(b);
    const Block out = philox_rounds({lo32(c), hi32(c), lo32(stream_), hi32(stream_)}, k0, k1);
    buffer_[2 * b] = static_cast<std::uint64_t>(out[2]) | (static_cast<std::uint64_t>(out[3]) << 32);
    buffer_[2 * b + 1] = static_cast<std::uint64_t>(out[0]) | (static_cast<std::uint64_t>(out[1]) << 32);
  }
  counter_ += kBuffered / 2;
  next_ = 0;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag_a, std::uint64_t tag_b, std::uint64_t tag_c) {
  auto out = Philox4x32::encrypt({lo32(tag_a), hi32(tag_a), lo32(tag_b), hi32(tag_b)}, {lo32(seed), hi32(seed)});
  std::uint64_t derived = static_cast<std::uint64_t>(out[0]) | (static_cast<std::uint64_t>(out[1]) << 32);
  if (tag_c != 0) {
    out = Philox4x32::encrypt({lo32(tag_c), hi32(tag_c), out[2], out[3]}, {lo32(derived), hi32(derived)});
    derived = static_cast<std::uint64_t>(out[0]) | (static_cast<std::uint64_t>(out[1]) << 32);
  }
  return derived;
}

// boost's normal_distribution is the ziggurat method and keeps no state
// between draws, so every value depends only on the stream position.
double NormalStream::operator()() {
  boost::random::normal_distribution<double> dist;
  return dist(engine_);
}

void NormalStream::fill(std::span<double> out) {
  boost::random::normal_distribution<double> dist;
  for (double& v : out) v = dist(engine_);
}

}  // namespace rtsgs
