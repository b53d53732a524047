#pragma once

// Counter-based random streams. Draw i of a stream is a pure function of
// (seed, stream id, i): it is the SplitMix64 output at Weyl position i, keyed
// by a hash of the seed and stream id. Any block of draws can therefore be
// produced in any order on any thread, and one root seed splits into as many
// independent named streams as needed.

#include <cstdint>
#include <limits>

namespace parrondo {

constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

__extension__ typedef unsigned __int128 uint128_t;

class CounterStream {
 public:
  using result_type = std::uint64_t;
  static constexpr std::uint64_t kWeyl = 0x9e3779b97f4a7c15ULL;

  constexpr CounterStream(std::uint64_t seed, std::uint64_t stream_id)
      : key_(mix64(seed ^ mix64(stream_id * kWeyl + 0x632be59bd9b4e019ULL))) {}

  constexpr std::uint64_t at(std::uint64_t counter) const {
    return mix64(key_ + (counter + 1) * kWeyl);
  }
  // Uniform on [0,1) with 53 random bits.
  constexpr double uniform_at(std::uint64_t counter) const {
    return static_cast<double>(at(counter) >> 11) * 0x1.0p-53;
  }
  // Uniform integer in [0, bound) by multiply-high; bias below bound/2^64.
  std::uint64_t below_at(std::uint64_t counter, std::uint64_t bound) const {
    return static_cast<std::uint64_t>((static_cast<uint128_t>(at(counter)) * bound) >> 64);
  }

  // Sequential cursor interface.
  std::uint64_t operator()() { return at(position_++); }
  double uniform() { return uniform_at(position_++); }
  std::uint64_t below(std::uint64_t bound) { return below_at(position_++, bound); }
  void seek(std::uint64_t position) { position_ = position; }
  std::uint64_t position() const { return position_; }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

 private:
  std::uint64_t key_;
  std::uint64_t position_ = 0;
};

// Derived seed for replica or block i of a run.
constexpr std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index) {
  return mix64(root + mix64(index ^ 0xd1b54a32d192ed03ULL));
}

}  // namespace parrondo
