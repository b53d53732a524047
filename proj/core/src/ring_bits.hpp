#pragma once

// Bit tricks on state codes of an n-site ring (site x in bit x).

#include <cstdint>

namespace parrondo::ring {

using Code = std::uint32_t;

constexpr Code mask(int n) { return n >= 32 ? ~Code{0} : (Code{1} << n) - 1; }

// Bit x of the result is site x-1.
constexpr Code left_neighbors(Code s, int n) { return ((s << 1) | (s >> (n - 1))) & mask(n); }
// Bit x of the result is site x+1.
constexpr Code right_neighbors(Code s, int n) { return ((s >> 1) | (s << (n - 1))) & mask(n); }

constexpr int bit(Code s, int x) { return static_cast<int>((s >> x) & 1u); }

// (eta(x-1), eta(x), eta(x+1)) packed as 4*left + 2*self + right.
constexpr int pattern(Code s, Code left, Code right, int x) {
  return (bit(left, x) << 2) | (bit(s, x) << 1) | bit(right, x);
}

constexpr int wrap(int x, int n) { return x == n ? 0 : x; }

// Sites (y, y+1) set to (a, b).
constexpr Code set_pair(Code s, int y, int n, int a, int b) {
  const int z = wrap(y + 1, n);
  s = (s & ~(Code{1} << y)) | (static_cast<Code>(a) << y);
  return (s & ~(Code{1} << z)) | (static_cast<Code>(b) << z);
}

}  // namespace parrondo::ring
