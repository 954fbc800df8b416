#include "tht/walsh.hpp"

#include <cmath>
#include <cstdint>
#include <limits>

namespace tht {

namespace {
constexpr int kMaxWindow = 63;
}

WalshNumber WalshNumber::zero(int frac_bits, int int_bits) {
  require(frac_bits >= 0 && int_bits >= 0 && frac_bits + int_bits <= kMaxWindow,
          "walsh window out of range");
  return WalshNumber(0, frac_bits, int_bits);
}

WalshNumber WalshNumber::from_bits(uint64_t bits, int frac_bits, int int_bits) {
  WalshNumber w = zero(frac_bits, int_bits);
  require(frac_bits + int_bits >= 64 ||
              (bits >> (frac_bits + int_bits)) == 0,
          "bits exceed declared window");
  w.bits_ = bits;
  return w;
}

WalshNumber WalshNumber::from_dyadic(double x, int frac_bits, int int_bits) {
  require(x >= 0.0 && std::isfinite(x), "walsh numbers are nonnegative");
  double scaled = std::ldexp(x, frac_bits);
  double rounded = std::nearbyint(scaled);
  require(scaled == rounded, "value is not dyadic at this window depth");
  require(rounded < std::ldexp(1.0, frac_bits + int_bits),
          "value exceeds declared window");
  return from_bits(static_cast<uint64_t>(rounded), frac_bits, int_bits);
}

WalshNumber WalshNumber::from_integer(uint64_t v, int int_bits) {
  return from_bits(v, 0, int_bits);
}

bool WalshNumber::bit(int e) const {
  if (e < -frac_ || e >= ints_) return false;
  return (bits_ >> (e + frac_)) & 1u;
}

int WalshNumber::degree() const {
  if (bits_ == 0) return std::numeric_limits<int32_t>::min();
  return 63 - __builtin_clzll(bits_) - frac_;
}

double WalshNumber::to_real() const { return std::ldexp(static_cast<double>(bits_), -frac_); }

WalshNumber WalshNumber::with_window(int frac_bits, int int_bits) const {
  require(frac_bits >= 0 && int_bits >= 0 && frac_bits + int_bits <= kMaxWindow,
          "walsh window out of range");
  if (frac_bits < frac_) {
    uint64_t dropped = bits_ & ((uint64_t{1} << (frac_ - frac_bits)) - 1);
    require(dropped == 0, "window change drops fractional bits");
  }
  uint64_t shifted = frac_bits >= frac_ ? bits_ << (frac_bits - frac_)
                                        : bits_ >> (frac_ - frac_bits);
  require(frac_bits + int_bits >= 64 || (shifted >> (frac_bits + int_bits)) == 0,
          "window change drops integer bits");
  return from_bits(shifted, frac_bits, int_bits);
}

WalshNumber wadd(const WalshNumber& a, const WalshNumber& b) {
  require(a.frac_bits() == b.frac_bits() && a.int_bits() == b.int_bits(),
          "wadd window mismatch");
  return WalshNumber::from_bits(a.raw() ^ b.raw(), a.frac_bits(), a.int_bits());
}

uint64_t clmul(uint64_t a, uint64_t b) {
  unsigned __int128 acc = 0;
  unsigned __int128 wide = a;
  while (b) {
    if (b & 1u) acc ^= wide;
    wide <<= 1;
    b >>= 1;
  }
  require((acc >> 64) == 0, "carry-less product exceeds 64 bits");
  return static_cast<uint64_t>(acc);
}

WalshNumber wmul(const WalshNumber& a, const WalshNumber& b) {
  int frac = a.frac_bits() + b.frac_bits();
  int ints = a.int_bits() + b.int_bits();
  require(frac + ints <= kMaxWindow, "wmul window overflow");
  uint64_t prod = clmul(a.raw(), b.raw());
  require(frac + ints >= 64 || (prod >> (frac + ints)) == 0,
          "wmul result exceeds declared window");
  return WalshNumber::from_bits(prod, frac, ints);
}

int character_e(const WalshNumber& x) { return x.bit(-1) ? -1 : 1; }

int walsh(const WalshNumber& N, const WalshNumber& x) {
  return character_e(wmul(N, x));
}

int rademacher(int k, const WalshNumber& x) { return x.bit(k - 1) ? -1 : 1; }

int haar(const DyadicInterval& I, const WalshNumber& x) {
  double v = x.to_real();
  if (v < I.left() || v >= I.right()) return 0;
  return rademacher(I.k, x);
}

double wave_packet(const DyadicInterval& I, const DyadicInterval& omega,
                   const WalshNumber& x) {
  require(I.k + omega.k == 0 && omega.k >= 0, "wave packet needs |I||omega| = 1");
  double v = x.to_real();
  if (v < I.left() || v >= I.right()) return 0.0;
  // l(omega) = fpos * 2^{omega.k}
  WalshNumber l = WalshNumber::from_integer(
      static_cast<uint64_t>(omega.pos) << omega.k, 32);
  return std::sqrt(pow2d(-I.k)) * character_e(wmul(l, x));
}

}  // namespace tht
