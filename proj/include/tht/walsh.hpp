#pragma once

#include <cstdint>

#include "tht/dyadic.hpp"
#include "tht/util.hpp"

namespace tht {

// Element of the binary field on a finite bit window: bit e holds the
// coefficient of 2^e for e in [-frac_bits, int_bits). Addition is carry-less
// (xor), multiplication is carry-less convolution. Bits outside the window
// are zero by invariant; operations that would need them throw.
class WalshNumber {
 public:
  WalshNumber() = default;

  static WalshNumber zero(int frac_bits, int int_bits);
  static WalshNumber from_bits(uint64_t bits, int frac_bits, int int_bits);
  // Exact dyadic rational; throws if x does not fit the window.
  static WalshNumber from_dyadic(double x, int frac_bits, int int_bits = 32);
  static WalshNumber from_integer(uint64_t v, int int_bits = 32);

  uint64_t raw() const { return bits_; }
  int frac_bits() const { return frac_; }
  int int_bits() const { return ints_; }
  bool is_zero() const { return bits_ == 0; }
  bool bit(int e) const;
  // Largest set exponent; INT32_MIN for zero.
  int degree() const;
  double to_real() const;
  WalshNumber with_window(int frac_bits, int int_bits) const;

  friend bool operator==(const WalshNumber&, const WalshNumber&) = default;

 private:
  WalshNumber(uint64_t bits, int frac, int ints)
      : bits_(bits), frac_(frac), ints_(ints) {}
  uint64_t bits_ = 0;
  int frac_ = 0;
  int ints_ = 0;
};

// Carry-less sum; windows must match.
WalshNumber wadd(const WalshNumber& a, const WalshNumber& b);
// Carry-less product on the window (fa+fb, ia+ib); throws on overflow of the
// window or of the 63-bit backing store.
WalshNumber wmul(const WalshNumber& a, const WalshNumber& b);

// Periodization of the Haar function on [0,1): depends only on the 2^{-1}
// bit. Returns +1 or -1.
int character_e(const WalshNumber& x);
// Walsh character w_N(x) = e(N (*) x).
int walsh(const WalshNumber& N, const WalshNumber& x);
// Rademacher r_k = w_{2^{-k}}: sign of the 2^{k-1} bit of x.
int rademacher(int k, const WalshNumber& x);

// Pointwise Haar and wave packet evaluation (exact at dyadic points).
// haar: +1 on the left half of I, -1 on the right, 0 outside.
int haar(const DyadicInterval& I, const WalshNumber& x);
// w_{I x omega}(x) = |I|^{-1/2} 1_I(x) e(l(omega) (*) x); requires
// |I| * |omega| = 1 and integer frequency endpoints.
double wave_packet(const DyadicInterval& I, const DyadicInterval& omega,
                   const WalshNumber& x);

// Grid fast paths. Cells index [c*2^-n, (c+1)*2^-n).
uint64_t clmul(uint64_t a, uint64_t b);

// Sign of w_freq on a whole cell; requires freq < 2^n so the character is
// cell-constant.
inline int walsh_sign_on_cell(uint64_t freq, uint64_t cell, int n) {
  if (freq == 0) return 1;
  uint64_t prod = clmul(freq, cell);  // (freq (*) x) scaled by 2^n; bit n-1 decides
  return (prod >> (n - 1)) & 1u ? -1 : 1;
}

// Rademacher r_k on a cell (k in [-n+1, 0]): sign of bit k-1 of the point,
// i.e. bit n+k-1 of the cell index.
inline int rademacher_sign_on_cell(int k, uint64_t cell, int n) {
  return (cell >> (n + k - 1)) & 1u ? -1 : 1;
}

// Haar value of a time interval on a cell: requires |I| >= 2^{-n+1} so the
// halves are unions of cells.
inline int haar_sign_on_cell(const DyadicInterval& I, int64_t cell, int n) {
  if (!I.contains_cell(cell, n)) return 0;
  return rademacher_sign_on_cell(I.k, static_cast<uint64_t>(cell), n);
}

}  // namespace tht
