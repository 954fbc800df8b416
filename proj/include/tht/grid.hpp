#pragma once

#include <cstdint>
#include <vector>

#include "tht/dyadic.hpp"
#include "tht/util.hpp"

namespace tht {

// Piecewise-constant function on [0, 2^width_log2) with cells of length
// 2^-n. width_log2 > 0 widens the domain (used by diagonal-structure data
// whose argument can exceed the unit interval).
struct GridFunction1D {
  int n = 0;
  int width_log2 = 0;
  std::vector<double> v;

  static GridFunction1D zeros(int n, int width_log2 = 0);
  static GridFunction1D constant(int n, double value, int width_log2 = 0);

  int64_t cells() const { return static_cast<int64_t>(v.size()); }
  double& at(int64_t cell) { return v[static_cast<size_t>(cell)]; }
  double at(int64_t cell) const { return v[static_cast<size_t>(cell)]; }

  double cell_measure() const { return pow2d(-n); }
  double integral() const;
  double norm2_sq() const;
  double norm_lp(double p) const;
  double norm_inf() const;
  double inner(const GridFunction1D& o) const;
};

// Piecewise-constant function on the unit square, 2^n x 2^n cells,
// row-major. Which variables the row/column indices carry is fixed by the
// trilinear form convention: the function in slot i takes (x_{i+1}, x_{i-1}).
struct GridFunction2D {
  int n = 0;
  std::vector<double> v;

  static GridFunction2D zeros(int n);
  static GridFunction2D constant(int n, double value);

  int64_t side() const { return int64_t{1} << n; }
  double& at(int64_t r, int64_t c) { return v[static_cast<size_t>((r << n) + c)]; }
  double at(int64_t r, int64_t c) const { return v[static_cast<size_t>((r << n) + c)]; }

  double cell_measure() const { return pow2d(-2 * n); }
  double integral() const;
  double norm2_sq() const;
  double norm_lp(double p) const;
  double norm_inf() const;
  double inner(const GridFunction2D& o) const;

  // L2 norm squared over a spatial box (rows in br, cols in bc).
  double norm2_sq_on(const DyadicInterval& br, const DyadicInterval& bc) const;
  GridFunction2D& scale(double s);
};

GridFunction2D operator-(const GridFunction2D& a, const GridFunction2D& b);
GridFunction2D operator+(const GridFunction2D& a, const GridFunction2D& b);
double max_abs_diff(const GridFunction2D& a, const GridFunction2D& b);

// Cell mask on the unit square (same indexing as GridFunction2D).
struct Mask2D {
  int n = 0;
  std::vector<uint8_t> m;

  static Mask2D empty(int n);
  static Mask2D full(int n);

  int64_t side() const { return int64_t{1} << n; }
  bool at(int64_t r, int64_t c) const { return m[static_cast<size_t>((r << n) + c)] != 0; }
  void set(int64_t r, int64_t c, bool val = true) {
    m[static_cast<size_t>((r << n) + c)] = val ? 1 : 0;
  }
  int64_t count() const;
  double measure() const { return static_cast<double>(count()) * pow2d(-2 * n); }
  bool subset_of(const Mask2D& o) const;
};

}  // namespace tht
