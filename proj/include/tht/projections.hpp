#pragma once

#include <vector>

#include "tht/forms.hpp"
#include "tht/grid.hpp"
#include "tht/walsh.hpp"

namespace tht {

// Measurable integer-frequency choice function, constant on grid cells.
struct ChoiceFunction {
  int n = 0;
  std::vector<int64_t> value;

  static ChoiceFunction constant(int n, int64_t v);
  static ChoiceFunction random(int n, uint64_t seed);  // values in [0, 2^n)
  int64_t at(int64_t cell) const { return value[static_cast<size_t>(cell)]; }
};

// The two structured cases the adapted projections exist for. The diagonal
// case carries a multiplier a outside the unit interval (degree >= 0); the
// fiberwise case carries a per-cell frequency choice.
struct ProjectionSystem {
  enum class Case { diagonal, fiberwise };
  Case kind = Case::diagonal;
  WalshNumber a;
  ChoiceFunction N;

  static ProjectionSystem diagonal(const WalshNumber& a);
  static ProjectionSystem fiberwise(ChoiceFunction N);
  bool is_diagonal() const { return kind == Case::diagonal; }
};

// Image of a frequency interval under carry-less multiplication by a: the
// dyadic interval of length |a| * |omega| containing a (*) l(omega).
DyadicInterval freq_image(const WalshNumber& a, const DyadicInterval& omega);

// One-dimensional multi-packet projection onto span{ w_{I x w'} : w' inside
// omega_range, |w'| |I| = 1 }, acting on a strided fiber of 2^n cells.
// Packets with frequency >= 2^n annihilate resolution-n data and are
// skipped. Output is accumulated.
void add_fiber_projection(const double* in, int64_t in_stride, double* out,
                          int64_t out_stride, int n, const DyadicInterval& I,
                          const DyadicInterval& omega_range);

GridFunction1D one_dim_projection(const GridFunction1D& f, const DyadicInterval& I,
                                  const DyadicInterval& omega_range);

// Tile / bitile / collection projections for slot i in {0,1,2}; F is the
// slot-i function with arguments (x_{i+1}, x_{i-1}).
GridFunction2D proj_tile(int i, const Tile& p, const GridFunction2D& F,
                         const ProjectionSystem& sys);
// Sum of the two frequency-half tile projections; with check_splits the
// spatial quadrant cover is evaluated too and a disagreement throws.
GridFunction2D proj_bitile(int i, const Bitile& P, const GridFunction2D& F,
                           const ProjectionSystem& sys, bool check_splits = false);
GridFunction2D proj_collection(int i, const std::vector<Bitile>& coll,
                               const GridFunction2D& F, const ProjectionSystem& sys,
                               bool alt_decomposition = false);

double tile_projection_norm_sq(int i, const Tile& p, const GridFunction2D& F,
                               const ProjectionSystem& sys);

// Structured data for the diagonal case: F0(x1, x2) = f(x2 (+) a (*) x1).
// The argument lives on [0, 2^{deg a + 1}) in cells of length
// 2^{deg a - n}; diagonal_key indexes those cells.
int64_t diagonal_key(const WalshNumber& a, int64_t ix1, int64_t ix2);
GridFunction2D diagonal_f0(const GridFunction1D& f, const WalshNumber& a, int n);
GridFunction1D extract_diagonal_f(const GridFunction2D& f0, const WalshNumber& a);
void require_diagonal_structure(const GridFunction2D& f0, const WalshNumber& a);

// Fiberwise case: F0(x1, x2) = f(x2) e(N_{x2} (*) x1).
GridFunction2D fiberwise_f0(const GridFunction1D& f, const ChoiceFunction& N);
void require_fiberwise_structure(const GridFunction2D& f0, const ChoiceFunction& N);
void require_structure(const GridFunction2D& f0, const ProjectionSystem& sys);

// Relative residual of the invariance of the single-bitile form under
// projecting all three inputs onto a convex collection containing P; the
// projections must be adapted to the structure of f0 for this to vanish.
double check_adapted(const Bitile& P, const std::vector<Bitile>& coll,
                     const GridFunction2D& f0, const GridFunction2D& f1,
                     const GridFunction2D& f2, const ProjectionSystem& sys);

}  // namespace tht
