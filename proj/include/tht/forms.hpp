#pragma once

#include <functional>
#include <map>
#include <memory>

#include "tht/grid.hpp"
#include "tht/walsh.hpp"

namespace tht {

// Scalars in [-1,1] attached to dyadic intervals (Haar multiplier symbols and
// the structured coefficient modes below). Seeded modes hash the interval, so
// values are reproducible and order-independent.
class IntervalCoefficients {
 public:
  static IntervalCoefficients constant(double c);
  static IntervalCoefficients random_signs(uint64_t seed);
  static IntervalCoefficients random_uniform(uint64_t seed);
  static IntervalCoefficients from_map(std::map<DyadicInterval, double> values,
                                       double fallback = 0.0);
  double at(const DyadicInterval& I) const { return fn_(I); }

 private:
  std::function<double(const DyadicInterval&)> fn_;
};

// Coefficient assignment for interval triples, |value| <= 1. Triples with an
// interval outside the unit interval never arise here: enumeration already
// truncates to it.
class EpsilonAssignment {
 public:
  static EpsilonAssignment zero();
  static EpsilonAssignment constant(double c);
  static EpsilonAssignment random_signs(uint64_t seed);
  // depends on I0 only
  static EpsilonAssignment per_i0(IntervalCoefficients c);
  // depends on the interval I0 (+) 2^-L I2 only
  static EpsilonAssignment per_bht_interval(int L, IntervalCoefficients c);
  static EpsilonAssignment from_function(
      std::function<double(const IntervalTriple&)> fn);

  double at(const IntervalTriple& t) const { return fn_(t); }

 private:
  std::function<double(const IntervalTriple&)> fn_;
};

// The interval I0 (+) 2^-L I2 (carry-less sum of the two intervals), again a
// scale-k dyadic interval.
DyadicInterval bht_interval(const IntervalTriple& t, int L);

// Trilinear form evaluators. All functions must share one resolution; the
// triple sum runs over scales -n+1..0 (finer terms vanish identically on
// resolution-n data). Kernel compositions carry one 2^-n factor per
// contracted variable and the trace one more.
double eval_form_trace(const GridFunction2D& f0, const GridFunction2D& f1,
                       const GridFunction2D& f2, const EpsilonAssignment& eps,
                       int i);
// Independent implementation: triple grid sum against the explicit kernel.
double eval_form_integral(const GridFunction2D& f0, const GridFunction2D& f1,
                          const GridFunction2D& f2, const EpsilonAssignment& eps);

// Single-bitile form. `freq` overrides the frequency used for the rank-one
// character kernel (defaults to the left endpoint of omega1; any frequency
// in omega1 gives the same value).
double eval_lambda_bitile(const Bitile& P, const GridFunction2D& f0,
                          const GridFunction2D& f1, const GridFunction2D& f2);
double eval_lambda_bitile_at_freq(const Bitile& P, int64_t freq,
                                  const GridFunction2D& f0,
                                  const GridFunction2D& f1,
                                  const GridFunction2D& f2);

// Sum of eps * Lambda_P over all bitiles of the resolution universe.
double eval_form_bitile_sum(const GridFunction2D& f0, const GridFunction2D& f1,
                            const GridFunction2D& f2,
                            const EpsilonAssignment& eps);
// Same restricted to a collection.
double eval_form_over_collection(const std::vector<Bitile>& coll,
                                 const GridFunction2D& f0,
                                 const GridFunction2D& f1,
                                 const GridFunction2D& f2,
                                 const EpsilonAssignment& eps);

// Exact supremum of |form| over coefficient choices |eps| <= 1: the
// per-triple terms are summed in absolute value.
double eval_form_abs_max(const GridFunction2D& f0, const GridFunction2D& f1,
                         const GridFunction2D& f2);

// Scale-telescoped kernel at a grid cell: sum over k in [-n+1, 0] of
// 2^-k 1_{[0,2^k)} r_k, which collapses to 2^n on the first cell and -1
// elsewhere.
double kernel_sum(int n, int64_t cell);

}  // namespace tht
