#pragma once

#include "tht/forms.hpp"
#include "tht/projections.hpp"

namespace tht {

// Haar multiplier with per-interval coefficients: sum over dyadic
// subintervals of [0,1) of eps_I |I|^{-1} <f, h_I> h_I.
GridFunction1D haar_multiplier(const GridFunction1D& f,
                               const IntervalCoefficients& eps);

// Pointwise modulation by the Walsh character at an integer frequency.
GridFunction1D modulate(const GridFunction1D& f, int64_t freq);

// x -> (M_{N(x)} H^eps M_{N(x)} f)(x): the linearized maximally modulated
// multiplier.
GridFunction1D max_mod_haar(const GridFunction1D& f, const IntervalCoefficients& eps,
                            const ChoiceFunction& N);

// Pointwise sup over all grid frequencies of |H^eps M_N f| together with the
// smallest argmax frequency per point.
struct MaxModSup {
  GridFunction1D sup;
  ChoiceFunction argmax;
};
MaxModSup max_mod_haar_sup(const GridFunction1D& f, const IntervalCoefficients& eps);

struct TriangularTriple {
  GridFunction2D f0, f1, f2;
};

// Carleson substitution: with coefficients depending on I0 only, the
// triangular form of this triple equals the pairing of g with the
// maximally modulated multiplier of f.
TriangularTriple build_carleson_triple(const GridFunction1D& f,
                                       const GridFunction1D& g,
                                       const ChoiceFunction& N);
double carleson_pairing(const GridFunction1D& f, const GridFunction1D& g,
                        const IntervalCoefficients& eps, const ChoiceFunction& N);

// Bilinear-transform substitution with eccentricity 2^-L; output kernels live
// at resolution f.n + L so every carry-less shift stays exact.
TriangularTriple build_bht_triple(const GridFunction1D& f, const GridFunction1D& g,
                                  const GridFunction1D& h, int L);

// Expanded coefficient form of the same trilinear form (frequency pairs
// (m, n) with n < 2^L), and the one-dimensional projection form; all three
// routes agree exactly.
double eval_bht_expanded(const GridFunction1D& f, const GridFunction1D& g,
                         const GridFunction1D& h, int L,
                         const IntervalCoefficients& eps);
double eval_bht_projection_form(const GridFunction1D& f, const GridFunction1D& g,
                                const GridFunction1D& h, int L,
                                const IntervalCoefficients& eps);

// Degenerate substitution F0 = f(x1 (+) x2), F1 = h(x0), F2 = g(x0): the
// form collapses to <f, H^eps(g h)>.
double endpoint_identity_residual(int n, uint64_t seed);

// Exact sup over sign choices of the L1 norm of the multiplier applied to
// the normalized left-edge bump 2^n 1_{[0, 2^-n)}. Only the n coefficients
// on the ancestors of the bump matter, so the sup is an exhaustive 2^n scan.
double endpoint_kappa(int n);

struct EndpointReport {
  int n_min = 2;
  int n_max = 8;
  std::vector<double> kappa;
  bool strictly_increasing = false;
  double fitted_slope = 0;  // least-squares slope of kappa against n
  double max_identity_residual = 0;
};
EndpointReport endpoint_demo(int n_max, uint64_t seed);

}  // namespace tht
