#pragma once

#include <vector>

#include "tht/trees.hpp"

namespace tht {

enum class MaximalKind {
  square,    // dyadic squares
  vary_row,  // fibers with fixed column, intervals over the row index
  vary_col,  // fibers with fixed row, intervals over the column index
};

// (average of |F|^p over dyadic intervals / squares containing the point)^{1/p},
// maximized. Scale-free: only densities enter.
GridFunction1D dyadic_maximal_1d(const GridFunction1D& f, double p);
GridFunction2D dyadic_maximal_2d(const GridFunction2D& f, double p, MaximalKind kind);

struct ExceptionalSets {
  Mask2D b0;  // on the (x1, x2) plane
  Mask2D b2;  // on the (x0, x1) plane
  Mask2D b1;  // shadow on the (x2, x0) plane
  double tau0 = 0;  // density thresholds implied by the 2^10 cutoff
  double tau2 = 0;
  double measure_e0_eff = 0;
  double measure_e2_eff = 0;
};

// Thresholded maximal-function sets for normalized indicator data. The grid
// square stands for a domain of side 2^domain_log2; effective measures pick
// up a factor 4^domain_log2, which is how the small-measure regime is
// realized at desk resolutions.
ExceptionalSets build_exceptional_sets(const Mask2D& e0, const Mask2D& e2,
                                       double p0, double p2, int domain_log2);

struct FiberInterval {
  int64_t fiber = 0;     // row index (vary_col: column index)
  DyadicInterval range;  // interval of the varying coordinate
};

// Maximal dyadic intervals inside each fiber of the mask; disjoint within a
// fiber and covering it.
std::vector<FiberInterval> maximal_intervals_in(const Mask2D& mask, MaximalKind kind);

struct GoodFunction {
  GridFunction2D g;
  std::vector<FiberInterval> cover;
  std::vector<std::vector<DyadicInterval>> omegas;  // per cover entry
};

// Frequency-localized replacement: on each cover interval J the fiber of F
// is projected onto the packets whose frequency interval (|omega| |J| = 1)
// contains a tree top frequency with box above J. slot = 2 replaces data on
// the (x0, x1) plane (fibers are rows), slot = 0 on the (x1, x2) plane
// (fibers are columns).
GoodFunction build_good_function(const GridFunction2D& f,
                                 const std::vector<Tree>& trees,
                                 const std::vector<FiberInterval>& cover,
                                 int slot);

// Max relative residual of Lambda_P(f0, f1, f2) = Lambda_P(f0, f1, g) over
// the collection; throws if a bitile's (x2, x0) shadow is inside b1 (those
// are excluded by the major-subset construction).
double verify_replacement(const std::vector<Bitile>& coll,
                          const GridFunction2D& f0, const GridFunction2D& f1,
                          const GridFunction2D& f2, const GoodFunction& good,
                          const Mask2D& b1);

// Diagonal-structure checks used on the f0 side.
bool mask_is_diagonal(const Mask2D& mask, const WalshNumber& a);

struct MfczConfig {
  int n = 5;
  double p0 = 4.0;
  double p1 = 2.0;
  double p2 = 4.0;
  // density cutoff realized for b2; zero picks -n/2, strictly between the
  // per-fiber density of the sparse slot-2 support (2^-n) and 1
  double target_tau2_log2 = 0.0;
  uint64_t seed = 1;
  bool diagonal = true;
  double a = 1.0;  // diagonal multiplier in [1, 2)
};

struct MfczPipeline {
  MfczConfig cfg;
  int domain_log2 = 0;
  Mask2D e0, e1, e2, e1_major;
  GridFunction2D f0t, f1t, f2t;
  ProjectionSystem sys;
  ExceptionalSets sets;
  std::vector<Bitile> filtered;  // bitiles whose shadow escapes b1
  int level = 0;                 // selection level of the verified slab
  std::vector<Tree> trees_k;
  std::vector<Bitile> pk;
  std::vector<FiberInterval> cover;
  GoodFunction good;
  double replacement_residual = 0;
  double measure_b1_eff = 0;
  double good_norm_ratio = 0;       // ||G||_2^2 / integral of N_k^{1-2/q'}
  double counting_norm_ratio = 0;   // ||N_k||_p vs 2^{2k} ||F0||-based bound
  int retries = 0;                  // deterministic reseeds before a
                                    // nonvacuous draw
};

// Full randomized pipeline for the replacement claim (the f2 side).
MfczPipeline run_mfcz_pipeline(const MfczConfig& cfg);

struct MfczF0Result {
  double projection_residual = 0;  // proj of f0t vs proj of its good function
  bool b0_diagonal = false;
  double directional_vs_full = 0;  // max abs difference on the grid
  bool nontrivial = false;         // some tree and a nonzero projection
  int retries = 0;
};

// The f0-side analogue under the diagonal case with multiplier in [1,2):
// projecting the good function reproduces the projection of f0t exactly.
MfczF0Result run_mfcz_f0_side(const MfczConfig& cfg);

}  // namespace tht
