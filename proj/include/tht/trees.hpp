#pragma once

#include <unordered_map>
#include <vector>

#include "tht/projections.hpp"

namespace tht {

// Convex bitile set with a maximal element. members include the top.
struct Tree {
  Bitile top;
  std::vector<Bitile> members;

  double box_measure() const { return top.box_measure(); }  // |I_T|
  // j-part: members whose tile(j) still sits below the top. The top itself
  // belongs to both parts; the orthogonal decomposition of the tree
  // projection uses the parts without it.
  std::vector<Bitile> j_part(int j, bool include_top) const;
};

enum class TreePhase { heavy, up, down };

struct SelectedTree {
  Tree tree;
  TreePhase phase = TreePhase::heavy;
};

struct TreeSelection {
  std::vector<Bitile> remainder;
  std::vector<SelectedTree> trees;

  std::vector<Tree> tree_list() const;
};

// Shared machinery: per-tile projection norms over a collection, maximal
// tree norms, and the selection loop. Tree norms are assembled through the
// orthogonal decomposition of a tree into its top bitile and the outer
// half-tiles of the lower members, so they stay exact under removals.
class TreeAnalysis {
 public:
  TreeAnalysis(std::vector<Bitile> coll, int i, const GridFunction2D& F,
               const ProjectionSystem& sys);

  int count() const { return static_cast<int>(items_.size()); }
  const std::vector<Bitile>& items() const { return items_; }
  bool active(int idx) const { return active_[static_cast<size_t>(idx)] != 0; }
  std::vector<Bitile> active_items() const;

  double top_bitile_norm_sq(int idx) const { return norm_pt_[static_cast<size_t>(idx)]; }
  // ||Pi_T F||^2 for the maximal tree under this top within the active set.
  double tree_norm_sq(int idx) const {
    return sum_v_[0][static_cast<size_t>(idx)] + sum_v_[1][static_cast<size_t>(idx)];
  }
  double part_sum_sq(int j, int idx) const {
    return sum_v_[j == 1 ? 0 : 1][static_cast<size_t>(idx)];
  }
  // sup over active tops of |I_T|^{-1/2} ||Pi_T F||_2.
  double size() const;

  std::vector<int> down_set_indices(int top_idx) const;  // active only, sorted
  Tree extract_tree(int top_idx) const;
  void remove(int idx);

 private:
  void add_contributions(int idx, double sign);

  int n_ = 0;
  std::vector<Bitile> items_;
  std::unordered_map<uint64_t, int> index_of_;
  std::vector<char> active_;
  std::vector<double> tile_norm_lo_;  // ||Pi_{P.tile(+1)} F||^2
  std::vector<double> tile_norm_hi_;  // ||Pi_{P.tile(-1)} F||^2
  std::vector<double> norm_pt_;
  std::vector<double> sum_v_[2];  // [0] for j=+1, [1] for j=-1
};

// sup over trees inside the convex collection of the normalized projection
// norm, brute force over candidate tops.
double tree_size(int i, const std::vector<Bitile>& coll, const GridFunction2D& F,
                 const ProjectionSystem& sys, bool check_convex = true);

// Greedy selection: removes heavy bitile down-sets, then for j = +1, -1
// trees with an oversized outer-half sum, choosing the extremal top
// frequency endpoint each time. Afterwards the remainder has size <= 2^-level
// and the removed trees satisfy the counting bound with constant 9*4^level.
TreeSelection tree_select(const std::vector<Bitile>& coll, int i,
                          const GridFunction2D& F, int level,
                          const ProjectionSystem& sys, bool check_convex = true);

// Counting function sum of top-box indicators on the (x_{i+1}, x_{i-1})
// plane.
GridFunction2D counting_function(const std::vector<Tree>& trees, int i, int n);

// |Lambda_T| / (|I_T| * prod of per-slot sizes); 0/0 reported as 0.
double single_tree_ratio(const Tree& tree, const GridFunction2D& f0,
                         const GridFunction2D& f1, const GridFunction2D& f2,
                         const EpsilonAssignment& eps, const ProjectionSystem& sys,
                         bool check_convex = true);

// Exact sup over coefficient choices of |Lambda^eps_T|: per-triple terms in
// absolute value.
double tree_form_abs_max(const Tree& tree, const GridFunction2D& f0,
                         const GridFunction2D& f1, const GridFunction2D& f2);

// Maximal triples strictly below a member box that are not member boxes.
std::vector<IntervalTriple> tree_leaves(const Tree& tree);

}  // namespace tht
