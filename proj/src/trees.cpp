#include "tht/trees.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <tuple>

namespace tht {

std::vector<Bitile> Tree::j_part(int j, bool include_top) const {
  std::vector<Bitile> out;
  for (const auto& P : members) {
    if (P == top) {
      if (include_top) out.push_back(P);
      continue;
    }
    Tile tj = P.tile(j);
    if (box_leq(tj, top)) out.push_back(P);
  }
  return out;
}

std::vector<Tree> TreeSelection::tree_list() const {
  std::vector<Tree> out;
  out.reserve(trees.size());
  for (const auto& t : trees) out.push_back(t.tree);
  return out;
}

TreeAnalysis::TreeAnalysis(std::vector<Bitile> coll, int i, const GridFunction2D& F,
                           const ProjectionSystem& sys)
    : n_(F.n), items_(sorted_unique(std::move(coll))) {
  size_t m = items_.size();
  index_of_.reserve(2 * m);
  for (size_t t = 0; t < m; ++t) index_of_[items_[t].key()] = static_cast<int>(t);
  active_.assign(m, 1);
  tile_norm_lo_.resize(m);
  tile_norm_hi_.resize(m);
  norm_pt_.resize(m);
  sum_v_[0].assign(m, 0.0);
  sum_v_[1].assign(m, 0.0);
  for (size_t t = 0; t < m; ++t) {
    tile_norm_lo_[t] = tile_projection_norm_sq(i, items_[t].tile(+1), F, sys);
    tile_norm_hi_[t] = tile_projection_norm_sq(i, items_[t].tile(-1), F, sys);
    norm_pt_[t] = tile_norm_lo_[t] + tile_norm_hi_[t];
  }
  for (size_t t = 0; t < m; ++t) add_contributions(static_cast<int>(t), +1.0);
}

// For bitile Q at index idx, walk all ancestors P' >= Q inside the
// collection and add/remove Q's outer-half norms to their j-part sums.
void TreeAnalysis::add_contributions(int idx, double sign) {
  const Bitile& Q = items_[static_cast<size_t>(idx)];
  // Q counts into its own tree for both half choices.
  sum_v_[0][static_cast<size_t>(idx)] += sign * tile_norm_hi_[static_cast<size_t>(idx)];
  sum_v_[1][static_cast<size_t>(idx)] += sign * tile_norm_lo_[static_cast<size_t>(idx)];
  for (int k = Q.k + 1; k <= 0; ++k) {
    int d = k - Q.k;
    int64_t p0 = Q.pos0 >> d, p2 = Q.pos2 >> d;
    int64_t f_lo = Q.fpos << d;
    for (int64_t f = f_lo; f < f_lo + (int64_t{1} << d); ++f) {
      auto it = index_of_.find(Bitile{k, p0, p2, f}.key());
      if (it == index_of_.end()) continue;
      // omega of the ancestor sits in one half of omega_Q; relative position
      // below the top bit says which.
      bool left_half = ((f - f_lo) >> (d - 1)) == 0;
      int jslot = left_half ? 0 : 1;  // j = +1 when omega_P' is in the left half
      double outer = left_half ? tile_norm_hi_[static_cast<size_t>(idx)]
                               : tile_norm_lo_[static_cast<size_t>(idx)];
      sum_v_[jslot][static_cast<size_t>(it->second)] += sign * outer;
    }
  }
}

std::vector<Bitile> TreeAnalysis::active_items() const {
  std::vector<Bitile> out;
  for (size_t t = 0; t < items_.size(); ++t)
    if (active_[t]) out.push_back(items_[t]);
  return out;
}

double TreeAnalysis::size() const {
  double best = 0.0;
  for (size_t t = 0; t < items_.size(); ++t) {
    if (!active_[t]) continue;
    double norm_sq = sum_v_[0][t] + sum_v_[1][t];
    double val = std::sqrt(std::max(0.0, norm_sq)) * pow2d(-items_[t].k);
    best = std::max(best, val);
  }
  return best;
}

std::vector<int> TreeAnalysis::down_set_indices(int top_idx) const {
  const Bitile& top = items_[static_cast<size_t>(top_idx)];
  std::vector<int> out;
  for (int k = top.k; k >= -n_; --k) {
    int d = top.k - k;
    int64_t f = top.fpos >> d;
    for (int64_t p0 = top.pos0 << d; p0 < (top.pos0 + 1) << d; ++p0) {
      for (int64_t p2 = top.pos2 << d; p2 < (top.pos2 + 1) << d; ++p2) {
        auto it = index_of_.find(Bitile{k, p0, p2, f}.key());
        if (it != index_of_.end() && active_[static_cast<size_t>(it->second)])
          out.push_back(it->second);
      }
    }
  }
  return out;
}

Tree TreeAnalysis::extract_tree(int top_idx) const {
  Tree tree;
  tree.top = items_[static_cast<size_t>(top_idx)];
  for (int idx : down_set_indices(top_idx))
    tree.members.push_back(items_[static_cast<size_t>(idx)]);
  std::sort(tree.members.begin(), tree.members.end());
  return tree;
}

void TreeAnalysis::remove(int idx) {
  require(active(idx), "bitile already removed");
  active_[static_cast<size_t>(idx)] = 0;
  add_contributions(idx, -1.0);
}

double tree_size(int i, const std::vector<Bitile>& coll, const GridFunction2D& F,
                 const ProjectionSystem& sys, bool check_convex) {
  if (coll.empty()) return 0.0;
  if (check_convex) require(is_convex(coll), "size needs a convex collection");
  TreeAnalysis analysis(coll, i, F, sys);
  return analysis.size();
}

namespace {

// Removal order for heavy tops and the endpoint tie-break: smallest space
// box first, then lexicographic.
bool top_tie_less(const Bitile& a, const Bitile& b) {
  return std::tie(a.k, a.pos0, a.pos2, a.fpos) <
         std::tie(b.k, b.pos0, b.pos2, b.fpos);
}

}  // namespace

TreeSelection tree_select(const std::vector<Bitile>& coll, int i,
                          const GridFunction2D& F, int level,
                          const ProjectionSystem& sys, bool check_convex) {
  if (check_convex) require(is_convex(coll), "tree selection needs a convex collection");
  TreeSelection out;
  if (coll.empty()) return out;
  TreeAnalysis analysis(coll, i, F, sys);
  int m = analysis.count();
  // Thresholds compare 4^level ||.||^2 against |I_P| / 3, strictly; fp slack
  // keeps borderline-equal configurations unselected.
  double lev = pow2d(2 * level);
  auto heavy = [&](int t) {
    const Bitile& P = analysis.items()[static_cast<size_t>(t)];
    return lev * analysis.top_bitile_norm_sq(t) > P.box_measure() / 3.0 * (1 + 1e-12);
  };

  auto remove_tree = [&](int top_idx, TreePhase phase) {
    Tree tree = analysis.extract_tree(top_idx);
    for (int idx : analysis.down_set_indices(top_idx)) analysis.remove(idx);
    out.trees.push_back({std::move(tree), phase});
  };

  // Pass 1: down-sets of the maximal heavy bitiles. Heaviness is a static
  // property, so one sweep suffices; the maximal violators are pairwise
  // disjoint and their down-sets are removed in deterministic order.
  {
    std::vector<int> violators;
    for (int t = 0; t < m; ++t)
      if (heavy(t)) violators.push_back(t);
    std::vector<int> maximal;
    for (int t : violators) {
      bool dominated = false;
      for (int s : violators)
        if (s != t && bitile_leq(analysis.items()[static_cast<size_t>(t)],
                                 analysis.items()[static_cast<size_t>(s)]))
          dominated = true;
      if (!dominated) maximal.push_back(t);
    }
    std::sort(maximal.begin(), maximal.end(), [&](int a, int b) {
      return top_tie_less(analysis.items()[static_cast<size_t>(b)],
                          analysis.items()[static_cast<size_t>(a)]);
    });  // largest box first
    for (int t : maximal)
      if (analysis.active(t)) remove_tree(t, TreePhase::heavy);
  }

  // Passes 2 and 3: for each half choice, repeatedly remove the down-set of
  // a violating tree with extremal top frequency endpoint.
  for (int j : {+1, -1}) {
    for (;;) {
      int pick = -1;
      for (int t = 0; t < m; ++t) {
        if (!analysis.active(t)) continue;
        const Bitile& P = analysis.items()[static_cast<size_t>(t)];
        if (!(lev * analysis.part_sum_sq(j, t) > P.box_measure() / 3.0 * (1 + 1e-12)))
          continue;
        if (pick < 0) {
          pick = t;
          continue;
        }
        const Bitile& best = analysis.items()[static_cast<size_t>(pick)];
        // endpoints as integers at the finest frequency granularity 2^{1-k}
        auto lo = [&](const Bitile& b) { return b.fpos << (1 - b.k); };
        auto hi = [&](const Bitile& b) { return (b.fpos + 1) << (1 - b.k); };
        bool better;
        if (j == -1)
          better = lo(P) != lo(best) ? lo(P) < lo(best) : top_tie_less(P, best);
        else
          better = hi(P) != hi(best) ? hi(P) > hi(best) : top_tie_less(P, best);
        if (better) pick = t;
      }
      if (pick < 0) break;
      remove_tree(pick, j == 1 ? TreePhase::up : TreePhase::down);
    }
  }

  out.remainder = analysis.active_items();
  return out;
}

GridFunction2D counting_function(const std::vector<Tree>& trees, int i, int n) {
  GridFunction2D N = GridFunction2D::zeros(n);
  for (const auto& t : trees) {
    DyadicInterval rows = t.top.i((i + 1) % 3);
    DyadicInterval cols = t.top.i((i + 2) % 3);
    int64_t r0 = rows.first_cell(n), r1 = r0 + rows.cell_count(n);
    int64_t c0 = cols.first_cell(n), c1 = c0 + cols.cell_count(n);
    for (int64_t r = r0; r < r1; ++r)
      for (int64_t c = c0; c < c1; ++c) N.at(r, c) += 1.0;
  }
  return N;
}

double single_tree_ratio(const Tree& tree, const GridFunction2D& f0,
                         const GridFunction2D& f1, const GridFunction2D& f2,
                         const EpsilonAssignment& eps, const ProjectionSystem& sys,
                         bool check_convex) {
  double lambda = eval_form_over_collection(tree.members, f0, f1, f2, eps);
  const GridFunction2D* F[3] = {&f0, &f1, &f2};
  double denom = tree.box_measure();
  for (int i = 0; i < 3; ++i)
    denom *= tree_size(i, tree.members, *F[i], sys, check_convex);
  if (lambda == 0.0) return 0.0;
  if (denom == 0.0) return std::numeric_limits<double>::infinity();
  return std::abs(lambda) / denom;
}

double tree_form_abs_max(const Tree& tree, const GridFunction2D& f0,
                         const GridFunction2D& f1, const GridFunction2D& f2) {
  std::map<IntervalTriple, double> per_triple;
  for (const auto& P : tree.members)
    per_triple[P.triple()] += eval_lambda_bitile(P, f0, f1, f2);
  double total = 0.0;
  for (const auto& [t, v] : per_triple) total += std::abs(v);
  return total;
}

std::vector<IntervalTriple> tree_leaves(const Tree& tree) {
  std::set<IntervalTriple> boxes;
  for (const auto& P : tree.members) boxes.insert(P.triple());
  std::set<IntervalTriple> leaves;
  for (const auto& b : boxes) {
    for (int64_t a = 0; a <= 1; ++a)
      for (int64_t c = 0; c <= 1; ++c) {
        IntervalTriple child{b.k - 1, 2 * b.pos0 + a, 2 * b.pos2 + c};
        if (!boxes.count(child)) leaves.insert(child);
      }
  }
  return {leaves.begin(), leaves.end()};
}

}  // namespace tht
