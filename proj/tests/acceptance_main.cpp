// Acceptance suite: one criterion per section, one pass/fail line each.
// Exact identities are held to a 1e-9 relative residual; empirical constants
// are asserted for stability, with their values printed.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "tht/harness.hpp"
#include "tht/mfcz.hpp"
#include "tht/reductions.hpp"
#include "tht/trees.hpp"

using namespace tht;
using Clock = std::chrono::steady_clock;

namespace {

constexpr double kTol = 1e-9;

int failures = 0;

void line(int id, bool pass, const std::string& name, const std::string& detail) {
  std::printf("[%s] criterion %2d: %s — %s\n", pass ? "PASS" : "FAIL", id,
              name.c_str(), detail.c_str());
  if (!pass) ++failures;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

GridFunction2D random_grid(int n, Rng& rng) {
  GridFunction2D g = GridFunction2D::zeros(n);
  for (auto& v : g.v) v = rng.uniform_pm1();
  return g;
}

void criterion_1_and_2() {
  auto t0 = Clock::now();
  double worst = 0;
  int count = 0;
  for (int n = 2; n <= 5; ++n) {
    for (int t = 0; t < 50; ++t) {
      InstanceSpec spec;
      spec.n = n;
      spec.fiberwise = t % 2 == 0;
      spec.a = t % 4 == 1 ? 1.5 : 1.0;
      Instance inst = gen_instance(spec, splitmix64(1000 * n + t));
      double v0 = eval_form_trace(inst.f0, inst.f1, inst.f2, inst.eps, 0);
      double v1 = eval_form_trace(inst.f0, inst.f1, inst.f2, inst.eps, 1);
      double v2 = eval_form_trace(inst.f0, inst.f1, inst.f2, inst.eps, 2);
      double vi = eval_form_integral(inst.f0, inst.f1, inst.f2, inst.eps);
      double vb = eval_form_bitile_sum(inst.f0, inst.f1, inst.f2, inst.eps);
      worst = std::max({worst, rel_residual(v0, v1), rel_residual(v0, v2),
                        rel_residual(v0, vi), rel_residual(v0, vb)});
      ++count;
    }
  }
  double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  line(1, worst <= kTol && secs < 120.0, "three-way form equality",
       std::to_string(count) + " instances, n=2..5, max residual " + fmt(worst) +
           ", " + fmt(secs) + " s");

  double worst_tel = 0;
  for (int n = 2; n <= 5; ++n) {
    for (int t = 0; t < 8; ++t) {
      InstanceSpec spec;
      spec.n = n;
      spec.fiberwise = t % 2 == 1;
      spec.eps_mode = InstanceSpec::Eps::one;
      Instance inst = gen_instance(spec, splitmix64(7000 + 100 * n + t));
      double lhs = eval_form_trace(inst.f0, inst.f1, inst.f2, inst.eps, 1);
      int64_t side = int64_t{1} << n;
      double near = 0, full = 0;
      for (int64_t x1 = 0; x1 < side; ++x1)
        for (int64_t x2 = 0; x2 < side; ++x2)
          for (int64_t x0 = 0; x0 < side; ++x0) {
            double prod =
                inst.f0.at(x1, x2) * inst.f1.at(x2, x0) * inst.f2.at(x0, x1);
            full += prod;
            if ((x0 ^ x1 ^ x2) == 0) near += prod;
          }
      near *= pow2d(-3 * n);
      full *= pow2d(-3 * n);
      worst_tel = std::max(worst_tel, rel_residual(lhs, pow2d(n) * near - full));
    }
  }
  line(2, worst_tel <= kTol, "constant coefficients telescope",
       "near-diagonal closed form, max residual " + fmt(worst_tel));
}

void criterion_3() {
  // exhaustive at n=3, sampled pairs at n=4 and 5
  double worst_orth = 0, worst_split = 0, worst_supp = 0;
  int64_t pairs = 0;
  for (int n : {3, 4, 5}) {
    Rng rng(splitmix64(31000 + n));
    for (int which = 0; which < 2; ++which) {
      ProjectionSystem sys =
          which == 0
              ? ProjectionSystem::diagonal(WalshNumber::from_dyadic(1.5, 4, 4))
              : ProjectionSystem::fiberwise(ChoiceFunction::random(n, rng.next_u64()));
      GridFunction2D F = random_grid(n, rng);
      std::vector<Tile> tiles;
      for (const auto& P : enum_bitiles(n)) {
        tiles.push_back(P.tile(+1));
        tiles.push_back(P.tile(-1));
      }
      std::sort(tiles.begin(), tiles.end());
      tiles.erase(std::unique(tiles.begin(), tiles.end()), tiles.end());
      for (int i = 0; i <= 2; ++i) {
        std::vector<GridFunction2D> proj;
        proj.reserve(tiles.size());
        for (const auto& p : tiles) proj.push_back(proj_tile(i, p, F, sys));
        // support exactness
        for (size_t s = 0; s < tiles.size(); ++s) {
          const Tile& p = tiles[s];
          DyadicInterval rows = i == 2 ? p.i0() : (i == 0 ? p.i1() : p.i2());
          DyadicInterval cols = i == 2 ? p.i1() : (i == 0 ? p.i2() : p.i0());
          for (int64_t r = 0; r < F.side(); ++r)
            for (int64_t c = 0; c < F.side(); ++c)
              if (!rows.contains_cell(r, n) || !cols.contains_cell(c, n))
                worst_supp = std::max(worst_supp, std::abs(proj[s].at(r, c)));
        }
        if (n == 3) {
          for (size_t s = 0; s < tiles.size(); ++s)
            for (size_t t = s + 1; t < tiles.size(); ++t)
              if (boxes_disjoint(tiles[s], tiles[t])) {
                ++pairs;
                worst_orth = std::max(worst_orth, std::abs(proj[s].inner(proj[t])));
              }
        } else {
          for (int draw = 0; draw < 5000; ++draw) {
            size_t s = static_cast<size_t>(rng.below(tiles.size()));
            size_t t = static_cast<size_t>(rng.below(tiles.size()));
            if (s == t || !boxes_disjoint(tiles[s], tiles[t])) continue;
            ++pairs;
            worst_orth = std::max(worst_orth, std::abs(proj[s].inner(proj[t])));
          }
        }
      }
      // scale compatibility: both splits of every bitile
      for (const auto& P : enum_bitiles(n)) {
        if (P.k - 1 < -n) continue;
        for (int i = 0; i <= 2; ++i) {
          GridFunction2D freq_split = proj_bitile(i, P, F, sys);
          GridFunction2D spatial = GridFunction2D::zeros(n);
          for (int64_t a = 0; a <= 1; ++a)
            for (int64_t b = 0; b <= 1; ++b)
              spatial = spatial + proj_tile(i, Tile{P.k - 1, 2 * P.pos0 + a,
                                                    2 * P.pos2 + b, P.fpos},
                                            F, sys);
          worst_split = std::max(worst_split, max_abs_diff(freq_split, spatial));
        }
      }
    }
  }
  bool pass = worst_orth <= kTol && worst_split <= kTol && worst_supp == 0.0;
  line(3, pass, "projection axioms",
       "orthogonality over " + std::to_string(pairs) + " disjoint pairs " +
           fmt(worst_orth) + ", splits " + fmt(worst_split) +
           ", support exact: " + (worst_supp == 0.0 ? "yes" : "no"));
}

void criterion_4() {
  int n = 4;
  auto universe = enum_bitiles(n);
  double worst = 0;
  int checks = 0;
  auto run_case = [&](bool fiberwise, double aval, uint64_t salt) {
    for (int t = 0; t < 100; ++t) {
      Rng rng(splitmix64(salt + 13 * t));
      InstanceSpec spec;
      spec.n = n;
      spec.fiberwise = fiberwise;
      spec.a = aval;
      Instance inst = gen_instance(spec, rng.next_u64());
      const Bitile& P = universe[rng.below(universe.size())];
      // random convex collection containing P: its own down-set plus others
      std::vector<Bitile> coll = down_set(universe, P);
      for (int extra = 0; extra < 2; ++extra) {
        auto ds = down_set(universe, universe[rng.below(universe.size())]);
        coll.insert(coll.end(), ds.begin(), ds.end());
      }
      coll = sorted_unique(coll);
      worst = std::max(worst, check_adapted(P, coll, inst.f0, inst.f1, inst.f2,
                                            inst.sys));
      ++checks;
    }
  };
  for (double aval : {1.0, 1.5, 2.0, 3.0}) run_case(false, aval, 41000 + aval * 64);
  run_case(true, 1.0, 45000);
  line(4, worst <= kTol, "adapted projections",
       std::to_string(checks) + " random (bitile, collection, data) checks, "
       "diagonal a in {1,1.5,2,3} and fiberwise, max residual " + fmt(worst));
}

void criterion_5() {
  int n = 4;
  auto universe = enum_bitiles(n);
  auto triples = enum_all_triples(n);
  double worst_size = 0, worst_count = 0;
  bool structure_ok = true;
  int ran = 0;
  for (int t = 0; t < 50; ++t) {
    Rng rng(splitmix64(51000 + 7 * t));
    int i = static_cast<int>(rng.below(3));
    InstanceSpec spec;
    spec.n = n;
    spec.fiberwise = t % 2 == 1;
    spec.a = t % 4 == 2 ? 1.5 : 1.0;
    Instance inst = gen_instance(spec, rng.next_u64());
    const GridFunction2D& F = i == 0 ? inst.f0 : (i == 1 ? inst.f1 : inst.f2);
    double s = tree_size(i, universe, F, inst.sys);
    if (s == 0) continue;
    ++ran;
    int level = static_cast<int>(std::floor(-std::log2(s))) + 1;
    TreeSelection sel = tree_select(universe, i, F, level, inst.sys);

    worst_size = std::max(
        worst_size, tree_size(i, sel.remainder, F, inst.sys) / pow2d(-level) - 1.0);

    structure_ok = structure_ok && is_convex(sel.remainder);
    std::vector<Bitile> removed;
    for (const auto& st : sel.trees) {
      structure_ok = structure_ok && is_convex(st.tree.members);
      bool has_top = false;
      for (const auto& P : st.tree.members) {
        structure_ok = structure_ok && bitile_leq(P, st.tree.top);
        has_top = has_top || P == st.tree.top;
        removed.push_back(P);
      }
      structure_ok = structure_ok && has_top;
    }
    size_t raw = removed.size() + sel.remainder.size();
    removed = sorted_unique(removed);
    structure_ok = structure_ok && removed.size() + sel.remainder.size() == raw;
    std::vector<Bitile> all = removed;
    all.insert(all.end(), sel.remainder.begin(), sel.remainder.end());
    structure_ok = structure_ok && sorted_unique(all).size() == universe.size();

    for (const auto& J : triples) {
      double lhs = 0;
      for (const auto& st : sel.trees)
        if (J.contains(st.tree.top.triple())) lhs += st.tree.top.box_measure();
      double rhs = 9.0 * pow2d(2 * level) *
                   F.norm2_sq_on(J.i((i + 1) % 3), J.i((i + 2) % 3));
      if (lhs > 0) worst_count = std::max(worst_count, lhs / rhs - 1.0);
    }
  }
  bool pass = worst_size <= kTol && worst_count <= kTol && structure_ok && ran >= 45;
  line(5, pass, "tree selection",
       std::to_string(ran) + " instances at n=4: size slack " + fmt(worst_size) +
           ", counting slack " + fmt(worst_count) +
           ", partition/convexity/disjointness: " + (structure_ok ? "ok" : "BROKEN"));
}

void criterion_6() {
  std::vector<double> constants;
  std::ostringstream detail;
  for (int n = 3; n <= 5; ++n) {
    for (uint64_t seed : {1ull, 2ull}) {
      auto universe = enum_bitiles(n);
      double best = single_tree_structured_candidate(n);
      for (int t = 0; t < 1000; ++t) {
        Rng rng(splitmix64(seed * 104729 + 7919 * t));
        InstanceSpec spec;
        spec.n = n;
        spec.fiberwise = t % 2 == 0;
        spec.dens0 = 0.25 + 0.75 * rng.uniform();
        spec.dens1 = 0.25 + 0.75 * rng.uniform();
        spec.dens2 = 0.25 + 0.75 * rng.uniform();
        Instance inst = gen_instance(spec, rng.next_u64());
        const Bitile& top = universe[rng.below(universe.size())];
        int depth = 1 + static_cast<int>(rng.below(static_cast<uint64_t>(n + 1)));
        Tree tree;
        tree.top = top;
        for (const auto& P : down_set(universe, top))
          if (P.k >= top.k - depth) tree.members.push_back(P);
        double num = tree_form_abs_max(tree, inst.f0, inst.f1, inst.f2);
        double denom = tree.box_measure();
        const GridFunction2D* F[3] = {&inst.f0, &inst.f1, &inst.f2};
        for (int i = 0; i < 3; ++i)
          denom *= tree_size(i, tree.members, *F[i], inst.sys, false);
        if (denom > 0) best = std::max(best, num / denom);
      }
      constants.push_back(best);
      detail << "n" << n << "/s" << seed << ":" << best << " ";
    }
  }
  double lo = *std::min_element(constants.begin(), constants.end());
  double hi = *std::max_element(constants.begin(), constants.end());
  line(6, hi <= 2.0 * lo, "single tree constant stability",
       "1000 trees + structured anchor per cell; spread " + fmt(hi / lo) +
           " over {" + detail.str() + "}");
}

void criterion_7() {
  // per sweep row a0/a1 = 4^m: the scale-consistent estimator across
  // n in {3..6} is asserted stable; the resolution-gated tower values and
  // the across-sweep spread are reported
  std::map<int, std::vector<double>> by_row;
  std::ostringstream table, towers;
  for (int n = 3; n <= 6; ++n) {
    std::vector<double> at_n;
    for (int m = 0; m <= 3; ++m) {
      double structured = restricted_structured_candidate(n, std::min(m, n));
      InstanceSpec base;
      base.n = n;
      base.exact_sizes = true;
      double r = std::pow(4.0, m);
      std::vector<std::array<double, 3>> sweep = {{1.0, 1.0 / r, 1.0 / r}};
      auto rows = estimate_restricted_constant(sweep, base, 24, 71000 + 10 * n + m);
      double c = std::max(structured, rows[0].best_ratio);
      by_row[m].push_back(c);
      at_n.push_back(c);
    }
    table << "n" << n << ":(";
    for (size_t j = 0; j < at_n.size(); ++j) table << (j ? "," : "") << at_n[j];
    table << ") ";
    towers << "n" << n << ":" << restricted_tower_candidate(n, std::min(3, n / 2))
           << " ";
  }
  double worst_spread = 0;
  for (const auto& [m, vals] : by_row) {
    double lo = *std::min_element(vals.begin(), vals.end());
    double hi = *std::max_element(vals.begin(), vals.end());
    worst_spread = std::max(worst_spread, hi / lo);
  }
  double sweep_lo = 1e300, sweep_hi = 0;
  for (const auto& [m, vals] : by_row)
    for (double v : vals) {
      sweep_lo = std::min(sweep_lo, v);
      sweep_hi = std::max(sweep_hi, v);
    }
  line(7, worst_spread <= 2.0, "restricted-type constant stability",
       "per-row spread across n <= " + fmt(worst_spread) + "; values " +
           table.str() + "| sweep spread " + fmt(sweep_hi / sweep_lo) +
           " (reported); tower candidates " + towers.str());
}

void criterion_8() {
  double worst = 0, worst_b1 = 0, worst_f0 = 0;
  bool ok = true;
  for (int t = 0; t < 50; ++t) {
    MfczConfig cfg;
    cfg.n = 5;
    cfg.p0 = 4.0;
    cfg.p1 = 2.0;
    cfg.p2 = 4.0;
    cfg.seed = splitmix64(81000 + t);
    cfg.diagonal = t % 2 == 0;
    cfg.a = t % 4 == 0 ? 1.5 : 1.0;
    MfczPipeline pipe = run_mfcz_pipeline(cfg);
    worst = std::max(worst, pipe.replacement_residual);
    worst_b1 = std::max(worst_b1, pipe.measure_b1_eff);
    ok = ok && pipe.e2.subset_of(pipe.sets.b2);
  }
  for (int t = 0; t < 25; ++t) {
    MfczConfig cfg;
    cfg.n = 5;
    cfg.seed = splitmix64(89000 + t);
    cfg.diagonal = true;
    cfg.a = t % 2 == 0 ? 1.0 : 1.5;
    MfczF0Result res = run_mfcz_f0_side(cfg);
    worst_f0 = std::max(worst_f0, res.projection_residual);
    ok = ok && res.b0_diagonal && res.directional_vs_full <= kTol && res.nontrivial;
  }
  bool pass = worst <= kTol && worst_f0 <= kTol && worst_b1 < 0.5 && ok;
  line(8, pass, "multi-frequency decomposition",
       "50 pipelines n=5 p2=4: replacement residual " + fmt(worst) +
           "; 25 slot-0 pipelines: projection residual " + fmt(worst_f0) +
           "; |B1| max " + fmt(worst_b1));
}

void criterion_9() {
  int n = 4;
  double worst = 0;
  for (int t = 0; t < 100; ++t) {
    Rng rng(splitmix64(91000 + t));
    GridFunction1D f = GridFunction1D::zeros(n), g = GridFunction1D::zeros(n);
    for (int64_t c = 0; c < f.cells(); ++c) {
      f.at(c) = rng.uniform_pm1();
      g.at(c) = rng.uniform_pm1();
    }
    ChoiceFunction N = t % 5 == 0 ? ChoiceFunction::constant(n, 0)
                                  : ChoiceFunction::random(n, rng.next_u64());
    IntervalCoefficients coef = IntervalCoefficients::random_uniform(rng.next_u64());
    TriangularTriple triple = build_carleson_triple(f, g, N);
    double lhs = eval_form_trace(triple.f0, triple.f1, triple.f2,
                                 EpsilonAssignment::per_i0(coef), 1);
    worst = std::max(worst, rel_residual(lhs, carleson_pairing(f, g, coef, N)));
  }
  double worst_sup = 0;
  for (int nn : {4, 5}) {
    Rng rng(splitmix64(95000 + nn));
    GridFunction1D f = GridFunction1D::zeros(nn);
    for (int64_t c = 0; c < f.cells(); ++c) f.at(c) = rng.uniform_pm1();
    IntervalCoefficients coef = IntervalCoefficients::random_uniform(rng.next_u64());
    MaxModSup sup = max_mod_haar_sup(f, coef);
    GridFunction1D lin = max_mod_haar(f, coef, sup.argmax);
    for (int64_t c = 0; c < f.cells(); ++c)
      worst_sup =
          std::max(worst_sup, rel_residual(std::abs(lin.at(c)), sup.sup.at(c)));
  }
  line(9, worst <= kTol && worst_sup <= kTol, "modulated multiplier reduction",
       "100 pairings at n=4, residual " + fmt(worst) +
           "; exhaustive sup vs argmax at n=4,5: " + fmt(worst_sup));
}

void criterion_10() {
  double worst = 0;
  for (int L : {1, 2, 3}) {
    int nin = 6 - L;
    for (uint64_t seed : {1ull, 2ull, 3ull}) {
      Rng rng(splitmix64(seed * 331 + L));
      GridFunction1D f = GridFunction1D::zeros(nin), g = GridFunction1D::zeros(nin),
                     h = GridFunction1D::zeros(nin);
      for (int64_t c = 0; c < f.cells(); ++c) {
        f.at(c) = rng.uniform_pm1();
        g.at(c) = rng.uniform_pm1();
        h.at(c) = rng.uniform_pm1();
      }
      IntervalCoefficients coef = IntervalCoefficients::random_uniform(rng.next_u64());
      TriangularTriple t = build_bht_triple(f, g, h, L);
      double v_form = eval_form_trace(t.f0, t.f1, t.f2,
                                      EpsilonAssignment::per_bht_interval(L, coef), 1);
      double v_exp = eval_bht_expanded(f, g, h, L, coef);
      double v_proj = eval_bht_projection_form(f, g, h, L, coef);
      worst = std::max(
          {worst, rel_residual(v_form, v_exp), rel_residual(v_form, v_proj)});
    }
  }
  line(10, worst <= kTol, "shifted-substitution three-route equality",
       "L in {1,2,3} at combined resolution 6, max residual " + fmt(worst));
}

void criterion_11() {
  EndpointReport rep = endpoint_demo(8, 111);
  std::ostringstream os;
  for (size_t i = 0; i < rep.kappa.size(); ++i) os << (i ? " " : "") << rep.kappa[i];
  bool pass = rep.max_identity_residual <= kTol && rep.strictly_increasing &&
              rep.fitted_slope > 0;
  line(11, pass, "endpoint blowup",
       "identity residual " + fmt(rep.max_identity_residual) +
           "; blowup values n=2..8: " + os.str() +
           "; fitted slope " + std::to_string(rep.fitted_slope));
}

void criterion_12() {
  auto t0 = Clock::now();
  HarnessConfig cfg;
  cfg.resolution = 3;
  cfg.seed = 7;
  SuiteReport a = run_suite("all", cfg);
  SuiteReport b = run_suite("all", cfg);
  double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  bool identical = a.to_json(true) == b.to_json(true);
  bool pass = identical && a.all_passed() && b.all_passed() && secs < 600.0;
  line(12, pass, "full-suite determinism",
       std::string("two runs byte-identical: ") + (identical ? "yes" : "NO") +
           ", all checks pass: " + (a.all_passed() ? "yes" : "NO") + ", " +
           fmt(secs) + " s");
}

}  // namespace

int main() {
  auto t0 = Clock::now();
  criterion_1_and_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  criterion_11();
  criterion_12();
  double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  std::printf("%s (%d failures, %.1f s total)\n",
              failures == 0 ? "ACCEPTANCE: ALL CRITERIA PASS"
                            : "ACCEPTANCE: FAILURES PRESENT",
              failures, secs);
  return failures == 0 ? 0 : 1;
}
