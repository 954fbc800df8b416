#include <cmath>

#include "doctest.h"
#include "tht/mfcz.hpp"

using namespace tht;

namespace {

// Exhaustive oracle: max over all dyadic intervals containing the cell.
double maximal_1d_oracle(const GridFunction1D& f, double p, int64_t cell) {
  int n = f.n;
  double best = 0;
  for (int k = 0; k >= -n; --k) {
    DyadicInterval I{k, cell >> (n + k)};
    double avg = 0;
    for (int64_t c = I.first_cell(n); c < I.first_cell(n) + I.cell_count(n); ++c)
      avg += std::pow(std::abs(f.at(c)), p);
    avg /= static_cast<double>(I.cell_count(n));
    best = std::max(best, std::pow(avg, 1.0 / p));
  }
  return best;
}

}  // namespace

TEST_SUITE_BEGIN("mfcz");

TEST_CASE("maximal function of constants and indicators") {
  int n = 4;
  GridFunction1D c = GridFunction1D::constant(n, -2.5);
  GridFunction1D m = dyadic_maximal_1d(c, 1.5);
  for (int64_t i = 0; i < m.cells(); ++i) CHECK(m.at(i) == doctest::Approx(2.5));

  GridFunction1D half = GridFunction1D::zeros(n);
  for (int64_t i = 0; i < half.cells() / 2; ++i) half.at(i) = 1.0;
  GridFunction1D mh = dyadic_maximal_1d(half, 1.0);
  for (int64_t i = 0; i < mh.cells(); ++i) {
    CHECK(mh.at(i) == doctest::Approx(i < mh.cells() / 2 ? 1.0 : 0.5));
    CHECK(mh.at(i) == doctest::Approx(maximal_1d_oracle(half, 1.0, i)));
  }

  // randomized agreement with the oracle, both exponents
  Rng rng(3);
  GridFunction1D f = GridFunction1D::zeros(n);
  for (auto& v : f.v) v = rng.uniform_pm1();
  for (double p : {1.0, 2.0}) {
    GridFunction1D mf = dyadic_maximal_1d(f, p);
    for (int64_t i = 0; i < f.cells(); ++i)
      CHECK(mf.at(i) == doctest::Approx(maximal_1d_oracle(f, p, i)).epsilon(1e-12));
  }
}

TEST_CASE("directional maximal of a product set sees only the fiber") {
  int n = 3;
  GridFunction2D F = GridFunction2D::zeros(n);
  // 1_{A x B} with A rows, B columns
  for (int64_t r = 2; r < 4; ++r)
    for (int64_t c = 4; c < 8; ++c) F.at(r, c) = 1.0;
  GridFunction2D m = dyadic_maximal_2d(F, 1.0, MaximalKind::vary_col);
  for (int64_t r = 0; r < F.side(); ++r) {
    GridFunction1D fiber = GridFunction1D::zeros(n);
    for (int64_t c = 0; c < F.side(); ++c) fiber.at(c) = F.at(r, c);
    for (int64_t c = 0; c < F.side(); ++c)
      CHECK(m.at(r, c) == doctest::Approx(maximal_1d_oracle(fiber, 1.0, c)));
  }
}

TEST_CASE("square maximal function on a corner block") {
  int n = 3;
  GridFunction2D F = GridFunction2D::zeros(n);
  for (int64_t r = 0; r < 2; ++r)
    for (int64_t c = 0; c < 2; ++c) F.at(r, c) = 1.0;  // one scale -2 square
  GridFunction2D m = dyadic_maximal_2d(F, 1.0, MaximalKind::square);
  CHECK(m.at(0, 0) == doctest::Approx(1.0));
  CHECK(m.at(3, 3) == doctest::Approx(0.25));   // scale -1 square density
  CHECK(m.at(7, 7) == doctest::Approx(1.0 / 16));  // whole square density
  CHECK(m.at(0, 7) == doctest::Approx(1.0 / 16));
}

TEST_CASE("exceptional sets: self-membership and trivial cases") {
  int n = 4;
  Mask2D e0 = Mask2D::empty(n), e2 = Mask2D::empty(n);
  e0.set(3, 5);
  e0.set(9, 1);
  e2.set(2, 7);
  // strongly negative domain exponent puts every support cell inside
  ExceptionalSets sets = build_exceptional_sets(e0, e2, 4.0, 4.0, -17);
  CHECK(sets.tau0 < 1.0);
  CHECK(sets.tau2 < 1.0);
  CHECK(e0.subset_of(sets.b0));
  CHECK(e2.subset_of(sets.b2));
  // b1 is the exact diagonal shadow
  for (int64_t x2 = 0; x2 < e0.side(); ++x2)
    for (int64_t x0 = 0; x0 < e0.side(); ++x0) {
      bool expect = sets.b0.at(x0 ^ x2, x2) || sets.b2.at(x0, x0 ^ x2);
      CHECK(sets.b1.at(x2, x0) == expect);
    }

  // full square with unit domain: density 1 never exceeds the cutoff
  Mask2D full = Mask2D::full(n);
  ExceptionalSets trivial = build_exceptional_sets(full, e2, 1.0, 4.0, 0);
  CHECK(trivial.b0.count() == 0);
  CHECK_THROWS_AS(build_exceptional_sets(Mask2D::empty(n), e2, 2, 2, 0), error);
}

TEST_CASE("shadow set stays small for random sparse data at n=6") {
  int n = 6;
  Rng rng(17);
  Mask2D e0 = Mask2D::empty(n), e2 = Mask2D::empty(n);
  for (int64_t r = 0; r < e0.side(); ++r) {
    if (rng.below(8) == 0)
      e0.set(r, static_cast<int64_t>(rng.below(static_cast<uint64_t>(e0.side()))));
    if (rng.below(2) == 0)
      e2.set(r, static_cast<int64_t>(rng.below(static_cast<uint64_t>(e0.side()))));
  }
  if (!e0.count()) e0.set(0, 0);
  if (!e2.count()) e2.set(1, 1);
  int d = static_cast<int>(
      std::floor((-3.0 - 10.0 * 4.0 - std::log2(e2.measure())) / 2.0));
  ExceptionalSets sets = build_exceptional_sets(e0, e2, 4.0, 4.0, d);
  CHECK(e2.subset_of(sets.b2));
  CHECK(sets.b1.measure() * std::pow(4.0, d) < 0.5);
}

TEST_CASE("maximal fiber intervals") {
  int n = 3;
  Mask2D mask = Mask2D::empty(n);
  for (int64_t c = 0; c < 8; ++c) mask.set(0, c);       // full fiber
  for (int64_t c = 0; c < 2; ++c) mask.set(2, c);       // [0, 1/4)
  for (int64_t c = 4; c < 8; ++c) mask.set(2, c);       // [1/2, 1)
  auto cover = maximal_intervals_in(mask, MaximalKind::vary_col);
  REQUIRE(cover.size() == 3);
  CHECK(cover[0].fiber == 0);
  CHECK(cover[0].range == unit_interval());
  CHECK(cover[1].fiber == 2);
  CHECK(cover[1].range == DyadicInterval{-2, 0});
  CHECK(cover[2].fiber == 2);
  CHECK(cover[2].range == DyadicInterval{-1, 1});
}

TEST_CASE("good function from a single low tree is the fiber average") {
  int n = 4;
  Rng rng(9);
  GridFunction2D F = GridFunction2D::zeros(n);
  for (auto& v : F.v) v = rng.uniform_pm1();
  // cover: one interval of length 1/4 on each of two fibers
  std::vector<FiberInterval> cover = {{1, DyadicInterval{-2, 2}},
                                      {6, DyadicInterval{-2, 0}}};
  Tree tree;
  tree.top = Bitile{0, 0, 0, 0};  // box everything, frequency band [0,2)
  tree.members = {tree.top};
  GoodFunction good = build_good_function(F, {tree}, cover, 2);
  for (const auto& J : cover) {
    double mean = 0;
    int64_t c0 = J.range.first_cell(n);
    for (int64_t c = c0; c < c0 + J.range.cell_count(n); ++c) mean += F.at(J.fiber, c);
    mean /= static_cast<double>(J.range.cell_count(n));
    for (int64_t c = c0; c < c0 + J.range.cell_count(n); ++c)
      CHECK(good.g.at(J.fiber, c) == doctest::Approx(mean).epsilon(1e-12));
  }
  // nothing outside the cover
  CHECK(good.g.at(0, 0) == 0.0);
  // no trees, no content
  CHECK(build_good_function(F, {}, cover, 2).g.norm_inf() == 0.0);
}

TEST_CASE("replacement pipeline is exact across seeds and cases") {
  for (int t = 0; t < 4; ++t) {
    MfczConfig cfg;
    cfg.n = 4;
    cfg.seed = 100 + static_cast<uint64_t>(t);
    cfg.diagonal = t % 2 == 0;
    cfg.a = t == 2 ? 1.5 : 1.0;
    MfczPipeline pipe = run_mfcz_pipeline(cfg);
    CHECK(pipe.replacement_residual <= 1e-9);
    CHECK(pipe.measure_b1_eff < 0.5);
    CHECK(pipe.e2.subset_of(pipe.sets.b2));
    CHECK(!pipe.trees_k.empty());
    CHECK(is_convex(pipe.pk));
  }
}

TEST_CASE("replacement rejects bitiles shadowed by the exceptional set") {
  MfczConfig cfg;
  cfg.n = 4;
  cfg.seed = 3;
  MfczPipeline pipe = run_mfcz_pipeline(cfg);
  // find a bitile fully inside b1, if the instance provides one
  for (const auto& P : enum_bitiles(cfg.n)) {
    bool inside = true;
    DyadicInterval rows = P.i2(), cols = P.i0();
    for (int64_t r = rows.first_cell(cfg.n);
         inside && r < rows.first_cell(cfg.n) + rows.cell_count(cfg.n); ++r)
      for (int64_t c = cols.first_cell(cfg.n);
           inside && c < cols.first_cell(cfg.n) + cols.cell_count(cfg.n); ++c)
        inside = pipe.sets.b1.at(r, c);
    if (inside) {
      CHECK_THROWS_AS(verify_replacement({P}, pipe.f0t, pipe.f1t, pipe.f2t,
                                         pipe.good, pipe.sets.b1),
                      error);
      return;
    }
  }
}

TEST_CASE("slot-0 side: diagonal structure and projection identity") {
  for (int t = 0; t < 3; ++t) {
    MfczConfig cfg;
    cfg.n = 4;
    cfg.seed = 55 + static_cast<uint64_t>(t);
    cfg.diagonal = true;
    cfg.a = t == 1 ? 1.5 : 1.0;
    MfczF0Result res = run_mfcz_f0_side(cfg);
    CHECK(res.b0_diagonal);
    CHECK(res.directional_vs_full <= 1e-9);
    CHECK(res.projection_residual <= 1e-9);
    CHECK(res.nontrivial);
  }
}

TEST_CASE("diagonal mask detection") {
  int n = 3;
  WalshNumber a = WalshNumber::from_dyadic(1.5, 4, 4);
  Mask2D mask = Mask2D::empty(n);
  // build from a 1d set through the diagonal key
  for (int64_t r = 0; r < mask.side(); ++r)
    for (int64_t c = 0; c < mask.side(); ++c)
      if (diagonal_key(a, r, c) % 3 == 0) mask.set(r, c);
  CHECK(mask_is_diagonal(mask, a));
  mask.set(0, 0, !mask.at(0, 0));
  CHECK(!mask_is_diagonal(mask, a));
}

TEST_SUITE_END();
