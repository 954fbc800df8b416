#include <array>
#include <map>
#include <set>

#include "doctest.h"
#include "tht/dyadic.hpp"
#include "tht/util.hpp"

using namespace tht;

namespace {

// Phase-space cell model: time cells at resolution n, unit frequency cells
// inside [0, 2^{n+1}). The oracle for unions and disjointness.
using CellSet = std::set<int64_t>;

int64_t cell_key(int64_t s0, int64_t s2, int64_t f, int n) {
  int64_t side = int64_t{1} << n;
  return (s0 * side + s2) * (2 * side) + f;
}

template <class Box>
void insert_cells(CellSet& cells, const Box& b, int n, bool* overlap = nullptr) {
  DyadicInterval i0 = b.i0(), i2 = b.i2(), om = b.omega();
  for (int64_t s0 = i0.first_cell(n); s0 < i0.first_cell(n) + i0.cell_count(n); ++s0)
    for (int64_t s2 = i2.first_cell(n); s2 < i2.first_cell(n) + i2.cell_count(n); ++s2)
      for (int64_t f = om.pos << om.k; f < (om.pos + 1) << om.k; ++f) {
        auto [it, fresh] = cells.insert(cell_key(s0, s2, f, n));
        (void)it;
        if (!fresh && overlap) *overlap = true;
      }
}

std::vector<Bitile> chain_example(int n) {
  // bottom and top of a two-step order chain, middle deliberately missing
  Bitile bottom{-2, 0, 0, 0};  // [0,1/4)^2 x [0,8)
  Bitile top{0, 0, 0, 1};      // [0,1)^2 x [2,4)
  require(bitile_leq(bottom, top), "chain example must be comparable");
  (void)n;
  return {bottom, top};
}

}  // namespace

TEST_SUITE_BEGIN("dyadic");

TEST_CASE("interval triples by exhaustive xor search") {
  for (int k = 0; k >= -2; --k) {
    auto triples = enum_triples(k);
    // oracle: count all position triples with vanishing xor
    int64_t count = int64_t{1} << -k;
    int64_t expect = 0;
    std::set<std::array<int64_t, 3>> seen;
    for (int64_t p0 = 0; p0 < count; ++p0)
      for (int64_t p1 = 0; p1 < count; ++p1)
        for (int64_t p2 = 0; p2 < count; ++p2)
          if ((p0 ^ p1 ^ p2) == 0) {
            ++expect;
            seen.insert({p0, p1, p2});
          }
    CHECK(static_cast<int64_t>(triples.size()) == expect);
    CHECK(triples.size() == size_t(1) << (-2 * k));
    for (const auto& t : triples) {
      CHECK(seen.count({t.pos0, t.pos1(), t.pos2}) == 1);
      CHECK((t.pos0 ^ t.pos1() ^ t.pos2) == 0);
    }
  }
  CHECK(enum_triples(0).size() == 1);
  // coarser prefix domains scale the count the same way
  CHECK(enum_triples(-2, time_interval(-1, 0)).size() == 4);
  CHECK_THROWS_AS(enum_triples(-2, time_interval(-1, 1)), error);  // not a prefix
}

TEST_CASE("bitile enumeration counts") {
  auto by_scale = [](const std::vector<Bitile>& coll) {
    std::map<int, int64_t> counts;
    for (const auto& P : coll) counts[P.k]++;
    return counts;
  };
  auto c2 = by_scale(enum_bitiles(2));
  CHECK(c2[0] == 4);
  CHECK(c2[-1] == 8);
  CHECK(c2[-2] == 16);
  // scale count formula 2^{n-k}
  for (int n = 0; n <= 4; ++n) {
    auto counts = by_scale(enum_bitiles(n));
    for (int k = 0; k >= -n; --k) CHECK(counts[k] == pow2(n - k));
  }
  // single spatial triple at the coarsest case; the frequency universe
  // [0, 2) holds exactly one band
  CHECK(enum_bitiles(0).size() == 1);
}

TEST_CASE("bitiles at a fixed scale partition phase space") {
  int n = 2;
  for (int k = 0; k >= -n; --k) {
    CellSet cells;
    bool overlap = false;
    for (const auto& P : enum_bitiles(n))
      if (P.k == k) insert_cells(cells, P, n, &overlap);
    CHECK(!overlap);
    CHECK(cells.size() == size_t(1) << (3 * n + 1));  // 4^n spatial x 2^{n+1}
  }
}

TEST_CASE("box order") {
  Bitile small{-1, 0, 0, 0};  // [0,1/2) x [0,1/2) x [0,4)
  Bitile large{0, 0, 0, 0};   // [0,1) x [0,1) x [0,2)
  CHECK(bitile_leq(small, large));
  CHECK(!bitile_leq(large, small));
  CHECK(bitile_leq(small, small));
  Bitile shifted{-1, 1, 0, 0};
  CHECK(!bitile_leq(shifted, small));
  CHECK(!bitile_leq(small, shifted));

  auto universe = enum_bitiles(2);
  for (const auto& a : universe)
    for (const auto& b : universe) {
      // comparability coincides with intersection for dyadic boxes
      bool comparable = bitile_leq(a, b) || bitile_leq(b, a);
      CHECK(comparable == !boxes_disjoint(a, b));
      if (bitile_leq(a, b) && bitile_leq(b, a)) CHECK(a == b);
    }
}

TEST_CASE("convexity detection") {
  CHECK(is_convex({}));
  CHECK(is_convex({Bitile{0, 0, 0, 0}}));
  auto chain = chain_example(3);
  CHECK(!is_convex(chain));
  // inserting the middle repairs it
  Bitile middle{-1, 0, 0, 0};
  CHECK(bitile_leq(chain[0], middle));
  CHECK(bitile_leq(middle, chain[1]));
  CHECK(is_convex({chain[0], middle, chain[1]}));

  auto universe = enum_bitiles(3);
  Rng rng(5);
  for (int t = 0; t < 10; ++t) {
    auto ds = down_set(universe, universe[rng.below(universe.size())]);
    CHECK(is_convex(ds));
  }
}

TEST_CASE("both bitile splits cover the same phase-space cells") {
  int n = 2;
  for (const auto& P : enum_bitiles(n)) {
    if (P.k - 1 < -n) continue;
    CellSet freq_split, spatial_split;
    insert_cells(freq_split, P.tile(+1), n);
    insert_cells(freq_split, P.tile(-1), n);
    for (int64_t a = 0; a <= 1; ++a)
      for (int64_t b = 0; b <= 1; ++b)
        insert_cells(spatial_split,
                     Tile{P.k - 1, 2 * P.pos0 + a, 2 * P.pos2 + b, P.fpos}, n);
    CHECK(freq_split == spatial_split);
  }
}

TEST_CASE("convexity agrees with the order-interval oracle") {
  int n = 3;
  auto universe = enum_bitiles(n);
  Rng rng(37);
  auto oracle = [&](const std::vector<Bitile>& coll) {
    BitileIndex idx(coll);
    for (const auto& a : coll)
      for (const auto& b : coll)
        if (bitile_leq(a, b))
          for (const auto& mid : universe)
            if (bitile_leq(a, mid) && bitile_leq(mid, b) && !idx.contains(mid))
              return false;
    return true;
  };
  for (int trial = 0; trial < 30; ++trial) {
    // random subsets, biased toward down-set unions with random deletions
    std::vector<Bitile> coll;
    for (int q = 0; q < 2; ++q) {
      auto ds = down_set(universe, universe[rng.below(universe.size())]);
      coll.insert(coll.end(), ds.begin(), ds.end());
    }
    coll = sorted_unique(coll);
    std::vector<Bitile> pruned;
    for (const auto& P : coll)
      if (rng.below(8) != 0) pruned.push_back(P);
    CHECK(is_convex(pruned) == oracle(pruned));
    CHECK(is_convex(coll) == oracle(coll));
  }
}

TEST_CASE("tile decomposition of a single bitile") {
  Bitile P{0, 0, 0, 0};
  auto tiles = disjoint_tile_decomposition({P}, 2);
  REQUIRE(tiles.size() == 2);
  CHECK(tiles[0] == P.tile(+1));
  CHECK(tiles[1] == P.tile(-1));
  CHECK(disjoint_tile_decomposition({}, 2).empty());
}

TEST_CASE("tile decomposition covers convex unions exactly") {
  int n = 3;
  auto universe = enum_bitiles(n);
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Bitile> coll;
    int picks = 1 + static_cast<int>(rng.below(4));
    for (int q = 0; q < picks; ++q) {
      auto ds = down_set(universe, universe[rng.below(universe.size())]);
      coll.insert(coll.end(), ds.begin(), ds.end());
    }
    coll = sorted_unique(coll);
    REQUIRE(is_convex(coll));

    CellSet expect;
    for (const auto& P : coll) insert_cells(expect, P, n);

    for (bool alt : {false, true}) {
      auto tiles = disjoint_tile_decomposition(coll, n, alt);
      CellSet got;
      bool overlap = false;
      for (const auto& p : tiles) insert_cells(got, p, n, &overlap);
      CHECK(!overlap);  // pairwise disjoint cell-by-cell
      CHECK(got == expect);
    }
    // deterministic output
    auto t1 = disjoint_tile_decomposition(coll, n);
    auto t2 = disjoint_tile_decomposition(coll, n);
    CHECK(t1 == t2);
  }
}

TEST_CASE("tile decomposition rejects non-convex input") {
  CHECK_THROWS_AS(disjoint_tile_decomposition(chain_example(3), 3), error);
}

TEST_CASE("coverage is stable under re-decomposition of spanned bitiles") {
  int n = 3;
  auto universe = enum_bitiles(n);
  Rng rng(23);
  for (int trial = 0; trial < 8; ++trial) {
    std::vector<Bitile> coll;
    for (int q = 0; q < 3; ++q) {
      auto ds = down_set(universe, universe[rng.below(universe.size())]);
      coll.insert(coll.end(), ds.begin(), ds.end());
    }
    coll = sorted_unique(coll);
    auto tiles = disjoint_tile_decomposition(coll, n);
    CellSet covered;
    for (const auto& p : tiles) insert_cells(covered, p, n);
    // bitiles whose cells all lie inside the covered region
    std::vector<Bitile> spanned;
    for (const auto& P : universe) {
      CellSet cells;
      insert_cells(cells, P, n);
      bool inside = true;
      for (int64_t c : cells) inside = inside && covered.count(c);
      if (inside) spanned.push_back(P);
    }
    REQUIRE(is_convex(spanned));
    auto tiles2 = disjoint_tile_decomposition(spanned, n);
    CellSet covered2;
    bool overlap = false;
    for (const auto& p : tiles2) insert_cells(covered2, p, n, &overlap);
    CHECK(!overlap);
    CHECK(covered2 == covered);
  }
}

TEST_SUITE_END();
