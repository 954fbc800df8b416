#include "tht/dyadic.hpp"

#include <algorithm>
#include <tuple>

namespace tht {

namespace {

// 16-bit fields are ample for desk-scale resolutions.
uint64_t pack_key(int k, int64_t p0, int64_t p2, int64_t f) {
  return (static_cast<uint64_t>(k + 32) << 48) |
         (static_cast<uint64_t>(p0) << 32) | (static_cast<uint64_t>(p2) << 16) |
         static_cast<uint64_t>(f);
}

}  // namespace

uint64_t Tile::key() const { return pack_key(k, pos0, pos2, fpos) | (1ull << 63); }
uint64_t Bitile::key() const { return pack_key(k, pos0, pos2, fpos); }

bool bitile_leq(const Bitile& a, const Bitile& b) { return box_leq(a, b); }
bool tile_leq(const Tile& a, const Tile& b) { return box_leq(a, b); }

std::vector<IntervalTriple> enum_triples(int k, DyadicInterval domain) {
  require(k <= 0, "triple scale must be <= 0");
  require(domain.pos == 0, "triple domain must be a prefix interval [0, 2^d)");
  require(domain.k >= k, "triple scale finer than domain");
  int64_t count = pow2(domain.k - k);
  std::vector<IntervalTriple> out;
  out.reserve(static_cast<size_t>(count * count));
  for (int64_t p0 = 0; p0 < count; ++p0)
    for (int64_t p2 = 0; p2 < count; ++p2)
      out.push_back({k, p0, p2});  // pos1 = p0 ^ p2 < count stays inside
  return out;
}

std::vector<IntervalTriple> enum_all_triples(int n) {
  std::vector<IntervalTriple> out;
  for (int k = 0; k >= -n; --k) {
    auto at_scale = enum_triples(k);
    out.insert(out.end(), at_scale.begin(), at_scale.end());
  }
  return out;
}

std::vector<Bitile> enum_bitiles(int n) {
  require(n >= 0, "resolution must be nonnegative");
  std::vector<Bitile> out;
  for (int k = 0; k >= -n; --k) {
    int64_t spatial = pow2(-k);
    int64_t freqs = pow2(n + k);  // universe [0, 2^{n+1}) in slabs of 2^{1-k}
    for (int64_t p0 = 0; p0 < spatial; ++p0)
      for (int64_t p2 = 0; p2 < spatial; ++p2)
        for (int64_t f = 0; f < freqs; ++f) out.push_back({k, p0, p2, f});
  }
  return out;
}

BitileIndex::BitileIndex(const std::vector<Bitile>& coll) {
  keys_.reserve(coll.size() * 2);
  for (const auto& p : coll) keys_.insert(p.key());
}

bool is_convex(const std::vector<Bitile>& coll) {
  BitileIndex index(coll);
  for (const auto& a : coll) {
    for (const auto& b : coll) {
      if (a.k >= b.k || !bitile_leq(a, b)) continue;
      // The order interval [a, b] has exactly one bitile per intermediate
      // scale: spatial ancestors of a, frequency ancestors of b.
      for (int k = a.k + 1; k < b.k; ++k) {
        Bitile mid{k, a.pos0 >> (k - a.k), a.pos2 >> (k - a.k),
                   b.fpos >> (b.k - k)};
        if (!index.contains(mid)) return false;
      }
    }
  }
  return true;
}

std::vector<Bitile> sorted_unique(std::vector<Bitile> coll) {
  std::sort(coll.begin(), coll.end());
  coll.erase(std::unique(coll.begin(), coll.end()), coll.end());
  return coll;
}

std::vector<Bitile> down_set(const std::vector<Bitile>& coll, const Bitile& top) {
  std::vector<Bitile> out;
  for (const auto& p : coll)
    if (bitile_leq(p, top)) out.push_back(p);
  return out;
}

std::vector<Tile> disjoint_tile_decomposition(const std::vector<Bitile>& coll,
                                              int resolution, bool spatial_split,
                                              bool check_convex) {
  if (coll.empty()) return {};
  if (check_convex)
    require(is_convex(coll), "tile decomposition needs a convex collection");
  auto sorted = sorted_unique(coll);
  std::stable_sort(sorted.begin(), sorted.end(), [](const Bitile& a, const Bitile& b) {
    return std::tie(a.k, a.pos0, a.pos2, a.fpos) <
           std::tie(b.k, b.pos0, b.pos2, b.fpos);
  });
  BitileIndex index(sorted);
  int min_k = sorted.front().k;  // finest spatial scale present

  std::vector<Tile> tiles;
  for (const auto& p : sorted) {
    // The part of p covered by finer members is (union of spatial quadrants)
    // x omega_p: each strict predecessor forces, by convexity, a one-scale-
    // down member over its quadrant whose frequency interval is par(omega_p).
    bool covered[4] = {false, false, false, false};
    bool any = false;
    if (p.k > min_k) {
      for (int q = 0; q < 4; ++q) {
        Bitile pred{p.k - 1, 2 * p.pos0 + (q & 1), 2 * p.pos2 + (q >> 1),
                    p.fpos >> 1};
        if (index.contains(pred)) {
          covered[q] = true;
          any = true;
        }
      }
    }
    if (!any) {
      if (spatial_split && p.k - 1 >= -resolution) {
        for (int q = 0; q < 4; ++q)
          tiles.push_back(
              {p.k - 1, 2 * p.pos0 + (q & 1), 2 * p.pos2 + (q >> 1), p.fpos});
      } else {
        tiles.push_back(p.tile(+1));
        tiles.push_back(p.tile(-1));
      }
    } else {
      for (int q = 0; q < 4; ++q) {
        if (covered[q]) continue;
        tiles.push_back(
            {p.k - 1, 2 * p.pos0 + (q & 1), 2 * p.pos2 + (q >> 1), p.fpos});
      }
    }
  }
  return tiles;
}

}  // namespace tht
