#pragma once

#include <cstdint>
#include <optional>
#include <unordered_set>
#include <vector>

#include "tht/util.hpp"

namespace tht {

// Half-open dyadic interval [pos*2^k, (pos+1)*2^k). Time intervals have
// k <= 0 and live inside [0,1); frequency intervals have k >= 0 and integer
// endpoints.
struct DyadicInterval {
  int k = 0;
  int64_t pos = 0;

  double left() const { return static_cast<double>(pos) * pow2d(k); }
  double right() const { return static_cast<double>(pos + 1) * pow2d(k); }
  double length() const { return pow2d(k); }

  DyadicInterval parent() const { return {k + 1, pos >> 1}; }
  // half(+1) is the left half, half(-1) the right half.
  DyadicInterval half(int j) const {
    require(j == 1 || j == -1, "half index must be +1 or -1");
    return {k - 1, 2 * pos + (j == 1 ? 0 : 1)};
  }
  DyadicInterval ancestor(int k2) const {
    require(k2 >= k, "ancestor scale must be coarser");
    return {k2, pos >> (k2 - k)};
  }

  bool contains(const DyadicInterval& o) const {
    return o.k <= k && (o.pos >> (k - o.k)) == pos;
  }
  bool overlaps(const DyadicInterval& o) const {
    return o.k <= k ? contains(o) : o.contains(*this);
  }
  // Cell range at resolution n (time intervals, k in [-n, 0]).
  int64_t first_cell(int n) const { return pos << (n + k); }
  int64_t cell_count(int n) const { return int64_t{1} << (n + k); }
  bool contains_cell(int64_t cell, int n) const {
    return (cell >> (n + k)) == pos;
  }
  // Integer membership for frequency intervals (k >= 0).
  bool contains_value(int64_t f) const { return f >= 0 && (f >> k) == pos; }

  friend bool operator==(const DyadicInterval&, const DyadicInterval&) = default;
  friend auto operator<=>(const DyadicInterval&, const DyadicInterval&) = default;
};

inline DyadicInterval time_interval(int k, int64_t pos) {
  require(k <= 0 && pos >= 0 && pos < pow2(-k), "time interval outside [0,1)");
  return {k, pos};
}
inline DyadicInterval freq_interval(int k, int64_t pos) {
  require(k >= 0 && pos >= 0, "frequency interval needs integer endpoints");
  return {k, pos};
}
inline DyadicInterval unit_interval() { return {0, 0}; }

// Triple of same-scale time intervals whose left endpoints cancel under
// carry-less addition: pos1 = pos0 xor pos2.
struct IntervalTriple {
  int k = 0;
  int64_t pos0 = 0;
  int64_t pos2 = 0;

  int64_t pos1() const { return pos0 ^ pos2; }
  DyadicInterval i(int idx) const {
    switch (idx) {
      case 0: return {k, pos0};
      case 1: return {k, pos1()};
      default: return {k, pos2};
    }
  }
  double measure() const { return pow2d(2 * k); }  // |I0| * |I2|
  bool contains(const IntervalTriple& o) const {
    return i(0).contains(o.i(0)) && i(2).contains(o.i(2));
  }
  friend bool operator==(const IntervalTriple&, const IntervalTriple&) = default;
  friend auto operator<=>(const IntervalTriple&, const IntervalTriple&) = default;
};

// Dyadic box I0 x I2 x omega1. Tiles satisfy |I0| = |I2| = 1/|omega1|,
// bitiles |I0| = |I2| = 2/|omega1|. The derived interval I1 = I0 (+) I2 has
// position pos0 xor pos2 at the same scale.
struct Tile {
  int k = 0;         // spatial scale, <= 0
  int64_t pos0 = 0;  // I0 position
  int64_t pos2 = 0;  // I2 position
  int64_t fpos = 0;  // omega1 position at length 2^-k

  DyadicInterval i0() const { return {k, pos0}; }
  DyadicInterval i2() const { return {k, pos2}; }
  DyadicInterval i1() const { return {k, pos0 ^ pos2}; }
  DyadicInterval i(int idx) const { return idx == 1 ? i1() : (idx == 0 ? i0() : i2()); }
  DyadicInterval omega() const { return {-k, fpos}; }
  IntervalTriple triple() const { return {k, pos0, pos2}; }
  uint64_t key() const;
  friend bool operator==(const Tile&, const Tile&) = default;
  friend auto operator<=>(const Tile&, const Tile&) = default;
};

struct Bitile {
  int k = 0;
  int64_t pos0 = 0;
  int64_t pos2 = 0;
  int64_t fpos = 0;  // omega1 position at length 2^{1-k}

  DyadicInterval i0() const { return {k, pos0}; }
  DyadicInterval i2() const { return {k, pos2}; }
  DyadicInterval i1() const { return {k, pos0 ^ pos2}; }
  DyadicInterval i(int idx) const { return idx == 1 ? i1() : (idx == 0 ? i0() : i2()); }
  DyadicInterval omega() const { return {1 - k, fpos}; }
  IntervalTriple triple() const { return {k, pos0, pos2}; }
  double box_measure() const { return pow2d(2 * k); }  // |I0 x I2|
  // tile(+1) carries the lower frequency half, tile(-1) the upper.
  Tile tile(int j) const {
    require(j == 1 || j == -1, "tile index must be +1 or -1");
    return {k, pos0, pos2, 2 * fpos + (j == 1 ? 0 : 1)};
  }
  uint64_t key() const;
  friend bool operator==(const Bitile&, const Bitile&) = default;
  friend auto operator<=>(const Bitile&, const Bitile&) = default;
};

// Partial order on dyadic boxes: spatial intervals shrink, frequency grows.
template <class BoxA, class BoxB>
bool box_leq(const BoxA& a, const BoxB& b) {
  return b.i0().contains(a.i0()) && b.i2().contains(a.i2()) &&
         a.omega().contains(b.omega());
}

template <class BoxA, class BoxB>
bool boxes_disjoint(const BoxA& a, const BoxB& b) {
  return !(a.i0().overlaps(b.i0()) && a.i2().overlaps(b.i2()) &&
           a.omega().overlaps(b.omega()));
}

bool bitile_leq(const Bitile& a, const Bitile& b);
bool tile_leq(const Tile& a, const Tile& b);

// All scale-k triples with every interval inside `domain` (domain must be a
// prefix interval [0, 2^d) so the xor constraint stays inside).
std::vector<IntervalTriple> enum_triples(int k, DyadicInterval domain = unit_interval());

// All triples at scales -n..0 inside the unit interval, scale-major then
// lexicographic (the canonical summation order for the forms).
std::vector<IntervalTriple> enum_all_triples(int n);

// All bitiles at spatial scales -n..0 with frequency inside [0, 2^{n+1}).
// 2^{n-k} per scale k.
std::vector<Bitile> enum_bitiles(int n);

bool is_convex(const std::vector<Bitile>& coll);

// Convexity-preserving set helpers.
std::vector<Bitile> down_set(const std::vector<Bitile>& coll, const Bitile& top);
std::vector<Bitile> sorted_unique(std::vector<Bitile> coll);

// Membership structure used by decomposition and the tree machinery.
class BitileIndex {
 public:
  explicit BitileIndex(const std::vector<Bitile>& coll);
  bool contains(const Bitile& p) const { return keys_.count(p.key()) != 0; }

 private:
  std::unordered_set<uint64_t> keys_;
};

// Writes the union of a finite convex bitile collection as a union of
// pairwise disjoint tiles. Bitiles are processed finest spatial scale first;
// convexity forces the already covered part of each box to be a union of
// spatial quadrants times its full frequency interval, so the remainder is
// tiled directly. `spatial_split` picks the alternative cover of fresh boxes
// (four quadrant tiles instead of the two frequency halves) where the grid
// resolution allows, giving a second decomposition for cross checks.
std::vector<Tile> disjoint_tile_decomposition(const std::vector<Bitile>& coll,
                                              int resolution,
                                              bool spatial_split = false,
                                              bool check_convex = true);

}  // namespace tht
