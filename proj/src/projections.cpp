#include "tht/projections.hpp"

#include <cmath>

namespace tht {

ChoiceFunction ChoiceFunction::constant(int n, int64_t v) {
  require(v >= 0, "choice function values are nonnegative integers");
  ChoiceFunction c;
  c.n = n;
  c.value.assign(static_cast<size_t>(int64_t{1} << n), v);
  return c;
}

ChoiceFunction ChoiceFunction::random(int n, uint64_t seed) {
  ChoiceFunction c;
  c.n = n;
  Rng rng(seed);
  c.value.resize(static_cast<size_t>(int64_t{1} << n));
  for (auto& v : c.value) v = static_cast<int64_t>(rng.below(uint64_t{1} << n));
  return c;
}

ProjectionSystem ProjectionSystem::diagonal(const WalshNumber& a) {
  require(a.degree() >= 0, "diagonal multiplier must lie outside the unit interval");
  ProjectionSystem s;
  s.kind = Case::diagonal;
  s.a = a;
  return s;
}

ProjectionSystem ProjectionSystem::fiberwise(ChoiceFunction N) {
  ProjectionSystem s;
  s.kind = Case::fiberwise;
  s.N = std::move(N);
  return s;
}

DyadicInterval freq_image(const WalshNumber& a, const DyadicInterval& omega) {
  require(omega.k >= 0, "frequency interval expected");
  require(a.degree() >= 0, "multiplier must have nonnegative degree");
  int e = a.degree();
  int fa = a.frac_bits();
  uint64_t l = static_cast<uint64_t>(omega.pos) << omega.k;
  uint64_t prod = clmul(a.raw(), l);  // value prod * 2^-fa
  return freq_interval(omega.k + e, static_cast<int64_t>(prod >> (fa + omega.k + e)));
}

namespace {

double packet_coefficient(const double* in, int64_t in_stride, int n,
                          const DyadicInterval& I, int64_t freq, double* psign) {
  int64_t c0 = I.first_cell(n);
  int64_t cnt = I.cell_count(n);
  double coeff = 0.0;
  for (int64_t c = 0; c < cnt; ++c) {
    int s = walsh_sign_on_cell(static_cast<uint64_t>(freq),
                               static_cast<uint64_t>(c0 + c), n);
    psign[c] = static_cast<double>(s);
    coeff += in[(c0 + c) * in_stride] * s;
  }
  // amplitude |I|^{-1/2} appears once in the analysis and once in the
  // synthesis; fold both into the coefficient.
  return coeff * pow2d(-n) * pow2d(-I.k);
}

}  // namespace

void add_fiber_projection(const double* in, int64_t in_stride, double* out,
                          int64_t out_stride, int n, const DyadicInterval& I,
                          const DyadicInterval& omega_range) {
  require(omega_range.k >= -I.k, "frequency range shorter than the packet band");
  int64_t packets = pow2(omega_range.k + I.k);
  int64_t first = omega_range.pos << (omega_range.k + I.k);
  int64_t c0 = I.first_cell(n);
  int64_t cnt = I.cell_count(n);
  std::vector<double> psign(static_cast<size_t>(cnt));
  for (int64_t w = 0; w < packets; ++w) {
    int64_t freq = (first + w) << (-I.k);
    if (freq >= pow2(n)) continue;  // annihilates resolution-n data
    double coeff = packet_coefficient(in, in_stride, n, I, freq, psign.data());
    if (coeff == 0.0) continue;
    for (int64_t c = 0; c < cnt; ++c)
      out[(c0 + c) * out_stride] += coeff * psign[static_cast<size_t>(c)];
  }
}

GridFunction1D one_dim_projection(const GridFunction1D& f, const DyadicInterval& I,
                                  const DyadicInterval& omega_range) {
  require(f.width_log2 == 0, "fiber projection acts on unit-interval data");
  GridFunction1D out = GridFunction1D::zeros(f.n);
  add_fiber_projection(f.v.data(), 1, out.v.data(), 1, f.n, I, omega_range);
  return out;
}

GridFunction2D proj_tile(int i, const Tile& p, const GridFunction2D& F,
                         const ProjectionSystem& sys) {
  require(i >= 0 && i <= 2, "slot index must be 0, 1 or 2");
  int n = F.n;
  require(p.k >= -n && p.k <= 0, "tile outside resolution range");
  int64_t side = F.side();
  GridFunction2D out = GridFunction2D::zeros(n);

  if (i == 2) {
    // rows x0 in I0, project each row fiber (x1) onto the packet
    DyadicInterval I0 = p.i0(), I1 = p.i1();
    int64_t r0 = I0.first_cell(n), r1 = r0 + I0.cell_count(n);
    for (int64_t r = r0; r < r1; ++r)
      add_fiber_projection(&F.v[static_cast<size_t>(r << n)], 1,
                           &out.v[static_cast<size_t>(r << n)], 1, n, I1,
                           p.omega());
    return out;
  }
  if (i == 0) {
    // cols x2 in I2, project each column fiber (x1, stride 2^n)
    DyadicInterval I2 = p.i2(), I1 = p.i1();
    int64_t c0 = I2.first_cell(n), c1 = c0 + I2.cell_count(n);
    for (int64_t c = c0; c < c1; ++c)
      add_fiber_projection(&F.v[static_cast<size_t>(c)], side,
                           &out.v[static_cast<size_t>(c)], side, n, I1,
                           p.omega());
    return out;
  }
  // i == 1: rows x2, cols x0
  DyadicInterval I0 = p.i0(), I2 = p.i2();
  int64_t c0 = I0.first_cell(n), c1 = c0 + I0.cell_count(n);
  if (sys.is_diagonal()) {
    DyadicInterval image = freq_image(sys.a, p.omega());
    for (int64_t c = c0; c < c1; ++c)
      add_fiber_projection(&F.v[static_cast<size_t>(c)], side,
                           &out.v[static_cast<size_t>(c)], side, n, I2, image);
    return out;
  }
  require(sys.N.n == n, "choice function resolution mismatch");
  int64_t r0 = I2.first_cell(n), r1 = r0 + I2.cell_count(n);
  for (int64_t r = r0; r < r1; ++r) {
    if (!p.omega().contains_value(sys.N.at(r))) continue;
    for (int64_t c = c0; c < c1; ++c) out.at(r, c) = F.at(r, c);
  }
  return out;
}

GridFunction2D proj_bitile(int i, const Bitile& P, const GridFunction2D& F,
                           const ProjectionSystem& sys, bool check_splits) {
  GridFunction2D out = proj_tile(i, P.tile(+1), F, sys);
  GridFunction2D upper = proj_tile(i, P.tile(-1), F, sys);
  for (size_t j = 0; j < out.v.size(); ++j) out.v[j] += upper.v[j];
  if (check_splits && P.k - 1 >= -F.n) {
    GridFunction2D spatial = GridFunction2D::zeros(F.n);
    for (int64_t a = 0; a <= 1; ++a)
      for (int64_t b = 0; b <= 1; ++b) {
        Tile q{P.k - 1, 2 * P.pos0 + a, 2 * P.pos2 + b, P.fpos};
        GridFunction2D part = proj_tile(i, q, F, sys);
        for (size_t j = 0; j < spatial.v.size(); ++j) spatial.v[j] += part.v[j];
      }
    require(max_abs_diff(out, spatial) <= 1e-9 * (1.0 + F.norm_inf()),
            "bitile projection splits disagree: projection system is broken");
  }
  return out;
}

GridFunction2D proj_collection(int i, const std::vector<Bitile>& coll,
                               const GridFunction2D& F, const ProjectionSystem& sys,
                               bool alt_decomposition) {
  GridFunction2D out = GridFunction2D::zeros(F.n);
  auto tiles = disjoint_tile_decomposition(coll, F.n, alt_decomposition);
  for (const auto& p : tiles) {
    GridFunction2D part = proj_tile(i, p, F, sys);
    for (size_t j = 0; j < out.v.size(); ++j) out.v[j] += part.v[j];
  }
  return out;
}

double tile_projection_norm_sq(int i, const Tile& p, const GridFunction2D& F,
                               const ProjectionSystem& sys) {
  int n = F.n;
  int64_t side = F.side();
  double acc = 0.0;
  auto fiber_norm = [&](const double* in, int64_t stride, const DyadicInterval& I,
                        const DyadicInterval& range) {
    int64_t packets = pow2(range.k + I.k);
    int64_t first = range.pos << (range.k + I.k);
    int64_t c0 = I.first_cell(n), cnt = I.cell_count(n);
    double s = 0.0;
    for (int64_t w = 0; w < packets; ++w) {
      int64_t freq = (first + w) << (-I.k);
      if (freq >= pow2(n)) continue;
      double coeff = 0.0;
      for (int64_t c = 0; c < cnt; ++c)
        coeff += in[(c0 + c) * stride] *
                 walsh_sign_on_cell(static_cast<uint64_t>(freq),
                                    static_cast<uint64_t>(c0 + c), n);
      // 1d norm of coeff * packet with analysis weight folded in
      s += coeff * coeff * pow2d(-n) * pow2d(-n) * pow2d(-I.k);
    }
    return s;
  };

  if (i == 2) {
    DyadicInterval I0 = p.i0(), I1 = p.i1();
    int64_t r0 = I0.first_cell(n), r1 = r0 + I0.cell_count(n);
    for (int64_t r = r0; r < r1; ++r)
      acc += fiber_norm(&F.v[static_cast<size_t>(r << n)], 1, I1, p.omega());
    return acc * pow2d(-n);
  }
  if (i == 0) {
    DyadicInterval I2 = p.i2(), I1 = p.i1();
    int64_t c0 = I2.first_cell(n), c1 = c0 + I2.cell_count(n);
    for (int64_t c = c0; c < c1; ++c)
      acc += fiber_norm(&F.v[static_cast<size_t>(c)], side, I1, p.omega());
    return acc * pow2d(-n);
  }
  DyadicInterval I0 = p.i0(), I2 = p.i2();
  int64_t c0 = I0.first_cell(n), c1 = c0 + I0.cell_count(n);
  if (sys.is_diagonal()) {
    DyadicInterval image = freq_image(sys.a, p.omega());
    for (int64_t c = c0; c < c1; ++c)
      acc += fiber_norm(&F.v[static_cast<size_t>(c)], side, I2, image);
    return acc * pow2d(-n);
  }
  require(sys.N.n == n, "choice function resolution mismatch");
  int64_t r0 = I2.first_cell(n), r1 = r0 + I2.cell_count(n);
  for (int64_t r = r0; r < r1; ++r) {
    if (!p.omega().contains_value(sys.N.at(r))) continue;
    for (int64_t c = c0; c < c1; ++c) acc += F.at(r, c) * F.at(r, c);
  }
  return acc * pow2d(-2 * n);
}

int64_t diagonal_key(const WalshNumber& a, int64_t ix1, int64_t ix2) {
  int e = a.degree();
  int fa = a.frac_bits();
  require(e >= 0, "diagonal multiplier must have nonnegative degree");
  uint64_t fine = clmul(a.raw(), static_cast<uint64_t>(ix1)) ^
                  (static_cast<uint64_t>(ix2) << fa);
  return static_cast<int64_t>(fine >> (e + fa));
}

GridFunction2D diagonal_f0(const GridFunction1D& f, const WalshNumber& a, int n) {
  int e = a.degree();
  require(f.n == n - e && f.width_log2 == e + 1,
          "diagonal data must have resolution n - deg(a) on [0, 2^{deg(a)+1})");
  GridFunction2D out = GridFunction2D::zeros(n);
  int64_t side = out.side();
  for (int64_t r = 0; r < side; ++r)
    for (int64_t c = 0; c < side; ++c)
      out.at(r, c) = f.at(diagonal_key(a, r, c));
  return out;
}

GridFunction1D extract_diagonal_f(const GridFunction2D& f0, const WalshNumber& a) {
  int n = f0.n;
  int e = a.degree();
  GridFunction1D f = GridFunction1D::zeros(n - e, e + 1);
  std::vector<uint8_t> seen(f.v.size(), 0);
  int64_t side = f0.side();
  for (int64_t r = 0; r < side; ++r) {
    for (int64_t c = 0; c < side; ++c) {
      int64_t key = diagonal_key(a, r, c);
      if (!seen[static_cast<size_t>(key)]) {
        seen[static_cast<size_t>(key)] = 1;
        f.at(key) = f0.at(r, c);
      } else {
        require(f.at(key) == f0.at(r, c),
                "data is not a function of x2 (+) a (*) x1");
      }
    }
  }
  return f;
}

void require_diagonal_structure(const GridFunction2D& f0, const WalshNumber& a) {
  (void)extract_diagonal_f(f0, a);
}

GridFunction2D fiberwise_f0(const GridFunction1D& f, const ChoiceFunction& N) {
  require(f.width_log2 == 0 && f.n == N.n, "fiberwise data mismatch");
  int n = f.n;
  GridFunction2D out = GridFunction2D::zeros(n);
  int64_t side = out.side();
  for (int64_t c = 0; c < side; ++c) {
    int64_t freq = N.at(c);
    require(freq < side, "choice function frequency exceeds the grid spectrum");
    for (int64_t r = 0; r < side; ++r)
      out.at(r, c) = f.at(c) * walsh_sign_on_cell(static_cast<uint64_t>(freq),
                                                  static_cast<uint64_t>(r), n);
  }
  return out;
}

void require_fiberwise_structure(const GridFunction2D& f0, const ChoiceFunction& N) {
  require(N.n == f0.n, "choice function resolution mismatch");
  int64_t side = f0.side();
  for (int64_t c = 0; c < side; ++c) {
    int64_t freq = N.at(c);
    require(freq < side, "choice function frequency exceeds the grid spectrum");
    double base = f0.at(0, c);  // w_N(0) = +1
    for (int64_t r = 0; r < side; ++r) {
      double expect = base * walsh_sign_on_cell(static_cast<uint64_t>(freq),
                                                static_cast<uint64_t>(r), f0.n);
      require(f0.at(r, c) == expect,
              "data is not a fiberwise character times f(x2)");
    }
  }
}

void require_structure(const GridFunction2D& f0, const ProjectionSystem& sys) {
  if (sys.is_diagonal())
    require_diagonal_structure(f0, sys.a);
  else
    require_fiberwise_structure(f0, sys.N);
}

double check_adapted(const Bitile& P, const std::vector<Bitile>& coll,
                     const GridFunction2D& f0, const GridFunction2D& f1,
                     const GridFunction2D& f2, const ProjectionSystem& sys) {
  require_structure(f0, sys);
  bool found = false;
  for (const auto& q : coll) found = found || q == P;
  require(found, "bitile must belong to the collection");
  double lhs = eval_lambda_bitile(P, f0, f1, f2);
  GridFunction2D p0 = proj_collection(0, coll, f0, sys);
  GridFunction2D p1 = proj_collection(1, coll, f1, sys);
  GridFunction2D p2 = proj_collection(2, coll, f2, sys);
  double rhs = eval_lambda_bitile(P, p0, p1, p2);
  return rel_residual(lhs, rhs);
}

}  // namespace tht
