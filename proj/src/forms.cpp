#include "tht/forms.hpp"

#include <cmath>

namespace tht {

namespace {

uint64_t interval_hash(uint64_t seed, const DyadicInterval& I) {
  uint64_t h = splitmix64(seed ^ 0x7d4a7c15u);
  h = splitmix64(h ^ static_cast<uint64_t>(I.k + 64));
  h = splitmix64(h ^ static_cast<uint64_t>(I.pos));
  return h;
}

uint64_t triple_hash(uint64_t seed, const IntervalTriple& t) {
  uint64_t h = splitmix64(seed ^ 0x452821e638d01377ull);
  h = splitmix64(h ^ static_cast<uint64_t>(t.k + 64));
  h = splitmix64(h ^ static_cast<uint64_t>(t.pos0));
  h = splitmix64(h ^ static_cast<uint64_t>(t.pos2));
  return h;
}

void check_resolutions(const GridFunction2D& f0, const GridFunction2D& f1,
                       const GridFunction2D& f2) {
  require(f0.n == f1.n && f1.n == f2.n, "form inputs at different resolutions");
}

}  // namespace

IntervalCoefficients IntervalCoefficients::constant(double c) {
  require(std::abs(c) <= 1.0, "interval coefficient exceeds 1");
  IntervalCoefficients out;
  out.fn_ = [c](const DyadicInterval&) { return c; };
  return out;
}

IntervalCoefficients IntervalCoefficients::random_signs(uint64_t seed) {
  IntervalCoefficients out;
  out.fn_ = [seed](const DyadicInterval& I) {
    return (interval_hash(seed, I) & 1u) ? -1.0 : 1.0;
  };
  return out;
}

IntervalCoefficients IntervalCoefficients::random_uniform(uint64_t seed) {
  IntervalCoefficients out;
  out.fn_ = [seed](const DyadicInterval& I) {
    return 2.0 * (static_cast<double>(interval_hash(seed, I) >> 11) * 0x1.0p-53) - 1.0;
  };
  return out;
}

IntervalCoefficients IntervalCoefficients::from_map(
    std::map<DyadicInterval, double> values, double fallback) {
  auto shared = std::make_shared<std::map<DyadicInterval, double>>(std::move(values));
  for (const auto& [k, v] : *shared)
    require(std::abs(v) <= 1.0, "interval coefficient exceeds 1");
  IntervalCoefficients out;
  out.fn_ = [shared, fallback](const DyadicInterval& I) {
    auto it = shared->find(I);
    return it == shared->end() ? fallback : it->second;
  };
  return out;
}

EpsilonAssignment EpsilonAssignment::zero() { return constant(0.0); }

EpsilonAssignment EpsilonAssignment::constant(double c) {
  require(std::abs(c) <= 1.0, "epsilon exceeds 1");
  EpsilonAssignment out;
  out.fn_ = [c](const IntervalTriple&) { return c; };
  return out;
}

EpsilonAssignment EpsilonAssignment::random_signs(uint64_t seed) {
  EpsilonAssignment out;
  out.fn_ = [seed](const IntervalTriple& t) {
    return (triple_hash(seed, t) & 1u) ? -1.0 : 1.0;
  };
  return out;
}

EpsilonAssignment EpsilonAssignment::per_i0(IntervalCoefficients c) {
  EpsilonAssignment out;
  out.fn_ = [c](const IntervalTriple& t) { return c.at(t.i(0)); };
  return out;
}

EpsilonAssignment EpsilonAssignment::per_bht_interval(int L, IntervalCoefficients c) {
  require(L >= 1, "shift exponent must be positive");
  EpsilonAssignment out;
  out.fn_ = [L, c](const IntervalTriple& t) { return c.at(bht_interval(t, L)); };
  return out;
}

EpsilonAssignment EpsilonAssignment::from_function(
    std::function<double(const IntervalTriple&)> fn) {
  EpsilonAssignment out;
  out.fn_ = std::move(fn);
  return out;
}

DyadicInterval bht_interval(const IntervalTriple& t, int L) {
  // l(I0) xor 2^-L l(I2), truncated back to scale k.
  int64_t fine = (t.pos0 << L) ^ t.pos2;  // position at scale k - L
  return {t.k, fine >> L};
}

double eval_form_trace(const GridFunction2D& f0, const GridFunction2D& f1,
                       const GridFunction2D& f2, const EpsilonAssignment& eps,
                       int i) {
  check_resolutions(f0, f1, f2);
  require(i >= 0 && i <= 2, "index must be 0, 1 or 2");
  const GridFunction2D* F[3] = {&f0, &f1, &f2};
  const GridFunction2D& A = *F[(i + 2) % 3];  // F_{i-1}(x_i, x_{i+1})
  const GridFunction2D& B = *F[i];            // F_i(x_{i+1}, x_{i-1})
  const GridFunction2D& C = *F[(i + 1) % 3];  // F_{i+1}(x_{i-1}, x_i)
  int n = f0.n;
  double total = 0.0;
  double w = pow2d(-3 * n);
  for (int k = 0; k >= -n + 1; --k) {
    double inv_len = pow2d(-k);
    for (const auto& t : enum_triples(k)) {
      DyadicInterval Ii = t.i(i), Ip = t.i((i + 1) % 3), Im = t.i((i + 2) % 3);
      int64_t u0 = Ii.first_cell(n), u1 = u0 + Ii.cell_count(n);
      int64_t v0 = Ip.first_cell(n), v1 = v0 + Ip.cell_count(n);
      int64_t w0 = Im.first_cell(n), w1 = w0 + Im.cell_count(n);
      double term = 0.0;
      for (int64_t u = u0; u < u1; ++u) {
        int hu = rademacher_sign_on_cell(k, static_cast<uint64_t>(u), n);
        for (int64_t vv = v0; vv < v1; ++vv) {
          int hv = rademacher_sign_on_cell(k, static_cast<uint64_t>(vv), n);
          double av = A.at(u, vv) * hu * hv;
          if (av == 0.0) continue;
          for (int64_t ww = w0; ww < w1; ++ww) {
            int hw = rademacher_sign_on_cell(k, static_cast<uint64_t>(ww), n);
            term += av * B.at(vv, ww) * hw * C.at(ww, u);
          }
        }
      }
      total += eps.at(t) * inv_len * term * w;
    }
  }
  return total;
}

double eval_form_integral(const GridFunction2D& f0, const GridFunction2D& f1,
                          const GridFunction2D& f2, const EpsilonAssignment& eps) {
  check_resolutions(f0, f1, f2);
  int n = f0.n;
  int64_t side = f0.side();
  double total = 0.0;
  double w = pow2d(-3 * n);
  for (int64_t x1 = 0; x1 < side; ++x1) {
    for (int64_t x2 = 0; x2 < side; ++x2) {
      double a = f0.at(x1, x2);
      if (a == 0.0) continue;
      for (int64_t x0 = 0; x0 < side; ++x0) {
        double prod = a * f1.at(x2, x0) * f2.at(x0, x1);
        if (prod == 0.0) continue;
        int64_t s = x0 ^ x1 ^ x2;
        double kernel = 0.0;
        for (int k = 0; k >= -n + 1; --k) {
          if ((s >> (n + k)) != 0) continue;  // triple constraint at scale k
          int r = rademacher_sign_on_cell(k, static_cast<uint64_t>(s), n);
          IntervalTriple t{k, x0 >> (n + k), x2 >> (n + k)};
          kernel += eps.at(t) * pow2d(-k) * r;
        }
        total += prod * kernel * w;
      }
    }
  }
  return total;
}

double eval_lambda_bitile_at_freq(const Bitile& P, int64_t freq,
                                  const GridFunction2D& f0,
                                  const GridFunction2D& f1,
                                  const GridFunction2D& f2) {
  check_resolutions(f0, f1, f2);
  int n = f0.n;
  require(P.k >= -n && P.k <= 0, "bitile outside resolution range");
  require(P.omega().contains_value(freq), "frequency outside the bitile band");
  if (P.k == -n) return 0.0;  // the two half terms cancel on cell-constant data
  DyadicInterval I0 = P.i0(), I1 = P.i1(), I2 = P.i2();
  int64_t a0 = I0.first_cell(n), a1 = a0 + I0.cell_count(n);
  int64_t b0 = I2.first_cell(n), b1 = b0 + I2.cell_count(n);
  double w = pow2d(-4 * n);
  double scale = 2.0 * pow2d(-2 * P.k);  // 2 |I1|^{-2}
  bool high = freq >= pow2(n);           // character not cell-constant: zero term
  double total = 0.0;
  for (int j : {+1, -1}) {
    if (high) continue;
    DyadicInterval I1j = I1.half(j);
    int64_t c0 = I1j.first_cell(n), c1 = c0 + I1j.cell_count(n);
    // u(y) = sum_{x' in I1^j} w(x') f0(x', y), y in I2
    double term = 0.0;
    for (int64_t y = b0; y < b1; ++y) {
      double u = 0.0;
      for (int64_t xp = c0; xp < c1; ++xp)
        u += walsh_sign_on_cell(static_cast<uint64_t>(freq),
                                static_cast<uint64_t>(xp), n) *
             f0.at(xp, y);
      if (u == 0.0) continue;
      int hy = rademacher_sign_on_cell(P.k, static_cast<uint64_t>(y), n);
      for (int64_t z = a0; z < a1; ++z) {
        double f1v = f1.at(y, z);
        if (f1v == 0.0) continue;
        int hz = rademacher_sign_on_cell(P.k, static_cast<uint64_t>(z), n);
        double tail = 0.0;
        for (int64_t x = c0; x < c1; ++x)
          tail += f2.at(z, x) * walsh_sign_on_cell(static_cast<uint64_t>(freq),
                                                   static_cast<uint64_t>(x), n);
        term += u * hy * f1v * hz * tail;
      }
    }
    total += j * scale * term * w;
  }
  return total;
}

double eval_lambda_bitile(const Bitile& P, const GridFunction2D& f0,
                          const GridFunction2D& f1, const GridFunction2D& f2) {
  int64_t l = P.fpos << (1 - P.k);  // left endpoint of omega1
  return eval_lambda_bitile_at_freq(P, l, f0, f1, f2);
}

double eval_form_bitile_sum(const GridFunction2D& f0, const GridFunction2D& f1,
                            const GridFunction2D& f2,
                            const EpsilonAssignment& eps) {
  check_resolutions(f0, f1, f2);
  return eval_form_over_collection(enum_bitiles(f0.n), f0, f1, f2, eps);
}

double eval_form_over_collection(const std::vector<Bitile>& coll,
                                 const GridFunction2D& f0,
                                 const GridFunction2D& f1,
                                 const GridFunction2D& f2,
                                 const EpsilonAssignment& eps) {
  double total = 0.0;
  for (const auto& P : coll) {
    double e = eps.at(P.triple());
    if (e == 0.0) continue;
    total += e * eval_lambda_bitile(P, f0, f1, f2);
  }
  return total;
}

double eval_form_abs_max(const GridFunction2D& f0, const GridFunction2D& f1,
                         const GridFunction2D& f2) {
  check_resolutions(f0, f1, f2);
  int n = f0.n;
  double total = 0.0;
  double w = pow2d(-3 * n);
  for (int k = 0; k >= -n + 1; --k) {
    double inv_len = pow2d(-k);
    for (const auto& t : enum_triples(k)) {
      DyadicInterval I1 = t.i(1), I2 = t.i(2), I0 = t.i(0);
      int64_t u0 = I1.first_cell(n), u1 = u0 + I1.cell_count(n);
      int64_t v0 = I2.first_cell(n), v1 = v0 + I2.cell_count(n);
      int64_t w0 = I0.first_cell(n), w1 = w0 + I0.cell_count(n);
      double term = 0.0;
      for (int64_t u = u0; u < u1; ++u) {
        int hu = rademacher_sign_on_cell(k, static_cast<uint64_t>(u), n);
        for (int64_t vv = v0; vv < v1; ++vv) {
          double av = f0.at(u, vv) * hu *
                      rademacher_sign_on_cell(k, static_cast<uint64_t>(vv), n);
          if (av == 0.0) continue;
          for (int64_t ww = w0; ww < w1; ++ww)
            term += av * f1.at(vv, ww) *
                    rademacher_sign_on_cell(k, static_cast<uint64_t>(ww), n) *
                    f2.at(ww, u);
        }
      }
      total += std::abs(inv_len * term * w);
    }
  }
  return total;
}

double kernel_sum(int n, int64_t cell) {
  require(cell >= 0 && cell < pow2(n), "cell outside the unit interval");
  double total = 0.0;
  for (int k = 0; k >= -n + 1; --k) {
    if ((cell >> (n + k)) != 0) continue;  // cell outside [0, 2^k)
    total += pow2d(-k) * rademacher_sign_on_cell(k, static_cast<uint64_t>(cell), n);
  }
  return total;
}

}  // namespace tht
