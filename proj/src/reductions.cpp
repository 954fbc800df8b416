#include "tht/reductions.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace tht {

GridFunction1D haar_multiplier(const GridFunction1D& f,
                               const IntervalCoefficients& eps) {
  require(f.width_log2 == 0, "multiplier acts on unit-interval data");
  int n = f.n;
  GridFunction1D out = GridFunction1D::zeros(n);
  for (int k = 0; k >= -n + 1; --k) {
    int64_t half = int64_t{1} << (n + k - 1);
    for (int64_t pos = 0; pos < pow2(-k); ++pos) {
      DyadicInterval I{k, pos};
      double e = eps.at(I);
      if (e == 0.0) continue;
      int64_t c0 = I.first_cell(n);
      double coef = 0.0;
      for (int64_t c = 0; c < 2 * half; ++c)
        coef += (c < half ? 1.0 : -1.0) * f.at(c0 + c);
      coef *= pow2d(-n);  // <f, h_I>
      double w = e * pow2d(-k) * coef;
      for (int64_t c = 0; c < 2 * half; ++c)
        out.at(c0 + c) += (c < half ? 1.0 : -1.0) * w;
    }
  }
  return out;
}

GridFunction1D modulate(const GridFunction1D& f, int64_t freq) {
  require(f.width_log2 == 0, "modulation acts on unit-interval data");
  require(freq >= 0 && freq < pow2(f.n), "frequency outside the grid spectrum");
  GridFunction1D out = f;
  for (int64_t c = 0; c < f.cells(); ++c)
    out.at(c) = f.at(c) * walsh_sign_on_cell(static_cast<uint64_t>(freq),
                                             static_cast<uint64_t>(c), f.n);
  return out;
}

GridFunction1D max_mod_haar(const GridFunction1D& f, const IntervalCoefficients& eps,
                            const ChoiceFunction& N) {
  require(N.n == f.n, "choice function resolution mismatch");
  std::map<int64_t, GridFunction1D> transformed;
  GridFunction1D out = GridFunction1D::zeros(f.n);
  for (int64_t c = 0; c < f.cells(); ++c) {
    int64_t freq = N.at(c);
    auto it = transformed.find(freq);
    if (it == transformed.end())
      it = transformed.emplace(freq, haar_multiplier(modulate(f, freq), eps)).first;
    out.at(c) = walsh_sign_on_cell(static_cast<uint64_t>(freq),
                                   static_cast<uint64_t>(c), f.n) *
                it->second.at(c);
  }
  return out;
}

MaxModSup max_mod_haar_sup(const GridFunction1D& f, const IntervalCoefficients& eps) {
  int n = f.n;
  MaxModSup res;
  res.sup = GridFunction1D::zeros(n);
  res.argmax = ChoiceFunction::constant(n, 0);
  for (int64_t freq = 0; freq < pow2(n); ++freq) {
    GridFunction1D g = haar_multiplier(modulate(f, freq), eps);
    for (int64_t c = 0; c < f.cells(); ++c) {
      double v = std::abs(g.at(c));
      if (v > res.sup.at(c)) {
        res.sup.at(c) = v;
        res.argmax.value[static_cast<size_t>(c)] = freq;
      }
    }
  }
  return res;
}

TriangularTriple build_carleson_triple(const GridFunction1D& f,
                                       const GridFunction1D& g,
                                       const ChoiceFunction& N) {
  require(f.n == g.n && f.n == N.n, "resolution mismatch");
  require(f.width_log2 == 0 && g.width_log2 == 0, "unit-interval data expected");
  int n = f.n;
  int64_t side = int64_t{1} << n;
  TriangularTriple t{GridFunction2D::zeros(n), GridFunction2D::zeros(n),
                     GridFunction2D::zeros(n)};
  for (int64_t x1 = 0; x1 < side; ++x1)
    for (int64_t x2 = 0; x2 < side; ++x2) t.f0.at(x1, x2) = f.at(x1 ^ x2);
  for (int64_t x0 = 0; x0 < side; ++x0) {
    double gv = g.at(x0);
    double root = std::sqrt(std::abs(gv));
    double signed_root = (gv > 0 ? 1.0 : (gv < 0 ? -1.0 : 0.0)) * root;
    uint64_t freq = static_cast<uint64_t>(N.at(x0));
    for (int64_t x2 = 0; x2 < side; ++x2)
      t.f1.at(x2, x0) =
          signed_root * walsh_sign_on_cell(freq, static_cast<uint64_t>(x2), n);
    for (int64_t x1 = 0; x1 < side; ++x1)
      t.f2.at(x0, x1) = root * walsh_sign_on_cell(
                                   freq, static_cast<uint64_t>(x1 ^ x0), n);
  }
  return t;
}

double carleson_pairing(const GridFunction1D& f, const GridFunction1D& g,
                        const IntervalCoefficients& eps, const ChoiceFunction& N) {
  GridFunction1D m = max_mod_haar(f, eps, N);
  return m.inner(g);
}

TriangularTriple build_bht_triple(const GridFunction1D& f, const GridFunction1D& g,
                                  const GridFunction1D& h, int L) {
  require(L >= 1, "shift exponent must be positive");
  require(f.n == g.n && g.n == h.n, "resolution mismatch");
  require(f.width_log2 == 0 && g.width_log2 == 0 && h.width_log2 == 0,
          "unit-interval data expected");
  int nin = f.n;
  int n = nin + L;
  require(n <= 12, "combined resolution too large");
  int64_t side = int64_t{1} << n;
  TriangularTriple t{GridFunction2D::zeros(n), GridFunction2D::zeros(n),
                     GridFunction2D::zeros(n)};
  // arguments computed at the fine resolution n + L, then truncated to the
  // input cells
  for (int64_t r = 0; r < side; ++r) {
    for (int64_t c = 0; c < side; ++c) {
      int64_t arg0 = ((r << L) ^ (c << L) ^ c) >> (2 * L);
      t.f0.at(r, c) = f.at(arg0);  // r = x1, c = x2
      int64_t arg1 = (r ^ (c << L)) >> (2 * L);
      t.f1.at(r, c) = h.at(arg1);  // r = x2, c = x0
      int64_t arg2 = ((r << L) ^ r ^ c) >> (2 * L);
      t.f2.at(r, c) = g.at(arg2);  // r = x0, c = x1
    }
  }
  return t;
}

namespace {

double packet_inner(const GridFunction1D& f, const DyadicInterval& I, int64_t freq) {
  if (freq >= pow2(f.n)) return 0.0;
  int64_t c0 = I.first_cell(f.n), cnt = I.cell_count(f.n);
  double s = 0.0;
  for (int64_t c = 0; c < cnt; ++c)
    s += f.at(c0 + c) * walsh_sign_on_cell(static_cast<uint64_t>(freq),
                                           static_cast<uint64_t>(c0 + c), f.n);
  return s * pow2d(-f.n);
}

}  // namespace

double eval_bht_expanded(const GridFunction1D& f, const GridFunction1D& g,
                         const GridFunction1D& h, int L,
                         const IntervalCoefficients& eps) {
  require(L >= 1, "shift exponent must be positive");
  int nin = f.n;
  double total = 0.0;
  for (int k = 0; k >= -nin; --k) {
    double weight = pow2d(-2 * k);
    for (int64_t pos = 0; pos < pow2(-k); ++pos) {
      DyadicInterval I{k, pos};
      double e = eps.at(I);
      if (e == 0.0) continue;
      double acc = 0.0;
      for (int64_t m = 0; m < pow2(nin + k); ++m) {
        int64_t nuf = (m ^ 1) << (-k);
        if (nuf >= pow2(nin)) continue;
        double cf = packet_inner(f, I, nuf);
        if (cf == 0.0) continue;
        for (int64_t nn = 0; nn < pow2(L); ++nn) {
          int64_t nug = ((m << L) ^ nn) << (-k);
          int64_t nuh = ((m << L) ^ nn ^ m ^ 1) << (-k);
          if (nug >= pow2(nin) || nuh >= pow2(nin)) continue;
          acc += cf * packet_inner(g, I, nug) * packet_inner(h, I, nuh);
        }
      }
      total += e * weight * acc;
    }
  }
  return total;
}

double eval_bht_projection_form(const GridFunction1D& f, const GridFunction1D& g,
                                const GridFunction1D& h, int L,
                                const IntervalCoefficients& eps) {
  require(L >= 1, "shift exponent must be positive");
  int nin = f.n;
  double total = 0.0;
  for (int k = 0; k >= -nin; --k) {
    for (int64_t pos = 0; pos < pow2(-k); ++pos) {
      DyadicInterval I{k, pos};
      double e = eps.at(I);
      if (e == 0.0) continue;
      for (int64_t m = 0; m < pow2(nin + k); ++m) {
        DyadicInterval wf = freq_interval(-k, m ^ 1);
        DyadicInterval wg = freq_interval(L - k, m);
        DyadicInterval wh = freq_interval(L - k, ((m << L) ^ m ^ 1) >> L);
        GridFunction1D pf = one_dim_projection(f, I, wf);
        GridFunction1D pg = one_dim_projection(g, I, wg);
        GridFunction1D ph = one_dim_projection(h, I, wh);
        double integral = 0.0;
        int64_t c0 = I.first_cell(nin), cnt = I.cell_count(nin);
        for (int64_t c = 0; c < cnt; ++c)
          integral += pf.at(c0 + c) * pg.at(c0 + c) * ph.at(c0 + c);
        total += e * integral * pow2d(-nin);
      }
    }
  }
  return total;
}

double endpoint_identity_residual(int n, uint64_t seed) {
  Rng rng(seed);
  GridFunction1D f = GridFunction1D::zeros(n), g = GridFunction1D::zeros(n),
                 h = GridFunction1D::zeros(n);
  for (int64_t c = 0; c < f.cells(); ++c) {
    f.at(c) = rng.uniform_pm1();
    g.at(c) = rng.uniform_pm1();
    h.at(c) = rng.uniform_pm1();
  }
  IntervalCoefficients coef = IntervalCoefficients::random_uniform(rng.next_u64());
  EpsilonAssignment eps = EpsilonAssignment::per_i0(coef);
  int64_t side = int64_t{1} << n;
  GridFunction2D f0 = GridFunction2D::zeros(n), f1 = GridFunction2D::zeros(n),
                 f2 = GridFunction2D::zeros(n);
  for (int64_t r = 0; r < side; ++r)
    for (int64_t c = 0; c < side; ++c) {
      f0.at(r, c) = f.at(r ^ c);
      f1.at(r, c) = h.at(c);  // rows x2, cols x0
      f2.at(r, c) = g.at(r);  // rows x0, cols x1
    }
  double lhs = eval_form_trace(f0, f1, f2, eps, 1);
  GridFunction1D gh = GridFunction1D::zeros(n);
  for (int64_t c = 0; c < side; ++c) gh.at(c) = g.at(c) * h.at(c);
  double rhs = f.inner(haar_multiplier(gh, coef));
  return rel_residual(lhs, rhs);
}

double endpoint_kappa(int n) {
  require(n >= 1 && n <= 16, "resolution out of range");
  // bump coefficients: <phi, h_I> = 1 exactly on the n ancestors of the
  // first cell, 0 elsewhere, so sign choices elsewhere are irrelevant
  int64_t cells = pow2(n);
  double best = 0.0;
  std::vector<double> g(static_cast<size_t>(cells));
  for (int64_t signs = 0; signs < pow2(n); ++signs) {
    std::fill(g.begin(), g.end(), 0.0);
    for (int j = 1; j <= n; ++j) {
      // interval [0, 2^{j-n}), weight eps * |I|^{-1} = eps * 2^{n-j}
      double w = ((signs >> (j - 1)) & 1 ? -1.0 : 1.0) * pow2d(n - j);
      int64_t half = int64_t{1} << (j - 1);
      for (int64_t c = 0; c < 2 * half; ++c) g[static_cast<size_t>(c)] += (c < half ? w : -w);
    }
    double norm1 = 0.0;
    for (double x : g) norm1 += std::abs(x);
    best = std::max(best, norm1 * pow2d(-n));
  }
  return best;
}

EndpointReport endpoint_demo(int n_max, uint64_t seed) {
  EndpointReport rep;
  rep.n_min = 2;
  rep.n_max = n_max;
  rep.strictly_increasing = true;
  for (int n = rep.n_min; n <= n_max; ++n) {
    rep.kappa.push_back(endpoint_kappa(n));
    size_t m = rep.kappa.size();
    if (m >= 2 && rep.kappa[m - 1] <= rep.kappa[m - 2]) rep.strictly_increasing = false;
  }
  // least-squares slope of kappa against n
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int count = static_cast<int>(rep.kappa.size());
  for (int i = 0; i < count; ++i) {
    double x = rep.n_min + i, y = rep.kappa[static_cast<size_t>(i)];
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  rep.fitted_slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
  Rng rng(seed);
  for (int t = 0; t < 8; ++t)
    rep.max_identity_residual =
        std::max(rep.max_identity_residual, endpoint_identity_residual(4, rng.next_u64()));
  return rep;
}

}  // namespace tht
