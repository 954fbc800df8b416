#include "tht/grid.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>

namespace tht {

GridFunction1D GridFunction1D::zeros(int n, int width_log2) {
  require(n >= 0 && width_log2 >= 0 && n + width_log2 <= 26, "1d grid too large");
  GridFunction1D g;
  g.n = n;
  g.width_log2 = width_log2;
  g.v.assign(static_cast<size_t>(int64_t{1} << (n + width_log2)), 0.0);
  return g;
}

GridFunction1D GridFunction1D::constant(int n, double value, int width_log2) {
  GridFunction1D g = zeros(n, width_log2);
  std::fill(g.v.begin(), g.v.end(), value);
  return g;
}

double GridFunction1D::integral() const {
  double s = 0;
  for (double x : v) s += x;
  return s * cell_measure();
}

double GridFunction1D::norm2_sq() const {
  double s = 0;
  for (double x : v) s += x * x;
  return s * cell_measure();
}

double GridFunction1D::norm_lp(double p) const {
  double s = 0;
  for (double x : v) s += std::pow(std::abs(x), p);
  return std::pow(s * cell_measure(), 1.0 / p);
}

double GridFunction1D::norm_inf() const {
  double s = 0;
  for (double x : v) s = std::max(s, std::abs(x));
  return s;
}

double GridFunction1D::inner(const GridFunction1D& o) const {
  require(n == o.n && width_log2 == o.width_log2, "1d grid mismatch");
  double s = 0;
  for (size_t i = 0; i < v.size(); ++i) s += v[i] * o.v[i];
  return s * cell_measure();
}

GridFunction2D GridFunction2D::zeros(int n) {
  require(n >= 0 && n <= 13, "2d grid too large");
  GridFunction2D g;
  g.n = n;
  g.v.assign(static_cast<size_t>(int64_t{1} << (2 * n)), 0.0);
  return g;
}

GridFunction2D GridFunction2D::constant(int n, double value) {
  GridFunction2D g = zeros(n);
  std::fill(g.v.begin(), g.v.end(), value);
  return g;
}

double GridFunction2D::integral() const {
  double s = 0;
  for (double x : v) s += x;
  return s * cell_measure();
}

double GridFunction2D::norm2_sq() const {
  double s = 0;
  for (double x : v) s += x * x;
  return s * cell_measure();
}

double GridFunction2D::norm_lp(double p) const {
  double s = 0;
  for (double x : v) s += std::pow(std::abs(x), p);
  return std::pow(s * cell_measure(), 1.0 / p);
}

double GridFunction2D::norm_inf() const {
  double s = 0;
  for (double x : v) s = std::max(s, std::abs(x));
  return s;
}

double GridFunction2D::inner(const GridFunction2D& o) const {
  require(n == o.n, "2d grid mismatch");
  double s = 0;
  for (size_t i = 0; i < v.size(); ++i) s += v[i] * o.v[i];
  return s * cell_measure();
}

double GridFunction2D::norm2_sq_on(const DyadicInterval& br,
                                   const DyadicInterval& bc) const {
  double s = 0;
  int64_t r0 = br.first_cell(n), r1 = r0 + br.cell_count(n);
  int64_t c0 = bc.first_cell(n), c1 = c0 + bc.cell_count(n);
  for (int64_t r = r0; r < r1; ++r)
    for (int64_t c = c0; c < c1; ++c) s += at(r, c) * at(r, c);
  return s * cell_measure();
}

GridFunction2D& GridFunction2D::scale(double s) {
  for (double& x : v) x *= s;
  return *this;
}

GridFunction2D operator-(const GridFunction2D& a, const GridFunction2D& b) {
  require(a.n == b.n, "2d grid mismatch");
  GridFunction2D out = a;
  for (size_t i = 0; i < out.v.size(); ++i) out.v[i] -= b.v[i];
  return out;
}

GridFunction2D operator+(const GridFunction2D& a, const GridFunction2D& b) {
  require(a.n == b.n, "2d grid mismatch");
  GridFunction2D out = a;
  for (size_t i = 0; i < out.v.size(); ++i) out.v[i] += b.v[i];
  return out;
}

double max_abs_diff(const GridFunction2D& a, const GridFunction2D& b) {
  require(a.n == b.n, "2d grid mismatch");
  double s = 0;
  for (size_t i = 0; i < a.v.size(); ++i)
    s = std::max(s, std::abs(a.v[i] - b.v[i]));
  return s;
}

Mask2D Mask2D::empty(int n) {
  Mask2D m;
  m.n = n;
  m.m.assign(static_cast<size_t>(int64_t{1} << (2 * n)), 0);
  return m;
}

Mask2D Mask2D::full(int n) {
  Mask2D m = empty(n);
  std::fill(m.m.begin(), m.m.end(), 1);
  return m;
}

int64_t Mask2D::count() const {
  int64_t c = 0;
  for (uint8_t x : m) c += x;
  return c;
}

bool Mask2D::subset_of(const Mask2D& o) const {
  require(n == o.n, "mask mismatch");
  for (size_t i = 0; i < m.size(); ++i)
    if (m[i] && !o.m[i]) return false;
  return true;
}

void parallel_for(int64_t count, int threads, const std::function<void(int64_t)>& fn) {
  if (threads <= 1 || count <= 1) {
    for (int64_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::atomic<int64_t> next{0};
  int workers = static_cast<int>(std::min<int64_t>(threads, count));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        int64_t i = next.fetch_add(1);
        if (i >= count) return;
        fn(i);
      }
    });
  }
  for (auto& t : pool) t.join();
}

int default_thread_count() {
  if (const char* env = std::getenv("THT_THREADS")) {
    int t = std::atoi(env);
    if (t >= 1) return t;
  }
  return 1;
}

}  // namespace tht
