#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace tht {

class error : public std::runtime_error {
 public:
  explicit error(const std::string& what) : std::runtime_error(what) {}
};

[[noreturn]] inline void fail(const std::string& msg) { throw error(msg); }

inline void require(bool cond, const std::string& msg) {
  if (!cond) fail(msg);
}

inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Counter-based generator: identical streams for identical seeds on every
// platform, which the report determinism guarantee relies on.
class Rng {
 public:
  explicit Rng(uint64_t seed) : ctr_(splitmix64(seed ^ 0x6a09e667f3bcc909ull)) {}

  uint64_t next_u64() { return splitmix64(ctr_++); }
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }
  double uniform_pm1() { return 2.0 * uniform() - 1.0; }
  int sign() { return (next_u64() & 1u) ? 1 : -1; }
  uint64_t below(uint64_t m) { return m ? next_u64() % m : 0; }

 private:
  uint64_t ctr_;
};

// Mixed absolute/relative residual; "residual <= tol" everywhere means this.
inline double rel_residual(double a, double b) {
  return std::abs(a - b) / (1.0 + std::max(std::abs(a), std::abs(b)));
}

inline bool close(double a, double b, double tol = 1e-9) {
  return rel_residual(a, b) <= tol;
}

inline int64_t pow2(int e) {
  require(e >= 0 && e < 62, "pow2 exponent out of range");
  return int64_t{1} << e;
}

inline double pow2d(int e) { return std::ldexp(1.0, e); }

// Runs fn(i) for i in [0, count) on up to `threads` workers. Results must be
// written to per-index slots; reduction order is then caller-controlled.
void parallel_for(int64_t count, int threads, const std::function<void(int64_t)>& fn);

int default_thread_count();

}  // namespace tht
