#pragma once

// Shared generators and helpers for the test binaries. Every generator is
// seeded explicitly so failures reproduce.

#include <complex>
#include <random>
#include <string>

#include "wsurf/canonical.hpp"
#include "wsurf/holo.hpp"
#include "wsurf/motions.hpp"
#include "wsurf/surface.hpp"
#include "wsurf/weier.hpp"

namespace wsurf::test {

inline std::string data_path(const std::string& name) { return std::string(WSURF_TEST_DATA) + "/" + name; }

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  cd complex(double r) { return {real(-r, r), real(-r, r)}; }
  cd point(double u0, double u1, double v0, double v1) { return {real(u0, u1), real(v0, v1)}; }

  /// c0 + c1 t + c2 t^2 with |Re c|, |Im c| <= r (c0 shifted by `base`).
  Expr poly(cd base, double r, int degree = 2) {
    Expr e = Expr::literal(base + complex(r));
    for (int k = 1; k <= degree; ++k) e = e + Expr::literal(complex(r)) * Expr::power(Expr::variable(), k);
    return e;
  }

  Mat2 sl2(double r = 0.6) {
    Mat2 b;
    b << 1.0 + complex(r), complex(r), complex(r), 1.0 + complex(r);
    return normalize_sl2(b);
  }

  RVec4 vec4(double r) { return RVec4(real(-r, r), real(-r, r), real(-r, r), real(-r, r)); }
  CVec4 cvec4(double r) {
    CVec4 v;
    for (int k = 0; k < 4; ++k) v(k) = complex(r);
    return v;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

inline GridSpec square(double lo, double hi, int n) { return GridSpec{lo, hi, lo, hi, n, n}; }

inline double rel(double a, double b) { return std::abs(a - b) / (1.0 + std::abs(b)); }

}  // namespace wsurf::test
