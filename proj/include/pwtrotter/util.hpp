#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace pwtrotter {

// Deterministic pairwise summation. The reduction tree depends only on the
// element order, never on thread count or chunking, so repeated runs of the
// same configuration produce bit-identical totals.
inline double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 8) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.subspan(0, half)) + pairwise_sum(v.subspan(half));
}

inline std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / i;
  return r;
}

// Key used to group coefficients that are equal after rounding to a fixed
// number of decimal digits (12 by default).
inline std::int64_t rounded_key(double x, int digits = 12) {
  const double scaled = x * std::pow(10.0, digits);
  if (!(std::abs(scaled) < 9.0e18))
    throw std::invalid_argument("rounded_key: value too large to round at requested precision");
  return static_cast<std::int64_t>(std::llround(scaled));
}

class WallTimer {
 public:
  WallTimer() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

// Peak resident set size of the current process in bytes (Linux; returns 0
// where /proc is unavailable).
inline long long peak_rss_bytes() {
  std::ifstream status("/proc/self/status");
  std::string word;
  while (status >> word) {
    if (word == "VmHWM:") {
      long long kib = 0;
      status >> kib;
      return kib * 1024;
    }
  }
  return 0;
}

}  // namespace pwtrotter
