#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace wflab {

// Error taxonomy maps onto CLI exit codes: precondition -> 1,
// acceptance -> 2, numerical diagnostics -> 3.
struct precondition_error : std::runtime_error {
  explicit precondition_error(const std::string& msg) : std::runtime_error(msg) {}
};
struct numerical_error : std::runtime_error {
  explicit numerical_error(const std::string& msg) : std::runtime_error(msg) {}
};
struct acceptance_error : std::runtime_error {
  explicit acceptance_error(const std::string& msg) : std::runtime_error(msg) {}
};

inline constexpr double kPi = 3.14159265358979323846;

// Quintic smoothstep on [0,1]; C^2 with vanishing first and second
// derivatives at both ends.
inline double smoothstep5(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  return t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
}

inline double sqr(double x) { return x * x; }

inline double periodic_dist(double a, double b, double period) {
  double d = std::fmod(std::fabs(a - b), period);
  return std::min(d, period - d);
}

struct LinFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  std::size_t n = 0;
};

// Ordinary least squares y = intercept + slope*x.
inline LinFit linear_fit(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 2)
    throw precondition_error("linear_fit: need >= 2 matched samples");
  const std::size_t n = xs.size();
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < n; ++i) { sx += xs[i]; sy += ys[i]; }
  const double mx = sx / double(n), my = sy / double(n);
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx == 0.0) throw precondition_error("linear_fit: degenerate abscissae");
  LinFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.r2 = (syy == 0.0) ? 1.0 : (sxy * sxy) / (sxx * syy);
  f.n = n;
  return f;
}

// FNV-1a, used for config/metric hashing of cache keys.
inline std::uint64_t fnv1a64(const void* data, std::size_t len, std::uint64_t h = 0xcbf29ce484222325ull) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ull;
  }
  return h;
}

inline std::uint64_t fnv1a64(const std::string& s, std::uint64_t h = 0xcbf29ce484222325ull) {
  return fnv1a64(s.data(), s.size(), h);
}

inline std::string hash_hex(std::uint64_t h) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) { out[std::size_t(i)] = digits[h & 0xf]; h >>= 4; }
  return out;
}

}  // namespace wflab
