#pragma once

#include <algorithm>
#include <complex>
#include <mutex>
#include <numeric>
#include <vector>

#include <fftw3.h>

#include "wflab/common.hpp"

namespace wflab {

using cplx = std::complex<double>;

// Uniform periodic grid on a d-torus. Point i along an axis sits at
// i*period/n; the discrete frequencies are 2*pi*k/period with k in
// [-n/2, n/2).
struct GridDesc {
  std::vector<std::size_t> n;
  std::vector<double> period;

  GridDesc() = default;
  GridDesc(std::vector<std::size_t> n_, std::vector<double> period_)
      : n(std::move(n_)), period(std::move(period_)) {
    if (n.size() != period.size() || n.empty())
      throw precondition_error("GridDesc: shape/period rank mismatch");
    for (std::size_t a = 0; a < n.size(); ++a)
      if (n[a] < 2 || period[a] <= 0.0) throw precondition_error("GridDesc: bad axis");
  }
  static GridDesc line(std::size_t n, double period = 2.0 * kPi) { return GridDesc({n}, {period}); }
  static GridDesc square(std::size_t n, double period = 2.0 * kPi) {
    return GridDesc({n, n}, {period, period});
  }

  std::size_t dim() const { return n.size(); }
  std::size_t size() const {
    return std::accumulate(n.begin(), n.end(), std::size_t(1), std::multiplies<>());
  }
  double spacing(std::size_t axis) const { return period[axis] / double(n[axis]); }
  double coord(std::size_t axis, std::size_t i) const { return double(i) * spacing(axis); }
  double cell_volume() const {
    double v = 1.0;
    for (std::size_t a = 0; a < dim(); ++a) v *= spacing(a);
    return v;
  }
  // Signed integer frequency of DFT bin i.
  static long freq_index(std::size_t i, std::size_t n) {
    return (i <= n / 2 - (n % 2 == 0 ? 1 : 0)) ? long(i) : long(i) - long(n);
  }
  double freq(std::size_t axis, std::size_t i) const {
    return 2.0 * kPi * double(freq_index(i, n[axis])) / period[axis];
  }
  double nyquist(std::size_t axis) const { return kPi * double(n[axis]) / period[axis]; }
  double min_nyquist() const {
    double m = nyquist(0);
    for (std::size_t a = 1; a < dim(); ++a) m = std::min(m, nyquist(a));
    return m;
  }
  bool operator==(const GridDesc& o) const { return n == o.n && period == o.period; }

  std::vector<std::size_t> strides() const {
    std::vector<std::size_t> s(dim(), 1);
    for (std::size_t a = dim(); a-- > 1;) s[a - 1] = s[a] * n[a];
    return s;
  }
  void unflatten(std::size_t flat, std::size_t* idx) const {
    for (std::size_t a = dim(); a-- > 0;) {
      idx[a] = flat % n[a];
      flat /= n[a];
    }
  }
};

// Real scalar field sampled on a periodic grid, row-major.
struct Field {
  GridDesc grid;
  std::vector<double> v;

  Field() = default;
  explicit Field(GridDesc g, double fill = 0.0) : grid(std::move(g)), v(grid.size(), fill) {}
  double& operator[](std::size_t i) { return v[i]; }
  double operator[](std::size_t i) const { return v[i]; }
  std::size_t size() const { return v.size(); }

  double max_abs() const {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::fabs(x));
    return m;
  }
  double l2(double cell_vol) const {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s * cell_vol);
  }
};

namespace detail {
inline std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace detail

// In-place complex DFT over an arbitrary-rank row-major array.
// sign = FFTW_FORWARD (-1) or FFTW_BACKWARD (+1); the backward transform
// is normalized by 1/size so forward+backward is the identity.
inline void fft(std::vector<cplx>& a, const std::vector<std::size_t>& shape, int sign) {
  std::size_t total = std::accumulate(shape.begin(), shape.end(), std::size_t(1), std::multiplies<>());
  if (a.size() != total) throw precondition_error("fft: shape/size mismatch");
  std::vector<int> dims(shape.begin(), shape.end());
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(detail::fftw_planner_mutex());
    plan = fftw_plan_dft(int(dims.size()), dims.data(),
                         reinterpret_cast<fftw_complex*>(a.data()),
                         reinterpret_cast<fftw_complex*>(a.data()), sign, FFTW_ESTIMATE);
  }
  if (!plan) throw numerical_error("fft: planner failed");
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(detail::fftw_planner_mutex());
    fftw_destroy_plan(plan);
  }
  if (sign == FFTW_BACKWARD) {
    const double inv = 1.0 / double(total);
    for (auto& z : a) z *= inv;
  }
}

inline std::vector<cplx> fft_forward(const Field& f) {
  std::vector<cplx> a(f.v.begin(), f.v.end());
  fft(a, f.grid.n, FFTW_FORWARD);
  return a;
}

inline Field ifft_real(std::vector<cplx> a, const GridDesc& grid) {
  fft(a, grid.n, FFTW_BACKWARD);
  Field out(grid);
  for (std::size_t i = 0; i < a.size(); ++i) out.v[i] = a[i].real();
  return out;
}

// Spectral partial derivative of given order along one axis.
inline Field spectral_derivative(const Field& f, std::size_t axis, int order = 1) {
  auto a = fft_forward(f);
  const auto& g = f.grid;
  std::vector<std::size_t> idx(g.dim());
  for (std::size_t i = 0; i < a.size(); ++i) {
    g.unflatten(i, idx.data());
    cplx mult = std::pow(cplx(0.0, g.freq(axis, idx[axis])), order);
    // Drop the unmatched Nyquist mode for odd derivative orders.
    if (order % 2 == 1 && g.n[axis] % 2 == 0 && idx[axis] == g.n[axis] / 2) mult = 0.0;
    a[i] *= mult;
  }
  return ifft_real(std::move(a), g);
}

// |xi| of the frequency at flat bin index, physical units.
inline double freq_norm(const GridDesc& g, const std::size_t* idx) {
  double s = 0.0;
  for (std::size_t a = 0; a < g.dim(); ++a) s += sqr(g.freq(a, idx[a]));
  return std::sqrt(s);
}

}  // namespace wflab
