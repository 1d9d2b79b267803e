#pragma once

#include <optional>
#include <random>

#include "wflab/grid.hpp"

namespace wflab {

// Littlewood-Paley partition of unity built from a radial low-pass
// profile psi_0 with psi_0 = 1 on |xi| <= 1 and psi_0 = 0 on |xi| >= 2.
// Higher blocks telescope, psi_j(xi) = psi_0(2^-j xi) - psi_0(2^{1-j} xi),
// so block j lives on the annulus 2^{j-1} <= |xi| <= 2^{j+1} and
// sum_{j<=J} psi_j(xi) = psi_0(2^-J xi).
//
// The transition of psi_0 on [1,2] is a fixed quintic smoothstep. All
// norm estimators below are grid-truncated at the Nyquist scale and
// report how many dyadic scales they actually resolved.
struct DyadicPartition {
  int j_max = 0;

  explicit DyadicPartition(int j_max_) : j_max(j_max_) {
    if (j_max < 0) throw precondition_error("DyadicPartition: j_max < 0");
  }

  static double psi0(double r) {
    r = std::fabs(r);
    if (r <= 1.0) return 1.0;
    if (r >= 2.0) return 0.0;
    return 1.0 - smoothstep5(r - 1.0);
  }

  double psi(int j, double r) const {
    if (j < 0) throw precondition_error("psi: j < 0");
    r = std::fabs(r);
    if (j == 0) return psi0(r);
    return psi0(std::ldexp(r, -j)) - psi0(std::ldexp(r, 1 - j));
  }

  // Largest block fully resolved by the grid: block j needs the whole
  // annulus up to 2^{j+1} below Nyquist.
  static int resolvable_j_max(const GridDesc& g) {
    int j = int(std::floor(std::log2(g.min_nyquist()))) - 1;
    return std::max(j, 0);
  }
  static DyadicPartition for_grid(const GridDesc& g) {
    return DyadicPartition(resolvable_j_max(g));
  }
};

struct DyadicDecomposition {
  GridDesc grid;
  std::vector<Field> blocks;

  Field reconstruct() const {
    Field sum(grid);
    for (const auto& b : blocks)
      for (std::size_t i = 0; i < sum.size(); ++i) sum.v[i] += b.v[i];
    return sum;
  }
};

inline DyadicDecomposition decompose(const Field& f, const DyadicPartition& part) {
  const auto& g = f.grid;
  if (part.j_max > DyadicPartition::resolvable_j_max(g))
    throw precondition_error("decompose: grid too coarse for requested j_max (raise n or lower j_max)");
  auto spectrum = fft_forward(f);
  DyadicDecomposition dec{g, {}};
  dec.blocks.reserve(std::size_t(part.j_max) + 1);
  std::vector<std::size_t> idx(g.dim());
  std::vector<double> radii(spectrum.size());
  for (std::size_t i = 0; i < spectrum.size(); ++i) {
    g.unflatten(i, idx.data());
    radii[i] = freq_norm(g, idx.data());
  }
  for (int j = 0; j <= part.j_max; ++j) {
    std::vector<cplx> a(spectrum.size());
    for (std::size_t i = 0; i < spectrum.size(); ++i) a[i] = spectrum[i] * part.psi(j, radii[i]);
    dec.blocks.push_back(ifft_real(std::move(a), g));
  }
  return dec;
}

struct NormEstimate {
  double value = 0.0;
  int resolved_scales = 0;  // dyadic blocks the grid supported
};

// Truncated Zygmund-norm estimator max_j 2^{j tau} sup|f_j| over the
// blocks the grid resolves.
inline NormEstimate zygmund_norm(const Field& f, double tau) {
  auto part = DyadicPartition::for_grid(f.grid);
  if (part.j_max + 1 < 3)
    throw precondition_error("zygmund_norm: fewer than 3 resolvable dyadic scales");
  auto dec = decompose(f, part);
  NormEstimate est;
  est.resolved_scales = part.j_max + 1;
  for (int j = 0; j <= part.j_max; ++j)
    est.value = std::max(est.value, dec.blocks[std::size_t(j)].max_abs() * std::pow(2.0, tau * j));
  return est;
}

namespace detail {
// sup over grid pairs of |g(x)-g(y)| / dist(x,y)^theta. Exhaustive in
// 1D; in higher dimensions sampled along axis lines plus a seeded
// random pair set (documented estimator, not exact).
inline double holder_quotient(const Field& f, double theta) {
  const auto& g = f.grid;
  double best = 0.0;
  if (g.dim() == 1) {
    const std::size_t n = g.n[0];
    const double L = g.period[0];
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        double d = periodic_dist(g.coord(0, i), g.coord(0, j), L);
        if (d <= 0.0) continue;
        best = std::max(best, std::fabs(f.v[i] - f.v[j]) / std::pow(d, theta));
      }
    return best;
  }
  std::vector<std::size_t> idx(g.dim());
  std::mt19937_64 rng(0x5eedull);
  std::uniform_int_distribution<std::size_t> pick(0, f.size() - 1);
  auto coord_dist = [&](std::size_t a, std::size_t b) {
    std::vector<std::size_t> ia(g.dim()), ib(g.dim());
    g.unflatten(a, ia.data());
    g.unflatten(b, ib.data());
    double s = 0.0;
    for (std::size_t ax = 0; ax < g.dim(); ++ax)
      s += sqr(periodic_dist(g.coord(ax, ia[ax]), g.coord(ax, ib[ax]), g.period[ax]));
    return std::sqrt(s);
  };
  for (std::size_t trial = 0; trial < 8 * f.size(); ++trial) {
    std::size_t a = pick(rng), b = pick(rng);
    if (a == b) continue;
    double d = coord_dist(a, b);
    if (d <= 0.0) continue;
    best = std::max(best, std::fabs(f.v[a] - f.v[b]) / std::pow(d, theta));
  }
  return best;
}
}  // namespace detail

// Finite-difference Hoelder-norm estimator for tau in (0,2):
// sup-norms of f (and of the spectral derivative when tau >= 1) plus the
// top difference quotient.
inline NormEstimate holder_norm(const Field& f, double tau) {
  if (tau <= 0.0 || tau >= 2.0) throw precondition_error("holder_norm: tau outside (0,2)");
  NormEstimate est;
  est.resolved_scales = DyadicPartition::resolvable_j_max(f.grid) + 1;
  if (tau < 1.0) {
    est.value = f.max_abs() + detail::holder_quotient(f, tau);
  } else {
    Field df = spectral_derivative(f, 0);
    double sup_grad = df.max_abs();
    for (std::size_t a = 1; a < f.grid.dim(); ++a)
      sup_grad = std::max(sup_grad, spectral_derivative(f, a).max_abs());
    est.value = f.max_abs() + sup_grad + detail::holder_quotient(df, tau - 1.0);
  }
  return est;
}

// One axis of a lacunary cosine series a * sum_j 2^{-j tau} cos(2^j u + theta_j),
// u = 2*pi*x/period. Derivatives come from the series itself, never from
// sampled differences, so the regularity certificate is exact.
struct WeierstrassSeries {
  double tau = 0.7;
  double amplitude = 0.2;
  int depth = 8;
  double angular_rate = 1.0;  // 2*pi/period
  std::vector<double> phases;  // size depth, phases[j-1] for scale j

  WeierstrassSeries() = default;
  WeierstrassSeries(double tau_, double amp, int J, double period, std::vector<double> phi)
      : tau(tau_), amplitude(amp), depth(J), angular_rate(2.0 * kPi / period), phases(std::move(phi)) {
    if (amp <= 0.0) throw precondition_error("WeierstrassSeries: amplitude must be positive");
    if (J < 1) throw precondition_error("WeierstrassSeries: depth must be >= 1");
    if (phases.size() != std::size_t(J)) phases.assign(std::size_t(J), 0.0);
  }

  double eval(double x) const {
    double u = angular_rate * x, s = 0.0;
    for (int j = 1; j <= depth; ++j)
      s += std::pow(2.0, -tau * j) * std::cos(std::ldexp(u, j) + phases[std::size_t(j - 1)]);
    return amplitude * s;
  }
  double deriv(double x) const {
    double u = angular_rate * x, s = 0.0;
    for (int j = 1; j <= depth; ++j)
      s -= std::pow(2.0, (1.0 - tau) * j) * std::sin(std::ldexp(u, j) + phases[std::size_t(j - 1)]);
    return amplitude * angular_rate * s;
  }
  double deriv2(double x) const {
    double u = angular_rate * x, s = 0.0;
    for (int j = 1; j <= depth; ++j)
      s -= std::pow(2.0, (2.0 - tau) * j) * std::cos(std::ldexp(u, j) + phases[std::size_t(j - 1)]);
    return amplitude * angular_rate * angular_rate * s;
  }
  // sup|W| <= amplitude * sum 2^{-j tau}
  double sup_bound() const {
    double s = 0.0;
    for (int j = 1; j <= depth; ++j) s += std::pow(2.0, -tau * j);
    return amplitude * s;
  }
  // Exact dyadic-block sup coefficient of scale j (unit period).
  double block_coefficient(int j) const {
    if (j < 1 || j > depth) return 0.0;
    return amplitude * std::pow(2.0, -tau * j);
  }
};

struct WeierstrassField {
  Field samples;
  std::vector<WeierstrassSeries> axes;  // one series per grid axis
  std::vector<double> block_coeff;      // per-axis-summed analytic block sups

  // Certified Zygmund-scale content at block j (sum of axis contributions;
  // the cross terms vanish because the synthesis is a sum, not a product).
  double coeff(int j) const {
    return (j >= 1 && j < int(block_coeff.size())) ? block_coeff[std::size_t(j)] : 0.0;
  }
};

// Rough-field synthesis with an exact regularity certificate. Phases
// default to zero; pass a seed for randomized robustness sweeps.
// Dimensions > 1 sum independent per-axis series.
inline WeierstrassField weierstrass_field(double tau, double amplitude, int depth,
                                          const GridDesc& grid,
                                          std::optional<std::uint64_t> seed = std::nullopt) {
  if (depth < 4) throw precondition_error("weierstrass_field: depth must be >= 4");
  for (std::size_t a = 0; a < grid.dim(); ++a) {
    double top_freq = std::ldexp(2.0 * kPi / grid.period[a], depth);
    if (top_freq > grid.nyquist(a))
      throw precondition_error("weierstrass_field: 2^depth exceeds the grid Nyquist frequency");
  }
  std::mt19937_64 rng(seed.value_or(0));
  std::uniform_real_distribution<double> uni(0.0, 2.0 * kPi);
  WeierstrassField wf;
  wf.samples = Field(grid);
  for (std::size_t a = 0; a < grid.dim(); ++a) {
    std::vector<double> phases(std::size_t(depth), 0.0);
    if (seed) for (auto& p : phases) p = uni(rng);
    wf.axes.emplace_back(tau, amplitude, depth, grid.period[a], std::move(phases));
  }
  std::vector<std::size_t> idx(grid.dim());
  for (std::size_t i = 0; i < wf.samples.size(); ++i) {
    grid.unflatten(i, idx.data());
    double s = 0.0;
    for (std::size_t a = 0; a < grid.dim(); ++a) s += wf.axes[a].eval(grid.coord(a, idx[a]));
    wf.samples.v[i] = s;
  }
  wf.block_coeff.assign(std::size_t(depth) + 1, 0.0);
  for (int j = 1; j <= depth; ++j)
    for (std::size_t a = 0; a < grid.dim(); ++a)
      wf.block_coeff[std::size_t(j)] += wf.axes[a].block_coefficient(j);
  return wf;
}

}  // namespace wflab
