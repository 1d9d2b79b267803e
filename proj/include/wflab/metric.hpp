#pragma once

#include <array>
#include <sstream>

#include "wflab/dyadic.hpp"

namespace wflab {

enum class MetricKind { flat, weierstrass, tabulated };

// Riemannian metric h on the spatial torus, conformally flat:
// h_ij(x) = rho(x)^2 delta_ij with rho = 1 + W and W a synthesized
// rough field (or 1 for flat, or tabulated samples). The companion
// wave operator is d_tt - Lap_h + m^2 on R x Sigma.
//
// Each model carries a regularity certificate: flat is smooth,
// weierstrass(tau) is C^tau (Zygmund-critical "C^{1,1}" when synthesized
// at tau = 2), tabulated regularity is asserted by the caller.
// Uniform positivity min rho >= c0 is checked at construction.
struct MetricModel {
  static constexpr double kMinConformal = 0.2;

  int d = 1;
  MetricKind kind = MetricKind::flat;
  double mass = 1.0;
  std::vector<double> period;

  // weierstrass parameters
  double tau = 0.0;
  double amplitude = 0.0;
  int depth = 0;
  std::uint64_t seed = 0;
  bool seeded = false;
  bool c11_tag = false;  // Zygmund-critical tau=2 synthesis
  std::vector<WeierstrassSeries> series;

  // tabulated conformal factor rho on its own grid
  Field table;
  std::vector<cplx> table_spec;  // precomputed DFT of the table
  double table_tau = 2.0;

  static MetricModel flat_model(int d, double m, double period_per_axis = 2.0 * kPi) {
    MetricModel mm;
    mm.d = check_dim(d);
    mm.kind = MetricKind::flat;
    mm.mass = check_mass(m);
    mm.period.assign(std::size_t(d), period_per_axis);
    return mm;
  }

  static MetricModel weierstrass_model(int d, double tau, double amplitude, int depth,
                                       double m, std::optional<std::uint64_t> seed = std::nullopt,
                                       double period_per_axis = 2.0 * kPi, bool c11 = false) {
    MetricModel mm;
    mm.d = check_dim(d);
    mm.kind = MetricKind::weierstrass;
    mm.mass = check_mass(m);
    mm.period.assign(std::size_t(d), period_per_axis);
    mm.tau = tau;
    mm.amplitude = amplitude;
    mm.depth = depth;
    mm.seeded = seed.has_value();
    mm.seed = seed.value_or(0);
    mm.c11_tag = c11;
    std::mt19937_64 rng(mm.seed);
    std::uniform_real_distribution<double> uni(0.0, 2.0 * kPi);
    for (int a = 0; a < d; ++a) {
      std::vector<double> phases(std::size_t(depth), 0.0);
      if (mm.seeded) for (auto& p : phases) p = uni(rng);
      mm.series.emplace_back(tau, amplitude, depth, period_per_axis, std::move(phases));
    }
    double wsup = 0.0;
    for (const auto& s : mm.series) wsup += s.sup_bound();
    if (1.0 - wsup < kMinConformal)
      throw precondition_error("MetricModel: conformal factor not certified positive (amplitude too large)");
    return mm;
  }

  // tau = 2 lacunary synthesis: W' is Lipschitz with |W''| <= amplitude*J*rate^2,
  // but W'' has no modulus of continuity. Tagged C^{1,1}.
  static MetricModel c11_model(int d, double amplitude, int depth, double m,
                               std::optional<std::uint64_t> seed = std::nullopt,
                               double period_per_axis = 2.0 * kPi) {
    return weierstrass_model(d, 2.0, amplitude, depth, m, seed, period_per_axis, true);
  }

  // h_samples tabulates the conformal metric coefficient h, so that
  // h_ij = h delta_ij; internally we keep rho = sqrt(h). Regularity is
  // asserted by the caller, not certified.
  static MetricModel tabulated_model(Field h_samples, double asserted_tau, double m) {
    MetricModel mm;
    mm.d = check_dim(int(h_samples.grid.dim()));
    mm.kind = MetricKind::tabulated;
    mm.mass = check_mass(m);
    mm.period = h_samples.grid.period;
    for (double h : h_samples.v) {
      if (h <= 0.0) throw precondition_error("MetricModel: tabulated metric not positive");
    }
    mm.table = std::move(h_samples);
    for (auto& h : mm.table.v) h = std::sqrt(h);
    mm.table_spec.assign(mm.table.v.begin(), mm.table.v.end());
    fft(mm.table_spec, mm.table.grid.n, FFTW_FORWARD);
    mm.table_tau = asserted_tau;
    double lo = mm.table.v[0];
    for (double r : mm.table.v) lo = std::min(lo, r);
    if (lo < kMinConformal)
      throw precondition_error("MetricModel: tabulated conformal factor below positivity floor");
    return mm;
  }

  // ---- conformal factor and analytic derivatives -----------------------

  double rho(const double* x) const {
    switch (kind) {
      case MetricKind::flat: return 1.0;
      case MetricKind::weierstrass: {
        double s = 1.0;
        for (int a = 0; a < d; ++a) s += series[std::size_t(a)].eval(x[a]);
        return s;
      }
      case MetricKind::tabulated: return table_interp(x);
    }
    return 1.0;
  }

  double drho(int axis, const double* x) const {
    switch (kind) {
      case MetricKind::flat: return 0.0;
      case MetricKind::weierstrass: return series[std::size_t(axis)].deriv(x[axis]);
      case MetricKind::tabulated: return table_interp_deriv(axis, x);
    }
    return 0.0;
  }

  double d2rho(int axis, const double* x) const {
    switch (kind) {
      case MetricKind::flat: return 0.0;
      case MetricKind::weierstrass: return series[std::size_t(axis)].deriv2(x[axis]);
      case MetricKind::tabulated: throw precondition_error("MetricModel: no second derivatives for tabulated metrics");
    }
    return 0.0;
  }

  double sqrt_det_h(const double* x) const { return std::pow(rho(x), d); }
  double inv_h(const double* x) const { return 1.0 / sqr(rho(x)); }
  // Divergence-form stiffness coefficient h^{ij} sqrt(h) = rho^{d-2} delta_ij.
  double stiffness_coef(const double* x) const { return std::pow(rho(x), d - 2); }
  // First-order symbol coefficient (1/sqrt h) d_i (h^{ij} sqrt h) = (d-2) rho^{-3} d_j rho.
  double p1_coef(int axis, const double* x) const {
    return double(d - 2) * drho(axis, x) / std::pow(rho(x), 3);
  }

  double certified_tau() const {
    switch (kind) {
      case MetricKind::flat: return 1e9;
      case MetricKind::weierstrass: return tau;
      case MetricKind::tabulated: return table_tau;
    }
    return 0.0;
  }
  bool flow_certified() const {
    return kind == MetricKind::flat || certified_tau() >= 2.0;
  }
  // Upper bound on the local null speed 1/rho, for causal-cone bounds.
  double max_speed() const {
    switch (kind) {
      case MetricKind::flat: return 1.0;
      case MetricKind::weierstrass: {
        double wsup = 0.0;
        for (const auto& s : series) wsup += s.sup_bound();
        return 1.0 / (1.0 - wsup);
      }
      case MetricKind::tabulated: {
        double lo = table.v[0];
        for (double r : table.v) lo = std::min(lo, r);
        return 1.0 / lo;
      }
    }
    return 1.0;
  }

  std::uint64_t hash() const {
    std::ostringstream os;
    os << d << '|' << int(kind) << '|' << mass;
    for (double p : period) os << '|' << p;
    os << '|' << tau << '|' << amplitude << '|' << depth << '|' << seeded << '|' << seed << '|' << c11_tag;
    if (kind == MetricKind::tabulated) {
      os << '|' << table_tau;
      return fnv1a64(table.v.data(), table.v.size() * 8, fnv1a64(os.str()));
    }
    return fnv1a64(os.str());
  }

  std::string describe() const {
    std::ostringstream os;
    switch (kind) {
      case MetricKind::flat: os << "flat"; break;
      case MetricKind::weierstrass:
        os << (c11_tag ? "C11" : "weierstrass") << "(tau=" << tau << ",a=" << amplitude << ",J=" << depth << ")";
        break;
      case MetricKind::tabulated: os << "tabulated"; break;
    }
    os << " d=" << d << " m=" << mass;
    return os.str();
  }

 private:
  static int check_dim(int d) {
    if (d != 1 && d != 2) throw precondition_error("MetricModel: dim must be 1 or 2");
    return d;
  }
  static double check_mass(double m) {
    if (m <= 0.0) throw precondition_error("MetricModel: mass must be positive");
    return m;
  }

  // Band-limited (trigonometric) interpolation of the table; exact when
  // the tabulated data is a resolved trigonometric polynomial.
  double table_interp(const double* x) const { return table_eval(x, -1); }
  double table_interp_deriv(int axis, const double* x) const { return table_eval(x, axis); }

  double table_eval(const double* x, int deriv_axis) const {
    const auto& g = table.grid;
    std::vector<std::size_t> idx(g.dim());
    cplx acc = 0.0;
    const double inv_total = 1.0 / double(g.size());
    for (std::size_t i = 0; i < table_spec.size(); ++i) {
      g.unflatten(i, idx.data());
      double arg = 0.0;
      for (std::size_t a = 0; a < g.dim(); ++a) arg += g.freq(a, idx[a]) * x[a];
      cplx term = table_spec[i] * std::exp(cplx(0.0, arg)) * inv_total;
      if (deriv_axis >= 0) term *= cplx(0.0, g.freq(std::size_t(deriv_axis), idx[std::size_t(deriv_axis)]));
      acc += term;
    }
    return acc.real();
  }
};

}  // namespace wflab
