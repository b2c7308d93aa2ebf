// Copyright (c) 2026 the quasilattice authors
// SPDX-License-Identifier: Apache-2.0
#include "quasilattice/analysis.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace ql {

namespace {
constexpr double kPi = std::numbers::pi;
}

double GaussianSpec::eval(const Vec& x) const {
  Vec c = center.size() ? center : Vec::Zero(x.size());
  return std::exp(-kPi * (x - c).squaredNorm() / (width * width));
}

double GaussianSpec::integral(int dim) const { return std::pow(width, dim); }

double GaussianSpec::reach(double eps) const { return width * std::sqrt(std::log(1.0 / eps) / kPi); }

Complex TrigPoly::eval(const Vec& torus) const {
  Complex v = 0.0;
  for (const auto& [k, c] : terms) {
    double phase = 0.0;
    for (std::size_t i = 0; i < k.size(); ++i) phase += static_cast<double>(k[i]) * torus[i];
    v += c * std::polar(1.0, 2.0 * kPi * phase);
  }
  return v;
}

Complex TrigPoly::zero_coeff() const {
  Complex v = 0.0;
  for (const auto& [k, c] : terms) {
    bool zero = true;
    for (long kk : k)
      if (kk != 0) zero = false;
    if (zero) v += c;
  }
  return v;
}

TrigPoly TrigPoly::constant(Complex c) {
  TrigPoly p;
  p.terms.push_back({{}, c});
  return p;
}

namespace {

long disc_flat_index(const std::vector<long>& disc, const GroupSpec& spec) {
  long idx = 0;
  for (std::size_t i = 0; i < disc.size(); ++i) idx = idx * spec.torsion[i] + disc[i];
  return idx;
}

}  // namespace

Complex TestFunction::eval(const GroupElement& g, const GroupSpec& spec) const {
  double gr = spec.d > 0 ? real_part.eval(g.real) : 1.0;
  Complex tp = torus_part.eval(g.torus);
  Complex w = 1.0;
  if (!disc_weights.empty()) {
    long idx = disc_flat_index(g.disc, spec);
    if (idx >= static_cast<long>(disc_weights.size()))
      throw structural_error("TestFunction: disc weight table too short");
    w = disc_weights[idx];
  }
  return gr * tp * w;
}

Complex TestFunction::integral(const GroupSpec& spec) const {
  double gr = spec.d > 0 ? real_part.integral(spec.d) : 1.0;
  Complex w = 0.0;
  if (disc_weights.empty()) {
    w = static_cast<double>(spec.fiber_count());
  } else {
    for (Complex c : disc_weights) w += c;
  }
  return gr * torus_part.zero_coeff() * w;
}

namespace {

template <typename PointVec, typename RealOf>
DensityReport density_impl(const PointVec& pts, const Box& obs, int d, double fiber_norm,
                           const std::vector<double>& side_lengths,
                           const std::vector<Vec>& translates, double theoretical,
                           RealOf real_of) {
  if (side_lengths.empty() || translates.empty())
    throw structural_error("empirical_density: empty side length or translate list");
  DensityReport rep;
  rep.side_lengths = side_lengths;
  rep.theoretical = theoretical;
  for (double l : side_lengths) {
    if (l <= 0) throw structural_error("empirical_density: side length must be positive");
    std::vector<long> row;
    for (const Vec& a : translates) {
      if (a.size() != d) throw structural_error("empirical_density: translate dim mismatch");
      Box q = Box::cube(a, l);
      for (int i = 0; i < d; ++i)
        if (q.lo[i] < obs.lo[i] || q.hi[i] > obs.hi[i])
          throw structural_error(
              "empirical_density: observation box too small for requested cube");
      long count = 0;
      for (const auto& p : pts)
        if (q.contains(real_of(p))) ++count;
      row.push_back(count);
    }
    const double norm = std::pow(l, d) * fiber_norm;
    rep.counts.push_back(row);
    rep.lower_density.push_back(*std::min_element(row.begin(), row.end()) / norm);
    rep.upper_density.push_back(*std::max_element(row.begin(), row.end()) / norm);
  }
  if (theoretical > 0.0) {
    double worst = 0.0;
    const double norm = std::pow(side_lengths.back(), d) * fiber_norm;
    for (long c : rep.counts.back())
      worst = std::max(worst, std::abs(c / norm - theoretical) / theoretical);
    rep.max_rel_error_at_largest = worst;
  }
  return rep;
}

}  // namespace

DensityReport empirical_density(const PointSet& ps, const std::vector<double>& side_lengths,
                                const std::vector<Vec>& translates, double theoretical) {
  if (ps.group.d < 1) throw structural_error("empirical_density: needs d >= 1");
  return density_impl(
      ps.points, ps.obs, ps.group.d, static_cast<double>(ps.group.fiber_count()), side_lengths,
      translates, theoretical, [](const QuasiPoint& p) -> const Vec& { return p.g.real; });
}

DensityReport empirical_density(const DualPointSet& ps, const std::vector<double>& side_lengths,
                                const std::vector<Vec>& translates, double theoretical) {
  return density_impl(ps.points, ps.obs, ps.m, 1.0, side_lengths, translates, theoretical,
                      [](const DualPoint& p) -> const Vec& { return p.q1; });
}

double theoretical_density(const CpScheme& scheme, double window_measure, DensitySide side) {
  return side == DensitySide::ModelSet ? window_measure / scheme.section_mass
                                       : window_measure * scheme.section_mass;
}

namespace {

// conservative tail of a Gaussian lattice sum outside the enumerated box:
// shells of thickness sigma, point count bounded through the covolume
double gaussian_lattice_tail(double reach, double sigma, int dim, double covolume) {
  double tail = 0.0;
  for (int k = 0; k < 64; ++k) {
    const double rin = reach + k * sigma;
    const double rout = reach + (k + 1) * sigma;
    const double count = std::pow(2.0 * (rout + sigma), dim) / covolume;
    const double term = count * std::exp(-kPi * rin * rin / (sigma * sigma));
    tail += term;
    if (term < tail * 1e-18) break;
  }
  return tail;
}

}  // namespace

Complex riesz_sum(const CpScheme& scheme, const TestFunctionPair& fn, double r, const Vec& a,
                  double tail_eps) {
  if (r <= 0) throw structural_error("riesz_sum: r must be positive");
  const LatticeBasis& basis = scheme.basis;
  const GroupSpec& g = basis.group;
  const int m = basis.m;
  if (a.size() != m) throw structural_error("riesz_sum: translate dim != m");

  // enumerate where either Gaussian is non-negligible
  const double eps_grid = 1e-24;
  const double phi_reach = r * fn.phi.reach(eps_grid);
  const double psi_reach = g.d > 0 ? fn.psi.real_part.reach(eps_grid) : 0.0;
  Vec phi_c = fn.phi.center.size() ? fn.phi.center : Vec::Zero(m);
  Vec psi_c = fn.psi.real_part.center.size() ? fn.psi.real_part.center : Vec::Zero(g.d);

  LiftBox t;
  t.lo = Vec::Zero(basis.size());
  t.hi = Vec::Zero(basis.size());
  for (int i = 0; i < m; ++i) {
    t.lo[i] = a[i] + r * phi_c[i] - phi_reach;
    t.hi[i] = a[i] + r * phi_c[i] + phi_reach;
  }
  for (int i = 0; i < g.d; ++i) {
    t.lo[m + i] = psi_c[i] - psi_reach;
    t.hi[m + i] = psi_c[i] + psi_reach;
  }
  for (int row = m + g.d; row < basis.size(); ++row) {
    const RowInfo& info = basis.rows[row];
    if (info.kind == RowKind::TorusLift) {
      t.lo[row] = 0.0;
      t.hi[row] = 1.0;
    } else {
      const double q = static_cast<double>(info.modulus);
      t.lo[row] = -0.5 / q;
      t.hi[row] = 1.0 - 0.5 / q;
    }
  }

  // tail bound: the skipped phi tail (psi bounded by its sup) plus the skipped
  // psi tail (phi bounded by 1), both relative to the r^m normalization
  double psi_sup = 1.0;
  {
    double wsum = 0.0;
    if (fn.psi.disc_weights.empty()) {
      wsum = 1.0;
    } else {
      for (Complex c : fn.psi.disc_weights) wsum = std::max(wsum, std::abs(c));
    }
    double tsum = 0.0;
    for (const auto& [k, c] : fn.psi.torus_part.terms) tsum += std::abs(c);
    psi_sup = wsum * tsum;
  }
  const double fibers = static_cast<double>(g.fiber_count());
  const double covol = scheme.section_mass / fibers;  // covolume of one fiber translate
  double tail = 0.0;
  {
    // phi truncated at phi_reach: lattice points per unit of p1-volume, with
    // p2.real confined to the psi box, number covol/(fibers*psi_box)
    const double psi_box = g.d > 0 ? std::pow(2.0 * (psi_reach + 1.0), g.d) : 1.0;
    tail += psi_sup *
            gaussian_lattice_tail(phi_reach, r * fn.phi.width, m, covol / (fibers * psi_box)) /
            std::pow(r, m);
    if (g.d > 0) {
      const double phi_box = std::pow(2.0 * (phi_reach + 1.0), m);
      tail += psi_sup *
              gaussian_lattice_tail(psi_reach, fn.psi.real_part.width, g.d,
                                    covol / (fibers * phi_box)) /
              std::pow(r, m);
    }
  }
  if (tail > tail_eps)
    throw numeric_error("riesz_sum: tail bound " + std::to_string(tail) +
                        " exceeds budget; enlarge the truncation");

  std::complex<long double> acc = 0.0;
  for (const IVec& z : enumerate_lattice(basis, t)) {
    auto [p1, p2] = project_point(scheme, z);
    const double phi_val = fn.phi.eval((p1 - a) / r);
    const Complex psi_val = fn.psi.eval(p2, g);
    acc += std::complex<long double>(phi_val * psi_val);
  }
  acc /= std::pow(static_cast<long double>(r), m);
  return Complex(static_cast<double>(acc.real()), static_cast<double>(acc.imag()));
}

std::vector<ConvergenceRow> nl_convergence(const CpScheme& scheme, const TestFunctionPair& fn,
                                           const std::vector<double>& r_schedule,
                                           const std::vector<Vec>& a_samples) {
  if (r_schedule.empty() || a_samples.empty())
    throw structural_error("nl_convergence: empty schedule or sample list");
  const Complex limit =
      fn.phi.integral(scheme.basis.m) * fn.psi.integral(scheme.group()) / scheme.section_mass;
  const double scale = std::abs(limit);
  if (scale == 0.0) throw structural_error("nl_convergence: zero-mean test pair");
  std::vector<ConvergenceRow> rows;
  for (double r : r_schedule) {
    double worst = 0.0, sum = 0.0, best = std::numeric_limits<double>::infinity();
    for (const Vec& a : a_samples) {
      const double err = std::abs(riesz_sum(scheme, fn, r, a) - limit) / scale;
      worst = std::max(worst, err);
      best = std::min(best, err);
      sum += err;
    }
    rows.push_back({r, worst, sum / a_samples.size(), worst - best});
  }
  return rows;
}

std::vector<Vec> default_translates(int count, int m, double span) {
  // Kronecker sequence on golden-ratio-like irrationals
  std::vector<Vec> out;
  Vec alpha = independent_vector(m, 7);
  for (int k = 1; k <= count; ++k) {
    Vec a(m);
    for (int i = 0; i < m; ++i) {
      double v = k * alpha[i];
      a[i] = (v - std::floor(v)) * span;
    }
    out.push_back(a);
  }
  return out;
}

PoissonResult poisson_check(const LatticeBasis& basis, double sigma, const Vec& x,
                            double tail_budget) {
  if (sigma <= 0) throw structural_error("poisson_check: sigma must be positive");
  const int N = basis.size();
  if (x.size() != N) throw structural_error("poisson_check: x dim != N");

  Eigen::PartialPivLU<Mat> lu(basis.B);
  const double det = std::abs(lu.determinant());
  if (det < 1e-12) throw numeric_error("poisson_check: degenerate basis");
  Mat dual = lu.inverse().transpose();

  // fold x into the fundamental cell; both sides are exactly invariant
  Vec xf = x - basis.B * (lu.solve(x)).array().round().matrix();

  const double reach_h = sigma * std::sqrt(std::log(1e22) / kPi) + xf.cwiseAbs().maxCoeff();
  const double reach_g = (1.0 / sigma) * std::sqrt(std::log(1e22) / kPi);

  const double tail_h = gaussian_lattice_tail(reach_h - xf.cwiseAbs().maxCoeff(), sigma, N, det);
  const double tail_g = std::pow(sigma, N) / det *
                        gaussian_lattice_tail(reach_g, 1.0 / sigma, N, 1.0 / det);
  const double tail = tail_h + tail_g;
  if (tail > tail_budget)
    throw numeric_error("poisson_check: tail bound " + std::to_string(tail) +
                        " exceeds budget; enlarge truncation radii");

  LiftBox th;
  th.lo = (-xf).array() - reach_h;
  th.hi = (-xf).array() + reach_h;
  long double lhs = 0.0;
  for (const IVec& z : enumerate_lattice(basis, th)) {
    const Vec v = basis.B * z.cast<double>() + xf;
    lhs += std::exp(-kPi * static_cast<long double>(v.squaredNorm()) / (sigma * sigma));
  }

  LatticeBasis dual_basis = basis;
  dual_basis.B = dual;
  LiftBox tg;
  tg.lo = Vec::Constant(N, -reach_g);
  tg.hi = Vec::Constant(N, reach_g);
  std::complex<long double> rhs = 0.0;
  const double fhat_scale = std::pow(sigma, N);
  for (const IVec& z : enumerate_lattice(dual_basis, tg)) {
    const Vec gamma = dual * z.cast<double>();
    const double fhat = fhat_scale * std::exp(-kPi * sigma * sigma * gamma.squaredNorm());
    const double phase = 2.0 * kPi * xf.dot(gamma);
    rhs += std::complex<long double>(fhat * std::cos(phase), fhat * std::sin(phase));
  }
  rhs /= det;

  PoissonResult res;
  res.lhs = static_cast<double>(lhs);
  res.rhs = Complex(static_cast<double>(rhs.real()), static_cast<double>(rhs.imag()));
  res.diff = std::abs(Complex(res.lhs, 0.0) - res.rhs);
  res.tail_bound = tail;
  return res;
}

}  // namespace ql
