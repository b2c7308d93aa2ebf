// Copyright (c) 2026 the quasilattice authors
// SPDX-License-Identifier: Apache-2.0
#include "quasilattice/sampling.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "quasilattice/calibration.hpp"

namespace ql {

namespace {
constexpr double kPi = std::numbers::pi;
}

std::vector<DualElement> make_spectrum(const SpectrumWindow& K, double delta,
                                       const GroupSpec& spec) {
  if (delta <= 0) throw structural_error("make_spectrum: delta must be positive");
  K.validate(spec);
  std::vector<Vec> grid;  // real grid points across all boxes
  for (const auto& b : K.real_boxes) {
    std::vector<long> counts(spec.d);
    for (int i = 0; i < spec.d; ++i) {
      counts[i] = static_cast<long>(std::floor((b.hi[i] - b.lo[i]) / delta + 1e-12));
      if (counts[i] < 1)
        throw structural_error("make_spectrum: delta larger than a box side");
    }
    std::vector<long> idx(spec.d, 0);
    while (true) {
      Vec x(spec.d);
      for (int i = 0; i < spec.d; ++i) x[i] = b.lo[i] + delta * static_cast<double>(idx[i]);
      grid.push_back(x);
      int i = 0;
      for (; i < spec.d; ++i) {
        if (++idx[i] < counts[i]) break;
        idx[i] = 0;
      }
      if (i == spec.d) break;
    }
  }
  std::vector<DualElement> freqs;
  freqs.reserve(grid.size() * K.zfreqs.size() * K.residues.size());
  for (const auto& x : grid)
    for (const auto& zf : K.zfreqs)
      for (const auto& res : K.residues) {
        DualElement xi;
        xi.real = x;
        xi.zfreq = zf;
        xi.disc = res;
        freqs.push_back(std::move(xi));
      }
  return freqs;
}

CMat sampling_matrix(const PointSet& points, const std::vector<DualElement>& freqs) {
  if (points.points.empty() || freqs.empty())
    throw structural_error("sampling_matrix: empty point or frequency list");
  const GroupSpec& spec = points.group;
  CMat E(points.points.size(), freqs.size());
  for (std::size_t j = 0; j < points.points.size(); ++j)
    for (std::size_t k = 0; k < freqs.size(); ++k)
      E(j, k) = character_eval(freqs[k], points.points[j].g, spec);
  return E;
}

CMat sampling_matrix(const std::vector<Vec>& points, const std::vector<Vec>& freqs) {
  if (points.empty() || freqs.empty())
    throw structural_error("sampling_matrix: empty point or frequency list");
  CMat E(points.size(), freqs.size());
  for (std::size_t j = 0; j < points.size(); ++j)
    for (std::size_t k = 0; k < freqs.size(); ++k)
      E(j, k) = std::polar(1.0, 2.0 * kPi * freqs[k].dot(points[j]));
  return E;
}

FrameBounds frame_bounds(const CMat& E, double box_measure) {
  if (E.rows() == 0 || E.cols() == 0) throw structural_error("frame_bounds: empty matrix");
  if (box_measure <= 0) throw structural_error("frame_bounds: box measure must be positive");
  Eigen::BDCSVD<CMat> svd(E);
  if (svd.info() != Eigen::Success) throw numeric_error("frame_bounds: SVD failed");
  const Vec& s = svd.singularValues();
  const double smin = s.minCoeff(), smax = s.maxCoeff();
  FrameBounds fb;
  fb.sigma_min_sq = smin * smin;
  fb.sigma_max_sq = smax * smax;
  fb.b_est = fb.sigma_max_sq / box_measure;
  fb.a_est = E.rows() >= E.cols() ? fb.sigma_min_sq / box_measure : 0.0;
  fb.riesz_est = E.cols() >= E.rows() ? fb.sigma_min_sq / static_cast<double>(E.cols()) : 0.0;
  fb.cond = smin > 0 ? smax / smin : std::numeric_limits<double>::infinity();
  return fb;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::SamplingLike: return "sampling";
    case Verdict::InterpolationLike: return "interpolation";
    default: return "critical";
  }
}

SpectrumWindow random_spectrum(const GroupSpec& spec, double target_measure, double band_lo,
                               double band_hi, int max_intervals, std::uint64_t seed) {
  if (spec.d != 1)
    throw structural_error("random_spectrum: implemented for d = 1 spectra");
  if (target_measure <= 0) throw structural_error("random_spectrum: measure must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  // include random zfreq/residue selections first; they scale the real measure
  SpectrumWindow K;
  K.zfreqs = {std::vector<long>(spec.torus, 0)};
  if (spec.torus > 0) {
    // a random nonempty window of low frequencies
    std::vector<std::vector<long>> zf;
    const int span = 1 + static_cast<int>(rng() % 2);
    std::vector<long> tuple(spec.torus, -span);
    while (true) {
      if (unif(rng) < 0.7 || zf.empty()) zf.push_back(tuple);
      int i = 0;
      for (; i < spec.torus; ++i) {
        if (++tuple[i] <= span) break;
        tuple[i] = -span;
      }
      if (i == spec.torus) break;
    }
    K.zfreqs = zf;
  }
  {
    std::vector<std::vector<long>> all;
    std::vector<long> tuple(spec.torsion.size(), 0);
    while (true) {
      all.push_back(tuple);
      std::size_t i = 0;
      for (; i < tuple.size(); ++i) {
        if (++tuple[i] < spec.torsion[i]) break;
        tuple[i] = 0;
      }
      if (i == tuple.size()) break;
    }
    K.residues.clear();
    for (const auto& t : all)
      if (unif(rng) < 0.6 || &t == &all.front()) K.residues.push_back(t);
  }

  const double fiber_scale = static_cast<double>(K.zfreqs.size()) *
                             static_cast<double>(K.residues.size()) /
                             static_cast<double>(spec.fiber_count());
  double real_total = target_measure / fiber_scale;
  const double band = band_hi - band_lo;
  if (real_total >= band)
    throw structural_error("random_spectrum: band too narrow for requested measure");

  const int n = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_intervals));
  // lengths: random positive weights normalized to real_total
  std::vector<double> len(n);
  double wsum = 0.0;
  for (double& w : len) {
    w = 0.1 + unif(rng);
    wsum += w;
  }
  for (double& w : len) w *= real_total / wsum;
  // gaps: n+1 random weights filling the remaining band exactly
  std::vector<double> gap(n + 1);
  double gsum = 0.0;
  for (double& g : gap) {
    g = 0.05 + unif(rng);
    gsum += g;
  }
  for (double& g : gap) g *= (band - real_total) / gsum;

  double cursor = band_lo;
  for (int i = 0; i < n; ++i) {
    cursor += gap[i];
    Box b;
    b.lo = Vec::Constant(1, cursor);
    cursor += len[i];
    b.hi = Vec::Constant(1, cursor);
    K.real_boxes.push_back(b);
  }
  return K;
}

std::vector<FrameReport> universality_sweep(const CpScheme& scheme, const Window& I,
                                            const SweepConfig& cfg) {
  if (scheme.internal_dim() != 1)
    throw structural_error("universality_sweep: needs a simple scheme (m = 1)");
  I.validate();
  const GroupSpec& g = scheme.group();
  const double L = cfg.obs_length;
  const double delta = cfg.delta > 0 ? cfg.delta : 1.0 / L;
  const double theta_a = cfg.theta_a > 0 ? cfg.theta_a : calibration::kThetaA;
  const double theta_i = cfg.theta_i > 0 ? cfg.theta_i : calibration::kThetaI;
  const double density = I.measure() / scheme.section_mass;

  Box obs;
  obs.lo = Vec::Constant(g.d, -L / 2.0);
  obs.hi = Vec::Constant(g.d, L / 2.0);
  PointSet lambda = quasicrystal(scheme, I, obs);
  if (lambda.points.empty()) throw numeric_error("universality_sweep: empty quasicrystal");

  std::vector<FrameReport> reports;
  for (std::size_t ri = 0; ri < cfg.ratios.size(); ++ri) {
    const double rho = cfg.ratios[ri];
    for (int t = 0; t < cfg.trials; ++t) {
      const std::uint64_t trial_seed =
          cfg.seed ^ (0x9e3779b97f4a7c15ULL * (ri + 1)) ^ (0xbf58476d1ce4e5b9ULL * (t + 1));
      SpectrumWindow K = random_spectrum(g, rho * density, cfg.band_lo, cfg.band_hi,
                                         cfg.max_intervals, trial_seed);
      std::vector<DualElement> freqs = make_spectrum(K, delta, g);
      CMat E = sampling_matrix(lambda, freqs);
      FrameBounds fb = frame_bounds(E, L);
      FrameReport rep;
      rep.ratio = rho;
      rep.trial = t;
      rep.num_points = static_cast<long>(lambda.points.size());
      rep.num_freqs = static_cast<long>(freqs.size());
      rep.obs_measure = L;
      rep.spectrum_measure = K.measure(g);
      rep.density = density;
      rep.bounds = fb;
      if (fb.a_est > theta_a)
        rep.verdict = Verdict::SamplingLike;
      else if (fb.riesz_est > theta_i)
        rep.verdict = Verdict::InterpolationLike;
      else
        rep.verdict = Verdict::Critical;
      reports.push_back(rep);
    }
  }
  return reports;
}

DualityReport duality_probe(const CpScheme& scheme, const Window& S, const SpectrumWindow& K,
                            const DualityConfig& cfg) {
  S.validate();
  const GroupSpec& g = scheme.group();
  K.validate(g);
  if (scheme.internal_dim() != 1)
    throw structural_error("duality_probe: needs a simple scheme (m = 1)");
  const double theta_a = cfg.theta_a > 0 ? cfg.theta_a : calibration::kThetaA;
  const double theta_i = cfg.theta_i > 0 ? cfg.theta_i : calibration::kThetaI;

  DualityReport rep;
  rep.s_measure = S.measure();
  rep.k_measure = K.measure(g);

  // (a) interpolation proxy: M_K against the delta-grid of PW_S frequencies
  {
    const double LM = cfg.dual_obs_length;
    const double delta = cfg.delta > 0 ? cfg.delta : 1.0 / LM;
    Box obs;
    obs.lo = Vec::Constant(1, -LM / 2.0);
    obs.hi = Vec::Constant(1, LM / 2.0);
    DualPointSet mk = dual_model_set(scheme, K, obs);
    if (mk.points.empty()) throw numeric_error("duality_probe: empty dual model set");
    std::vector<Vec> pts;
    pts.reserve(mk.points.size());
    for (const auto& p : mk.points) pts.push_back(p.q1);
    std::vector<Vec> freqs;
    for (const auto& b : S.boxes) {
      const long n = static_cast<long>(std::floor((b.hi[0] - b.lo[0]) / delta + 1e-12));
      for (long k = 0; k < n; ++k) freqs.push_back(Vec::Constant(1, b.lo[0] + delta * k));
    }
    FrameBounds fb = frame_bounds(sampling_matrix(pts, freqs), LM);
    rep.mk_points = static_cast<long>(pts.size());
    rep.mk_freqs = static_cast<long>(freqs.size());
    rep.interp_proxy = fb.riesz_est;
    rep.interp_strong = fb.riesz_est > theta_i;
  }

  // (b) sampling proxy: Lambda_S against the delta-grid of K
  {
    const double L = cfg.obs_length;
    const double delta = cfg.delta > 0 ? cfg.delta : 1.0 / L;
    Box obs;
    obs.lo = Vec::Constant(g.d, -L / 2.0);
    obs.hi = Vec::Constant(g.d, L / 2.0);
    PointSet lambda = quasicrystal(scheme, S, obs);
    if (lambda.points.empty()) throw numeric_error("duality_probe: empty quasicrystal");
    std::vector<DualElement> freqs = make_spectrum(K, delta, g);
    FrameBounds fb = frame_bounds(sampling_matrix(lambda, freqs), L);
    rep.lambda_points = static_cast<long>(lambda.points.size());
    rep.lambda_freqs = static_cast<long>(freqs.size());
    rep.sampling_proxy = fb.a_est;
    rep.sampling_strong = fb.a_est > theta_a;
  }
  return rep;
}

}  // namespace ql
