// Copyright (c) 2026 the quasilattice authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "quasilattice/pointset.hpp"
#include "quasilattice/scheme.hpp"
#include "quasilattice/window.hpp"

namespace ql {

/// Discretize K on a delta-grid in the real directions; zfreqs and residues
/// are already finite. Per box and axis: floor(side/delta) grid points.
std::vector<DualElement> make_spectrum(const SpectrumWindow& K, double delta,
                                       const GroupSpec& spec);

using CMat = Eigen::MatrixXcd;

/// E[j,k] = pairing of frequency xi_k with point lambda_j; entries unimodular.
CMat sampling_matrix(const PointSet& points, const std::vector<DualElement>& freqs);

/// Pure real variant for PW_S systems over model-set points in R^m.
CMat sampling_matrix(const std::vector<Vec>& points, const std::vector<Vec>& freqs);

struct FrameBounds {
  double a_est = 0.0;     // lambda_min(E*E)/L: 0 when #rows < #cols (rank-deficient)
  double b_est = 0.0;     // lambda_max(E*E)/L
  double riesz_est = 0.0; // lambda_min(EE*)/#freqs: the interpolation proxy, 0 when #cols < #rows
  double sigma_min_sq = 0.0;  // over min(#rows, #cols)
  double sigma_max_sq = 0.0;
  double cond = 0.0;
};

FrameBounds frame_bounds(const CMat& E, double box_measure);

enum class Verdict { SamplingLike, InterpolationLike, Critical };
std::string to_string(Verdict v);

struct FrameReport {
  double ratio = 0.0;   // mu(K)/D(Lambda)
  int trial = 0;
  long num_points = 0;
  long num_freqs = 0;
  double obs_measure = 0.0;
  double spectrum_measure = 0.0;
  double density = 0.0;
  FrameBounds bounds;
  Verdict verdict = Verdict::Critical;
};

struct SweepConfig {
  std::vector<double> ratios;
  int trials = 20;
  double obs_length = 500.0;   // L; observation box [-L/2, L/2)
  double delta = 0.0;          // 0 = default 1/L
  std::uint64_t seed = 7;
  double band_lo = -4.0;       // spectra are drawn inside this band of Re(G^)
  double band_hi = 4.0;
  int max_intervals = 4;
  double theta_a = 0.0;        // 0 = committed calibration value
  double theta_i = 0.0;
};

/// Random disjoint-interval spectra with mu(K) = ratio * D(Lambda_I) drawn
/// rejection-free (gaps then lengths), then frame/Riesz proxies of the
/// exponential system of Lambda_I against the delta-grid of K.
std::vector<FrameReport> universality_sweep(const CpScheme& scheme, const Window& I,
                                            const SweepConfig& cfg);

struct DualityReport {
  double s_measure = 0.0;
  double k_measure = 0.0;
  long mk_points = 0, mk_freqs = 0;
  long lambda_points = 0, lambda_freqs = 0;
  double interp_proxy = 0.0;    // M_K as an interpolation set for PW_S
  double sampling_proxy = 0.0;  // Lambda_S as a sampling set for PW_K
  bool interp_strong = false;
  bool sampling_strong = false;
};

struct DualityConfig {
  double obs_length = 500.0;     // Lambda_S observation
  double dual_obs_length = 4000.0;  // M_K observation
  double delta = 0.0;            // 0 = 1/obs_length on each side
  double theta_a = 0.0;
  double theta_i = 0.0;
};

/// Numeric shadow of the duality implication: (a) interpolation proxy of M_K
/// against a grid on S, (b) sampling proxy of Lambda_S against a grid on K.
DualityReport duality_probe(const CpScheme& scheme, const Window& S, const SpectrumWindow& K,
                            const DualityConfig& cfg);

/// Deterministic per-(seed, ratio, trial) spectrum generator, exposed for tests.
SpectrumWindow random_spectrum(const GroupSpec& spec, double target_measure, double band_lo,
                               double band_hi, int max_intervals, std::uint64_t seed);

}  // namespace ql
