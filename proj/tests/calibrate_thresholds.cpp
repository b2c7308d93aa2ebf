// Copyright (c) 2026 the quasilattice authors
// SPDX-License-Identifier: Apache-2.0
//
// One-shot calibration runs behind the committed constants in
// quasilattice/calibration.hpp. Prints the observed proxy floors for the
// sweep/duality verdict thresholds and the Riesz-limit error profile for a
// grid of phi widths. Not part of the test suite; rerun manually when the
// committed experiment geometry changes.

#include <cmath>
#include <iostream>
#include <vector>

#include "quasilattice/analysis.hpp"
#include "quasilattice/calibration.hpp"
#include "quasilattice/pointset.hpp"
#include "quasilattice/sampling.hpp"
#include "quasilattice/scheme.hpp"

using namespace ql;
namespace cal = ql::calibration;

namespace {

Box box1(double lo, double hi) {
  Box b;
  b.lo = Vec::Constant(1, lo);
  b.hi = Vec::Constant(1, hi);
  return b;
}

}  // namespace

int main() {
  CpSchemeParams fp;
  fp.m = 1;
  fp.group = GroupSpec{1, 0, {}};
  CpScheme fib = build_scheme(fp);

  CpSchemeParams zp = fp;
  zp.group = GroupSpec{1, 0, {2}};
  CpScheme rz2 = build_scheme(zp);

  std::cout << "== sweep proxies (seed 7, L=" << cal::kSweepL
            << ", I=[0," << cal::kSweepInterval << ")) ==\n";
  SweepConfig cfg;
  cfg.ratios = {0.8, 1.25};
  cfg.trials = 20;
  cfg.obs_length = cal::kSweepL;
  cfg.seed = 7;
  cfg.band_lo = cal::kSweepBandLo;
  cfg.band_hi = cal::kSweepBandHi;
  cfg.theta_a = 1e-300;  // classify nothing; we only want the raw proxies
  cfg.theta_i = 1e-300;
  Window I = Window::interval(0.0, cal::kSweepInterval);
  auto reports = universality_sweep(fib, I, cfg);
  double min_a_low = 1e300, max_a_high = 0.0, min_r_high = 1e300, max_r_low = 0.0;
  for (const auto& r : reports) {
    if (r.ratio < 1.0) {
      min_a_low = std::min(min_a_low, r.bounds.a_est);
      max_r_low = std::max(max_r_low, r.bounds.riesz_est);
    } else {
      max_a_high = std::max(max_a_high, r.bounds.a_est);
      min_r_high = std::min(min_r_high, r.bounds.riesz_est);
    }
  }
  std::cout << "rho=0.8 : min Aest = " << min_a_low << ", max Riesz = " << max_r_low << "\n";
  std::cout << "rho=1.25: max Aest = " << max_a_high << ", min Riesz = " << min_r_high << "\n";
  std::cout << "committed kThetaA = " << cal::kThetaA << ", kThetaI = " << cal::kThetaI << "\n";

  std::cout << "== duality proxies (S=[0,0.12), L=500, LM=4000) ==\n";
  Window S = Window::interval(0.0, 0.12);
  const double dS = theoretical_density(fib, S.measure(), DensitySide::ModelSet);
  for (double rho : {0.3, 0.55, 0.7, 0.85, 1.05}) {
    const double mu = rho * dS;
    SpectrumWindow K;
    K.real_boxes = {box1(0.0, 0.6 * mu), box1(0.8, 0.8 + 0.4 * mu)};
    K.zfreqs = {{}};
    K.residues = {{}};
    DualityConfig dcfg;
    dcfg.obs_length = 500.0;
    dcfg.dual_obs_length = 4000.0;
    dcfg.theta_a = 1e-300;
    dcfg.theta_i = 1e-300;
    DualityReport rep = duality_probe(fib, S, K, dcfg);
    std::cout << "rho=" << rho << ": interp=" << rep.interp_proxy
              << " sampling=" << rep.sampling_proxy << " (mk " << rep.mk_points << "x"
              << rep.mk_freqs << ", lambda " << rep.lambda_points << "x" << rep.lambda_freqs
              << ")\n";
  }

  std::cout << "== scale consistency (fixed spectrum, L vs 2L) ==\n";
  {
    Window I2 = Window::interval(0.0, cal::kSweepInterval);
    const double dens = theoretical_density(fib, I2.measure(), DensitySide::ModelSet);
    SpectrumWindow K;  // one committed interval at mu = 0.8 D, plus a split variant
    K.real_boxes = {box1(-0.3, -0.3 + 0.8 * dens)};
    K.zfreqs = {{}};
    K.residues = {{}};
    for (double L : {250.0, 500.0, 1000.0}) {
      Box obs = box1(-L / 2.0, L / 2.0);
      PointSet lam = quasicrystal(fib, I2, obs);
      auto freqs = make_spectrum(K, 1.0 / L, fib.group());
      FrameBounds fb = frame_bounds(sampling_matrix(lam, freqs), L);
      std::cout << "L=" << L << ": points=" << lam.points.size() << " freqs=" << freqs.size()
                << " Aest=" << fb.a_est << " Best=" << fb.b_est << "\n";
    }
  }

  std::cout << "== riesz-limit error profile ==\n";
  for (double width : {4e-4, 8e-4, 1.2e-3, 2e-3, 4e-3}) {
    for (auto* scheme : {&fib, &rz2}) {
      TestFunctionPair fn;
      fn.phi.width = width;
      fn.psi.real_part.width = cal::kNlPsiWidth;
      if (!scheme->group().torsion.empty())
        fn.psi.disc_weights = {Complex(1.0, 0.0), Complex(0.7, 0.0)};
      std::vector<Vec> a_list = default_translates(16, 1, scheme->section_mass);
      auto rows = nl_convergence(*scheme, fn, {10.0, 100.0, 1000.0}, a_list);
      std::cout << (scheme == &fib ? "fib " : "rz2 ") << "width=" << width << " :";
      for (const auto& row : rows)
        std::cout << "  err(" << row.r << ")=" << row.max_rel_error
                  << " spread=" << row.spread << " mean=" << row.mean_rel_error;
      std::cout << "\n";
    }
  }
  return 0;
}
