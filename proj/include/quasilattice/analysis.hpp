// Copyright (c) 2026 the quasilattice authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <vector>

#include "quasilattice/pointset.hpp"
#include "quasilattice/scheme.hpp"

namespace ql {

/// phi(x) = exp(-pi |x - center|^2 / width^2); integral = width^dim.
struct GaussianSpec {
  double width = 1.0;
  Vec center;  // zero vector when empty

  double eval(const Vec& x) const;
  double integral(int dim) const;
  /// Radius beyond which |phi| < eps.
  double reach(double eps) const;
};

/// Finite trigonometric polynomial on T^l: sum coeff * e^{2 pi i k.x}.
struct TrigPoly {
  std::vector<std::pair<std::vector<long>, Complex>> terms;

  Complex eval(const Vec& torus) const;
  Complex zero_coeff() const;  // the integral over T^l
  static TrigPoly constant(Complex c = 1.0);
};

/// psi = Gaussian(R^d) x trig-poly(T^l) x per-fiber weights(D).
/// integral over G = width^d * zero_coeff * sum(weights)  (counting measure on D).
struct TestFunction {
  GaussianSpec real_part;                 // on R^d
  TrigPoly torus_part = TrigPoly::constant();
  std::vector<Complex> disc_weights;      // mixed-radix indexed by disc tuple; empty = all ones

  Complex eval(const GroupElement& g, const GroupSpec& spec) const;
  Complex integral(const GroupSpec& spec) const;
};

struct TestFunctionPair {
  GaussianSpec phi;   // on R^m
  TestFunction psi;   // on G
};

struct DensityReport {
  std::vector<double> side_lengths;
  std::vector<std::vector<long>> counts;       // [length][translate]
  std::vector<double> lower_density;           // min over translates, per length
  std::vector<double> upper_density;           // max over translates, per length
  double theoretical = 0.0;
  double max_rel_error_at_largest = 0.0;
};

/// Counting density against the reference lattice H0 = Z^d x {e} x D: counts
/// over cubes Q_l(a) in the real coordinates (all torus/disc fibers included)
/// normalized by l^d * |D|. Errors if any cube leaves the observation box.
DensityReport empirical_density(const PointSet& ps, const std::vector<double>& side_lengths,
                                const std::vector<Vec>& translates, double theoretical = 0.0);

/// Same estimator for dual model sets in R^m (no fiber normalization).
DensityReport empirical_density(const DualPointSet& ps, const std::vector<double>& side_lengths,
                                const std::vector<Vec>& translates, double theoretical = 0.0);

enum class DensitySide { ModelSet, DualModelSet };

/// D(Lambda_S) = w / s(H); D(M_K) = w * s(H).
double theoretical_density(const CpScheme& scheme, double window_measure, DensitySide side);

/// (1/r^m) sum_{h in H} phi((p1(h) - a)/r) psi(p2(h)); truncation radii from
/// Gaussian tail bounds with budget tail_eps, violation -> numeric_error.
Complex riesz_sum(const CpScheme& scheme, const TestFunctionPair& fn, double r, const Vec& a,
                  double tail_eps = 1e-12);

struct ConvergenceRow {
  double r;
  double max_rel_error;   // over the translate samples
  double mean_rel_error;
  double spread;          // max - min
};

/// Relative error of riesz_sum against (1/s(H)) int(phi) int(psi) across a
/// schedule of r values and translate samples.
std::vector<ConvergenceRow> nl_convergence(const CpScheme& scheme, const TestFunctionPair& fn,
                                           const std::vector<double>& r_schedule,
                                           const std::vector<Vec>& a_samples);

/// Low-discrepancy translate samples in [0, span)^m (Kronecker sequence).
std::vector<Vec> default_translates(int count, int m, double span);

struct PoissonResult {
  double lhs;
  Complex rhs;
  double diff;
  double tail_bound;
};

/// Two-sided Poisson summation check on the lifted lattice: sum_h f(x+h)
/// against (1/covol) sum_gamma f^(gamma) e^{2 pi i x.gamma}, f an N-dim
/// Gaussian of width sigma. Both sides truncated by explicit tail bounds.
PoissonResult poisson_check(const LatticeBasis& basis, double sigma, const Vec& x,
                            double tail_budget = 1e-13);

}  // namespace ql
