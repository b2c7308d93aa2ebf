// Copyright (c) 2026 the quasilattice authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "quasilattice/common.hpp"

namespace ql {

using Vec = Eigen::VectorXd;
using IVec = Eigen::VectorXi;
using Mat = Eigen::MatrixXd;
using Complex = std::complex<double>;

/// Symbolic description of G = R^d x T^l x (+) Z_{n_i}.
struct GroupSpec {
  int d = 0;                      // real dimension
  int torus = 0;                  // torus dimension l
  std::vector<long> torsion;      // cyclic orders n_i, each >= 2

  void validate() const;
  long fiber_count() const;       // |D| = prod n_i (1 if no torsion)
  bool operator==(const GroupSpec&) const = default;
};

/// Dual descriptor: the fixed isomorphism G^ = R^d x Z^l x (+) Z_{n_i}.
struct DualGroupSpec {
  int d = 0;
  int zrank = 0;
  std::vector<long> torsion;
  bool operator==(const DualGroupSpec&) const = default;
};

struct GroupElement {
  Vec real;                 // length d
  Vec torus;                // length l, each in [0,1)
  std::vector<long> disc;   // disc[i] in {0,..,n_i-1}
};

struct DualElement {
  Vec real;                 // length d
  std::vector<long> zfreq;  // length l
  std::vector<long> disc;   // disc[i] in {0,..,n_i-1}
};

GroupElement identity_element(const GroupSpec& spec);
GroupElement add(const GroupElement& a, const GroupElement& b, const GroupSpec& spec);
GroupElement negate(const GroupElement& a, const GroupSpec& spec);

// max(|real|_2, torus arc distances, disc 0/1 indicator); the product metric
// used for separations and structure checks.
double group_distance(const GroupElement& a, const GroupElement& b, const GroupSpec& spec);

DualGroupSpec dual_spec(const GroupSpec& spec);

/// exp(2*pi*i * (xi.real . g.real + xi.zfreq . g.torus + sum_i xi.disc[i]*g.disc[i]/n_i)).
Complex character_eval(const DualElement& xi, const GroupElement& g, const GroupSpec& spec);

/// Product set: a finite real box, the full torus, and a selected subset of
/// residues per cyclic factor (empty selection list = the full factor).
struct HaarBox {
  Vec real_lo, real_hi;                           // length d, half-open
  std::vector<std::vector<long>> residues;        // per factor; empty = all
};

/// Haar measure with the normalization mu_G = Lebesgue^d x prob(T^l) x counting(D);
/// the fundamental domain of H0 = Z^d x {e} x D then has measure one.
double haar_measure(const HaarBox& box, const GroupSpec& spec);

/// k-th prime, 1-based (nth_prime(1) = 2). Sieve grown on demand, cached.
long nth_prime(int k);
bool is_prime(long p);

/// (1/sqrt(p_{s+1}), ..., 1/sqrt(p_{s+n})): rationally independent together
/// with 1 and their reciprocals (Besicovitch).
Vec independent_vector(int n, int s = 0);

/// Same, with s auto-raised from s0 until ||xi|| < eps.
Vec independent_vector(int n, double eps, int s0, int* s_used = nullptr);

}  // namespace ql
