// Copyright (c) 2026 the quasilattice authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <vector>

#include "quasilattice/scheme.hpp"
#include "quasilattice/window.hpp"

namespace ql {

/// Half-open per-row target [lo, hi) in the lifted space R^N.
struct LiftBox {
  Vec lo, hi;
};

/// Exactly the z in Z^N with B*z in the target. Corner-hull ranges with a
/// one-index inflation margin, branch-and-bound over coordinates, final
/// membership tested exactly per row. Output sorted lexicographically.
std::vector<IVec> enumerate_lattice(const LatticeBasis& basis, const LiftBox& target);

struct QuasiPoint {
  Vec p1;          // internal projection, in the window
  GroupElement g;  // p2, the quasicrystal point
  IVec z;          // lattice coordinates that produced it
};

struct PointSet {
  GroupSpec group;
  int m = 0;
  Box obs;         // observation box in R^d (real coordinates of p2)
  std::vector<QuasiPoint> points;
};

struct DualPoint {
  Vec q1;          // the model-set point in R^m
  DualElement xi;  // q2, in the spectrum
  IVec z;
};

struct DualPointSet {
  GroupSpec group;
  int m = 0;
  Box obs;         // observation box in R^m
  std::vector<DualPoint> points;
};

/// Lambda_S restricted to p2.real in obs: every lattice element with p1 in S,
/// all torus/disc values included. Empty window -> empty set.
PointSet quasicrystal(const CpScheme& scheme, const Window& S, const Box& obs);

/// M_K = {q1(gamma): gamma in Gamma, q2(gamma) in K}, restricted to q1 in obs.
DualPointSet dual_model_set(const CpScheme& scheme, const SpectrumWindow& K, const Box& obs);

/// Minimum pairwise distance. Lambda_S uses the product metric on G; M_K is
/// Euclidean in R^m. nullopt when fewer than two points.
std::optional<double> min_separation(const PointSet& ps);
std::optional<double> min_separation(const DualPointSet& ps);

/// Lambda_{-S} = -Lambda_S check for symmetric windows: every point's negation
/// is present (points whose mirror falls within `boundary_margin` of a window
/// or obs boundary are exempt). Pre: window and obs symmetric under x -> -x.
bool symmetry_check(const CpScheme& scheme, const PointSet& ps, const Window& S,
                    double tol = 1e-9, double boundary_margin = 1e-9);

}  // namespace ql
