// Copyright (c) 2026 the quasilattice authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "quasilattice/group.hpp"

namespace ql {

/// Number of cyclic factors of D divisible by p; equals log_p of the number
/// of elements of order dividing p.
int rank_p(const std::vector<long>& torsion, long p);

struct Existence {
  bool exists = true;
  long witness_prime = 0;  // smallest obstructing prime when !exists
};

/// A complete CP-scheme (R^m, G, H) exists iff no prime has p-rank > m+d.
Existence scheme_exists(int m, const GroupSpec& group);

/// Symmetric block matrix [[0, a b^T],[b a^T, 0]]; ||T||_sp = ||a|| ||b||,
/// so I+T is invertible under the precondition ||a||*||b|| < 1.
Mat build_T(const Vec& alpha, const Vec& beta);

enum class BasisStyle {
  Classic,  // m = d = 1, l = 0: base [[1,a],[1,b]], order-s translates (x/s, y/s, sigma)
  Coupled,  // general: base I+T with torus rows coupled to the first column
};

/// Where each lifted coordinate (row of B) lives.
enum class RowKind { Internal, Physical, TorusLift, TorsionLift, RationalLift };

struct RowInfo {
  RowKind kind = RowKind::Internal;
  int index = 0;        // index within its kind
  long modulus = 1;     // TorsionLift: prime power p^e; RationalLift: Q
  int factor = -1;      // TorsionLift: originating cyclic factor of the group
  long crt_mult = 1;    // n_factor / p^e
  long crt_coeff = 1;   // crt_mult * (crt_mult^{-1} mod p^e) mod n_factor
  int slot = -1;        // TorsionLift: base column carrying the translate
};

/// Full-rank lifted basis of H~ in R^N together with the row map that turns
/// lifted coordinates back into elements of R^m x G.
struct LatticeBasis {
  int m = 0;
  GroupSpec group;             // effective group (includes truncation factors)
  Mat B;                       // N x N, columns generate H~
  std::vector<RowInfo> rows;   // length N

  int size() const { return static_cast<int>(B.rows()); }
  void validate() const;
};

struct TruncationSpec {
  // Either a Prufer truncation Z(p^inf) ~> Z_{p^s}, or a rational factor
  // truncated to denominators dividing q (one eta column + a Z_q fiber label).
  long p = 0;
  int s = 0;
  long q_denominator = 0;
};

struct CpSchemeParams {
  int m = 1;
  GroupSpec group;                       // the user's group
  int prime_offset = 0;                  // s0 for the 1/sqrt(p) parameter stream
  std::optional<BasisStyle> style;       // default: Classic iff m=d=1, l=0
  std::vector<int> torsion_slots;        // optional per-factor slots (0-based); empty = auto
  std::vector<TruncationSpec> truncations;
};

struct CpScheme {
  CpSchemeParams params;
  BasisStyle style = BasisStyle::Coupled;
  Vec alpha, beta, gamma, eta;
  LatticeBasis basis;
  LatticeBasis dual_basis;     // B^{-T} with the dual row semantics
  double section_mass = 0.0;   // s(H); s(H) * s(H_dual) = 1
  double dual_section_mass = 0.0;
  bool has_rational_factors = false;

  const GroupSpec& group() const { return basis.group; }
  int internal_dim() const { return basis.m; }
};

/// Construct the lattice of the scheme: base columns, torus kill columns,
/// per-prime-power torsion translate columns, eta columns for rational
/// truncations. Throws obstruction_error when no complete scheme exists.
CpScheme build_scheme(const CpSchemeParams& params);

/// Test hook: skips the existence check and accepts colliding slot
/// assignments, so obstructed configurations can be forced through and
/// inspected with structure_check.
CpScheme build_scheme_unchecked(const CpSchemeParams& params,
                                const std::vector<int>& forced_component_slots);

/// p1/p2 of the lattice element with integer coordinates z: internal part,
/// then the group element assembled from the physical/torus/torsion rows.
std::pair<Vec, GroupElement> project_point(const CpScheme& scheme, const IVec& z);

/// q1/q2 on the dual lattice Gamma = B^{-T} Z^N. Torus rows must come out
/// integer (zfreq); torsion rows integer and reduced mod n_i. Rejected for
/// schemes with rational truncation factors.
std::pair<Vec, DualElement> dual_project(const CpScheme& scheme, const IVec& z);

struct StructureReport {
  long element_count = 0;
  double min_p1_distance = 0.0;        // injectivity proxy for C3
  double min_p2_distance = 0.0;        // injectivity proxy for C2
  double p1_covering_radius = 0.0;     // of p1 mod 1 in [0,1)^m, proxy for C1
  double p2_covering_radius = 0.0;     // of p2 (real mod 1, torus) per fiber, proxy for C4
  bool p1_collision = false;
  bool p2_collision = false;
};

/// Enumerate the lattice elements whose base coefficients lie in [-R, R]
/// (torsion generators over one period, torus representatives canonical) and
/// measure injectivity/density proxies for conditions C1-C4.
StructureReport structure_check(const CpScheme& scheme, int index_radius, double tol);

}  // namespace ql
