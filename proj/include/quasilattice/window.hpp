// Copyright (c) 2026 the quasilattice authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "quasilattice/group.hpp"

namespace ql {

/// Half-open axis-aligned box [lo, hi) in R^k.
struct Box {
  Vec lo, hi;

  int dim() const { return static_cast<int>(lo.size()); }
  double volume() const;
  bool contains(const Vec& x) const;
  bool intersects(const Box& other) const;
  static Box cube(const Vec& center, double side);
};

/// Physical window S in R^m: a finite union of pairwise disjoint half-open boxes.
struct Window {
  std::vector<Box> boxes;

  int dim() const;
  double measure() const;
  bool contains(const Vec& x) const;
  Box bounding_box() const;
  void validate() const;  // nonempty, consistent dims, disjoint, positive measure

  static Window interval(double lo, double hi);
};

/// Compact spectrum K in G^ = R^d x Z^l x D^: real boxes x finite frequency
/// set x residue subset. measure() is mu_{G^}(K) with the dual-of-counting
/// normalization on D^ (counting/|D|), the one that makes the inversion
/// formula hold alongside mu_G = Leb x prob x counting.
struct SpectrumWindow {
  std::vector<Box> real_boxes;                 // in R^d
  std::vector<std::vector<long>> zfreqs;       // finite subset of Z^l (each entry length l)
  std::vector<std::vector<long>> residues;     // subset of D (each entry one disc tuple)

  double real_measure() const;
  double measure(const GroupSpec& spec) const;
  Box real_bounding_box() const;
  bool contains(const Vec& xreal, const std::vector<long>& zf,
                const std::vector<long>& disc) const;
  void validate(const GroupSpec& spec) const;

  /// K = [lo,hi) x {0}^l x D^ in full: the usual pure-real spectrum.
  static SpectrumWindow interval(double lo, double hi, const GroupSpec& spec);
  static SpectrumWindow from_real_boxes(std::vector<Box> boxes, const GroupSpec& spec);
};

}  // namespace ql
