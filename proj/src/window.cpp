// Copyright (c) 2026 the quasilattice authors
// SPDX-License-Identifier: Apache-2.0
#include "quasilattice/window.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace ql {

double Box::volume() const {
  double v = 1.0;
  for (int i = 0; i < dim(); ++i) v *= std::max(hi[i] - lo[i], 0.0);
  return v;
}

bool Box::contains(const Vec& x) const {
  if (x.size() != lo.size()) throw structural_error("Box::contains: dimension mismatch");
  for (int i = 0; i < dim(); ++i)
    if (!(x[i] >= lo[i] && x[i] < hi[i])) return false;
  return true;
}

bool Box::intersects(const Box& other) const {
  for (int i = 0; i < dim(); ++i)
    if (hi[i] <= other.lo[i] || other.hi[i] <= lo[i]) return false;
  return true;
}

Box Box::cube(const Vec& center, double side) {
  Box b;
  b.lo = center.array() - side / 2.0;
  b.hi = center.array() + side / 2.0;
  return b;
}

int Window::dim() const {
  if (boxes.empty()) throw structural_error("Window: no boxes");
  return boxes.front().dim();
}

double Window::measure() const {
  double m = 0.0;
  for (const auto& b : boxes) m += b.volume();
  return m;
}

bool Window::contains(const Vec& x) const {
  for (const auto& b : boxes)
    if (b.contains(x)) return true;
  return false;
}

Box Window::bounding_box() const {
  Box bb = boxes.front();
  for (const auto& b : boxes) {
    bb.lo = bb.lo.cwiseMin(b.lo);
    bb.hi = bb.hi.cwiseMax(b.hi);
  }
  return bb;
}

void Window::validate() const {
  if (boxes.empty()) throw structural_error("Window: empty box list");
  const int k = boxes.front().dim();
  for (const auto& b : boxes) {
    if (b.dim() != k || b.hi.size() != k) throw structural_error("Window: inconsistent dims");
    for (int i = 0; i < k; ++i) {
      if (!std::isfinite(b.lo[i]) || !std::isfinite(b.hi[i]))
        throw structural_error("Window: unbounded box");
      if (!(b.lo[i] < b.hi[i])) throw structural_error("Window: empty or inverted box");
    }
  }
  for (std::size_t i = 0; i < boxes.size(); ++i)
    for (std::size_t j = i + 1; j < boxes.size(); ++j)
      if (boxes[i].intersects(boxes[j])) throw structural_error("Window: boxes overlap");
  if (measure() <= 0) throw structural_error("Window: zero measure");
}

Window Window::interval(double lo, double hi) {
  Window w;
  Box b;
  b.lo = Vec::Constant(1, lo);
  b.hi = Vec::Constant(1, hi);
  w.boxes.push_back(b);
  return w;
}

double SpectrumWindow::real_measure() const {
  double m = 0.0;
  for (const auto& b : real_boxes) m += b.volume();
  return m;
}

double SpectrumWindow::measure(const GroupSpec& spec) const {
  double m = real_measure();
  if (spec.d == 0) m = 1.0;
  m *= static_cast<double>(zfreqs.size());
  m *= static_cast<double>(residues.size()) / static_cast<double>(spec.fiber_count());
  return m;
}

Box SpectrumWindow::real_bounding_box() const {
  if (real_boxes.empty()) throw structural_error("SpectrumWindow: no real boxes");
  Box bb = real_boxes.front();
  for (const auto& b : real_boxes) {
    bb.lo = bb.lo.cwiseMin(b.lo);
    bb.hi = bb.hi.cwiseMax(b.hi);
  }
  return bb;
}

bool SpectrumWindow::contains(const Vec& xreal, const std::vector<long>& zf,
                              const std::vector<long>& disc) const {
  bool in_real = false;
  for (const auto& b : real_boxes)
    if (b.contains(xreal)) {
      in_real = true;
      break;
    }
  if (!in_real) return false;
  if (std::find(zfreqs.begin(), zfreqs.end(), zf) == zfreqs.end()) return false;
  return std::find(residues.begin(), residues.end(), disc) != residues.end();
}

void SpectrumWindow::validate(const GroupSpec& spec) const {
  if (real_boxes.empty() || zfreqs.empty() || residues.empty())
    throw structural_error("SpectrumWindow: empty component");
  for (const auto& b : real_boxes) {
    if (b.dim() != spec.d) throw structural_error("SpectrumWindow: real box dim != d");
    for (int i = 0; i < spec.d; ++i)
      if (!std::isfinite(b.lo[i]) || !std::isfinite(b.hi[i]) || !(b.lo[i] < b.hi[i]))
        throw structural_error("SpectrumWindow: bad real box");
  }
  for (std::size_t i = 0; i < real_boxes.size(); ++i)
    for (std::size_t j = i + 1; j < real_boxes.size(); ++j)
      if (real_boxes[i].intersects(real_boxes[j]))
        throw structural_error("SpectrumWindow: real boxes overlap");
  for (const auto& zf : zfreqs)
    if (zf.size() != static_cast<std::size_t>(spec.torus))
      throw structural_error("SpectrumWindow: zfreq length != torus rank");
  for (const auto& r : residues) {
    if (r.size() != spec.torsion.size())
      throw structural_error("SpectrumWindow: residue tuple length mismatch");
    for (std::size_t i = 0; i < r.size(); ++i)
      if (r[i] < 0 || r[i] >= spec.torsion[i])
        throw structural_error("SpectrumWindow: residue out of range");
  }
}

SpectrumWindow SpectrumWindow::interval(double lo, double hi, const GroupSpec& spec) {
  if (spec.d != 1) throw structural_error("SpectrumWindow::interval: needs d = 1");
  Box b;
  b.lo = Vec::Constant(1, lo);
  b.hi = Vec::Constant(1, hi);
  return from_real_boxes({b}, spec);
}

SpectrumWindow SpectrumWindow::from_real_boxes(std::vector<Box> boxes, const GroupSpec& spec) {
  SpectrumWindow k;
  k.real_boxes = std::move(boxes);
  k.zfreqs = {std::vector<long>(spec.torus, 0)};
  // all residue tuples, mixed-radix order
  std::vector<long> tuple(spec.torsion.size(), 0);
  while (true) {
    k.residues.push_back(tuple);
    std::size_t i = 0;
    for (; i < tuple.size(); ++i) {
      if (++tuple[i] < spec.torsion[i]) break;
      tuple[i] = 0;
    }
    if (i == tuple.size()) break;
  }
  return k;
}

}  // namespace ql
