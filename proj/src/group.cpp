// Copyright (c) 2026 the quasilattice authors
// SPDX-License-Identifier: Apache-2.0
#include "quasilattice/group.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>

namespace ql {

void GroupSpec::validate() const {
  if (d < 0 || torus < 0) throw structural_error("GroupSpec: negative dimension");
  if (d + torus + static_cast<int>(torsion.size()) < 1)
    throw structural_error("GroupSpec: trivial group");
  for (long n : torsion)
    if (n < 2) throw structural_error("GroupSpec: cyclic order must be >= 2");
}

long GroupSpec::fiber_count() const {
  long f = 1;
  for (long n : torsion) f *= n;
  return f;
}

GroupElement identity_element(const GroupSpec& spec) {
  GroupElement e;
  e.real = Vec::Zero(spec.d);
  e.torus = Vec::Zero(spec.torus);
  e.disc.assign(spec.torsion.size(), 0);
  return e;
}

namespace {

void check_conform(const GroupElement& g, const GroupSpec& spec, const char* who) {
  if (g.real.size() != spec.d || g.torus.size() != spec.torus ||
      g.disc.size() != spec.torsion.size())
    throw structural_error(std::string(who) + ": element does not conform to group spec");
}

double mod1(double x) {
  double r = x - std::floor(x);
  if (r >= 1.0) r -= 1.0;  // guards x = -tiny
  return r;
}

long modn(long x, long n) {
  long r = x % n;
  return r < 0 ? r + n : r;
}

}  // namespace

GroupElement add(const GroupElement& a, const GroupElement& b, const GroupSpec& spec) {
  check_conform(a, spec, "add");
  check_conform(b, spec, "add");
  GroupElement c;
  c.real = a.real + b.real;
  c.torus.resize(spec.torus);
  for (int i = 0; i < spec.torus; ++i) c.torus[i] = mod1(a.torus[i] + b.torus[i]);
  c.disc.resize(spec.torsion.size());
  for (std::size_t i = 0; i < spec.torsion.size(); ++i)
    c.disc[i] = modn(a.disc[i] + b.disc[i], spec.torsion[i]);
  return c;
}

GroupElement negate(const GroupElement& a, const GroupSpec& spec) {
  check_conform(a, spec, "negate");
  GroupElement c;
  c.real = -a.real;
  c.torus.resize(spec.torus);
  for (int i = 0; i < spec.torus; ++i) c.torus[i] = a.torus[i] == 0.0 ? 0.0 : mod1(-a.torus[i]);
  c.disc.resize(spec.torsion.size());
  for (std::size_t i = 0; i < spec.torsion.size(); ++i)
    c.disc[i] = modn(-a.disc[i], spec.torsion[i]);
  return c;
}

double group_distance(const GroupElement& a, const GroupElement& b, const GroupSpec& spec) {
  check_conform(a, spec, "group_distance");
  check_conform(b, spec, "group_distance");
  double dist = (a.real - b.real).norm();
  for (int i = 0; i < spec.torus; ++i) {
    double t = std::abs(a.torus[i] - b.torus[i]);
    dist = std::max(dist, std::min(t, 1.0 - t));
  }
  for (std::size_t i = 0; i < spec.torsion.size(); ++i)
    if (a.disc[i] != b.disc[i]) dist = std::max(dist, 1.0);
  return dist;
}

DualGroupSpec dual_spec(const GroupSpec& spec) {
  return DualGroupSpec{spec.d, spec.torus, spec.torsion};
}

Complex character_eval(const DualElement& xi, const GroupElement& g, const GroupSpec& spec) {
  check_conform(g, spec, "character_eval");
  if (xi.real.size() != spec.d || xi.zfreq.size() != static_cast<std::size_t>(spec.torus) ||
      xi.disc.size() != spec.torsion.size())
    throw structural_error("character_eval: dual element does not conform to group spec");
  double phase = xi.real.dot(g.real);
  for (int i = 0; i < spec.torus; ++i) phase += static_cast<double>(xi.zfreq[i]) * g.torus[i];
  for (std::size_t i = 0; i < spec.torsion.size(); ++i)
    phase += static_cast<double>(xi.disc[i]) * static_cast<double>(g.disc[i]) /
             static_cast<double>(spec.torsion[i]);
  return std::polar(1.0, 2.0 * std::numbers::pi * phase);
}

double haar_measure(const HaarBox& box, const GroupSpec& spec) {
  if (box.real_lo.size() != spec.d || box.real_hi.size() != spec.d)
    throw structural_error("haar_measure: real box dimension mismatch");
  if (!box.residues.empty() && box.residues.size() != spec.torsion.size())
    throw structural_error("haar_measure: residue selection size mismatch");
  double vol = 1.0;
  for (int i = 0; i < spec.d; ++i) {
    double side = box.real_hi[i] - box.real_lo[i];
    if (!std::isfinite(side)) throw structural_error("haar_measure: unbounded real box");
    vol *= std::max(side, 0.0);
  }
  double fibers = 1.0;
  for (std::size_t i = 0; i < spec.torsion.size(); ++i) {
    if (box.residues.empty() || box.residues[i].empty()) {
      fibers *= static_cast<double>(spec.torsion[i]);
    } else {
      for (long r : box.residues[i])
        if (r < 0 || r >= spec.torsion[i])
          throw structural_error("haar_measure: residue out of range");
      fibers *= static_cast<double>(box.residues[i].size());
    }
  }
  return vol * fibers;  // torus factor contributes 1 (probability measure)
}

namespace {

std::vector<long>& prime_cache() {
  static std::vector<long> primes{2, 3};
  return primes;
}
std::mutex prime_mutex;

void grow_primes(std::size_t count) {
  auto& primes = prime_cache();
  long candidate = primes.back();
  while (primes.size() < count) {
    candidate += 2;
    bool composite = false;
    for (long p : primes) {
      if (p * p > candidate) break;
      if (candidate % p == 0) {
        composite = true;
        break;
      }
    }
    if (!composite) primes.push_back(candidate);
  }
}

}  // namespace

long nth_prime(int k) {
  if (k < 1) throw structural_error("nth_prime: index must be >= 1");
  std::lock_guard<std::mutex> lock(prime_mutex);
  if (prime_cache().size() < static_cast<std::size_t>(k)) grow_primes(k);
  return prime_cache()[k - 1];
}

bool is_prime(long p) {
  if (p < 2) return false;
  for (long q = 2; q * q <= p; ++q)
    if (p % q == 0) return false;
  return true;
}

Vec independent_vector(int n, int s) {
  if (n < 1) throw structural_error("independent_vector: n must be >= 1");
  if (s < 0) throw structural_error("independent_vector: negative offset");
  Vec xi(n);
  for (int i = 0; i < n; ++i) xi[i] = 1.0 / std::sqrt(static_cast<double>(nth_prime(s + i + 1)));
  return xi;
}

Vec independent_vector(int n, double eps, int s0, int* s_used) {
  if (eps <= 0) throw structural_error("independent_vector: eps must be positive");
  int s = s0;
  Vec xi = independent_vector(n, s);
  while (xi.norm() >= eps) {
    ++s;
    xi = independent_vector(n, s);
  }
  if (s_used) *s_used = s;
  return xi;
}

}  // namespace ql
