// Copyright (c) 2026 the quasilattice authors
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "quasilattice/group.hpp"
#include "oracles.hpp"

using namespace ql;

namespace {

GroupElement random_element(const GroupSpec& spec, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(-5.0, 5.0);
  GroupElement g = identity_element(spec);
  for (int i = 0; i < spec.d; ++i) g.real[i] = unif(rng);
  for (int i = 0; i < spec.torus; ++i) g.torus[i] = unif(rng) - std::floor(unif(rng));
  for (std::size_t i = 0; i < spec.torsion.size(); ++i)
    g.disc[i] = static_cast<long>(rng() % static_cast<std::uint64_t>(spec.torsion[i]));
  for (int i = 0; i < spec.torus; ++i) g.torus[i] -= std::floor(g.torus[i]);
  return g;
}

DualElement random_dual(const GroupSpec& spec, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(-3.0, 3.0);
  DualElement xi;
  xi.real = Vec::Zero(spec.d);
  for (int i = 0; i < spec.d; ++i) xi.real[i] = unif(rng);
  xi.zfreq.assign(spec.torus, 0);
  for (int i = 0; i < spec.torus; ++i) xi.zfreq[i] = static_cast<long>(rng() % 7) - 3;
  xi.disc.assign(spec.torsion.size(), 0);
  for (std::size_t i = 0; i < spec.torsion.size(); ++i)
    xi.disc[i] = static_cast<long>(rng() % static_cast<std::uint64_t>(spec.torsion[i]));
  return xi;
}

}  // namespace

TEST_CASE("group addition basics") {
  GroupSpec rz2{1, 0, {2}};
  GroupElement a = identity_element(rz2), b = identity_element(rz2);
  a.real[0] = 0.5;
  a.disc[0] = 1;
  b.real[0] = 0.7;
  b.disc[0] = 1;
  GroupElement c = add(a, b, rz2);
  CHECK(c.real[0] == doctest::Approx(1.2));
  CHECK(c.disc[0] == 0);

  GroupSpec torus{0, 1, {}};
  GroupElement t1 = identity_element(torus), t2 = identity_element(torus);
  t1.torus[0] = 0.9;
  t2.torus[0] = 0.3;
  CHECK(add(t1, t2, torus).torus[0] == doctest::Approx(0.2));

  GroupElement e = identity_element(rz2);
  std::mt19937_64 rng(1);
  GroupElement g = random_element(rz2, rng);
  GroupElement ge = add(g, e, rz2);
  CHECK(ge.real[0] == doctest::Approx(g.real[0]).epsilon(1e-15));
  CHECK(ge.disc[0] == g.disc[0]);
}

TEST_CASE("group laws on random triples") {
  GroupSpec spec{2, 1, {3, 4}};
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 50; ++trial) {
    GroupElement a = random_element(spec, rng);
    GroupElement b = random_element(spec, rng);
    GroupElement c = random_element(spec, rng);
    GroupElement ab_c = add(add(a, b, spec), c, spec);
    GroupElement a_bc = add(a, add(b, c, spec), spec);
    CHECK(group_distance(ab_c, a_bc, spec) < 1e-12);
    CHECK(group_distance(add(a, b, spec), add(b, a, spec), spec) < 1e-12);
    GroupElement inv = negate(a, spec);
    CHECK(group_distance(add(a, inv, spec), identity_element(spec), spec) < 1e-12);
  }
}

TEST_CASE("dimension mismatch is a structural error") {
  GroupSpec spec{1, 0, {2}};
  GroupElement bad = identity_element(GroupSpec{2, 0, {2}});
  CHECK_THROWS_AS(add(bad, bad, spec), structural_error);
}

TEST_CASE("character values") {
  GroupSpec z2{0, 0, {2}};
  GroupElement g = identity_element(z2);
  g.disc[0] = 1;
  DualElement xi;
  xi.real = Vec(0);
  xi.disc = {1};
  CHECK(std::abs(character_eval(xi, g, z2) - Complex(-1.0, 0.0)) < 1e-12);

  DualElement zero;
  zero.real = Vec(0);
  zero.disc = {0};
  std::mt19937_64 rng(7);
  for (int i = 0; i < 10; ++i) {
    GroupElement h = random_element(z2, rng);
    CHECK(std::abs(character_eval(zero, h, z2) - Complex(1.0, 0.0)) < 1e-12);
  }
}

TEST_CASE("character bilinearity on random triples") {
  GroupSpec spec{1, 1, {2, 3}};
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    GroupElement a = random_element(spec, rng);
    GroupElement b = random_element(spec, rng);
    DualElement xi = random_dual(spec, rng);
    Complex lhs = character_eval(xi, add(a, b, spec), spec);
    Complex rhs = character_eval(xi, a, spec) * character_eval(xi, b, spec);
    CHECK(std::abs(lhs - rhs) < 1e-10);
    CHECK(std::abs(std::abs(lhs) - 1.0) < 1e-12);

    DualElement xi2 = random_dual(spec, rng);
    DualElement sum;
    sum.real = xi.real + xi2.real;
    sum.zfreq.resize(xi.zfreq.size());
    for (std::size_t i = 0; i < xi.zfreq.size(); ++i) sum.zfreq[i] = xi.zfreq[i] + xi2.zfreq[i];
    sum.disc.resize(xi.disc.size());
    for (std::size_t i = 0; i < xi.disc.size(); ++i)
      sum.disc[i] = (xi.disc[i] + xi2.disc[i]) % spec.torsion[i];
    Complex lhs2 = character_eval(sum, a, spec);
    Complex rhs2 = character_eval(xi, a, spec) * character_eval(xi2, a, spec);
    CHECK(std::abs(lhs2 - rhs2) < 1e-10);
  }
}

TEST_CASE("dual spec swaps torus and Z factors") {
  CHECK(dual_spec(GroupSpec{1, 0, {}}) == DualGroupSpec{1, 0, {}});
  CHECK(dual_spec(GroupSpec{0, 1, {}}) == DualGroupSpec{0, 1, {}});
  CHECK(dual_spec(GroupSpec{1, 0, {2, 2}}) == DualGroupSpec{1, 0, {2, 2}});
}

TEST_CASE("haar measure normalization") {
  GroupSpec spec{2, 1, {2}};
  HaarBox unit;
  unit.real_lo = Vec::Zero(2);
  unit.real_hi = Vec::Ones(2);
  unit.residues = {{0}};  // just the identity fiber
  CHECK(haar_measure(unit, spec) == doctest::Approx(1.0));

  GroupSpec rz2{1, 1, {2}};
  HaarBox box;
  box.real_lo = Vec::Constant(1, 0.0);
  box.real_hi = Vec::Constant(1, 2.0);
  box.residues = {};  // full D
  CHECK(haar_measure(box, rz2) == doctest::Approx(4.0));

  HaarBox empty = box;
  empty.real_hi = empty.real_lo;
  CHECK(haar_measure(empty, rz2) == doctest::Approx(0.0));

  HaarBox unbounded = box;
  unbounded.real_hi[0] = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(haar_measure(unbounded, rz2), structural_error);
}

TEST_CASE("haar measure is additive over disjoint real boxes") {
  GroupSpec spec{1, 0, {3}};
  HaarBox whole, left, right;
  whole.real_lo = Vec::Constant(1, 0.0);
  whole.real_hi = Vec::Constant(1, 2.0);
  left = whole;
  left.real_hi[0] = 0.7;
  right = whole;
  right.real_lo[0] = 0.7;
  CHECK(haar_measure(whole, spec) ==
        doctest::Approx(haar_measure(left, spec) + haar_measure(right, spec)));
}

TEST_CASE("independent vector from the prime stream") {
  Vec xi = independent_vector(2);
  CHECK(xi[0] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
  CHECK(xi[1] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-12));

  int s_used = 0;
  Vec small = independent_vector(1, 0.1, 0, &s_used);
  const long expected_prime = oracle::prime_scan_below(0.1);
  CHECK(expected_prime == 101);
  CHECK(small[0] == doctest::Approx(1.0 / std::sqrt(double(expected_prime))).epsilon(1e-12));

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unif(0.05, 0.8);
  for (int i = 0; i < 20; ++i) {
    const double eps = unif(rng);
    const int n = 1 + static_cast<int>(rng() % 4);
    CHECK(independent_vector(n, eps, 0).norm() < eps);
  }
}

TEST_CASE("prime helpers") {
  CHECK(nth_prime(1) == 2);
  CHECK(nth_prime(5) == 11);
  CHECK(nth_prime(26) == 101);
  CHECK(is_prime(97));
  CHECK(!is_prime(91));
}
