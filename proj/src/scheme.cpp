// Copyright (c) 2026 the quasilattice authors
// SPDX-License-Identifier: Apache-2.0
#include "quasilattice/scheme.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <vector>

namespace ql {

int rank_p(const std::vector<long>& torsion, long p) {
  if (!is_prime(p)) throw structural_error("rank_p: p is not prime");
  int r = 0;
  for (long n : torsion)
    if (n % p == 0) ++r;
  return r;
}

Existence scheme_exists(int m, const GroupSpec& group) {
  group.validate();
  if (m < 1) throw structural_error("scheme_exists: m must be >= 1");
  std::set<long> primes;
  for (long n : group.torsion) {
    long v = n;
    for (long p = 2; p * p <= v; ++p)
      while (v % p == 0) {
        primes.insert(p);
        v /= p;
      }
    if (v > 1) primes.insert(v);
  }
  for (long p : primes)
    if (rank_p(group.torsion, p) > m + group.d) return {false, p};
  return {true, 0};
}

Mat build_T(const Vec& alpha, const Vec& beta) {
  if (alpha.norm() * beta.norm() >= 1.0)
    throw structural_error("build_T: ||alpha||*||beta|| must be < 1");
  const int m = static_cast<int>(alpha.size());
  const int d = static_cast<int>(beta.size());
  Mat T = Mat::Zero(m + d, m + d);
  T.topRightCorner(m, d) = alpha * beta.transpose();
  T.bottomLeftCorner(d, m) = beta * alpha.transpose();
  return T;
}

void LatticeBasis::validate() const {
  const int n = size();
  if (B.cols() != n || static_cast<int>(rows.size()) != n)
    throw structural_error("LatticeBasis: inconsistent dimensions");
}

namespace {

struct Component {
  int factor;       // index into the effective torsion list
  long prime;       // 0 for rational truncations
  long modulus;     // p^e, or Q for rational
  long crt_mult;    // n_factor / modulus
  long crt_coeff;   // crt_mult * (crt_mult^{-1} mod modulus) mod n_factor
  int slot = -1;    // base column, -1 for rational
  bool rational = false;
};

long mod_inverse(long a, long n) {
  long t = 0, newt = 1, r = n, newr = a % n;
  if (newr < 0) newr += n;
  while (newr != 0) {
    long q = r / newr;
    t -= q * newt;
    std::swap(t, newt);
    r -= q * newr;
    std::swap(r, newr);
  }
  if (r != 1) throw structural_error("mod_inverse: not invertible");
  return t < 0 ? t + n : t;
}

std::vector<std::pair<long, long>> prime_power_factors(long n) {
  std::vector<std::pair<long, long>> out;  // (prime, p^e)
  long v = n;
  for (long p = 2; p * p <= v; ++p) {
    if (v % p == 0) {
      long q = 1;
      while (v % p == 0) {
        q *= p;
        v /= p;
      }
      out.emplace_back(p, q);
    }
  }
  if (v > 1) out.emplace_back(v, v);
  return out;
}

struct BuildState {
  GroupSpec effective_group;
  std::vector<Component> components;  // torsion components then rational factors
  int k_q = 0;
};

BuildState prepare_components(const CpSchemeParams& params,
                              const std::vector<int>* forced_slots) {
  BuildState st;
  st.effective_group = params.group;
  std::vector<bool> rational_factor(params.group.torsion.size(), false);
  for (const auto& tr : params.truncations) {
    if (tr.q_denominator > 0) {
      if (tr.q_denominator < 2)
        throw structural_error("truncation: q_denominator must be >= 2");
      st.effective_group.torsion.push_back(tr.q_denominator);
      rational_factor.push_back(true);
      ++st.k_q;
    } else {
      if (!is_prime(tr.p) || tr.s < 1)
        throw structural_error("truncation: need prime p and level s >= 1");
      long q = 1;
      for (int i = 0; i < tr.s; ++i) q *= tr.p;
      st.effective_group.torsion.push_back(q);
      rational_factor.push_back(false);
    }
  }
  st.effective_group.validate();

  const int n_slots = params.m + params.group.d;
  std::map<long, int> next_slot_for_prime;
  std::map<long, std::set<int>> used_slots_for_prime;
  int component_counter = 0;
  for (std::size_t f = 0; f < st.effective_group.torsion.size(); ++f) {
    const long n = st.effective_group.torsion[f];
    if (rational_factor[f]) {
      Component c;
      c.factor = static_cast<int>(f);
      c.prime = 0;
      c.modulus = n;
      c.crt_mult = 1;
      c.crt_coeff = 1;
      c.rational = true;
      st.components.push_back(c);
      continue;
    }
    for (auto [p, q] : prime_power_factors(n)) {
      Component c;
      c.factor = static_cast<int>(f);
      c.prime = p;
      c.modulus = q;
      c.crt_mult = n / q;
      c.crt_coeff =
          (c.crt_mult == 1) ? 1 : (c.crt_mult * mod_inverse(c.crt_mult % q, q)) % n;
      int slot;
      if (forced_slots) {
        if (component_counter >= static_cast<int>(forced_slots->size()))
          throw structural_error("forced slot list too short");
        slot = (*forced_slots)[component_counter];
      } else if (!params.torsion_slots.empty()) {
        if (params.torsion_slots.size() != params.group.torsion.size())
          throw structural_error("torsion_slots length != number of torsion factors");
        if (f >= params.group.torsion.size())
          throw structural_error("torsion_slots does not cover truncation factors; "
                                 "use automatic assignment");
        slot = params.torsion_slots[f];
      } else {
        slot = next_slot_for_prime[p]++;
      }
      if (slot < 0 || slot >= n_slots)
        throw structural_error("torsion slot out of range: no free translation coordinate "
                               "(p-rank obstruction at p=" + std::to_string(p) + ")");
      if (!forced_slots) {
        if (used_slots_for_prime[p].count(slot))
          throw structural_error("torsion slot collision for prime " + std::to_string(p));
        used_slots_for_prime[p].insert(slot);
      }
      c.slot = slot;
      st.components.push_back(c);
      ++component_counter;
    }
  }
  return st;
}

CpScheme build_scheme_impl(const CpSchemeParams& params,
                           const std::vector<int>* forced_slots) {
  params.group.validate();
  if (params.m < 1) throw structural_error("build_scheme: m must be >= 1");

  if (!forced_slots) {
    Existence ex = scheme_exists(params.m, params.group);
    if (!ex.exists)
      throw obstruction_error(ex.witness_prime,
                              "no complete CP-scheme: group contains Z_p^(m+d+1) for p=" +
                                  std::to_string(ex.witness_prime));
  }

  BuildState st = prepare_components(params, forced_slots);

  const int m = params.m;
  const int d = params.group.d;
  const int l = params.group.torus;
  const int t = static_cast<int>(st.components.size());
  const int N = m + d + l + t;

  BasisStyle style = params.style.value_or(
      (m == 1 && d == 1 && l == 0) ? BasisStyle::Classic : BasisStyle::Coupled);
  if (style == BasisStyle::Classic && (m != 1 || d != 1 || l != 0))
    throw structural_error("classic basis style requires m = 1, d = 1 and no torus factor");

  CpScheme scheme;
  scheme.params = params;
  scheme.style = style;

  // Parameter stream: consecutive 1/sqrt(p) blocks alpha | beta | gamma | eta.
  int s = params.prime_offset;
  const int stream_len = (style == BasisStyle::Classic ? 2 : m + d + l) + st.k_q;
  Vec stream = independent_vector(stream_len, s);
  if (style == BasisStyle::Coupled) {
    // condition ||alpha||*||beta|| < 1, offset raised until it holds
    while (true) {
      Vec a = stream.segment(0, m), b = stream.segment(m, d);
      if (a.norm() * b.norm() < 1.0) break;
      stream = independent_vector(stream_len, ++s);
    }
    scheme.alpha = stream.segment(0, m);
    scheme.beta = stream.segment(m, d);
    scheme.gamma = stream.segment(m + d, l);
    scheme.eta = stream.segment(m + d + l, st.k_q);
  } else {
    scheme.alpha = stream.segment(0, 1);
    scheme.beta = stream.segment(1, 1);
    scheme.gamma = Vec(0);
    scheme.eta = stream.segment(2, st.k_q);
  }

  LatticeBasis basis;
  basis.m = m;
  basis.group = st.effective_group;
  basis.B = Mat::Zero(N, N);
  basis.rows.resize(N);
  for (int i = 0; i < m; ++i) basis.rows[i] = {RowKind::Internal, i};
  for (int i = 0; i < d; ++i) basis.rows[m + i] = {RowKind::Physical, i};
  for (int i = 0; i < l; ++i) basis.rows[m + d + i] = {RowKind::TorusLift, i};

  Mat base = Mat::Zero(N, m + d);  // the m+d translate columns with torus coupling
  if (style == BasisStyle::Classic) {
    base(0, 0) = 1.0;
    base(1, 0) = 1.0;
    base(0, 1) = scheme.alpha[0];
    base(1, 1) = scheme.beta[0];
  } else {
    Mat IT = Mat::Identity(m + d, m + d) + build_T(scheme.alpha, scheme.beta);
    base.topRows(m + d) = IT;
    for (int k = 0; k < l; ++k) base(m + d + k, 0) = scheme.alpha[0] * scheme.gamma[k];
  }
  basis.B.leftCols(m + d) = base;

  for (int k = 0; k < l; ++k) basis.B(m + d + k, m + d + k) = 1.0;  // torus kill columns

  int rational_seen = 0;
  for (int c = 0; c < t; ++c) {
    const Component& comp = st.components[c];
    const int row = m + d + l + c;
    const int col = m + d + l + c;
    const double q = static_cast<double>(comp.modulus);
    if (comp.rational) {
      basis.rows[row] = {RowKind::RationalLift, rational_seen, comp.modulus,
                         comp.factor, 1, 1, -1};
      basis.B(0, col) = scheme.alpha[0] * scheme.eta[rational_seen] / q;
      ++rational_seen;
    } else {
      basis.rows[row] = {RowKind::TorsionLift, c, comp.modulus, comp.factor,
                         comp.crt_mult, comp.crt_coeff, comp.slot};
      basis.B.col(col) = base.col(comp.slot) / q;
    }
    basis.B(row, col) += 1.0 / q;
  }
  scheme.has_rational_factors = rational_seen > 0;

  Eigen::PartialPivLU<Mat> lu(basis.B);
  const double det = lu.determinant();
  if (std::abs(det) < 1e-12) throw numeric_error("build_scheme: singular lifted basis");
  Mat dual = lu.inverse().transpose();

  const double residual = (basis.B.transpose() * dual - Mat::Identity(N, N)).cwiseAbs().maxCoeff();
  if (residual > 1e-10)
    throw numeric_error("build_scheme: dual basis residual " + std::to_string(residual));

  LatticeBasis dual_basis = basis;
  dual_basis.B = dual;

  double fibers = 1.0;
  for (const auto& comp : st.components) fibers *= static_cast<double>(comp.modulus);

  scheme.basis = std::move(basis);
  scheme.dual_basis = std::move(dual_basis);
  scheme.section_mass = std::abs(det) * fibers;
  const double det_dual = Eigen::PartialPivLU<Mat>(dual).determinant();
  scheme.dual_section_mass = std::abs(det_dual) / fibers;
  if (std::abs(scheme.section_mass * scheme.dual_section_mass - 1.0) > 1e-9)
    throw numeric_error("build_scheme: s(H)*s(dual) deviates from 1");
  return scheme;
}

}  // namespace

CpScheme build_scheme(const CpSchemeParams& params) { return build_scheme_impl(params, nullptr); }

CpScheme build_scheme_unchecked(const CpSchemeParams& params,
                                const std::vector<int>& forced_component_slots) {
  return build_scheme_impl(params, &forced_component_slots);
}

namespace {

double mod1(double x) {
  double r = x - std::floor(x);
  if (r >= 1.0) r -= 1.0;
  return r;
}

long snap_residue(double value, long q, const char* who) {
  const double scaled = value * static_cast<double>(q);
  const double k = std::round(scaled);
  if (std::abs(scaled - k) > 1e-9 * std::max(1.0, std::abs(scaled)))
    throw numeric_error(std::string(who) + ": lift row " + std::to_string(value) +
                        " is not within 1e-9 of a multiple of 1/" + std::to_string(q));
  long r = static_cast<long>(std::llround(k)) % q;
  return r < 0 ? r + q : r;
}

}  // namespace

std::pair<Vec, GroupElement> project_point(const CpScheme& scheme, const IVec& z) {
  const LatticeBasis& basis = scheme.basis;
  if (z.size() != basis.size()) throw structural_error("project_point: bad coordinate length");
  Vec v = basis.B * z.cast<double>();
  const GroupSpec& g = basis.group;
  const int m = basis.m;
  GroupElement p2 = identity_element(g);
  Vec p1 = v.head(m);
  p2.real = v.segment(m, g.d);
  for (int i = 0; i < g.torus; ++i) p2.torus[i] = mod1(v[m + g.d + i]);
  for (int r = m + g.d + g.torus; r < basis.size(); ++r) {
    const RowInfo& info = basis.rows[r];
    long res = snap_residue(v[r], info.modulus, "project_point");
    p2.disc[info.factor] =
        (p2.disc[info.factor] + res * info.crt_coeff) % g.torsion[info.factor];
  }
  return {p1, p2};
}

std::pair<Vec, DualElement> dual_project(const CpScheme& scheme, const IVec& z) {
  if (scheme.has_rational_factors)
    throw structural_error("dual_project: dual side undefined for rational truncation factors");
  const LatticeBasis& basis = scheme.dual_basis;
  if (z.size() != basis.size()) throw structural_error("dual_project: bad coordinate length");
  Vec v = basis.B * z.cast<double>();
  const GroupSpec& g = basis.group;
  const int m = basis.m;
  DualElement q2;
  q2.real = v.segment(m, g.d);
  q2.zfreq.resize(g.torus);
  q2.disc.assign(g.torsion.size(), 0);
  for (int i = 0; i < g.torus; ++i) {
    const double y = v[m + g.d + i];
    if (std::abs(y - std::round(y)) > 1e-9 * std::max(1.0, std::abs(y)))
      throw numeric_error("dual_project: non-integer torus frequency (broken lift)");
    q2.zfreq[i] = static_cast<long>(std::llround(y));
  }
  for (int r = m + g.d + g.torus; r < basis.size(); ++r) {
    const RowInfo& info = basis.rows[r];
    const double y = v[r];
    if (std::abs(y - std::round(y)) > 1e-9 * std::max(1.0, std::abs(y)))
      throw numeric_error("dual_project: non-integer torsion row (broken lift)");
    long yc = static_cast<long>(std::llround(y)) % info.modulus;
    if (yc < 0) yc += info.modulus;
    // component dual residue y_c corresponds to y = y_c * (n/p^e) mod p^e
    long target = (yc * (info.crt_mult % info.modulus)) % info.modulus;
    q2.disc[info.factor] =
        (q2.disc[info.factor] + target * info.crt_coeff) % g.torsion[info.factor];
  }
  return {v.head(m), q2};
}

namespace {

// Occupancy-grid covering radius with wraparound, in the unit cell [0,1)^k.
class CoverGrid {
public:
  CoverGrid(int dims, int res) : dims_(dims), res_(res) {
    long cells = 1;
    for (int i = 0; i < dims; ++i) cells *= res;
    dist_.assign(cells, -1);
  }

  void mark(const Vec& x) {
    long idx = 0;
    for (int i = 0; i < dims_; ++i) {
      int c = static_cast<int>(std::floor(mod1(x[i]) * res_));
      if (c >= res_) c = res_ - 1;
      idx = idx * res_ + c;
    }
    dist_[idx] = 0;
  }

  // multi-source BFS in chebyshev steps, wrapped
  double covering_radius() {
    std::vector<long> frontier;
    for (long i = 0; i < static_cast<long>(dist_.size()); ++i)
      if (dist_[i] == 0) frontier.push_back(i);
    if (frontier.empty()) return 1.0;
    int level = 0;
    std::vector<long> next;
    std::vector<int> coord(dims_), ncoord(dims_);
    while (!frontier.empty()) {
      ++level;
      next.clear();
      for (long idx : frontier) {
        long rem = idx;
        for (int i = dims_ - 1; i >= 0; --i) {
          coord[i] = static_cast<int>(rem % res_);
          rem /= res_;
        }
        // chebyshev neighbors
        int moves = 1;
        for (int i = 0; i < dims_; ++i) moves *= 3;
        for (int mv = 0; mv < moves; ++mv) {
          int r = mv;
          long nidx = 0;
          bool self = true;
          for (int i = 0; i < dims_; ++i) {
            int step = r % 3 - 1;
            r /= 3;
            if (step != 0) self = false;
            int c = coord[i] + step;
            if (c < 0) c += res_;
            if (c >= res_) c -= res_;
            nidx = nidx * res_ + c;
          }
          if (self) continue;
          if (dist_[nidx] < 0) {
            dist_[nidx] = level;
            next.push_back(nidx);
          }
        }
      }
      frontier.swap(next);
    }
    int maxd = 0;
    for (int v : dist_) maxd = std::max(maxd, v);
    const double cell = 1.0 / res_;
    return (maxd + 0.5 * std::sqrt(static_cast<double>(dims_))) * cell;
  }

private:
  int dims_, res_;
  std::vector<int> dist_;
};

// max circular gap of values in [0,1), halved (covering radius on the circle)
double circle_covering(std::vector<double>& v) {
  std::sort(v.begin(), v.end());
  double best = v.front() + 1.0 - v.back();
  for (std::size_t i = 1; i < v.size(); ++i) best = std::max(best, v[i] - v[i - 1]);
  return best / 2.0;
}

}  // namespace

StructureReport structure_check(const CpScheme& scheme, int index_radius, double tol) {
  if (index_radius < 1) throw structural_error("structure_check: radius must be >= 1");
  const LatticeBasis& basis = scheme.basis;
  const GroupSpec& g = basis.group;
  const int m = basis.m;
  const int d = g.d;
  const int l = g.torus;
  const int N = basis.size();
  const int t = N - m - d - l;
  const int R = index_radius;

  // enumerate one representative per lattice element of H: base coefficients
  // in [-R,R], torsion generators over one period, torus kill coordinates
  // solved into [0,1)
  struct Item {
    Vec p1;
    GroupElement p2;
  };
  std::vector<Item> items;
  std::vector<long> torsion_counts(t);
  long fiber_reps = 1;
  for (int c = 0; c < t; ++c) {
    torsion_counts[c] = basis.rows[m + d + l + c].modulus;
    fiber_reps *= torsion_counts[c];
  }
  long base_reps = 1;
  for (int i = 0; i < m + d; ++i) base_reps *= 2L * R + 1L;
  items.reserve(base_reps * fiber_reps);

  IVec z = IVec::Zero(N);
  std::vector<long> base_idx(m + d, -R);
  std::vector<long> gen_idx(t, 0);
  while (true) {
    for (int i = 0; i < m + d; ++i) z[i] = static_cast<int>(base_idx[i]);
    for (int c = 0; c < t; ++c) z[m + d + l + c] = static_cast<int>(gen_idx[c]);
    // pick the torus kill coordinates putting each torus row in [0,1)
    for (int k = 0; k < l; ++k) {
      double pre = 0.0;
      for (int j = 0; j < N; ++j)
        if (j != m + d + k) pre += basis.B(m + d + k, j) * z[j];
      z[m + d + k] = static_cast<int>(-std::floor(pre));
    }
    auto [p1, p2] = project_point(scheme, z);
    items.push_back({std::move(p1), std::move(p2)});

    int c = 0;
    for (; c < t; ++c) {
      if (++gen_idx[c] < torsion_counts[c]) break;
      gen_idx[c] = 0;
    }
    if (c == t) {
      int i = 0;
      for (; i < m + d; ++i) {
        if (++base_idx[i] <= R) break;
        base_idx[i] = -R;
      }
      if (i == m + d) break;
    }
  }

  StructureReport rep;
  rep.element_count = static_cast<long>(items.size());

  // (a) min pairwise p1 distance: sort by first coordinate, sweep
  {
    std::vector<int> order(items.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return items[a].p1[0] < items[b].p1[0]; });
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < order.size(); ++i) {
      for (std::size_t j = i + 1; j < order.size(); ++j) {
        const double dx = items[order[j]].p1[0] - items[order[i]].p1[0];
        if (dx >= best) break;
        best = std::min(best, (items[order[j]].p1 - items[order[i]].p1).norm());
      }
    }
    rep.min_p1_distance = best;
    rep.p1_collision = best <= tol;
  }

  // (b) min pairwise p2 distance under the product metric, bucketed by fiber
  {
    std::map<std::vector<long>, std::vector<int>> buckets;
    for (std::size_t i = 0; i < items.size(); ++i)
      buckets[items[i].p2.disc].push_back(static_cast<int>(i));
    double best = std::numeric_limits<double>::infinity();
    for (auto& [disc, idxs] : buckets) {
      std::sort(idxs.begin(), idxs.end(),
                [&](int a, int b) { return items[a].p2.real[0] < items[b].p2.real[0]; });
      for (std::size_t i = 0; i < idxs.size(); ++i) {
        for (std::size_t j = i + 1; j < idxs.size(); ++j) {
          const double dx = items[idxs[j]].p2.real[0] - items[idxs[i]].p2.real[0];
          if (dx >= best) break;
          best = std::min(best, group_distance(items[idxs[j]].p2, items[idxs[i]].p2, g));
        }
      }
    }
    rep.min_p2_distance = best;
    rep.p2_collision = best <= tol;
  }

  // (c) covering radius of p1 mod 1 in [0,1)^m
  if (m == 1) {
    std::vector<double> fr(items.size());
    for (std::size_t i = 0; i < items.size(); ++i) fr[i] = mod1(items[i].p1[0]);
    rep.p1_covering_radius = circle_covering(fr);
  } else {
    CoverGrid grid(m, m == 2 ? 512 : 64);
    for (const auto& it : items) grid.mark(it.p1);
    rep.p1_covering_radius = grid.covering_radius();
  }

  // (d) covering radius of p2 (real mod 1 x torus) per fiber, max over fibers
  {
    std::map<std::vector<long>, std::vector<int>> buckets;
    for (std::size_t i = 0; i < items.size(); ++i)
      buckets[items[i].p2.disc].push_back(static_cast<int>(i));
    double worst = 0.0;
    const int dims = d + l;
    for (auto& [disc, idxs] : buckets) {
      if (dims == 1) {
        std::vector<double> fr;
        fr.reserve(idxs.size());
        for (int i : idxs)
          fr.push_back(mod1(d == 1 ? items[i].p2.real[0] : items[i].p2.torus[0]));
        worst = std::max(worst, circle_covering(fr));
      } else {
        CoverGrid grid(dims, dims == 2 ? 512 : 64);
        Vec x(dims);
        for (int i : idxs) {
          for (int k = 0; k < d; ++k) x[k] = items[i].p2.real[k];
          for (int k = 0; k < l; ++k) x[d + k] = items[i].p2.torus[k];
          grid.mark(x);
        }
        worst = std::max(worst, grid.covering_radius());
      }
    }
    rep.p2_covering_radius = worst;
  }

  return rep;
}

}  // namespace ql
