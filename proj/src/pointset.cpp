// Copyright (c) 2026 the quasilattice authors
// SPDX-License-Identifier: Apache-2.0
#include "quasilattice/pointset.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <unordered_set>

namespace ql {

namespace {

struct SearchPlan {
  Mat B;
  Vec lo, hi;
  Vec eps;                       // per-row conservative pruning margin
  std::vector<int> order;        // coordinate visit order; last entry is solved exactly
  std::vector<long> zlo, zhi;    // corner-hull ranges, inflated by one index
  // slack[r][depth] = attainable [min,max] contribution of coordinates not yet
  // fixed at this depth (depth = number of fixed coordinates)
  std::vector<std::vector<double>> slack_lo, slack_hi;
};

class Enumerator {
public:
  Enumerator(const LatticeBasis& basis, const LiftBox& target) : N_(basis.size()) {
    basis.validate();
    if (target.lo.size() != N_ || target.hi.size() != N_)
      throw structural_error("enumerate_lattice: target dimension != N");
    for (int i = 0; i < N_; ++i)
      if (!std::isfinite(target.lo[i]) || !std::isfinite(target.hi[i]))
        throw structural_error("enumerate_lattice: unbounded target");
    plan_.B = basis.B;
    plan_.lo = target.lo;
    plan_.hi = target.hi;
    plan_.eps = 1e-9 * (Vec::Ones(N_) + target.lo.cwiseAbs() + target.hi.cwiseAbs());

    Eigen::PartialPivLU<Mat> lu(basis.B);
    if (std::abs(lu.determinant()) < 1e-12)
      throw numeric_error("enumerate_lattice: degenerate basis");
    Mat Binv = lu.inverse();

    // image of the target corners under B^{-1}: center +/- |Binv| * halfwidth,
    // inflated by one index unit on each side
    Vec center = 0.5 * (target.lo + target.hi);
    Vec halfw = 0.5 * (target.hi - target.lo);
    Vec zc = Binv * center;
    Vec zr = Binv.cwiseAbs() * halfw;
    plan_.zlo.resize(N_);
    plan_.zhi.resize(N_);
    for (int i = 0; i < N_; ++i) {
      plan_.zlo[i] = static_cast<long>(std::floor(zc[i] - zr[i])) - 1;
      plan_.zhi[i] = static_cast<long>(std::ceil(zc[i] + zr[i])) + 1;
    }

    // visit narrow coordinates first; the widest is solved exactly
    plan_.order.resize(N_);
    std::iota(plan_.order.begin(), plan_.order.end(), 0);
    std::stable_sort(plan_.order.begin(), plan_.order.end(), [&](int a, int b) {
      return plan_.zhi[a] - plan_.zlo[a] < plan_.zhi[b] - plan_.zlo[b];
    });

    plan_.slack_lo.assign(N_, std::vector<double>(N_ + 1, 0.0));
    plan_.slack_hi.assign(N_, std::vector<double>(N_ + 1, 0.0));
    for (int r = 0; r < N_; ++r) {
      for (int depth = N_ - 1; depth >= 0; --depth) {
        const int j = plan_.order[depth];
        const double c = plan_.B(r, j);
        const double a = c * static_cast<double>(plan_.zlo[j]);
        const double b = c * static_cast<double>(plan_.zhi[j]);
        plan_.slack_lo[r][depth] = plan_.slack_lo[r][depth + 1] + std::min(a, b);
        plan_.slack_hi[r][depth] = plan_.slack_hi[r][depth + 1] + std::max(a, b);
      }
    }
  }

  std::vector<IVec> run() {
    partial_ = Vec::Zero(N_);
    z_.assign(N_, 0);
    out_.clear();
    descend(0);
    std::sort(out_.begin(), out_.end(), [](const IVec& a, const IVec& b) {
      for (int i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return a[i] < b[i];
      return false;
    });
    return std::move(out_);
  }

private:
  void descend(int depth) {
    if (depth == N_ - 1) {
      solve_last();
      return;
    }
    const int j = plan_.order[depth];
    for (long v = plan_.zlo[j]; v <= plan_.zhi[j]; ++v) {
      z_[j] = v;
      bool feasible = true;
      for (int r = 0; r < N_; ++r) {
        // conservative slack margin: pruning may keep boundary-grazing
        // branches, the final per-row test is exact
        const double p = partial_[r] + plan_.B(r, j) * static_cast<double>(v);
        if (p + plan_.slack_lo[r][depth + 1] >= plan_.hi[r] + plan_.eps[r] ||
            p + plan_.slack_hi[r][depth + 1] < plan_.lo[r] - plan_.eps[r]) {
          feasible = false;
          break;
        }
      }
      if (!feasible) continue;
      for (int r = 0; r < N_; ++r) partial_[r] += plan_.B(r, j) * static_cast<double>(v);
      descend(depth + 1);
      for (int r = 0; r < N_; ++r) partial_[r] -= plan_.B(r, j) * static_cast<double>(v);
    }
  }

  void solve_last() {
    const int j = plan_.order[N_ - 1];
    double lo = static_cast<double>(plan_.zlo[j]);
    double hi = static_cast<double>(plan_.zhi[j]);
    for (int r = 0; r < N_; ++r) {
      const double c = plan_.B(r, j);
      if (c == 0.0) continue;
      const double a = (plan_.lo[r] - partial_[r]) / c;
      const double b = (plan_.hi[r] - partial_[r]) / c;
      lo = std::max(lo, std::min(a, b) - 1.0);
      hi = std::min(hi, std::max(a, b) + 1.0);
    }
    if (lo > hi) return;
    const long vlo = static_cast<long>(std::floor(lo));
    const long vhi = static_cast<long>(std::ceil(hi));
    for (long v = vlo; v <= vhi; ++v) {
      bool inside = true;
      for (int r = 0; r < N_; ++r) {
        const double val = partial_[r] + plan_.B(r, j) * static_cast<double>(v);
        if (!(val >= plan_.lo[r] && val < plan_.hi[r])) {
          inside = false;
          break;
        }
      }
      if (!inside) continue;
      IVec z(N_);
      for (int i = 0; i < N_; ++i) z[i] = static_cast<int>(z_[i]);
      z[j] = static_cast<int>(v);
      out_.push_back(std::move(z));
    }
  }

  int N_;
  SearchPlan plan_;
  Vec partial_;
  std::vector<long> z_;
  std::vector<IVec> out_;
};

// target rows for the compact directions: torus representatives in [0,1),
// torsion/rational rows centered on one period of the 1/q grid
void set_compact_rows(const LatticeBasis& basis, LiftBox& t) {
  for (int r = 0; r < basis.size(); ++r) {
    const RowInfo& info = basis.rows[r];
    if (info.kind == RowKind::TorusLift) {
      t.lo[r] = 0.0;
      t.hi[r] = 1.0;
    } else if (info.kind == RowKind::TorsionLift || info.kind == RowKind::RationalLift) {
      const double q = static_cast<double>(info.modulus);
      t.lo[r] = -0.5 / q;
      t.hi[r] = 1.0 - 0.5 / q;
    }
  }
}

}  // namespace

std::vector<IVec> enumerate_lattice(const LatticeBasis& basis, const LiftBox& target) {
  return Enumerator(basis, target).run();
}

PointSet quasicrystal(const CpScheme& scheme, const Window& S, const Box& obs) {
  const LatticeBasis& basis = scheme.basis;
  const GroupSpec& g = basis.group;
  const int m = basis.m;
  if (S.boxes.empty()) return PointSet{g, m, obs, {}};
  S.validate();
  if (S.dim() != m) throw structural_error("quasicrystal: window dim != m");
  if (obs.dim() != g.d) throw structural_error("quasicrystal: obs dim != d");

  LiftBox t;
  t.lo = Vec::Zero(basis.size());
  t.hi = Vec::Zero(basis.size());
  Box sbb = S.bounding_box();
  t.lo.head(m) = sbb.lo;
  t.hi.head(m) = sbb.hi;
  t.lo.segment(m, g.d) = obs.lo;
  t.hi.segment(m, g.d) = obs.hi;
  set_compact_rows(basis, t);

  PointSet ps{g, m, obs, {}};
  for (IVec& z : enumerate_lattice(basis, t)) {
    auto [p1, p2] = project_point(scheme, z);
    if (!S.contains(p1)) continue;
    if (!obs.contains(p2.real)) continue;
    ps.points.push_back({std::move(p1), std::move(p2), std::move(z)});
  }
  return ps;
}

DualPointSet dual_model_set(const CpScheme& scheme, const SpectrumWindow& K, const Box& obs) {
  if (scheme.has_rational_factors)
    throw structural_error("dual_model_set: dual side undefined for rational truncations");
  const LatticeBasis& basis = scheme.dual_basis;
  const GroupSpec& g = basis.group;
  const int m = basis.m;
  if (K.real_boxes.empty() || K.zfreqs.empty() || K.residues.empty())
    return DualPointSet{g, m, obs, {}};
  K.validate(g);
  if (obs.dim() != m) throw structural_error("dual_model_set: obs dim != m");

  LiftBox t;
  t.lo = Vec::Zero(basis.size());
  t.hi = Vec::Zero(basis.size());
  t.lo.head(m) = obs.lo;
  t.hi.head(m) = obs.hi;
  Box kbb = K.real_bounding_box();
  t.lo.segment(m, g.d) = kbb.lo;
  t.hi.segment(m, g.d) = kbb.hi;
  for (int r = m + g.d; r < basis.size(); ++r) {
    const RowInfo& info = basis.rows[r];
    if (info.kind == RowKind::TorusLift) {
      long lo = std::numeric_limits<long>::max(), hi = std::numeric_limits<long>::min();
      for (const auto& zf : K.zfreqs) {
        lo = std::min(lo, zf[info.index]);
        hi = std::max(hi, zf[info.index]);
      }
      t.lo[r] = static_cast<double>(lo) - 0.5;
      t.hi[r] = static_cast<double>(hi) + 0.5;
    } else {
      // one dual period: torsion rows of Gamma take integer values, residues mod q
      t.lo[r] = -0.5;
      t.hi[r] = static_cast<double>(info.modulus) - 0.5;
    }
  }

  DualPointSet ps{g, m, obs, {}};
  for (IVec& z : enumerate_lattice(basis, t)) {
    auto [q1, q2] = dual_project(scheme, z);
    if (!obs.contains(q1)) continue;
    if (!K.contains(q2.real, q2.zfreq, q2.disc)) continue;
    ps.points.push_back({std::move(q1), std::move(q2), std::move(z)});
  }
  return ps;
}

namespace {

template <typename PointT, typename DistFn, typename KeyFn>
std::optional<double> min_sep_impl(const std::vector<PointT>& pts, KeyFn key, DistFn dist) {
  if (pts.size() < 2) return std::nullopt;
  std::vector<int> order(pts.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return key(pts[a]) < key(pts[b]); });
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (std::size_t j = i + 1; j < order.size(); ++j) {
      const double dx = key(pts[order[j]]) - key(pts[order[i]]);
      if (dx >= best) break;
      best = std::min(best, dist(pts[order[i]], pts[order[j]]));
    }
  }
  return best;
}

}  // namespace

std::optional<double> min_separation(const PointSet& ps) {
  const GroupSpec& g = ps.group;
  if (g.d >= 1) {
    return min_sep_impl(
        ps.points, [](const QuasiPoint& p) { return p.g.real[0]; },
        [&](const QuasiPoint& a, const QuasiPoint& b) { return group_distance(a.g, b.g, g); });
  }
  // no real direction to sweep on: quadratic fallback
  if (ps.points.size() < 2) return std::nullopt;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < ps.points.size(); ++i)
    for (std::size_t j = i + 1; j < ps.points.size(); ++j)
      best = std::min(best, group_distance(ps.points[i].g, ps.points[j].g, g));
  return best;
}

std::optional<double> min_separation(const DualPointSet& ps) {
  return min_sep_impl(
      ps.points, [](const DualPoint& p) { return p.q1[0]; },
      [](const DualPoint& a, const DualPoint& b) { return (a.q1 - b.q1).norm(); });
}

namespace {

bool box_set_symmetric(const std::vector<Box>& boxes, double tol) {
  for (const auto& b : boxes) {
    bool matched = false;
    for (const auto& c : boxes) {
      if ((b.lo + c.hi).cwiseAbs().maxCoeff() <= tol &&
          (b.hi + c.lo).cwiseAbs().maxCoeff() <= tol) {
        matched = true;
        break;
      }
    }
    if (!matched) return false;
  }
  return true;
}

double boundary_gap(const Vec& x, const Box& b) {
  double gap = std::numeric_limits<double>::infinity();
  for (int i = 0; i < b.dim(); ++i)
    gap = std::min({gap, std::abs(x[i] - b.lo[i]), std::abs(x[i] - b.hi[i])});
  return gap;
}

struct IVecHash {
  std::size_t operator()(const IVec& v) const {
    std::size_t h = 1469598103934665603ULL;
    for (int i = 0; i < v.size(); ++i) {
      h ^= static_cast<std::size_t>(static_cast<std::uint32_t>(v[i]));
      h *= 1099511628211ULL;
    }
    return h;
  }
};
struct IVecEq {
  bool operator()(const IVec& a, const IVec& b) const { return a == b; }
};

}  // namespace

namespace {

// Canonical representative of -z: negate, shift torsion generator coordinates
// back into [0, q) through the relation q*gen - base_slot = kill, re-solve the
// torus kill coordinates. Rational rows have no kill relation; a mirror that
// leaves the enumerated band has no representative (returns nullopt).
std::optional<IVec> mirror_representative(const CpScheme& scheme, const IVec& z) {
  const LatticeBasis& basis = scheme.basis;
  const int N = basis.size();
  const int m = basis.m;
  const int d = basis.group.d;
  const int l = basis.group.torus;
  IVec w = -z;
  for (int r = m + d + l; r < N; ++r) {
    const RowInfo& info = basis.rows[r];
    const int col = r;  // generator column index coincides with its row index
    if (info.kind == RowKind::TorsionLift) {
      long q = info.modulus;
      long rem = w[col] % q;
      if (rem < 0) rem += q;
      long k = (rem - w[col]) / q;
      w[col] = static_cast<int>(rem);
      w[info.slot] -= static_cast<int>(k);
    } else if (info.kind == RowKind::RationalLift) {
      if (w[col] < 0 || w[col] >= info.modulus) return std::nullopt;
    }
  }
  for (int k = 0; k < l; ++k) {
    const int row = m + d + k;
    double pre = 0.0;
    for (int j = 0; j < N; ++j)
      if (j != row) pre += basis.B(row, j) * w[j];
    w[row] = static_cast<int>(-std::floor(pre));
  }
  return w;
}

}  // namespace

bool symmetry_check(const CpScheme& scheme, const PointSet& ps, const Window& S, double tol,
                    double boundary_margin) {
  if (!box_set_symmetric(S.boxes, tol))
    throw structural_error("symmetry_check: window is not symmetric");
  std::vector<Box> obs_only{ps.obs};
  if (!box_set_symmetric(obs_only, tol))
    throw structural_error("symmetry_check: observation box is not symmetric");

  std::unordered_set<IVec, IVecHash, IVecEq> zset;
  for (const auto& p : ps.points) zset.insert(p.z);
  for (const auto& p : ps.points) {
    std::optional<IVec> neg = mirror_representative(scheme, p.z);
    if (neg && zset.count(*neg)) continue;
    // mirror may legitimately fall on a half-open boundary
    Vec neg_p1 = -p.p1;
    double gap = std::numeric_limits<double>::infinity();
    for (const auto& b : S.boxes) gap = std::min(gap, boundary_gap(neg_p1, b));
    gap = std::min(gap, boundary_gap(-p.g.real, ps.obs));
    if (gap <= boundary_margin) continue;
    return false;
  }
  return true;
}

}  // namespace ql
