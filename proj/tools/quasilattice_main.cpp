// Copyright (c) 2026 the quasilattice authors
// SPDX-License-Identifier: Apache-2.0
//
// quasilattice: build cut-and-project schemes on R^d x T^l x D, decide their
// existence, emit quasicrystal/dual point sets, and run the density, Poisson,
// Riesz-limit, sampling-sweep and duality experiments. JSON in, CSV/JSON/SVG
// out; identical configs and seeds produce byte-identical files.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "quasilattice/analysis.hpp"
#include "quasilattice/calibration.hpp"
#include "quasilattice/io.hpp"
#include "quasilattice/pointset.hpp"
#include "quasilattice/sampling.hpp"
#include "quasilattice/scheme.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitObstructed = 2;
constexpr int kExitNumeric = 3;

struct InputDigests {
  std::map<std::string, std::string> fields;

  void add(const std::string& name, const std::string& content) {
    std::ostringstream hex;
    hex << std::hex << ql::fnv1a(content);
    fields["input." + name] = hex.str();
  }
};

ql::Json load_json(const std::string& path, InputDigests& digests, const std::string& tag) {
  const std::string content = ql::read_file(path);
  digests.add(tag, content);
  try {
    return ql::Json::parse(content);
  } catch (const ql::Json::exception& e) {
    throw ql::structural_error("parse error in " + path + ": " + e.what());
  }
}

// "a:b" -> [a, b)
std::pair<double, double> parse_range(const std::string& s) {
  const auto colon = s.find(':');
  if (colon == std::string::npos)
    throw ql::structural_error("expected lo:hi range, got '" + s + "'");
  return {std::stod(s.substr(0, colon)), std::stod(s.substr(colon + 1))};
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
  if (out.empty()) throw ql::structural_error("empty list");
  return out;
}

ql::Box real_box(int dim, double lo, double hi) {
  ql::Box b;
  b.lo = ql::Vec::Constant(dim, lo);
  b.hi = ql::Vec::Constant(dim, hi);
  return b;
}

int cmd_exists(const std::string& group_path, int m) {
  InputDigests digests;
  ql::GroupSpec group = ql::group_from_json(load_json(group_path, digests, "group"));
  ql::Existence ex = ql::scheme_exists(m, group);
  if (ex.exists) {
    std::cout << "exists: complete CP-scheme (R^" << m << ", G, H) is constructible\n";
    return kExitOk;
  }
  std::cout << "obstructed at p=" << ex.witness_prime << ": D contains Z_p^" << (m + group.d + 1)
            << "\n";
  return kExitObstructed;
}

int cmd_build(const std::string& spec_path, const std::string& out_path) {
  InputDigests digests;
  ql::CpSchemeParams params = ql::params_from_json(load_json(spec_path, digests, "spec"));
  ql::CpScheme scheme = ql::build_scheme(params);
  ql::Json j = ql::scheme_to_json(scheme);
  j["inputs"] = digests.fields;
  ql::write_file(out_path, j.dump(2) + "\n");
  std::cout << "scheme built: N=" << scheme.basis.size()
            << " section_mass=" << ql::format_double(scheme.section_mass) << "\n";
  return kExitOk;
}

int cmd_points(const std::string& scheme_path, const std::string& window_path,
               const std::string& obs_range, const std::string& out_path,
               const std::string& svg_path) {
  InputDigests digests;
  ql::CpScheme scheme = ql::scheme_from_json(load_json(scheme_path, digests, "scheme"));
  ql::Window window = ql::window_from_json(load_json(window_path, digests, "window"));
  auto [lo, hi] = parse_range(obs_range);
  ql::PointSet ps = ql::quasicrystal(scheme, window, real_box(scheme.group().d, lo, hi));

  auto fields = digests.fields;
  fields["seed"] = "none";
  std::ostringstream csv;
  csv << ql::csv_header(fields);
  csv << "z,p1,p2_real,p2_torus,p2_disc\n";
  for (const auto& p : ps.points) {
    for (int i = 0; i < p.z.size(); ++i) csv << (i ? " " : "") << p.z[i];
    csv << ",";
    for (int i = 0; i < p.p1.size(); ++i) csv << (i ? " " : "") << ql::format_double(p.p1[i]);
    csv << ",";
    for (int i = 0; i < p.g.real.size(); ++i)
      csv << (i ? " " : "") << ql::format_double(p.g.real[i]);
    csv << ",";
    for (int i = 0; i < p.g.torus.size(); ++i)
      csv << (i ? " " : "") << ql::format_double(p.g.torus[i]);
    csv << ",";
    for (std::size_t i = 0; i < p.g.disc.size(); ++i) csv << (i ? " " : "") << p.g.disc[i];
    csv << "\n";
  }
  ql::write_file(out_path, csv.str());
  std::cout << "points: " << ps.points.size() << " -> " << out_path << "\n";

  if (!svg_path.empty()) {
    if (scheme.internal_dim() != 1 || scheme.group().d != 1)
      throw ql::structural_error("--svg scatter requires m = 1 and d = 1");
    std::map<long, ql::ScatterSeries> by_fiber;
    for (const auto& p : ps.points) {
      long fiber = 0;
      for (std::size_t i = 0; i < p.g.disc.size(); ++i)
        fiber = fiber * scheme.group().torsion[i] + p.g.disc[i];
      auto& series = by_fiber[fiber];
      if (series.label.empty()) series.label = "disc " + std::to_string(fiber);
      series.pts.emplace_back(p.p1[0], p.g.real[0]);
    }
    std::vector<ql::ScatterSeries> series;
    for (auto& [k, s] : by_fiber) series.push_back(std::move(s));
    ql::write_file(svg_path, ql::svg_scatter(series, "p1", "p2 real"));
  }
  return kExitOk;
}

int cmd_density(const std::string& scheme_path, const std::string& window_path, double lmax,
                int translates, const std::string& out_path) {
  InputDigests digests;
  ql::CpScheme scheme = ql::scheme_from_json(load_json(scheme_path, digests, "scheme"));
  ql::Window window = ql::window_from_json(load_json(window_path, digests, "window"));
  const int d = scheme.group().d;

  const std::vector<double> lengths = {lmax / 100.0, lmax / 10.0, lmax};
  std::vector<ql::Vec> a_list = ql::default_translates(translates, d, lmax / 20.0);
  const double margin = lmax / 2.0 + lmax / 20.0 + 1.0;
  ql::PointSet ps = ql::quasicrystal(scheme, window, real_box(d, -margin, margin));
  const double theory =
      ql::theoretical_density(scheme, window.measure(), ql::DensitySide::ModelSet);
  ql::DensityReport rep = ql::empirical_density(ps, lengths, a_list, theory);

  ql::Json j;
  j["tool"] = ql::Json{{"name", "quasilattice"}, {"version", ql::kVersion}};
  j["inputs"] = digests.fields;
  j["seed"] = "none";
  j["theoretical_density"] = theory;
  j["side_lengths"] = rep.side_lengths;
  j["lower_density"] = rep.lower_density;
  j["upper_density"] = rep.upper_density;
  j["max_rel_error_at_largest"] = rep.max_rel_error_at_largest;
  ql::write_file(out_path, j.dump(2) + "\n");
  std::cout << "density: theoretical=" << ql::format_double(theory)
            << " max_rel_error=" << ql::format_double(rep.max_rel_error_at_largest) << " -> "
            << out_path << "\n";
  return kExitOk;
}

int cmd_poisson(const std::string& scheme_path, double sigma, int num_x, std::uint64_t seed) {
  InputDigests digests;
  ql::CpScheme scheme = ql::scheme_from_json(load_json(scheme_path, digests, "scheme"));
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < num_x; ++i) {
    ql::Vec x(scheme.basis.size());
    for (int k = 0; k < x.size(); ++k) x[k] = unif(rng);
    ql::PoissonResult res = ql::poisson_check(scheme.basis, sigma, x);
    worst = std::max(worst, res.diff);
  }
  std::cout << "poisson: sigma=" << ql::format_double(sigma) << " max|lhs-rhs|="
            << ql::format_double(worst) << " over " << num_x << " points\n";
  return worst < ql::calibration::kPoissonTol ? kExitOk : kExitNumeric;
}

int cmd_nl(const std::string& scheme_path, double rmax, const std::string& out_path) {
  InputDigests digests;
  ql::CpScheme scheme = ql::scheme_from_json(load_json(scheme_path, digests, "scheme"));
  const int m = scheme.internal_dim();

  ql::TestFunctionPair fn;
  fn.phi.width = scheme.group().torsion.empty() ? ql::calibration::kNlPhiWidthFibonacci
                                                : ql::calibration::kNlPhiWidthTorsion;
  fn.psi.real_part.width = ql::calibration::kNlPsiWidth;

  std::vector<double> schedule;
  for (int k = 0;; ++k) {
    const double r = 10.0 * std::pow(10.0, k / 2.0);
    if (r > rmax * 1.0000001) break;
    schedule.push_back(r);
  }
  if (schedule.empty()) schedule.push_back(rmax);
  std::vector<ql::Vec> a_list = ql::default_translates(16, m, scheme.section_mass);
  auto rows = ql::nl_convergence(scheme, fn, schedule, a_list);

  auto fields = digests.fields;
  fields["seed"] = "none";
  std::ostringstream csv;
  csv << ql::csv_header(fields);
  csv << "r,max_rel_error,mean_rel_error,spread\n";
  for (const auto& row : rows)
    csv << ql::format_double(row.r) << "," << ql::format_double(row.max_rel_error) << ","
        << ql::format_double(row.mean_rel_error) << "," << ql::format_double(row.spread) << "\n";
  ql::write_file(out_path, csv.str());
  std::cout << "nl: error(" << ql::format_double(rows.front().r)
            << ")=" << ql::format_double(rows.front().max_rel_error) << " error("
            << ql::format_double(rows.back().r)
            << ")=" << ql::format_double(rows.back().max_rel_error) << " -> " << out_path << "\n";
  return kExitOk;
}

int cmd_sweep(const std::string& scheme_path, const std::string& interval,
              const std::string& ratios, int trials, double L, double delta, std::uint64_t seed,
              const std::string& out_path, const std::string& svg_path) {
  InputDigests digests;
  ql::CpScheme scheme = ql::scheme_from_json(load_json(scheme_path, digests, "scheme"));
  auto [ilo, ihi] = parse_range(interval);
  ql::SweepConfig cfg;
  cfg.ratios = parse_list(ratios);
  cfg.trials = trials;
  cfg.obs_length = L;
  cfg.delta = delta;
  cfg.seed = seed;
  cfg.band_lo = ql::calibration::kSweepBandLo;
  cfg.band_hi = ql::calibration::kSweepBandHi;
  auto reports = ql::universality_sweep(scheme, ql::Window::interval(ilo, ihi), cfg);

  auto fields = digests.fields;
  fields["seed"] = std::to_string(seed);
  std::ostringstream csv;
  csv << ql::csv_header(fields);
  csv << "ratio,trial,mu_K,num_points,num_freqs,Aest,Best,Riesz,cond,verdict\n";
  for (const auto& r : reports) {
    csv << ql::format_double(r.ratio) << "," << r.trial << ","
        << ql::format_double(r.spectrum_measure) << "," << r.num_points << "," << r.num_freqs
        << "," << ql::format_double(r.bounds.a_est) << "," << ql::format_double(r.bounds.b_est)
        << "," << ql::format_double(r.bounds.riesz_est) << ","
        << ql::format_double(r.bounds.cond) << "," << to_string(r.verdict) << "\n";
  }
  ql::write_file(out_path, csv.str());
  std::cout << "sweep: " << reports.size() << " trials -> " << out_path << "\n";

  if (!svg_path.empty()) {
    ql::ScatterSeries a{"Aest", {}}, i{"Riesz", {}};
    for (const auto& r : reports) {
      a.pts.emplace_back(r.ratio, r.bounds.a_est);
      i.pts.emplace_back(r.ratio, r.bounds.riesz_est);
    }
    ql::write_file(svg_path, ql::svg_scatter({a, i}, "mu(K)/D", "bound"));
  }
  return kExitOk;
}

int cmd_duality(const std::string& scheme_path, const std::string& window_path,
                const std::string& spectrum_path, double L, double LM,
                const std::string& out_path) {
  InputDigests digests;
  ql::CpScheme scheme = ql::scheme_from_json(load_json(scheme_path, digests, "scheme"));
  ql::Window S = ql::window_from_json(load_json(window_path, digests, "window"));
  ql::SpectrumWindow K = ql::spectrum_from_json(load_json(spectrum_path, digests, "spectrum"));
  ql::DualityConfig cfg;
  cfg.obs_length = L;
  cfg.dual_obs_length = LM;
  ql::DualityReport rep = ql::duality_probe(scheme, S, K, cfg);

  auto fields = digests.fields;
  fields["seed"] = "none";
  std::ostringstream csv;
  csv << ql::csv_header(fields);
  csv << "s_measure,k_measure,mk_points,mk_freqs,lambda_points,lambda_freqs,"
         "interp_proxy,sampling_proxy,interp_strong,sampling_strong\n";
  csv << ql::format_double(rep.s_measure) << "," << ql::format_double(rep.k_measure) << ","
      << rep.mk_points << "," << rep.mk_freqs << "," << rep.lambda_points << ","
      << rep.lambda_freqs << "," << ql::format_double(rep.interp_proxy) << ","
      << ql::format_double(rep.sampling_proxy) << "," << (rep.interp_strong ? 1 : 0) << ","
      << (rep.sampling_strong ? 1 : 0) << "\n";
  ql::write_file(out_path, csv.str());
  std::cout << "duality: interp=" << ql::format_double(rep.interp_proxy)
            << " sampling=" << ql::format_double(rep.sampling_proxy) << " -> " << out_path
            << "\n";
  if (rep.interp_strong && !rep.sampling_strong) {
    std::cout << "duality implication violated: strong interpolation without sampling\n";
    return kExitNumeric;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cut-and-project quasicrystal laboratory"};
  app.require_subcommand(1);

  std::string group_path, spec_path, scheme_path, window_path, spectrum_path;
  std::string out_path, svg_path, obs_range = "-50:50", interval = "0:1";
  std::string ratios = "0.5,0.8,1.0,1.25";
  int m = 1, trials = 20, translates = 8, num_x = 20;
  double lmax = 1000.0, sigma = 1.0, rmax = 1000.0, L = 500.0, LM = 4000.0, delta = 0.0;
  std::uint64_t seed = 7;

  auto* exists = app.add_subcommand("exists", "decide existence of a complete CP-scheme");
  exists->add_option("--group", group_path, "group spec JSON")->required();
  exists->add_option("--m", m, "internal dimension")->check(CLI::PositiveNumber);

  auto* scheme_cmd = app.add_subcommand("scheme", "scheme operations");
  auto* build = scheme_cmd->add_subcommand("build", "build the lattice of a scheme");
  build->add_option("--spec", spec_path, "scheme descriptor JSON")->required();
  build->add_option("--out", out_path, "output scheme JSON")->required();

  auto* points = app.add_subcommand("points", "emit a quasicrystal point set");
  points->add_option("--scheme", scheme_path)->required();
  points->add_option("--window", window_path)->required();
  points->add_option("--obs", obs_range, "observation range lo:hi");
  points->add_option("--out", out_path)->required();
  points->add_option("--svg", svg_path, "optional scatter plot");

  auto* density = app.add_subcommand("density", "empirical vs theoretical density");
  density->add_option("--scheme", scheme_path)->required();
  density->add_option("--window", window_path)->required();
  density->add_option("--lmax", lmax, "largest cube side")->check(CLI::PositiveNumber);
  density->add_option("--translates", translates, "translate samples")
      ->check(CLI::PositiveNumber);
  density->add_option("--out", out_path)->required();

  auto* poisson = app.add_subcommand("poisson", "two-sided Poisson summation check");
  poisson->add_option("--scheme", scheme_path)->required();
  poisson->add_option("--sigma", sigma, "Gaussian width")->check(CLI::PositiveNumber);
  poisson->add_option("--num-x", num_x, "random evaluation points")
      ->check(CLI::PositiveNumber);
  poisson->add_option("--seed", seed);

  auto* nl = app.add_subcommand("nl", "Riesz-limit convergence table");
  nl->add_option("--scheme", scheme_path)->required();
  nl->add_option("--rmax", rmax, "largest scale")->check(CLI::PositiveNumber);
  nl->add_option("--out", out_path)->required();

  auto* sweep = app.add_subcommand("sweep", "universality dichotomy sweep");
  sweep->add_option("--scheme", scheme_path)->required();
  sweep->add_option("--interval", interval, "window interval lo:hi");
  sweep->add_option("--ratios", ratios, "mu(K)/D ratios, comma separated");
  sweep->add_option("--trials", trials)->check(CLI::PositiveNumber);
  sweep->add_option("--L", L, "observation length")->check(CLI::PositiveNumber);
  sweep->add_option("--delta", delta, "frequency grid step (default 1/L)")
      ->check(CLI::NonNegativeNumber);
  sweep->add_option("--seed", seed);
  sweep->add_option("--out", out_path)->required();
  sweep->add_option("--svg", svg_path, "optional Aest-vs-ratio scatter");

  auto* duality = app.add_subcommand("duality", "duality implication probe");
  duality->add_option("--scheme", scheme_path)->required();
  duality->add_option("--window", window_path)->required();
  duality->add_option("--spectrum", spectrum_path)->required();
  duality->add_option("--L", L, "Lambda_S observation length")->check(CLI::PositiveNumber);
  duality->add_option("--LM", LM, "M_K observation length")->check(CLI::PositiveNumber);
  duality->add_option("--out", out_path)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*exists) return cmd_exists(group_path, m);
    if (*build) return cmd_build(spec_path, out_path);
    if (*points) return cmd_points(scheme_path, window_path, obs_range, out_path, svg_path);
    if (*density) return cmd_density(scheme_path, window_path, lmax, translates, out_path);
    if (*poisson) return cmd_poisson(scheme_path, sigma, num_x, seed);
    if (*nl) return cmd_nl(scheme_path, rmax, out_path);
    if (*sweep)
      return cmd_sweep(scheme_path, interval, ratios, trials, L, delta, seed, out_path, svg_path);
    if (*duality) return cmd_duality(scheme_path, window_path, spectrum_path, L, LM, out_path);
  } catch (const ql::obstruction_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitObstructed;
  } catch (const ql::numeric_error& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const ql::structural_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
