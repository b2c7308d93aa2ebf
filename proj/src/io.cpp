// Copyright (c) 2026 the quasilattice authors
// SPDX-License-Identifier: Apache-2.0
#include "quasilattice/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace ql {

Json to_json(const GroupSpec& spec) {
  return Json{{"d", spec.d}, {"torus", spec.torus}, {"torsion", spec.torsion}};
}

GroupSpec group_from_json(const Json& j) {
  GroupSpec spec;
  try {
    spec.d = j.value("d", 0);
    spec.torus = j.value("torus", 0);
    if (j.contains("torsion")) spec.torsion = j.at("torsion").get<std::vector<long>>();
  } catch (const Json::exception& e) {
    throw structural_error(std::string("group spec: ") + e.what());
  }
  spec.validate();
  return spec;
}

namespace {

const char* style_name(BasisStyle s) {
  return s == BasisStyle::Classic ? "classic" : "coupled";
}

BasisStyle style_from_name(const std::string& s) {
  if (s == "classic") return BasisStyle::Classic;
  if (s == "coupled") return BasisStyle::Coupled;
  throw structural_error("unknown basis style: " + s);
}

}  // namespace

Json to_json(const CpSchemeParams& p) {
  Json j{{"m", p.m}, {"group", to_json(p.group)}, {"prime_offset", p.prime_offset}};
  if (p.style) j["style"] = style_name(*p.style);
  if (!p.torsion_slots.empty()) j["torsion_slots"] = p.torsion_slots;
  if (!p.truncations.empty()) {
    Json arr = Json::array();
    for (const auto& t : p.truncations) {
      if (t.q_denominator > 0)
        arr.push_back(Json{{"q_denominator", t.q_denominator}});
      else
        arr.push_back(Json{{"p", t.p}, {"s", t.s}});
    }
    j["truncations"] = arr;
  }
  return j;
}

CpSchemeParams params_from_json(const Json& j) {
  CpSchemeParams p;
  try {
    p.m = j.at("m").get<int>();
    p.group = group_from_json(j.at("group"));
    p.prime_offset = j.value("prime_offset", 0);
    if (j.contains("style")) p.style = style_from_name(j.at("style").get<std::string>());
    if (j.contains("torsion_slots"))
      p.torsion_slots = j.at("torsion_slots").get<std::vector<int>>();
    if (j.contains("truncations")) {
      for (const auto& t : j.at("truncations")) {
        TruncationSpec tr;
        if (t.contains("q_denominator")) {
          tr.q_denominator = t.at("q_denominator").get<long>();
        } else {
          tr.p = t.at("p").get<long>();
          tr.s = t.at("s").get<int>();
        }
        p.truncations.push_back(tr);
      }
    }
  } catch (const Json::exception& e) {
    throw structural_error(std::string("scheme spec: ") + e.what());
  }
  return p;
}

namespace {

Json matrix_to_json(const Mat& M) {
  Json rows = Json::array();
  for (int i = 0; i < M.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < M.cols(); ++j) row.push_back(M(i, j));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

Json scheme_to_json(const CpScheme& scheme) {
  Json j;
  j["tool"] = Json{{"name", "quasilattice"}, {"version", kVersion}};
  j["params"] = to_json(scheme.params);
  j["style"] = style_name(scheme.style);
  j["effective_group"] = to_json(scheme.group());
  j["alpha"] = std::vector<double>(scheme.alpha.begin(), scheme.alpha.end());
  j["beta"] = std::vector<double>(scheme.beta.begin(), scheme.beta.end());
  j["gamma"] = std::vector<double>(scheme.gamma.begin(), scheme.gamma.end());
  j["eta"] = std::vector<double>(scheme.eta.begin(), scheme.eta.end());
  j["basis"] = matrix_to_json(scheme.basis.B);
  j["dual_basis"] = matrix_to_json(scheme.dual_basis.B);
  j["section_mass"] = scheme.section_mass;
  return j;
}

CpScheme scheme_from_json(const Json& j) {
  CpSchemeParams params;
  try {
    params = params_from_json(j.at("params"));
  } catch (const Json::exception& e) {
    throw structural_error(std::string("scheme file: ") + e.what());
  }
  CpScheme scheme = build_scheme(params);
  // the numeric payload is advisory; rebuilding is deterministic, but verify
  // the stored section mass matches to guard against stale files
  if (j.contains("section_mass")) {
    const double stored = j.at("section_mass").get<double>();
    if (std::abs(stored - scheme.section_mass) > 1e-9 * std::max(1.0, stored))
      throw structural_error("scheme file does not match its descriptor (stale section_mass)");
  }
  return scheme;
}

Json to_json(const Window& w) {
  Json boxes = Json::array();
  for (const auto& b : w.boxes)
    boxes.push_back(Json{{"lo", std::vector<double>(b.lo.begin(), b.lo.end())},
                         {"hi", std::vector<double>(b.hi.begin(), b.hi.end())}});
  return Json{{"boxes", boxes}};
}

namespace {

Box box_from_json(const Json& jb) {
  auto lo = jb.at("lo").get<std::vector<double>>();
  auto hi = jb.at("hi").get<std::vector<double>>();
  if (lo.size() != hi.size()) throw structural_error("box: lo/hi size mismatch");
  Box b;
  b.lo = Eigen::Map<const Vec>(lo.data(), lo.size());
  b.hi = Eigen::Map<const Vec>(hi.data(), hi.size());
  return b;
}

}  // namespace

Window window_from_json(const Json& j) {
  Window w;
  try {
    for (const auto& jb : j.at("boxes")) w.boxes.push_back(box_from_json(jb));
  } catch (const Json::exception& e) {
    throw structural_error(std::string("window: ") + e.what());
  }
  w.validate();
  return w;
}

Json to_json(const SpectrumWindow& k) {
  Json boxes = Json::array();
  for (const auto& b : k.real_boxes)
    boxes.push_back(Json{{"lo", std::vector<double>(b.lo.begin(), b.lo.end())},
                         {"hi", std::vector<double>(b.hi.begin(), b.hi.end())}});
  return Json{{"real_boxes", boxes}, {"zfreqs", k.zfreqs}, {"residues", k.residues}};
}

SpectrumWindow spectrum_from_json(const Json& j) {
  SpectrumWindow k;
  try {
    for (const auto& jb : j.at("real_boxes")) k.real_boxes.push_back(box_from_json(jb));
    if (j.contains("zfreqs"))
      k.zfreqs = j.at("zfreqs").get<std::vector<std::vector<long>>>();
    else
      k.zfreqs = {{}};
    if (j.contains("residues"))
      k.residues = j.at("residues").get<std::vector<std::vector<long>>>();
    else
      k.residues = {{}};
  } catch (const Json::exception& e) {
    throw structural_error(std::string("spectrum: ") + e.what());
  }
  return k;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw structural_error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw structural_error("cannot write file: " + path);
  out << content;
}

std::string csv_header(const std::map<std::string, std::string>& fields) {
  std::string out = std::string("# quasilattice ") + kVersion + "\n";
  for (const auto& [k, v] : fields) out += "# " + k + "=" + v + "\n";
  return out;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  // prefer the shortest representation that round-trips
  for (int prec = 1; prec <= 16; ++prec) {
    char cand[64];
    std::snprintf(cand, sizeof(cand), "%.*g", prec, v);
    double back = 0.0;
    std::sscanf(cand, "%lf", &back);
    if (back == v) return cand;
  }
  return buf;
}

std::string svg_scatter(const std::vector<ScatterSeries>& series, const std::string& x_label,
                        const std::string& y_label, int width, int height) {
  static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                  "#ff7f0e", "#8c564b", "#e377c2", "#7f7f7f"};
  double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
  bool first = true;
  for (const auto& s : series)
    for (auto [x, y] : s.pts) {
      if (first) {
        xmin = xmax = x;
        ymin = ymax = y;
        first = false;
      }
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  if (xmax == xmin) xmax = xmin + 1;
  if (ymax == ymin) ymax = ymin + 1;
  const int margin = 50;
  auto sx = [&](double x) {
    return margin + (x - xmin) / (xmax - xmin) * (width - 2 * margin);
  };
  auto sy = [&](double y) {
    return height - margin - (y - ymin) / (ymax - ymin) * (height - 2 * margin);
  };
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
      << height << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<line x1=\"" << margin << "\" y1=\"" << height - margin << "\" x2=\""
      << width - margin << "\" y2=\"" << height - margin << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << margin << "\" y1=\"" << margin << "\" x2=\"" << margin << "\" y2=\""
      << height - margin << "\" stroke=\"black\"/>\n";
  svg << "<text x=\"" << width / 2 << "\" y=\"" << height - 10 << "\" text-anchor=\"middle\">"
      << x_label << "</text>\n";
  svg << "<text x=\"15\" y=\"" << height / 2 << "\" transform=\"rotate(-90 15 " << height / 2
      << ")\" text-anchor=\"middle\">" << y_label << "</text>\n";
  int ci = 0;
  int legend_y = margin;
  for (const auto& s : series) {
    const char* color = palette[ci++ % 8];
    for (auto [x, y] : s.pts)
      svg << "<circle cx=\"" << format_double(sx(x)) << "\" cy=\"" << format_double(sy(y))
          << "\" r=\"2.2\" fill=\"" << color << "\"/>\n";
    if (!s.label.empty()) {
      svg << "<text x=\"" << width - margin - 140 << "\" y=\"" << legend_y << "\" fill=\""
          << color << "\">" << s.label << "</text>\n";
      legend_y += 18;
    }
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace ql
