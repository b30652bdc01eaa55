#pragma once

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "rosq/engine.hpp"

namespace rosq {

inline constexpr int kChartVersion = 1;

struct ChartRegion {
  int a_min = -4;
  int a_max = 36;
  int s_min = 0;
  int s_max = 40;
};

struct ChartPoint {
  int a = 0;
  int s = 0;
  std::string kind;
  std::string annot;
  std::string monomial;
  friend auto operator<=>(const ChartPoint&, const ChartPoint&) = default;
};

struct ChartArrow {
  int from_a = 0, from_s = 0, to_a = 0, to_s = 0, page = 0;
  friend auto operator<=>(const ChartArrow&, const ChartArrow&) = default;
};

/// Integer-stem (b = 0) view of one page, ready for rendering.
struct ChartData {
  Theory theory = Theory::en;
  int height = 0;
  int page = 0;
  bool einfty = false;
  ChartRegion region;
  std::vector<ChartPoint> points;
  std::vector<ChartArrow> arrows;
};

/// Nonzero points of the region, plus the nonzero arrows acting on this page
/// whose ends both lie in it.
inline ChartData chart_data(const PageLattice& page, const std::vector<Differential>& arrows, ChartRegion region) {
  const Window& w = page.window();
  if (w.b_min > 0 || w.b_max < 0) throw WindowError("window holds no integer stems");
  if (region.a_min > region.a_max || region.s_min > region.s_max) throw ArgumentError("empty chart region");
  if (region.a_min < w.a_min || region.a_max > w.a_max || region.s_min < w.s_min || region.s_max > w.s_max)
    throw WindowError("chart region exceeds the computed window");
  ChartData c{page.theory(), page.height(), page.page(), page.is_final(), region, {}, {}};
  const char* prefix = page.theory() == Theory::en ? "u" : "v";
  for (int a = region.a_min; a <= region.a_max; ++a)
    for (int s = region.s_min; s <= region.s_max; ++s) {
      const LatticePoint* p = page.find({{a, 0}, s});
      if (!p || p->descriptor.is_zero()) continue;
      if (!p->exact) throw WindowError("chart point " + to_string(p->degree) + " is not determined");
      std::string mono = p->generator.str();
      if (page.theory() == Theory::bpr && p->weight > 0) mono = "[w" + std::to_string(p->weight) + "] " + mono;
      c.points.push_back({a, s, std::string(p->descriptor.kind_name()), p->descriptor.annotation(prefix), mono});
    }
  auto inside = [&](TriDegree t) {
    return t.stem.b == 0 && t.stem.a >= region.a_min && t.stem.a <= region.a_max && t.s >= region.s_min &&
           t.s <= region.s_max;
  };
  for (const auto& d : arrows) {
    if (!d.effective || !inside(d.source) || !inside(d.target)) continue;
    c.arrows.push_back({d.source.stem.a, d.source.s, d.target.stem.a, d.target.s, d.page});
  }
  std::sort(c.points.begin(), c.points.end());
  std::sort(c.arrows.begin(), c.arrows.end());
  return c;
}

inline nlohmann::json to_json(const ChartData& c) {
  nlohmann::json j;
  j["version"] = kChartVersion;
  j["theory"] = std::string(theory_name(c.theory));
  j["height"] = c.height;
  j["page"] = c.page;
  j["einfty"] = c.einfty;
  j["region"] = {{"a_min", c.region.a_min}, {"a_max", c.region.a_max}, {"s_min", c.region.s_min},
                 {"s_max", c.region.s_max}};
  j["points"] = nlohmann::json::array();
  for (const auto& p : c.points)
    j["points"].push_back({{"a", p.a}, {"s", p.s}, {"kind", p.kind}, {"annot", p.annot}, {"monomial", p.monomial}});
  j["arrows"] = nlohmann::json::array();
  for (const auto& a : c.arrows)
    j["arrows"].push_back({{"from", {a.from_a, a.from_s}}, {"to", {a.to_a, a.to_s}}, {"page", a.page}});
  return j;
}

inline std::string render_json(const ChartData& c) { return to_json(c).dump(2) + "\n"; }

namespace detail {

inline std::string xml_escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

inline const char* page_color(int page) {
  switch (page) {
    case 3: return "#1f77b4";
    case 7: return "#d62728";
    case 15: return "#2ca02c";
    case 31: return "#9467bd";
    case 63: return "#ff7f0e";
    default: return "#444444";
  }
}

}  // namespace detail

/// Grid chart: stems to the right, filtration up. Witt points are squares,
/// torsion points circles, general descriptors are drawn hollow.
inline std::string render_svg(const ChartData& c) {
  constexpr int cell = 20;
  constexpr int margin = 40;
  const int cols = c.region.a_max - c.region.a_min + 1;
  const int rows = c.region.s_max - c.region.s_min + 1;
  const int width = 2 * margin + cols * cell;
  const int height = 2 * margin + rows * cell;
  auto x_of = [&](int a) { return margin + (a - c.region.a_min) * cell + cell / 2; };
  auto y_of = [&](int s) { return margin + (c.region.s_max - s) * cell + cell / 2; };

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
    << "\" viewBox=\"0 0 " << width << ' ' << height << "\" data-theory=\"" << theory_name(c.theory)
    << "\" data-height=\"" << c.height << "\" data-page=\"" << c.page << "\">\n";
  o << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height << "\" fill=\"#ffffff\"/>\n";
  const std::string title = std::string(c.theory == Theory::en ? "E" : "BPR") +
                            (c.theory == Theory::en ? std::to_string(c.height) : "") + " page " +
                            (c.einfty ? std::string("E_inf") : "E_" + std::to_string(c.page));
  o << "<text x=\"" << margin << "\" y=\"" << margin / 2 << "\" font-size=\"14\">" << detail::xml_escape(title)
    << "</text>\n";

  o << "<g stroke=\"#e6e6e6\" stroke-width=\"1\">\n";
  for (int a = c.region.a_min; a <= c.region.a_max; ++a)
    o << "<line x1=\"" << x_of(a) << "\" y1=\"" << margin << "\" x2=\"" << x_of(a) << "\" y2=\""
      << height - margin << "\"/>\n";
  for (int s = c.region.s_min; s <= c.region.s_max; ++s)
    o << "<line x1=\"" << margin << "\" y1=\"" << y_of(s) << "\" x2=\"" << width - margin << "\" y2=\"" << y_of(s)
      << "\"/>\n";
  o << "</g>\n";

  o << "<g font-size=\"10\" text-anchor=\"middle\">\n";
  for (int a = c.region.a_min; a <= c.region.a_max; ++a)
    if (a % 4 == 0) o << "<text x=\"" << x_of(a) << "\" y=\"" << height - margin / 2 << "\">" << a << "</text>\n";
  for (int s = c.region.s_min; s <= c.region.s_max; ++s)
    if (s % 4 == 0) o << "<text x=\"" << margin / 2 << "\" y=\"" << y_of(s) + 4 << "\">" << s << "</text>\n";
  o << "</g>\n";

  o << "<g stroke-width=\"1.5\">\n";
  for (const auto& a : c.arrows)
    o << "<line x1=\"" << x_of(a.from_a) << "\" y1=\"" << y_of(a.from_s) << "\" x2=\"" << x_of(a.to_a)
      << "\" y2=\"" << y_of(a.to_s) << "\" stroke=\"" << detail::page_color(a.page) << "\" data-page=\"" << a.page
      << "\"/>\n";
  o << "</g>\n";

  o << "<g>\n";
  for (const auto& p : c.points) {
    const int x = x_of(p.a);
    const int y = y_of(p.s);
    const bool general = p.kind.find("general") != std::string::npos;
    const char* fill = general ? "#ffffff" : "#000000";
    const std::string attrs = " data-a=\"" + std::to_string(p.a) + "\" data-s=\"" + std::to_string(p.s) +
                              "\" data-kind=\"" + p.kind + "\" data-annot=\"" + detail::xml_escape(p.annot) + "\"";
    if (p.kind.rfind("witt", 0) == 0) {
      o << "<rect x=\"" << x - 5 << "\" y=\"" << y - 5 << "\" width=\"10\" height=\"10\" fill=\"" << fill
        << "\" stroke=\"#000000\"" << attrs << "><title>" << detail::xml_escape(p.monomial + " " + p.annot)
        << "</title></rect>\n";
    } else {
      o << "<circle cx=\"" << x << "\" cy=\"" << y << "\" r=\"4\" fill=\"" << fill << "\" stroke=\"#000000\""
        << attrs << "><title>" << detail::xml_escape(p.monomial + " " + p.annot) << "</title></circle>\n";
    }
  }
  o << "</g>\n</svg>\n";
  return o.str();
}

}  // namespace rosq
