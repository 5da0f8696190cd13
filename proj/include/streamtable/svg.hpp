#pragma once

#include <streamtable/layout.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace streamtable {

enum class Smoothing { None, Rounded };

struct RenderOptions {
  double scale = 20.0;
  std::vector<std::string> palette = default_palette();
  Smoothing smoothing = Smoothing::None;
  /// Corner radius as a fraction of the smallest row height.
  double radius_fraction = 0.25;
  bool show_grid = true;
  bool labels = false;

  static std::vector<std::string> default_palette() {
    return {"#332288", "#88CCEE", "#44AA99", "#117733", "#999933", "#DDCC77",
            "#CC6677", "#882255", "#AA4499", "#E69F00", "#56B4E9", "#009E73"};
  }
};

inline void validate_render_options(const RenderOptions& opts) {
  if (!(opts.scale > 0) || !std::isfinite(opts.scale)) throw Error(ErrorKind::NonPositiveParameter, "scale must be positive");
  if (!(opts.radius_fraction >= 0 && opts.radius_fraction <= 0.5)) {
    throw Error(ErrorKind::NonPositiveParameter, "radius fraction must lie in [0, 1/2]");
  }
  if (opts.palette.empty()) throw Error(ErrorKind::NonPositiveParameter, "palette is empty");
}

struct Point {
  Rational x;
  Rational y;
  bool operator==(const Point&) const = default;
};

using Polygon = std::vector<Point>;

/// Rectilinear outline of one stream: one polygon per connected run of rows.
struct StreamOutline {
  std::size_t col = 0;
  std::vector<Polygon> runs;
};

namespace detail {

inline Rational shoelace(const Polygon& poly) {
  Rational twice = 0;
  for (std::size_t k = 0; k < poly.size(); ++k) {
    const Point& a = poly[k];
    const Point& b = poly[(k + 1) % poly.size()];
    twice += a.x * b.y - b.x * a.y;
  }
  return twice / 2;
}

/// Drops repeated and collinear vertices.
inline Polygon simplify(Polygon poly) {
  bool changed = true;
  while (changed && poly.size() > 2) {
    changed = false;
    for (std::size_t k = 0; k < poly.size() && poly.size() > 2; ++k) {
      const Point& prev = poly[(k + poly.size() - 1) % poly.size()];
      const Point& cur = poly[k];
      const Point& next = poly[(k + 1) % poly.size()];
      bool dup = cur == next;
      bool collinear = (prev.x == cur.x && cur.x == next.x) || (prev.y == cur.y && cur.y == next.y);
      if (dup || collinear) {
        poly.erase(poly.begin() + static_cast<std::ptrdiff_t>(k));
        changed = true;
        break;
      }
    }
  }
  return poly;
}

inline std::string fmt(double v) {
  if (v == 0) v = 0;  // no "-0"
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline std::string xml_escape(std::string_view s) {
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

}  // namespace detail

/// Outlines of every stream, in drawing coordinates (y grows downwards, the
/// top-left of the bounding box is the origin).
inline std::vector<StreamOutline> stream_outlines(const Layout& layout) {
  const std::size_t r = layout.rows();
  const Rational x0 = layout.min_x();
  std::vector<Rational> ys(r + 1);
  ys[0] = 0;
  for (std::size_t p = 0; p < r; ++p) ys[p + 1] = ys[p] + layout.height(layout.order[p]);

  std::vector<StreamOutline> out;
  for (std::size_t j = 0; j < layout.cols(); ++j) {
    StreamOutline s;
    s.col = j;
    std::size_t start = 0;
    for (std::size_t p = 0; p < r; ++p) {
      bool run_ends = p + 1 == r;
      if (!run_ends) {
        const CellRect& a = layout.rect(layout.order[p], j);
        const CellRect& b = layout.rect(layout.order[p + 1], j);
        run_ends = std::max(a.left, b.left) > std::min(a.right, b.right);
      }
      if (!run_ends) continue;
      Polygon poly;
      for (std::size_t q = start; q <= p; ++q) {
        const CellRect& c = layout.rect(layout.order[q], j);
        poly.push_back({c.right - x0, ys[q]});
        poly.push_back({c.right - x0, ys[q + 1]});
      }
      for (std::size_t q = p + 1; q-- > start;) {
        const CellRect& c = layout.rect(layout.order[q], j);
        poly.push_back({c.left - x0, ys[q + 1]});
        poly.push_back({c.left - x0, ys[q]});
      }
      poly = detail::simplify(std::move(poly));
      // Start at the top-left corner.
      auto first = std::min_element(poly.begin(), poly.end(), [](const Point& a, const Point& b) {
        return a.y != b.y ? a.y < b.y : a.x < b.x;
      });
      std::rotate(poly.begin(), first, poly.end());
      s.runs.push_back(std::move(poly));
      start = p + 1;
    }
    out.push_back(std::move(s));
  }
  return out;
}

/// Empty regions as rectangles in drawing coordinates.
inline std::vector<Polygon> gap_polygons(const Layout& layout) {
  const Rational x0 = layout.min_x();
  std::vector<Rational> top(layout.rows());
  for (std::size_t p = 0; p < layout.rows(); ++p) top[layout.order[p]] = layout.band_top(p);
  std::vector<Polygon> out;
  for (const EmptyRect& g : empty_rectangles(layout)) {
    const Rational& y = top[g.row];
    Rational yb = y + g.height;
    out.push_back({{g.left - x0, y}, {g.right - x0, y}, {g.right - x0, yb}, {g.left - x0, yb}});
  }
  return out;
}

struct SvgAreaReport {
  Rational stream_area;
  Rational gap_area;
  Rational total() const { return stream_area + gap_area; }
};

/// Exact areas of the rectilinear geometry that render_svg draws.
inline SvgAreaReport svg_area_exact(const Layout& layout) {
  SvgAreaReport rep;
  rep.stream_area = 0;
  rep.gap_area = 0;
  for (const auto& s : stream_outlines(layout)) {
    for (const auto& poly : s.runs) rep.stream_area += abs(detail::shoelace(poly));
  }
  for (const auto& poly : gap_polygons(layout)) rep.gap_area += abs(detail::shoelace(poly));
  return rep;
}

namespace detail {

struct FPoint {
  double x;
  double y;
};

/// Largest corner leg at a reflex corner so that the bulge stays clear of
/// every cell of the given columns and inside the frame.
inline double reflex_clearance(const Layout& layout, const std::vector<Rational>& ys, std::size_t col, FPoint c,
                               double sx, double sy, double scale) {
  const double x0 = to_double(layout.min_x());
  double limit = sx > 0 ? to_double(layout.box_width()) * scale - c.x : c.x;
  limit = std::min(limit, sy > 0 ? to_double(layout.total_height()) * scale - c.y : c.y);
  const std::size_t lo = col == 0 ? 0 : col - 1;
  const std::size_t hi = std::min(col + 1, layout.cols() - 1);
  // Only bands that can meet the bulge.
  auto band_of = [&](double y) {
    auto it = std::upper_bound(ys.begin(), ys.end(), y, [&](double v, const Rational& b) { return v < to_double(b) * scale; });
    return static_cast<std::size_t>(std::max<std::ptrdiff_t>(0, (it - ys.begin()) - 1));
  };
  const std::size_t p_lo = band_of(c.y - limit);
  const std::size_t p_hi = std::min(band_of(c.y + limit), layout.rows() - 1);
  for (std::size_t p = p_lo; p <= p_hi; ++p) {
    double ry0 = to_double(ys[p]) * scale;
    double ry1 = to_double(ys[p + 1]) * scale;
    if (ry1 < c.y - limit || ry0 > c.y + limit) continue;
    for (std::size_t j = lo; j <= hi; ++j) {
      const CellRect& cell = layout.rect(layout.order[p], j);
      double rx0 = (to_double(cell.left) - x0) * scale;
      double rx1 = (to_double(cell.right) - x0) * scale;
      double dx, dy;
      if (sx > 0) {
        if (rx1 <= c.x) continue;
        dx = rx0 - c.x;
      } else {
        if (rx0 >= c.x) continue;
        dx = c.x - rx1;
      }
      if (sy > 0) {
        if (ry1 <= c.y) continue;
        dy = ry0 - c.y;
      } else {
        if (ry0 >= c.y) continue;
        dy = c.y - ry1;
      }
      // Halved so two bulges meeting in one gap cannot cross.
      double allowed = std::max(dx, dy) / (j == col ? 1.0 : 2.0);
      limit = std::min(limit, std::max(0.0, allowed));
    }
  }
  return limit;
}

inline std::string polygon_path(const Polygon& poly, double scale) {
  std::string d;
  for (std::size_t k = 0; k < poly.size(); ++k) {
    d += k == 0 ? "M" : " L";
    d += fmt(to_double(poly[k].x) * scale) + " " + fmt(to_double(poly[k].y) * scale);
  }
  return d + " Z";
}

inline std::string rounded_path(const Layout& layout, const std::vector<Rational>& ys, std::size_t col,
                                const Polygon& poly, double radius, double scale) {
  const std::size_t n = poly.size();
  std::vector<FPoint> pts;
  for (const auto& p : poly) pts.push_back({to_double(p.x) * scale, to_double(p.y) * scale});
  const double orientation = to_double(shoelace(poly));

  std::vector<double> legs(n);
  for (std::size_t k = 0; k < n; ++k) {
    const FPoint& prev = pts[(k + n - 1) % n];
    const FPoint& cur = pts[k];
    const FPoint& next = pts[(k + 1) % n];
    double in_len = std::hypot(cur.x - prev.x, cur.y - prev.y);
    double out_len = std::hypot(next.x - cur.x, next.y - cur.y);
    double leg = std::min({radius, in_len / 2, out_len / 2});
    double cross = (cur.x - prev.x) * (next.y - cur.y) - (cur.y - prev.y) * (next.x - cur.x);
    bool reflex = (cross > 0) != (orientation > 0);
    if (reflex && leg > 0) {
      // The bulge sits in the quadrant spanned by the outgoing direction and
      // the reverse of the incoming one.
      double sx = (next.x - cur.x) != 0 ? (next.x > cur.x ? 1 : -1) : (prev.x > cur.x ? 1 : -1);
      double sy = (next.y - cur.y) != 0 ? (next.y > cur.y ? 1 : -1) : (prev.y > cur.y ? 1 : -1);
      leg = std::min(leg, reflex_clearance(layout, ys, col, cur, sx, sy, scale));
    }
    legs[k] = leg;
  }

  auto towards = [](const FPoint& from, const FPoint& to, double dist) {
    double len = std::hypot(to.x - from.x, to.y - from.y);
    return FPoint{from.x + (to.x - from.x) * dist / len, from.y + (to.y - from.y) * dist / len};
  };
  std::string d;
  for (std::size_t k = 0; k < n; ++k) {
    const FPoint& prev = pts[(k + n - 1) % n];
    const FPoint& cur = pts[k];
    const FPoint& next = pts[(k + 1) % n];
    FPoint a = towards(cur, prev, legs[k]);
    FPoint b = towards(cur, next, legs[k]);
    d += k == 0 ? "M" : " L";
    d += fmt(a.x) + " " + fmt(a.y);
    if (legs[k] > 0) d += " Q" + fmt(cur.x) + " " + fmt(cur.y) + " " + fmt(b.x) + " " + fmt(b.y);
  }
  return d + " Z";
}

}  // namespace detail

/// Renders the layout as an SVG 1.1 document. Streams are drawn as one filled
/// path each; empty regions as an unfilled path of class "gap". Rounded
/// corners only change what is drawn, never the layout.
inline std::string render_svg(const Layout& layout, const RenderOptions& opts = {}) {
  validate_render_options(opts);
  const Table& t = *layout.table;
  const double s = opts.scale;
  const double width = to_double(layout.box_width()) * s;
  const double height = to_double(layout.total_height()) * s;

  // Exact check of the rectilinear geometry against the layout metrics.
  SvgAreaReport rep = svg_area_exact(layout);
  if (rep.stream_area != t.total_weight() || rep.total() != t.total_weight() + excess_area(layout)) {
    throw std::logic_error("rendered geometry does not match layout areas");
  }

  std::vector<Rational> ys(layout.rows() + 1);
  ys[0] = 0;
  for (std::size_t p = 0; p < layout.rows(); ++p) ys[p + 1] = ys[p] + layout.height(layout.order[p]);

  double margin_left = 0, margin_top = 0;
  if (opts.labels) {
    std::size_t longest = 0;
    for (const auto& l : t.row_labels()) longest = std::max(longest, l.size());
    margin_left = 8.0 + 7.0 * static_cast<double>(longest);
    margin_top = 20.0;
  }
  const double vw = width + margin_left;
  const double vh = height + margin_top;

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + detail::fmt(vw) + "\" height=\"" +
         detail::fmt(vh) + "\" viewBox=\"" + detail::fmt(-margin_left) + " " + detail::fmt(-margin_top) + " " +
         detail::fmt(vw) + " " + detail::fmt(vh) + "\">\n";
  out += "  <rect class=\"frame\" x=\"0\" y=\"0\" width=\"" + detail::fmt(width) + "\" height=\"" + detail::fmt(height) +
         "\" fill=\"#ffffff\" stroke=\"#000000\" stroke-width=\"0.5\"/>\n";

  std::string gaps;
  for (const auto& poly : gap_polygons(layout)) {
    if (!gaps.empty()) gaps += " ";
    gaps += detail::polygon_path(poly, s);
  }
  if (!gaps.empty()) out += "  <path class=\"gap\" fill=\"none\" stroke=\"none\" d=\"" + gaps + "\"/>\n";

  Rational min_h = layout.heights[0];
  for (const auto& h : layout.heights.values()) {
    if (h < min_h) min_h = h;
  }
  const double radius = opts.radius_fraction * to_double(min_h) * s;

  out += "  <g class=\"streams\">\n";
  for (const auto& stream : stream_outlines(layout)) {
    std::string d;
    for (const auto& poly : stream.runs) {
      if (!d.empty()) d += " ";
      if (opts.smoothing == Smoothing::Rounded && radius > 0) {
        d += detail::rounded_path(layout, ys, stream.col, poly, radius, s);
      } else {
        d += detail::polygon_path(poly, s);
      }
    }
    const std::string& colour = opts.palette[stream.col % opts.palette.size()];
    out += "    <path class=\"stream\" data-col=\"" + std::to_string(stream.col + 1) + "\" fill=\"" + colour +
           "\" d=\"" + d + "\"><title>" + detail::xml_escape(t.col_labels()[stream.col]) + "</title></path>\n";
  }
  out += "  </g>\n";

  if (opts.show_grid && layout.rows() > 1) {
    out += "  <g class=\"grid\" stroke=\"#000000\" stroke-width=\"0.5\" stroke-dasharray=\"2 2\">\n";
    for (std::size_t p = 1; p < layout.rows(); ++p) {
      std::string y = detail::fmt(to_double(ys[p]) * s);
      out += "    <line x1=\"0\" y1=\"" + y + "\" x2=\"" + detail::fmt(width) + "\" y2=\"" + y + "\"/>\n";
    }
    out += "  </g>\n";
  }

  if (opts.labels) {
    out += "  <g class=\"labels\" font-family=\"sans-serif\" font-size=\"11\">\n";
    for (std::size_t p = 0; p < layout.rows(); ++p) {
      double y = (to_double(ys[p]) + to_double(ys[p + 1])) / 2 * s;
      out += "    <text x=\"-4\" y=\"" + detail::fmt(y) + "\" text-anchor=\"end\" dominant-baseline=\"middle\">" +
             detail::xml_escape(t.row_labels()[layout.order[p]]) + "</text>\n";
    }
    const Rational x0 = layout.min_x();
    const std::size_t top = layout.order[0];
    for (std::size_t j = 0; j < layout.cols(); ++j) {
      const CellRect& c = layout.rect(top, j);
      double x = (to_double(c.left) + to_double(c.right)) / 2 * s - to_double(x0) * s;
      out += "    <text x=\"" + detail::fmt(x) + "\" y=\"-6\" text-anchor=\"middle\">" +
             detail::xml_escape(t.col_labels()[j]) + "</text>\n";
    }
    out += "  </g>\n";
  }
  out += "</svg>\n";
  return out;
}

/// Area enclosed by the rectilinear "stream" and "gap" paths of an SVG
/// produced by render_svg without smoothing, read back from the text and
/// divided by scale^2. Curve commands are rejected.
inline double svg_area_from_text(std::string_view svg, double scale) {
  double total = 0;
  std::size_t pos = 0;
  while ((pos = svg.find("<path class=\"", pos)) != std::string_view::npos) {
    std::size_t d_at = svg.find(" d=\"", pos);
    if (d_at == std::string_view::npos) break;
    d_at += 4;
    std::size_t d_end = svg.find('"', d_at);
    std::string_view d = svg.substr(d_at, d_end - d_at);
    pos = d_end;

    std::vector<std::pair<double, double>> pts;
    auto flush = [&] {
      double twice = 0;
      for (std::size_t k = 0; k < pts.size(); ++k) {
        const auto& a = pts[k];
        const auto& b = pts[(k + 1) % pts.size()];
        twice += a.first * b.second - b.first * a.second;
      }
      total += std::abs(twice) / 2;
      pts.clear();
    };
    std::size_t k = 0;
    auto number = [&]() {
      while (k < d.size() && d[k] == ' ') ++k;
      double v = 0;
      auto res = std::from_chars(d.data() + k, d.data() + d.size(), v);
      if (res.ec != std::errc()) throw std::invalid_argument("bad number in path data");
      k = static_cast<std::size_t>(res.ptr - d.data());
      return v;
    };
    while (k < d.size()) {
      char cmd = d[k];
      if (cmd == ' ') {
        ++k;
      } else if (cmd == 'M' || cmd == 'L') {
        ++k;
        double x = number();
        double y = number();
        pts.emplace_back(x, y);
      } else if (cmd == 'Z') {
        ++k;
        flush();
      } else {
        throw std::invalid_argument(std::string("unsupported path command '") + cmd + "'");
      }
    }
  }
  return total / (scale * scale);
}

}  // namespace streamtable
