#include "curvetp/svg.hpp"

#include "curvetp/straighten.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>

namespace curvetp {

namespace {

struct Event {
  int edge;
  Rational along;  // |x - x_start| along the edge
  Point point;
};

class Canvas {
 public:
  Canvas(const Polygon& p, const SvgOptions& o) : margin_(o.margin) {
    double lo_x = std::numeric_limits<double>::max(), lo_y = lo_x, hi_x = -lo_x, hi_y = -lo_x;
    for (const auto& v : p.vertices) {
      double x = v.x.get_d(), y = v.y.get_d();
      lo_x = std::min(lo_x, x);
      hi_x = std::max(hi_x, x);
      lo_y = std::min(lo_y, y);
      hi_y = std::max(hi_y, y);
    }
    double span = std::max(hi_x - lo_x, hi_y - lo_y);
    scale_ = span > 0 ? (o.width - 2 * o.margin) / span : 1;
    lo_x_ = lo_x;
    hi_y_ = hi_y;
    width_ = (hi_x - lo_x) * scale_ + 2 * o.margin;
    height_ = (hi_y - lo_y) * scale_ + 2 * o.margin;
  }

  std::string xy(const Point& p) const {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f,%.3f", (p.x.get_d() - lo_x_) * scale_ + margin_,
                  (hi_y_ - p.y.get_d()) * scale_ + margin_);
    return buf;
  }
  std::string circle(const Point& p, const char* cls, double r) const {
    std::string c = xy(p);
    auto comma = c.find(',');
    char buf[160];
    std::snprintf(buf, sizeof buf, "  <circle class=\"%s\" cx=\"%s\" cy=\"%s\" r=\"%.1f\"/>\n", cls,
                  c.substr(0, comma).c_str(), c.substr(comma + 1).c_str(), r);
    return buf;
  }
  double width() const { return width_; }
  double height() const { return height_; }

 private:
  double margin_, scale_ = 1, lo_x_ = 0, hi_y_ = 0, width_ = 0, height_ = 0;
};

std::string points(const Canvas& c, const std::vector<Point>& pts) {
  std::string s;
  for (const auto& p : pts) {
    if (!s.empty()) s += ' ';
    s += c.xy(p);
  }
  return s;
}

}  // namespace

std::string render_svg(const Polygon& polygon, const SvgOptions& options) {
  ExtractedCode ex = extract_leftmost(polygon);
  const Polygon& p = ex.polygon;
  const int m = p.size();
  Canvas canvas(p, options);

  // Crossing points in curve order: by edge, then along the edge.
  std::vector<Event> events;
  for (const auto& c : self_intersections(p))
    for (int e : {c.i, c.j}) events.push_back({e, abs(c.point.x - p.vertex(e).x), c.point});
  std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) {
    return a.edge != b.edge ? a.edge < b.edge : a.along < b.along;
  });

  char header[256];
  std::snprintf(header, sizeof header,
                "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
                "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"%.0f\" height=\"%.0f\" "
                "viewBox=\"0 0 %.0f %.0f\">\n",
                canvas.width(), canvas.height(), canvas.width(), canvas.height());
  std::string out = header;
  out +=
      "  <style>.curve{fill:none;stroke:#222;stroke-width:1.5;stroke-linejoin:round}"
      ".loop{fill:none;stroke:#d33;stroke-width:3;stroke-linejoin:round}"
      ".crossing{fill:#17c}.basepoint{fill:#2a2}</style>\n";
  out += "  <polygon class=\"curve\" points=\"" + points(canvas, p.vertices) + "\"/>\n";

  const int len = ex.code.positions();
  for (int k = 0; k < len; ++k) {
    int next = (k + 1) % len;
    if (len < 2 || ex.code.twin[k] != next) continue;
    std::vector<Point> path{events[k].point};
    for (int v = events[k].edge + 1; (v - 1 + m) % m != events[next].edge; ++v) path.push_back(p.vertex(v));
    path.push_back(events[next].point);
    out += "  <polyline class=\"loop\" points=\"" + points(canvas, path) + "\"/>\n";
  }
  for (int k = 0; k < len; ++k)
    if (k < ex.code.twin[k]) out += canvas.circle(events[k].point, "crossing", 4);
  out += canvas.circle(p.vertices[0], "basepoint", 3);
  out += "</svg>\n";
  return out;
}

std::string render_svg(const SignedCrossingCode& code, const SvgOptions& options) {
  return render_svg(straighten_upperbound(code).polygon, options);
}

}  // namespace curvetp
