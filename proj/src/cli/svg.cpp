#include "miquel/cli/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <optional>
#include <sstream>

#include "miquel/elliptic_law.hpp"
#include "miquel/error.hpp"
#include "miquel/quartic.hpp"

namespace miquel::cli {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// Comment bodies may not contain "--".
std::string comment_safe(std::string text) {
  std::size_t pos;
  while ((pos = text.find("--")) != std::string::npos) text.replace(pos, 2, "-");
  return text;
}

struct Box {
  double xmin = std::numeric_limits<double>::infinity();
  double xmax = -std::numeric_limits<double>::infinity();
  double ymin = std::numeric_limits<double>::infinity();
  double ymax = -std::numeric_limits<double>::infinity();

  void add(Point2 p) {
    if (!is_finite(p)) return;
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
  bool contains(Point2 p) const { return p.x >= xmin && p.x <= xmax && p.y >= ymin && p.y <= ymax; }
};

// World to canvas; y grows downward on the canvas.
class View {
 public:
  View(Box content, int width) {
    const double w = content.xmax - content.xmin, h = content.ymax - content.ymin;
    const double margin = 0.05 * std::max({w, h, 1e-12});
    box_ = {content.xmin - margin, content.xmax + margin, content.ymin - margin, content.ymax + margin};
    k_ = width / (box_.xmax - box_.xmin);
    width_ = width;
    height_ = static_cast<int>(std::ceil((box_.ymax - box_.ymin) * k_));
  }

  Point2 map(Point2 p) const { return {(p.x - box_.xmin) * k_, (box_.ymax - p.y) * k_}; }
  double length(double world) const { return world * k_; }
  const Box& box() const { return box_; }
  int width() const { return width_; }
  int height() const { return height_; }

 private:
  Box box_;
  double k_ = 1.0;
  int width_ = 0;
  int height_ = 0;
};

std::string polyline(const View& view, const std::vector<Point2>& pts, const std::string& style) {
  std::string out = "  <polyline fill=\"none\" " + style + " points=\"";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Point2 m = view.map(pts[i]);
    if (i > 0) out += ' ';
    out += num(m.x) + ',' + num(m.y);
  }
  return out + "\"/>\n";
}

std::string marker(const View& view, Point2 p, double radius, const std::string& fill) {
  const Point2 m = view.map(p);
  return "  <circle cx=\"" + num(m.x) + "\" cy=\"" + num(m.y) + "\" r=\"" + num(radius) + "\" fill=\"" + fill +
         "\"/>\n";
}

std::string label(const View& view, Point2 p, const std::string& text, double size) {
  const Point2 m = view.map(p);
  return "  <text x=\"" + num(m.x + 0.6 * size) + "\" y=\"" + num(m.y - 0.4 * size) + "\" font-size=\"" +
         num(size) + "\" font-family=\"sans-serif\">" + text + "</text>\n";
}

// Pieces of the conic inside the view, traced along the axis in which the
// conic is at most quadratic with the larger leading coefficient.
std::vector<std::vector<Point2>> trace_conic(const ConicCoefficients& q, const Box& box, int samples) {
  const bool along_x = std::abs(q.yy) >= std::abs(q.xx);
  const double lo = along_x ? box.xmin : box.ymin, hi = along_x ? box.xmax : box.ymax;
  std::vector<std::vector<Point2>> done;
  std::vector<Point2> open[2];
  auto flush = [&](int k) {
    if (open[k].size() >= 2) done.push_back(open[k]);
    open[k].clear();
  };
  for (int i = 0; i <= samples; ++i) {
    const double t = lo + (hi - lo) * i / samples;
    // A w^2 + B w + C = 0 in the free coordinate w.
    const double A = along_x ? q.yy : q.xx;
    const double B = along_x ? q.xy * t + q.y : q.xy * t + q.x;
    const double C = along_x ? q.xx * t * t + q.x * t + q.c : q.yy * t * t + q.y * t + q.c;
    double roots[2];
    bool ok[2] = {false, false};
    if (std::abs(A) <= 1e-12 * (std::abs(B) + std::abs(C))) {
      if (B != 0.0) {
        roots[0] = -C / B;
        ok[0] = true;
      }
    } else {
      const double disc = B * B - 4.0 * A * C;
      if (disc >= 0.0) {
        const double r = std::sqrt(disc);
        roots[0] = (-B - r) / (2.0 * A);
        roots[1] = (-B + r) / (2.0 * A);
        ok[0] = ok[1] = true;
      }
    }
    for (int k = 0; k < 2; ++k) {
      const Point2 p = along_x ? Point2{t, roots[k]} : Point2{roots[k], t};
      if (ok[k] && box.contains(p)) open[k].push_back(p);
      else flush(k);
    }
  }
  flush(0);
  flush(1);
  return done;
}

}  // namespace

std::string render_svg(const Pattern22& S, const std::vector<Point2>& trail, const RenderOptions& options,
                       double tol) {
  if (options.width < 16) throw Error(ErrorCode::InvalidInput, "render width must be at least 16");
  if (!(options.stroke > 0.0)) throw Error(ErrorCode::InvalidInput, "stroke width must be positive");
  for (const std::string& name : options.layers)
    if (std::find(kLayers.begin(), kLayers.end(), name) == kLayers.end())
      throw Error(ErrorCode::InvalidInput, "unknown layer " + name);

  const auto wants = [&](const char* name) { return options.layers.count(name) > 0; };
  std::vector<std::string> skipped;
  auto attempt = [&](const char* name, const std::function<void()>& build) {
    if (!wants(name)) return;
    try {
      build();
    } catch (const Error& e) {
      skipped.push_back(std::string(name) + ": " + std::string(to_string(e.code())) + " (" + e.what() + ")");
    }
  };

  // Constructions first, so that the bounding box can include the curve.
  std::optional<MiquelQuartic> quartic;
  try {
    quartic = quartic_of_pattern(S, tol);
  } catch (const Error&) {
  }

  std::vector<std::vector<Point2>> quartic_lines;
  attempt("quartic", [&] {
    if (!quartic) quartic = quartic_of_pattern(S, tol);
    for (const auto& br : sample_real_curve(*quartic, options.samples_per_branch)) {
      std::vector<Point2> world;
      world.reserve(br.points.size());
      for (Point2 p : br.points) world.push_back(quartic->frame.to_world(p));
      quartic_lines.push_back(std::move(world));
    }
  });

  struct Mark {
    Point2 p;
    std::string name;
  };
  std::vector<Mark> foci;
  attempt("foci", [&] {
    if (!quartic) quartic = quartic_of_pattern(S, tol);
    foci.push_back({quartic->frame.origin, "Ω"});
    if (classify(S, tol) == PatternClass::Generic) {
      const GenericFoci f = generic_foci(S, tol);
      foci.push_back({f.P, "P"});
      foci.push_back({f.P_prime, "P′"});
    }
  });

  std::optional<Point2> neutral;
  attempt("neutral", [&] {
    if (!quartic) quartic = quartic_of_pattern(S, tol);
    const GroupLaw law(*quartic);
    neutral = law.to_world(law.neutral());
  });

  std::optional<HyperbolaSpec> hyperbola;
  attempt("hyperbola", [&] { hyperbola = fit_equilateral_hyperbola(S); });

  if (wants("orbit") && trail.empty()) skipped.push_back("orbit: no trail given");

  Box content;
  for (Point2 p : S.points()) content.add(p);
  for (const auto& line : quartic_lines)
    for (Point2 p : line) content.add(p);
  for (const Mark& m : foci) content.add(m.p);
  if (neutral) content.add(*neutral);
  if (wants("orbit"))
    for (Point2 p : trail) content.add(p);
  const View view(content, options.width);

  const double sw = options.stroke;
  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << view.width() << "\" height=\""
      << view.height() << "\" viewBox=\"0 0 " << view.width() << ' ' << view.height() << "\">\n";
  for (const std::string& note : skipped) svg << "<!-- skipped layer " << comment_safe(note) << " -->\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  for (const std::string& name : kLayers) {
    if (!wants(name.c_str())) continue;
    std::string body;
    if (name == "circles") {
      for (const FaceCircle& fc : face_circles(S)) {
        const Point2 m = view.map(fc.circle.center());
        const bool black = fc.color == Color::Black;
        body += "  <circle cx=\"" + num(m.x) + "\" cy=\"" + num(m.y) + "\" r=\"" +
                num(view.length(fc.circle.radius())) + "\" fill=\"none\" stroke=\"" +
                (black ? "#1a1a1a" : "#a0a0a0") + "\" stroke-width=\"" + num(black ? 1.5 * sw : sw) + "\"/>\n";
      }
    } else if (name == "hyperbola" && hyperbola) {
      for (const auto& piece : trace_conic(hyperbola->conic, view.box(), 2000))
        body += polyline(view, piece, "stroke=\"#2e8b57\" stroke-width=\"" + num(sw) + "\"");
    } else if (name == "quartic") {
      for (const auto& line : quartic_lines)
        body += polyline(view, line, "stroke=\"#1f5fbf\" stroke-width=\"" + num(1.5 * sw) + "\"");
    } else if (name == "foci") {
      for (const Mark& m : foci) body += marker(view, m.p, 2.5 * sw, "#8e44ad") + label(view, m.p, m.name, 12);
    } else if (name == "neutral" && neutral) {
      body += marker(view, *neutral, 3.0 * sw, "#d35400") + label(view, *neutral, "N", 12);
    } else if (name == "orbit") {
      for (std::size_t k = 0; k < trail.size(); ++k)
        body += marker(view, trail[k], 2.0 * sw, k == 0 ? "#c0392b" : "#e67e22");
    } else if (name == "points") {
      for (Label l : kAllLabels)
        body += marker(view, S[l], 3.0 * sw, "#c0392b") + label(view, S[l], std::string(1, to_char(l)), 14);
    }
    if (!body.empty()) svg << "<g id=\"" << name << "\">\n" << body << "</g>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace miquel::cli
