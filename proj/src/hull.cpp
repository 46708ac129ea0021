#include "macwt/hull.hpp"

#include "macwt/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace macwt {

namespace {

double cross(const Point2& o, const Point2& a, const Point2& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

}  // namespace

std::vector<Point2> convex_hull_2d(std::span<const Point2> input, double tol) {
  std::vector<Point2> pts(input.begin(), input.end());
  std::sort(pts.begin(), pts.end(), [](const Point2& a, const Point2& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [tol](const Point2& a, const Point2& b) {
                          return std::abs(a.x - b.x) <= tol && std::abs(a.y - b.y) <= tol;
                        }),
            pts.end());
  if (pts.size() <= 2) return pts;

  std::vector<Point2> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= tol) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= tol) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  if (hull.size() < 2) {
    // Everything collinear within tol: keep the endpoints.
    return {pts.front(), pts.back()};
  }
  return hull;
}

LinearSystem hull_system(std::span<const Point2> hull, const std::string& x_name,
                         const std::string& y_name) {
  LinearSystem s({x_name, y_name});
  if (hull.empty()) {
    s.add_row(LinearInequality{{}, Relation::LessEqual, Rational(-1), "empty hull"});
    return s;
  }
  if (hull.size() == 1) {
    s.add_row({{x_name, Rational(1)}}, Relation::Equal, exact_rational(hull[0].x), "point x");
    s.add_row({{y_name, Rational(1)}}, Relation::Equal, exact_rational(hull[0].y), "point y");
    return s;
  }
  if (hull.size() == 2) {
    const Point2& p = hull[0];
    const Point2& q = hull[1];
    const Rational px = exact_rational(p.x), py = exact_rational(p.y);
    const Rational qx = exact_rational(q.x), qy = exact_rational(q.y);
    const Rational dx = qx - px, dy = qy - py;
    s.add_row({{x_name, -dy}, {y_name, dx}}, Relation::Equal, -dy * px + dx * py, "segment line");
    s.add_row({{x_name, dx}, {y_name, dy}}, Relation::GreaterEqual, dx * px + dy * py, "segment start");
    s.add_row({{x_name, dx}, {y_name, dy}}, Relation::LessEqual, dx * qx + dy * qy, "segment end");
    return s;
  }
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const Point2& p = hull[i];
    const Point2& q = hull[(i + 1) % hull.size()];
    // r is inside when cross(q - p, r - p) >= 0.
    const Rational px = exact_rational(p.x), py = exact_rational(p.y);
    const Rational dx = exact_rational(q.x) - px, dy = exact_rational(q.y) - py;
    s.add_row({{x_name, -dy}, {y_name, dx}}, Relation::GreaterEqual, -dy * px + dx * py,
              "edge " + std::to_string(i));
  }
  return s;
}

double distance_outside(const Point2& p, std::span<const Point2> hull) {
  if (hull.empty()) return std::numeric_limits<double>::infinity();
  auto seg_dist = [](const Point2& r, const Point2& a, const Point2& b) {
    const double dx = b.x - a.x, dy = b.y - a.y;
    const double len2 = dx * dx + dy * dy;
    double u = len2 > 0 ? ((r.x - a.x) * dx + (r.y - a.y) * dy) / len2 : 0;
    u = std::clamp(u, 0.0, 1.0);
    return std::hypot(r.x - (a.x + u * dx), r.y - (a.y + u * dy));
  };
  if (hull.size() == 1) return std::hypot(p.x - hull[0].x, p.y - hull[0].y);
  if (hull.size() == 2) return seg_dist(p, hull[0], hull[1]);
  bool inside = true;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const Point2& a = hull[i];
    const Point2& b = hull[(i + 1) % hull.size()];
    if (cross(a, b, p) < 0) inside = false;
    best = std::min(best, seg_dist(p, a, b));
  }
  return inside ? 0.0 : best;
}

std::optional<SeparatingLine> separate_point(const Point2& target, std::span<const Point2> cloud) {
  // Columns: w1 w2 t u1 u2, with u bounding |w|.
  LinearSystem s({"w1", "w2", "t", "u1", "u2"});
  const Rational one = 1;
  s.add_row({{"w1", exact_rational(target.x)}, {"w2", exact_rational(target.y)}, {"t", -one}},
            Relation::GreaterEqual, one, "target side");
  for (std::size_t j = 0; j < cloud.size(); ++j) {
    s.add_row({{"w1", exact_rational(cloud[j].x)}, {"w2", exact_rational(cloud[j].y)}, {"t", -one}},
              Relation::LessEqual, -one, "cloud " + std::to_string(j));
  }
  s.add_row({{"u1", one}, {"w1", -one}}, Relation::GreaterEqual, 0, "abs w1");
  s.add_row({{"u1", one}, {"w1", one}}, Relation::GreaterEqual, 0, "abs w1");
  s.add_row({{"u2", one}, {"w2", -one}}, Relation::GreaterEqual, 0, "abs w2");
  s.add_row({{"u2", one}, {"w2", one}}, Relation::GreaterEqual, 0, "abs w2");

  const LpResult r = lp_solve(s, std::map<std::string, Rational>{{"u1", one}, {"u2", one}},
                              Sense::Minimize);
  if (r.status != LpStatus::Optimal) return std::nullopt;
  SeparatingLine line;
  line.w1_exact = r.witness[0];
  line.w2_exact = r.witness[1];
  line.t_exact = r.witness[2];
  line.w1 = to_double(line.w1_exact);
  line.w2 = to_double(line.w2_exact);
  line.t = to_double(line.t_exact);
  return line;
}

}  // namespace macwt
