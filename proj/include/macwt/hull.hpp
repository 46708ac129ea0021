#pragma once

#include "macwt/linear_system.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace macwt {

struct Point2 {
  double x = 0;
  double y = 0;
  friend bool operator==(const Point2&, const Point2&) = default;
};

inline constexpr double kHullTolerance = 1e-9;

// Extreme points in counterclockwise order, starting from the lowest x
// (then lowest y). Points within `tol` of an edge are dropped; an all
// collinear input returns its two endpoints.
std::vector<Point2> convex_hull_2d(std::span<const Point2> points, double tol = kHullTolerance);

// Half-plane description of a hull returned by convex_hull_2d, over the
// two named variables. Degenerate hulls become equalities plus bounds.
LinearSystem hull_system(std::span<const Point2> hull, const std::string& x_name,
                         const std::string& y_name);

// Euclidean distance from p to the hull, 0 when inside.
double distance_outside(const Point2& p, std::span<const Point2> hull);

struct SeparatingLine {
  double w1 = 0;
  double w2 = 0;
  double t = 0;
  Rational w1_exact, w2_exact, t_exact;
};

// Finds w, t with w·target - t >= 1 and w·v - t <= -1 for every cloud
// point, minimizing |w1| + |w2|. Solved exactly on the binary values of the
// inputs; nullopt means the target lies in the cloud's hull.
std::optional<SeparatingLine> separate_point(const Point2& target, std::span<const Point2> cloud);

}  // namespace macwt
