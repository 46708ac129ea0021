#pragma once

#include "macwt/hull.hpp"
#include "macwt/prob_core.hpp"

#include <utility>
#include <vector>

namespace macwt {

// Two binary users into Y = X1 + X2 + N1 and Z = X1 + X2 + N2.
struct AdderParams {
  double alpha = 0;  // P(X1 = 1)
  double beta = 0;   // P(X2 = 1)
  double q1 = 0;     // P(N1 = 1), Bob's noise
  double q2 = 0;     // P(N2 = 1), Eve's noise

  void validate() const;  // std::invalid_argument unless all four lie in [0,1]
};

// The two noises are independent given the inputs.
std::pair<MacWiretapChannel, InputDistribution> build_adder_channel(const AdderParams& params);

struct AdderEntropies {
  double h_n1 = 0, h_n2 = 0;
  double h_y = 0, h_y_given_x1 = 0, h_y_given_x2 = 0;
  double h_z = 0, h_z_given_x1 = 0, h_z_given_x2 = 0;
};

// Closed forms built from the output masses; no joint table involved.
AdderEntropies closed_form_entropies(const AdderParams& params);

// Corner parameters of the two secrecy options restricted to (R1s, R2o).
// "old": user 1 secret, user 2 open through standard MAC coding.
// "new1": same messages, but user 2 is part of the secrecy set and its
// open message confuses Eve.
struct AdderBounds {
  double a1 = 0, b = 0, c1 = 0;
  double a2 = 0, c2 = 0;
};

// Throws std::logic_error if c1 < a1 or c2 < a2 beyond rounding.
AdderBounds region_bounds(const AdderParams& params);

enum class AdderScheme { Old, New1 };

struct RegionCase {
  int case_id = 0;               // 1..5
  std::vector<Point2> corners;   // (R1s, R2o), counterclockwise from the origin
};

// Polygon {R1s <= a, R2o <= b, R1s + R2o <= c, both >= 0} classified into
// point / segment / rectangle / pentagon / trapezoid.
RegionCase region_case(const AdderBounds& bounds, AdderScheme which);
RegionCase region_case(double a, double b, double c);

struct SweepCell {
  double alpha = 0, beta = 0;
  AdderBounds bounds;
};

struct SweepResult {
  std::vector<Point2> hull_old;
  std::vector<Point2> hull_new1;
  std::vector<SweepCell> per_cell;  // alpha-major, then beta
};

// alpha and beta both run over i*delta for i = 0..floor(1/delta).
SweepResult sweep_and_hull(double q1, double q2, double delta);

struct SeparationResult {
  Point2 v0;                  // the selected extreme point of hull_new1
  SeparatingLine line;        // w·v0 - t >= 1, w·p - t <= -1 on hull_old
  double distance = 0;        // Euclidean distance from v0 to hull_old
  std::vector<Point2> separable;  // every separable extreme point of hull_new1
};

// Among the extreme points of hull_new1 that an LP separates from hull_old,
// takes the one with the largest R1s, breaking ties by the largest R2o.
// Throws std::runtime_error when none is separable.
SeparationResult reproduce_separation(const std::vector<Point2>& hull_old,
                                      const std::vector<Point2>& hull_new1);
SeparationResult reproduce_separation(double q1, double q2, double delta);

}  // namespace macwt
