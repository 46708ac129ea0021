#include "macwt/adder.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace macwt {

void AdderParams::validate() const {
  auto check = [](double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw std::invalid_argument(std::string(name) + " must lie in [0,1], got " + std::to_string(v));
    }
  };
  check(alpha, "alpha");
  check(beta, "beta");
  check(q1, "q1");
  check(q2, "q2");
}

std::pair<MacWiretapChannel, InputDistribution> build_adder_channel(const AdderParams& params) {
  params.validate();
  // tuple index = 2*x1 + x2; y and z in 0..3
  std::vector<double> pmf(4 * 4 * 4, 0.0);
  const double n1[2] = {1 - params.q1, params.q1};
  const double n2[2] = {1 - params.q2, params.q2};
  for (std::size_t x1 = 0; x1 < 2; ++x1) {
    for (std::size_t x2 = 0; x2 < 2; ++x2) {
      const std::size_t s = x1 + x2;
      const std::size_t tuple = 2 * x1 + x2;
      for (std::size_t e1 = 0; e1 < 2; ++e1) {
        for (std::size_t e2 = 0; e2 < 2; ++e2) {
          pmf[(tuple * 4 + s + e1) * 4 + s + e2] += n1[e1] * n2[e2];
        }
      }
    }
  }
  MacWiretapChannel channel({2, 2}, 4, 4, std::move(pmf));
  InputDistribution input{{{1 - params.alpha, params.alpha}, {1 - params.beta, params.beta}}};
  return {std::move(channel), std::move(input)};
}

namespace {

// Entropy of X1 + X2 + N with X1 ~ Bern(a), X2 ~ Bern(b), N ~ Bern(q).
double sum_entropy(double a, double b, double q) {
  const double p0 = (1 - a) * (1 - b) * (1 - q);
  const double p1 = (1 - a) * (1 - b) * q + (1 - a) * b * (1 - q) + a * (1 - b) * (1 - q);
  const double p2 = (1 - a) * b * q + a * (1 - b) * q + a * b * (1 - q);
  const double p3 = a * b * q;
  return shannon_entropy({p0, p1, p2, p3});
}

// Entropy of X + N with one Bernoulli input fixed out: the conditional
// masses do not depend on the value it is fixed to.
double shifted_entropy(double p, double q) {
  return shannon_entropy({(1 - p) * (1 - q), (1 - p) * q + p * (1 - q), p * q});
}

double plus(double v) { return v > 0 ? v : 0.0; }

}  // namespace

AdderEntropies closed_form_entropies(const AdderParams& params) {
  params.validate();
  const double a = params.alpha, b = params.beta;
  AdderEntropies h;
  h.h_n1 = binary_entropy(params.q1);
  h.h_n2 = binary_entropy(params.q2);
  h.h_y = sum_entropy(a, b, params.q1);
  h.h_y_given_x1 = shifted_entropy(b, params.q1);
  h.h_y_given_x2 = shifted_entropy(a, params.q1);
  h.h_z = sum_entropy(a, b, params.q2);
  h.h_z_given_x1 = shifted_entropy(b, params.q2);
  h.h_z_given_x2 = shifted_entropy(a, params.q2);
  return h;
}

AdderBounds region_bounds(const AdderParams& params) {
  const AdderEntropies h = closed_form_entropies(params);
  AdderBounds out;
  // I(X1;Y|X2) - I(X1;Z) and I(X1,X2;Y) - I(X1,X2;Z)
  const double single = h.h_y_given_x2 - h.h_n1 - h.h_z + h.h_z_given_x1;
  const double joint = h.h_y - h.h_n1 - h.h_z + h.h_n2;
  out.a1 = std::min(plus(single), plus(joint));
  out.b = plus(h.h_y_given_x1 - h.h_n1);
  out.c1 = plus(h.h_y - h.h_n1 - h.h_z + h.h_z_given_x1);
  // Eve conditioned on X2 once user 2 joins the secrecy set.
  out.a2 = plus(h.h_y_given_x2 - h.h_n1 - h.h_z_given_x2 + h.h_n2);
  out.c2 = plus(h.h_y - h.h_n1 - h.h_z_given_x2 + h.h_n2);

  constexpr double slop = 1e-12;
  if (out.c1 < out.a1 - slop || out.c2 < out.a2 - slop) {
    throw std::logic_error("sum bound below the single-user bound at alpha=" +
                           std::to_string(params.alpha) + " beta=" + std::to_string(params.beta));
  }
  return out;
}

RegionCase region_case(double a, double b, double c) {
  RegionCase r;
  if (c <= 0) {
    r.case_id = 1;
    r.corners = {{0, 0}};
  } else if (a <= 0) {
    r.case_id = 2;
    r.corners = {{0, 0}, {0, std::min(b, c)}};
  } else if (b <= c - a) {
    r.case_id = 3;
    r.corners = {{0, 0}, {a, 0}, {a, b}, {0, b}};
  } else if (b <= c) {
    r.case_id = 4;
    r.corners = {{0, 0}, {a, 0}, {a, c - a}, {c - b, b}, {0, b}};
  } else {
    r.case_id = 5;
    r.corners = {{0, 0}, {a, 0}, {a, c - a}, {0, c}};
  }
  return r;
}

RegionCase region_case(const AdderBounds& bounds, AdderScheme which) {
  if (which == AdderScheme::Old) return region_case(bounds.a1, bounds.b, bounds.c1);
  return region_case(bounds.a2, bounds.b, bounds.c2);
}

SweepResult sweep_and_hull(double q1, double q2, double delta) {
  if (!(delta > 0 && delta <= 0.5)) {
    throw std::invalid_argument("delta must lie in (0, 0.5], got " + std::to_string(delta));
  }
  const auto steps = static_cast<std::size_t>(std::floor(1.0 / delta + 1e-9));
  SweepResult out;
  std::vector<Point2> old_pts, new_pts;
  out.per_cell.reserve((steps + 1) * (steps + 1));
  for (std::size_t i = 0; i <= steps; ++i) {
    const double alpha = std::min(1.0, static_cast<double>(i) * delta);
    for (std::size_t j = 0; j <= steps; ++j) {
      const double beta = std::min(1.0, static_cast<double>(j) * delta);
      SweepCell cell{alpha, beta, region_bounds({alpha, beta, q1, q2})};
      for (const auto& p : region_case(cell.bounds, AdderScheme::Old).corners) old_pts.push_back(p);
      for (const auto& p : region_case(cell.bounds, AdderScheme::New1).corners) new_pts.push_back(p);
      out.per_cell.push_back(cell);
    }
  }
  out.hull_old = convex_hull_2d(old_pts);
  out.hull_new1 = convex_hull_2d(new_pts);
  return out;
}

SeparationResult reproduce_separation(const std::vector<Point2>& hull_old,
                                      const std::vector<Point2>& hull_new1) {
  SeparationResult out;
  bool found = false;
  for (const auto& v : hull_new1) {
    auto line = separate_point(v, hull_old);
    if (!line) continue;
    out.separable.push_back(v);
    const bool better = !found || v.x > out.v0.x || (v.x == out.v0.x && v.y > out.v0.y);
    if (better) {
      out.v0 = v;
      out.line = *line;
      found = true;
    }
  }
  if (!found) throw std::runtime_error("regions not strictly nested at this (q1,q2)");
  out.distance = distance_outside(out.v0, hull_old);
  return out;
}

SeparationResult reproduce_separation(double q1, double q2, double delta) {
  const SweepResult sweep = sweep_and_hull(q1, q2, delta);
  return reproduce_separation(sweep.hull_old, sweep.hull_new1);
}

}  // namespace macwt
