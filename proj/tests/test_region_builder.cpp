#include "macwt/adder.hpp"
#include "macwt/lp.hpp"
#include "macwt/polytope.hpp"
#include "macwt/random_instances.hpp"
#include "macwt/region_builder.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace macwt;

namespace {

// P(y,z|x) = P(y|x) * (uniform over z): Eve learns nothing.
MacWiretapChannel blind_eve(Rng& rng, const std::vector<std::size_t>& sizes, std::size_t ny, std::size_t nz) {
  std::size_t tuples = 1;
  for (auto s : sizes) tuples *= s;
  std::vector<double> pmf;
  for (std::size_t t = 0; t < tuples; ++t) {
    const auto py = random_pmf(rng, ny);
    for (std::size_t y = 0; y < ny; ++y) {
      for (std::size_t z = 0; z < nz; ++z) pmf.push_back(py[y] / static_cast<double>(nz));
    }
  }
  return MacWiretapChannel(sizes, ny, nz, pmf);
}

// Z is a copy of Y.
MacWiretapChannel twin_outputs(Rng& rng, const std::vector<std::size_t>& sizes, std::size_t n) {
  std::size_t tuples = 1;
  for (auto s : sizes) tuples *= s;
  std::vector<double> pmf;
  for (std::size_t t = 0; t < tuples; ++t) {
    const auto py = random_pmf(rng, n);
    for (std::size_t y = 0; y < n; ++y) {
      for (std::size_t z = 0; z < n; ++z) pmf.push_back(y == z ? py[y] : 0.0);
    }
  }
  return MacWiretapChannel(sizes, n, n, pmf);
}

// Bob sees (X1, X2) exactly, Eve sees X2 exactly.
MacWiretapChannel eve_sees_second() {
  std::vector<double> pmf(4 * 4 * 2, 0.0);
  for (std::size_t x1 = 0; x1 < 2; ++x1) {
    for (std::size_t x2 = 0; x2 < 2; ++x2) {
      const std::size_t t = 2 * x1 + x2;
      pmf[(t * 4 + t) * 2 + x2] = 1.0;
    }
  }
  return MacWiretapChannel({2, 2}, 4, 2, pmf);
}

SyntheticInformation scalar_wiretap(double iy, double iz) {
  SyntheticInformation info(1);
  const UserSet one(1, 1), none(0, 1);
  info.set_y(one, none, iy).set_z(one, none, iz);
  return info;
}

const LinearInequality* row_with(const LinearSystem& s, const std::string& provenance) {
  for (const auto& r : s.rows()) {
    if (r.provenance == provenance) return &r;
  }
  return nullptr;
}

Rational lp_max_sum(const LinearSystem& s, const std::vector<std::string>& names) {
  std::map<std::string, Rational> obj;
  for (const auto& n : names) obj[n] = 1;
  const LpResult r = lp_solve(s, obj, Sense::Maximize);
  REQUIRE(r.status == LpStatus::Optimal);
  return r.optimum;
}

LinearSystem system_of(const std::vector<std::string>& vars,
                       const std::vector<std::pair<std::map<std::string, Rational>, Rational>>& rows) {
  LinearSystem s(vars);
  for (const auto& [c, rhs] : rows) s.add_row(c, Relation::LessEqual, rhs);
  return s;
}

}  // namespace

TEST_SUITE("region_builder") {

TEST_CASE("K=1 secrecy region from hand values") {
  const auto info = scalar_wiretap(0.8, 0.3);
  const RegionDescriptor d = build_secrecy_region(info, UserSet(1, 1));
  CHECK(d.kind == RegionKind::Secrecy);
  CHECK(d.system.variables() == std::vector<std::string>{"R1s", "R1o"});
  const Rational y = rhs_from_real(0.8), z = rhs_from_real(0.3);
  const LinearSystem expected = system_of(
      {"R1s", "R1o"}, {{{{"R1s", 1}}, y - z}, {{{"R1s", 1}, {"R1o", 1}}, y}, {{{"R1o", 1}}, y}});
  // the third hand row is implied once rates are nonnegative
  CHECK(polytope_equal(d.system.with_nonnegativity(), expected.with_nonnegativity()));
  const auto* secret = row_with(d.system, "S={1} S'={1} T={}");
  REQUIRE(secret);
  CHECK(secret->rhs == y - z);
  CHECK(d.mi_cache.at("I(X{1};Y)") == 0.8);
  CHECK(d.mi_cache.at("I(X{1};Z)") == 0.3);
}

TEST_CASE("clamping at zero") {
  const auto info = scalar_wiretap(0.3, 0.8);
  const RegionDescriptor d = build_secrecy_region(info, UserSet(1, 1));
  const auto* secret = row_with(d.system, "S={1} S'={1} T={}");
  REQUIRE(secret);
  CHECK(secret->rhs == 0);
  // the projection-outer rows are not clamped
  const auto l1 = build_projection_systems(info);
  const auto* outer = row_with(l1.outer.system, "S={1} S'={1} T={}");
  REQUIRE(outer);
  CHECK(outer->rhs < 0);
}

TEST_CASE("every secrecy row names its triple") {
  Rng rng(2);
  const auto ch = random_channel(rng, {2, 2, 2}, 3, 3);
  const ChannelInformation info(ch, random_input(rng, ch));
  for (const auto& kp : UserSet::all(3).subsets()) {
    const RegionDescriptor d = build_secrecy_region(info, kp);
    CHECK(d.system.variables() == rate_variables(3));
    std::size_t triples = 0, zeros = 0;
    for (const auto& r : d.system.rows()) {
      if (r.provenance.rfind("S=", 0) == 0) {
        ++triples;
        CHECK(r.provenance.find(" S'=") != std::string::npos);
        CHECK(r.provenance.find(" T=") != std::string::npos);
        CHECK(r.rhs >= 0);
      } else {
        ++zeros;
        CHECK(r.relation == Relation::Equal);
      }
    }
    const std::size_t kp_size = kp.size(), rest = 3 - kp_size;
    // sum over S of 2^|S| * 2^rest, minus the all-empty triple
    std::size_t count = 0;
    for (const auto& s : kp.subsets()) count += (std::size_t{1} << s.size()) << rest;
    CHECK(triples == count - 1);
    CHECK(zeros == rest);
  }
}

TEST_CASE("two-user listings match the general construction") {
  Rng rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const auto ch = random_channel(rng, {2, 3}, 3, 2);
    const ChannelInformation info(ch, random_input(rng, ch));
    for (const auto& kp : UserSet::all(2).subsets()) {
      const RegionDescriptor general = build_secrecy_region(info, kp);
      const RegionDescriptor listed = build_twouser_region(info, kp);
      CHECK(polytope_equal(general.system, listed.system));
      // literal rows coincide with generated rows of the same triple
      for (const auto& r : listed.system.rows()) {
        const auto* g = row_with(general.system, r.provenance);
        REQUIRE(g);
        CHECK(g->terms.size() == r.terms.size());
        CHECK(g->rhs == r.rhs);
      }
    }
  }
  SyntheticInformation three(3);
  CHECK_THROWS_AS(build_twouser_region(three, UserSet(1, 3)), std::invalid_argument);
}

TEST_CASE("user 1 secret, user 2 open: six rows") {
  Rng rng(6);
  const auto ch = random_channel(rng, {2, 2}, 3, 3);
  const ChannelInformation info(ch, random_input(rng, ch));
  const RegionDescriptor d = build_secrecy_region(info, UserSet(1, 2));
  CHECK(d.system.rows().size() == 6);
  const auto* r = row_with(d.system, "S={1} S'={1} T={2}");
  REQUIRE(r);
  CHECK(r->coefficient(d.system.index_of("R1s")) == 1);
  CHECK(r->coefficient(d.system.index_of("R2o")) == 1);
  CHECK(r->coefficient(d.system.index_of("R1o")) == 0);
  const auto& j = info.joint();
  const Rational rhs = rhs_from_real(conditional_mutual_information(j, j.x(0) | j.x(1), j.y())) -
                       rhs_from_real(conditional_mutual_information(j, j.x(0), j.z(), j.x(1)));
  CHECK(r->rhs == (rhs > 0 ? rhs : Rational(0)));
}

TEST_CASE("no secrecy set gives the MAC capacity region") {
  Rng rng(7);
  for (std::size_t K = 1; K <= 3; ++K) {
    const auto ch = random_channel(rng, std::vector<std::size_t>(K, 2), 3, 2);
    const ChannelInformation info(ch, random_input(rng, ch));
    const RegionDescriptor d = build_secrecy_region(info, UserSet::none(K));
    CHECK(polytope_equal(d.system, build_mac_capacity(info).system));
  }
}

TEST_CASE("open rates at zero collapse to the secret-only region") {
  Rng rng(8);
  for (int trial = 0; trial < 15; ++trial) {
    const std::size_t K = 2 + trial % 2;
    const auto ch = random_channel(rng, std::vector<std::size_t>(K, 2), 3, 3);
    const ChannelInformation info(ch, random_input(rng, ch));
    for (const auto& kp : UserSet::all(K).subsets()) {
      std::map<std::string, Rational> zeros;
      for (const auto& n : open_variables(K)) zeros[n] = 0;
      const LinearSystem collapsed = redundancy_prune(build_secrecy_region(info, kp).system.substitute(zeros));
      const LinearSystem secret_only = build_secret_only_region(info, kp).system;
      CHECK(polytope_equal(collapsed.reindexed(secret_only.variables()), secret_only));
    }
  }
}

TEST_CASE("projection base case") {
  const auto info = scalar_wiretap(0.8, 0.3);
  const ProjectionSystems l1 = build_projection_systems(info);
  CHECK(l1.inner.system.rows().size() == 3);
  CHECK(l1.outer.system.rows().size() == 2);
  CHECK(l1.inner.system.variables() == std::vector<std::string>{"R1s", "R1o", "R1a"});
  const Rational y = rhs_from_real(0.8), z = rhs_from_real(0.3);
  const LinearSystem outer = system_of({"R1s", "R1o"}, {{{{"R1s", 1}}, y - z}, {{{"R1s", 1}, {"R1o", 1}}, y}});
  CHECK(polytope_equal(l1.outer.system, outer));
  const ProjectionCheck c = verify_aux_projection(info);
  CHECK(c.equal);
  CHECK(c.projected_rows == 2);
}

TEST_CASE("degenerate channel forces every rate to zero") {
  SyntheticInformation info(2);
  for (const auto& a : UserSet::all(2).subsets()) {
    for (const auto& g : UserSet::all(2).minus(a).subsets()) {
      info.set_y(a, g, 0.0).set_z(a, g, 0.0);
    }
  }
  const ProjectionSystems l1 = build_projection_systems(info);
  CHECK(lp_max_sum(l1.outer.system.with_nonnegativity(), rate_variables(2)) == 0);
  CHECK(verify_aux_projection(info).equal);
}

TEST_CASE("projection equals the outer system on degraded channels") {
  Rng rng(11);
  for (int trial = 0; trial < 12; ++trial) {
    const auto ch = random_degraded_channel(rng, {2, 2}, 3, 2);
    const ChannelInformation info(ch, random_input(rng, ch));
    REQUIRE(check_extended_condition(info, UserSet::all(2)));
    const ProjectionCheck c = verify_aux_projection(info);
    CHECK(c.equal);
  }
  for (int trial = 0; trial < 3; ++trial) {
    const auto ch = random_degraded_channel(rng, {2, 2, 2}, 3, 2);
    const ChannelInformation info(ch, random_input(rng, ch));
    REQUIRE(check_extended_condition(info, UserSet::all(3)));
    CHECK(verify_aux_projection(info).equal);
  }
}

TEST_CASE("feasibility condition examples") {
  Rng rng(12);
  const auto blind = blind_eve(rng, {2, 2}, 3, 2);
  const ChannelInformation bi(blind, random_input(rng, blind));
  for (const auto& kp : UserSet::all(2).subsets()) {
    const Cond1Report r = check_condition_cond1(bi, kp);
    CHECK(r.holds);
    CHECK(r.violating_subsets.empty());
    CHECK(r.differences.size() == (std::size_t{1} << kp.size()));
  }
  // identical outputs: a single user meets the condition with equality
  const auto twin1 = twin_outputs(rng, {3}, 3);
  const ChannelInformation t1(twin1, random_input(rng, twin1));
  const Cond1Report r1 = check_condition_cond1(t1, UserSet::all(1));
  CHECK(r1.holds);
  CHECK_FALSE(r1.strict);
  for (const auto& d : r1.differences) CHECK(std::abs(d.difference) < 1e-12);
  // with two users only the full set is tight; knowing the other input helps Bob more
  const auto twin = twin_outputs(rng, {2, 2}, 3);
  const ChannelInformation ti(twin, random_input(rng, twin));
  const Cond1Report r = check_condition_cond1(ti, UserSet::all(2));
  CHECK(r.holds);
  CHECK_FALSE(r.strict);
  CHECK(std::abs(r.differences[3].difference) < 1e-12);
  CHECK(r.differences[1].difference > 0);

  // adder, uniform inputs: oracle from the joint directly
  const auto [ach, ain] = build_adder_channel({0.5, 0.5, 0.5, 0.75});
  const ChannelInformation ai(ach, ain);
  const auto& j = ai.joint();
  const double d1 = conditional_mutual_information(j, j.x(0), j.y(), j.x(1)) -
                    conditional_mutual_information(j, j.x(0), j.z());
  const double d2 = conditional_mutual_information(j, j.x(1), j.y(), j.x(0)) -
                    conditional_mutual_information(j, j.x(1), j.z());
  const double d12 = conditional_mutual_information(j, j.x(0) | j.x(1), j.y()) -
                     conditional_mutual_information(j, j.x(0) | j.x(1), j.z());
  const Cond1Report ar = check_condition_cond1(ai, UserSet::all(2));
  REQUIRE(ar.differences.size() == 4);
  CHECK(ar.differences[1].difference == doctest::Approx(d1).epsilon(1e-12));
  CHECK(ar.differences[2].difference == doctest::Approx(d2).epsilon(1e-12));
  CHECK(ar.differences[3].difference == doctest::Approx(d12).epsilon(1e-12));
  std::vector<UserSet> bad;
  if (d1 < -1e-9) bad.push_back(UserSet(1, 2));
  if (d2 < -1e-9) bad.push_back(UserSet(2, 2));
  if (d12 < -1e-9) bad.push_back(UserSet(3, 2));
  CHECK(ar.violating_subsets == bad);
  CHECK(ar.holds == bad.empty());
  // frozen: single users keep a margin, the pair does not
  CHECK(d1 == doctest::Approx(0.156639839167).epsilon(1e-10));
  CHECK(d2 == doctest::Approx(0.156639839167).epsilon(1e-10));
  CHECK(d12 == doctest::Approx(-0.126442974144).epsilon(1e-10));
}

TEST_CASE("condition and its extended family agree") {
  Rng rng(13);
  int violated = 0, held = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t K = 1 + trial % 3;
    const auto ch = random_channel(rng, std::vector<std::size_t>(K, 2), 2 + trial % 2, 2);
    const ChannelInformation info(ch, random_input(rng, ch));
    for (const auto& kp : UserSet::all(K).subsets()) {
      const bool a = check_condition_cond1(info, kp).holds;
      CHECK(a == check_extended_condition(info, kp));
      (a ? held : violated) += 1;
    }
  }
  CHECK(held > 20);
  CHECK(violated > 20);
}

TEST_CASE("auxiliary rates for hand values") {
  const auto info = scalar_wiretap(0.8, 0.3);
  const UserSet one(1, 1);
  const AuxRateSolution s = find_aux_rates(info, one, RatePoint{{{"R1s", 0.4}, {"R1o", 0.1}}});
  REQUIRE(s.feasible);
  CHECK(s.verified);
  CHECK(s.rates.at(0) >= 0.2 - 1e-12);
  CHECK(s.rates.at(0) <= 0.3 + 1e-12);

  const AuxRateSolution bad = find_aux_rates(info, one, RatePoint{{{"R1s", 0.6}, {"R1o", 0.0}}});
  CHECK_FALSE(bad.feasible);

  const AuxRateSolution none_needed = find_aux_rates(info, one, RatePoint{{{"R1s", 0.2}, {"R1o", 0.4}}});
  REQUIRE(none_needed.feasible);
  CHECK(none_needed.exact.at(0) == 0);
}

TEST_CASE("interior points always admit auxiliary rates") {
  Rng rng(14);
  std::size_t tested = 0;
  for (int trial = 0; trial < 40 && tested < 150; ++trial) {
    const std::size_t K = 2 + trial % 2;
    const auto ch = random_degraded_channel(rng, std::vector<std::size_t>(K, 2), 3, 2);
    const ChannelInformation info(ch, random_input(rng, ch));
    const UserSet kp(1 + static_cast<std::uint32_t>(uniform_index(rng, (1u << K) - 1)), K);
    REQUIRE(check_condition_cond1(info, kp).holds);
    const LinearSystem region = build_secrecy_region(info, kp).system;
    const double top = info.mi_y(UserSet::all(K), UserSet::none(K));
    for (int draw = 0; draw < 200 && tested < 150; ++draw) {
      RatePoint p;
      for (std::size_t k = 0; k < K; ++k) {
        p.assignment[secret_rate(k)] = kp.contains(k) ? top * uniform01(rng) / K : 0.0;
        p.assignment[open_rate(k)] = top * uniform01(rng) / K;
      }
      // strict interior: every inequality row with slack
      const auto x = exact_coordinates(region, p);
      bool interior = true;
      for (const auto& r : region.rows()) {
        if (r.relation == Relation::LessEqual && !(r.evaluate(x) <= r.rhs - exact_rational(1e-6))) interior = false;
      }
      if (!interior) continue;
      ++tested;
      const AuxRateSolution s = find_aux_rates(info, kp, p);
      CHECK(s.feasible);
      CHECK(s.verified);
      for (const auto& [k, v] : s.exact) CHECK(v >= 0);
    }
  }
  CHECK(tested >= 100);
}

TEST_CASE("maximal secrecy sum") {
  Rng rng(15);
  const auto blind = blind_eve(rng, {2, 2}, 3, 2);
  const ChannelInformation bi(blind, random_input(rng, blind));
  const SecrecyMax bm = max_sum_secrecy_rate(bi);
  CHECK(bm.argmax == UserSet::all(2));
  CHECK(bm.value == doctest::Approx(bi.mi_y(UserSet::all(2), UserSet::none(2))).epsilon(1e-12));
  CHECK(max_open_sum_at_secrecy_max(bi) == doctest::Approx(0.0));

  const auto twin = twin_outputs(rng, {2, 2}, 3);
  const ChannelInformation ti(twin, random_input(rng, twin));
  CHECK(max_sum_secrecy_rate(ti).value == 0);
  CHECK_THROWS_AS(max_open_sum_at_secrecy_max(ti), std::domain_error);
  CHECK_THROWS_AS(max_open_sum_at_secrecy_max_lp(ti), std::domain_error);

  const auto wire = random_degraded_channel(rng, {2}, 3, 2);
  const ChannelInformation wi(wire, random_input(rng, wire));
  CHECK(max_open_sum_at_secrecy_max(wi) ==
        doctest::Approx(wi.mi_z(UserSet(1, 1), UserSet(0, 1))).epsilon(1e-12));

  const auto [ach, ain] = build_adder_channel({0.95, 0.5, 0.5, 0.75});
  const ChannelInformation ai(ach, ain);
  const auto& j = ai.joint();
  double best = 0;
  for (std::uint32_t m = 1; m < 4; ++m) {
    const VarSet in = m, out = 3u & ~m;
    best = std::max(best, conditional_mutual_information(j, in, j.y(), out) -
                              conditional_mutual_information(j, in, j.z(), out));
  }
  const SecrecyMax am = max_sum_secrecy_rate(ai);
  CHECK(am.value == doctest::Approx(best).epsilon(1e-12));
  CHECK(std::abs(to_double(max_sum_secrecy_rate_lp(ai)) - am.value) < 1e-9);
  CHECK(std::abs(to_double(max_open_sum_at_secrecy_max_lp(ai)) - max_open_sum_at_secrecy_max(ai)) < 1e-9);
}

TEST_CASE("subset maximum equals the LP over all secrecy sets") {
  Rng rng(16);
  int positive = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t K = 1 + trial % 3;
    const auto ch = random_channel(rng, std::vector<std::size_t>(K, 2), 3, 2);
    const ChannelInformation info(ch, random_input(rng, ch));
    const SecrecyMax sm = max_sum_secrecy_rate(info);
    CHECK(std::abs(to_double(max_sum_secrecy_rate_lp(info)) - sm.value) < 1e-9);
    if (sm.value > 0) {
      ++positive;
      CHECK(std::abs(to_double(max_open_sum_at_secrecy_max_lp(info)) - max_open_sum_at_secrecy_max(info)) < 1e-9);
    }
  }
  CHECK(positive > 5);
}

TEST_CASE("containment when a user can be dropped from the secrecy set") {
  const auto ch = eve_sees_second();
  const ChannelInformation info(ch, InputDistribution::uniform(ch));
  const UserSet both(3, 2), second(2, 2), first(1, 2), none(0, 2);
  REQUIRE(find_k0(info, both));
  CHECK(*find_k0(info, both) == second);
  const ReductionReport r = secrecy_set_reduction(info, both, second);
  CHECK(r.hypotheses_hold);
  CHECK(r.strict_positivity);
  CHECK(r.reduced == first);
  CHECK(r.polytope_contained);
  CHECK(r.vertices_contained);
  CHECK(r.samples == 32);

  // K0 empty is a gate on the strict condition only; the reduced set is K' itself
  Rng rng(17);
  const auto blind = blind_eve(rng, {2, 2}, 3, 2);
  const ChannelInformation bi(blind, random_input(rng, blind));
  const ReductionReport same = secrecy_set_reduction(bi, both, none);
  CHECK(same.hypotheses_hold);
  CHECK(same.vertices_contained);
  CHECK(same.polytope_contained);

  // the blind eavesdropper leaves user 2's own difference positive
  const ReductionReport gated = secrecy_set_reduction(bi, both, second);
  CHECK_FALSE(gated.hypotheses_hold);
  CHECK_FALSE(gated.vertices_contained);

  CHECK_THROWS_AS(secrecy_set_reduction(info, both, both), std::invalid_argument);
  CHECK_THROWS_AS(secrecy_set_reduction(info, first, second), std::invalid_argument);
}

}
