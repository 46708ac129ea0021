#include "macwt/information.hpp"
#include "macwt/resolvability.hpp"

#include <doctest.h>

#include <cmath>
#include <numeric>
#include <stdexcept>

using namespace macwt;

namespace {

// Y through BSC(py), Z through BSC(pz), independently.
MacWiretapChannel bsc_pair(double py, double pz) {
  std::vector<double> pmf;
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      for (int z = 0; z < 2; ++z) {
        pmf.push_back((y == x ? 1 - py : py) * (z == x ? 1 - pz : pz));
      }
    }
  }
  return MacWiretapChannel({2}, 2, 2, pmf);
}

// Two binary users, Z = X1 xor X2 through BSC(pz); Y noiseless pair.
MacWiretapChannel xor_eve(double pz) {
  std::vector<double> pmf;
  for (int x1 = 0; x1 < 2; ++x1) {
    for (int x2 = 0; x2 < 2; ++x2) {
      const int t = 2 * x1 + x2;
      for (int y = 0; y < 4; ++y) {
        for (int z = 0; z < 2; ++z) {
          const double pzv = z == (x1 ^ x2) ? 1 - pz : pz;
          pmf.push_back(y == t ? pzv : 0.0);
        }
      }
    }
  }
  return MacWiretapChannel({2, 2}, 4, 2, pmf);
}

double total(const std::vector<double>& p) { return std::accumulate(p.begin(), p.end(), 0.0); }

}  // namespace

TEST_SUITE("resolvability") {

TEST_CASE("codebook sizes") {
  CHECK(codebook_size(0.0, 10) == 1);
  CHECK(codebook_size(0.5, 2) == 2);
  CHECK(codebook_size(0.5, 4) == 4);
  CHECK(codebook_size(0.5, 6) == 8);
  CHECK(codebook_size(0.05, 6) == 1);
  CHECK(codebook_size(0.3, 5) == 3);  // 2^1.5 = 2.83
  CHECK_THROWS_AS(codebook_size(-0.1, 3), std::invalid_argument);
  CHECK_THROWS_AS(codebook_size(5, 10), std::length_error);
}

TEST_CASE("ensemble layout") {
  const auto ch = xor_eve(0.1);
  const auto in = InputDistribution::uniform(ch);
  const std::vector<LayeredRate> rates = {{0.5, 0.25, 0.5}, {0.5, 0.5, 0.5}};
  const auto e = draw_ensemble(ch, in, UserSet(1, 2), rates, 4, 99);
  REQUIRE(e.users.size() == 2);
  CHECK(e.users[0].secret_count == 4);
  CHECK(e.users[0].open_count == 2);
  CHECK(e.users[0].aux_count == 4);
  CHECK(e.users[0].codeword_count() == 32);
  CHECK(e.users[0].subcodebook_size() == 8);
  CHECK(e.users[0].realized.open == doctest::Approx(0.25));
  // user 2 is outside the secrecy set: open message only
  CHECK(e.users[1].secret_count == 1);
  CHECK(e.users[1].aux_count == 1);
  CHECK(e.users[1].open_count == 4);
  CHECK(e.users[1].nominal.secret == 0);
  CHECK(e.users[1].symbols.size() == 4 * 4);
  for (auto s : e.users[0].symbols) CHECK(s < 2);
  CHECK(e.codeword(0, 3) == e.users[0].symbols.data() + 12);

  CHECK_THROWS_AS(draw_ensemble(ch, in, UserSet(1, 2), {{0, 0, 0}}, 4, 1), std::invalid_argument);
  CHECK_THROWS_AS(draw_ensemble(ch, in, UserSet(1, 2), rates, 0, 1), std::invalid_argument);
}

TEST_CASE("seeded draws are reproducible") {
  const auto ch = bsc_pair(0.1, 0.3);
  const auto in = InputDistribution::uniform(ch);
  const auto a = draw_ensemble(ch, in, UserSet(1, 1), {{0.5, 0.5, 0.5}}, 6, 7);
  const auto b = draw_ensemble(ch, in, UserSet(1, 1), {{0.5, 0.5, 0.5}}, 6, 7);
  const auto c = draw_ensemble(ch, in, UserSet(1, 1), {{0.5, 0.5, 0.5}}, 6, 8);
  CHECK(a.users[0].symbols == b.users[0].symbols);
  CHECK(a.users[0].symbols != c.users[0].symbols);
  CHECK(derive_seed(1, 4, 0) != derive_seed(1, 4, 1));
  CHECK(derive_seed(1, 4, 0) != derive_seed(1, 6, 0));
}

TEST_CASE("output distributions are normalized") {
  const auto ch = xor_eve(0.2);
  const InputDistribution in{{{0.3, 0.7}, {0.6, 0.4}}};
  const auto e = draw_ensemble(ch, in, UserSet(3, 2), {{0.5, 0, 0.5}, {0, 0.5, 0}}, 3, 5);
  for (auto c : {Conditioning::Full, Conditioning::Subset}) {
    const auto p = exact_output_distribution(e, ch, in, c);
    CHECK(p.size() == 8);
    CHECK(total(p) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("single codeword at n = 1") {
  const auto ch = bsc_pair(0.1, 0.25);
  const auto in = InputDistribution::uniform(ch);
  const auto e = draw_ensemble(ch, in, UserSet(1, 1), {{0, 0, 0}}, 1, 3);
  const auto full = exact_output_distribution(e, ch, in, Conditioning::Full);
  const int x = e.codeword(0, 0)[0];
  CHECK(full[x] == doctest::Approx(0.75).epsilon(1e-15));
  const auto guessed = exact_output_distribution(e, ch, in, Conditioning::Subset);
  CHECK(guessed[0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(l1_distance(full, guessed) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("four codewords at n = 2 against nested loops") {
  const double pz = 0.3;
  const auto ch = bsc_pair(0.1, pz);
  const InputDistribution in{{{0.4, 0.6}}};
  const auto e = draw_ensemble(ch, in, UserSet(1, 1), {{0, 0, 1.0}}, 2, 11);
  REQUIRE(e.users[0].codeword_count() == 4);
  auto w = [&](int z, int x) { return z == x ? 1 - pz : pz; };
  std::vector<double> full(4, 0.0), guessed(4, 0.0);
  for (int z1 = 0; z1 < 2; ++z1) {
    for (int z2 = 0; z2 < 2; ++z2) {
      for (int c = 0; c < 4; ++c) {
        const auto* cw = e.codeword(0, c);
        full[z1 * 2 + z2] += 0.25 * w(z1, cw[0]) * w(z2, cw[1]);
      }
      const double m1 = 0.4 * w(z1, 0) + 0.6 * w(z1, 1);
      const double m2 = 0.4 * w(z2, 0) + 0.6 * w(z2, 1);
      guessed[z1 * 2 + z2] = m1 * m2;
    }
  }
  const auto f = exact_output_distribution(e, ch, in, Conditioning::Full);
  const auto g = exact_output_distribution(e, ch, in, Conditioning::Subset);
  for (int i = 0; i < 4; ++i) {
    CHECK(std::abs(f[i] - full[i]) < 1e-15);
    CHECK(std::abs(g[i] - guessed[i]) < 1e-15);
  }
  double oracle = 0;
  for (int i = 0; i < 4; ++i) oracle += std::abs(full[i] - guessed[i]);
  CHECK(std::abs(l1_distance(f, g) - oracle) < 1e-15);
}

TEST_CASE("an eavesdropper that ignores the input sees no difference") {
  const auto ch = bsc_pair(0.1, 0.5);
  const auto in = InputDistribution::uniform(ch);
  ResolvabilityConfig cfg;
  cfg.rates = {0.5};
  cfg.blocklengths = {2, 4};
  cfg.trials = 10;
  for (const auto& p : expected_tv_distance(cfg, ch, in, UserSet(1, 1))) CHECK(p.mean_tv < 1e-12);
}

TEST_CASE("enumeration guard") {
  std::vector<double> pmf(2 * 4, 0.25);
  const MacWiretapChannel ch({2}, 1, 4, pmf);
  const auto in = InputDistribution::uniform(ch);
  const auto e = draw_ensemble(ch, in, UserSet(1, 1), {{0, 0, 0}}, 12, 1);
  CHECK_THROWS_AS(exact_output_distribution(e, ch, in, Conditioning::Full), std::length_error);
  CHECK_THROWS_AS(exact_information_leakage(e, ch), std::length_error);
  const auto small = draw_ensemble(ch, in, UserSet(1, 1), {{0, 0, 0}}, 11, 1);
  CHECK_NOTHROW(exact_output_distribution(small, ch, in, Conditioning::Full));
}

TEST_CASE("resolvability conditions") {
  const auto ch = bsc_pair(0.1, 0.3);
  const auto in = InputDistribution::uniform(ch);
  const double eve = 1 - binary_entropy(0.3);
  const auto low = resolvability_conditions(ch, in, UserSet(1, 1), {0.05});
  REQUIRE(low.size() == 1);
  CHECK(low[0].eve_information == doctest::Approx(eve).epsilon(1e-12));
  CHECK_FALSE(low[0].holds);
  CHECK(resolvability_conditions(ch, in, UserSet(1, 1), {0.5})[0].holds);

  const auto two = xor_eve(0.1);
  const auto in2 = InputDistribution::uniform(two);
  const auto conds = resolvability_conditions(two, in2, UserSet(3, 2), {0.3, 0.3});
  REQUIRE(conds.size() == 3);
  CHECK(conds[0].eve_information < 1e-12);  // X1 alone says nothing about X1 xor X2
  CHECK(conds[2].rate_sum == doctest::Approx(0.6));
  CHECK_THROWS_AS(resolvability_conditions(two, in2, UserSet(1, 2), {0.3, 0.3}), std::invalid_argument);
}

TEST_CASE("a small codebook stays far from the target") {
  const auto ch = bsc_pair(0.1, 0.3);
  const auto in = InputDistribution::uniform(ch);
  ResolvabilityConfig cfg;
  cfg.rates = {0.05};
  cfg.blocklengths = {2, 4, 6};
  cfg.trials = 50;
  const auto pts = expected_tv_distance(cfg, ch, in, UserSet(1, 1));
  for (const auto& p : pts) {
    CHECK_FALSE(p.condition_holds);
    CHECK(p.codebook_sizes == std::vector<std::size_t>{1});
  }
  CHECK(pts[2].mean_tv > pts[0].mean_tv);
}

TEST_CASE("leakage vanishes without secrets or without an eavesdropper") {
  const auto blind = bsc_pair(0.1, 0.5);
  const auto in = InputDistribution::uniform(blind);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto e = draw_ensemble(blind, in, UserSet(1, 1), {{0.5, 0.25, 0.25}}, 4, seed);
    CHECK(exact_information_leakage(e, blind).leakage_bits == 0);
  }
  const auto ch = bsc_pair(0.1, 0.2);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto e = draw_ensemble(ch, in, UserSet(1, 1), {{0, 0.5, 0.5}}, 4, seed);
    const LeakageResult r = exact_information_leakage(e, ch);
    CHECK(r.leakage_bits == 0);
    CHECK(r.max_secret_tv == 0);
  }
}

TEST_CASE("leakage bounds") {
  const auto ch = xor_eve(0.05);
  const InputDistribution in{{{0.5, 0.5}, {0.3, 0.7}}};
  Rng rng(41);
  int near_uniform = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 1 + uniform_index(rng, 4);
    const UserSet kp(1 + static_cast<std::uint32_t>(uniform_index(rng, 3)), 2);
    std::vector<LayeredRate> rates(2);
    for (std::size_t k = 0; k < 2; ++k) {
      rates[k].open = 0.5 * uniform01(rng);
      if (kp.contains(k)) {
        rates[k].secret = uniform01(rng);
        rates[k].aux = 0.5 * uniform01(rng);
      }
    }
    const auto e = draw_ensemble(ch, in, kp, rates, n, derive_seed(41, n, trial));
    const LeakageResult r = exact_information_leakage(e, ch);
    CHECK(r.upper_bound == doctest::Approx(static_cast<double>(n)));
    CHECK(r.leakage_bits >= 0);
    CHECK(r.leakage_bits <= r.upper_bound + 1e-12);
    // one secret bit at most per secret codeword choice
    double secret_bits = 0;
    for (std::size_t k = 0; k < 2; ++k) secret_bits += std::log2(static_cast<double>(e.users[k].secret_count));
    CHECK(r.leakage_bits <= secret_bits + 1e-9);
    const TriangleCheck t = triangle_inequality_check(e, ch, in);
    CHECK(t.holds);
    CHECK(t.max_direct <= t.max_bound + 1e-12);
  }
  // nearly blind eavesdropper: per-secret distances are small enough for the entropy-continuity bound
  const auto faint = bsc_pair(0.1, 0.47);
  const auto uin = InputDistribution::uniform(faint);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto e = draw_ensemble(faint, uin, UserSet(1, 1), {{0.5, 0, 0.5}}, 4, seed);
    const LeakageResult r = exact_information_leakage(e, faint);
    if (2 * r.max_secret_tv <= 0.5) {
      ++near_uniform;
      CHECK(r.leakage_bits <= leakage_tv_bound(r.max_secret_tv, 4, 2) + 1e-12);
    }
  }
  CHECK(near_uniform >= 10);
  CHECK(leakage_tv_bound(0, 4, 2) == 0);
  CHECK(leakage_tv_bound(0.1, 4, 2) == doctest::Approx(0.2 * (4 - std::log2(0.2))));
}

TEST_CASE("auxiliary randomness lowers leakage on average") {
  const auto ch = bsc_pair(0.1, 0.3);
  const auto in = InputDistribution::uniform(ch);
  double without = 0, with = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto a = draw_ensemble(ch, in, UserSet(1, 1), {{0.5, 0, 0}}, 4, derive_seed(5, 4, seed));
    const auto b = draw_ensemble(ch, in, UserSet(1, 1), {{0.5, 0, 0.5}}, 4, derive_seed(5, 4, seed));
    without += exact_information_leakage(a, ch).leakage_bits;
    with += exact_information_leakage(b, ch).leakage_bits;
  }
  CHECK(with < without);
}

TEST_CASE("trend helpers") {
  CHECK(strictly_decreasing({3, 2, 1}));
  CHECK_FALSE(strictly_decreasing({3, 3, 1}));
  CHECK(strictly_decreasing({1}));
  const auto slope = log_linear_slope({2, 4, 6}, {std::exp(-1.0), std::exp(-2.0), std::exp(-3.0)});
  REQUIRE(slope);
  CHECK(*slope == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK_FALSE(log_linear_slope({2, 4}, {0.1, 0.0}));
  CHECK_FALSE(log_linear_slope({2}, {0.1}));
}

}
