#pragma once

#include "macwt/prob_core.hpp"
#include "macwt/random_instances.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace macwt {

// Largest product of (message tuples) x |Z|^n the enumerators accept.
inline constexpr double kEnumerationGuard = 1e7;

// Nominal per-user rates in bits per channel use.
struct LayeredRate {
  double secret = 0;
  double open = 0;
  double aux = 0;
};

// round(2^(n*rate)), at least 1.
std::size_t codebook_size(double rate, std::size_t n);

struct UserCodebook {
  std::size_t secret_count = 1;  // |M^s|
  std::size_t open_count = 1;    // |M^o|
  std::size_t aux_count = 1;     // |M^a|, codewords per (m^s, m^o) bin
  LayeredRate nominal;
  LayeredRate realized;          // log2(count) / n
  // codeword_count() * n symbols, codeword ((ms * open_count) + mo) * aux_count + ma
  std::vector<std::uint8_t> symbols;

  std::size_t codeword_count() const { return secret_count * open_count * aux_count; }
  std::size_t subcodebook_size() const { return open_count * aux_count; }  // |c(m^s)|
};

// Layered random codebooks. Users outside the secrecy set carry only an
// open message: their secret and auxiliary counts are forced to 1.
struct CodebookEnsemble {
  std::size_t n = 0;
  UserSet secrecy_set;
  std::vector<UserCodebook> users;
  std::uint64_t seed = 0;

  const std::uint8_t* codeword(std::size_t user, std::size_t index) const {
    return users[user].symbols.data() + index * n;
  }
};

CodebookEnsemble draw_ensemble(const MacWiretapChannel& channel, const InputDistribution& input,
                               const UserSet& secrecy_set, const std::vector<LayeredRate>& rates,
                               std::size_t n, std::uint64_t seed);

enum class Conditioning {
  Full,    // every user's codebook, uniform over all message tuples
  Subset,  // secrecy-set inputs guessed i.i.d. from the input law, the rest from codebooks
};

// pmf over Z^n, row-major in (z_1..z_n). Throws std::length_error past the guard.
std::vector<double> exact_output_distribution(const CodebookEnsemble& ensemble,
                                              const MacWiretapChannel& channel,
                                              const InputDistribution& input,
                                              Conditioning conditioning);

double l1_distance(const std::vector<double>& p, const std::vector<double>& q);

struct ResolvabilityConfig {
  std::vector<double> rates;       // Q_k per user; zero outside the secrecy set
  std::vector<std::size_t> blocklengths;
  std::size_t trials = 200;
  std::uint64_t seed = 1;
};

struct SubsetCondition {
  UserSet subset;
  double rate_sum = 0;
  double eve_information = 0;  // I(X_S; Z | X outside the secrecy set)
  bool holds = false;          // rate_sum strictly above eve_information
};

// One entry per nonempty subset of the secrecy set; throws if a user outside
// it has a nonzero rate.
std::vector<SubsetCondition> resolvability_conditions(const MacWiretapChannel& channel,
                                                      const InputDistribution& input,
                                                      const UserSet& secrecy_set,
                                                      const std::vector<double>& rates);

struct TvPoint {
  std::size_t n = 0;
  double mean_tv = 0;
  double min_tv = 0;   // best codebook seen
  std::size_t trials = 0;
  bool condition_holds = false;
  std::vector<std::size_t> codebook_sizes;  // per user at this n
};

std::vector<TvPoint> expected_tv_distance(const ResolvabilityConfig& config,
                                          const MacWiretapChannel& channel,
                                          const InputDistribution& input,
                                          const UserSet& secrecy_set);

struct LeakageResult {
  double leakage_bits = 0;   // I(M^s; Z^n | M^o outside the secrecy set, codebooks)
  double max_secret_tv = 0;  // max l1 distance between P(z|m^s, m^o) and P(z|m^o)
  double upper_bound = 0;    // n log2|Z|
};

LeakageResult exact_information_leakage(const CodebookEnsemble& ensemble,
                                        const MacWiretapChannel& channel);

// f(2d) with f(u) = u (n log2|Z| - log2 u); only meaningful for d <= 1/e.
double leakage_tv_bound(double max_tv, std::size_t n, std::size_t z_size);

struct TriangleCheck {
  double max_direct = 0;  // largest per-secret distance, computed directly
  double max_bound = 0;   // its two one-sided pieces through the guessed-input law, summed
  bool holds = true;      // direct <= pieces for every (m^s, m^o) pair
};

TriangleCheck triangle_inequality_check(const CodebookEnsemble& ensemble,
                                        const MacWiretapChannel& channel,
                                        const InputDistribution& input);

bool strictly_decreasing(const std::vector<double>& values);

// Least-squares slope of ln(value) against n; nullopt if any value is <= 0
// or fewer than two points are given.
std::optional<double> log_linear_slope(const std::vector<std::size_t>& ns,
                                       const std::vector<double>& values);

}  // namespace macwt
