#include "macwt/resolvability.hpp"

#include "macwt/information.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace macwt {

std::size_t codebook_size(double rate, std::size_t n) {
  if (rate < 0) throw std::invalid_argument("rates must be nonnegative");
  const double bits = rate * static_cast<double>(n);
  if (bits > 40) throw std::length_error("codebook of 2^" + std::to_string(bits) + " words");
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(std::exp2(bits))));
}

namespace {

double realized_rate(std::size_t count, std::size_t n) {
  return n == 0 ? 0.0 : std::log2(static_cast<double>(count)) / static_cast<double>(n);
}

double power(std::size_t base, std::size_t exp) {
  return std::pow(static_cast<double>(base), static_cast<double>(exp));
}

void guard(double tuples, std::size_t z_size, std::size_t n, const char* what) {
  const double product = tuples * power(z_size, n);
  if (product > kEnumerationGuard) {
    throw std::length_error(std::string(what) + ": " + std::to_string(tuples) +
                            " message tuples x |Z|^n = " + std::to_string(product) +
                            " exceeds the enumeration limit");
  }
}

// Sum over y, so W[tuple * |Z| + z] = P(z | x).
std::vector<double> eve_kernel(const MacWiretapChannel& channel) {
  std::vector<double> w(channel.input_tuple_count() * channel.z_size(), 0.0);
  for (std::size_t t = 0; t < channel.input_tuple_count(); ++t) {
    for (std::size_t y = 0; y < channel.y_size(); ++y) {
      for (std::size_t z = 0; z < channel.z_size(); ++z) w[t * channel.z_size() + z] += channel.prob(t, y, z);
    }
  }
  return w;
}

constexpr long kGuess = -1;

class Enumerator {
 public:
  Enumerator(const CodebookEnsemble& e, const MacWiretapChannel& ch, const InputDistribution* input)
      : e_(e), ch_(ch), input_(input), kernel_(eve_kernel(ch)) {
    if (e.users.size() != ch.user_count()) {
      throw std::invalid_argument("ensemble has " + std::to_string(e.users.size()) +
                                  " users, channel has " + std::to_string(ch.user_count()));
    }
    for (std::size_t t = 0; t < ch.input_tuple_count(); ++t) tuples_.push_back(ch.decode_tuple(t));
  }

  // pick[k] is a codeword index, or kGuess for an input drawn from the law.
  std::vector<double> sequence_pmf(const std::vector<long>& pick) const {
    const std::size_t zs = ch_.z_size();
    std::vector<double> out{1.0};
    std::vector<double> letter(zs);
    for (std::size_t i = 0; i < e_.n; ++i) {
      std::fill(letter.begin(), letter.end(), 0.0);
      for (std::size_t t = 0; t < tuples_.size(); ++t) {
        double weight = 1.0;
        for (std::size_t k = 0; k < pick.size() && weight > 0; ++k) {
          const std::size_t x = tuples_[t][k];
          if (pick[k] == kGuess) {
            weight *= input_->per_user_pmf[k][x];
          } else if (e_.codeword(k, static_cast<std::size_t>(pick[k]))[i] != x) {
            weight = 0;
          }
        }
        if (weight == 0) continue;
        for (std::size_t z = 0; z < zs; ++z) letter[z] += weight * kernel_[t * zs + z];
      }
      std::vector<double> next(out.size() * zs);
      for (std::size_t j = 0; j < out.size(); ++j) {
        for (std::size_t z = 0; z < zs; ++z) next[j * zs + z] = out[j] * letter[z];
      }
      out = std::move(next);
    }
    return out;
  }

  // Averages sequence_pmf over every combination of the listed index ranges.
  // ranges[k] = {first, count}; count 0 means the user is guessed.
  std::vector<double> average(const std::vector<std::pair<std::size_t, std::size_t>>& ranges) const {
    std::vector<long> pick(ranges.size());
    std::vector<std::size_t> digit(ranges.size(), 0);
    std::vector<double> acc(static_cast<std::size_t>(power(ch_.z_size(), e_.n)), 0.0);
    std::size_t combos = 0;
    while (true) {
      for (std::size_t k = 0; k < ranges.size(); ++k) {
        pick[k] = ranges[k].second == 0 ? kGuess : static_cast<long>(ranges[k].first + digit[k]);
      }
      const auto p = sequence_pmf(pick);
      for (std::size_t j = 0; j < acc.size(); ++j) acc[j] += p[j];
      ++combos;
      std::size_t k = 0;
      for (; k < ranges.size(); ++k) {
        if (ranges[k].second == 0) continue;
        if (++digit[k] < ranges[k].second) break;
        digit[k] = 0;
      }
      if (k == ranges.size()) break;
    }
    for (auto& v : acc) v /= static_cast<double>(combos);
    return acc;
  }

 private:
  const CodebookEnsemble& e_;
  const MacWiretapChannel& ch_;
  const InputDistribution* input_;
  std::vector<double> kernel_;
  std::vector<std::vector<std::size_t>> tuples_;
};

// Calls f with the open-message index chosen for every user outside the
// secrecy set (secrecy-set entries are left at 0).
template <typename F>
void for_each_outside_tuple(const CodebookEnsemble& e, F&& f) {
  const std::size_t users = e.users.size();
  std::vector<std::size_t> idx(users, 0);
  while (true) {
    f(idx);
    std::size_t k = 0;
    for (; k < users; ++k) {
      if (e.secrecy_set.contains(k)) continue;
      if (++idx[k] < e.users[k].codeword_count()) break;
      idx[k] = 0;
    }
    if (k == users) break;
  }
}

template <typename F>
void for_each_secret_tuple(const CodebookEnsemble& e, F&& f) {
  const std::size_t users = e.users.size();
  std::vector<std::size_t> ms(users, 0);
  while (true) {
    f(ms);
    std::size_t k = 0;
    for (; k < users; ++k) {
      if (!e.secrecy_set.contains(k)) continue;
      if (++ms[k] < e.users[k].secret_count) break;
      ms[k] = 0;
    }
    if (k == users) break;
  }
}

double outside_tuple_count(const CodebookEnsemble& e) {
  double c = 1;
  for (std::size_t k = 0; k < e.users.size(); ++k) {
    if (!e.secrecy_set.contains(k)) c *= static_cast<double>(e.users[k].codeword_count());
  }
  return c;
}

double inside_tuple_count(const CodebookEnsemble& e) {
  double c = 1;
  for (std::size_t k = 0; k < e.users.size(); ++k) {
    if (e.secrecy_set.contains(k)) c *= static_cast<double>(e.users[k].codeword_count());
  }
  return c;
}

}  // namespace

CodebookEnsemble draw_ensemble(const MacWiretapChannel& channel, const InputDistribution& input,
                               const UserSet& secrecy_set, const std::vector<LayeredRate>& rates,
                               std::size_t n, std::uint64_t seed) {
  input.validate(channel);
  const std::size_t users = channel.user_count();
  if (rates.size() != users) throw std::invalid_argument("one rate triple per user required");
  if (secrecy_set.width() != users) throw std::invalid_argument("secrecy set width differs from K");
  if (n == 0) throw std::invalid_argument("blocklength must be positive");
  for (std::size_t k = 0; k < users; ++k) {
    if (channel.input_sizes()[k] > 256) throw std::invalid_argument("input alphabets above 256 symbols");
  }

  CodebookEnsemble e;
  e.n = n;
  e.secrecy_set = secrecy_set;
  e.seed = seed;
  Rng rng(seed);
  for (std::size_t k = 0; k < users; ++k) {
    UserCodebook cb;
    cb.nominal = rates[k];
    cb.open_count = codebook_size(rates[k].open, n);
    if (secrecy_set.contains(k)) {
      cb.secret_count = codebook_size(rates[k].secret, n);
      cb.aux_count = codebook_size(rates[k].aux, n);
    } else {
      cb.nominal.secret = cb.nominal.aux = 0;
    }
    cb.realized = {realized_rate(cb.secret_count, n), realized_rate(cb.open_count, n),
                   realized_rate(cb.aux_count, n)};
    const double words = static_cast<double>(cb.secret_count) * cb.open_count * cb.aux_count;
    if (words * static_cast<double>(n) > 1e8) throw std::length_error("codebook too large to store");
    cb.symbols.resize(cb.codeword_count() * n);
    for (auto& s : cb.symbols) s = static_cast<std::uint8_t>(sample_index(rng, input.per_user_pmf[k]));
    e.users.push_back(std::move(cb));
  }
  return e;
}

std::vector<double> exact_output_distribution(const CodebookEnsemble& ensemble,
                                              const MacWiretapChannel& channel,
                                              const InputDistribution& input,
                                              Conditioning conditioning) {
  const bool subset = conditioning == Conditioning::Subset;
  double tuples = 1;
  std::vector<std::pair<std::size_t, std::size_t>> ranges;
  for (std::size_t k = 0; k < ensemble.users.size(); ++k) {
    const bool guessed = subset && ensemble.secrecy_set.contains(k);
    const std::size_t count = guessed ? 0 : ensemble.users[k].codeword_count();
    if (count) tuples *= static_cast<double>(count);
    ranges.push_back({0, count});
  }
  guard(tuples, channel.z_size(), ensemble.n, "output distribution");
  const Enumerator en(ensemble, channel, &input);
  return en.average(ranges);
}

double l1_distance(const std::vector<double>& p, const std::vector<double>& q) {
  if (p.size() != q.size()) throw std::invalid_argument("pmfs over different alphabets");
  double d = 0;
  for (std::size_t i = 0; i < p.size(); ++i) d += std::abs(p[i] - q[i]);
  return d;
}

std::vector<SubsetCondition> resolvability_conditions(const MacWiretapChannel& channel,
                                                      const InputDistribution& input,
                                                      const UserSet& secrecy_set,
                                                      const std::vector<double>& rates) {
  const std::size_t users = channel.user_count();
  if (rates.size() != users) throw std::invalid_argument("one rate per user required");
  for (std::size_t k = 0; k < users; ++k) {
    if (!secrecy_set.contains(k) && rates[k] != 0) {
      throw std::invalid_argument("user " + std::to_string(k + 1) +
                                  " is outside the secrecy set and must have rate 0");
    }
  }
  const ChannelInformation info(channel, input);
  const UserSet outside = secrecy_set.complement();
  std::vector<SubsetCondition> out;
  for (const auto& s : secrecy_set.subsets()) {
    if (s.empty()) continue;
    SubsetCondition c;
    c.subset = s;
    for (std::size_t k : s.members()) c.rate_sum += rates[k];
    c.eve_information = info.mi_z(s, outside);
    c.holds = c.rate_sum > c.eve_information;
    out.push_back(c);
  }
  return out;
}

std::vector<TvPoint> expected_tv_distance(const ResolvabilityConfig& config,
                                          const MacWiretapChannel& channel,
                                          const InputDistribution& input,
                                          const UserSet& secrecy_set) {
  const auto conditions = resolvability_conditions(channel, input, secrecy_set, config.rates);
  const bool holds = std::all_of(conditions.begin(), conditions.end(),
                                 [](const SubsetCondition& c) { return c.holds; });
  if (config.trials == 0) throw std::invalid_argument("at least one trial required");

  std::vector<LayeredRate> rates;
  for (double q : config.rates) rates.push_back({0, 0, q});

  std::vector<TvPoint> out;
  for (std::size_t n : config.blocklengths) {
    TvPoint pt;
    pt.n = n;
    pt.trials = config.trials;
    pt.condition_holds = holds;
    double sum = 0;
    pt.min_tv = 2.0;
    for (std::size_t trial = 0; trial < config.trials; ++trial) {
      const auto e = draw_ensemble(channel, input, secrecy_set, rates, n,
                                   derive_seed(config.seed, n, trial));
      if (trial == 0) {
        for (const auto& u : e.users) pt.codebook_sizes.push_back(u.codeword_count());
      }
      const double tv = l1_distance(exact_output_distribution(e, channel, input, Conditioning::Full),
                                    exact_output_distribution(e, channel, input, Conditioning::Subset));
      sum += tv;
      pt.min_tv = std::min(pt.min_tv, tv);
    }
    pt.mean_tv = sum / static_cast<double>(config.trials);
    out.push_back(pt);
  }
  return out;
}

LeakageResult exact_information_leakage(const CodebookEnsemble& ensemble,
                                        const MacWiretapChannel& channel) {
  guard(outside_tuple_count(ensemble) * inside_tuple_count(ensemble), channel.z_size(), ensemble.n,
        "leakage");
  const Enumerator en(ensemble, channel, nullptr);
  const std::size_t users = ensemble.users.size();

  LeakageResult r;
  r.upper_bound = static_cast<double>(ensemble.n) * std::log2(static_cast<double>(channel.z_size()));
  double total = 0;
  std::size_t outside_tuples = 0;
  for_each_outside_tuple(ensemble, [&](const std::vector<std::size_t>& mo) {
    std::vector<std::vector<double>> given_secret;
    for_each_secret_tuple(ensemble, [&](const std::vector<std::size_t>& ms) {
      std::vector<std::pair<std::size_t, std::size_t>> ranges(users);
      for (std::size_t k = 0; k < users; ++k) {
        const auto& u = ensemble.users[k];
        if (ensemble.secrecy_set.contains(k)) {
          ranges[k] = {ms[k] * u.subcodebook_size(), u.subcodebook_size()};
        } else {
          ranges[k] = {mo[k], 1};
        }
      }
      given_secret.push_back(en.average(ranges));
    });
    std::vector<double> marginal(given_secret.front().size(), 0.0);
    for (const auto& p : given_secret) {
      for (std::size_t j = 0; j < p.size(); ++j) marginal[j] += p[j];
    }
    for (auto& v : marginal) v /= static_cast<double>(given_secret.size());
    double conditional = 0;
    for (const auto& p : given_secret) {
      conditional += shannon_entropy(p);
      r.max_secret_tv = std::max(r.max_secret_tv, l1_distance(p, marginal));
    }
    total += shannon_entropy(marginal) - conditional / static_cast<double>(given_secret.size());
    ++outside_tuples;
  });
  double leak = total / static_cast<double>(outside_tuples);
  if (leak < kSnapTolerance) leak = 0;
  r.leakage_bits = leak;
  return r;
}

double leakage_tv_bound(double max_tv, std::size_t n, std::size_t z_size) {
  if (max_tv <= 0) return 0;
  const double u = 2 * max_tv;
  return u * (static_cast<double>(n) * std::log2(static_cast<double>(z_size)) - std::log2(u));
}

TriangleCheck triangle_inequality_check(const CodebookEnsemble& ensemble,
                                        const MacWiretapChannel& channel,
                                        const InputDistribution& input) {
  guard(outside_tuple_count(ensemble) * inside_tuple_count(ensemble), channel.z_size(), ensemble.n,
        "triangle check");
  const Enumerator en(ensemble, channel, &input);
  const std::size_t users = ensemble.users.size();
  TriangleCheck out;
  for_each_outside_tuple(ensemble, [&](const std::vector<std::size_t>& mo) {
    std::vector<std::pair<std::size_t, std::size_t>> whole(users), guessed(users);
    for (std::size_t k = 0; k < users; ++k) {
      if (ensemble.secrecy_set.contains(k)) {
        whole[k] = {0, ensemble.users[k].codeword_count()};
        guessed[k] = {0, 0};
      } else {
        whole[k] = guessed[k] = {mo[k], 1};
      }
    }
    const auto p_all = en.average(whole);
    const auto p_guess = en.average(guessed);
    const double left = l1_distance(p_all, p_guess);
    for_each_secret_tuple(ensemble, [&](const std::vector<std::size_t>& ms) {
      auto ranges = whole;
      for (std::size_t k = 0; k < users; ++k) {
        if (!ensemble.secrecy_set.contains(k)) continue;
        const std::size_t size = ensemble.users[k].subcodebook_size();
        ranges[k] = {ms[k] * size, size};
      }
      const auto p_secret = en.average(ranges);
      const double direct = l1_distance(p_all, p_secret);
      const double pieces = left + l1_distance(p_secret, p_guess);
      out.max_direct = std::max(out.max_direct, direct);
      out.max_bound = std::max(out.max_bound, pieces);
      if (direct > pieces + 1e-12) out.holds = false;
    });
  });
  return out;
}

bool strictly_decreasing(const std::vector<double>& values) {
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (!(values[i] < values[i - 1])) return false;
  }
  return true;
}

std::optional<double> log_linear_slope(const std::vector<std::size_t>& ns,
                                       const std::vector<double>& values) {
  if (ns.size() != values.size() || ns.size() < 2) return std::nullopt;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    if (!(values[i] > 0)) return std::nullopt;
    const double x = static_cast<double>(ns[i]);
    const double y = std::log(values[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double m = static_cast<double>(ns.size());
  const double denom = m * sxx - sx * sx;
  if (denom == 0) return std::nullopt;
  return (m * sxy - sx * sy) / denom;
}

}  // namespace macwt
