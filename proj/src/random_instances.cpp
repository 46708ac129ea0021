#include "macwt/random_instances.hpp"

#include <cmath>
#include <stdexcept>

namespace macwt {

std::size_t uniform_index(Rng& rng, std::size_t n) {
  if (n == 0) throw std::invalid_argument("uniform_index over an empty range");
  // Rejection keeps it unbiased.
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  std::uint64_t v;
  do {
    v = rng();
  } while (v >= limit);
  return static_cast<std::size_t>(v % n);
}

std::vector<double> random_pmf(Rng& rng, std::size_t size, double floor) {
  if (size == 0) throw std::invalid_argument("random_pmf of size 0");
  if (floor * static_cast<double>(size) >= 1.0) floor = 0.0;
  std::vector<double> p(size);
  double sum = 0;
  for (auto& v : p) {
    v = -std::log(1.0 - uniform01(rng));  // Exp(1), so p is Dirichlet(1,..,1)
    sum += v;
  }
  const double scale = 1.0 - floor * static_cast<double>(size);
  for (auto& v : p) v = floor + scale * v / sum;
  // Push the rounding residue into the largest entry.
  double total = 0;
  std::size_t big = 0;
  for (std::size_t i = 0; i < size; ++i) {
    total += p[i];
    if (p[i] > p[big]) big = i;
  }
  p[big] += 1.0 - total;
  return p;
}

std::size_t sample_index(Rng& rng, const std::vector<double>& pmf) {
  const double u = uniform01(rng);
  double acc = 0;
  for (std::size_t i = 0; i < pmf.size(); ++i) {
    acc += pmf[i];
    if (u < acc) return i;
  }
  // u landed in the rounding gap above the last cumulative sum.
  for (std::size_t i = pmf.size(); i-- > 0;) {
    if (pmf[i] > 0) return i;
  }
  return pmf.size() - 1;
}

MacWiretapChannel random_channel(Rng& rng, const std::vector<std::size_t>& input_sizes,
                                 std::size_t y_size, std::size_t z_size) {
  std::size_t tuples = 1;
  for (auto s : input_sizes) tuples *= s;
  std::vector<double> pmf;
  pmf.reserve(tuples * y_size * z_size);
  for (std::size_t t = 0; t < tuples; ++t) {
    auto row = random_pmf(rng, y_size * z_size, 0.0);
    pmf.insert(pmf.end(), row.begin(), row.end());
  }
  return MacWiretapChannel(input_sizes, y_size, z_size, std::move(pmf));
}

MacWiretapChannel random_degraded_channel(Rng& rng, const std::vector<std::size_t>& input_sizes,
                                          std::size_t y_size, std::size_t z_size) {
  std::size_t tuples = 1;
  for (auto s : input_sizes) tuples *= s;
  std::vector<std::vector<double>> to_y(tuples), to_z(y_size);
  for (auto& row : to_y) row = random_pmf(rng, y_size, 0.01);
  for (auto& row : to_z) row = random_pmf(rng, z_size, 0.01);
  std::vector<double> pmf;
  pmf.reserve(tuples * y_size * z_size);
  for (std::size_t t = 0; t < tuples; ++t) {
    double total = 0;
    const std::size_t start = pmf.size();
    for (std::size_t y = 0; y < y_size; ++y) {
      for (std::size_t z = 0; z < z_size; ++z) {
        pmf.push_back(to_y[t][y] * to_z[y][z]);
        total += pmf.back();
      }
    }
    for (std::size_t j = start; j < pmf.size(); ++j) pmf[j] /= total;
  }
  return MacWiretapChannel(input_sizes, y_size, z_size, std::move(pmf));
}

InputDistribution random_input(Rng& rng, const MacWiretapChannel& channel, double floor) {
  InputDistribution d;
  for (auto s : channel.input_sizes()) d.per_user_pmf.push_back(random_pmf(rng, s, floor));
  return d;
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t tag, std::uint64_t trial) {
  // splitmix64 over the three keys.
  auto mix = [](std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  };
  return mix(mix(mix(master) ^ tag) ^ trial);
}

}  // namespace macwt
