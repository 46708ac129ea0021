#include "macwt/prob_core.hpp"

#include <bit>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace macwt {

namespace {

constexpr double kSumTolerance = 1e-12;

std::size_t product(const std::vector<std::size_t>& v) {
  std::size_t p = 1;
  for (auto s : v) p *= s;
  return p;
}

}  // namespace

MacWiretapChannel::MacWiretapChannel(std::vector<std::size_t> input_sizes, std::size_t y_size,
                                     std::size_t z_size, std::vector<double> pmf)
    : input_sizes_(std::move(input_sizes)), y_size_(y_size), z_size_(z_size), pmf_(std::move(pmf)) {
  if (input_sizes_.empty()) throw std::invalid_argument("channel needs at least one user");
  if (input_sizes_.size() > 16) throw std::invalid_argument("at most 16 users are supported");
  for (std::size_t k = 0; k < input_sizes_.size(); ++k) {
    if (input_sizes_[k] == 0) {
      throw std::invalid_argument("input alphabet of user " + std::to_string(k + 1) + " is empty");
    }
  }
  if (y_size_ == 0 || z_size_ == 0) throw std::invalid_argument("output alphabets must be nonempty");
  tuples_ = product(input_sizes_);
  const std::size_t expected = tuples_ * y_size_ * z_size_;
  if (pmf_.size() != expected) {
    throw std::invalid_argument("pmf has " + std::to_string(pmf_.size()) + " entries, expected " +
                                std::to_string(expected));
  }
  for (std::size_t t = 0; t < tuples_; ++t) {
    double sum = 0;
    for (std::size_t j = 0; j < y_size_ * z_size_; ++j) {
      const double p = pmf_[t * y_size_ * z_size_ + j];
      if (!(p >= 0) || !std::isfinite(p)) {
        throw std::invalid_argument("pmf row for input " + describe_tuple(decode_tuple(t)) +
                                    " has a negative or non-finite entry");
      }
      sum += p;
    }
    if (std::abs(sum - 1.0) > kSumTolerance) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "pmf row for input " << describe_tuple(decode_tuple(t)) << " sums to " << sum
          << ", not 1";
      throw std::invalid_argument(msg.str());
    }
  }
}

std::vector<std::size_t> MacWiretapChannel::decode_tuple(std::size_t tuple) const {
  std::vector<std::size_t> xs(input_sizes_.size());
  for (std::size_t k = input_sizes_.size(); k-- > 0;) {
    xs[k] = tuple % input_sizes_[k];
    tuple /= input_sizes_[k];
  }
  return xs;
}

std::size_t MacWiretapChannel::encode_tuple(const std::vector<std::size_t>& xs) const {
  std::size_t t = 0;
  for (std::size_t k = 0; k < input_sizes_.size(); ++k) t = t * input_sizes_[k] + xs[k];
  return t;
}

std::string describe_tuple(const std::vector<std::size_t>& xs) {
  std::string s = "(";
  for (std::size_t k = 0; k < xs.size(); ++k) {
    if (k) s += ",";
    s += std::to_string(xs[k]);
  }
  return s + ")";
}

void InputDistribution::validate(const MacWiretapChannel& channel) const {
  if (per_user_pmf.size() != channel.user_count()) {
    throw std::invalid_argument("input distribution has " + std::to_string(per_user_pmf.size()) +
                                " users, channel has " + std::to_string(channel.user_count()));
  }
  for (std::size_t k = 0; k < per_user_pmf.size(); ++k) {
    const auto& p = per_user_pmf[k];
    const std::string who = "input pmf of user " + std::to_string(k + 1);
    if (p.size() != channel.input_sizes()[k]) {
      throw std::invalid_argument(who + " has " + std::to_string(p.size()) + " entries, alphabet has " +
                                  std::to_string(channel.input_sizes()[k]));
    }
    double sum = 0;
    for (double v : p) {
      if (!(v >= 0) || !std::isfinite(v)) throw std::invalid_argument(who + " has a negative entry");
      sum += v;
    }
    if (std::abs(sum - 1.0) > kSumTolerance) {
      throw std::invalid_argument(who + " sums to " + std::to_string(sum));
    }
  }
}

InputDistribution InputDistribution::uniform(const MacWiretapChannel& channel) {
  InputDistribution d;
  for (auto s : channel.input_sizes()) d.per_user_pmf.emplace_back(s, 1.0 / static_cast<double>(s));
  return d;
}

UserSet::UserSet(std::uint32_t mask, std::size_t width) : mask_(mask), width_(width) {
  if (width_ > 31) throw std::invalid_argument("user set too wide");
  if ((mask_ & ~full()) != 0) {
    throw std::invalid_argument("bitmask " + std::to_string(mask) + " exceeds " +
                                std::to_string(width) + " users");
  }
}

std::size_t UserSet::size() const { return static_cast<std::size_t>(std::popcount(mask_)); }

std::vector<std::size_t> UserSet::members() const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < width_; ++k) {
    if (contains(k)) out.push_back(k);
  }
  return out;
}

std::vector<UserSet> UserSet::subsets() const {
  std::vector<UserSet> out;
  for (std::uint32_t m = 0; m <= mask_; ++m) {
    if ((m & ~mask_) == 0) out.emplace_back(m, width_);
  }
  return out;
}

std::string UserSet::to_string() const {
  std::string s = "{";
  bool first = true;
  for (auto k : members()) {
    if (!first) s += ",";
    s += std::to_string(k + 1);
    first = false;
  }
  return s + "}";
}

double shannon_entropy(const std::vector<double>& pmf) {
  double h = 0;
  for (double p : pmf) {
    if (p > 0) h -= p * std::log2(p);
  }
  return h;
}

double binary_entropy(double p) { return shannon_entropy({p, 1.0 - p}); }

JointDistribution::JointDistribution(std::vector<std::size_t> sizes, std::vector<double> table)
    : sizes_(std::move(sizes)), table_(std::move(table)) {
  if (sizes_.size() < 3) throw std::invalid_argument("joint needs inputs plus two outputs");
  if (product(sizes_) != table_.size()) throw std::invalid_argument("joint table size mismatch");
  const std::size_t nsets = std::size_t{1} << sizes_.size();
  entropy_cache_.resize(nsets);
  for (std::size_t vars = 0; vars < nsets; ++vars) {
    entropy_cache_[vars] = vars == 0 ? 0.0 : shannon_entropy(marginal(static_cast<VarSet>(vars)));
  }
}

std::vector<double> JointDistribution::marginal(VarSet vars) const {
  const std::size_t nv = sizes_.size();
  if (nv < 32 && (vars >> nv) != 0) throw std::invalid_argument("variable set out of range");
  // Stride of each kept variable in the marginal table.
  std::vector<std::size_t> stride(nv, 0);
  std::size_t msize = 1;
  for (std::size_t v = nv; v-- > 0;) {
    if ((vars >> v) & 1u) {
      stride[v] = msize;
      msize *= sizes_[v];
    }
  }
  std::vector<double> out(msize, 0.0);
  std::vector<std::size_t> digit(nv, 0);
  std::size_t target = 0;
  for (std::size_t idx = 0; idx < table_.size(); ++idx) {
    out[target] += table_[idx];
    // Odometer increment, last variable fastest.
    for (std::size_t v = nv; v-- > 0;) {
      if (++digit[v] < sizes_[v]) {
        target += stride[v];
        break;
      }
      target -= stride[v] * (sizes_[v] - 1);
      digit[v] = 0;
    }
  }
  return out;
}

double JointDistribution::joint_entropy(VarSet vars) const {
  if (vars >= entropy_cache_.size()) throw std::invalid_argument("variable set out of range");
  return entropy_cache_[vars];
}

JointDistribution joint_distribution(const MacWiretapChannel& channel, const InputDistribution& input) {
  input.validate(channel);
  std::vector<std::size_t> sizes = channel.input_sizes();
  sizes.push_back(channel.y_size());
  sizes.push_back(channel.z_size());
  const std::size_t yz = channel.y_size() * channel.z_size();
  std::vector<double> table(channel.input_tuple_count() * yz);
  for (std::size_t t = 0; t < channel.input_tuple_count(); ++t) {
    const auto xs = channel.decode_tuple(t);
    double px = 1;
    for (std::size_t k = 0; k < xs.size(); ++k) px *= input.per_user_pmf[k][xs[k]];
    for (std::size_t j = 0; j < yz; ++j) table[t * yz + j] = px * channel.pmf()[t * yz + j];
  }
  return JointDistribution(std::move(sizes), std::move(table));
}

namespace {

double snap(double v) {
  if (std::abs(v) < kSnapTolerance) return 0.0;
  return v < 0 ? 0.0 : v;
}

}  // namespace

double entropy(const JointDistribution& joint, VarSet vars, VarSet given) {
  if (vars == 0) throw std::invalid_argument("entropy of an empty variable set");
  if ((vars & given) != 0) throw std::invalid_argument("entropy: variable sets overlap");
  return snap(joint.joint_entropy(vars | given) - joint.joint_entropy(given));
}

double conditional_mutual_information(const JointDistribution& joint, VarSet left, VarSet right,
                                      VarSet given) {
  if ((left & right) != 0 || (left & given) != 0 || (right & given) != 0) {
    throw std::invalid_argument("mutual information: variable sets overlap");
  }
  if (left == 0 || right == 0) return 0.0;
  const double v = joint.joint_entropy(left | given) + joint.joint_entropy(right | given) -
                   joint.joint_entropy(left | right | given) - joint.joint_entropy(given);
  return snap(v);
}

}  // namespace macwt
