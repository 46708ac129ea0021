#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace macwt {

// P(y, z | x_1..x_K) as a dense table, row-major over (x_1..x_K, y, z).
class MacWiretapChannel {
 public:
  MacWiretapChannel(std::vector<std::size_t> input_sizes, std::size_t y_size, std::size_t z_size,
                    std::vector<double> pmf);

  std::size_t user_count() const { return input_sizes_.size(); }
  const std::vector<std::size_t>& input_sizes() const { return input_sizes_; }
  std::size_t y_size() const { return y_size_; }
  std::size_t z_size() const { return z_size_; }
  std::size_t input_tuple_count() const { return tuples_; }
  const std::vector<double>& pmf() const { return pmf_; }

  // `tuple` is the row-major index of (x_1..x_K).
  double prob(std::size_t tuple, std::size_t y, std::size_t z) const {
    return pmf_[(tuple * y_size_ + y) * z_size_ + z];
  }
  std::vector<std::size_t> decode_tuple(std::size_t tuple) const;
  std::size_t encode_tuple(const std::vector<std::size_t>& xs) const;

 private:
  std::vector<std::size_t> input_sizes_;
  std::size_t y_size_, z_size_, tuples_;
  std::vector<double> pmf_;
};

std::string describe_tuple(const std::vector<std::size_t>& xs);

struct InputDistribution {
  std::vector<std::vector<double>> per_user_pmf;

  // Throws naming the user whose vector is malformed.
  void validate(const MacWiretapChannel& channel) const;
  static InputDistribution uniform(const MacWiretapChannel& channel);
};

// A subset of users {1..K}; bit k-1 stands for user k.
class UserSet {
 public:
  UserSet() = default;
  UserSet(std::uint32_t mask, std::size_t width);
  static UserSet all(std::size_t width) { return UserSet((1u << width) - 1u, width); }
  static UserSet none(std::size_t width) { return UserSet(0, width); }

  std::uint32_t mask() const { return mask_; }
  std::size_t width() const { return width_; }
  bool empty() const { return mask_ == 0; }
  bool contains(std::size_t user) const { return (mask_ >> user) & 1u; }  // 0-based
  std::size_t size() const;
  UserSet complement() const { return UserSet(~mask_ & full(), width_); }
  bool subset_of(const UserSet& other) const { return (mask_ & ~other.mask_) == 0; }
  std::vector<std::size_t> members() const;  // 0-based, ascending

  // Every subset of *this in ascending bitmask order, starting with the empty set.
  std::vector<UserSet> subsets() const;

  UserSet operator|(const UserSet& o) const { return UserSet(mask_ | o.mask_, width_); }
  UserSet operator&(const UserSet& o) const { return UserSet(mask_ & o.mask_, width_); }
  UserSet minus(const UserSet& o) const { return UserSet(mask_ & ~o.mask_, width_); }
  friend bool operator==(const UserSet&, const UserSet&) = default;

  std::string to_string() const;  // "{1,3}", "{}" when empty

 private:
  std::uint32_t full() const { return width_ >= 32 ? ~0u : (1u << width_) - 1u; }
  std::uint32_t mask_ = 0;
  std::size_t width_ = 0;
};

// Joint pmf over (X_1..X_K, Y, Z). Variable v < K is X_{v+1}; K is Y and
// K+1 is Z. Sets of variables are bitmasks over those positions.
using VarSet = std::uint32_t;

class JointDistribution {
 public:
  JointDistribution(std::vector<std::size_t> sizes, std::vector<double> table);

  std::size_t user_count() const { return sizes_.size() - 2; }
  std::size_t variable_count() const { return sizes_.size(); }
  const std::vector<std::size_t>& sizes() const { return sizes_; }
  const std::vector<double>& table() const { return table_; }

  VarSet x(std::size_t user) const { return VarSet{1} << user; }  // 0-based user
  VarSet xs(const UserSet& users) const { return users.mask(); }
  VarSet y() const { return VarSet{1} << user_count(); }
  VarSet z() const { return VarSet{1} << (user_count() + 1); }

  // Marginal over `vars`, row-major in ascending variable order.
  std::vector<double> marginal(VarSet vars) const;
  double joint_entropy(VarSet vars) const;

 private:
  std::vector<std::size_t> sizes_;
  std::vector<double> table_;
  std::vector<double> entropy_cache_;
};

inline constexpr double kSnapTolerance = 1e-12;

JointDistribution joint_distribution(const MacWiretapChannel& channel, const InputDistribution& input);

// H(vars | given) in bits.
double entropy(const JointDistribution& joint, VarSet vars, VarSet given = 0);

// I(left; right | given) in bits.
double conditional_mutual_information(const JointDistribution& joint, VarSet left, VarSet right,
                                      VarSet given = 0);

// -sum p log2 p over a pmf, with 0 log 0 = 0.
double shannon_entropy(const std::vector<double>& pmf);
double binary_entropy(double p);

}  // namespace macwt
