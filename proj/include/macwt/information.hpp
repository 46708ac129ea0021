#pragma once

#include "macwt/prob_core.hpp"

#include <map>
#include <string>
#include <utility>

namespace macwt {

// The information quantities a region needs, indexed by user sets:
//   mi_y(A, C) = I(X_A; Y | X_C),  mi_z(A, C) = I(X_A; Z | X_C).
class InformationSource {
 public:
  virtual ~InformationSource() = default;
  virtual std::size_t user_count() const = 0;
  virtual double mi_y(const UserSet& a, const UserSet& given) const = 0;
  virtual double mi_z(const UserSet& a, const UserSet& given) const = 0;

  // I(X_A; Y | X_{K\A}): what Bob learns about A when everyone else is known.
  double bob(const UserSet& a) const { return mi_y(a, a.complement()); }
};

class ChannelInformation : public InformationSource {
 public:
  ChannelInformation(const MacWiretapChannel& channel, const InputDistribution& input);

  std::size_t user_count() const override { return joint_.user_count(); }
  double mi_y(const UserSet& a, const UserSet& given) const override;
  double mi_z(const UserSet& a, const UserSet& given) const override;
  const JointDistribution& joint() const { return joint_; }

 private:
  JointDistribution joint_;
};

// Hand-specified values, for worked examples. Quantities that were not set
// throw std::out_of_range.
class SyntheticInformation : public InformationSource {
 public:
  explicit SyntheticInformation(std::size_t users) : users_(users) {}

  SyntheticInformation& set_y(const UserSet& a, const UserSet& given, double value);
  SyntheticInformation& set_z(const UserSet& a, const UserSet& given, double value);

  std::size_t user_count() const override { return users_; }
  double mi_y(const UserSet& a, const UserSet& given) const override;
  double mi_z(const UserSet& a, const UserSet& given) const override;

 private:
  using Key = std::pair<std::uint32_t, std::uint32_t>;
  std::size_t users_;
  std::map<Key, double> y_, z_;
};

// Label used in provenance and MI caches, e.g. "I(X{1};Z|X{2})".
std::string mi_label(char output, const UserSet& a, const UserSet& given);

}  // namespace macwt
