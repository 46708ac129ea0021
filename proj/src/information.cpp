#include "macwt/information.hpp"

#include <stdexcept>

namespace macwt {

ChannelInformation::ChannelInformation(const MacWiretapChannel& channel, const InputDistribution& input)
    : joint_(joint_distribution(channel, input)) {}

double ChannelInformation::mi_y(const UserSet& a, const UserSet& given) const {
  return conditional_mutual_information(joint_, joint_.xs(a), joint_.y(), joint_.xs(given));
}

double ChannelInformation::mi_z(const UserSet& a, const UserSet& given) const {
  return conditional_mutual_information(joint_, joint_.xs(a), joint_.z(), joint_.xs(given));
}

SyntheticInformation& SyntheticInformation::set_y(const UserSet& a, const UserSet& given, double value) {
  y_[{a.mask(), given.mask()}] = value;
  return *this;
}

SyntheticInformation& SyntheticInformation::set_z(const UserSet& a, const UserSet& given, double value) {
  z_[{a.mask(), given.mask()}] = value;
  return *this;
}

double SyntheticInformation::mi_y(const UserSet& a, const UserSet& given) const {
  if (a.empty()) return 0.0;
  auto it = y_.find({a.mask(), given.mask()});
  if (it == y_.end()) throw std::out_of_range("no value for " + mi_label('Y', a, given));
  return it->second;
}

double SyntheticInformation::mi_z(const UserSet& a, const UserSet& given) const {
  if (a.empty()) return 0.0;
  auto it = z_.find({a.mask(), given.mask()});
  if (it == z_.end()) throw std::out_of_range("no value for " + mi_label('Z', a, given));
  return it->second;
}

std::string mi_label(char output, const UserSet& a, const UserSet& given) {
  std::string s = "I(X" + a.to_string() + ";" + std::string(1, output);
  if (!given.empty()) s += "|X" + given.to_string();
  return s + ")";
}

}  // namespace macwt
