#pragma once

#include "macwt/information.hpp"
#include "macwt/linear_system.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace macwt {

enum class RegionKind {
  AuxStructure,  // auxiliary-rate system for a secrecy set
  ProjectionOuter,
  ProjectionInner,
  Secrecy,
  SecretOnly,
  MacCapacity,
  TwoUser12,  // the literal two-user listings, one per secrecy set
  TwoUser1,
  TwoUser2,
  TwoUserNone,
};

std::string_view kind_name(RegionKind kind);

struct RegionDescriptor {
  RegionKind kind = RegionKind::Secrecy;
  UserSet secrecy_set;
  LinearSystem system;
  std::map<std::string, double> mi_cache;
};

// Rate variable names; users are 0-based here and 1-based in the names.
std::string secret_rate(std::size_t user);     // "R1s"
std::string open_rate(std::size_t user);       // "R1o"
std::string aux_rate(std::size_t user);        // "R1a"
std::vector<std::string> rate_variables(std::size_t users);  // R1s R1o R2s R2o ...
std::vector<std::string> secret_variables(std::size_t users);
std::vector<std::string> open_variables(std::size_t users);

inline constexpr double kBoundaryTolerance = 1e-9;

struct SubsetDifference {
  UserSet subset;
  double difference = 0;  // Bob's information minus Eve's for this subset
};

struct Cond1Report {
  bool holds = true;    // no difference below -kBoundaryTolerance
  bool strict = true;   // every nonempty subset strictly positive
  std::vector<SubsetDifference> differences;  // all subsets, ascending bitmask
  std::vector<UserSet> violating_subsets;
};

// I(X_S; Y | X_{K \ S}) - I(X_S; Z | X_{K \ K'}) for every S ⊆ K'.
Cond1Report check_condition_cond1(const InformationSource& info, const UserSet& kprime);

// The extended family over every (S, S', T) triple; equivalent to the above.
bool check_extended_condition(const InformationSource& info, const UserSet& kprime);

RegionDescriptor build_secrecy_region(const InformationSource& info, const UserSet& kprime);
RegionDescriptor build_aux_structure(const InformationSource& info, const UserSet& kprime);

struct ProjectionSystems {
  RegionDescriptor inner;  // with auxiliary rates
  RegionDescriptor outer;  // secret and open rates only, unclamped
};
ProjectionSystems build_projection_systems(const InformationSource& info);

struct ProjectionCheck {
  bool equal = false;
  std::size_t inner_rows = 0;
  std::size_t projected_rows = 0;
  std::size_t outer_rows = 0;
  LinearSystem projected;
};

// Eliminates the auxiliary rates from the inner system and compares the
// result with the outer one as polytopes.
ProjectionCheck verify_aux_projection(const InformationSource& info);

// Secret rates only (open rates pinned to zero).
RegionDescriptor build_secret_only_region(const InformationSource& info, const UserSet& kprime);
RegionDescriptor build_mac_capacity(const InformationSource& info);

// K = 2 only; rows typed out one by one rather than enumerated.
RegionDescriptor build_twouser_region(const InformationSource& info, const UserSet& kprime);

struct AuxRateSolution {
  bool feasible = false;
  std::map<std::size_t, double> rates;       // user (0-based) -> R_k^a
  std::map<std::size_t, Rational> exact;     // same, exact
  bool verified = false;  // witness plugged back satisfies every row exactly
};

// Looks for auxiliary rates making `point` (secret and open rates of every
// user) satisfy the auxiliary-rate system; the smallest total is returned.
AuxRateSolution find_aux_rates(const InformationSource& info, const UserSet& kprime,
                               const RatePoint& point);

struct SecrecyMax {
  double value = 0;
  UserSet argmax;
  std::vector<double> per_subset;  // clamped difference, indexed by bitmask
};

SecrecyMax max_sum_secrecy_rate(const InformationSource& info);
// Largest sum of secret rates over the union of all secrecy-set regions, by LP.
Rational max_sum_secrecy_rate_lp(const InformationSource& info);
Rational max_sum_secrecy_rate_lp(const InformationSource& info, const UserSet& kprime);

// Throws std::domain_error when the maximal secrecy sum is zero.
double max_open_sum_at_secrecy_max(const InformationSource& info);
Rational max_open_sum_at_secrecy_max_lp(const InformationSource& info);

struct ReductionReport {
  bool hypotheses_hold = false;
  bool strict_positivity = false;    // the reduced set satisfies the strict condition
  bool vertices_contained = false;   // sampled boundary points land in the reduced region
  bool polytope_contained = false;   // LP containment, each row within kBoundaryTolerance
  std::size_t samples = 0;
  UserSet reduced;
};

// k0 must be a proper subset of kprime (std::invalid_argument otherwise).
ReductionReport secrecy_set_reduction(const InformationSource& info, const UserSet& kprime,
                                    const UserSet& k0, std::size_t samples = 32,
                                    std::uint64_t seed = 1);

// Smallest-bitmask K0 ⊊ K' meeting both hypotheses, if any.
std::optional<UserSet> find_k0(const InformationSource& info, const UserSet& kprime);

}  // namespace macwt
