#include "macwt/region_builder.hpp"

#include "macwt/lp.hpp"
#include "macwt/polytope.hpp"
#include "macwt/random_instances.hpp"

#include <algorithm>
#include <stdexcept>

namespace macwt {

std::string_view kind_name(RegionKind kind) {
  switch (kind) {
    case RegionKind::AuxStructure: return "aux_structure";
    case RegionKind::ProjectionOuter: return "projection_outer";
    case RegionKind::ProjectionInner: return "projection_inner";
    case RegionKind::Secrecy: return "secrecy_region";
    case RegionKind::SecretOnly: return "secret_only";
    case RegionKind::MacCapacity: return "mac_capacity";
    case RegionKind::TwoUser12: return "two_user_12";
    case RegionKind::TwoUser1: return "two_user_1";
    case RegionKind::TwoUser2: return "two_user_2";
    case RegionKind::TwoUserNone: return "two_user_none";
  }
  return "?";
}

std::string secret_rate(std::size_t user) { return "R" + std::to_string(user + 1) + "s"; }
std::string open_rate(std::size_t user) { return "R" + std::to_string(user + 1) + "o"; }
std::string aux_rate(std::size_t user) { return "R" + std::to_string(user + 1) + "a"; }

std::vector<std::string> rate_variables(std::size_t users) {
  std::vector<std::string> v;
  for (std::size_t k = 0; k < users; ++k) {
    v.push_back(secret_rate(k));
    v.push_back(open_rate(k));
  }
  return v;
}

std::vector<std::string> secret_variables(std::size_t users) {
  std::vector<std::string> v;
  for (std::size_t k = 0; k < users; ++k) v.push_back(secret_rate(k));
  return v;
}

std::vector<std::string> open_variables(std::size_t users) {
  std::vector<std::string> v;
  for (std::size_t k = 0; k < users; ++k) v.push_back(open_rate(k));
  return v;
}

namespace {

double plus(double v) { return v > 0 ? v : 0.0; }
Rational plus(const Rational& v) { return v > 0 ? v : Rational(0); }

std::string triple(const UserSet& s, const UserSet& sp, const UserSet& t) {
  return "S=" + s.to_string() + " S'=" + sp.to_string() + " T=" + t.to_string();
}

// Collects rows for one descriptor and remembers every information value used.
class Builder {
 public:
  Builder(const InformationSource& info, RegionKind kind, const UserSet& kprime,
          std::vector<std::string> variables)
      : info_(info) {
    d_.kind = kind;
    d_.secrecy_set = kprime;
    d_.system = LinearSystem(std::move(variables));
  }

  std::size_t users() const { return info_.user_count(); }
  UserSet all() const { return UserSet::all(users()); }
  UserSet none() const { return UserSet::none(users()); }

  // Each information value is rounded once, so rows built from the same
  // quantities (here or after projection) agree exactly.
  // I(X_A; Y | X_{K \ A})
  Rational bob(const UserSet& a) { return y(a, a.complement()); }

  Rational y(const UserSet& a, const UserSet& given) {
    const double v = info_.mi_y(a, given);
    if (!a.empty()) d_.mi_cache[mi_label('Y', a, given)] = v;
    return rhs_from_real(v);
  }
  Rational z(const UserSet& a, const UserSet& given) {
    const double v = info_.mi_z(a, given);
    if (!a.empty()) d_.mi_cache[mi_label('Z', a, given)] = v;
    return rhs_from_real(v);
  }

  void add(const std::map<std::string, Rational>& coefs, Relation rel, const Rational& rhs, std::string prov) {
    d_.system.add_row(coefs, rel, rhs, std::move(prov));
  }
  void add_zero(const std::string& var, std::string prov) {
    d_.system.add_row({{var, Rational(1)}}, Relation::Equal, Rational(0), std::move(prov));
  }

  RegionDescriptor take() { return std::move(d_); }

 private:
  const InformationSource& info_;
  RegionDescriptor d_;
};

void add_terms(std::map<std::string, Rational>& coefs, const UserSet& users,
               std::string (*name)(std::size_t)) {
  for (auto k : users.members()) coefs[name(k)] += 1;
}

std::vector<std::string> structure_variables(std::size_t users, const UserSet& kprime) {
  std::vector<std::string> v = rate_variables(users);
  for (auto k : kprime.members()) v.push_back(aux_rate(k));
  return v;
}

RegionDescriptor structure(const InformationSource& info, const UserSet& kprime, RegionKind kind) {
  const std::size_t K = info.user_count();
  Builder b(info, kind, kprime, structure_variables(K, kprime));
  const UserSet kbar = kprime.complement();
  for (auto k : kprime.members()) {
    b.add({{aux_rate(k), Rational(1)}}, Relation::GreaterEqual, Rational(0), "aux user " + std::to_string(k + 1));
  }
  for (const auto& s : kprime.subsets()) {
    for (const auto& t : kbar.subsets()) {
      if ((s | t).empty()) continue;
      std::map<std::string, Rational> c;
      add_terms(c, s, secret_rate);
      add_terms(c, s, open_rate);
      add_terms(c, s, aux_rate);
      add_terms(c, t, open_rate);
      b.add(c, Relation::LessEqual, b.bob(s | t), "bob " + triple(s, b.none(), t));
    }
  }
  for (const auto& s : kprime.subsets()) {
    if (s.empty()) continue;
    std::map<std::string, Rational> c;
    add_terms(c, s, open_rate);
    add_terms(c, s, aux_rate);
    b.add(c, Relation::GreaterEqual, b.z(s, kbar), "eve " + triple(s, s, b.none()));
  }
  return b.take();
}

double difference(const InformationSource& info, const UserSet& s, const UserSet& kprime) {
  return info.bob(s) - info.mi_z(s, kprime.complement());
}

}  // namespace

Cond1Report check_condition_cond1(const InformationSource& info, const UserSet& kprime) {
  Cond1Report report;
  for (const auto& s : kprime.subsets()) {
    const double d = difference(info, s, kprime);
    report.differences.push_back({s, d});
    if (d < -kBoundaryTolerance) {
      report.holds = false;
      report.violating_subsets.push_back(s);
    }
    if (!s.empty() && d <= kBoundaryTolerance) report.strict = false;
  }
  return report;
}

bool check_extended_condition(const InformationSource& info, const UserSet& kprime) {
  const UserSet kbar = kprime.complement();
  for (const auto& s : kprime.subsets()) {
    for (const auto& sp : s.subsets()) {
      for (const auto& t : kbar.subsets()) {
        const double d = info.bob(s | t) - info.mi_z(sp, kbar);
        if (d < -kBoundaryTolerance) return false;
      }
    }
  }
  return true;
}

RegionDescriptor build_secrecy_region(const InformationSource& info, const UserSet& kprime) {
  const std::size_t K = info.user_count();
  Builder b(info, RegionKind::Secrecy, kprime, rate_variables(K));
  const UserSet kbar = kprime.complement();
  for (auto k : kbar.members()) b.add_zero(secret_rate(k), "no secret for user " + std::to_string(k + 1));
  for (const auto& s : kprime.subsets()) {
    for (const auto& sp : s.subsets()) {
      for (const auto& t : kbar.subsets()) {
        if ((s | t).empty()) continue;
        std::map<std::string, Rational> c;
        add_terms(c, s, secret_rate);
        add_terms(c, s.minus(sp), open_rate);
        add_terms(c, t, open_rate);
        const Rational rhs = plus(b.bob(s | t) - b.z(sp, kbar));
        b.add(c, Relation::LessEqual, rhs, triple(s, sp, t));
      }
    }
  }
  return b.take();
}

RegionDescriptor build_aux_structure(const InformationSource& info, const UserSet& kprime) {
  return structure(info, kprime, RegionKind::AuxStructure);
}

ProjectionSystems build_projection_systems(const InformationSource& info) {
  const std::size_t K = info.user_count();
  const UserSet all = UserSet::all(K);
  ProjectionSystems out;
  out.inner = structure(info, all, RegionKind::ProjectionInner);

  Builder b(info, RegionKind::ProjectionOuter, all, rate_variables(K));
  for (const auto& s : all.subsets()) {
    if (s.empty()) continue;
    for (const auto& sp : s.subsets()) {
      std::map<std::string, Rational> c;
      add_terms(c, s, secret_rate);
      add_terms(c, s.minus(sp), open_rate);
      b.add(c, Relation::LessEqual, b.bob(s) - b.z(sp, b.none()), triple(s, sp, b.none()));
    }
  }
  out.outer = b.take();
  return out;
}

ProjectionCheck verify_aux_projection(const InformationSource& info) {
  const ProjectionSystems sys = build_projection_systems(info);
  std::vector<std::string> aux;
  for (std::size_t k = 0; k < info.user_count(); ++k) aux.push_back(aux_rate(k));
  ProjectionCheck out;
  out.projected = fourier_motzkin_project(sys.inner.system, aux);
  out.inner_rows = sys.inner.system.rows().size();
  out.projected_rows = out.projected.rows().size();
  out.outer_rows = sys.outer.system.rows().size();
  out.equal = polytope_equal(sys.outer.system, out.projected);
  return out;
}

RegionDescriptor build_secret_only_region(const InformationSource& info, const UserSet& kprime) {
  const std::size_t K = info.user_count();
  Builder b(info, RegionKind::SecretOnly, kprime, secret_variables(K));
  const UserSet kbar = kprime.complement();
  for (auto k : kbar.members()) b.add_zero(secret_rate(k), "no secret for user " + std::to_string(k + 1));
  for (const auto& s : kprime.subsets()) {
    if (s.empty()) continue;
    std::map<std::string, Rational> c;
    add_terms(c, s, secret_rate);
    b.add(c, Relation::LessEqual, plus(b.bob(s) - b.z(s, kbar)), triple(s, s, b.none()));
  }
  return b.take();
}

RegionDescriptor build_mac_capacity(const InformationSource& info) {
  const std::size_t K = info.user_count();
  const UserSet all = UserSet::all(K);
  Builder b(info, RegionKind::MacCapacity, UserSet::none(K), rate_variables(K));
  for (std::size_t k = 0; k < K; ++k) b.add_zero(secret_rate(k), "no secret for user " + std::to_string(k + 1));
  for (const auto& t : all.subsets()) {
    if (t.empty()) continue;
    std::map<std::string, Rational> c;
    add_terms(c, t, open_rate);
    b.add(c, Relation::LessEqual, b.bob(t), triple(b.none(), b.none(), t));
  }
  return b.take();
}

RegionDescriptor build_twouser_region(const InformationSource& info, const UserSet& kprime) {
  if (info.user_count() != 2) throw std::invalid_argument("two-user listing needs K = 2");
  const UserSet u0(0, 2), u1(1, 2), u2(2, 2), u12(3, 2);
  const Rational one = 1;
  const std::map<std::uint32_t, RegionKind> kinds = {{3, RegionKind::TwoUser12},
                                                      {1, RegionKind::TwoUser1},
                                                      {2, RegionKind::TwoUser2},
                                                      {0, RegionKind::TwoUserNone}};
  Builder b(info, kinds.at(kprime.mask()), kprime, rate_variables(2));
  const Rational y1 = b.y(u1, u2);   // I(X1;Y|X2)
  const Rational y2 = b.y(u2, u1);   // I(X2;Y|X1)
  const Rational y12 = b.y(u12, u0); // I(X1,X2;Y)
  using R = Relation;

  switch (kprime.mask()) {
    case 3: {
      const Rational z1 = b.z(u1, u0), z2 = b.z(u2, u0), z12 = b.z(u12, u0);
      b.add({{"R1s", one}, {"R1o", one}}, R::LessEqual, y1, triple(u1, u0, u0));
      b.add({{"R2s", one}, {"R2o", one}}, R::LessEqual, y2, triple(u2, u0, u0));
      b.add({{"R1s", one}, {"R1o", one}, {"R2s", one}, {"R2o", one}}, R::LessEqual, y12, triple(u12, u0, u0));
      b.add({{"R1s", one}}, R::LessEqual, plus(y1 - z1), triple(u1, u1, u0));
      b.add({{"R2s", one}}, R::LessEqual, plus(y2 - z2), triple(u2, u2, u0));
      b.add({{"R1s", one}, {"R2s", one}}, R::LessEqual, plus(y12 - z12), triple(u12, u12, u0));
      b.add({{"R1s", one}, {"R1o", one}, {"R2s", one}}, R::LessEqual, plus(y12 - z2), triple(u12, u2, u0));
      b.add({{"R1s", one}, {"R2s", one}, {"R2o", one}}, R::LessEqual, plus(y12 - z1), triple(u12, u1, u0));
      break;
    }
    case 1: {
      const Rational z1 = b.z(u1, u2);  // I(X1;Z|X2)
      b.add_zero("R2s", "no secret for user 2");
      b.add({{"R1s", one}, {"R1o", one}}, R::LessEqual, y1, triple(u1, u0, u0));
      b.add({{"R2o", one}}, R::LessEqual, y2, triple(u0, u0, u2));
      b.add({{"R1s", one}, {"R1o", one}, {"R2o", one}}, R::LessEqual, y12, triple(u1, u0, u2));
      b.add({{"R1s", one}}, R::LessEqual, plus(y1 - z1), triple(u1, u1, u0));
      b.add({{"R1s", one}, {"R2o", one}}, R::LessEqual, plus(y12 - z1), triple(u1, u1, u2));
      break;
    }
    case 2: {
      const Rational z2 = b.z(u2, u1);  // I(X2;Z|X1)
      b.add_zero("R1s", "no secret for user 1");
      b.add({{"R1o", one}}, R::LessEqual, y1, triple(u0, u0, u1));
      b.add({{"R2s", one}, {"R2o", one}}, R::LessEqual, y2, triple(u2, u0, u0));
      b.add({{"R1o", one}, {"R2s", one}, {"R2o", one}}, R::LessEqual, y12, triple(u2, u0, u1));
      b.add({{"R2s", one}}, R::LessEqual, plus(y2 - z2), triple(u2, u2, u0));
      b.add({{"R1o", one}, {"R2s", one}}, R::LessEqual, plus(y12 - z2), triple(u2, u2, u1));
      break;
    }
    default: {
      b.add_zero("R1s", "no secret for user 1");
      b.add_zero("R2s", "no secret for user 2");
      b.add({{"R1o", one}}, R::LessEqual, y1, triple(u0, u0, u1));
      b.add({{"R2o", one}}, R::LessEqual, y2, triple(u0, u0, u2));
      b.add({{"R1o", one}, {"R2o", one}}, R::LessEqual, y12, triple(u0, u0, u12));
      break;
    }
  }
  return b.take();
}

AuxRateSolution find_aux_rates(const InformationSource& info, const UserSet& kprime,
                               const RatePoint& point) {
  const std::size_t K = info.user_count();
  const RegionDescriptor full = build_aux_structure(info, kprime);
  AuxRateSolution out;

  std::map<std::string, Rational> fixed;
  for (const auto& name : rate_variables(K)) fixed[name] = exact_rational(point.at(name));
  for (auto k : kprime.complement().members()) {
    if (fixed[secret_rate(k)] != 0) return out;  // only users in K' may carry secrets
  }
  const LinearSystem reduced = full.system.substitute(fixed);
  std::map<std::string, Rational> objective;
  for (auto k : kprime.members()) objective[aux_rate(k)] = 1;
  const LpResult r = lp_solve(reduced, objective, Sense::Minimize);
  if (r.status != LpStatus::Optimal) return out;

  out.feasible = true;
  std::vector<Rational> whole(full.system.variable_count());
  for (std::size_t i = 0; i < full.system.variable_count(); ++i) {
    const std::string& name = full.system.variables()[i];
    if (auto it = fixed.find(name); it != fixed.end()) {
      whole[i] = it->second;
    } else {
      whole[i] = r.witness[reduced.index_of(name)];
    }
  }
  for (auto k : kprime.members()) {
    const Rational v = whole[full.system.index_of(aux_rate(k))];
    out.exact[k] = v;
    out.rates[k] = to_double(v);
  }
  out.verified = full.system.satisfied_by(whole);
  return out;
}

SecrecyMax max_sum_secrecy_rate(const InformationSource& info) {
  const std::size_t K = info.user_count();
  SecrecyMax out;
  out.argmax = UserSet::none(K);
  out.per_subset.assign(std::size_t{1} << K, 0.0);
  for (const auto& kp : UserSet::all(K).subsets()) {
    const double v = kp.empty() ? 0.0 : plus(difference(info, kp, kp));
    out.per_subset[kp.mask()] = v;
    if (v > out.value) {
      out.value = v;
      out.argmax = kp;
    }
  }
  return out;
}

namespace {

LinearSystem bounded_region(const InformationSource& info, const UserSet& kprime) {
  return build_secrecy_region(info, kprime).system.with_nonnegativity();
}

std::map<std::string, Rational> unit_objective(const std::vector<std::string>& names) {
  std::map<std::string, Rational> o;
  for (const auto& n : names) o[n] = 1;
  return o;
}

Rational lp_max(const LinearSystem& s, const std::map<std::string, Rational>& objective) {
  const LpResult r = lp_solve(s, objective, Sense::Maximize);
  if (r.status != LpStatus::Optimal) {
    throw std::logic_error(std::string("rate region LP is ") + std::string(status_name(r.status)));
  }
  return r.optimum;
}

}  // namespace

Rational max_sum_secrecy_rate_lp(const InformationSource& info, const UserSet& kprime) {
  return lp_max(bounded_region(info, kprime), unit_objective(secret_variables(info.user_count())));
}

Rational max_sum_secrecy_rate_lp(const InformationSource& info) {
  Rational best = 0;
  for (const auto& kp : UserSet::all(info.user_count()).subsets()) {
    best = std::max(best, max_sum_secrecy_rate_lp(info, kp));
  }
  return best;
}

double max_open_sum_at_secrecy_max(const InformationSource& info) {
  const SecrecyMax sm = max_sum_secrecy_rate(info);
  if (sm.value <= 0) throw std::domain_error("maximal secrecy sum rate is zero");
  const UserSet best = sm.argmax;
  const UserSet rest = best.complement();
  return info.mi_y(rest, UserSet::none(info.user_count())) + info.mi_z(best, rest);
}

Rational max_open_sum_at_secrecy_max_lp(const InformationSource& info) {
  const std::size_t K = info.user_count();
  const SecrecyMax sm = max_sum_secrecy_rate(info);
  if (sm.value <= 0) throw std::domain_error("maximal secrecy sum rate is zero");
  LinearSystem region = bounded_region(info, sm.argmax);
  const Rational secrecy = lp_max(region, unit_objective(secret_variables(K)));
  std::map<std::string, Rational> pin;
  for (auto k : sm.argmax.members()) pin[secret_rate(k)] = 1;
  region.add_row(pin, Relation::Equal, secrecy, "secrecy sum at its maximum");
  return lp_max(region, unit_objective(open_variables(K)));
}

namespace {

bool hypotheses(const InformationSource& info, const UserSet& kprime, const UserSet& k0) {
  if (difference(info, k0, kprime) >= kBoundaryTolerance) return false;
  for (const auto& v : kprime.minus(k0).subsets()) {
    if (v.empty()) continue;
    if (difference(info, k0 | v, kprime) <= kBoundaryTolerance) return false;
  }
  return true;
}

}  // namespace

std::optional<UserSet> find_k0(const InformationSource& info, const UserSet& kprime) {
  for (const auto& k0 : kprime.subsets()) {
    if (k0 == kprime) continue;
    if (hypotheses(info, kprime, k0)) return k0;
  }
  return std::nullopt;
}

ReductionReport secrecy_set_reduction(const InformationSource& info, const UserSet& kprime,
                                    const UserSet& k0, std::size_t samples, std::uint64_t seed) {
  if (!k0.subset_of(kprime) || k0 == kprime) {
    throw std::invalid_argument("K0 = " + k0.to_string() + " is not a proper subset of " +
                                kprime.to_string());
  }
  const std::size_t K = info.user_count();
  ReductionReport report;
  report.reduced = kprime.minus(k0);
  report.hypotheses_hold = hypotheses(info, kprime, k0);

  report.strict_positivity = true;
  for (const auto& v : report.reduced.subsets()) {
    if (!v.empty() && difference(info, v, report.reduced) <= kBoundaryTolerance) {
      report.strict_positivity = false;
    }
  }
  if (!report.hypotheses_hold) return report;

  const LinearSystem inner = bounded_region(info, kprime);
  const LinearSystem outer = build_secrecy_region(info, report.reduced).system;
  report.polytope_contained = polytope_contains(outer, inner, exact_rational(kBoundaryTolerance));

  Rng rng(seed);
  const auto names = rate_variables(K);
  report.vertices_contained = true;
  for (std::size_t i = 0; i < samples; ++i) {
    std::map<std::string, Rational> objective;
    for (const auto& n : names) objective[n] = exact_rational(2.0 * uniform01(rng) - 0.5);
    const LpResult r = lp_solve(inner, objective, Sense::Maximize);
    if (r.status != LpStatus::Optimal) {
      report.vertices_contained = false;
      continue;
    }
    ++report.samples;
    if (!contains_point(outer, to_rate_point(inner, r.witness), kBoundaryTolerance)) {
      report.vertices_contained = false;
    }
  }
  return report;
}

}  // namespace macwt
