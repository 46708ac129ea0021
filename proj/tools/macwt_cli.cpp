#include "macwt/adder.hpp"
#include "macwt/channel_io.hpp"
#include "macwt/information.hpp"
#include "macwt/linear_system_io.hpp"
#include "macwt/random_instances.hpp"
#include "macwt/region_builder.hpp"
#include "macwt/resolvability.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace macwt;

namespace {

constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string out = "out";
  std::uint64_t seed = 1;
  double tol = kBoundaryTolerance;

  std::string channel;
  long kprime = -1;

  std::size_t users = 2;
  std::size_t trials = 10;

  double q1 = 0.5, q2 = 0.75, delta = 0.01;

  std::vector<double> rates{0.5};
  std::vector<std::size_t> blocklengths{2, 4, 6};
  double leak_secret = 0.5, leak_open = 0.0, leak_aux = 0.5;
  std::size_t leak_trials = 50;
};

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << text;
}

void write_json(const fs::path& path, const json& doc) { write_text(path, doc.dump(2) + "\n"); }

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

ChannelSpec read_channel(const std::string& path) {
  try {
    return load_channel(path);
  } catch (const ChannelFormatError& e) {
    throw UsageError(e.what());
  }
}

// Built-in K=1 example: binary input, Bob through BSC(0.1), Eve through BSC(0.3).
ChannelSpec builtin_bsc() {
  std::vector<double> pmf;
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      for (int z = 0; z < 2; ++z) pmf.push_back((x == y ? 0.9 : 0.1) * (x == z ? 0.7 : 0.3));
    }
  }
  MacWiretapChannel ch({2}, 2, 2, pmf);
  return {ch, InputDistribution::uniform(ch)};
}

std::vector<UserSet> secrecy_sets(const Options& o, std::size_t users) {
  const long full = (1L << users) - 1;
  if (o.kprime > full) {
    throw UsageError("--kprime " + std::to_string(o.kprime) + " exceeds the " + std::to_string(users) +
                     "-user mask " + std::to_string(full));
  }
  std::vector<UserSet> out;
  if (o.kprime >= 0) {
    out.emplace_back(static_cast<std::uint32_t>(o.kprime), users);
  } else {
    out = UserSet::all(users).subsets();
  }
  return out;
}

int cmd_region(const Options& o, json& manifest) {
  ChannelSpec spec = read_channel(o.channel);
  const InputDistribution input = spec.input ? *spec.input : InputDistribution::uniform(spec.channel);
  manifest["input_dist_source"] = spec.input ? "file" : "uniform";
  const ChannelInformation info(spec.channel, input);
  const std::size_t K = spec.channel.user_count();

  json index = json::array();
  for (const auto& kp : secrecy_sets(o, K)) {
    const RegionDescriptor d = build_secrecy_region(info, kp);
    const Cond1Report c = check_condition_cond1(info, kp);
    const std::string stem = "region_k" + std::to_string(kp.mask());

    json cond = {{"secrecy_set", kp.to_string()}, {"tolerance", o.tol}};
    bool holds = true;
    json diffs = json::array();
    for (const auto& sd : c.differences) {
      diffs.push_back({{"subset", sd.subset.to_string()}, {"difference", sd.difference}});
      if (sd.difference < -o.tol) holds = false;
    }
    cond["holds"] = holds;
    cond["strict"] = c.strict;
    cond["differences"] = diffs;

    json doc = to_json(d.system);
    doc["kind"] = std::string(kind_name(d.kind));
    doc["secrecy_set"] = kp.to_string();
    doc["secrecy_mask"] = kp.mask();
    doc["cond1"] = cond;
    write_json(fs::path(o.out) / (stem + ".json"), doc);
    write_text(fs::path(o.out) / (stem + ".txt"), to_text(d.system));
    write_json(fs::path(o.out) / ("cond1_k" + std::to_string(kp.mask()) + ".json"), cond);
    write_json(fs::path(o.out) / ("mi_k" + std::to_string(kp.mask()) + ".json"), json(d.mi_cache));

    std::cout << stem << ": " << d.system.rows().size() << " rows, cond1 "
              << (holds ? "holds" : "violated") << "\n";
    index.push_back({{"secrecy_set", kp.to_string()}, {"file", stem + ".json"}, {"rows", d.system.rows().size()},
                     {"cond1_holds", holds}});
  }
  manifest["regions"] = index;
  return kOk;
}

int cmd_verify_projection(const Options& o, json& manifest) {
  if (o.users < 1 || o.users > 3) throw UsageError("--K must be 1, 2 or 3 (projection cost grows too fast)");
  bool all_ok = true;
  json trials = json::array();
  for (std::size_t t = 0; t < o.trials; ++t) {
    Rng rng(derive_seed(o.seed, o.users, t));
    const std::vector<std::size_t> sizes(o.users, 2);
    const auto ch = random_degraded_channel(rng, sizes, 3, 2);
    const auto in = random_input(rng, ch);
    const ChannelInformation info(ch, in);
    const bool hypothesis = check_extended_condition(info, UserSet::all(o.users));
    const ProjectionCheck check = verify_aux_projection(info);
    const bool ok = hypothesis && check.equal;
    all_ok = all_ok && ok;
    std::cout << "trial " << t << ": inner " << check.inner_rows << " rows, projected "
              << check.projected_rows << ", outer " << check.outer_rows << " -> "
              << (ok ? "pass" : "FAIL") << "\n";
    trials.push_back({{"trial", t},
                      {"hypothesis_holds", hypothesis},
                      {"inner_rows", check.inner_rows},
                      {"projected_rows", check.projected_rows},
                      {"outer_rows", check.outer_rows},
                      {"equal", check.equal}});
  }
  write_json(fs::path(o.out) / "projection_check.json", {{"K", o.users}, {"trials", trials}, {"pass", all_ok}});
  manifest["pass"] = all_ok;
  return all_ok ? kOk : kVerifyFailed;
}

void write_hull(const fs::path& path, const std::vector<Point2>& hull) {
  std::ostringstream s;
  s << "R1s,R2o\n";
  for (const auto& p : hull) s << fmt(p.x) << "," << fmt(p.y) << "\n";
  write_text(path, s.str());
}

int cmd_adder(const Options& o, json& manifest) {
  if (!(o.q1 >= 0 && o.q1 <= 1) || !(o.q2 >= 0 && o.q2 <= 1)) throw UsageError("--q1/--q2 must lie in [0,1]");
  if (!(o.delta > 0 && o.delta <= 0.5)) throw UsageError("--delta must lie in (0, 0.5]");

  const SweepResult sweep = sweep_and_hull(o.q1, o.q2, o.delta);
  std::ostringstream csv;
  csv << "alpha,beta,a1,b,c1,a2,c2\n";
  for (const auto& c : sweep.per_cell) {
    csv << fmt(c.alpha) << "," << fmt(c.beta) << "," << fmt(c.bounds.a1) << "," << fmt(c.bounds.b) << ","
        << fmt(c.bounds.c1) << "," << fmt(c.bounds.a2) << "," << fmt(c.bounds.c2) << "\n";
  }
  write_text(fs::path(o.out) / "sweep.csv", csv.str());
  write_hull(fs::path(o.out) / "hull_old.csv", sweep.hull_old);
  write_hull(fs::path(o.out) / "hull_new1.csv", sweep.hull_new1);

  json sep = {{"q1", o.q1}, {"q2", o.q2}, {"delta", o.delta}};
  int code = kOk;
  try {
    const SeparationResult r = reproduce_separation(sweep.hull_old, sweep.hull_new1);
    sep["separable"] = true;
    sep["v0"] = {r.v0.x, r.v0.y};
    sep["w"] = {r.line.w1, r.line.w2};
    sep["t"] = r.line.t;
    sep["w_exact"] = {to_string(r.line.w1_exact), to_string(r.line.w2_exact)};
    sep["t_exact"] = to_string(r.line.t_exact);
    sep["distance_outside_old"] = r.distance;
    json cands = json::array();
    for (const auto& p : r.separable) cands.push_back({p.x, p.y});
    sep["separable_extreme_points"] = cands;
    std::cout << "separable: v0 = (" << fmt(r.v0.x) << ", " << fmt(r.v0.y) << ")\n";
  } catch (const std::runtime_error& e) {
    sep["separable"] = false;
    sep["error"] = e.what();
    std::cout << "not separable: " << e.what() << "\n";
    code = kVerifyFailed;
  }
  write_json(fs::path(o.out) / "separation.json", sep);
  manifest["grid_cells"] = sweep.per_cell.size();
  return code;
}

int cmd_resolve(const Options& o, json& manifest) {
  ChannelSpec spec = o.channel.empty() ? builtin_bsc() : read_channel(o.channel);
  const InputDistribution input = spec.input ? *spec.input : InputDistribution::uniform(spec.channel);
  const std::size_t K = spec.channel.user_count();
  manifest["channel_source"] = o.channel.empty() ? "builtin BSC(0.1) to Bob, BSC(0.3) to Eve" : o.channel;

  const UserSet kp = o.kprime >= 0 ? secrecy_sets(o, K).front() : UserSet::all(K);
  std::vector<double> rates(K, 0.0);
  if (o.rates.size() == 1) {
    for (auto k : kp.members()) rates[k] = o.rates[0];
  } else if (o.rates.size() == K) {
    rates = o.rates;
  } else {
    throw UsageError("--q takes one value or one per user");
  }
  for (double r : rates) {
    if (r < 0) throw UsageError("--q must be nonnegative");
  }
  if (o.blocklengths.empty()) throw UsageError("--n needs at least one blocklength");
  for (auto n : o.blocklengths) {
    if (n == 0) throw UsageError("--n values must be positive");
  }

  std::vector<SubsetCondition> conds;
  try {
    conds = resolvability_conditions(spec.channel, input, kp, rates);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  json cj = json::array();
  for (const auto& c : conds) {
    cj.push_back({{"subset", c.subset.to_string()}, {"rate_sum", c.rate_sum},
                  {"eve_information", c.eve_information}, {"holds", c.holds}});
  }
  manifest["conditions"] = cj;

  const ResolvabilityConfig config{rates, o.blocklengths, o.trials, o.seed};
  const auto tv = expected_tv_distance(config, spec.channel, input, kp);
  std::ostringstream s;
  s << "n,mean_tv,trials,condition_holds,min_tv\n";
  std::vector<double> means;
  for (const auto& p : tv) {
    s << p.n << "," << fmt(p.mean_tv) << "," << p.trials << "," << (p.condition_holds ? "true" : "false")
      << "," << fmt(p.min_tv) << "\n";
    means.push_back(p.mean_tv);
    std::cout << "n=" << p.n << " mean TV " << fmt(p.mean_tv) << "\n";
  }
  write_text(fs::path(o.out) / "tv_decay.csv", s.str());
  const auto slope = log_linear_slope(o.blocklengths, means);
  manifest["tv_strictly_decreasing"] = strictly_decreasing(means);
  manifest["tv_log_slope"] = slope ? json(*slope) : json(nullptr);

  // Leakage of the layered scheme at the given secret/open/auxiliary rates.
  std::vector<LayeredRate> layered(K);
  for (auto k : kp.members()) layered[k] = {o.leak_secret, o.leak_open, o.leak_aux};
  bool bounds_ok = true;
  std::ostringstream l;
  l << "n,leakage_bits,max_secret_tv,n_log2_z,trials";
  for (auto k : kp.members()) {
    const std::string u = std::to_string(k + 1);
    l << ",realized_R" << u << "s,realized_R" << u << "o,realized_R" << u << "a";
  }
  l << "\n";
  for (auto n : o.blocklengths) {
    double sum = 0, worst_tv = 0, cap = 0;
    CodebookEnsemble first;
    for (std::size_t t = 0; t < o.leak_trials; ++t) {
      const auto e = draw_ensemble(spec.channel, input, kp, layered, n, derive_seed(o.seed, 1000 + n, t));
      const LeakageResult r = exact_information_leakage(e, spec.channel);
      if (r.leakage_bits > r.upper_bound + 1e-12) bounds_ok = false;
      sum += r.leakage_bits;
      worst_tv = std::max(worst_tv, r.max_secret_tv);
      cap = r.upper_bound;
      if (t == 0) first = e;
    }
    l << n << "," << fmt(sum / static_cast<double>(o.leak_trials)) << "," << fmt(worst_tv) << "," << fmt(cap)
      << "," << o.leak_trials;
    for (auto k : kp.members()) {
      const auto& r = first.users[k].realized;
      l << "," << fmt(r.secret) << "," << fmt(r.open) << "," << fmt(r.aux);
    }
    l << "\n";
  }
  write_text(fs::path(o.out) / "leakage.csv", l.str());
  manifest["leakage_within_bound"] = bounds_ok;
  return bounds_ok ? kOk : kVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rate regions of multiple-access wiretap channels"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--out", o.out, "Output directory")->capture_default_str();
  app.add_option("--seed", o.seed, "Master seed")->capture_default_str();
  app.add_option("--tol", o.tol, "Tolerance for treating a difference as zero")->capture_default_str();

  auto* region = app.add_subcommand("region", "Build secrecy regions for a channel file");
  region->add_option("--channel", o.channel, "Channel JSON file")->required();
  region->add_option("--kprime", o.kprime, "Secrecy set as a bitmask (all subsets if omitted)");

  auto* projection = app.add_subcommand("verify-lemma1", "Check the auxiliary-rate projection on random channels");
  projection->add_option("--K", o.users, "Number of users (1..3)")->required();
  projection->add_option("--trials", o.trials, "Random channels")->capture_default_str();

  auto* adder = app.add_subcommand("adder", "Two-user binary adder channel sweep and separation");
  adder->add_option("--q1", o.q1, "Bob's noise parameter")->capture_default_str();
  adder->add_option("--q2", o.q2, "Eve's noise parameter")->capture_default_str();
  adder->add_option("--delta", o.delta, "Grid step for alpha and beta")->capture_default_str();

  auto* resolve = app.add_subcommand("resolve", "Exact output-statistics and leakage experiments");
  resolve->add_option("--channel", o.channel, "Channel JSON file (built-in BSC example if omitted)");
  resolve->add_option("--kprime", o.kprime, "Secrecy set bitmask (all users if omitted)");
  resolve->add_option("--q", o.rates, "Codebook rate per secrecy-set user, or one per user")->capture_default_str();
  resolve->add_option("--n", o.blocklengths, "Blocklengths")->capture_default_str();
  resolve->add_option("--trials", o.trials, "Codebook draws per blocklength")->default_val(200);
  resolve->add_option("--leak-secret", o.leak_secret, "Secret rate for the leakage runs")->capture_default_str();
  resolve->add_option("--leak-open", o.leak_open, "Open rate for the leakage runs")->capture_default_str();
  resolve->add_option("--leak-aux", o.leak_aux, "Auxiliary rate for the leakage runs")->capture_default_str();
  resolve->add_option("--leak-trials", o.leak_trials, "Codebook draws per leakage point")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  CLI::App* sub = app.get_subcommands().front();
  json manifest = {{"subcommand", sub->get_name()}, {"out", o.out}, {"seed", o.seed}, {"tol", o.tol}};
  json args = json::object();
  for (const CLI::Option* opt : sub->get_options()) {
    if (opt->get_name() == "--help" || opt->count() == 0) continue;
    args[opt->get_name()] = opt->results();
  }
  manifest["arguments"] = args;
  if (sub == adder) manifest["delta"] = o.delta;
  if (!o.channel.empty()) manifest["inputs"] = {o.channel};

  int code = kOk;
  try {
    fs::create_directories(o.out);
    if (sub == region) code = cmd_region(o, manifest);
    if (sub == projection) code = cmd_verify_projection(o, manifest);
    if (sub == adder) code = cmd_adder(o, manifest);
    if (sub == resolve) code = cmd_resolve(o, manifest);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    manifest["error"] = e.what();
    code = kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    manifest["error"] = e.what();
    code = kVerifyFailed;
  }
  manifest["exit_code"] = code;
  try {
    write_json(fs::path(o.out) / "run.json", manifest);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (code == kOk) code = kUsage;
  }
  return code;
}
