// rankagg: weighted Kendall distances and rank aggregation from the command line.
//
//   rankagg distance --weights 1,0,0,0 1,2,3,4,5 2,1,3,4,5
//   rankagg aggregate --votes data/table1.txt --layout matrix --weights 1,1,1,1 --method opt
//   rankagg compare --votes data/table1.txt --layout matrix --weights topk:2
//   rankagg repro-table1
//
// Exit status: 0 success, 1 validation/usage error, 2 reproduction mismatch.

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rankagg/rankagg.hpp"

namespace {

using namespace rankagg;

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitMismatch = 2;

struct Options {
  std::string votes_path;
  std::string layout = "rows";
  std::string weights = "uniform";
  std::string method = "bmls";
  std::string space = "ranks";
  std::string format = "table";
  std::string metric = "weighted-kendall";
  int exact_cap = kDefaultExactCap;
  std::vector<std::string> rankings;
};

const std::vector<std::string> kMethods = {"opt", "matching", "bmls", "mc", "mc1", "mc2", "mc3",
                                           "best-input", "plurality", "borda", "all"};

VoteProfile load_votes(const Options& opt) {
  std::ifstream in(opt.votes_path);
  if (!in) throw Error(ErrorCode::parse_error, "cannot open vote file '" + opt.votes_path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_votes(buf.str(), opt.layout == "matrix" ? VoteLayout::matrix : VoteLayout::rows);
}

VoteProfile inverted(const VoteProfile& profile) {
  std::vector<Ranking> votes;
  for (const Ranking& v : profile.votes()) votes.push_back(invert(v));
  return VoteProfile(std::move(votes));
}

AggregationResult run_method(const std::string& method, const VoteProfile& profile, const WeightVector& w,
                             int exact_cap) {
  const Metric metric = Metric::weighted_kendall(w, exact_cap);
  if (method == "opt") return exhaustive_opt(profile, metric);
  if (method == "matching") return aggregate_matching(profile, w, exact_cap);
  if (method == "bmls") return bmls(profile, w, std::nullopt, exact_cap);
  if (method == "mc") return mc_aggregate(profile, w, ChainKind::weighted, exact_cap);
  if (method == "mc1") return mc_aggregate(profile, w, ChainKind::case1, exact_cap);
  if (method == "mc2") return mc_aggregate(profile, w, ChainKind::case2, exact_cap);
  if (method == "mc3") return mc_aggregate(profile, w, ChainKind::case3, exact_cap);
  if (method == "best-input") return best_input_vote(profile, metric);
  if (method == "plurality") return scored("plurality", plurality(profile), profile, metric);
  if (method == "borda") return scored("borda", borda(profile), profile, metric);
  throw Error(ErrorCode::parse_error, "unknown method '" + method + "'");
}

/// Element-space aggregation: weights attach to candidates, so every
/// method runs on the inverted votes and the winner is inverted back. The
/// objective is unchanged by the double inversion.
AggregationResult run_in_space(const std::string& method, const VoteProfile& profile, const WeightVector& w,
                               const Options& opt) {
  if (opt.space == "ranks") return run_method(method, profile, w, opt.exact_cap);
  if (method == "plurality" || method == "borda") {
    const Metric metric = element_space(Metric::weighted_kendall(w, opt.exact_cap));
    return scored(method, method == "plurality" ? plurality(profile) : borda(profile), profile, metric);
  }
  AggregationResult result = run_method(method, inverted(profile), w, opt.exact_cap);
  result.ranking = invert(result.ranking);
  result.diagnostics.objective_metric += "[elements]";
  return result;
}

std::vector<std::string> applicable_methods(const VoteProfile& profile, int exact_cap) {
  std::vector<std::string> methods;
  for (const auto& m : kMethods) {
    if (m == "all") continue;
    if (m == "opt" && (profile.candidates() > kDefaultOptCap || profile.candidates() > exact_cap)) continue;
    methods.push_back(m);
  }
  return methods;
}

void emit(const RunReport& report, const Options& opt) {
  if (opt.format == "json") {
    std::cout << to_json(report).dump(2) << '\n';
  } else {
    std::cout << "candidates " << report.candidates << ", voters " << report.voters << ", weights [";
    for (std::size_t k = 0; k < report.weights.size(); ++k) std::cout << (k ? "," : "") << report.weights[k];
    std::cout << "]\n" << format_table(report);
  }
}

int cmd_aggregate(const Options& opt, bool compare) {
  const VoteProfile profile = load_votes(opt);
  const WeightVector w = expand_weights(parse_weight_spec(opt.weights), profile.candidates());
  RunReport report{profile.candidates(), profile.voters(), {w.values().begin(), w.values().end()}, {}};
  if (compare || opt.method == "all") {
    for (const auto& m : applicable_methods(profile, opt.exact_cap)) report.results.push_back(run_in_space(m, profile, w, opt));
  } else {
    report.results.push_back(run_in_space(opt.method, profile, w, opt));
  }
  emit(report, opt);
  return kExitOk;
}

int cmd_distance(const Options& opt) {
  if (opt.rankings.size() != 2) throw Error(ErrorCode::parse_error, "distance needs exactly two rankings");
  const Ranking p = parse_ranking(opt.rankings[0]);
  const Ranking s = parse_ranking(opt.rankings[1]);
  require_same_size(p, s);
  const int n = p.size();

  Metric metric = Metric::kendall_tau(n);
  if (opt.metric == "weighted-kendall" || opt.metric == "generalized-footrule") {
    const WeightVector w = expand_weights(parse_weight_spec(opt.weights), n);
    metric = Metric::weighted_kendall(w, opt.exact_cap);
    if (opt.metric == "generalized-footrule") metric = metric.surrogate();
  } else if (opt.metric == "footrule") {
    metric = Metric::footrule(n);
  }
  if (opt.space == "elements") metric = element_space(metric);
  const Metric eval = metric.evaluable_or_surrogate();
  const double d = eval(p, s);

  if (opt.format == "json") {
    Json out = Json::object();
    out["metric"] = eval.name();
    out["distance"] = d;
    out["exact"] = eval.exact();
    std::cout << out.dump(2) << '\n';
  } else {
    std::cout << d << (eval.exact() ? "" : " (bound)") << '\n';
  }
  return kExitOk;
}

int cmd_repro_table1(const Options& opt) {
  const VoteProfile profile = table1::profile();
  struct Cell {
    std::string method;
    std::vector<double> weights;
    AggregationResult result;
    double expected;
    bool ok;
  };
  std::vector<Cell> cells;
  for (const auto& column : table1::kColumns) {
    const WeightVector w = table1::weights(column);
    const std::vector<std::pair<std::string, double>> expected = {
        {"opt", column.opt}, {"bmls", column.bmls}, {"mc", column.mc}};
    for (const auto& [method, value] : expected) {
      AggregationResult r = run_method(method, profile, w, opt.exact_cap);
      const bool ok = std::abs(r.average - value) <= table1::kAverageTolerance;
      cells.push_back({method, {w.values().begin(), w.values().end()}, std::move(r), value, ok});
    }
  }

  bool all_ok = true;
  for (const auto& c : cells) all_ok = all_ok && c.ok;
  if (opt.format == "json") {
    Json out = Json::array();
    for (const auto& c : cells) {
      Json cell = to_json(c.result);
      cell["weights"] = c.weights;
      cell["expected_average"] = c.expected;
      cell["ok"] = c.ok;
      out.push_back(std::move(cell));
    }
    std::cout << out.dump(2) << '\n';
  } else {
    std::cout << "weights     method  ranking      average  expected  status\n";
    for (const auto& c : cells) {
      std::string w = "[";
      for (std::size_t k = 0; k < c.weights.size(); ++k) w += (k ? "," : "") + std::to_string(static_cast<int>(c.weights[k]));
      w += "]";
      std::cout << w << std::string(12 - w.size(), ' ') << c.method << std::string(8 - c.method.size(), ' ')
                << c.result.ranking.to_string() << "  " << format_decimal(c.result.average) << "   "
                << format_decimal(c.expected) << "    " << (c.ok ? "ok" : "MISMATCH") << '\n';
    }
  }
  if (!all_ok) {
    std::cerr << "error: reproduction-mismatch: at least one average differs from the published value\n";
    return kExitMismatch;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weighted Kendall distances and rank aggregation"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--weights", opt.weights,
                    "uniform | arithmetic (w_i=n-i) | geometric:C (w_i=C^(i-1), so w_1=1) | topk:K | w1,w2,...")
        ->capture_default_str();
    sub->add_option("--space", opt.space, "apply weights to ranks or to elements")
        ->check(CLI::IsMember({"ranks", "elements"}))
        ->capture_default_str();
    sub->add_option("--format", opt.format, "output format")
        ->check(CLI::IsMember({"json", "table"}))
        ->capture_default_str();
    sub->add_option("--exact-cap", opt.exact_cap, "largest n for exact distance search")
        ->check(CLI::Range(1, 10))
        ->capture_default_str();
  };
  auto add_votes = [&](CLI::App* sub) {
    sub->add_option("--votes", opt.votes_path, "vote file")->required()->check(CLI::ExistingFile);
    sub->add_option("--layout", opt.layout, "rows: one vote per line; matrix: one vote per column")
        ->check(CLI::IsMember({"rows", "matrix"}))
        ->capture_default_str();
  };

  auto* distance = app.add_subcommand("distance", "distance between two rankings");
  add_common(distance);
  distance->add_option("--metric", opt.metric, "distance to evaluate")
      ->check(CLI::IsMember({"weighted-kendall", "generalized-footrule", "kendall", "footrule"}))
      ->capture_default_str();
  distance->add_option("rankings", opt.rankings, "two rankings, e.g. 1,2,3 3,2,1")->expected(2)->required();

  auto* aggregate = app.add_subcommand("aggregate", "aggregate a vote profile with one method");
  add_common(aggregate);
  add_votes(aggregate);
  aggregate->add_option("--method", opt.method, "aggregation method")
      ->check(CLI::IsMember(kMethods))
      ->capture_default_str();

  auto* compare = app.add_subcommand("compare", "run every applicable method and tabulate the results");
  add_common(compare);
  add_votes(compare);

  auto* repro = app.add_subcommand("repro-table1", "reproduce the 11-vote comparison and check its averages");
  repro->add_option("--format", opt.format, "output format")->check(CLI::IsMember({"json", "table"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::string what = e.what();
    for (char& ch : what)
      if (ch == '\n') ch = ' ';
    std::cerr << "error: usage: " << what << '\n';
    return kExitInvalid;
  }

  try {
    if (*distance) return cmd_distance(opt);
    if (*aggregate) return cmd_aggregate(opt, false);
    if (*compare) return cmd_aggregate(opt, true);
    if (*repro) return cmd_repro_table1(opt);
  } catch (const Error& e) {
    std::cerr << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << e.what() << '\n';
    return kExitInvalid;
  }
  return kExitInvalid;
}
