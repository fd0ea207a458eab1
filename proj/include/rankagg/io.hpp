#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "rankagg/error.hpp"
#include "rankagg/ranking.hpp"
#include "rankagg/result.hpp"
#include "rankagg/weights.hpp"

namespace rankagg {

/// rows: one vote per line, best rank first.
/// matrix: line r lists the candidates at rank r, one column per vote.
enum class VoteLayout { rows, matrix };

namespace detail {

struct Token {
  long long value;
  int column;  // 1-based token index within the line
};

inline Error parse_failure(const std::string& kind, int line, int column, const std::string& what) {
  return Error(ErrorCode::parse_error,
               kind + " at line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what);
}

/// Splits one line on commas/whitespace after dropping a `#` comment.
inline std::vector<Token> tokenize(std::string_view line, int line_no) {
  if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
  std::vector<Token> out;
  std::size_t i = 0;
  int column = 0;
  while (i < line.size()) {
    const char ch = line[i];
    if (ch == ',' || std::isspace(static_cast<unsigned char>(ch))) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < line.size() && line[j] != ',' && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    ++column;
    const std::string_view text = line.substr(i, j - i);
    long long value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || value < 1) {
      throw parse_failure("invalid-integer", line_no, column, "'" + std::string(text) + "' is not a positive integer");
    }
    out.push_back({value, column});
    i = j;
  }
  return out;
}

struct NumberedLine {
  int line_no;
  std::vector<Token> tokens;
};

inline std::vector<NumberedLine> tokenize_lines(std::string_view text) {
  std::vector<NumberedLine> lines;
  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    auto tokens = tokenize(line, line_no);
    if (!tokens.empty()) lines.push_back({line_no, std::move(tokens)});
    start = end + 1;
  }
  return lines;
}

/// Validates one vote; `where(k)` gives the (line, column) of entry k.
template <class Where>
Ranking checked_vote(const std::vector<long long>& ids, Where where) {
  const auto n = static_cast<long long>(ids.size());
  std::vector<char> seen(ids.size(), 0);
  for (std::size_t k = 0; k < ids.size(); ++k) {
    const auto [line, column] = where(k);
    if (ids[k] > n) {
      throw parse_failure("candidate-out-of-range", line, column,
                          "candidate " + std::to_string(ids[k]) + " outside 1.." + std::to_string(n));
    }
    if (seen[ids[k] - 1]) {
      throw parse_failure("duplicate-candidate", line, column, "candidate " + std::to_string(ids[k]) + " repeated");
    }
    seen[ids[k] - 1] = 1;
  }
  return Ranking(std::vector<Candidate>(ids.begin(), ids.end()));
}

}  // namespace detail

inline VoteProfile parse_votes(std::string_view text, VoteLayout layout = VoteLayout::rows) {
  const auto lines = detail::tokenize_lines(text);
  if (lines.empty()) throw Error(ErrorCode::parse_error, "empty-input at line 1, column 1: no votes found");
  const std::size_t width = lines.front().tokens.size();
  for (const auto& line : lines) {
    if (line.tokens.size() != width) {
      throw detail::parse_failure("ragged-row", line.line_no, static_cast<int>(std::min(width, line.tokens.size())) + 1,
                                  "expected " + std::to_string(width) + " entries, found " +
                                      std::to_string(line.tokens.size()));
    }
  }

  std::vector<Ranking> votes;
  if (layout == VoteLayout::rows) {
    for (const auto& line : lines) {
      std::vector<long long> ids;
      for (const auto& t : line.tokens) ids.push_back(t.value);
      votes.push_back(detail::checked_vote(ids, [&](std::size_t k) {
        return std::pair{line.line_no, line.tokens[k].column};
      }));
    }
  } else {
    for (std::size_t col = 0; col < width; ++col) {
      std::vector<long long> ids;
      for (const auto& line : lines) ids.push_back(line.tokens[col].value);
      votes.push_back(detail::checked_vote(ids, [&](std::size_t k) {
        return std::pair{lines[k].line_no, lines[k].tokens[col].column};
      }));
    }
  }
  return VoteProfile(std::move(votes));
}

inline std::string serialize_votes(const VoteProfile& profile, VoteLayout layout = VoteLayout::rows) {
  std::string out;
  if (layout == VoteLayout::rows) {
    for (const Ranking& vote : profile.votes()) {
      for (Rank k = 1; k <= vote.size(); ++k) {
        if (k > 1) out += ',';
        out += std::to_string(vote.at(k));
      }
      out += '\n';
    }
  } else {
    for (Rank k = 1; k <= profile.candidates(); ++k) {
      for (int l = 0; l < profile.voters(); ++l) {
        if (l) out += ' ';
        out += std::to_string(profile.vote(static_cast<std::size_t>(l)).at(k));
      }
      out += '\n';
    }
  }
  return out;
}

/// How to build a weight vector for a given number of candidates.
struct WeightSpec {
  enum class Kind { explicit_list, uniform, arithmetic, geometric, topk };
  Kind kind = Kind::uniform;
  std::vector<double> values;  // explicit_list only
  double ratio = 0.0;          // geometric only
  int k = 0;                   // topk only
};

namespace detail {

inline double parse_number(std::string_view text) {
  const auto slash = text.find('/');
  if (slash != std::string_view::npos) return parse_number(text.substr(0, slash)) / parse_number(text.substr(slash + 1));
  std::string owned(text);
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(owned, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (owned.empty() || used != owned.size()) {
    throw Error(ErrorCode::invalid_weights, "'" + owned + "' is not a number");
  }
  return value;
}

}  // namespace detail

/// Accepts "uniform", "arithmetic", "geometric:C", "topk:K", or an explicit
/// comma-separated list such as "1,1,0,0". C may be a fraction ("3/4").
inline WeightSpec parse_weight_spec(std::string_view text) {
  WeightSpec spec;
  const auto colon = text.find(':');
  const std::string_view head = text.substr(0, colon);
  const std::string_view arg = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
  if (head == "uniform") {
    spec.kind = WeightSpec::Kind::uniform;
  } else if (head == "arithmetic") {
    spec.kind = WeightSpec::Kind::arithmetic;
  } else if (head == "geometric") {
    spec.kind = WeightSpec::Kind::geometric;
    spec.ratio = detail::parse_number(arg);
    if (!(spec.ratio >= 0.0 && spec.ratio < 1.0)) throw Error(ErrorCode::invalid_weights, "geometric ratio must satisfy 0 <= c < 1");
  } else if (head == "topk") {
    spec.kind = WeightSpec::Kind::topk;
    const double k = detail::parse_number(arg);
    if (k != std::floor(k) || k < 1) throw Error(ErrorCode::invalid_weights, "topk needs a positive integer k");
    spec.k = static_cast<int>(k);
  } else {
    spec.kind = WeightSpec::Kind::explicit_list;
    std::size_t start = 0;
    while (start <= text.size()) {
      std::size_t end = text.find(',', start);
      if (end == std::string_view::npos) end = text.size();
      std::string_view item = text.substr(start, end - start);
      while (!item.empty() && std::isspace(static_cast<unsigned char>(item.front()))) item.remove_prefix(1);
      while (!item.empty() && std::isspace(static_cast<unsigned char>(item.back()))) item.remove_suffix(1);
      spec.values.push_back(detail::parse_number(item));
      start = end + 1;
    }
  }
  return spec;
}

/// Geometric weights follow w_i = c^(i-1), so w_1 = 1.
inline WeightVector expand_weights(const WeightSpec& spec, int n) {
  if (n < 2) throw Error(ErrorCode::invalid_size, "weights need at least two candidates");
  std::vector<double> w(static_cast<std::size_t>(n - 1), 0.0);
  switch (spec.kind) {
    case WeightSpec::Kind::explicit_list:
      if (static_cast<int>(spec.values.size()) != n - 1) {
        throw Error(ErrorCode::invalid_weights, "explicit weights need " + std::to_string(n - 1) + " entries, got " +
                                                    std::to_string(spec.values.size()));
      }
      w = spec.values;
      break;
    case WeightSpec::Kind::uniform:
      std::fill(w.begin(), w.end(), 1.0);
      break;
    case WeightSpec::Kind::arithmetic:
      for (int i = 1; i < n; ++i) w[i - 1] = n - i;
      break;
    case WeightSpec::Kind::geometric:
      if (!(spec.ratio >= 0.0 && spec.ratio < 1.0)) throw Error(ErrorCode::invalid_weights, "geometric ratio must satisfy 0 <= c < 1");
      for (int i = 1; i < n; ++i) w[i - 1] = std::pow(spec.ratio, i - 1);
      break;
    case WeightSpec::Kind::topk:
      if (spec.k < 1 || spec.k >= n) throw Error(ErrorCode::invalid_weights, "topk needs 1 <= k < n");
      w[spec.k - 1] = 1.0;
      break;
  }
  return WeightVector(std::move(w));
}

inline Ranking parse_ranking(std::string_view text) {
  const auto lines = detail::tokenize_lines(text);
  if (lines.size() != 1) throw Error(ErrorCode::parse_error, "ranking must be a single line of candidate ids");
  std::vector<long long> ids;
  for (const auto& t : lines.front().tokens) ids.push_back(t.value);
  return detail::checked_vote(ids, [&](std::size_t k) { return std::pair{1, lines.front().tokens[k].column}; });
}

using Json = nlohmann::ordered_json;

inline Json to_json(const Ranking& r) { return Json(std::vector<int>(r.seq().begin(), r.seq().end())); }

inline Json to_json(const AggregationResult& result) {
  Json diagnostics = Json::object();
  diagnostics["objective_metric"] = result.diagnostics.objective_metric;
  diagnostics["bound"] = result.diagnostics.surrogate_objective;
  if (!result.diagnostics.objective_trace.empty()) {
    diagnostics["objective_trace"] = result.diagnostics.objective_trace;
    diagnostics["swaps"] = result.diagnostics.swaps;
  }
  if (!result.diagnostics.chain_rounds.empty()) {
    Json rounds = Json::array();
    for (const ChainRound& round : result.diagnostics.chain_rounds) {
      rounds.push_back(Json{{"candidates", round.candidates},
                            {"stationary", round.stationary},
                            {"absorbing", round.absorbing}});
    }
    diagnostics["chain_rounds"] = std::move(rounds);
  }
  if (!result.diagnostics.note.empty()) diagnostics["note"] = result.diagnostics.note;

  Json out = Json::object();
  out["method"] = result.method;
  out["ranking"] = to_json(result.ranking);
  out["cumulative"] = result.cumulative;
  out["average"] = result.average;
  out["exact"] = result.exact;
  out["diagnostics"] = std::move(diagnostics);
  return out;
}

/// Everything one CLI invocation produced.
struct RunReport {
  int candidates = 0;
  int voters = 0;
  std::vector<double> weights;
  std::vector<AggregationResult> results;
};

inline Json to_json(const RunReport& report) {
  Json results = Json::array();
  for (const auto& r : report.results) results.push_back(to_json(r));
  Json out = Json::object();
  out["candidates"] = report.candidates;
  out["voters"] = report.voters;
  out["weights"] = report.weights;
  out["results"] = std::move(results);
  return out;
}

inline std::string format_decimal(double value, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, value);
  return buf;
}

/// Aligned text table: method, ranking, average and cumulative distance.
inline std::string format_table(const RunReport& report) {
  std::vector<std::array<std::string, 4>> rows;
  rows.push_back({"method", "ranking", "average", "cumulative"});
  for (const auto& r : report.results) {
    std::string avg = format_decimal(r.average);
    if (!r.exact) avg += " (bound)";
    rows.push_back({r.method, r.ranking.to_string(), avg, format_decimal(r.cumulative)});
  }
  std::array<std::size_t, 4> width{};
  for (const auto& row : rows)
    for (std::size_t c = 0; c < 4; ++c) width[c] = std::max(width[c], row[c].size());
  std::ostringstream out;
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < 4; ++c) {
      out << row[c];
      if (c + 1 < 4) out << std::string(width[c] - row[c].size() + 2, ' ');
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace rankagg
