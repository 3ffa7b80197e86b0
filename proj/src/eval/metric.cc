// Copyright 2026 The MxT Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mxt/eval/metric.h"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "mxt/common/error.h"
#include "mxt/common/io.h"

namespace mxt {
namespace {

struct Term {
  std::string env_id;
  uint64_t seed;
  double normalized;
};

MetricResult Aggregate(const std::vector<Term>& terms) {
  MetricResult result;
  std::vector<std::string> env_order;
  // env -> seed -> summed goal terms; seeds keep first-appearance order.
  std::map<std::string, std::vector<std::pair<uint64_t, double>>> episodes;
  for (const Term& t : terms) {
    auto [it, fresh] = episodes.try_emplace(t.env_id);
    if (fresh) env_order.push_back(t.env_id);
    auto& eps = it->second;
    auto ep = std::find_if(eps.begin(), eps.end(),
                           [&](const auto& e) { return e.first == t.seed; });
    if (ep == eps.end()) {
      eps.push_back({t.seed, t.normalized});
    } else {
      ep->second += t.normalized;
    }
  }
  std::vector<std::string> sub_order;
  std::map<std::string, std::pair<double, int>> subs;
  for (const std::string& env : env_order) {
    const auto& eps = episodes[env];
    double sum = 0.0;
    for (const auto& e : eps) sum += e.second;
    EnvScore score{env, sum / eps.size(), static_cast<int>(eps.size())};
    result.per_env.push_back(score);
    result.episodes += score.episodes;
    result.mean += score.normalized;
    auto [it, fresh] = subs.try_emplace(SubDomain(env), 0.0, 0);
    if (fresh) sub_order.push_back(it->first);
    it->second.first += score.normalized;
    it->second.second += 1;
  }
  if (!result.per_env.empty()) result.mean /= result.per_env.size();
  for (const std::string& s : sub_order) {
    result.subdomain_mean += subs[s].first / subs[s].second;
  }
  if (!sub_order.empty()) result.subdomain_mean /= sub_order.size();
  return result;
}

}  // namespace

double NormalizedDistance(double d, double d_min, double d_max) {
  if (!(d_min < d_max)) {
    throw Error(ErrorKind::kConfig, "d_min " + FormatReal(d_min) +
                                        " is not below d_max " + FormatReal(d_max));
  }
  return (d - d_min) / (d_max - d_min);
}

std::vector<GoalOutcome> Outcomes(const Trajectory& trajectory, const TaskSpec& task) {
  const std::vector<double>& d = trajectory.FinalDistances();
  if (static_cast<int>(d.size()) != task.GoalCount()) {
    throw Error(ErrorKind::kShape, "trajectory goal count does not match its task");
  }
  std::vector<GoalOutcome> out;
  for (int i = 0; i < task.GoalCount(); ++i) {
    out.push_back({trajectory.env_id, i, trajectory.seed, d[i], task.d_min[i],
                   task.d_max[i]});
  }
  return out;
}

MetricResult NormalizedFinalDistance(std::span<const GoalOutcome> outcomes) {
  std::vector<Term> terms;
  terms.reserve(outcomes.size());
  for (const GoalOutcome& o : outcomes) {
    terms.push_back({o.env_id, o.seed, NormalizedDistance(o.final_distance, o.d_min, o.d_max)});
  }
  MetricResult result = Aggregate(terms);
  result.outcomes.assign(outcomes.begin(), outcomes.end());
  return result;
}

double PercentageImprovement(double d1, double d2) {
  if (!(d1 < d2) || !(d2 > 0.0)) {
    throw Error(ErrorKind::kOrdering, "improvement needs d1 < d2 and d2 > 0, got " +
                                          FormatReal(d1) + " and " + FormatReal(d2));
  }
  return 100.0 * (d2 - d1) / d2;
}

std::string SubDomain(std::string_view env_id) {
  std::vector<std::string> parts = SplitString(env_id, '_');
  std::string out;
  for (const std::string& p : parts) {
    if (!p.empty() && std::all_of(p.begin(), p.end(),
                                  [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      break;
    }
    if (!out.empty()) out += "_";
    out += p;
  }
  return out;
}

std::string MetricCsv(const MetricResult& result) {
  std::ostringstream out;
  out << "env_id,goal_index,seed,final_distance,normalized\n";
  for (const GoalOutcome& o : result.outcomes) {
    out << o.env_id << "," << o.goal_index << "," << o.seed << ","
        << FormatReal(o.final_distance) << ","
        << FormatReal(NormalizedDistance(o.final_distance, o.d_min, o.d_max)) << "\n";
  }
  return out.str();
}

MetricResult ParseMetricCsv(std::string_view text) {
  std::vector<std::string> lines = SplitString(text, '\n');
  if (lines.empty() || Trim(lines[0]) != "env_id,goal_index,seed,final_distance,normalized") {
    throw Error(ErrorKind::kParse, "metric report has an unexpected header");
  }
  std::vector<Term> terms;
  for (size_t i = 1; i < lines.size(); ++i) {
    std::string_view line = Trim(lines[i]);
    if (line.empty()) continue;
    std::vector<std::string> f = SplitString(line, ',');
    if (f.size() != 5) {
      throw Error(ErrorKind::kParse, "metric report line " + std::to_string(i + 1) +
                                         " has " + std::to_string(f.size()) + " fields");
    }
    uint64_t seed = 0;
    try {
      seed = std::stoull(f[2]);
    } catch (const std::exception&) {
      throw Error(ErrorKind::kParse, "bad seed '" + f[2] + "'");
    }
    terms.push_back({f[0], seed, ParseReal(f[4])});
  }
  return Aggregate(terms);
}

std::string MetricSummary(const MetricResult& result) {
  std::ostringstream out;
  out << "mean_normalized_distance=" << FormatReal(result.mean) << "\n"
      << "subdomain_mean_normalized_distance=" << FormatReal(result.subdomain_mean) << "\n"
      << "episodes=" << result.episodes << "\n";
  for (const EnvScore& e : result.per_env) {
    out << "env." << e.env_id << "=" << FormatReal(e.normalized) << "\n";
  }
  return out.str();
}

}  // namespace mxt
