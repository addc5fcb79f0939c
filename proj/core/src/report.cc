// Copyright 2026 The GIDN Authors.
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

#include <json.hpp>

#include "gidn/error.h"
#include "gidn/trainer.h"

namespace gidn {

void Aggregate(EvalReport* report) {
  report->aggregate.clear();
  if (report->runs.empty()) ThrowUsage("report has no runs");
  const auto collect = [&](auto&& get) {
    std::vector<double> values;
    for (const RunMetrics& r : report->runs) values.push_back(get(r));
    return Summarize(values);
  };
  for (std::size_t k : report->hits_k) {
    report->aggregate.emplace_back(
        "hits@" + std::to_string(k),
        collect([k](const RunMetrics& r) { return r.test.hits.at(k); }));
  }
  report->aggregate.emplace_back(
      "mrr", collect([](const RunMetrics& r) { return r.test.mrr; }));
  report->aggregate.emplace_back(
      "auc", collect([](const RunMetrics& r) { return r.test.auc; }));
}

std::string ReportToJson(const EvalReport& report) {
  using nlohmann::ordered_json;
  ordered_json root;
  root["config_hash"] = report.config_hash;
  ordered_json per_run = ordered_json::array();
  for (const RunMetrics& r : report.runs) {
    ordered_json run;
    run["seed"] = r.seed;
    ordered_json hits = ordered_json::object();
    for (std::size_t k : report.hits_k) {
      hits[std::to_string(k)] = r.test.hits.at(k);
    }
    run["hits"] = std::move(hits);
    run["mrr"] = r.test.mrr;
    run["auc"] = r.test.auc;
    run["best_epoch"] = r.best_epoch;
    per_run.push_back(std::move(run));
  }
  root["per_run"] = std::move(per_run);
  ordered_json aggregate = ordered_json::object();
  for (const auto& [name, summary] : report.aggregate) {
    aggregate[name] = {{"mean", summary.mean},
                       {"std", summary.std},
                       {"n", summary.n}};
  }
  root["aggregate"] = std::move(aggregate);
  root["runtime_s"] =
      report.runtime_s ? ordered_json(*report.runtime_s) : ordered_json();
  return root.dump(2) + "\n";
}

}  // namespace gidn
