// Copyright 2026 The EdgeGAE Authors
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

#ifndef EDGEGAE_METRICS_HPP_
#define EDGEGAE_METRICS_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "edgegae/model.hpp"
#include "edgegae/search.hpp"
#include "edgegae/tsp.hpp"

namespace edgegae {

struct Confusion {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  std::size_t tn = 0;
};

/// Predictions are positive when p >= threshold.
Confusion confusion(std::span<const double> probs,
                    std::span<const double> labels, double threshold = 0.5);

/// TP / (TP + (FP + FN) / 2), or 0 when that denominator is 0.
double f1_from(const Confusion& c) noexcept;

/// Throws std::invalid_argument on length mismatch.
double f1_score(std::span<const double> probs, std::span<const double> labels,
                double threshold = 0.5);

/// Mann-Whitney rank statistic with average ranks for ties. Throws
/// UndefinedMetricError unless both classes are present.
double roc_auc(std::span<const double> probs, std::span<const double> labels);

/// 100 * (predicted - oracle) / oracle. Throws std::invalid_argument when
/// oracle_length <= 0.
double optimal_gap(double predicted_length, double oracle_length);

struct EvalRecord {
  std::uint64_t id = 0;
  int n = 0;
  double f1 = 0.0;
  std::optional<double> auc;  // empty when undefined
  double predicted_length = 0.0;
  double oracle_length = 0.0;
  double gap_percent = 0.0;
  Confusion counts;
  Order tour;
};

struct Aggregate {
  int n = 0;  // 0 for the overall row
  std::size_t count = 0;
  double mean_f1 = 0.0;
  double std_f1 = 0.0;
  double pooled_f1 = 0.0;  // from summed confusion counts
  double mean_auc = 0.0;
  double std_auc = 0.0;
  std::size_t auc_count = 0;
  double mean_gap = 0.0;
  double std_gap = 0.0;
};

struct EvalReport {
  std::vector<EvalRecord> records;
  std::vector<Aggregate> by_size;
  Aggregate overall;
};

/// Builds one record from a prediction and the instance's oracle tour.
EvalRecord make_record(const Instance& instance, const Heatmap& heatmap,
                       const SparseGraph& labelled, const Tour& predicted,
                       double f1_threshold = 0.5);

/// Per-size and overall aggregates, records ordered by id.
EvalReport summarize(std::vector<EvalRecord> records);

struct EvalOptions {
  unsigned threads = 1;
  double f1_threshold = 0.5;
  /// Graph degree the caller expects; must match the model when set.
  std::optional<int> knn;
};

/// Eval-mode heatmap, classification metrics against the oracle labels, then
/// search and gap, for every instance. The search seed for an instance is
/// derive_seed(search.seed, id). Output does not depend on options.threads.
EvalReport evaluate(const EdgeGae& model, const std::vector<Instance>& dataset,
                    const SearchConfig& search, const EvalOptions& options = {});

/// Header line, one row per record, then `# aggregate` rows.
void write_report_csv(std::ostream& out, const EvalReport& report);
void write_report_csv(const std::filesystem::path& path,
                      const EvalReport& report);

}  // namespace edgegae

#endif  // EDGEGAE_METRICS_HPP_
