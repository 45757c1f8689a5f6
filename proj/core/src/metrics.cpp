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

#include "edgegae/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "edgegae/errors.hpp"
#include "edgegae/io.hpp"
#include "edgegae/parallel.hpp"
#include "edgegae/rng.hpp"

namespace edgegae {
namespace {

// Flag gaps more negative than this; only a heuristic oracle can be beaten.
constexpr double kGapNoise = -1e-9;

void check_lengths(std::span<const double> probs,
                   std::span<const double> labels) {
  if (probs.size() != labels.size()) {
    throw std::invalid_argument(std::to_string(probs.size()) +
                                " predictions vs " +
                                std::to_string(labels.size()) + " labels");
  }
}

struct Moments {
  double mean = 0.0;
  double stddev = 0.0;
};

// Sample standard deviation; 0 for fewer than two values.
Moments moments(const std::vector<double>& values) {
  Moments m;
  if (values.empty()) return m;
  m.mean = std::accumulate(values.begin(), values.end(), 0.0) /
           static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - m.mean) * (v - m.mean);
    m.stddev = std::sqrt(ss / static_cast<double>(values.size() - 1));
  }
  return m;
}

Aggregate aggregate(int n, const std::vector<const EvalRecord*>& records) {
  Aggregate a;
  a.n = n;
  a.count = records.size();
  std::vector<double> f1;
  std::vector<double> auc;
  std::vector<double> gap;
  Confusion pooled;
  for (const EvalRecord* r : records) {
    f1.push_back(r->f1);
    if (r->auc) auc.push_back(*r->auc);
    gap.push_back(r->gap_percent);
    pooled.tp += r->counts.tp;
    pooled.fp += r->counts.fp;
    pooled.fn += r->counts.fn;
    pooled.tn += r->counts.tn;
  }
  const auto mf = moments(f1);
  const auto ma = moments(auc);
  const auto mg = moments(gap);
  a.mean_f1 = mf.mean;
  a.std_f1 = mf.stddev;
  a.pooled_f1 = f1_from(pooled);
  a.mean_auc = ma.mean;
  a.std_auc = ma.stddev;
  a.auc_count = auc.size();
  a.mean_gap = mg.mean;
  a.std_gap = mg.stddev;
  return a;
}

}  // namespace

Confusion confusion(std::span<const double> probs,
                    std::span<const double> labels, double threshold) {
  check_lengths(probs, labels);
  Confusion c;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    const bool predicted = probs[i] >= threshold;
    const bool actual = labels[i] > 0.5;
    if (predicted && actual) ++c.tp;
    else if (predicted) ++c.fp;
    else if (actual) ++c.fn;
    else ++c.tn;
  }
  return c;
}

double f1_from(const Confusion& c) noexcept {
  const double denom = static_cast<double>(c.tp) +
                       0.5 * static_cast<double>(c.fp + c.fn);
  return denom == 0.0 ? 0.0 : static_cast<double>(c.tp) / denom;
}

double f1_score(std::span<const double> probs, std::span<const double> labels,
                double threshold) {
  return f1_from(confusion(probs, labels, threshold));
}

double roc_auc(std::span<const double> probs, std::span<const double> labels) {
  check_lengths(probs, labels);
  std::vector<std::size_t> order(probs.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return probs[a] < probs[b]; });
  double positive_rank_sum = 0.0;
  std::size_t positives = 0;
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j < order.size() && probs[order[j]] == probs[order[i]]) ++j;
    // Ranks i+1..j share their average.
    const double rank = 0.5 * static_cast<double>(i + 1 + j);
    for (std::size_t k = i; k < j; ++k) {
      if (labels[order[k]] > 0.5) {
        positive_rank_sum += rank;
        ++positives;
      }
    }
    i = j;
  }
  const std::size_t negatives = probs.size() - positives;
  if (positives == 0 || negatives == 0) {
    throw UndefinedMetricError("ROC AUC needs both positive and negative labels");
  }
  const double p = static_cast<double>(positives);
  return (positive_rank_sum - p * (p + 1.0) / 2.0) /
         (p * static_cast<double>(negatives));
}

double optimal_gap(double predicted_length, double oracle_length) {
  if (!(oracle_length > 0.0)) {
    throw std::invalid_argument("oracle length must be positive");
  }
  return 100.0 * (predicted_length - oracle_length) / oracle_length;
}

EvalRecord make_record(const Instance& instance, const Heatmap& heatmap,
                       const SparseGraph& labelled, const Tour& predicted,
                       double f1_threshold) {
  if (!instance.optimal_tour) {
    throw std::invalid_argument("instance " + std::to_string(instance.id) +
                                " has no oracle tour");
  }
  if (!labelled.labels || labelled.labels->size() != heatmap.probs.size()) {
    throw std::invalid_argument("labels do not align with the heatmap");
  }
  const std::vector<double> labels(labelled.labels->begin(),
                                   labelled.labels->end());
  EvalRecord r;
  r.id = instance.id;
  r.n = instance.n();
  r.counts = confusion(heatmap.probs, labels, f1_threshold);
  r.f1 = f1_from(r.counts);
  try {
    r.auc = roc_auc(heatmap.probs, labels);
  } catch (const UndefinedMetricError&) {
    r.auc.reset();
  }
  r.predicted_length = predicted.length;
  r.oracle_length = instance.optimal_tour->length;
  r.gap_percent = optimal_gap(r.predicted_length, r.oracle_length);
  r.tour = predicted.order;
  return r;
}

EvalReport summarize(std::vector<EvalRecord> records) {
  std::sort(records.begin(), records.end(),
            [](const EvalRecord& a, const EvalRecord& b) { return a.id < b.id; });
  EvalReport report;
  report.records = std::move(records);
  std::map<int, std::vector<const EvalRecord*>> groups;
  std::vector<const EvalRecord*> all;
  for (const auto& r : report.records) {
    groups[r.n].push_back(&r);
    all.push_back(&r);
  }
  for (const auto& [n, members] : groups) {
    report.by_size.push_back(aggregate(n, members));
  }
  report.overall = aggregate(0, all);
  return report;
}

EvalReport evaluate(const EdgeGae& model, const std::vector<Instance>& dataset,
                    const SearchConfig& search, const EvalOptions& options) {
  const int k = model.config().knn;
  if (options.knn && *options.knn != k) {
    throw std::invalid_argument("dataset graphs use k=" +
                                std::to_string(*options.knn) +
                                " but the model was trained with k=" +
                                std::to_string(k));
  }
  validate(search);
  std::vector<EvalRecord> records(dataset.size());
  parallel_for(dataset.size(), options.threads, [&](std::size_t i) {
    const Instance& instance = dataset[i];
    if (!instance.optimal_tour) {
      throw std::invalid_argument("instance " + std::to_string(instance.id) +
                                  " has no oracle tour");
    }
    const auto labelled =
        label_edges(knn_sparsify(instance, k), *instance.optimal_tour);
    const Heatmap heatmap = predict_heatmap(model, labelled.graph);
    SearchConfig per_instance = search;
    per_instance.seed = derive_seed(search.seed, instance.id);
    const auto solved = solve(instance, heatmap, per_instance, 1);
    records[i] = make_record(instance, heatmap, labelled.graph, solved.tour,
                             options.f1_threshold);
  });
  return summarize(std::move(records));
}

void write_report_csv(std::ostream& out, const EvalReport& report) {
  out << "id,n,f1,auc,predicted_length,oracle_length,gap_percent,flag\n";
  for (const auto& r : report.records) {
    out << r.id << ',' << r.n << ',' << format_double(r.f1) << ','
        << (r.auc ? format_double(*r.auc) : "NA") << ','
        << format_double(r.predicted_length) << ','
        << format_double(r.oracle_length) << ','
        << format_double(r.gap_percent) << ','
        << (r.gap_percent < kGapNoise ? "below_oracle" : "") << '\n';
  }
  out << "# aggregate,scope,count,mean_f1,std_f1,pooled_f1,mean_auc,std_auc,"
         "mean_gap_percent,std_gap_percent\n";
  auto row = [&](const std::string& scope, const Aggregate& a) {
    out << "# aggregate," << scope << ',' << a.count << ','
        << format_double(a.mean_f1) << ',' << format_double(a.std_f1) << ','
        << format_double(a.pooled_f1) << ','
        << (a.auc_count ? format_double(a.mean_auc) : "NA") << ','
        << (a.auc_count ? format_double(a.std_auc) : "NA") << ','
        << format_double(a.mean_gap) << ',' << format_double(a.std_gap)
        << '\n';
  };
  for (const auto& a : report.by_size) row("n=" + std::to_string(a.n), a);
  row("all", report.overall);
  if (!out) throw IoError("report write failed");
}

void write_report_csv(const std::filesystem::path& path,
                      const EvalReport& report) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  write_report_csv(out, report);
}

}  // namespace edgegae
