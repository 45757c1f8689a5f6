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

#include <cmath>
#include <map>
#include <vector>

#include "doctest.h"
#include "edgegae/sampler.hpp"
#include "oracles.hpp"

using namespace edgegae;

TEST_SUITE("sampler") {

TEST_CASE("shuffle: ten items in batches of three") {
  const auto batches = shuffle_batches(10, 3, 5);
  REQUIRE(batches.size() == 4);
  CHECK(batches[0].size() == 3);
  CHECK(batches[1].size() == 3);
  CHECK(batches[2].size() == 3);
  CHECK(batches[3].size() == 1);
  std::vector<int> seen(10, 0);
  for (const auto& b : batches) {
    for (auto i : b) ++seen[i];
  }
  for (int s : seen) CHECK(s == 1);
}

TEST_CASE("shuffle covers every index once and is seeded") {
  for (std::size_t size : {1u, 7u, 64u, 1000u}) {
    const auto a = shuffle_batches(size, 32, 11);
    CHECK(a == shuffle_batches(size, 32, 11));
    std::vector<int> seen(size, 0);
    for (const auto& b : a) {
      for (auto i : b) ++seen[i];
    }
    for (int s : seen) CHECK(s == 1);
  }
  CHECK(shuffle_batches(1000, 32, 1) != shuffle_batches(1000, 32, 2));
  CHECK(shuffle_batches(0, 4, 1).empty());
  CHECK_THROWS_AS(shuffle_batches(10, 0, 1), std::invalid_argument);
}

TEST_CASE("shuffle first positions are uniform") {
  std::vector<double> first(8, 0.0);
  for (int seed = 0; seed < 8000; ++seed) first[shuffle_batches(8, 8, seed)[0][0]] += 1;
  CHECK(oracle_ref::chi_square_uniform(first) < oracle_ref::chi_square_999(7));
}

TEST_CASE("class index partitions the dataset") {
  const std::vector<int> sizes{10, 20, 10, 30, 20, 10};
  const ClassIndex index = build_class_index(sizes);
  CHECK(index.class_keys == std::vector<int>{10, 20, 30});
  CHECK(index.classes.at(10) == std::vector<std::size_t>{0, 2, 5});
  CHECK(index.classes.at(30) == std::vector<std::size_t>{3});
  CHECK(build_class_index(std::vector<int>{}).class_keys.empty());
}

TEST_CASE("class draws concentrate around their binomial mean") {
  std::vector<int> sizes;
  sizes.insert(sizes.end(), 100, 10);
  sizes.insert(sizes.end(), 5, 20);
  sizes.insert(sizes.end(), 1, 30);
  const ClassIndex index = build_class_index(sizes);
  const auto batches = active_batches(index, 30, 100, 77);
  REQUIRE(batches.size() == 100);
  std::map<int, int> per_class;
  for (const auto& b : batches) {
    CHECK(b.size() == 30);
    for (auto i : b) ++per_class[sizes[i]];
  }
  const double sigma = std::sqrt(3000.0 * (1.0 / 3.0) * (2.0 / 3.0));
  for (int key : {10, 20, 30}) {
    CHECK(std::abs(per_class[key] - 1000.0) < 4.0 * sigma);
  }
}

TEST_CASE("single class: every draw comes from it") {
  const ClassIndex index = build_class_index(std::vector<int>{12, 12, 12});
  for (const auto& b : active_batches(index, 8, 5, 3)) {
    for (auto i : b) CHECK(i < 3);
  }
}

TEST_CASE("a one-instance class can repeat within a batch") {
  const ClassIndex index = build_class_index(std::vector<int>{50});
  const auto batches = active_batches(index, 6, 1, 9);
  CHECK(batches[0] == IndexBatch(6, 0));
}

TEST_CASE("class selection passes chi-square over 10^4 draws") {
  std::vector<int> sizes;
  for (int n = 8; n <= 17; ++n) sizes.insert(sizes.end(), 200 / n, n);
  const ClassIndex index = build_class_index(sizes);
  const auto batches = active_batches(index, 25, 400, 2024);
  std::map<int, double> counts;
  for (const auto& b : batches) {
    for (auto i : b) counts[sizes[i]] += 1;
  }
  std::vector<double> observed;
  for (int n = 8; n <= 17; ++n) observed.push_back(counts[n]);
  CHECK(oracle_ref::chi_square_uniform(observed) < oracle_ref::chi_square_999(9));
}

TEST_CASE("instances within a class are drawn uniformly") {
  const ClassIndex index = build_class_index(std::vector<int>(5, 9));
  std::vector<double> hits(5, 0.0);
  for (const auto& b : active_batches(index, 50, 200, 6)) {
    for (auto i : b) hits[i] += 1;
  }
  CHECK(oracle_ref::chi_square_uniform(hits) < oracle_ref::chi_square_999(4));
}

TEST_CASE("active sampling is seeded and epoch length matches shuffle") {
  const ClassIndex index = build_class_index(std::vector<int>{8, 9, 9, 10});
  CHECK(active_batches(index, 3, 4, 1) == active_batches(index, 3, 4, 1));
  CHECK(batches_per_epoch(10, 3) == 4);
  CHECK(batches_per_epoch(9, 3) == 3);
  CHECK(batches_per_epoch(0, 3) == 0);
  CHECK(parse_sampling_mode("active") == SamplingMode::kActive);
  CHECK(to_string(SamplingMode::kShuffle) == "shuffle");
  CHECK_THROWS_AS(parse_sampling_mode("balanced"), std::invalid_argument);
}

}  // TEST_SUITE
