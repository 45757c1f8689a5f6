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

#include <cstring>
#include <sstream>
#include <string>

#include "doctest.h"
#include "edgegae/checkpoint.hpp"
#include "edgegae/errors.hpp"
#include "fixtures.hpp"

using namespace edgegae;

namespace {

EdgeGae trained_model() {
  ModelConfig c;
  c.hidden = 8;
  c.layers = 2;
  c.knn = 5;
  EdgeGae model(c, 3);
  const auto set = fixtures::solved_set(3, 8, 10, 5);
  for (int step = 0; step < 3; ++step) {
    for (const auto& inst : set) {
      model.forward(make_batch(fixtures::labelled_graph(inst, 5)), Mode::kTrain, true);
      model.backward();
      adam_step(model.params(), AdamConfig{});
    }
  }
  model.clear_tape();
  return model;
}

std::string saved(const EdgeGae& model, const TrainingMeta& meta = {}) {
  std::ostringstream out;
  save_checkpoint(out, model, meta);
  return out.str();
}

std::string load_error(const std::string& bytes) {
  std::istringstream in(bytes);
  try {
    load_checkpoint(in);
  } catch (const FormatError& e) {
    return e.what();
  }
  return "";
}

void put_u32(std::string& s, std::size_t at, std::uint32_t v) {
  for (int b = 0; b < 4; ++b) s[at + b] = static_cast<char>((v >> (8 * b)) & 0xff);
}

std::uint32_t get_u32(const std::string& s, std::size_t at) {
  std::uint32_t v = 0;
  for (int b = 3; b >= 0; --b) v = (v << 8) | static_cast<unsigned char>(s[at + b]);
  return v;
}

}  // namespace

TEST_SUITE("checkpoint") {

TEST_CASE("round trip reproduces eval outputs and optimizer state exactly") {
  const EdgeGae model = trained_model();
  TrainingMeta meta;
  meta.epoch = 7;
  meta.seed = 99;
  meta.sampling = "active";
  meta.lr = 3e-4;
  std::istringstream in(saved(model, meta));
  const Checkpoint back = load_checkpoint(in);
  CHECK(back.meta.epoch == 7);
  CHECK(back.meta.seed == 99);
  CHECK(back.meta.sampling == "active");
  CHECK(back.meta.lr == 3e-4);
  CHECK(back.model.config().hidden == 8);
  CHECK(back.model.config().knn == 5);
  CHECK(back.model.params().step_count == model.params().step_count);
  for (std::size_t i = 0; i < model.params().size(); ++i) {
    const auto& a = model.params()[i];
    const auto& b = back.model.params()[i];
    CHECK(a.name == b.name);
    for (std::size_t k = 0; k < a.value.size(); ++k) {
      CHECK(std::memcmp(a.value.data().data() + k, b.value.data().data() + k, sizeof(double)) == 0);
      CHECK(a.adam_m[k] == b.adam_m[k]);
      CHECK(a.adam_v[k] == b.adam_v[k]);
    }
  }
  const BatchedGraph batch = make_batch(knn_sparsify(generate_instance(12, 4), 5));
  const auto pa = model.infer(batch);
  const auto pb = back.model.infer(batch);
  CHECK((pa.array() == pb.array()).all());
  CHECK(saved(back.model, back.meta) == saved(model, meta));
}

TEST_CASE("bad magic and bad version are rejected") {
  std::string bytes = saved(trained_model());
  std::string bad = bytes;
  bad[0] = 'X';
  CHECK(load_error(bad).find("magic") != std::string::npos);
  bad = bytes;
  put_u32(bad, 4, 99);
  CHECK(load_error(bad).find("version") != std::string::npos);
}

TEST_CASE("every truncation is a format error") {
  const std::string bytes = saved(trained_model());
  for (std::size_t cut : {std::size_t{0}, std::size_t{3}, std::size_t{10},
                          bytes.size() / 2, bytes.size() - 1}) {
    CHECK_FALSE(load_error(bytes.substr(0, cut)).empty());
  }
  CHECK_FALSE(load_error(bytes + "x").empty());
}

TEST_CASE("an unknown tensor is named in the error") {
  std::string bytes = saved(trained_model());
  const std::size_t json_len = get_u32(bytes, 8);
  const std::size_t count_at = 12 + json_len;
  put_u32(bytes, count_at, get_u32(bytes, count_at) + 1);
  const std::string name = "decoder.extra";
  bytes += static_cast<char>(name.size());
  bytes += '\0';
  bytes += name;
  bytes += static_cast<char>(1);
  std::string dim(4, '\0');
  put_u32(dim, 0, 1);
  bytes += dim;
  bytes += std::string(8, '\0');
  CHECK(load_error(bytes).find("decoder.extra") != std::string::npos);
}

TEST_CASE("file round trip") {
  const EdgeGae model = trained_model();
  const auto path = std::filesystem::temp_directory_path() / "edgegae_ckpt_test.bin";
  save_checkpoint(path, model, TrainingMeta{});
  const Checkpoint back = load_checkpoint(path);
  CHECK(back.model.params().size() == model.params().size());
  std::filesystem::remove(path);
  CHECK_THROWS_AS(load_checkpoint(path), IoError);
}

}  // TEST_SUITE
