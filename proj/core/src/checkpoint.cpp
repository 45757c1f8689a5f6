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

#include "edgegae/checkpoint.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <istream>
#include <map>
#include <memory>
#include <ostream>
#include <vector>

#include "edgegae/errors.hpp"
#include "json.hpp"

namespace edgegae {
namespace {

constexpr char kMagic[4] = {'E', 'G', 'A', 'E'};

class Writer {
 public:
  explicit Writer(std::ostream& out) : out_(out) {}

  void bytes(const void* data, std::size_t size) {
    out_.write(static_cast<const char*>(data),
               static_cast<std::streamsize>(size));
  }
  template <typename T>
  void le(T value) {
    unsigned char buf[sizeof(T)];
    for (std::size_t i = 0; i < sizeof(T); ++i) {
      buf[i] = static_cast<unsigned char>(value >> (8 * i));
    }
    bytes(buf, sizeof(T));
  }
  void f64(double value) { le(std::bit_cast<std::uint64_t>(value)); }

 private:
  std::ostream& out_;
};

class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  void bytes(void* data, std::size_t size, const char* what) {
    in_.read(static_cast<char*>(data), static_cast<std::streamsize>(size));
    if (static_cast<std::size_t>(in_.gcount()) != size) {
      throw FormatError(std::string("checkpoint truncated while reading ") +
                        what);
    }
  }
  template <typename T>
  T le(const char* what) {
    unsigned char buf[sizeof(T)];
    bytes(buf, sizeof(T), what);
    T value = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) {
      value |= static_cast<T>(static_cast<T>(buf[i]) << (8 * i));
    }
    return value;
  }
  double f64(const char* what) {
    return std::bit_cast<double>(le<std::uint64_t>(what));
  }
  bool at_end() { return in_.peek() == std::char_traits<char>::eof(); }

 private:
  std::istream& in_;
};

nlohmann::json config_json(const ModelConfig& config, const TrainingMeta& meta,
                           std::uint64_t adam_step) {
  return {
      {"L", config.layers},       {"H", config.hidden},
      {"k", config.knn},          {"mlp_layers", config.mlp_layers},
      {"delta", config.delta},    {"lr", meta.lr},
      {"pos_weight", meta.pos_weight},
      {"seed", meta.seed},        {"epoch", meta.epoch},
      {"batch_size", meta.batch_size},
      {"sampling", meta.sampling},
      {"beta1", meta.beta1},      {"beta2", meta.beta2},
      {"adam_eps", meta.adam_eps},
      {"adam_step", adam_step},
  };
}

// Destination for each tensor name the model expects.
std::map<std::string, Tensor*> tensor_slots(
    EdgeGae& model, std::vector<std::unique_ptr<Tensor>>& scratch) {
  std::map<std::string, Tensor*> slots;
  for (auto& p : model.params().entries()) {
    slots[p.name] = &p.value;
    slots["adam.m." + p.name] = &p.adam_m;
    slots["adam.v." + p.name] = &p.adam_v;
  }
  const auto h = static_cast<std::size_t>(model.config().hidden);
  for (int l = 0; l < model.config().layers; ++l) {
    for (const char* kind : {"node", "edge"}) {
      for (const char* stat : {"mean", "var"}) {
        scratch.push_back(std::make_unique<Tensor>(std::vector<std::size_t>{h}));
        slots["bn." + std::to_string(l) + "." + kind + "." + stat] =
            scratch.back().get();
      }
    }
  }
  return slots;
}

void write_tensor(Writer& w, const std::string& name, const Tensor& t) {
  w.le(static_cast<std::uint16_t>(name.size()));
  w.bytes(name.data(), name.size());
  w.le(static_cast<std::uint8_t>(t.rank()));
  for (std::size_t d : t.dims()) w.le(static_cast<std::uint32_t>(d));
  for (double v : t.data()) w.f64(v);
}

Tensor stat_tensor(const Eigen::VectorXd& v) {
  Tensor t({static_cast<std::size_t>(v.size())});
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    t[static_cast<std::size_t>(i)] = v[i];
  }
  return t;
}

}  // namespace

void save_checkpoint(std::ostream& out, const EdgeGae& model,
                     const TrainingMeta& meta) {
  Writer w(out);
  w.bytes(kMagic, sizeof(kMagic));
  w.le(kCheckpointVersion);
  const std::string config =
      config_json(model.config(), meta, model.params().step_count).dump();
  w.le(static_cast<std::uint32_t>(config.size()));
  w.bytes(config.data(), config.size());

  const auto& params = model.params().entries();
  const auto layers = static_cast<std::size_t>(model.config().layers);
  w.le(static_cast<std::uint32_t>(3 * params.size() + 4 * layers));
  for (const auto& p : params) write_tensor(w, p.name, p.value);
  for (int l = 0; l < model.config().layers; ++l) {
    const std::string prefix = "bn." + std::to_string(l) + ".";
    write_tensor(w, prefix + "node.mean", stat_tensor(model.node_norm(l).running_mean));
    write_tensor(w, prefix + "node.var", stat_tensor(model.node_norm(l).running_var));
    write_tensor(w, prefix + "edge.mean", stat_tensor(model.edge_norm(l).running_mean));
    write_tensor(w, prefix + "edge.var", stat_tensor(model.edge_norm(l).running_var));
  }
  for (const auto& p : params) write_tensor(w, "adam.m." + p.name, p.adam_m);
  for (const auto& p : params) write_tensor(w, "adam.v." + p.name, p.adam_v);
  if (!out) throw IoError("checkpoint write failed");
}

void save_checkpoint(const std::filesystem::path& path, const EdgeGae& model,
                     const TrainingMeta& meta) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + tmp.string() + "' for writing");
    save_checkpoint(out, model, meta);
    out.close();
    if (!out) throw IoError("checkpoint write failed for '" + tmp.string() + "'");
  }
  std::filesystem::rename(tmp, path);
}

Checkpoint load_checkpoint(std::istream& in) {
  Reader r(in);
  char magic[4];
  r.bytes(magic, sizeof(magic), "magic");
  if (!std::equal(magic, magic + 4, kMagic)) {
    throw FormatError("not an EdgeGAE checkpoint (bad magic)");
  }
  const auto version = r.le<std::uint32_t>("version");
  if (version != kCheckpointVersion) {
    throw FormatError("unsupported checkpoint version " +
                      std::to_string(version));
  }
  const auto config_len = r.le<std::uint32_t>("config length");
  std::string config_text(config_len, '\0');
  r.bytes(config_text.data(), config_len, "config");

  ModelConfig config;
  TrainingMeta meta;
  std::uint64_t adam_step = 0;
  try {
    const auto j = nlohmann::json::parse(config_text);
    config.layers = j.at("L").get<int>();
    config.hidden = j.at("H").get<int>();
    config.knn = j.at("k").get<int>();
    config.mlp_layers = j.at("mlp_layers").get<int>();
    config.delta = j.at("delta").get<double>();
    meta.lr = j.at("lr").get<double>();
    meta.pos_weight = j.at("pos_weight").get<double>();
    meta.seed = j.at("seed").get<std::uint64_t>();
    meta.epoch = j.at("epoch").get<std::uint64_t>();
    meta.batch_size = j.at("batch_size").get<int>();
    meta.sampling = j.at("sampling").get<std::string>();
    meta.beta1 = j.at("beta1").get<double>();
    meta.beta2 = j.at("beta2").get<double>();
    meta.adam_eps = j.at("adam_eps").get<double>();
    adam_step = j.at("adam_step").get<std::uint64_t>();
    validate(config);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("bad checkpoint config: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("bad checkpoint config: ") + e.what());
  }

  Checkpoint ckpt{EdgeGae(config), meta};
  ckpt.model.params().step_count = adam_step;
  std::vector<std::unique_ptr<Tensor>> scratch;
  auto slots = tensor_slots(ckpt.model, scratch);
  std::map<std::string, bool> seen;

  const auto count = r.le<std::uint32_t>("tensor count");
  for (std::uint32_t t = 0; t < count; ++t) {
    const auto name_len = r.le<std::uint16_t>("tensor name length");
    std::string name(name_len, '\0');
    r.bytes(name.data(), name_len, "tensor name");
    const auto slot = slots.find(name);
    if (slot == slots.end()) {
      throw FormatError("unknown tensor '" + name + "' in checkpoint");
    }
    if (seen[name]) throw FormatError("duplicate tensor '" + name + "'");
    seen[name] = true;
    const auto rank = r.le<std::uint8_t>("tensor rank");
    std::vector<std::size_t> dims(rank);
    for (auto& d : dims) d = r.le<std::uint32_t>("tensor dims");
    Tensor& target = *slot->second;
    if (dims != target.dims()) {
      throw FormatError("tensor '" + name + "' has shape " + shape_string(dims) +
                        ", expected " + shape_string(target.dims()));
    }
    for (auto& v : target.data()) v = r.f64("tensor payload");
  }
  if (!r.at_end()) throw FormatError("trailing bytes after last tensor");
  std::vector<std::string> missing;
  for (const auto& [name, ptr] : slots) {
    if (!seen[name]) missing.push_back(name);
  }
  if (!missing.empty()) {
    std::string list;
    for (const auto& m : missing) list += (list.empty() ? "" : ", ") + m;
    throw FormatError("checkpoint is missing tensors: " + list);
  }
  for (int l = 0; l < config.layers; ++l) {
    const std::string prefix = "bn." + std::to_string(l) + ".";
    auto copy = [&](const std::string& name, Eigen::VectorXd& dst) {
      dst = slots.at(prefix + name)->vector();
    };
    copy("node.mean", ckpt.model.node_norm(l).running_mean);
    copy("node.var", ckpt.model.node_norm(l).running_var);
    copy("edge.mean", ckpt.model.edge_norm(l).running_mean);
    copy("edge.var", ckpt.model.edge_norm(l).running_var);
  }
  return ckpt;
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open checkpoint '" + path.string() + "'");
  return load_checkpoint(in);
}

}  // namespace edgegae
