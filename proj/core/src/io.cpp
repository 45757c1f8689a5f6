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

#include "edgegae/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <string_view>

#include "edgegae/errors.hpp"

namespace edgegae {
namespace {

constexpr int kCoordinateDecimals = 17;

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' ||
                               line[i] == '\r')) {
      ++i;
    }
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' &&
           line[i] != '\r') {
      ++i;
    }
    if (i > start) tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

double parse_double(std::string_view token, std::size_t line_no) {
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw ParseError(line_no, "bad number '" + std::string(token) + "'");
  }
  return value;
}

long long parse_int(std::string_view token, std::size_t line_no) {
  long long value = 0;
  const auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw ParseError(line_no, "bad integer '" + std::string(token) + "'");
  }
  return value;
}

std::string format_fixed(double value, int decimals) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value,
                                       std::chars_format::fixed, decimals);
  return std::string(buf, ec == std::errc() ? ptr : buf);
}

Instance parse_instance_line(std::string_view line, std::size_t line_no,
                             bool require_tour) {
  const auto tokens = split_ws(line);
  std::size_t sep = 0;
  while (sep < tokens.size() && tokens[sep] != "output") ++sep;
  const bool has_tour = sep < tokens.size();
  if (require_tour && !has_tour) {
    throw ParseError(line_no, "missing 'output' separator");
  }
  if (sep % 2 != 0) {
    throw ParseError(line_no, "odd number of coordinate values");
  }
  Instance instance;
  const std::size_t n = sep / 2;
  instance.coords.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    instance.coords[i] = {parse_double(tokens[2 * i], line_no),
                          parse_double(tokens[2 * i + 1], line_no)};
  }
  if (instance.n() < kMinCities) {
    throw ParseError(line_no, "instance has " + std::to_string(n) +
                                  " cities; minimum is " +
                                  std::to_string(kMinCities));
  }
  for (const auto& p : instance.coords) {
    if (!(p.x >= 0.0 && p.x <= 1.0 && p.y >= 0.0 && p.y <= 1.0)) {
      throw ParseError(line_no, "coordinate outside [0,1]");
    }
  }
  if (!has_tour) return instance;

  const std::size_t tour_tokens = tokens.size() - sep - 1;
  if (tour_tokens != n + 1) {
    throw ParseError(line_no, "expected " + std::to_string(n + 1) +
                                  " tour indices, got " +
                                  std::to_string(tour_tokens));
  }
  Order order(n);
  for (std::size_t i = 0; i <= n; ++i) {
    const long long idx = parse_int(tokens[sep + 1 + i], line_no);
    if (idx < 1 || idx > static_cast<long long>(n)) {
      throw ParseError(line_no, "tour index " + std::to_string(idx) +
                                    " out of range");
    }
    if (i < n) order[i] = static_cast<int>(idx - 1);
    else if (idx - 1 != order[0]) {
      throw ParseError(line_no, "tour is not closed");
    }
  }
  if (!is_permutation(order, instance.n())) {
    throw ParseError(line_no, "tour is not a permutation");
  }
  instance.optimal_tour = make_tour(instance, std::move(order));
  return instance;
}

std::vector<Instance> read_lines(std::istream& in, bool require_tour) {
  std::vector<Instance> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (split_ws(line).empty()) continue;
    Instance instance = parse_instance_line(line, line_no, require_tour);
    instance.id = out.size();
    out.push_back(std::move(instance));
  }
  if (in.bad()) throw IoError("read failed");
  return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  return out;
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ec == std::errc() ? ptr : buf);
}

void write_dataset(std::ostream& out, const std::vector<Instance>& instances) {
  std::string line;
  for (const auto& instance : instances) {
    if (!instance.optimal_tour) {
      throw std::invalid_argument("instance " + std::to_string(instance.id) +
                                  " has no tour to write");
    }
    validate(instance);
    line.clear();
    for (const auto& p : instance.coords) {
      line += format_fixed(p.x, kCoordinateDecimals);
      line += ' ';
      line += format_fixed(p.y, kCoordinateDecimals);
      line += ' ';
    }
    line += "output";
    const auto& order = instance.optimal_tour->order;
    for (int v : order) {
      line += ' ';
      line += std::to_string(v + 1);
    }
    line += ' ';
    line += std::to_string(order.front() + 1);
    line += '\n';
    out << line;
  }
  if (!out) throw IoError("write failed");
}

void write_dataset(const std::filesystem::path& path,
                   const std::vector<Instance>& instances) {
  auto out = open_out(path);
  write_dataset(out, instances);
}

std::vector<Instance> read_dataset(std::istream& in) {
  return read_lines(in, true);
}

std::vector<Instance> read_dataset(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_dataset(in);
}

std::vector<Instance> read_instances(std::istream& in) {
  return read_lines(in, false);
}

std::vector<Instance> read_instances(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_instances(in);
}

void write_heatmap(std::ostream& out, const Heatmap& heatmap) {
  out << "n " << heatmap.n << " edges " << heatmap.edges.size() << '\n';
  for (std::size_t e = 0; e < heatmap.edges.size(); ++e) {
    out << heatmap.edges[e].src << ' ' << heatmap.edges[e].dst << ' '
        << format_double(heatmap.probs[e]) << '\n';
  }
  if (!out) throw IoError("write failed");
}

void write_heatmap(const std::filesystem::path& path, const Heatmap& heatmap) {
  auto out = open_out(path);
  write_heatmap(out, heatmap);
}

Heatmap read_heatmap(std::istream& in) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line)) throw ParseError(1, "missing heatmap header");
  const auto header = split_ws(line);
  if (header.size() != 4 || header[0] != "n" || header[2] != "edges") {
    throw ParseError(1, "expected 'n <N> edges <E>'");
  }
  Heatmap heatmap;
  heatmap.n = static_cast<int>(parse_int(header[1], 1));
  const long long count = parse_int(header[3], 1);
  if (heatmap.n < 0 || count < 0) throw ParseError(1, "negative size");
  heatmap.edges.reserve(static_cast<std::size_t>(count));
  heatmap.probs.reserve(static_cast<std::size_t>(count));
  while (static_cast<long long>(heatmap.edges.size()) < count) {
    if (!std::getline(in, line)) {
      throw ParseError(line_no + 1, "expected " + std::to_string(count) +
                                        " edge lines, found " +
                                        std::to_string(heatmap.edges.size()));
    }
    ++line_no;
    const auto tokens = split_ws(line);
    if (tokens.size() != 3) throw ParseError(line_no, "expected 'src dst prob'");
    const long long src = parse_int(tokens[0], line_no);
    const long long dst = parse_int(tokens[1], line_no);
    const double prob = parse_double(tokens[2], line_no);
    if (src < 0 || src >= heatmap.n || dst < 0 || dst >= heatmap.n) {
      throw ParseError(line_no, "edge endpoint out of range");
    }
    if (!(prob >= 0.0 && prob <= 1.0)) {
      throw ParseError(line_no, "probability outside [0,1]");
    }
    heatmap.edges.push_back({static_cast<int>(src), static_cast<int>(dst)});
    heatmap.probs.push_back(prob);
  }
  return heatmap;
}

Heatmap read_heatmap(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_heatmap(in);
}

}  // namespace edgegae
