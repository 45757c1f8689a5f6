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

#ifndef EDGEGAE_IO_HPP_
#define EDGEGAE_IO_HPP_

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "edgegae/tsp.hpp"

namespace edgegae {

// Dataset lines: `x1 y1 ... xN yN output i1 ... iN i1`, 1-based closed tour.
// Instance ids are assigned from the 0-based line index.

void write_dataset(std::ostream& out, const std::vector<Instance>& instances);
void write_dataset(const std::filesystem::path& path,
                   const std::vector<Instance>& instances);

/// Throws ParseError carrying the offending line number.
std::vector<Instance> read_dataset(std::istream& in);
std::vector<Instance> read_dataset(const std::filesystem::path& path);

/// Like read_dataset, but the `output ...` tail is optional. Used for
/// coordinate-only instance files.
std::vector<Instance> read_instances(std::istream& in);
std::vector<Instance> read_instances(const std::filesystem::path& path);

// Heatmap files: `n <N> edges <E>` then E lines of `src dst prob`, 0-based.

void write_heatmap(std::ostream& out, const Heatmap& heatmap);
void write_heatmap(const std::filesystem::path& path, const Heatmap& heatmap);
Heatmap read_heatmap(std::istream& in);
Heatmap read_heatmap(const std::filesystem::path& path);

/// Shortest decimal that parses back to exactly `value`.
std::string format_double(double value);

}  // namespace edgegae

#endif  // EDGEGAE_IO_HPP_
