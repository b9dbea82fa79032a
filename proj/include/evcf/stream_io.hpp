// Copyright 2026 The evcf Authors
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

#ifndef EVCF_STREAM_IO_HPP
#define EVCF_STREAM_IO_HPP

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "evcf/config.hpp"
#include "evcf/event_model.hpp"

namespace evcf
{
/// Events plus (possibly empty) frames on a fixed sensor grid.
struct Dataset
{
  std::vector<Event> events;
  std::vector<Frame> frames;
  int width{0};
  int height{0};
};

/// Validates ordering and bounds. A zero width/height is inferred from the
/// frames, or failing that from the largest event coordinate.
Dataset make_dataset(
  std::vector<Event> events, std::vector<Frame> frames, int width = 0, int height = 0);

// ---- events: one "t x y p" line per event, p in {0, 1} ----

std::vector<Event> read_events(std::istream & in);
std::vector<Event> read_events(std::string_view text);
void write_events(std::span<const Event> events, std::ostream & out);

// ---- images: binary PGM (P5) on write; P5 and P2 on read ----

Frame read_pgm(std::istream & in);
Frame read_pgm(const std::filesystem::path & path);
void write_image(const Frame & frame, std::ostream & out);
void write_image(const Frame & frame, const std::filesystem::path & path);

// ---- frame index: one "t filename" line per frame ----

using ImageLoader = std::function<Frame(const std::string & filename)>;

struct IndexEntry
{
  double t;
  std::string filename;
};

std::vector<IndexEntry> read_index(std::istream & in);
void write_index(std::span<const IndexEntry> entries, std::ostream & out);

/// Reads the index and loads each image through `loader`.
std::vector<Frame> read_frames(std::istream & index, const ImageLoader & loader);
/// Filenames are resolved relative to the index file's directory.
std::vector<Frame> read_frames(const std::filesystem::path & index_path);

/// Writes frames as `<prefix>%08d.pgm` next to the index and returns the
/// entries written, with filenames relative to the index directory.
std::vector<IndexEntry> write_frames(
  std::span<const Frame> frames, const std::filesystem::path & index_path,
  const std::string & prefix = "frame_");

// ---- configuration: "key = value" lines, '#' comments ----

using KeyValues = std::map<std::string, std::string, std::less<>>;

KeyValues parse_key_values(std::istream & in);
KeyValues read_key_values(const std::filesystem::path & path);

/// Applies the keys this struct knows and ignores the rest.
void apply_key_values(Config & cfg, const KeyValues & kv);
void apply_key_values(SimulationConfig & cfg, const KeyValues & kv);
/// Throws ConfigError for any key neither config type recognises.
void check_known_keys(const KeyValues & kv);

void write_config(const Config & cfg, std::ostream & out);

/// Shortest representation that parses back to the same double.
std::string format_double(double v);
double parse_double(std::string_view text);

std::vector<Event> read_events_file(const std::filesystem::path & path);
void write_events_file(std::span<const Event> events, const std::filesystem::path & path);

}  // namespace evcf

#endif  // EVCF_STREAM_IO_HPP
