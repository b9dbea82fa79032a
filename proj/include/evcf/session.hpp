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

#ifndef EVCF_SESSION_HPP
#define EVCF_SESSION_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "evcf/config.hpp"
#include "evcf/filter.hpp"
#include "evcf/stream_io.hpp"

namespace evcf
{
struct SessionOptions
{
  FilterParams params;
  double log_offset{LogConvention::kDefaultOffset};
  bool init_from_first_frame{true};

  static SessionOptions from_config(const Config & cfg);
};

/// Replays a dataset through a ComplementaryFilter in timestamp order, with
/// frames applied before events that carry the same timestamp. The dataset is
/// referenced, not copied, and must outlive the session.
class ReconstructionSession
{
public:
  ReconstructionSession(const Dataset & data, const SessionOptions & opts);
  ReconstructionSession(Dataset &&, const SessionOptions &) = delete;

  /// Applies every pending frame and event with timestamp <= t.
  void advance_to(double t);
  /// advance_to(t) and then a synchronized query at t.
  LogImage query(double t);
  /// query() at each time of a nondecreasing schedule.
  std::vector<LogImage> query_all(std::span<const double> times);
  /// query() converted to an 8-bit frame.
  Frame export_frame(double t);

  const ComplementaryFilter & filter() const noexcept { return filter_; }
  const SessionOptions & options() const noexcept { return opts_; }
  std::size_t events_processed() const noexcept { return next_event_; }
  std::size_t frames_processed() const noexcept { return next_frame_; }

private:
  void apply_frame(const Frame & f);

  const Dataset & data_;
  SessionOptions opts_;
  LogConvention log_;
  ComplementaryFilter filter_;
  std::size_t next_event_{0};
  std::size_t next_frame_{0};
};

/// Validates the config and starts a session over `data`.
ReconstructionSession run(const Dataset & data, const Config & cfg);
ReconstructionSession run(Dataset &&, const Config &) = delete;

}  // namespace evcf

#endif  // EVCF_SESSION_HPP
