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

#include "evcf/session.hpp"

#include "evcf/errors.hpp"

namespace evcf
{
SessionOptions SessionOptions::from_config(const Config & cfg)
{
  SessionOptions o;
  o.params = FilterParams::from_config(cfg);
  o.log_offset = cfg.log_offset;
  o.init_from_first_frame = cfg.init_from_first_frame;
  return o;
}

ReconstructionSession::ReconstructionSession(const Dataset & data, const SessionOptions & opts)
: data_(data), opts_(opts), log_(opts.log_offset), filter_(data.width, data.height, opts.params)
{
  if (opts_.params.mode == Mode::EventsOnly) {
    next_frame_ = data_.frames.size();  // frames never enter the high-pass filter
  }
}

void ReconstructionSession::apply_frame(const Frame & f)
{
  LogImage img;
  img.t = f.t;
  img.width = f.width;
  img.height = f.height;
  img.values.resize(f.pixels.size());
  for (std::size_t i = 0; i < f.pixels.size(); ++i) img.values[i] = log_.to_log(f.pixels[i]);

  if (next_frame_ == 0 && opts_.init_from_first_frame) {
    filter_.initialize(img);
  } else {
    filter_.process_frame(img);
  }
}

void ReconstructionSession::advance_to(double t)
{
  const auto & events = data_.events;
  const auto & frames = data_.frames;
  while (true) {
    const bool have_frame = next_frame_ < frames.size() && frames[next_frame_].t <= t;
    std::size_t stop = events.size();
    if (have_frame) {
      // Events strictly before the frame go first; ties go to the frame.
      const double tf = frames[next_frame_].t;
      while (next_event_ < stop && events[next_event_].t < tf) {
        filter_.process_event(events[next_event_++]);
      }
      apply_frame(frames[next_frame_]);
      ++next_frame_;
      continue;
    }
    while (next_event_ < stop && events[next_event_].t <= t) {
      filter_.process_event(events[next_event_++]);
    }
    break;
  }
}

LogImage ReconstructionSession::query(double t)
{
  advance_to(t);
  return filter_.query(t);
}

std::vector<LogImage> ReconstructionSession::query_all(std::span<const double> times)
{
  std::vector<LogImage> out;
  out.reserve(times.size());
  for (double t : times) out.push_back(query(t));
  return out;
}

Frame ReconstructionSession::export_frame(double t)
{
  const auto img = query(t);
  Frame f;
  f.t = t;
  f.width = img.width;
  f.height = img.height;
  f.pixels.resize(img.values.size());
  for (std::size_t i = 0; i < img.values.size(); ++i) f.pixels[i] = log_.from_log(img.values[i]);
  return f;
}

ReconstructionSession run(const Dataset & data, const Config & cfg)
{
  return ReconstructionSession(data, SessionOptions::from_config(cfg));
}

}  // namespace evcf
