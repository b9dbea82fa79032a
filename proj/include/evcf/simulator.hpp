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

#ifndef EVCF_SIMULATOR_HPP
#define EVCF_SIMULATOR_HPP

#include <span>
#include <vector>

#include "evcf/config.hpp"
#include "evcf/event_model.hpp"

namespace evcf
{
/// Idealised event sensor over a high-rate frame sequence. Each pixel's log
/// intensity is interpolated linearly between frames; whenever it reaches
/// reference + c_on (reference - c_off) an ON (OFF) event is emitted at the
/// exact crossing time and the reference steps by the threshold.
///
/// Output is sorted by timestamp, ties in row-major pixel order.
std::vector<Event> frames_to_events(std::span<const Frame> gt_frames, const SimulationConfig & cfg);

/// Adds round(noise_fraction * N) events with uniform pixel, timestamp (over
/// the stream's span) and polarity, then re-sorts stably by time.
std::vector<Event> inject_noise(
  std::vector<Event> events, int width, int height, const SimulationConfig & cfg);

/// Saturates pixels to the central (1 - 2 * truncation_fraction) of the 8-bit
/// range, keeps the frame nearest to each point of a uniform grid at
/// subsample_rate, and shifts the kept timestamps by frame_delay.
std::vector<Frame> degrade_frames(std::span<const Frame> gt_frames, const SimulationConfig & cfg);

struct SimulationOutput
{
  std::vector<Event> events;
  std::vector<Frame> frames;
  int width{0};
  int height{0};
};

/// frames_to_events + inject_noise + degrade_frames.
SimulationOutput simulate(std::span<const Frame> gt_frames, const SimulationConfig & cfg);

}  // namespace evcf

#endif  // EVCF_SIMULATOR_HPP
