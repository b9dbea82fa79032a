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

#include "evcf/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "evcf/errors.hpp"

namespace evcf
{
namespace
{
void check_sequence(std::span<const Frame> frames)
{
  if (frames.size() < 2) throw ConfigError("need >= 2 ground-truth frames");
  for (std::size_t i = 0; i < frames.size(); ++i) {
    if (frames[i].width != frames[0].width || frames[i].height != frames[0].height) {
      throw DimensionError("ground-truth frame " + std::to_string(i) + " has mismatched dimensions");
    }
    if (i > 0 && !(frames[i].t > frames[i - 1].t)) {
      throw OrderError("ground-truth timestamps must be strictly increasing (frame " +
                       std::to_string(i) + ")");
    }
  }
}

void sort_by_time(std::vector<Event> & events)
{
  std::stable_sort(events.begin(), events.end(),
                   [](const Event & a, const Event & b) { return a.t < b.t; });
}
}  // namespace

std::vector<Event> frames_to_events(std::span<const Frame> gt_frames, const SimulationConfig & cfg)
{
  cfg.validate();
  check_sequence(gt_frames);
  const LogConvention log(cfg.log_offset);
  const int w = gt_frames[0].width;
  const int h = gt_frames[0].height;
  const std::size_t n_frames = gt_frames.size();

  std::vector<Event> events;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::size_t i = static_cast<std::size_t>(y) * w + x;
      double ref = log.to_log(gt_frames[0].pixels[i]);
      for (std::size_t k = 0; k + 1 < n_frames; ++k) {
        const double a = log.to_log(gt_frames[k].pixels[i]);
        const double b = log.to_log(gt_frames[k + 1].pixels[i]);
        if (a == b) continue;
        const double t0 = gt_frames[k].t;
        const double span = gt_frames[k + 1].t - t0;
        const auto emit = [&](double level, Polarity p) {
          const double t = t0 + (level - a) / (b - a) * span;
          events.push_back(Event{t, static_cast<std::uint16_t>(x), static_cast<std::uint16_t>(y), p});
        };
        if (b > a) {
          while (ref + cfg.c_on <= b) {
            ref += cfg.c_on;
            emit(ref, Polarity::On);
          }
        } else {
          while (ref - cfg.c_off >= b) {
            ref -= cfg.c_off;
            emit(ref, Polarity::Off);
          }
        }
      }
    }
  }
  sort_by_time(events);
  return events;
}

std::vector<Event> inject_noise(
  std::vector<Event> events, int width, int height, const SimulationConfig & cfg)
{
  cfg.validate();
  if (events.empty() || cfg.noise_fraction == 0.0) return events;
  if (width <= 0 || height <= 0) throw DimensionError("noise injection needs a positive sensor size");
  const auto count =
    static_cast<std::size_t>(std::llround(cfg.noise_fraction * static_cast<double>(events.size())));
  double t_lo = events.front().t;
  double t_hi = events.front().t;
  for (const auto & e : events) {
    t_lo = std::min(t_lo, e.t);
    t_hi = std::max(t_hi, e.t);
  }
  std::mt19937_64 rng(cfg.seed);
  std::uniform_int_distribution<int> xs(0, width - 1);
  std::uniform_int_distribution<int> ys(0, height - 1);
  std::uniform_real_distribution<double> ts(t_lo, t_hi);
  std::bernoulli_distribution on(0.5);
  events.reserve(events.size() + count);
  for (std::size_t k = 0; k < count; ++k) {
    Event e;
    e.t = t_hi > t_lo ? ts(rng) : t_lo;
    e.x = static_cast<std::uint16_t>(xs(rng));
    e.y = static_cast<std::uint16_t>(ys(rng));
    e.polarity = on(rng) ? Polarity::On : Polarity::Off;
    events.push_back(e);
  }
  sort_by_time(events);
  return events;
}

std::vector<Frame> degrade_frames(std::span<const Frame> gt_frames, const SimulationConfig & cfg)
{
  cfg.validate();
  check_sequence(gt_frames);
  const double t_first = gt_frames.front().t;
  const double t_last = gt_frames.back().t;
  const double gt_rate = static_cast<double>(gt_frames.size() - 1) / (t_last - t_first);
  if (cfg.subsample_rate > gt_rate * (1.0 + 1e-9)) {
    throw ConfigError("subsample rate " + std::to_string(cfg.subsample_rate) +
                      " Hz exceeds the ground-truth rate of " + std::to_string(gt_rate) + " Hz");
  }
  const auto lo = static_cast<std::uint8_t>(std::lround(cfg.truncation_fraction * 255.0));
  const auto hi = static_cast<std::uint8_t>(std::lround((1.0 - cfg.truncation_fraction) * 255.0));

  std::vector<Frame> out;
  std::size_t last_kept = gt_frames.size();
  const double eps = 1e-9 * std::max(1.0, std::abs(t_last));
  for (std::size_t k = 0;; ++k) {
    const double g = t_first + static_cast<double>(k) / cfg.subsample_rate;
    if (g > t_last + eps) break;
    // nearest ground-truth frame, ties to the earlier one
    const auto it = std::lower_bound(gt_frames.begin(), gt_frames.end(), g,
                                     [](const Frame & f, double v) { return f.t < v; });
    std::size_t idx = static_cast<std::size_t>(it - gt_frames.begin());
    if (idx == gt_frames.size()) {
      idx = gt_frames.size() - 1;
    } else if (idx > 0 && g - gt_frames[idx - 1].t <= gt_frames[idx].t - g) {
      --idx;
    }
    if (idx == last_kept) continue;
    last_kept = idx;
    Frame f = gt_frames[idx];
    for (auto & p : f.pixels) p = std::clamp(p, lo, hi);
    f.t += cfg.frame_delay;
    out.push_back(std::move(f));
  }
  return out;
}

SimulationOutput simulate(std::span<const Frame> gt_frames, const SimulationConfig & cfg)
{
  SimulationOutput out;
  out.events = frames_to_events(gt_frames, cfg);
  out.width = gt_frames[0].width;
  out.height = gt_frames[0].height;
  out.events = inject_noise(std::move(out.events), out.width, out.height, cfg);
  out.frames = degrade_frames(gt_frames, cfg);
  return out;
}

}  // namespace evcf
