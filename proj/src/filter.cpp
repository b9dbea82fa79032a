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

#include "evcf/filter.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "evcf/errors.hpp"
#include "evcf/stream_io.hpp"

namespace evcf
{
GainParams GainParams::make(double alpha1, double lambda, double kappa_fraction, double log_offset)
{
  const LogConvention conv(log_offset);
  GainParams g;
  g.alpha1 = alpha1;
  g.lambda = lambda;
  g.l_min = conv.min_log();
  g.l_max = conv.max_log();
  const double kappa = kappa_fraction * (g.l_max - g.l_min);
  g.l1 = g.l_min + kappa;
  g.l2 = g.l_max - kappa;
  return g;
}

double compute_alpha(double reference, const GainParams & g) noexcept
{
  const double floor = g.lambda * g.alpha1;
  if (!(reference >= g.l_min && reference <= g.l_max)) {
    return floor;
  }
  if (reference < g.l1) {
    return floor + (1.0 - g.lambda) * g.alpha1 * (reference - g.l_min) / (g.l1 - g.l_min);
  }
  if (reference <= g.l2) {
    return g.alpha1;
  }
  return floor + (1.0 - g.lambda) * g.alpha1 * (reference - g.l_max) / (g.l2 - g.l_max);
}

namespace
{
inline void relax(PixelState & s, double t, Mode mode) noexcept
{
  if (mode != Mode::DirectIntegration) {
    const double w = std::exp(-s.alpha * (t - s.t_last));
    s.estimate = w * s.estimate + (1.0 - w) * s.reference;
  }
  s.t_last = t;
}
}  // namespace

void decay(PixelState & state, double t, Mode mode)
{
  if (!(t >= state.t_last)) {
    throw OrderError("decay to t=" + format_double(t) + " precedes last update at t=" +
                     format_double(state.t_last));
  }
  relax(state, t, mode);
}

FilterParams FilterParams::from_config(const Config & cfg)
{
  cfg.validate();
  FilterParams p;
  p.c_on = cfg.c_on;
  p.c_off = cfg.c_off;
  p.mode = cfg.mode;
  p.gain = GainParams::make(cfg.alpha1, cfg.lambda, cfg.kappa_fraction, cfg.log_offset);
  return p;
}

ComplementaryFilter::ComplementaryFilter(int width, int height, const FilterParams & params)
: width_(width), height_(height), params_(params)
{
  if (width <= 0 || height <= 0) throw DimensionError("filter needs a positive sensor size");
  if (!(params.gain.alpha1 >= 0.0) || !std::isfinite(params.gain.alpha1)) {
    throw ConfigError("alpha1 must be finite and >= 0");
  }
  if (!(params.c_on > 0.0) || !(params.c_off > 0.0)) {
    throw ConfigError("contrast thresholds must be > 0");
  }
  PixelState init;
  init.alpha = params.gain.alpha1;
  pixels_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), init);
}

void ComplementaryFilter::process_event(const Event & ev)
{
  if (ev.x >= width_ || ev.y >= height_) {
    throw DimensionError("event at (" + std::to_string(ev.x) + ", " + std::to_string(ev.y) +
                         ") lies outside the " + std::to_string(width_) + "x" +
                         std::to_string(height_) + " sensor");
  }
  PixelState & s = pixels_[index(ev.x, ev.y)];
  if (!(ev.t >= s.t_last)) {
    throw OrderError("event at pixel (" + std::to_string(ev.x) + ", " + std::to_string(ev.y) +
                     ") has t=" + format_double(ev.t) + " before the pixel's last update t=" +
                     format_double(s.t_last));
  }
  relax(s, ev.t, params_.mode);
  s.estimate += ev.polarity == Polarity::On ? params_.c_on : -params_.c_off;
  t_max_ = std::max(t_max_, ev.t);
}

void ComplementaryFilter::process_events(std::span<const Event> events)
{
  for (const auto & ev : events) process_event(ev);
}

void ComplementaryFilter::sync_all(double t, const char * what)
{
  if (!(t >= t_max_)) {
    throw OrderError(std::string(what) + " at t=" + format_double(t) +
                     " precedes the latest pixel update at t=" + format_double(t_max_));
  }
  const Mode mode = params_.mode;
  for (auto & s : pixels_) relax(s, t, mode);
  t_max_ = t;
}

void ComplementaryFilter::process_frame(const LogImage & frame)
{
  if (params_.mode == Mode::EventsOnly) {
    throw ModeError("frames cannot be applied in events_only mode");
  }
  if (frame.width != width_ || frame.height != height_ || frame.values.size() != pixels_.size()) {
    throw DimensionError("frame is " + std::to_string(frame.width) + "x" +
                         std::to_string(frame.height) + ", filter is " + std::to_string(width_) +
                         "x" + std::to_string(height_));
  }
  sync_all(frame.t, "frame");
  const bool reset = params_.mode == Mode::DirectIntegration;
  for (std::size_t i = 0; i < pixels_.size(); ++i) {
    auto & s = pixels_[i];
    s.reference = frame.values[i];
    s.alpha = compute_alpha(s.reference, params_.gain);
    if (reset) s.estimate = s.reference;
  }
}

void ComplementaryFilter::initialize(const LogImage & frame)
{
  process_frame(frame);
  for (std::size_t i = 0; i < pixels_.size(); ++i) pixels_[i].estimate = frame.values[i];
}

LogImage ComplementaryFilter::query(double t)
{
  sync_all(t, "query");
  LogImage out;
  out.t = t;
  out.width = width_;
  out.height = height_;
  out.values = estimates();
  return out;
}

std::vector<double> ComplementaryFilter::estimates() const
{
  std::vector<double> v(pixels_.size());
  std::transform(pixels_.begin(), pixels_.end(), v.begin(),
                 [](const PixelState & s) { return s.estimate; });
  return v;
}

void ComplementaryFilter::set_pixel(int x, int y, const PixelState & s)
{
  if (x < 0 || y < 0 || x >= width_ || y >= height_) throw DimensionError("pixel out of range");
  pixels_[index(x, y)] = s;
  t_max_ = std::max(t_max_, s.t_last);
}

}  // namespace evcf
