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

#ifndef EVCF_FILTER_HPP
#define EVCF_FILTER_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "evcf/config.hpp"
#include "evcf/event_model.hpp"

namespace evcf
{
/// Parameters of the adaptive crossover gain. Inside [l1, l2] the gain is
/// alpha1; towards l_min and l_max it falls linearly to lambda * alpha1.
struct GainParams
{
  double alpha1{0.0};
  double lambda{0.1};
  double l_min{0.0};
  double l_max{0.0};
  double l1{0.0};
  double l2{0.0};

  /// l_min / l_max are the log values of pixel 0 / pixel 255 under `log_offset`;
  /// [l1, l2] = [l_min + k, l_max - k] with k = kappa_fraction * (l_max - l_min).
  static GainParams make(double alpha1, double lambda, double kappa_fraction, double log_offset);
};

/// Per-pixel gain for a reference log intensity. Values outside
/// [l_min, l_max] get the weakest gain, lambda * alpha1.
double compute_alpha(double reference, const GainParams & gain) noexcept;

/// State of one pixel; all fields start at zero except alpha (alpha1).
struct PixelState
{
  double estimate{0.0};   // current log-intensity estimate
  double t_last{0.0};     // time of the last update at this pixel
  double reference{0.0};  // held frame value
  double alpha{0.0};      // crossover gain, rad/s

  friend bool operator==(const PixelState &, const PixelState &) = default;
};

/// Advances one pixel to time t along the exact solution of the frame-driven
/// exponential relaxation. Identity on the estimate in direct-integration
/// mode. Throws OrderError if t < state.t_last.
void decay(PixelState & state, double t, Mode mode);

struct FilterParams
{
  double c_on{0.1};
  double c_off{0.1};
  Mode mode{Mode::Fusion};
  GainParams gain;

  /// Builds filter parameters from a validated Config.
  static FilterParams from_config(const Config & cfg);
};

/// Continuous-time per-pixel log-intensity state driven by events and frames.
///
/// Pixels are updated lazily: an event touches only its own pixel, while
/// frames and queries advance every pixel. Per-pixel timestamps must never go
/// backwards; every update validates this and throws OrderError otherwise.
class ComplementaryFilter
{
public:
  ComplementaryFilter(int width, int height, const FilterParams & params);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  const FilterParams & params() const noexcept { return params_; }

  /// Decays the event's pixel to ev.t then adds +c_on or -c_off.
  void process_event(const Event & ev);
  void process_events(std::span<const Event> events);

  /// Decays every pixel to frame.t with the previous reference, then installs
  /// the new reference and gain. The estimate stays continuous, except in
  /// direct-integration mode where it is replaced by the frame.
  /// Throws ModeError in events-only mode.
  void process_frame(const LogImage & frame);

  /// process_frame followed by adopting the frame as the estimate.
  void initialize(const LogImage & frame);

  /// Advances every pixel to t and returns the synchronized image.
  LogImage query(double t);

  /// Estimates as stored, each at its own pixel's t_last. Does not mutate.
  std::vector<double> estimates() const;

  const PixelState & pixel(int x, int y) const { return pixels_[index(x, y)]; }
  void set_pixel(int x, int y, const PixelState & s);

  /// Largest t_last over all pixels.
  double latest_time() const noexcept { return t_max_; }

private:
  std::size_t index(int x, int y) const noexcept
  {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }
  void sync_all(double t, const char * what);

  int width_;
  int height_;
  FilterParams params_;
  std::vector<PixelState> pixels_;
  double t_max_{0.0};
};

}  // namespace evcf

#endif  // EVCF_FILTER_HPP
