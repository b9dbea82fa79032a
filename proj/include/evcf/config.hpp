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

#ifndef EVCF_CONFIG_HPP
#define EVCF_CONFIG_HPP

#include <cstdint>
#include <numbers>
#include <string>
#include <string_view>

namespace evcf
{
enum class Mode { Fusion, EventsOnly, DirectIntegration };

std::string_view to_string(Mode mode) noexcept;
/// Accepts "fusion", "events_only" and "direct_integration".
Mode parse_mode(std::string_view text);

/// Reconstruction tunables. Thresholds have no useful default and must be set.
struct Config
{
  double alpha1{2.0 * std::numbers::pi};  // rad/s
  double lambda{0.1};
  double kappa_fraction{0.05};
  double c_on{0.0};
  double c_off{0.0};
  double log_offset{0.01};
  Mode mode{Mode::Fusion};
  // Adopt the first frame as the estimate when it arrives (fusion / direct integration).
  bool init_from_first_frame{true};
  // Sensor size; 0 means infer from the frames or the event coordinates.
  int width{0};
  int height{0};

  /// Throws ConfigError naming the first offending key.
  void validate() const;
};

/// Ground-truth to synthetic-sensor conversion settings. Defaults follow the
/// usual protocol: 5% noise, 25% range truncation, 20 Hz frames, 50 ms delay.
struct SimulationConfig
{
  double c_on{0.15};
  double c_off{0.15};
  double noise_fraction{0.05};
  double subsample_rate{20.0};  // Hz
  double frame_delay{0.05};     // s
  double truncation_fraction{0.25};
  double log_offset{0.01};
  std::uint64_t seed{0};

  void validate() const;
};

}  // namespace evcf

#endif  // EVCF_CONFIG_HPP
