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

#include "evcf/config.hpp"

#include <cmath>
#include <string>

#include "evcf/errors.hpp"

namespace evcf
{
std::string_view to_string(Mode mode) noexcept
{
  switch (mode) {
    case Mode::Fusion:
      return "fusion";
    case Mode::EventsOnly:
      return "events_only";
    case Mode::DirectIntegration:
      return "direct_integration";
  }
  return "unknown";
}

Mode parse_mode(std::string_view text)
{
  if (text == "fusion") return Mode::Fusion;
  if (text == "events_only") return Mode::EventsOnly;
  if (text == "direct_integration") return Mode::DirectIntegration;
  throw ConfigError(
    "unknown mode '" + std::string(text) + "' (expected fusion, events_only or direct_integration)");
}

namespace
{
void require(bool ok, const char * msg)
{
  if (!ok) throw ConfigError(msg);
}
}  // namespace

void Config::validate() const
{
  require(std::isfinite(alpha1) && alpha1 > 0.0, "alpha1 must be > 0");
  require(lambda >= 0.0 && lambda <= 1.0, "lambda must lie in [0, 1]");
  require(kappa_fraction > 0.0 && kappa_fraction < 0.5, "kappa_fraction must lie in (0, 0.5)");
  require(std::isfinite(c_on) && c_on > 0.0, "c_on must be set to a positive value");
  require(std::isfinite(c_off) && c_off > 0.0, "c_off must be set to a positive value");
  require(std::isfinite(log_offset) && log_offset > 0.0, "log_offset must be > 0");
  require(width >= 0 && height >= 0, "width and height must be non-negative");
}

void SimulationConfig::validate() const
{
  require(std::isfinite(c_on) && c_on > 0.0, "c_on must be > 0");
  require(std::isfinite(c_off) && c_off > 0.0, "c_off must be > 0");
  require(noise_fraction >= 0.0 && noise_fraction < 1.0, "noise_fraction must lie in [0, 1)");
  require(std::isfinite(subsample_rate) && subsample_rate > 0.0, "subsample_rate must be > 0");
  require(std::isfinite(frame_delay) && frame_delay >= 0.0, "frame_delay must be >= 0");
  require(
    truncation_fraction >= 0.0 && truncation_fraction < 0.5,
    "truncation_fraction must lie in [0, 0.5)");
  require(std::isfinite(log_offset) && log_offset > 0.0, "log_offset must be > 0");
}

}  // namespace evcf
