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

#ifndef EVCF_CALIBRATION_HPP
#define EVCF_CALIBRATION_HPP

#include <cstddef>
#include <span>

#include "evcf/stream_io.hpp"

namespace evcf
{
struct CalibrationResult
{
  double c_on{0.0};
  double c_off{0.0};
  double residual{0.0};  // RMS of dL - c_on * n_on + c_off * n_off over all samples
  std::size_t n_intervals{0};
  std::size_t n_samples{0};
};

/// One (pixel, frame interval) sample: the frame-to-frame log change and the
/// number of ON / OFF events the pixel fired in between.
struct CountSample
{
  double delta_log{0.0};
  double n_on{0.0};
  double n_off{0.0};
};

/// Two-parameter least squares for dL ~= c_on * n_on - c_off * n_off.
/// Throws CalibrationError when a threshold is not identifiable or the
/// solution is not positive.
CalibrationResult fit_thresholds(std::span<const CountSample> samples);

struct CalibrationOptions
{
  double log_offset{0.01};
  double kappa_fraction{0.05};
  /// Subtracted from frame timestamps before binning events, to undo a known
  /// capture latency.
  double frame_time_offset{0.0};
};

/// Estimates constant ON / OFF thresholds from consecutive frame pairs.
/// Events in [t_j, t_j+1) are attributed to interval j. Pixels whose value is
/// outside the unsaturated band [l1, l2] in either frame are skipped.
CalibrationResult calibrate(const Dataset & data, const CalibrationOptions & opts = {});

}  // namespace evcf

#endif  // EVCF_CALIBRATION_HPP
