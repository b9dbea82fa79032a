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

#include "evcf/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "evcf/errors.hpp"
#include "evcf/filter.hpp"

namespace evcf
{
CalibrationResult fit_thresholds(std::span<const CountSample> samples)
{
  // Normal equations of min sum (dL - a n_on + b n_off)^2 in (a, b).
  double s_nn = 0.0, s_ff = 0.0, s_nf = 0.0, s_ln = 0.0, s_lf = 0.0;
  for (const auto & s : samples) {
    s_nn += s.n_on * s.n_on;
    s_ff += s.n_off * s.n_off;
    s_nf += s.n_on * s.n_off;
    s_ln += s.delta_log * s.n_on;
    s_lf += s.delta_log * s.n_off;
  }
  if (s_nn == 0.0 && s_ff == 0.0) {
    throw CalibrationError("no events fall between any pair of frames");
  }
  if (s_ff == 0.0) {
    throw CalibrationError("c_off is unidentifiable: no OFF events between frames (c_on alone fits " +
                           format_double(s_ln / s_nn) + ")");
  }
  if (s_nn == 0.0) {
    throw CalibrationError("c_on is unidentifiable: no ON events between frames (c_off alone fits " +
                           format_double(-s_lf / s_ff) + ")");
  }
  // [ s_nn  -s_nf ] [a]   [ s_ln]
  // [-s_nf   s_ff ] [b] = [-s_lf]
  const double det = s_nn * s_ff - s_nf * s_nf;
  if (!(std::abs(det) > 1e-12 * s_nn * s_ff)) {
    throw CalibrationError("ON and OFF counts are collinear; thresholds are not separable");
  }
  CalibrationResult r;
  r.c_on = (s_ln * s_ff - s_nf * s_lf) / det;
  r.c_off = (s_nf * s_ln - s_nn * s_lf) / det;
  if (!(r.c_on > 0.0) || !(r.c_off > 0.0)) {
    throw CalibrationError("calibration failed: non-positive thresholds (c_on=" +
                           format_double(r.c_on) + ", c_off=" + format_double(r.c_off) + ")");
  }
  double sse = 0.0;
  for (const auto & s : samples) {
    const double e = s.delta_log - r.c_on * s.n_on + r.c_off * s.n_off;
    sse += e * e;
  }
  r.n_samples = samples.size();
  r.residual = samples.empty() ? 0.0 : std::sqrt(sse / static_cast<double>(samples.size()));
  return r;
}

CalibrationResult calibrate(const Dataset & data, const CalibrationOptions & opts)
{
  const auto & frames = data.frames;
  if (frames.size() < 2) throw CalibrationError("calibration needs at least 2 frames");
  if (data.events.empty()) throw CalibrationError("calibration needs events; the stream is empty");

  const LogConvention log(opts.log_offset);
  const auto gain = GainParams::make(1.0, 0.1, opts.kappa_fraction, opts.log_offset);
  const std::size_t n_px = static_cast<std::size_t>(data.width) * data.height;

  std::vector<CountSample> samples;
  std::vector<int> on(n_px), off(n_px);
  std::size_t intervals = 0;
  auto ev = data.events.begin();
  const auto ev_end = data.events.end();
  for (std::size_t j = 0; j + 1 < frames.size(); ++j) {
    const double t0 = frames[j].t - opts.frame_time_offset;
    const double t1 = frames[j + 1].t - opts.frame_time_offset;
    std::fill(on.begin(), on.end(), 0);
    std::fill(off.begin(), off.end(), 0);
    while (ev != ev_end && ev->t < t0) ++ev;
    for (; ev != ev_end && ev->t < t1; ++ev) {
      const std::size_t i = static_cast<std::size_t>(ev->y) * data.width + ev->x;
      (ev->polarity == Polarity::On ? on : off)[i]++;
    }
    bool used = false;
    for (std::size_t i = 0; i < n_px; ++i) {
      const double a = log.to_log(frames[j].pixels[i]);
      const double b = log.to_log(frames[j + 1].pixels[i]);
      if (a < gain.l1 || a > gain.l2 || b < gain.l1 || b > gain.l2) continue;
      samples.push_back({b - a, static_cast<double>(on[i]), static_cast<double>(off[i])});
      used = true;
    }
    if (used) ++intervals;
  }
  auto r = fit_thresholds(samples);
  r.n_intervals = intervals;
  return r;
}

}  // namespace evcf
