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

#include <doctest.h>

#include <cmath>

#include "evcf/calibration.hpp"
#include "evcf/errors.hpp"
#include "evcf/simulator.hpp"
#include "scenes.hpp"

using namespace evcf;

namespace
{
Dataset simulated(double c, double noise, std::size_t stride, double phase = 0.0)
{
  const auto gt = scenes::calibration_target(48, 48, 2.0, phase);
  SimulationConfig sc;
  sc.c_on = c;
  sc.c_off = c;
  sc.noise_fraction = noise;
  sc.seed = 99;
  auto events = inject_noise(frames_to_events(gt, sc), gt[0].width, gt[0].height, sc);
  return make_dataset(std::move(events), scenes::every_nth(gt, stride));
}
}  // namespace

TEST_CASE("single sample with only ON events leaves c_off unidentifiable")
{
  const std::vector<CountSample> s{{0.3, 2, 0}};
  try {
    fit_thresholds(s);
    FAIL("expected an error");
  } catch (const CalibrationError & e) {
    const std::string msg = e.what();
    CHECK(msg.find("c_off") != std::string::npos);
    CHECK(msg.find("0.15") != std::string::npos);
  }
}

TEST_CASE("exact linear data is recovered exactly")
{
  std::vector<CountSample> s;
  for (int on = 0; on < 5; ++on)
    for (int off = 0; off < 4; ++off) s.push_back({0.12 * on - 0.2 * off, double(on), double(off)});
  const auto r = fit_thresholds(s);
  CHECK(r.c_on == doctest::Approx(0.12).epsilon(1e-12));
  CHECK(r.c_off == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(r.residual < 1e-12);
}

TEST_CASE("property: thresholds scale linearly with the log changes")
{
  std::vector<CountSample> s;
  for (int i = 0; i < 40; ++i) {
    const double on = i % 7, off = (i * 3) % 5;
    s.push_back({0.15 * on - 0.11 * off + 0.01 * std::sin(i), on, off});
  }
  const auto base = fit_thresholds(s);
  for (double k : {0.5, 2.0, 7.5}) {
    auto scaled = s;
    for (auto & x : scaled) x.delta_log *= k;
    const auto r = fit_thresholds(scaled);
    CHECK(r.c_on == doctest::Approx(k * base.c_on).epsilon(1e-12));
    CHECK(r.c_off == doctest::Approx(k * base.c_off).epsilon(1e-12));
  }
}

TEST_CASE("degenerate systems are reported")
{
  CHECK_THROWS_AS(fit_thresholds(std::vector<CountSample>{{0.0, 0, 0}}), CalibrationError);
  CHECK_THROWS_AS(fit_thresholds(std::vector<CountSample>{{-0.2, 0, 2}}), CalibrationError);
  CHECK_THROWS_AS(fit_thresholds(std::vector<CountSample>{{0.2, 1, 1}, {0.4, 2, 2}}),
                  CalibrationError);  // collinear
  CHECK_THROWS_AS(fit_thresholds(std::vector<CountSample>{{-0.3, 1, 0}, {0.3, 0, 1}}),
                  CalibrationError);  // negative solution
}

TEST_CASE("calibrate preconditions")
{
  const std::vector<Frame> two{Frame(0.0, 2, 2, std::uint8_t{50}), Frame(0.1, 2, 2, std::uint8_t{50})};
  CHECK_THROWS_AS(calibrate(make_dataset({}, two)), CalibrationError);
  CHECK_THROWS_AS(calibrate(make_dataset({{0.05, 0, 0, Polarity::On}}, {two[0]})), CalibrationError);
}

TEST_CASE("noiseless simulator output: thresholds within 5%")
{
  for (double phase : {0.0, 1.3, 2.9}) {
    const auto data = simulated(0.15, 0.0, scenes::kCalibrationStride, phase);
    const auto r = calibrate(data);
    CHECK(std::abs(r.c_on - 0.15) < 0.05 * 0.15);
    CHECK(std::abs(r.c_off - 0.15) < 0.05 * 0.15);
    CHECK(r.n_intervals == data.frames.size() - 1);
  }
}

TEST_CASE("5% noise events: thresholds within 15%")
{
  const auto r = calibrate(simulated(0.15, 0.05, scenes::kCalibrationStride));
  CHECK(std::abs(r.c_on - 0.15) < 0.15 * 0.15);
  CHECK(std::abs(r.c_off - 0.15) < 0.15 * 0.15);
}

TEST_CASE("short frame intervals bias the fit towards zero")
{
  // Few events per interval: the quantisation residual is correlated with the counts.
  const auto dense = calibrate(simulated(0.15, 0.0, 1));
  const auto sparse = calibrate(simulated(0.15, 0.0, scenes::kCalibrationStride));
  CHECK(dense.c_on < 0.5 * 0.15);
  CHECK(dense.c_on < sparse.c_on);
  CHECK(dense.c_off < sparse.c_off);
}

TEST_CASE("saturated pixels are excluded")
{
  // Pixel 0 is saturated at 255 in both frames and fires events that would
  // otherwise pull c_on down; pixel 1 supplies the signal.
  std::vector<Event> ev;
  for (int i = 0; i < 9; ++i) ev.push_back({0.01 + 0.001 * i, 0, 0, Polarity::On});
  ev.push_back({0.02, 1, 0, Polarity::On});
  ev.push_back({0.03, 1, 0, Polarity::On});
  ev.push_back({0.06, 1, 0, Polarity::Off});
  std::vector<Frame> fr{Frame(0.0, 2, 1, std::vector<std::uint8_t>{255, 60}),
                        Frame(0.05, 2, 1, std::vector<std::uint8_t>{255, 90}),
                        Frame(0.1, 2, 1, std::vector<std::uint8_t>{255, 70})};
  const auto r = calibrate(make_dataset(ev, fr));
  const LogConvention log(0.01);
  CHECK(r.c_on == doctest::Approx((log.to_log(90) - log.to_log(60)) / 2));
  CHECK(r.c_off == doctest::Approx(log.to_log(90) - log.to_log(70)));
}
