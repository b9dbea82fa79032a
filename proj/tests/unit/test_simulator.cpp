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

#include <algorithm>
#include <cmath>
#include <random>

#include "evcf/errors.hpp"
#include "evcf/simulator.hpp"
#include "scenes.hpp"

using namespace evcf;

namespace
{
std::vector<Frame> ramp(std::uint8_t from, std::uint8_t to, double t_end = 1.0)
{
  return {Frame(0.0, 1, 1, from), Frame(t_end, 1, 1, to)};
}
}  // namespace

TEST_CASE("linear threshold crossings on a rising pixel")
{
  const LogConvention log(0.01);
  const double rise = log.to_log(200) - log.to_log(40);
  SimulationConfig cfg;
  cfg.c_on = rise / 3.5;  // the rise spans 3.5 thresholds
  const auto ev = frames_to_events(ramp(40, 200, 2.0), cfg);
  REQUIRE(ev.size() == 3);
  for (int k = 0; k < 3; ++k) {
    CHECK(ev[k].polarity == Polarity::On);
    CHECK(ev[k].t == doctest::Approx((k + 1) / 3.5 * 2.0).epsilon(1e-12));
  }
}

TEST_CASE("falling pixel and constant pixel")
{
  const LogConvention log(0.01);
  SimulationConfig cfg;
  cfg.c_off = (log.to_log(180) - log.to_log(90)) / 2.5;
  const auto ev = frames_to_events(ramp(180, 90), cfg);
  REQUIRE(ev.size() == 2);
  CHECK(ev[0].polarity == Polarity::Off);
  CHECK(frames_to_events(ramp(77, 77), cfg).empty());
}

TEST_CASE("preconditions")
{
  SimulationConfig cfg;
  CHECK_THROWS_AS(frames_to_events(std::vector<Frame>{Frame(0.0, 1, 1, std::uint8_t{0})}, cfg),
                  ConfigError);
  CHECK_THROWS_AS(frames_to_events(ramp(1, 2, 0.0), cfg), OrderError);
  const std::vector<Frame> mixed{Frame(0.0, 1, 1, std::uint8_t{0}), Frame(1.0, 2, 1, std::uint8_t{0})};
  CHECK_THROWS_AS(frames_to_events(mixed, cfg), DimensionError);
}

TEST_CASE("property: quantisation bound and timestamps inside the span")
{
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int scene = 0; scene < 5; ++scene) {
    scenes::TextureParams tp;
    tp.width = 16;
    tp.height = 16;
    tp.duration = 0.5;
    tp.vx = 40 * u(rng) - 20;
    tp.phase = 6 * u(rng);
    const auto gt = scenes::moving_texture(tp);
    SimulationConfig cfg;
    cfg.c_on = 0.05 + 0.25 * u(rng);
    cfg.c_off = 0.05 + 0.25 * u(rng);
    const auto ev = frames_to_events(gt, cfg);
    CHECK(std::is_sorted(ev.begin(), ev.end(), [](auto & a, auto & b) { return a.t < b.t; }));
    for (const auto & e : ev) {
      REQUIRE(e.t > gt.front().t);
      REQUIRE(e.t <= gt.back().t);
    }
    const LogConvention log(cfg.log_offset);
    std::vector<double> sum(256, 0.0);
    std::size_t i = 0;
    for (const auto & f : gt) {
      for (; i < ev.size() && ev[i].t <= f.t; ++i) {
        sum[ev[i].y * 16 + ev[i].x] += ev[i].polarity == Polarity::On ? cfg.c_on : -cfg.c_off;
      }
      for (int p = 0; p < 256; ++p) {
        const double err = log.to_log(gt.front().pixels[p]) + sum[p] - log.to_log(f.pixels[p]);
        REQUIRE(std::abs(err) < std::max(cfg.c_on, cfg.c_off));
      }
    }
  }
}

TEST_CASE("property: halving the threshold doubles events on linear ramps")
{
  for (auto [a, b] : {std::pair{10, 250}, std::pair{30, 100}, std::pair{0, 255}}) {
    const auto frames = ramp(static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b));
    SimulationConfig cfg;
    cfg.c_on = 0.2;
    const auto n1 = frames_to_events(frames, cfg).size();
    cfg.c_on = 0.1;
    const auto n2 = frames_to_events(frames, cfg).size();
    CHECK(n2 >= 2 * n1);
    CHECK(n2 <= 2 * n1 + 1);
  }
}

TEST_CASE("noise injection adds round(fraction * N) events deterministically")
{
  std::vector<Event> ev;
  for (int i = 0; i < 100; ++i) ev.push_back({0.01 * i, 1, 1, Polarity::On});
  SimulationConfig cfg;
  cfg.noise_fraction = 0.05;
  cfg.seed = 4;
  const auto noisy = inject_noise(ev, 8, 8, cfg);
  CHECK(noisy.size() == 105);
  CHECK(std::is_sorted(noisy.begin(), noisy.end(), [](auto & a, auto & b) { return a.t < b.t; }));
  for (const auto & e : noisy) {
    CHECK(e.t >= 0.0);
    CHECK(e.t <= 0.99);
    CHECK(e.x < 8);
  }
  CHECK(inject_noise(ev, 8, 8, cfg) == noisy);
  cfg.seed = 5;
  CHECK(inject_noise(ev, 8, 8, cfg) != noisy);
  cfg.noise_fraction = 0.0;
  CHECK(inject_noise(ev, 8, 8, cfg) == ev);
}

TEST_CASE("degrade_frames truncates, subsamples and delays")
{
  std::vector<Frame> gt;
  for (int k = 0; k < 168; ++k) {
    gt.emplace_back(k / 168.0, 3, 1, std::vector<std::uint8_t>{10, 250, 100});
  }
  const SimulationConfig cfg;
  const auto out = degrade_frames(gt, cfg);
  REQUIRE(out.size() == 20);
  CHECK(out[0].pixels == std::vector<std::uint8_t>{64, 191, 100});
  CHECK(out[0].t == doctest::Approx(0.05));
  // grid point 0.1 -> nearest 168 Hz frame is 17/168 = 0.1012
  CHECK(out[2].t == doctest::Approx(17 / 168.0 + 0.05));
  for (std::size_t i = 1; i < out.size(); ++i) {
    CHECK(out[i].t - out[i - 1].t == doctest::Approx(0.05).epsilon(0.2));
  }

  std::vector<Frame> exact{Frame(0.0, 1, 1, std::uint8_t{0}), Frame(0.1, 1, 1, std::uint8_t{0}),
                           Frame(0.2, 1, 1, std::uint8_t{0})};
  SimulationConfig ten;
  ten.subsample_rate = 10.0;
  const auto kept = degrade_frames(exact, ten);
  REQUIRE(kept.size() == 3);
  CHECK(kept[1].t == doctest::Approx(0.150));

  SimulationConfig fast;
  fast.subsample_rate = 500.0;
  CHECK_THROWS_AS(degrade_frames(gt, fast), ConfigError);
}
