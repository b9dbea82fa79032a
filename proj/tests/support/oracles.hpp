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

// Independent reference implementations used only by the tests. Nothing here
// calls into the library's numerical code paths.

#ifndef EVCF_TESTS_ORACLES_HPP
#define EVCF_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

namespace evcf::oracle
{
/// One pixel driven by events and frames, integrated numerically.
struct PixelScenario
{
  double alpha1{6.283185307179586};
  double lambda{0.1};
  double kappa_fraction{0.05};
  double log_offset{0.01};
  double c_on{0.1};
  double c_off{0.1};
  bool init_from_first_frame{false};
  bool events_only{false};

  struct Ev
  {
    double t;
    int polarity;
  };
  struct Fr
  {
    double t;
    std::uint8_t pixel;
  };
  std::vector<Ev> events;  // sorted
  std::vector<Fr> frames;  // sorted, strictly increasing
};

inline double log_of(std::uint8_t p, double offset) { return std::log(p / 255.0 + offset); }

/// Piecewise gain written straight from its definition.
inline double gain_of(double lref, const PixelScenario & s)
{
  const double lmin = std::log(s.log_offset);
  const double lmax = std::log(1.0 + s.log_offset);
  const double k = s.kappa_fraction * (lmax - lmin);
  const double l1 = lmin + k;
  const double l2 = lmax - k;
  const double a1 = s.alpha1;
  if (lref < lmin || lref > lmax) return s.lambda * a1;
  if (lref < l1) return s.lambda * a1 + (1 - s.lambda) * a1 * (lref - lmin) / (l1 - lmin);
  if (lref <= l2) return a1;
  return s.lambda * a1 + (1 - s.lambda) * a1 * (lref - lmax) / (l2 - lmax);
}

enum class Stepper { Euler, Rk4 };

/// Integrates dL/dt = E - alpha (L - Lref) from L(0) = 0 with fixed step dt,
/// treating events as jumps and frames as switches of (Lref, alpha). At each
/// probe time the state after all inputs at that instant is recorded; at
/// equal times frames precede events.
inline std::vector<double> integrate(const PixelScenario & s, const std::vector<double> & probes,
                                     double dt, Stepper stepper = Stepper::Rk4)
{
  double L = 0.0;
  double lref = 0.0;
  double a = s.alpha1;
  double t = 0.0;
  std::size_t ie = 0, jf = 0;
  std::vector<double> out;
  out.reserve(probes.size());

  const auto f = [&](double l) { return -a * (l - lref); };
  const auto advance = [&](double t_to) {
    while (t < t_to) {
      const double h = std::min(dt, t_to - t);
      if (stepper == Stepper::Euler) {
        L += h * f(L);
      } else {
        const double k1 = f(L);
        const double k2 = f(L + 0.5 * h * k1);
        const double k3 = f(L + 0.5 * h * k2);
        const double k4 = f(L + h * k3);
        L += h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
      }
      t = (t_to - t <= dt) ? t_to : t + h;
    }
  };

  for (double tp : probes) {
    while (true) {
      const double te = ie < s.events.size() ? s.events[ie].t : INFINITY;
      const double tf = (!s.events_only && jf < s.frames.size()) ? s.frames[jf].t : INFINITY;
      const double tn = std::min(te, tf);
      if (tn > tp) break;
      advance(tn);
      if (tf <= te) {
        lref = log_of(s.frames[jf].pixel, s.log_offset);
        a = gain_of(lref, s);
        if (jf == 0 && s.init_from_first_frame) L = lref;
        ++jf;
      } else {
        L += s.events[ie].polarity > 0 ? s.c_on : -s.c_off;
        ++ie;
      }
    }
    advance(tp);
    out.push_back(L);
  }
  return out;
}

/// SSIM by explicit per-window sums with a 2-D Gaussian and two-pass moments.
inline double ssim_direct(const std::vector<std::uint8_t> & a, const std::vector<std::uint8_t> & b,
                          int w, int h, int win = 11, double sigma = 1.5)
{
  std::vector<double> g(static_cast<std::size_t>(win * win));
  double gs = 0.0;
  const double c = (win - 1) / 2.0;
  for (int j = 0; j < win; ++j) {
    for (int i = 0; i < win; ++i) {
      const double v = std::exp(-((i - c) * (i - c) + (j - c) * (j - c)) / (2 * sigma * sigma));
      g[j * win + i] = v;
      gs += v;
    }
  }
  for (auto & v : g) v /= gs;
  const double C1 = (0.01 * 255) * (0.01 * 255);
  const double C2 = (0.03 * 255) * (0.03 * 255);
  double total = 0.0;
  int count = 0;
  for (int y0 = 0; y0 + win <= h; ++y0) {
    for (int x0 = 0; x0 + win <= w; ++x0) {
      double mx = 0, my = 0;
      for (int j = 0; j < win; ++j)
        for (int i = 0; i < win; ++i) {
          const double wt = g[j * win + i];
          mx += wt * a[(y0 + j) * w + x0 + i];
          my += wt * b[(y0 + j) * w + x0 + i];
        }
      double vx = 0, vy = 0, cxy = 0;
      for (int j = 0; j < win; ++j)
        for (int i = 0; i < win; ++i) {
          const double wt = g[j * win + i];
          const double dx = a[(y0 + j) * w + x0 + i] - mx;
          const double dy = b[(y0 + j) * w + x0 + i] - my;
          vx += wt * dx * dx;
          vy += wt * dy * dy;
          cxy += wt * dx * dy;
        }
      total += ((2 * mx * my + C1) * (2 * cxy + C2)) / ((mx * mx + my * my + C1) * (vx + vy + C2));
      ++count;
    }
  }
  return total / count;
}

}  // namespace evcf::oracle

#endif  // EVCF_TESTS_ORACLES_HPP
