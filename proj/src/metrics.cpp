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

#include "evcf/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <ostream>
#include <string>

#include "evcf/errors.hpp"
#include "evcf/session.hpp"
#include "evcf/stream_io.hpp"

namespace evcf
{
std::vector<MatchedPair> match_timestamps(std::span<const double> gt_times,
                                          std::span<const double> recon_times)
{
  if (gt_times.empty() || recon_times.empty()) {
    throw ConfigError("timestamp matching needs non-empty inputs");
  }
  std::vector<MatchedPair> pairs;
  pairs.reserve(gt_times.size());
  for (std::size_t i = 0; i < gt_times.size(); ++i) {
    const double t = gt_times[i];
    const auto it = std::lower_bound(recon_times.begin(), recon_times.end(), t);
    std::size_t j = static_cast<std::size_t>(it - recon_times.begin());
    if (j == recon_times.size()) {
      j = recon_times.size() - 1;
    } else if (j > 0 && t - recon_times[j - 1] <= recon_times[j] - t) {
      --j;
    }
    pairs.push_back({i, j});
  }
  return pairs;
}

namespace
{
void check_same_size(const Frame & a, const Frame & b)
{
  if (a.width != b.width || a.height != b.height) {
    throw DimensionError("cannot compare " + std::to_string(a.width) + "x" +
                         std::to_string(a.height) + " with " + std::to_string(b.width) + "x" +
                         std::to_string(b.height));
  }
}

std::vector<double> gaussian_kernel(int size, double sigma)
{
  std::vector<double> k(static_cast<std::size_t>(size));
  const double c = (size - 1) / 2.0;
  double sum = 0.0;
  for (int i = 0; i < size; ++i) {
    const double d = i - c;
    k[i] = std::exp(-d * d / (2.0 * sigma * sigma));
    sum += k[i];
  }
  for (auto & v : k) v /= sum;
  return k;
}

// Separable 'valid' correlation: output is (w - n + 1) x (h - n + 1).
std::vector<double> filter_valid(const std::vector<double> & img, int w, int h,
                                 const std::vector<double> & k)
{
  const int n = static_cast<int>(k.size());
  const int ow = w - n + 1;
  const int oh = h - n + 1;
  std::vector<double> tmp(static_cast<std::size_t>(ow) * h);
  for (int y = 0; y < h; ++y) {
    const double * row = img.data() + static_cast<std::size_t>(y) * w;
    for (int x = 0; x < ow; ++x) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += k[i] * row[x + i];
      tmp[static_cast<std::size_t>(y) * ow + x] = s;
    }
  }
  std::vector<double> out(static_cast<std::size_t>(ow) * oh);
  for (int y = 0; y < oh; ++y) {
    for (int x = 0; x < ow; ++x) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += k[i] * tmp[static_cast<std::size_t>(y + i) * ow + x];
      out[static_cast<std::size_t>(y) * ow + x] = s;
    }
  }
  return out;
}

void mean_std(const std::vector<PairScore> & pairs, double PairScore::*field, double & mean,
              double & sd)
{
  mean = 0.0;
  sd = 0.0;
  if (pairs.empty()) return;
  for (const auto & p : pairs) mean += p.*field;
  mean /= static_cast<double>(pairs.size());
  double var = 0.0;
  for (const auto & p : pairs) var += (p.*field - mean) * (p.*field - mean);
  sd = std::sqrt(var / static_cast<double>(pairs.size()));
}
}  // namespace

double photometric_error(const Frame & a, const Frame & b)
{
  check_same_size(a, b);
  if (a.pixels.empty()) return 0.0;
  std::uint64_t sum = 0;
  for (std::size_t i = 0; i < a.pixels.size(); ++i) {
    sum += static_cast<std::uint64_t>(std::abs(int{a.pixels[i]} - int{b.pixels[i]}));
  }
  return static_cast<double>(sum) / (255.0 * static_cast<double>(a.pixels.size())) * 100.0;
}

double ssim(const Frame & a, const Frame & b, const SsimParams & p)
{
  check_same_size(a, b);
  if (a.width < p.window || a.height < p.window) {
    throw DimensionError("SSIM needs images of at least " + std::to_string(p.window) + "x" +
                         std::to_string(p.window));
  }
  const int w = a.width;
  const int h = a.height;
  const std::size_t n = a.pixels.size();
  std::vector<double> x(n), y(n), xx(n), yy(n), xy(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = a.pixels[i];
    y[i] = b.pixels[i];
    xx[i] = x[i] * x[i];
    yy[i] = y[i] * y[i];
    xy[i] = x[i] * y[i];
  }
  const auto k = gaussian_kernel(p.window, p.sigma);
  const auto mx = filter_valid(x, w, h, k);
  const auto my = filter_valid(y, w, h, k);
  const auto sxx = filter_valid(xx, w, h, k);
  const auto syy = filter_valid(yy, w, h, k);
  const auto sxy = filter_valid(xy, w, h, k);
  const double c1 = (p.k1 * p.dynamic_range) * (p.k1 * p.dynamic_range);
  const double c2 = (p.k2 * p.dynamic_range) * (p.k2 * p.dynamic_range);
  double total = 0.0;
  for (std::size_t i = 0; i < mx.size(); ++i) {
    const double vx = sxx[i] - mx[i] * mx[i];
    const double vy = syy[i] - my[i] * my[i];
    const double cxy = sxy[i] - mx[i] * my[i];
    total += ((2.0 * mx[i] * my[i] + c1) * (2.0 * cxy + c2)) /
             ((mx[i] * mx[i] + my[i] * my[i] + c1) * (vx + vy + c2));
  }
  return total / static_cast<double>(mx.size());
}

EvaluationReport evaluate(std::span<const Frame> gt_frames, std::span<const Frame> recon_frames)
{
  std::vector<double> gt_t(gt_frames.size()), rc_t(recon_frames.size());
  std::transform(gt_frames.begin(), gt_frames.end(), gt_t.begin(), [](const Frame & f) { return f.t; });
  std::transform(recon_frames.begin(), recon_frames.end(), rc_t.begin(),
                 [](const Frame & f) { return f.t; });
  if (!std::is_sorted(rc_t.begin(), rc_t.end()) || !std::is_sorted(gt_t.begin(), gt_t.end())) {
    throw OrderError("evaluation inputs must be sorted by timestamp");
  }
  EvaluationReport report;
  for (const auto & m : match_timestamps(gt_t, rc_t)) {
    const auto & g = gt_frames[m.gt_index];
    const auto & r = recon_frames[m.recon_index];
    report.pairs.push_back({g.t, r.t, photometric_error(g, r), ssim(g, r)});
  }
  mean_std(report.pairs, &PairScore::photometric_error, report.mean_photometric_error,
           report.std_photometric_error);
  mean_std(report.pairs, &PairScore::ssim, report.mean_ssim, report.std_ssim);
  return report;
}

EvaluationReport evaluate(std::span<const Frame> gt_frames, ReconstructionSession & session,
                          std::span<const double> query_times)
{
  std::vector<Frame> recon;
  recon.reserve(query_times.size());
  for (double t : query_times) recon.push_back(session.export_frame(t));
  return evaluate(gt_frames, recon);
}

void write_report_csv(const EvaluationReport & report, std::ostream & out)
{
  out << "t,photometric,ssim\n";
  for (const auto & p : report.pairs) {
    out << format_double(p.t) << ',' << format_double(p.photometric_error) << ','
        << format_double(p.ssim) << '\n';
  }
  out << "# mean," << format_double(report.mean_photometric_error) << ','
      << format_double(report.mean_ssim) << '\n';
  out << "# std," << format_double(report.std_photometric_error) << ','
      << format_double(report.std_ssim) << '\n';
  out.flush();
  if (!out) throw IoError("failed writing evaluation report");
}

}  // namespace evcf
