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

#ifndef EVCF_METRICS_HPP
#define EVCF_METRICS_HPP

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "evcf/event_model.hpp"

namespace evcf
{
class ReconstructionSession;

struct MatchedPair
{
  std::size_t gt_index;
  std::size_t recon_index;
};

/// Pairs every ground-truth time with the closest reconstruction time; ties
/// go to the earlier reconstruction. Both inputs must be sorted.
std::vector<MatchedPair> match_timestamps(std::span<const double> gt_times,
                                          std::span<const double> recon_times);

/// Mean absolute 8-bit difference as a percentage of full range.
double photometric_error(const Frame & a, const Frame & b);

struct SsimParams
{
  int window{11};
  double sigma{1.5};
  double k1{0.01};
  double k2{0.03};
  double dynamic_range{255.0};
};

/// Mean SSIM over all fully contained Gaussian windows.
double ssim(const Frame & a, const Frame & b, const SsimParams & params = {});

struct PairScore
{
  double t{0.0};        // ground-truth timestamp
  double recon_t{0.0};  // matched reconstruction timestamp
  double photometric_error{0.0};
  double ssim{0.0};
};

struct EvaluationReport
{
  std::vector<PairScore> pairs;
  double mean_photometric_error{0.0};
  double std_photometric_error{0.0};
  double mean_ssim{0.0};
  double std_ssim{0.0};
};

/// Scores each ground-truth frame against its closest reconstruction.
EvaluationReport evaluate(std::span<const Frame> gt_frames, std::span<const Frame> recon_frames);

/// Queries `session` at `query_times` (nondecreasing), exports to 8-bit and
/// scores against the ground truth.
EvaluationReport evaluate(std::span<const Frame> gt_frames, ReconstructionSession & session,
                          std::span<const double> query_times);

/// `t,photometric,ssim` rows, then `# mean,...` and `# std,...` footer rows.
void write_report_csv(const EvaluationReport & report, std::ostream & out);

}  // namespace evcf

#endif  // EVCF_METRICS_HPP
