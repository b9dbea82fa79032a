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

#include "evcf/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string_view>

#include "evcf/calibration.hpp"
#include "evcf/errors.hpp"
#include "evcf/metrics.hpp"
#include "evcf/session.hpp"
#include "evcf/simulator.hpp"
#include "evcf/stream_io.hpp"

namespace evcf::cli
{
namespace fs = std::filesystem;

namespace
{
constexpr const char * kFilterKeys[] = {"alpha1", "lambda", "kappa_fraction", "c_on",
                                         "c_off", "log_offset", "init_from_first_frame",
                                         "width", "height"};
constexpr const char * kSimKeys[] = {"c_on", "c_off", "log_offset", "noise_fraction",
                                      "subsample_rate", "frame_delay", "truncation_fraction"};

// `--key value` overrides mirrored from the config file keys.
struct Overrides
{
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option *> options;

  template <std::size_t N>
  void add(CLI::App * app, const char * const (&keys)[N])
  {
    for (const char * key : keys) {
      options[key] = app->add_option(std::string("--") + key, values[key], "config override");
    }
  }

  KeyValues merge(const std::string & config_path) const
  {
    KeyValues kv = config_path.empty() ? KeyValues{} : read_key_values(config_path);
    for (const auto & [key, opt] : options) {
      if (opt->count() > 0) kv[key] = values.at(key);
    }
    check_known_keys(kv);
    return kv;
  }
};

std::vector<double> parse_time_list(const std::string & text)
{
  std::vector<double> times;
  std::string_view rest = text;
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const auto tok = rest.substr(0, comma);
    if (!tok.empty()) times.push_back(parse_double(tok));
    rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
  }
  if (times.empty()) throw ConfigError("--export-times is empty");
  if (!std::is_sorted(times.begin(), times.end())) {
    throw ConfigError("--export-times must be nondecreasing");
  }
  return times;
}

std::vector<double> rate_schedule(double rate, double start, double end)
{
  if (!(rate > 0.0) || !std::isfinite(rate)) throw ConfigError("--export-rate must be > 0");
  if (end < start) throw ConfigError("export window ends before it starts");
  std::vector<double> times;
  const double eps = 1e-9 * std::max(1.0, std::abs(end));
  for (std::size_t k = 0;; ++k) {
    const double t = start + static_cast<double>(k) / rate;
    if (t > end + eps) break;
    times.push_back(t);
  }
  return times;
}

void ensure_dir(const fs::path & dir)
{
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory '" + dir.string() + "': " + ec.message());
}

struct ReconstructArgs
{
  std::string events;
  std::string frames;
  std::string config;
  std::string out;
  std::string mode;
  double export_rate{0.0};
  std::string export_times;
  std::optional<double> export_start;
  std::optional<double> export_end;
  std::optional<std::uint64_t> seed;
  Overrides overrides;
};

void do_reconstruct(const ReconstructArgs & a, std::ostream & err)
{
  Config cfg;
  apply_key_values(cfg, a.overrides.merge(a.config));
  if (!a.mode.empty()) cfg.mode = parse_mode(a.mode);

  std::vector<Frame> frames;
  if (!a.frames.empty()) {
    frames = read_frames(fs::path(a.frames));
  }
  if (frames.empty() && cfg.mode != Mode::EventsOnly) {
    err << "evcf: no frames given, running in events_only mode\n";
    cfg.mode = Mode::EventsOnly;
  }
  cfg.validate();
  auto events = read_events_file(a.events);
  const Dataset data = make_dataset(std::move(events), std::move(frames), cfg.width, cfg.height);

  std::vector<double> times;
  if (!a.export_times.empty()) {
    times = parse_time_list(a.export_times);
  } else {
    double first = 0.0;
    double last = 0.0;
    bool any = false;
    const auto extend = [&](double t) {
      first = any ? std::min(first, t) : t;
      last = any ? std::max(last, t) : t;
      any = true;
    };
    if (!data.events.empty()) {
      extend(data.events.front().t);
      extend(data.events.back().t);
    }
    if (!data.frames.empty()) {
      extend(data.frames.front().t);
      extend(data.frames.back().t);
    }
    times = rate_schedule(a.export_rate, a.export_start.value_or(first), a.export_end.value_or(last));
  }

  auto session = run(data, cfg);
  std::vector<Frame> images;
  images.reserve(times.size());
  for (double t : times) images.push_back(session.export_frame(t));

  const fs::path out(a.out);
  ensure_dir(out);
  write_frames(images, out / "index.txt");
  err << "evcf: reconstructed " << images.size() << " images from " << data.events.size()
      << " events and " << data.frames.size() << " frames (" << to_string(cfg.mode) << ")\n";
}

struct SimulateArgs
{
  std::string frames;
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  Overrides overrides;
};

void do_simulate(const SimulateArgs & a, std::ostream & err)
{
  SimulationConfig cfg;
  auto kv = a.overrides.merge(a.config);
  if (a.seed) kv["seed"] = std::to_string(*a.seed);
  apply_key_values(cfg, kv);
  cfg.validate();
  const auto gt = read_frames(fs::path(a.frames));
  const auto sim = simulate(gt, cfg);

  const fs::path out(a.out);
  ensure_dir(out);
  write_events_file(sim.events, out / "events.txt");
  ensure_dir(out / "frames");
  write_frames(sim.frames, out / "frames" / "index.txt");
  err << "evcf: simulated " << sim.events.size() << " events and " << sim.frames.size()
      << " degraded frames from " << gt.size() << " ground-truth frames\n";
}

struct CalibrateArgs
{
  std::string events;
  std::string frames;
  std::string config;
  std::string write_config;
  double frame_offset{0.0};
  Overrides overrides;
};

void do_calibrate(const CalibrateArgs & a, std::ostream & out, std::ostream & err)
{
  Config cfg;
  apply_key_values(cfg, a.overrides.merge(a.config));
  auto frames = read_frames(fs::path(a.frames));
  auto events = read_events_file(a.events);
  const Dataset data = make_dataset(std::move(events), std::move(frames), cfg.width, cfg.height);

  CalibrationOptions opts;
  opts.log_offset = cfg.log_offset;
  opts.kappa_fraction = cfg.kappa_fraction;
  opts.frame_time_offset = a.frame_offset;
  const auto r = calibrate(data, opts);
  out << "c_on = " << format_double(r.c_on) << '\n'
      << "c_off = " << format_double(r.c_off) << '\n'
      << "residual = " << format_double(r.residual) << '\n'
      << "intervals = " << r.n_intervals << '\n';
  if (!a.write_config.empty()) {
    cfg.c_on = r.c_on;
    cfg.c_off = r.c_off;
    cfg.validate();
    std::ofstream f(a.write_config, std::ios::trunc);
    if (!f) throw IoError("cannot open '" + a.write_config + "' for writing");
    write_config(cfg, f);
    err << "evcf: wrote " << a.write_config << '\n';
  }
}

struct EvaluateArgs
{
  std::string gt;
  std::string recon;
  std::string out;
};

void do_evaluate(const EvaluateArgs & a, std::ostream & out, std::ostream & err)
{
  const auto gt = read_frames(fs::path(a.gt));
  const auto recon = read_frames(fs::path(a.recon));
  const auto report = evaluate(gt, recon);
  if (a.out.empty()) {
    write_report_csv(report, out);
  } else {
    std::ofstream f(a.out, std::ios::trunc);
    if (!f) throw IoError("cannot open '" + a.out + "' for writing");
    write_report_csv(report, f);
  }
  err << "evcf: " << report.pairs.size() << " pairs, photometric error "
      << report.mean_photometric_error << " +- " << report.std_photometric_error << " %, SSIM "
      << report.mean_ssim << " +- " << report.std_ssim << '\n';
}

}  // namespace

int run(const std::vector<std::string> & args, std::ostream & out, std::ostream & err)
{
  CLI::App app{"Event / frame complementary-filter reconstruction toolkit", "evcf"};
  app.require_subcommand(1);

  ReconstructArgs rec;
  auto * r = app.add_subcommand("reconstruct", "reconstruct images from events and frames");
  r->add_option("--events", rec.events, "events file (t x y p)")->required();
  r->add_option("--frames", rec.frames, "frames index (t filename)");
  r->add_option("--config", rec.config, "key = value config file");
  r->add_option("--out", rec.out, "output directory")->required();
  r->add_option("--mode", rec.mode, "fusion | events_only | direct_integration");
  auto * rate = r->add_option("--export-rate", rec.export_rate, "export rate in Hz");
  auto * list = r->add_option("--export-times", rec.export_times, "comma-separated export times");
  rate->excludes(list);
  r->add_option("--export-start", rec.export_start, "first export time for --export-rate");
  r->add_option("--export-end", rec.export_end, "last export time for --export-rate");
  r->add_option("--seed", rec.seed, "accepted for symmetry; reconstruction is deterministic");
  rec.overrides.add(r, kFilterKeys);

  SimulateArgs sim;
  auto * s = app.add_subcommand("simulate", "convert ground-truth frames to events and degraded frames");
  s->add_option("--frames", sim.frames, "ground-truth frames index")->required();
  s->add_option("--config", sim.config, "key = value config file");
  s->add_option("--out", sim.out, "output directory")->required();
  s->add_option("--seed", sim.seed, "noise RNG seed");
  sim.overrides.add(s, kSimKeys);

  CalibrateArgs cal;
  auto * c = app.add_subcommand("calibrate", "estimate ON/OFF contrast thresholds");
  c->add_option("--events", cal.events, "events file")->required();
  c->add_option("--frames", cal.frames, "frames index")->required();
  c->add_option("--config", cal.config, "key = value config file");
  c->add_option("--write-config", cal.write_config, "write a config with the fitted thresholds");
  c->add_option("--frame-offset", cal.frame_offset, "seconds subtracted from frame timestamps");
  cal.overrides.add(c, kFilterKeys);

  EvaluateArgs ev;
  auto * e = app.add_subcommand("evaluate", "score reconstructions against ground truth");
  e->add_option("--gt", ev.gt, "ground-truth frames index")->required();
  e->add_option("--recon", ev.recon, "reconstruction frames index")->required();
  e->add_option("--out", ev.out, "report file (default: stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError & pe) {
    if (pe.get_exit_code() == 0) {
      out << app.help();
      return kOk;
    }
    err << "evcf: " << pe.what() << '\n';
    return kValidationError;
  }

  if (r->parsed() && rec.export_times.empty() && rate->count() == 0) {
    err << "evcf: reconstruct needs --export-rate or --export-times\n";
    return kValidationError;
  }

  try {
    if (r->parsed()) do_reconstruct(rec, err);
    if (s->parsed()) do_simulate(sim, err);
    if (c->parsed()) do_calibrate(cal, out, err);
    if (e->parsed()) do_evaluate(ev, out, err);
  } catch (const IoError & ex) {
    err << "evcf: " << ex.what() << '\n';
    return kIoError;
  } catch (const Error & ex) {
    err << "evcf: " << ex.what() << '\n';
    return kValidationError;
  }
  return kOk;
}

int run(int argc, const char * const * argv, std::ostream & out, std::ostream & err)
{
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace evcf::cli
