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

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "evcf/calibration.hpp"
#include "evcf/errors.hpp"
#include "evcf/filter.hpp"
#include "evcf/metrics.hpp"
#include "evcf/session.hpp"
#include "evcf/simulator.hpp"
#include "evcf/stream_io.hpp"

namespace py = pybind11;
using namespace evcf;

namespace
{
using F64 = py::array_t<double, py::array::c_style | py::array::forcecast>;
using U8 = py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>;
using I64 = py::array_t<std::int64_t, py::array::c_style | py::array::forcecast>;

std::vector<Event> to_events(const F64 & t, const I64 & x, const I64 & y, const I64 & p)
{
  const auto n = static_cast<std::size_t>(t.size());
  if (static_cast<std::size_t>(x.size()) != n || static_cast<std::size_t>(y.size()) != n ||
      static_cast<std::size_t>(p.size()) != n) {
    throw DimensionError("t, x, y and p must have the same length");
  }
  const double * tp = t.data();
  const std::int64_t *xp = x.data(), *yp = y.data(), *pp = p.data();
  std::vector<Event> ev(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (xp[i] < 0 || yp[i] < 0 || xp[i] > 65535 || yp[i] > 65535) {
      throw DimensionError("event coordinate out of range at index " + std::to_string(i));
    }
    ev[i] = {tp[i], static_cast<std::uint16_t>(xp[i]), static_cast<std::uint16_t>(yp[i]),
             pp[i] > 0 ? Polarity::On : Polarity::Off};
  }
  return ev;
}

py::tuple from_events(const std::vector<Event> & ev)
{
  const auto n = static_cast<py::ssize_t>(ev.size());
  py::array_t<double> t(n);
  py::array_t<std::int64_t> x(n), y(n), p(n);
  auto tm = t.mutable_unchecked<1>();
  auto xm = x.mutable_unchecked<1>();
  auto ym = y.mutable_unchecked<1>();
  auto pm = p.mutable_unchecked<1>();
  for (py::ssize_t i = 0; i < n; ++i) {
    const auto & e = ev[static_cast<std::size_t>(i)];
    tm(i) = e.t;
    xm(i) = e.x;
    ym(i) = e.y;
    pm(i) = e.polarity == Polarity::On ? 1 : 0;
  }
  return py::make_tuple(t, x, y, p);
}

Frame to_frame(double t, const U8 & img)
{
  if (img.ndim() != 2) throw DimensionError("image must be 2-D (height, width)");
  const auto h = static_cast<int>(img.shape(0));
  const auto w = static_cast<int>(img.shape(1));
  return Frame(t, w, h, std::vector<std::uint8_t>(img.data(), img.data() + img.size()));
}

std::vector<Frame> to_frames(const F64 & times, const U8 & stack)
{
  if (stack.ndim() != 3) throw DimensionError("frames must be 3-D (n, height, width)");
  if (stack.shape(0) != times.size()) throw DimensionError("need one timestamp per frame");
  const auto h = static_cast<int>(stack.shape(1));
  const auto w = static_cast<int>(stack.shape(2));
  const auto plane = static_cast<std::size_t>(w) * static_cast<std::size_t>(h);
  std::vector<Frame> out;
  out.reserve(static_cast<std::size_t>(times.size()));
  for (py::ssize_t k = 0; k < times.size(); ++k) {
    const auto * src = stack.data() + static_cast<std::size_t>(k) * plane;
    out.emplace_back(times.data()[k], w, h, std::vector<std::uint8_t>(src, src + plane));
  }
  return out;
}

py::array_t<std::uint8_t> stack_frames(const std::vector<Frame> & frames, int w, int h)
{
  py::array_t<std::uint8_t> out({static_cast<py::ssize_t>(frames.size()), py::ssize_t(h), py::ssize_t(w)});
  auto * dst = out.mutable_data();
  for (const auto & f : frames) dst = std::copy(f.pixels.begin(), f.pixels.end(), dst);
  return out;
}

py::array_t<double> frame_times(const std::vector<Frame> & frames)
{
  py::array_t<double> out(static_cast<py::ssize_t>(frames.size()));
  for (std::size_t k = 0; k < frames.size(); ++k) out.mutable_data()[k] = frames[k].t;
  return out;
}

py::array_t<double> image_array(const LogImage & img)
{
  py::array_t<double> out({py::ssize_t(img.height), py::ssize_t(img.width)});
  std::copy(img.values.begin(), img.values.end(), out.mutable_data());
  return out;
}

LogImage to_log_image(double t, const F64 & values)
{
  if (values.ndim() != 2) throw DimensionError("log image must be 2-D (height, width)");
  return LogImage(t, static_cast<int>(values.shape(1)), static_cast<int>(values.shape(0)),
                  std::vector<double>(values.data(), values.data() + values.size()));
}

// Owns the dataset a session refers to.
class PySession
{
public:
  PySession(Dataset data, const Config & cfg)
  : data_(std::make_unique<Dataset>(std::move(data))), session_(run(*data_, cfg))
  {
  }
  ReconstructionSession & get() { return session_; }

private:
  std::unique_ptr<Dataset> data_;
  ReconstructionSession session_;
};

Dataset dataset(const F64 & t, const I64 & x, const I64 & y, const I64 & p,
                const std::optional<F64> & ftimes, const std::optional<U8> & frames, int w, int h)
{
  std::vector<Frame> fr;
  if (ftimes && frames) fr = to_frames(*ftimes, *frames);
  return make_dataset(to_events(t, x, y, p), std::move(fr), w, h);
}
}  // namespace

PYBIND11_MODULE(_evcf, m)
{
  m.doc() = "Continuous-time intensity estimation from events and frames";

  static py::exception<Error> error(m, "Error", PyExc_ValueError);
  static py::exception<IoError> io_error(m, "IoError", PyExc_OSError);
  py::register_exception_translator([](std::exception_ptr ep) {
    try {
      if (ep) std::rethrow_exception(ep);
    } catch (const IoError & e) {
      py::set_error(io_error, e.what());
    } catch (const Error & e) {
      py::set_error(error, e.what());
    }
  });

  py::enum_<Mode>(m, "Mode")
    .value("FUSION", Mode::Fusion)
    .value("EVENTS_ONLY", Mode::EventsOnly)
    .value("DIRECT_INTEGRATION", Mode::DirectIntegration);

  py::class_<Config>(m, "Config")
    .def(py::init<>())
    .def(py::init([](double c_on, double c_off, Mode mode) {
           Config c;
           c.c_on = c_on;
           c.c_off = c_off;
           c.mode = mode;
           return c;
         }),
         py::arg("c_on"), py::arg("c_off"), py::arg("mode") = Mode::Fusion)
    .def_readwrite("alpha1", &Config::alpha1)
    .def_readwrite("lambda_", &Config::lambda)
    .def_readwrite("kappa_fraction", &Config::kappa_fraction)
    .def_readwrite("c_on", &Config::c_on)
    .def_readwrite("c_off", &Config::c_off)
    .def_readwrite("log_offset", &Config::log_offset)
    .def_readwrite("mode", &Config::mode)
    .def_readwrite("init_from_first_frame", &Config::init_from_first_frame)
    .def_readwrite("width", &Config::width)
    .def_readwrite("height", &Config::height)
    .def("validate", &Config::validate);

  py::class_<SimulationConfig>(m, "SimulationConfig")
    .def(py::init<>())
    .def_readwrite("c_on", &SimulationConfig::c_on)
    .def_readwrite("c_off", &SimulationConfig::c_off)
    .def_readwrite("noise_fraction", &SimulationConfig::noise_fraction)
    .def_readwrite("subsample_rate", &SimulationConfig::subsample_rate)
    .def_readwrite("frame_delay", &SimulationConfig::frame_delay)
    .def_readwrite("truncation_fraction", &SimulationConfig::truncation_fraction)
    .def_readwrite("log_offset", &SimulationConfig::log_offset)
    .def_readwrite("seed", &SimulationConfig::seed)
    .def("validate", &SimulationConfig::validate);

  m.def(
    "to_log",
    [](const U8 & img, double offset) {
      const LogConvention log(offset);
      py::array_t<double> out(std::vector<py::ssize_t>(img.shape(), img.shape() + img.ndim()));
      auto * dst = out.mutable_data();
      for (py::ssize_t i = 0; i < img.size(); ++i) dst[i] = log.to_log(img.data()[i]);
      return out;
    },
    py::arg("image"), py::arg("offset") = LogConvention::kDefaultOffset);
  m.def(
    "from_log",
    [](const F64 & values, double offset) {
      const LogConvention log(offset);
      py::array_t<std::uint8_t> out(std::vector<py::ssize_t>(values.shape(), values.shape() + values.ndim()));
      auto * dst = out.mutable_data();
      for (py::ssize_t i = 0; i < values.size(); ++i) dst[i] = log.from_log(values.data()[i]);
      return out;
    },
    py::arg("values"), py::arg("offset") = LogConvention::kDefaultOffset);

  m.def(
    "compute_alpha",
    [](double reference, double alpha1, double lambda, double kappa_fraction, double log_offset) {
      return compute_alpha(reference, GainParams::make(alpha1, lambda, kappa_fraction, log_offset));
    },
    py::arg("reference"), py::arg("alpha1") = 2.0 * std::numbers::pi, py::arg("lambda_") = 0.1,
    py::arg("kappa_fraction") = 0.05, py::arg("log_offset") = LogConvention::kDefaultOffset);

  py::class_<ComplementaryFilter>(m, "ComplementaryFilter")
    .def(py::init([](int w, int h, const Config & cfg) {
           return ComplementaryFilter(w, h, FilterParams::from_config(cfg));
         }),
         py::arg("width"), py::arg("height"), py::arg("config"))
    .def_property_readonly("width", &ComplementaryFilter::width)
    .def_property_readonly("height", &ComplementaryFilter::height)
    .def(
      "process_events",
      [](ComplementaryFilter & f, const F64 & t, const I64 & x, const I64 & y, const I64 & p) {
        f.process_events(to_events(t, x, y, p));
      },
      py::arg("t"), py::arg("x"), py::arg("y"), py::arg("p"))
    .def(
      "process_frame",
      [](ComplementaryFilter & f, double t, const F64 & values) { f.process_frame(to_log_image(t, values)); },
      py::arg("t"), py::arg("log_image"))
    .def(
      "initialize",
      [](ComplementaryFilter & f, double t, const F64 & values) { f.initialize(to_log_image(t, values)); },
      py::arg("t"), py::arg("log_image"))
    .def("query", [](ComplementaryFilter & f, double t) { return image_array(f.query(t)); }, py::arg("t"));

  py::class_<PySession>(m, "Session")
    .def(py::init([](const F64 & t, const I64 & x, const I64 & y, const I64 & p,
                     const std::optional<F64> & frame_times, const std::optional<U8> & frames,
                     const Config & cfg) {
           return std::make_unique<PySession>(
             dataset(t, x, y, p, frame_times, frames, cfg.width, cfg.height), cfg);
         }),
         py::arg("t"), py::arg("x"), py::arg("y"), py::arg("p"), py::arg("frame_times") = py::none(),
         py::arg("frames") = py::none(), py::arg("config"))
    .def("query", [](PySession & s, double t) { return image_array(s.get().query(t)); }, py::arg("t"))
    .def(
      "export_frames",
      [](PySession & s, const std::vector<double> & times) {
        std::vector<Frame> out;
        for (double t : times) out.push_back(s.get().export_frame(t));
        const auto & f = s.get().filter();
        return stack_frames(out, f.width(), f.height());
      },
      py::arg("times"))
    .def_property_readonly("events_processed", [](PySession & s) { return s.get().events_processed(); })
    .def_property_readonly("frames_processed", [](PySession & s) { return s.get().frames_processed(); });

  m.def(
    "simulate",
    [](const F64 & times, const U8 & frames, const SimulationConfig & cfg) {
      const auto out = simulate(to_frames(times, frames), cfg);
      py::dict d;
      d["events"] = from_events(out.events);
      d["frame_times"] = frame_times(out.frames);
      d["frames"] = stack_frames(out.frames, out.width, out.height);
      return d;
    },
    py::arg("frame_times"), py::arg("frames"), py::arg("config") = SimulationConfig{});

  m.def(
    "calibrate",
    [](const F64 & t, const I64 & x, const I64 & y, const I64 & p, const F64 & ftimes, const U8 & frames,
       double log_offset, double frame_time_offset) {
      const auto data = dataset(t, x, y, p, ftimes, frames, 0, 0);
      CalibrationOptions opts;
      opts.log_offset = log_offset;
      opts.frame_time_offset = frame_time_offset;
      const auto r = calibrate(data, opts);
      py::dict d;
      d["c_on"] = r.c_on;
      d["c_off"] = r.c_off;
      d["residual"] = r.residual;
      d["intervals"] = r.n_intervals;
      d["samples"] = r.n_samples;
      return d;
    },
    py::arg("t"), py::arg("x"), py::arg("y"), py::arg("p"), py::arg("frame_times"), py::arg("frames"),
    py::arg("log_offset") = LogConvention::kDefaultOffset, py::arg("frame_time_offset") = 0.0);

  m.def(
    "ssim", [](const U8 & a, const U8 & b) { return ssim(to_frame(0, a), to_frame(0, b)); },
    py::arg("a"), py::arg("b"));
  m.def(
    "photometric_error",
    [](const U8 & a, const U8 & b) { return photometric_error(to_frame(0, a), to_frame(0, b)); },
    py::arg("a"), py::arg("b"));

  m.def(
    "read_events",
    [](const std::string & path) { return from_events(read_events_file(path)); }, py::arg("path"));
  m.def(
    "write_events",
    [](const std::string & path, const F64 & t, const I64 & x, const I64 & y, const I64 & p) {
      write_events_file(to_events(t, x, y, p), path);
    },
    py::arg("path"), py::arg("t"), py::arg("x"), py::arg("y"), py::arg("p"));
  m.def(
    "read_frames",
    [](const std::string & index) {
      const auto frames = read_frames(index);
      const int w = frames.empty() ? 0 : frames[0].width;
      const int h = frames.empty() ? 0 : frames[0].height;
      return py::make_tuple(frame_times(frames), stack_frames(frames, w, h));
    },
    py::arg("index"));
  m.def(
    "write_frames",
    [](const std::string & index, const F64 & times, const U8 & frames) {
      write_frames(to_frames(times, frames), index);
    },
    py::arg("index"), py::arg("frame_times"), py::arg("frames"));
}
