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

#include "evcf/stream_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <iterator>
#include <limits>
#include <ostream>
#include <sstream>
#include <system_error>

#include "evcf/errors.hpp"

namespace evcf
{
namespace
{
constexpr std::string_view kSpace = " \t\r";

std::string_view trim(std::string_view s)
{
  const auto b = s.find_first_not_of(kSpace);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(kSpace);
  return s.substr(b, e - b + 1);
}

// Splits off the next whitespace-delimited token; empty when exhausted.
std::string_view next_token(std::string_view & s)
{
  const auto b = s.find_first_not_of(kSpace);
  if (b == std::string_view::npos) {
    s = {};
    return {};
  }
  s.remove_prefix(b);
  const auto e = std::min(s.find_first_of(kSpace), s.size());
  auto tok = s.substr(0, e);
  s.remove_prefix(e);
  return tok;
}

template <typename Fn>
void for_each_line(std::string_view text, Fn && fn)
{
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    const auto line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    fn(line, line_no);
  }
}

bool parse_number(std::string_view tok, double & out)
{
  if (tok.empty()) return false;
  if (tok.front() == '+') tok.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc{} && ptr == tok.data() + tok.size() && std::isfinite(out);
}

template <typename Int>
bool parse_number(std::string_view tok, Int & out)
{
  if (tok.empty()) return false;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc{} && ptr == tok.data() + tok.size();
}

std::string slurp(std::istream & in)
{
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("read failed");
  return std::move(ss).str();
}

std::ifstream open_in(const std::filesystem::path & path, std::ios::openmode mode = std::ios::in)
{
  std::ifstream f(path, mode);
  if (!f) throw IoError("cannot open '" + path.string() + "' for reading");
  return f;
}

std::ofstream open_out(const std::filesystem::path & path, std::ios::openmode mode = std::ios::out)
{
  std::ofstream f(path, mode | std::ios::trunc);
  if (!f) throw IoError("cannot open '" + path.string() + "' for writing");
  return f;
}

void check_written(std::ostream & out, const std::string & what)
{
  out.flush();
  if (!out) throw IoError("failed writing " + what);
}

}  // namespace

std::string format_double(double v)
{
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

double parse_double(std::string_view text)
{
  double v = 0.0;
  if (!parse_number(trim(text), v)) {
    throw ConfigError("not a finite number: '" + std::string(text) + "'");
  }
  return v;
}

// ---------------------------------------------------------------- dataset

Dataset make_dataset(std::vector<Event> events, std::vector<Frame> frames, int width, int height)
{
  if (width < 0 || height < 0) throw DimensionError("negative sensor size");
  if (!frames.empty()) {
    const int fw = frames.front().width;
    const int fh = frames.front().height;
    if ((width != 0 && width != fw) || (height != 0 && height != fh)) {
      throw DimensionError(
        "sensor size " + std::to_string(width) + "x" + std::to_string(height) +
        " does not match frames of " + std::to_string(fw) + "x" + std::to_string(fh));
    }
    width = fw;
    height = fh;
    for (std::size_t i = 0; i < frames.size(); ++i) {
      if (frames[i].width != fw || frames[i].height != fh) {
        throw DimensionError("frame " + std::to_string(i) + " has mismatched dimensions");
      }
      if (i > 0 && !(frames[i].t > frames[i - 1].t)) {
        throw OrderError("frame timestamps must be strictly increasing (frame " +
                         std::to_string(i) + ")");
      }
    }
  }
  if (width == 0 || height == 0) {
    if (events.empty()) throw ConfigError("cannot infer sensor size from an empty dataset");
    int mx = 0;
    int my = 0;
    for (const auto & e : events) {
      mx = std::max<int>(mx, e.x);
      my = std::max<int>(my, e.y);
    }
    if (width == 0) width = mx + 1;
    if (height == 0) height = my + 1;
  }
  double prev = 0.0;
  for (std::size_t i = 0; i < events.size(); ++i) {
    const auto & e = events[i];
    if (!is_valid(e)) throw ConfigError("event " + std::to_string(i) + " is invalid");
    if (e.x >= width || e.y >= height) {
      throw DimensionError(
        "event " + std::to_string(i) + " at (" + std::to_string(e.x) + ", " +
        std::to_string(e.y) + ") lies outside the " + std::to_string(width) + "x" +
        std::to_string(height) + " sensor");
    }
    if (i > 0 && e.t < prev) {
      throw OrderError("event " + std::to_string(i) + " at t=" + format_double(e.t) +
                       " precedes t=" + format_double(prev));
    }
    prev = e.t;
  }
  return Dataset{std::move(events), std::move(frames), width, height};
}

// ----------------------------------------------------------------- events

std::vector<Event> read_events(std::string_view text)
{
  std::vector<Event> events;
  events.reserve(text.size() / 20);
  for_each_line(text, [&](std::string_view line, std::size_t no) {
    std::string_view rest = line;
    const auto t_tok = next_token(rest);
    if (t_tok.empty() || t_tok.front() == '#') return;
    const auto x_tok = next_token(rest);
    const auto y_tok = next_token(rest);
    const auto p_tok = next_token(rest);
    if (p_tok.empty() || !next_token(rest).empty()) {
      throw ParseError("expected 't x y p', got '" + std::string(trim(line)) + "'", no);
    }
    Event ev;
    if (!parse_number(t_tok, ev.t) || ev.t < 0.0) {
      throw ParseError("bad timestamp '" + std::string(t_tok) + "'", no);
    }
    if (!parse_number(x_tok, ev.x) || !parse_number(y_tok, ev.y)) {
      throw ParseError("bad pixel coordinates", no);
    }
    if (p_tok == "1") {
      ev.polarity = Polarity::On;
    } else if (p_tok == "0") {
      ev.polarity = Polarity::Off;
    } else {
      throw ParseError("polarity must be 0 or 1, got '" + std::string(p_tok) + "'", no);
    }
    events.push_back(ev);
  });
  return events;
}

std::vector<Event> read_events(std::istream & in) { return read_events(slurp(in)); }

void write_events(std::span<const Event> events, std::ostream & out)
{
  std::string buf;
  buf.reserve(1 << 16);
  char num[64];
  for (const auto & e : events) {
    auto r = std::to_chars(num, num + sizeof(num), e.t);
    buf.append(num, r.ptr);
    buf.push_back(' ');
    r = std::to_chars(num, num + sizeof(num), e.x);
    buf.append(num, r.ptr);
    buf.push_back(' ');
    r = std::to_chars(num, num + sizeof(num), e.y);
    buf.append(num, r.ptr);
    buf.push_back(' ');
    buf.push_back(e.polarity == Polarity::On ? '1' : '0');
    buf.push_back('\n');
    if (buf.size() > (1 << 16) - 128) {
      out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
      buf.clear();
    }
  }
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  check_written(out, "events");
}

std::vector<Event> read_events_file(const std::filesystem::path & path)
{
  auto f = open_in(path, std::ios::in | std::ios::binary);
  return read_events(f);
}

void write_events_file(std::span<const Event> events, const std::filesystem::path & path)
{
  auto f = open_out(path, std::ios::out | std::ios::binary);
  write_events(events, f);
}

// ------------------------------------------------------------------- PGM

namespace
{
std::string pgm_token(std::istream & in)
{
  std::string tok;
  int c = in.get();
  while (c != EOF) {
    if (c == '#') {
      while (c != EOF && c != '\n') c = in.get();
    } else if (std::isspace(c)) {
      c = in.get();
    } else {
      break;
    }
  }
  while (c != EOF && !std::isspace(c) && c != '#') {
    tok.push_back(static_cast<char>(c));
    c = in.get();
  }
  if (c == '#') in.unget();
  return tok;
}

int pgm_int(std::istream & in, const char * what)
{
  int v = 0;
  const auto tok = pgm_token(in);
  if (!parse_number(std::string_view(tok), v) || v < 0) {
    throw ParseError(std::string("PGM: bad ") + what + " '" + tok + "'", 0);
  }
  return v;
}
}  // namespace

Frame read_pgm(std::istream & in)
{
  const auto magic = pgm_token(in);
  if (magic == "P6" || magic == "P3") {
    throw ParseError("PGM: color images are not supported (got " + magic + ")", 0);
  }
  if (magic != "P5" && magic != "P2") throw ParseError("not a PGM file (magic '" + magic + "')", 0);
  const int w = pgm_int(in, "width");
  const int h = pgm_int(in, "height");
  const int maxval = pgm_int(in, "maxval");
  if (maxval == 0 || maxval > 255) {
    throw ParseError("PGM: only 8-bit images are supported (maxval " + std::to_string(maxval) + ")", 0);
  }
  const std::size_t n = static_cast<std::size_t>(w) * h;
  std::vector<std::uint8_t> px(n);
  if (magic == "P5") {
    in.read(reinterpret_cast<char *>(px.data()), static_cast<std::streamsize>(n));
    if (static_cast<std::size_t>(in.gcount()) != n) throw ParseError("PGM: truncated pixel data", 0);
  } else {
    for (auto & p : px) {
      const int v = pgm_int(in, "pixel");
      if (v > maxval) throw ParseError("PGM: pixel exceeds maxval", 0);
      p = static_cast<std::uint8_t>(v);
    }
  }
  if (maxval != 255) {
    for (auto & p : px) p = static_cast<std::uint8_t>(std::lround(p * 255.0 / maxval));
  }
  return Frame(0.0, w, h, std::move(px));
}

Frame read_pgm(const std::filesystem::path & path)
{
  auto f = open_in(path, std::ios::in | std::ios::binary);
  try {
    return read_pgm(f);
  } catch (const ParseError & e) {
    throw ParseError(path.string() + ": " + e.what(), 0);
  }
}

void write_image(const Frame & frame, std::ostream & out)
{
  out << "P5\n" << frame.width << ' ' << frame.height << "\n255\n";
  out.write(reinterpret_cast<const char *>(frame.pixels.data()),
            static_cast<std::streamsize>(frame.pixels.size()));
  check_written(out, "image");
}

void write_image(const Frame & frame, const std::filesystem::path & path)
{
  auto f = open_out(path, std::ios::out | std::ios::binary);
  try {
    write_image(frame, f);
  } catch (const IoError &) {
    throw IoError("failed writing image '" + path.string() + "'");
  }
}

// ----------------------------------------------------------------- index

std::vector<IndexEntry> read_index(std::istream & in)
{
  std::vector<IndexEntry> entries;
  const auto text = slurp(in);
  for_each_line(text, [&](std::string_view line, std::size_t no) {
    std::string_view rest = line;
    const auto t_tok = next_token(rest);
    if (t_tok.empty() || t_tok.front() == '#') return;
    const auto name = trim(rest);
    double t = 0.0;
    if (!parse_number(t_tok, t) || t < 0.0) {
      throw ParseError("bad timestamp '" + std::string(t_tok) + "'", no);
    }
    if (name.empty()) throw ParseError("missing filename", no);
    if (!entries.empty() && !(t > entries.back().t)) {
      throw OrderError("line " + std::to_string(no) + ": frame timestamp " + format_double(t) +
                       " does not follow " + format_double(entries.back().t));
    }
    entries.push_back({t, std::string(name)});
  });
  return entries;
}

void write_index(std::span<const IndexEntry> entries, std::ostream & out)
{
  for (const auto & e : entries) out << format_double(e.t) << ' ' << e.filename << '\n';
  check_written(out, "index");
}

std::vector<Frame> read_frames(std::istream & index, const ImageLoader & loader)
{
  const auto entries = read_index(index);
  std::vector<Frame> frames;
  frames.reserve(entries.size());
  for (const auto & e : entries) {
    Frame f = loader(e.filename);
    f.t = e.t;
    if (!frames.empty() &&
        (f.width != frames.front().width || f.height != frames.front().height)) {
      throw DimensionError("image '" + e.filename + "' is " + std::to_string(f.width) + "x" +
                           std::to_string(f.height) + ", expected " +
                           std::to_string(frames.front().width) + "x" +
                           std::to_string(frames.front().height));
    }
    frames.push_back(std::move(f));
  }
  return frames;
}

std::vector<Frame> read_frames(const std::filesystem::path & index_path)
{
  auto f = open_in(index_path);
  const auto dir = index_path.parent_path();
  return read_frames(f, [&dir](const std::string & name) { return read_pgm(dir / name); });
}

std::vector<IndexEntry> write_frames(
  std::span<const Frame> frames, const std::filesystem::path & index_path,
  const std::string & prefix)
{
  const auto dir = index_path.parent_path();
  std::vector<IndexEntry> entries;
  entries.reserve(frames.size());
  char name[32];
  for (std::size_t i = 0; i < frames.size(); ++i) {
    std::snprintf(name, sizeof(name), "%08zu.pgm", i);
    entries.push_back({frames[i].t, prefix + name});
    const auto path = dir / entries.back().filename;
    if (path.has_parent_path()) {
      std::error_code ec;
      std::filesystem::create_directories(path.parent_path(), ec);
      if (ec) throw IoError("cannot create '" + path.parent_path().string() + "': " + ec.message());
    }
    write_image(frames[i], path);
  }
  auto f = open_out(index_path);
  write_index(entries, f);
  return entries;
}

// ---------------------------------------------------------------- config

KeyValues parse_key_values(std::istream & in)
{
  KeyValues kv;
  const auto text = slurp(in);
  for_each_line(text, [&](std::string_view line, std::size_t no) {
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) return;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected 'key = value'", no);
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (key.empty()) throw ParseError("empty key", no);
    if (!kv.emplace(std::string(key), std::string(value)).second) {
      throw ParseError("duplicate key '" + std::string(key) + "'", no);
    }
  });
  return kv;
}

KeyValues read_key_values(const std::filesystem::path & path)
{
  auto f = open_in(path);
  return parse_key_values(f);
}

namespace
{
template <typename T>
bool lookup(const KeyValues & kv, std::string_view key, T & out)
{
  const auto it = kv.find(key);
  if (it == kv.end()) return false;
  try {
    if constexpr (std::is_same_v<T, double>) {
      out = parse_double(it->second);
    } else if constexpr (std::is_same_v<T, bool>) {
      const auto & v = it->second;
      if (v == "true" || v == "1" || v == "on") {
        out = true;
      } else if (v == "false" || v == "0" || v == "off") {
        out = false;
      } else {
        throw ConfigError("expected a boolean");
      }
    } else {
      if (!parse_number(std::string_view(it->second), out)) throw ConfigError("expected an integer");
    }
  } catch (const ConfigError & e) {
    throw ConfigError("config key '" + std::string(key) + "': " + e.what());
  }
  return true;
}

constexpr std::string_view kConfigKeys[] = {
  "alpha1", "lambda", "kappa_fraction", "c_on", "c_off", "log_offset",
  "mode", "init_from_first_frame", "width", "height"};
constexpr std::string_view kSimulationKeys[] = {
  "c_on", "c_off", "log_offset", "noise_fraction", "subsample_rate",
  "frame_delay", "truncation_fraction", "seed"};
}  // namespace

void apply_key_values(Config & cfg, const KeyValues & kv)
{
  lookup(kv, "alpha1", cfg.alpha1);
  lookup(kv, "lambda", cfg.lambda);
  lookup(kv, "kappa_fraction", cfg.kappa_fraction);
  lookup(kv, "c_on", cfg.c_on);
  lookup(kv, "c_off", cfg.c_off);
  lookup(kv, "log_offset", cfg.log_offset);
  lookup(kv, "init_from_first_frame", cfg.init_from_first_frame);
  lookup(kv, "width", cfg.width);
  lookup(kv, "height", cfg.height);
  if (const auto it = kv.find("mode"); it != kv.end()) cfg.mode = parse_mode(it->second);
}

void apply_key_values(SimulationConfig & cfg, const KeyValues & kv)
{
  lookup(kv, "c_on", cfg.c_on);
  lookup(kv, "c_off", cfg.c_off);
  lookup(kv, "log_offset", cfg.log_offset);
  lookup(kv, "noise_fraction", cfg.noise_fraction);
  lookup(kv, "subsample_rate", cfg.subsample_rate);
  lookup(kv, "frame_delay", cfg.frame_delay);
  lookup(kv, "truncation_fraction", cfg.truncation_fraction);
  lookup(kv, "seed", cfg.seed);
}

void check_known_keys(const KeyValues & kv)
{
  for (const auto & [key, value] : kv) {
    const bool known =
      std::find(std::begin(kConfigKeys), std::end(kConfigKeys), key) != std::end(kConfigKeys) ||
      std::find(std::begin(kSimulationKeys), std::end(kSimulationKeys), key) !=
        std::end(kSimulationKeys);
    if (!known) throw ConfigError("unknown config key '" + key + "'");
  }
}

void write_config(const Config & cfg, std::ostream & out)
{
  out << "alpha1 = " << format_double(cfg.alpha1) << '\n'
      << "lambda = " << format_double(cfg.lambda) << '\n'
      << "kappa_fraction = " << format_double(cfg.kappa_fraction) << '\n'
      << "c_on = " << format_double(cfg.c_on) << '\n'
      << "c_off = " << format_double(cfg.c_off) << '\n'
      << "log_offset = " << format_double(cfg.log_offset) << '\n'
      << "mode = " << to_string(cfg.mode) << '\n'
      << "init_from_first_frame = " << (cfg.init_from_first_frame ? "true" : "false") << '\n'
      << "width = " << cfg.width << '\n'
      << "height = " << cfg.height << '\n';
  check_written(out, "config");
}

}  // namespace evcf
