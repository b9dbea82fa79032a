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

#ifndef EVCF_EVENT_MODEL_HPP
#define EVCF_EVENT_MODEL_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

namespace evcf
{
enum class Polarity : std::int8_t { Off = -1, On = 1 };

inline constexpr int sign(Polarity p) noexcept { return static_cast<int>(p); }

/// One brightness-change packet. Coordinates are column (x) and row (y).
struct Event
{
  double t{0.0};
  std::uint16_t x{0};
  std::uint16_t y{0};
  Polarity polarity{Polarity::On};

  friend bool operator==(const Event &, const Event &) = default;
};

/// True when the timestamp is finite and non-negative and the polarity is +1 or -1.
bool is_valid(const Event & ev) noexcept;

/// Timestamped 8-bit grayscale image, row-major.
struct Frame
{
  Frame() = default;
  /// Throws DimensionError when pixels.size() != width * height.
  Frame(double t, int width, int height, std::vector<std::uint8_t> pixels);
  /// Uniform image filled with `value`.
  Frame(double t, int width, int height, std::uint8_t value);

  double t{0.0};
  int width{0};
  int height{0};
  std::vector<std::uint8_t> pixels;

  std::size_t size() const noexcept { return pixels.size(); }
  std::uint8_t at(int x, int y) const { return pixels[static_cast<std::size_t>(y) * width + x]; }

  friend bool operator==(const Frame &, const Frame &) = default;
};

/// Dense per-pixel log-intensity raster, row-major.
struct LogImage
{
  LogImage() = default;
  /// Throws DimensionError on size mismatch and ConfigError on non-finite values.
  LogImage(double t, int width, int height, std::vector<double> values);
  LogImage(double t, int width, int height, double value);

  double t{0.0};
  int width{0};
  int height{0};
  std::vector<double> values;

  std::size_t size() const noexcept { return values.size(); }
  double at(int x, int y) const { return values[static_cast<std::size_t>(y) * width + x]; }

  friend bool operator==(const LogImage &, const LogImage &) = default;
};

/// Log convention L = ln(I / 255 + offset). The offset keeps zero-valued
/// pixels finite and bounds the log range to [ln(offset), ln(1 + offset)].
class LogConvention
{
public:
  static constexpr double kDefaultOffset = 0.01;

  /// Throws ConfigError unless offset is finite and > 0.
  explicit LogConvention(double offset = kDefaultOffset);

  double offset() const noexcept { return offset_; }
  double to_log(std::uint8_t pixel) const noexcept { return lut_[pixel]; }
  std::uint8_t from_log(double value) const noexcept;
  /// Log value of pixel 0 / pixel 255.
  double min_log() const noexcept { return lut_[0]; }
  double max_log() const noexcept { return lut_[255]; }

private:
  double offset_;
  double lut_[256];
};

LogImage to_log(const Frame & frame, double offset);
Frame from_log(const LogImage & img, double offset);

}  // namespace evcf

#endif  // EVCF_EVENT_MODEL_HPP
