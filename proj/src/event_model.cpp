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

#include "evcf/event_model.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "evcf/errors.hpp"

namespace evcf
{
namespace
{
void check_dims(int width, int height, std::size_t n)
{
  if (width < 0 || height < 0) {
    throw DimensionError("negative image dimensions");
  }
  if (n != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
    throw DimensionError(
      "buffer of " + std::to_string(n) + " values does not match " + std::to_string(width) + "x" +
      std::to_string(height));
  }
}
}  // namespace

bool is_valid(const Event & ev) noexcept
{
  return std::isfinite(ev.t) && ev.t >= 0.0 &&
         (ev.polarity == Polarity::On || ev.polarity == Polarity::Off);
}

Frame::Frame(double t_, int width_, int height_, std::vector<std::uint8_t> pixels_)
: t(t_), width(width_), height(height_), pixels(std::move(pixels_))
{
  check_dims(width, height, pixels.size());
}

Frame::Frame(double t_, int width_, int height_, std::uint8_t value)
: t(t_), width(width_), height(height_)
{
  check_dims(width, height, static_cast<std::size_t>(std::max(width, 0)) * std::max(height, 0));
  pixels.assign(static_cast<std::size_t>(width) * height, value);
}

LogImage::LogImage(double t_, int width_, int height_, std::vector<double> values_)
: t(t_), width(width_), height(height_), values(std::move(values_))
{
  check_dims(width, height, values.size());
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw ConfigError("log image contains a non-finite value");
    }
  }
}

LogImage::LogImage(double t_, int width_, int height_, double value)
: t(t_), width(width_), height(height_)
{
  check_dims(width, height, static_cast<std::size_t>(std::max(width, 0)) * std::max(height, 0));
  if (!std::isfinite(value)) {
    throw ConfigError("log image contains a non-finite value");
  }
  values.assign(static_cast<std::size_t>(width) * height, value);
}

LogConvention::LogConvention(double offset) : offset_(offset)
{
  if (!std::isfinite(offset) || offset <= 0.0) {
    throw ConfigError("log offset must be a positive finite number");
  }
  for (int i = 0; i < 256; ++i) {
    lut_[i] = std::log(static_cast<double>(i) / 255.0 + offset_);
  }
}

std::uint8_t LogConvention::from_log(double value) const noexcept
{
  const double linear = (std::exp(value) - offset_) * 255.0;
  if (!(linear > 0.0)) {  // also catches NaN
    return 0;
  }
  return static_cast<std::uint8_t>(std::min(std::round(linear), 255.0));
}

LogImage to_log(const Frame & frame, double offset)
{
  const LogConvention conv(offset);
  LogImage out;
  out.t = frame.t;
  out.width = frame.width;
  out.height = frame.height;
  out.values.resize(frame.pixels.size());
  std::transform(
    frame.pixels.begin(), frame.pixels.end(), out.values.begin(),
    [&conv](std::uint8_t p) { return conv.to_log(p); });
  return out;
}

Frame from_log(const LogImage & img, double offset)
{
  const LogConvention conv(offset);
  Frame out;
  out.t = img.t;
  out.width = img.width;
  out.height = img.height;
  out.pixels.resize(img.values.size());
  std::transform(
    img.values.begin(), img.values.end(), out.pixels.begin(),
    [&conv](double v) { return conv.from_log(v); });
  return out;
}

}  // namespace evcf
