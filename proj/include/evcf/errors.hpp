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

#ifndef EVCF_ERRORS_HPP
#define EVCF_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace evcf
{
/// Base of every error raised by the library. Validation errors derive from
/// it directly; I/O failures derive from IoError.
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public Error
{
public:
  using Error::Error;
};

class DimensionError : public Error
{
public:
  using Error::Error;
};

class OrderError : public Error
{
public:
  using Error::Error;
};

class ModeError : public Error
{
public:
  using Error::Error;
};

class CalibrationError : public Error
{
public:
  using Error::Error;
};

class ParseError : public Error
{
public:
  ParseError(const std::string & what, std::size_t line)
  : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line)
  {
  }
  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

class IoError : public Error
{
public:
  using Error::Error;
};

}  // namespace evcf

#endif  // EVCF_ERRORS_HPP
