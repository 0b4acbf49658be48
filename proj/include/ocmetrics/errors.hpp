/*
 * Copyright 2026 The ocmetrics Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *   http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef OCMETRICS_ERRORS_HPP_
#define OCMETRICS_ERRORS_HPP_

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace ocmetrics {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid input data or parameters. Carries the offending record index
/// (or input line number) when one is known.
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& message,
                           std::optional<std::size_t> index = std::nullopt)
      : Error(index ? message + " (record " + std::to_string(*index) + ")"
                    : message),
        index_(index) {}

  std::optional<std::size_t> index() const { return index_; }

 private:
  std::optional<std::size_t> index_;
};

/// Marginalizing an empty posterior sample list.
class MarginalizationError : public Error {
 public:
  using Error::Error;
};

/// A metric whose value does not exist for the given input (e.g. AUROC of a
/// single-class dataset). Raised instead of returning NaN.
class UndefinedMetricError : public Error {
 public:
  using Error::Error;
};

/// Malformed input stream. Carries the 1-based line number.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + message), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Filesystem failure while reading inputs or writing outputs.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace ocmetrics

#endif  // OCMETRICS_ERRORS_HPP_
