// Copyright 2026 The Amsem Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef AMSEM_ERROR_H_
#define AMSEM_ERROR_H_

#include <stdexcept>
#include <string>

namespace amsem {

// Base class for all library errors. The CLI maps ConfigError to a usage
// failure and every other Error to a data/processing failure.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid configuration or precondition violation by the caller.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A queried word or node does not exist in the model.
class NotFoundError : public Error {
 public:
  using Error::Error;
};

// Malformed input file. `line()` is 1-based, 0 when not line-specific.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Input data that is well-formed but unusable (empty corpus, single class).
class DataError : public Error {
 public:
  using Error::Error;
};

}  // namespace amsem

#endif  // AMSEM_ERROR_H_
