// Copyright 2026 The hewer authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace hewer {

// Error categories double as CLI exit codes.
enum class ErrorCode : int {
  usage = 2,
  parse = 3,
  schema = 4,
  collision = 5,
  undefined_metric = 6,
  precondition = 7,
  io = 8,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& msg)
      : std::runtime_error(msg), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

struct ParseError : Error {
  explicit ParseError(const std::string& msg) : Error(ErrorCode::parse, msg) {}
};

struct SchemaError : Error {
  explicit SchemaError(const std::string& msg) : Error(ErrorCode::schema, msg) {}
};

struct CollisionError : Error {
  explicit CollisionError(const std::string& msg) : Error(ErrorCode::collision, msg) {}
};

struct UndefinedMetricError : Error {
  explicit UndefinedMetricError(const std::string& msg)
      : Error(ErrorCode::undefined_metric, msg) {}
};

struct PreconditionError : Error {
  explicit PreconditionError(const std::string& msg)
      : Error(ErrorCode::precondition, msg) {}
};

struct IoError : Error {
  explicit IoError(const std::string& msg) : Error(ErrorCode::io, msg) {}
};

}  // namespace hewer
