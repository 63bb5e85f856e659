// Copyright 2026 The ttclock Authors
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
#include <string_view>

namespace ttclock {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid user-supplied parameters.
class ConfigError : public Error {
 public:
  using Error::Error;
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

enum class ContextKind { Regular, XZPlane, XYPlane, NearSingular, Degenerate };

std::string_view to_string(ContextKind kind);

class SingularContext : public NumericalError {
 public:
  SingularContext(ContextKind kind, const std::string& what)
      : NumericalError(what), kind_(kind) {}
  ContextKind kind() const { return kind_; }

 private:
  ContextKind kind_;
};

}  // namespace ttclock
