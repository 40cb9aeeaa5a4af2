// Copyright 2026 The mlime Authors.
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
#include <utility>

namespace mlime {

// Every engine failure carries a stable machine-readable code (used by the
// service protocol and the CLI exit-code mapping) plus the offending element.
class Error : public std::runtime_error {
 public:
  Error(std::string code, std::string element, const std::string& message)
      : std::runtime_error(message),
        code_(std::move(code)),
        element_(std::move(element)) {}

  const std::string& code() const noexcept { return code_; }
  const std::string& element() const noexcept { return element_; }

 private:
  std::string code_;
  std::string element_;
};

[[noreturn]] inline void fail(const std::string& code,
                              const std::string& element,
                              const std::string& message) {
  throw Error(code, element, code + ": " + message);
}

[[noreturn]] inline void fail(const std::string& code,
                              const std::string& element) {
  throw Error(code, element, code + "(" + element + ")");
}

}  // namespace mlime
