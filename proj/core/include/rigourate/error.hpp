// Copyright 2026 The Rigourate Authors
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

namespace rigourate {

enum class ErrorKind {
  kParse,
  kValidation,
  kPrecondition,
  kTransport,
  kModality,
  kDependency,
  kIo,
};

const char* to_string(ErrorKind kind) noexcept;

// Every failure the library reports through exceptions carries a kind and,
// where one exists, the name of the offending field, placeholder or file.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message, std::string field = {});

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& field() const noexcept { return field_; }

 private:
  ErrorKind kind_;
  std::string field_;
};

}  // namespace rigourate
