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

#include "rigourate/error.hpp"

#include <utility>

namespace rigourate {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::kParse: return "parse";
    case ErrorKind::kValidation: return "validation";
    case ErrorKind::kPrecondition: return "precondition";
    case ErrorKind::kTransport: return "transport";
    case ErrorKind::kModality: return "modality";
    case ErrorKind::kDependency: return "dependency";
    case ErrorKind::kIo: return "io";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, std::string message, std::string field)
    : std::runtime_error(std::move(message)), kind_(kind), field_(std::move(field)) {}

}  // namespace rigourate
