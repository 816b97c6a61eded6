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

#include <string>

namespace rigourate {

// A recorded, non-fatal event: a failed annotator call, a dropped sentence
// number, a skipped sentence.
struct AuditEntry {
  std::string stage;
  std::string subject;
  std::string annotator_id;
  std::string status;
  std::string message;

  friend bool operator==(const AuditEntry&, const AuditEntry&) = default;
};

}  // namespace rigourate
