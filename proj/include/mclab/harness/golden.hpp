// Copyright 2026 The mclab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>
#include <vector>

namespace mclab {

struct GoldenResult {
  std::string file;
  std::string experiment;
  bool match = false;
  /// First differing line on mismatch, or the error text.
  std::string detail;
};

/// Re-runs every report under dir from its embedded config and seed and
/// compares the serialized bytes with the file.
std::vector<GoldenResult> verify_golden(const std::string& dir);

}  // namespace mclab
