// Copyright 2026 The refcascade Authors
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

#include "refcascade/types.hpp"

#include <string>

#include "refcascade/error.hpp"

namespace refcascade {

std::string_view to_string(Direction d) noexcept {
  return d == Direction::backward ? "backward" : "forward";
}

Direction parse_direction(std::string_view text) {
  if (text == "backward") return Direction::backward;
  if (text == "forward") return Direction::forward;
  throw UsageError("unknown direction '" + std::string(text) + "'");
}

}  // namespace refcascade
