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

#pragma once

#include <cstdint>
#include <string_view>

namespace refcascade {

// Dense internal paper index, assigned in corpus order.
using NodeId = std::uint32_t;

// backward follows references (references of references); forward follows
// citations (citations of citations).
enum class Direction : std::uint8_t { backward, forward };

std::string_view to_string(Direction d) noexcept;

// Accepts "backward" / "forward"; throws UsageError otherwise.
Direction parse_direction(std::string_view text);

}  // namespace refcascade
