// Copyright 2026 The isingtopo Authors
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

#pragma once

#include <cstdint>
#include <string_view>

namespace isingtopo {

// 64-bit FNV-1a of a byte string.
std::uint64_t fnv1a(std::string_view text);

// Seed of an independent stream for `stream_id` under a master seed.
std::uint64_t derive_seed(std::uint64_t master, std::string_view stream_id);

}  // namespace isingtopo
