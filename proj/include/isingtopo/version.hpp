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

#include <Eigen/Core>

namespace isingtopo {

inline constexpr const char* kVersion = "0.1.0";

#define ISINGTOPO_STR2(x) #x
#define ISINGTOPO_STR(x) ISINGTOPO_STR2(x)
inline constexpr const char* kEigenVersion =
    ISINGTOPO_STR(EIGEN_WORLD_VERSION) "." ISINGTOPO_STR(EIGEN_MAJOR_VERSION) "." ISINGTOPO_STR(EIGEN_MINOR_VERSION);
#undef ISINGTOPO_STR
#undef ISINGTOPO_STR2

}  // namespace isingtopo
