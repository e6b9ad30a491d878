// Copyright 2026 The fdlab Authors
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

#include <cstddef>
#include <functional>

namespace fdlab {

/// Worker count requested through FDLAB_THREADS, or `fallback` when the
/// variable is unset or invalid. Always >= 1.
int threads_from_environment(int fallback = 1);

/// Runs body(i) for i in [0, count) on up to `threads` workers. Each index
/// is visited exactly once; callers write results into pre-sized slots so
/// the outcome does not depend on scheduling. The first exception thrown by
/// any body is rethrown after all workers finish.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body);

}  // namespace fdlab
