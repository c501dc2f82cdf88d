// Copyright 2026 The stgeo Authors.
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

#ifndef STGEO_PARALLEL_HPP
#define STGEO_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace stgeo {

/// Calls fn(i) for i in [0, n) on up to `jobs` threads (jobs <= 1 runs
/// inline). Results must be written to per-index slots so the outcome does
/// not depend on scheduling. If any call throws, the exception of the
/// lowest failing index is rethrown after all workers stop.
void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn);

}  // namespace stgeo

#endif  // STGEO_PARALLEL_HPP
