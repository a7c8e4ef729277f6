// Copyright 2026 The entgames Authors
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

#ifndef ENTGAMES_PARALLEL_HPP_
#define ENTGAMES_PARALLEL_HPP_

#include <cstddef>
#include <functional>

namespace entgames {

// Worker count: ENTGAMES_THREADS if set and positive, else hardware concurrency.
int worker_count();

// Runs body(i) for i in [0, n) on up to `threads` workers (0 = worker_count()).
// Callers write results into per-index slots, so output order never depends on
// scheduling. The first exception thrown by any body is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body, int threads = 0);

}  // namespace entgames

#endif  // ENTGAMES_PARALLEL_HPP_
