// Copyright 2026 The dialectid Authors. All Rights Reserved.
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

namespace dialectid {

// Number of worker threads used by ParallelFor; defaults to the hardware
// concurrency. Results never depend on this value.
std::size_t WorkerCount();
void SetWorkerCount(std::size_t workers);

// Runs fn(i) for i in [0, count). Callers write results by index so the
// output is independent of scheduling. The exception from the lowest failing
// index is rethrown after all workers finish.
void ParallelFor(std::size_t count, const std::function<void(std::size_t)> &fn);

}  // namespace dialectid
