// Copyright 2026 The AuctionLab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef AUCTIONLAB_PARALLEL_H_
#define AUCTIONLAB_PARALLEL_H_

#include <atomic>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace auctionlab {

// Worker count from AUCTIONLAB_WORKERS, else the hardware concurrency.
int DefaultWorkerCount();

// Calls fn(i) for i in [0, n) on up to `workers` threads. Indices are handed
// out dynamically, so fn must write its result into a slot owned by i.
void ParallelFor(size_t n, int workers, const std::function<void(size_t)>& fn);

}  // namespace auctionlab

#endif  // AUCTIONLAB_PARALLEL_H_
