// Copyright 2026 The qnet-verify Authors
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

#ifndef QNV_PARALLEL_H_
#define QNV_PARALLEL_H_

#include <cstddef>
#include <functional>

namespace qnv {

/// Worker count from QNV_THREADS, falling back to hardware concurrency.
int thread_count();

/// Calls fn(i) for i in [0, count), split into contiguous chunks across
/// thread_count() workers. fn must only write to per-index slots; the first
/// exception thrown by any worker is rethrown on the calling thread.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace qnv

#endif  // QNV_PARALLEL_H_
