// Copyright 2026 The cqabuse Authors. All Rights Reserved.
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
#include <span>
#include <vector>

namespace cqabuse::par {

//! Number of OpenMP threads a parallel region will use.
int threads_count();

//! Set the OpenMP thread count.  0 restores the runtime default.
void set_threads(int n);

//! Deterministic parallel sum: values are reduced in fixed-size chunks whose
//! partials are combined serially in chunk order, so the result is bitwise
//! identical for any thread count (and equal to the serial chunked sum).
double chunked_sum(std::span<const double> values);

//! Serial reference for chunked_sum (same chunking, no threads).
double chunked_sum_serial(std::span<const double> values);

inline constexpr std::size_t kSumChunk = 4096;

}  // namespace cqabuse::par
