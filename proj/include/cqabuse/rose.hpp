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

#include <cstdint>

#include "cqabuse/features.hpp"

namespace cqabuse::learn {

//! Class rebalancing by smoothed bootstrap: the minority class is
//! over-sampled by drawing existing minority rows and jittering each feature
//! with Gaussian noise of bandwidth shrink * 0.9 * min(sd, IQR/1.34) *
//! n_minority^(-1/5) (per-feature Silverman rule); the majority class is
//! under-sampled uniformly without replacement.  The output keeps the input
//! row count with a target_ratio share (default 0.5) of minority rows.
//! shrink = 0 reproduces plain bootstrap copies.  Throws TrainError when the
//! input has a single class or the requested majority share exceeds the
//! available majority rows.
LabeledDataset rose_balance(const LabeledDataset& data, double target_ratio,
                            double shrink, std::uint64_t seed);

}  // namespace cqabuse::learn
