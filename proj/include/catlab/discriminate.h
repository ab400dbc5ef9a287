// Copyright 2026 The Catlab Authors
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
#include <span>
#include <string>
#include <vector>

#include "catlab/measure.h"

namespace catlab {

struct ChiSquareResult {
    double statistic = 0;
    int degrees_of_freedom = 0;
    double p_value = 1;
};

/// Pearson goodness-of-fit of `counts` against `expected` probabilities.
/// Any observation in a bin with negligible expected mass gives p = 0. Otherwise
/// bins with expected count < 5 are pooled into one bin; a pool that is still
/// under 5 joins the smallest remaining bin.
ChiSquareResult chi_square_test(std::span<const double> expected, std::span<const std::uint64_t> counts);

struct DiscriminationReport {
    std::string measurement;
    std::vector<OutcomeRecord> dist_a;
    std::vector<OutcomeRecord> dist_b;
    double total_variation = 0;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    /// Sample counts per outcome, in measurement order.
    std::vector<std::uint64_t> counts_a;
    std::vector<std::uint64_t> counts_b;
    /// Chi-square test of B's samples against A's exact distribution.
    ChiSquareResult fit_b_to_a;
};

/// Exact distributions of both sources under `m`, plus `trials` samples of each.
/// A draws from RandomStream(seed, 0) and B from RandomStream(seed, 1).
DiscriminationReport discriminate(const QuantumState &source_a,
                                  const QuantumState &source_b,
                                  const ProjectiveMeasurement &m,
                                  std::uint64_t trials,
                                  std::uint64_t seed,
                                  std::string measurement_name = "");

}  // namespace catlab
