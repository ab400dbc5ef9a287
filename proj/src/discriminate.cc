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

#include "catlab/discriminate.h"

#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <limits>

#include "catlab/error.h"

namespace catlab {

namespace {

constexpr double kMinExpectedCount = 5.0;

}  // namespace

ChiSquareResult chi_square_test(std::span<const double> expected, std::span<const std::uint64_t> counts) {
    if (expected.size() != counts.size()) {
        throw CatlabError(ErrorCode::DimensionMismatch, "chi-square: expected and observed bins differ in number");
    }
    std::uint64_t n = 0;
    for (auto c : counts) {
        n += c;
    }
    if (n == 0) {
        return {};
    }

    for (std::size_t k = 0; k < expected.size(); k++) {
        if (expected[k] <= kNegligible && counts[k] > 0) {
            return {std::numeric_limits<double>::infinity(), 0, 0.0};
        }
    }

    struct Bin {
        double expected;
        double observed;
    };
    std::vector<Bin> kept;
    Bin pool{0, 0};
    for (std::size_t k = 0; k < expected.size(); k++) {
        double e = expected[k] * static_cast<double>(n);
        double o = static_cast<double>(counts[k]);
        if (e >= kMinExpectedCount) {
            kept.push_back({e, o});
        } else {
            pool.expected += e;
            pool.observed += o;
        }
    }
    if (pool.expected >= kMinExpectedCount) {
        kept.push_back(pool);
    } else if (pool.expected > 0 || pool.observed > 0) {
        if (kept.empty()) {
            kept.push_back(pool);
        } else {
            auto smallest = std::min_element(kept.begin(), kept.end(), [](const Bin &a, const Bin &b) {
                return a.expected < b.expected;
            });
            smallest->expected += pool.expected;
            smallest->observed += pool.observed;
        }
    }

    ChiSquareResult result;
    for (const auto &b : kept) {
        if (b.expected <= 0) {
            continue;
        }
        double d = b.observed - b.expected;
        result.statistic += d * d / b.expected;
    }
    result.degrees_of_freedom = static_cast<int>(kept.size()) - 1;
    if (result.degrees_of_freedom < 1) {
        result.p_value = result.statistic > 1e-9 ? 0.0 : 1.0;
        return result;
    }
    boost::math::chi_squared dist(result.degrees_of_freedom);
    result.p_value = boost::math::cdf(boost::math::complement(dist, result.statistic));
    return result;
}

DiscriminationReport discriminate(const QuantumState &source_a,
                                  const QuantumState &source_b,
                                  const ProjectiveMeasurement &m,
                                  std::uint64_t trials,
                                  std::uint64_t seed,
                                  std::string measurement_name) {
    if (trials < 1) {
        throw CatlabError(ErrorCode::PreconditionFailed, "discrimination needs at least one trial");
    }
    if (!(space_of(source_a) == space_of(source_b))) {
        throw CatlabError(ErrorCode::DimensionMismatch, "sources live in different spaces");
    }
    DiscriminationReport report;
    report.measurement = std::move(measurement_name);
    report.dist_a = outcome_distribution(m, source_a);
    report.dist_b = outcome_distribution(m, source_b);
    report.total_variation = total_variation(report.dist_a, report.dist_b);
    report.trials = trials;
    report.seed = seed;

    auto sample = [&](const std::vector<OutcomeRecord> &dist, std::uint64_t stream) {
        std::vector<std::uint64_t> counts(dist.size());
        RandomStream rng(seed, stream);
        for (std::uint64_t i = 0; i < trials; i++) {
            counts[pick_outcome(dist, rng.next_uniform())]++;
        }
        return counts;
    };
    report.counts_a = sample(report.dist_a, 0);
    report.counts_b = sample(report.dist_b, 1);

    std::vector<double> expected;
    for (const auto &r : report.dist_a) {
        expected.push_back(r.probability);
    }
    report.fit_b_to_a = chi_square_test(expected, report.counts_b);
    return report;
}

}  // namespace catlab
