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

#include <array>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "catlab/eigen.h"
#include "catlab/measure.h"
#include "catlab/state.h"

namespace catlab::test_util {

inline Amplitudes random_amplitudes(std::mt19937_64 &rng, std::size_t dim) {
    std::normal_distribution<double> normal;
    Amplitudes amps(dim);
    for (auto &a : amps) {
        a = {normal(rng), normal(rng)};
    }
    return amps;
}

inline HilbertSpace numbered_space(std::size_t dim) {
    std::vector<std::string> labels;
    for (std::size_t k = 0; k < dim; k++) {
        labels.push_back("e" + std::to_string(k));
    }
    return HilbertSpace(labels);
}

inline StateVector random_state(std::mt19937_64 &rng, const HilbertSpace &space) {
    return make_state(space, random_amplitudes(rng, space.dim()));
}

inline DensityMatrix random_mixture(std::mt19937_64 &rng, const HilbertSpace &space, std::size_t parts) {
    std::uniform_real_distribution<double> unit(0.01, 1.0);
    std::vector<double> w(parts);
    double total = 0;
    for (auto &x : w) {
        x = unit(rng);
        total += x;
    }
    std::vector<WeightedState> mix;
    double acc = 0;
    for (std::size_t k = 0; k < parts; k++) {
        double weight = k + 1 == parts ? 1.0 - acc : w[k] / total;
        acc += weight;
        mix.push_back({weight, random_state(rng, space)});
    }
    return make_mixture(mix);
}

/// Orthonormal basis from the eigenvectors of a random Hermitian matrix.
inline std::vector<StateVector> random_basis(std::mt19937_64 &rng, const HilbertSpace &space) {
    std::size_t dim = space.dim();
    Matrix raw(dim, random_amplitudes(rng, dim * dim));
    auto eig = hermitian_eigen((raw + raw.adjoint()) * Complex(0.5));
    std::vector<StateVector> out;
    for (std::size_t c = 0; c < dim; c++) {
        Amplitudes col(dim);
        for (std::size_t r = 0; r < dim; r++) {
            col[r] = eig.vectors(r, c);
        }
        out.push_back(make_state(space, col));
    }
    return out;
}

/// Measurement on the first `count` vectors of a random basis (auto-completed).
inline ProjectiveMeasurement random_measurement(std::mt19937_64 &rng, const HilbertSpace &space, std::size_t count) {
    auto basis = random_basis(rng, space);
    basis.resize(count, basis.front());
    std::vector<std::string> labels;
    for (std::size_t k = 0; k < count; k++) {
        labels.push_back("m" + std::to_string(k));
    }
    return ProjectiveMeasurement::from_states(basis, labels);
}

inline double max_abs_diff(const Amplitudes &a, const Amplitudes &b) {
    double worst = 0;
    for (std::size_t k = 0; k < a.size(); k++) {
        worst = std::max(worst, std::abs(a[k] - b[k]));
    }
    return worst;
}

using Qubit = std::array<std::complex<double>, 2>;

inline double overlap2(const Qubit &u, const Qubit &v) {
    return std::norm(std::conj(u[0]) * v[0] + std::conj(u[1]) * v[1]);
}

/// Probability that the P_S / P_L loop started from `psi` ends alive within
/// `rounds` rounds, by walking every branch on bare arrays. A round that ends
/// dead starts over from |dead>.
inline double brute_force_resurrection(const Qubit &s, const Qubit &psi, int rounds) {
    if (rounds == 0) {
        return 0;
    }
    const Qubit alive{1.0, 0.0};
    const Qubit dead{0.0, 1.0};
    const Qubit s_perp{-std::conj(s[1]), std::conj(s[0])};
    double total = 0;
    for (const Qubit &post : {s, s_perp}) {
        double p_first = overlap2(post, psi);
        double p_alive = overlap2(alive, post);
        total += p_first * p_alive;
        total += p_first * (1 - p_alive) * brute_force_resurrection(s, dead, rounds - 1);
    }
    return total;
}

}  // namespace catlab::test_util
