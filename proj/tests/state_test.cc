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

#include <cmath>
#include <random>

#include "catlab/catalog.h"
#include "catlab/eigen.h"
#include "catlab/error.h"
#include "catlab/state.h"
#include "gtest/gtest.h"
#include "test_util.h"

using namespace catlab;

namespace {

const double kInvSqrt2 = 1 / std::sqrt(2.0);

ErrorCode code_of(auto &&fn) {
    try {
        fn();
    } catch (const CatlabError &e) {
        return e.code();
    }
    ADD_FAILURE() << "expected a CatlabError";
    return ErrorCode::ValidationError;
}

}  // namespace

TEST(hilbert_space, validates_labels) {
    EXPECT_EQ(code_of([] { HilbertSpace({"a", "a"}); }), ErrorCode::ValidationError);
    EXPECT_EQ(code_of([] { HilbertSpace({"a", ""}); }), ErrorCode::ValidationError);
    EXPECT_EQ(code_of([] { HilbertSpace({"a"}); }), ErrorCode::ValidationError);
    EXPECT_EQ(code_of([] { test_util::numbered_space(17); }), ErrorCode::DimensionCeiling);
    auto s = HilbertSpace({"x", "y", "z"});
    EXPECT_EQ(s.index_of("z"), 2u);
    EXPECT_EQ(code_of([&] { s.index_of("w"); }), ErrorCode::UnknownName);
}

TEST(hilbert_space, product_labels_and_factors) {
    auto s = catalog::composite_space();
    ASSERT_EQ(s.dim(), 4u);
    EXPECT_EQ(s.label(0), "undecayed⊗alive");
    EXPECT_EQ(s.label(3), "decayed⊗dead");
    EXPECT_EQ(s.factor_dims(), (std::vector<std::size_t>{2, 2}));
    EXPECT_EQ(code_of([&] { HilbertSpace::product(s, test_util::numbered_space(5)); }), ErrorCode::DimensionCeiling);
}

TEST(make_state, basis_state_unchanged) {
    auto s = make_state(catalog::cat_space(), Amplitudes{1, 0});
    EXPECT_EQ(s.amps(), (Amplitudes{1, 0}));
}

TEST(make_state, equal_superposition_is_cat_plus) {
    auto s = make_state(catalog::cat_space(), Amplitudes{1, 1});
    EXPECT_NEAR(s[0].real(), kInvSqrt2, 1e-15);
    EXPECT_NEAR(s[1].real(), kInvSqrt2, 1e-15);
    EXPECT_LT(test_util::max_abs_diff(s.amps(), catalog::cat_plus().amps()), 1e-15);
}

TEST(make_state, divides_by_norm_preserving_phase) {
    // Norm by direct summation: |3|^2 + |4i|^2 = 25, so the norm is 5.
    double norm = std::sqrt(3.0 * 3.0 + 4.0 * 4.0);
    ASSERT_EQ(norm, 5.0);
    auto s = make_state(catalog::cat_space(), Amplitudes{3, {0, 4}});
    EXPECT_NEAR(std::abs(s[0] - Complex(3 / norm, 0)), 0, 1e-15);
    EXPECT_NEAR(std::abs(s[1] - Complex(0, 4 / norm)), 0, 1e-15);
    EXPECT_NEAR(s[0].real(), 0.6, 1e-15);
    EXPECT_NEAR(s[1].imag(), 0.8, 1e-15);
}

TEST(make_state, errors) {
    auto space = catalog::cat_space();
    EXPECT_EQ(code_of([&] { make_state(space, Amplitudes{0, 0}); }), ErrorCode::ZeroVector);
    EXPECT_EQ(code_of([&] { make_state(space, Amplitudes{1e-11, 0}); }), ErrorCode::ZeroVector);
    EXPECT_EQ(code_of([&] { make_state(space, Amplitudes{1, 0, 0}); }), ErrorCode::DimensionMismatch);
    EXPECT_EQ(code_of([&] { make_state(space, Amplitudes{NAN, 1}); }), ErrorCode::InvalidState);
}

TEST(make_state, random_states_are_normalized) {
    std::mt19937_64 rng(1);
    for (int k = 0; k < 1000; k++) {
        auto space = test_util::numbered_space(2 + k % 15);
        auto s = test_util::random_state(rng, space);
        EXPECT_LT(std::abs(norm_squared(s.amps()) - 1), 1e-12);
    }
}

TEST(make_mixture, equal_alive_dead_is_diagonal_half) {
    auto rho = catalog::cat_mixture();
    EXPECT_LT(rho.matrix().max_abs_diff(Matrix(2, {0.5, 0, 0, 0.5})), 1e-15);
}

TEST(make_mixture, single_component_is_pure_projector) {
    auto psi = make_state(catalog::cat_space(), Amplitudes{0.6, {0, 0.8}});
    std::vector<WeightedState> parts{{1.0, psi}};
    auto rho = make_mixture(parts);
    EXPECT_LT(rho.matrix().max_abs_diff(Matrix::outer(psi.amps(), psi.amps())), 1e-15);
}

TEST(make_mixture, plus_minus_mixture_equals_alive_dead_mixture) {
    std::vector<WeightedState> pm{{0.5, catalog::cat_plus()}, {0.5, catalog::cat_minus()}};
    auto a = make_mixture(pm);
    auto b = catalog::cat_mixture();
    EXPECT_LT(a.matrix().max_abs_diff(b.matrix()), 1e-12);
    EXPECT_LT(a.matrix().max_abs_diff(Matrix(2, {0.5, 0, 0, 0.5})), 1e-12);
}

TEST(make_mixture, errors) {
    std::vector<WeightedState> over{{0.6, catalog::alive()}, {0.6, catalog::dead()}};
    EXPECT_EQ(code_of([&] { make_mixture(over); }), ErrorCode::BadWeights);
    std::vector<WeightedState> negative{{1.5, catalog::alive()}, {-0.5, catalog::dead()}};
    EXPECT_EQ(code_of([&] { make_mixture(negative); }), ErrorCode::BadWeights);
    std::vector<WeightedState> mixed_space{{0.5, catalog::alive()}, {0.5, catalog::undecayed()}};
    EXPECT_EQ(code_of([&] { make_mixture(mixed_space); }), ErrorCode::DimensionMismatch);
    EXPECT_EQ(code_of([&] { make_mixture({}); }), ErrorCode::BadWeights);
}

TEST(make_mixture, random_mixtures_satisfy_density_invariants) {
    std::mt19937_64 rng(2);
    for (int k = 0; k < 300; k++) {
        auto space = test_util::numbered_space(2 + k % 7);
        auto rho = test_util::random_mixture(rng, space, 1 + k % 4);
        const auto &m = rho.matrix();
        EXPECT_TRUE(m.is_hermitian(1e-10));
        EXPECT_NEAR(m.trace().real(), 1, 1e-10);
        EXPECT_GE(hermitian_eigenvalues(m).front(), -1e-9);
    }
}

TEST(density_matrix, rejects_invalid_matrices) {
    auto space = catalog::cat_space();
    EXPECT_EQ(code_of([&] { DensityMatrix::from_matrix(space, Matrix(2, {0.5, 0, 0, 0.4})); }),
              ErrorCode::InvalidState);
    EXPECT_EQ(code_of([&] { DensityMatrix::from_matrix(space, Matrix(2, {0.5, 0.1, 0, 0.5})); }),
              ErrorCode::InvalidState);
    EXPECT_EQ(code_of([&] { DensityMatrix::from_matrix(space, Matrix(2, {1.5, 0, 0, -0.5})); }),
              ErrorCode::InvalidState);
    EXPECT_EQ(code_of([&] { DensityMatrix::from_matrix(space, Matrix(3)); }), ErrorCode::DimensionMismatch);
}

TEST(tensor, product_of_basis_states) {
    auto s = tensor(catalog::undecayed(), catalog::alive());
    EXPECT_EQ(s.dim(), 4u);
    EXPECT_EQ(s.amps(), (Amplitudes{1, 0, 0, 0}));
    EXPECT_TRUE(s.space().is_product());
}

TEST(tensor, expands_device_superposition) {
    // (|u> + |d>)/sqrt2 (x) |alive> = (|u,alive> + |d,alive>)/sqrt2 -> indices 0 and 2.
    auto s = tensor(catalog::device_plus(), catalog::alive());
    Amplitudes expected{kInvSqrt2, 0, kInvSqrt2, 0};
    EXPECT_LT(test_util::max_abs_diff(s.amps(), expected), 1e-15);
}

TEST(tensor, mixtures_multiply_diagonals) {
    auto rho = tensor(catalog::cat_mixture(), catalog::cat_mixture());
    Matrix expected(4);
    for (std::size_t k = 0; k < 4; k++) {
        expected(k, k) = 0.25;
    }
    EXPECT_LT(rho.matrix().max_abs_diff(expected), 1e-15);
    EXPECT_NEAR(rho.matrix().trace().real(), 1, 1e-15);
}

TEST(partial_trace, schroedinger_cat_reduces_to_cat_mixture) {
    auto reduced = partial_trace(DensityMatrix::pure(catalog::schroedinger_plus()), 1);
    EXPECT_EQ(reduced.space(), catalog::cat_space());
    EXPECT_LT(reduced.matrix().max_abs_diff(catalog::cat_mixture().matrix()), 1e-12);
}

TEST(partial_trace, product_state_reduces_to_factor) {
    std::mt19937_64 rng(4);
    auto psi = test_util::random_state(rng, catalog::cat_space());
    auto sigma = test_util::random_mixture(rng, catalog::device_space(), 3);
    auto joint = tensor(DensityMatrix::pure(psi), sigma);
    auto reduced = partial_trace(joint, 0);
    EXPECT_LT(reduced.matrix().max_abs_diff(Matrix::outer(psi.amps(), psi.amps())), 1e-12);
}

TEST(partial_trace, minus_cat_matches_brute_force_trace) {
    auto psi = catalog::schroedinger_minus();
    // Brute-force oracle: index = device * 2 + cat; sum over device explicitly.
    Matrix oracle(2);
    for (int c = 0; c < 2; c++) {
        for (int c2 = 0; c2 < 2; c2++) {
            for (int dev = 0; dev < 2; dev++) {
                oracle(c, c2) += psi[dev * 2 + c] * std::conj(psi[dev * 2 + c2]);
            }
        }
    }
    EXPECT_LT(oracle.max_abs_diff(Matrix(2, {0.5, 0, 0, 0.5})), 1e-15);
    auto reduced = partial_trace(DensityMatrix::pure(psi), 1);
    EXPECT_LT(reduced.matrix().max_abs_diff(oracle), 1e-15);
}

TEST(partial_trace, inverts_tensor_for_random_operands) {
    std::mt19937_64 rng(6);
    for (int k = 0; k < 200; k++) {
        auto left = test_util::numbered_space(2 + k % 3);
        auto right = HilbertSpace({"p", "q", "r"});
        auto rho = test_util::random_mixture(rng, left, 1 + k % 3);
        auto sigma = test_util::random_mixture(rng, right, 2);
        auto joint = tensor(rho, sigma);
        EXPECT_LT(partial_trace(joint, 0).matrix().max_abs_diff(rho.matrix()), 1e-10);
        EXPECT_LT(partial_trace(joint, 1).matrix().max_abs_diff(sigma.matrix()), 1e-10);
    }
}

TEST(partial_trace, three_factor_middle) {
    std::mt19937_64 rng(8);
    auto a = test_util::random_mixture(rng, HilbertSpace({"a0", "a1"}), 2);
    auto b = test_util::random_mixture(rng, HilbertSpace({"b0", "b1"}), 2);
    auto c = test_util::random_mixture(rng, HilbertSpace({"c0", "c1"}), 2);
    auto joint = tensor(tensor(a, b), c);
    ASSERT_EQ(joint.space().factors().size(), 3u);
    EXPECT_LT(partial_trace(joint, 1).matrix().max_abs_diff(b.matrix()), 1e-12);
}

TEST(partial_trace, requires_product_space) {
    EXPECT_EQ(code_of([] { partial_trace(catalog::cat_mixture(), 0); }), ErrorCode::NotProductSpace);
}

TEST(projector_from_state, basis_projector) {
    auto p = projector_from_state(catalog::alive());
    EXPECT_EQ(p.kind(), OperatorKind::Projector);
    EXPECT_EQ(p.matrix(), Matrix(2, {1, 0, 0, 0}));
}

TEST(projector_from_state, cat_plus_projector_is_all_halves) {
    auto p = projector_from_state(catalog::cat_plus());
    EXPECT_LT(p.matrix().max_abs_diff(Matrix(2, {0.5, 0.5, 0.5, 0.5})), 1e-15);
}

TEST(projector_from_state, outer_product_by_hand) {
    // [[0.6*0.6, 0.6*0.8], [0.8*0.6, 0.8*0.8]]
    auto p = projector_from_state(make_state(catalog::cat_space(), Amplitudes{0.6, 0.8}));
    EXPECT_LT(p.matrix().max_abs_diff(Matrix(2, {0.36, 0.48, 0.48, 0.64})), 1e-15);
}

TEST(projector_from_state, random_projectors_are_idempotent) {
    std::mt19937_64 rng(9);
    for (int k = 0; k < 1000; k++) {
        auto psi = test_util::random_state(rng, test_util::numbered_space(2 + k % 15));
        auto op = projector_from_state(psi);
        const auto &p = op.matrix();
        EXPECT_LT((p * p).max_abs_diff(p), 1e-10);
        EXPECT_TRUE(p.is_hermitian(1e-10));
    }
}

TEST(operator_kinds, validation) {
    auto space = catalog::cat_space();
    EXPECT_EQ(code_of([&] { Operator::projector(space, Matrix(2, {1, 1, 0, 0})); }), ErrorCode::InvalidOperator);
    EXPECT_EQ(code_of([&] { Operator::unitary(space, Matrix(2, {1, 1, 0, 1})); }), ErrorCode::InvalidOperator);
    EXPECT_NO_THROW(catalog::photon_rotation());
}

TEST(orthogonal_in_span, symmetric_case) {
    auto l = catalog::alive();
    auto d = catalog::dead();
    auto perp = orthogonal_in_span(catalog::cat_plus(), l, d);
    EXPECT_LT(test_util::max_abs_diff(perp.amps(), catalog::cat_minus().amps()), 1e-15);
}

TEST(orthogonal_in_span, solves_orthogonality_in_two_dims) {
    // <S'|S> = 0 with S = 0.6L + 0.8D gives S' proportional to 0.8L - 0.6D.
    auto s = make_state(catalog::cat_space(), Amplitudes{0.6, 0.8});
    auto perp = orthogonal_in_span(s, catalog::alive(), catalog::dead());
    EXPECT_LT(test_util::max_abs_diff(perp.amps(), Amplitudes{0.8, -0.6}), 1e-15);
    EXPECT_LT(std::abs(inner(perp.amps(), s.amps())), 1e-15);
}

TEST(orthogonal_in_span, completes_basis) {
    auto perp = orthogonal_in_span(catalog::alive(), catalog::alive(), catalog::dead());
    EXPECT_EQ(perp.amps(), catalog::dead().amps());
}

TEST(orthogonal_in_span, random_states_in_embedded_span) {
    std::mt19937_64 rng(10);
    auto space = test_util::numbered_space(5);
    auto b0 = basis_state(space, "e1");
    auto b1 = make_state(space, Amplitudes{0, 0, 0, {0, 1}, 1});
    for (int k = 0; k < 500; k++) {
        auto c = test_util::random_amplitudes(rng, 2);
        Amplitudes raw(5);
        for (std::size_t i = 0; i < 5; i++) {
            raw[i] = c[0] * b0[i] + c[1] * b1[i];
        }
        auto s = make_state(space, raw);
        auto perp = orthogonal_in_span(s, b0, b1);
        EXPECT_LT(std::abs(inner(perp.amps(), s.amps())), 1e-10);
        EXPECT_LT(std::abs(norm_squared(perp.amps()) - 1), 1e-12);
        auto first = std::find_if(perp.amps().begin(), perp.amps().end(),
                                  [](Complex z) { return std::abs(z) > 1e-12; });
        ASSERT_NE(first, perp.amps().end());
        EXPECT_EQ(first->imag(), 0.0);
        EXPECT_GT(first->real(), 0.0);
    }
}

TEST(orthogonal_in_span, rejects_state_outside_span) {
    auto space = test_util::numbered_space(3);
    auto psi = make_state(space, Amplitudes{1, 1, 1});
    EXPECT_EQ(code_of([&] { orthogonal_in_span(psi, basis_state(space, "e0"), basis_state(space, "e1")); }),
              ErrorCode::NotInSpan);
}

TEST(overlap_probability, catalog_values) {
    auto ps = catalog::superposition_projector(catalog::alive(), catalog::dead(), kInvSqrt2, kInvSqrt2);
    EXPECT_NEAR(overlap_probability(catalog::dead(), ps), 0.5, 1e-15);
    EXPECT_DOUBLE_EQ(overlap_probability(catalog::alive(), projector_from_state(catalog::alive())), 1.0);
    auto psch = projector_from_state(catalog::schroedinger_plus());
    EXPECT_NEAR(overlap_probability(catalog::chamber_ensemble(), psch), 0.5, 1e-15);
}

TEST(overlap_probability, rejects_non_projector_and_mismatch) {
    EXPECT_EQ(code_of([] { overlap_probability(catalog::alive(), catalog::photon_rotation()); }),
              ErrorCode::InvalidOperator);
    EXPECT_EQ(code_of([] { overlap_probability(catalog::undecayed(), projector_from_state(catalog::alive())); }),
              ErrorCode::DimensionMismatch);
}

TEST(canonicalize_phase, first_nonzero_becomes_real_positive) {
    auto s = make_state(catalog::cat_space(), Amplitudes{{0, -1}, 1});
    auto c = canonicalize_phase(s);
    EXPECT_EQ(c[0], Complex(1 / std::sqrt(2.0), 0));
    EXPECT_NEAR(std::abs(c[1] - Complex(0, 1 / std::sqrt(2.0))), 0, 1e-15);
    EXPECT_EQ(state_key(QuantumState(s)), state_key(QuantumState(c)));
}

TEST(format_state, readable_kets) {
    EXPECT_EQ(format_state(catalog::alive()), "|alive⟩");
    EXPECT_EQ(format_state(make_state(catalog::cat_space(), Amplitudes{0.6, -0.8})), "0.6|alive⟩ - 0.8|dead⟩");
}
