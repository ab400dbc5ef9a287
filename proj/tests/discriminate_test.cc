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

#include <cmath>

#include "catlab/catalog.h"
#include "catlab/error.h"
#include "gtest/gtest.h"

using namespace catlab;

namespace {

ProjectiveMeasurement measurement(const std::string &scenario, const std::string &name) {
    return *build_scenario(scenario).find_measurement(name);
}

}  // namespace

TEST(chi_square_test, two_degrees_of_freedom_closed_form) {
    std::vector<double> expected{0.5, 0.25, 0.25};
    std::vector<std::uint64_t> counts{480, 270, 250};
    // Pearson statistic by hand: 400/500 + 400/250 + 0.
    double stat = 400.0 / 500 + 400.0 / 250;
    auto r = chi_square_test(expected, counts);
    EXPECT_NEAR(r.statistic, stat, 1e-12);
    EXPECT_EQ(r.degrees_of_freedom, 2);
    EXPECT_NEAR(r.p_value, std::exp(-stat / 2), 1e-12);
}

TEST(chi_square_test, one_degree_of_freedom_closed_form) {
    std::vector<double> expected{0.3, 0.7};
    std::vector<std::uint64_t> counts{330, 670};
    double stat = 900.0 / 300 + 900.0 / 700;
    auto r = chi_square_test(expected, counts);
    EXPECT_NEAR(r.statistic, stat, 1e-12);
    EXPECT_EQ(r.degrees_of_freedom, 1);
    EXPECT_NEAR(r.p_value, std::erfc(std::sqrt(stat / 2)), 1e-12);
}

TEST(chi_square_test, pools_sparse_bins) {
    std::vector<double> expected{0.98, 0.01, 0.01};
    std::vector<std::uint64_t> counts{98, 1, 1};
    auto r = chi_square_test(expected, counts);
    EXPECT_LE(r.degrees_of_freedom, 1);
    EXPECT_GE(r.p_value, 0.0);
    EXPECT_LE(r.p_value, 1.0);
}

TEST(chi_square_test, impossible_observation) {
    std::vector<double> expected{1.0, 0.0};
    std::vector<std::uint64_t> counts{90, 10};
    EXPECT_EQ(chi_square_test(expected, counts).p_value, 0.0);
    std::vector<std::uint64_t> clean{100, 0};
    EXPECT_EQ(chi_square_test(expected, clean).p_value, 1.0);
}

TEST(chi_square_test, size_mismatch) {
    std::vector<double> expected{1.0};
    std::vector<std::uint64_t> counts{1, 2};
    EXPECT_THROW(chi_square_test(expected, counts), CatlabError);
}

TEST(discriminate, superposition_and_mixture_agree_in_basis) {
    auto r = discriminate(catalog::cat_plus(), catalog::cat_mixture(), measurement("cat", "P_L"), 10000, 5);
    EXPECT_NEAR(r.total_variation, 0.0, 1e-12);
    EXPECT_GT(r.fit_b_to_a.p_value, 1e-4);
}

TEST(discriminate, superposition_and_mixture_differ_in_rotated_basis) {
    auto r = discriminate(catalog::cat_plus(), catalog::cat_mixture(), measurement("cat", "pm"), 10000, 5);
    EXPECT_NEAR(r.total_variation, 0.5, 1e-12);
    EXPECT_LT(r.fit_b_to_a.p_value, 1e-6);
}

TEST(discriminate, schroedinger_state_and_mixture_in_product_basis) {
    auto r = discriminate(catalog::schroedinger_plus(), catalog::chamber_ensemble(),
                          measurement("composite", "product"), 10000, 5);
    EXPECT_NEAR(r.total_variation, 0.0, 1e-12);
}

TEST(discriminate, schroedinger_state_and_mixture_under_candidate) {
    auto r = discriminate(catalog::schroedinger_plus(), catalog::chamber_ensemble(),
                          measurement("composite", "P_Sch+"), 10000, 5);
    EXPECT_NEAR(r.total_variation, 0.5, 1e-12);
}

TEST(discriminate, dichotomy_over_random_pairs) {
    // Either the distributions agree or they differ; sampling only resolves the difference
    // when it is large enough, so check only the exact side here.
    auto plain = measurement("photon", "basis01");
    auto diag = measurement("photon", "basis_x");
    for (int k = 0; k <= 8; k++) {
        double t = k * M_PI / 16;
        auto psi = make_state(catalog::photon_space(), Amplitudes{std::cos(t), std::sin(t)});
        std::vector<WeightedState> parts{{std::norm(std::cos(t)), catalog::photon_h()},
                                         {std::norm(std::sin(t)), catalog::photon_v()}};
        auto rho = make_mixture(parts);
        EXPECT_NEAR(discriminate(psi, rho, plain, 10, 1).total_variation, 0.0, 1e-12);
        double tv = discriminate(psi, rho, diag, 10, 1).total_variation;
        EXPECT_NEAR(tv, std::abs(std::sin(2 * t)) / 2, 1e-12);
    }
}

TEST(discriminate, counts_and_streams) {
    auto m = measurement("cat", "P_L");
    auto r = discriminate(catalog::alive(), catalog::dead(), m, 1000, 9, "P_L");
    EXPECT_EQ(r.measurement, "P_L");
    EXPECT_EQ(r.counts_a, (std::vector<std::uint64_t>{1000, 0}));
    EXPECT_EQ(r.counts_b, (std::vector<std::uint64_t>{0, 1000}));
    EXPECT_EQ(r.fit_b_to_a.p_value, 0.0);
    auto again = discriminate(catalog::cat_plus(), catalog::cat_mixture(), m, 1000, 9);
    auto same = discriminate(catalog::cat_plus(), catalog::cat_mixture(), m, 1000, 9);
    EXPECT_EQ(again.counts_a, same.counts_a);
    EXPECT_EQ(again.counts_b, same.counts_b);
    EXPECT_THROW(discriminate(catalog::alive(), catalog::photon_h(), m, 10, 0), CatlabError);
}

TEST(catalog, photon_rotation_is_reversible) {
    auto r = catalog::photon_rotation();
    EXPECT_GT(fidelity(apply_unitary(r, catalog::photon_h()), catalog::photon_x_plus()), 1 - 1e-12);
    auto inverse = Operator::unitary(catalog::photon_space(), r.matrix().adjoint());
    auto back = apply_unitary(inverse, apply_unitary(r, catalog::photon_h()));
    EXPECT_GT(fidelity(back, catalog::photon_h()), 1 - 1e-12);
}

TEST(catalog, scenarios_build) {
    for (const auto &name : catalog::scenario_names()) {
        auto s = build_scenario(name);
        EXPECT_EQ(s.name, name);
        EXPECT_FALSE(s.states.empty());
        EXPECT_FALSE(s.protocols.empty());
    }
    try {
        build_scenario("unicorn");
        FAIL();
    } catch (const CatlabError &e) {
        EXPECT_EQ(e.code(), ErrorCode::UnknownScenario);
    }
}

TEST(catalog, candidates_are_not_allowed) {
    auto s = build_scenario("cat");
    EXPECT_TRUE(s.is_candidate("P_cat+"));
    EXPECT_FALSE(s.is_candidate("P_L"));
    EXPECT_FALSE(s.lab.has_operation("P_cat+"));
    EXPECT_TRUE(s.lab_assuming({"P_cat+"}).has_operation("P_cat+"));
}
