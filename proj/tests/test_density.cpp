// Copyright 2026 The steering-canon Authors
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
#include "oracles.hpp"

#include <steering_canon/density.hpp>

#include <gtest/gtest.h>

#include <cmath>

namespace sc = steering_canon;

namespace {

const double kGrid[] = {0.0, 0.2, 0.4, 0.6, 0.8};

Eigen::Matrix4cd brute_rdm(int n, int k, double a)
{
    return oracle::reduce_first_two(oracle::spinor_product_state(n, k, a).cast<std::complex<double>>(), n);
}

double max_abs(const Eigen::Matrix4cd& m) { return m.cwiseAbs().maxCoeff(); }

} // namespace

TEST(CgCoefficients, Examples)
{
    const auto r0 = sc::cg_coefficients(9, 0);
    EXPECT_DOUBLE_EQ(r0.c1, 1.0);
    EXPECT_EQ(r0.c0, 0.0);
    EXPECT_EQ(r0.cm1, 0.0);

    for (int n : {3, 5, 12}) {
        const auto r1 = sc::cg_coefficients(n, 1);
        EXPECT_NEAR(r1.c1, std::sqrt((n - 2.0) / n), 1e-15);
        EXPECT_NEAR(r1.c0, std::sqrt(2.0 / n), 1e-15);
        EXPECT_EQ(r1.cm1, 0.0);
    }

    const auto r2 = sc::cg_coefficients(4, 2);
    EXPECT_NEAR(r2.c1, std::sqrt(1.0 / 6.0), 1e-15);
    EXPECT_NEAR(r2.c0, std::sqrt(2.0 / 3.0), 1e-15);
    EXPECT_NEAR(r2.cm1, std::sqrt(1.0 / 6.0), 1e-15);
}

TEST(CgCoefficients, AgreeWithRacahFormula)
{
    // |N/2, N/2 - r> = sum_m c_m |(N-2)/2, N/2 - r - m> |1, m>.
    for (int n = 2; n <= 14; ++n) {
        const double j1 = (n - 2) / 2.0;
        const double j = n / 2.0;
        for (int r = 0; r <= n; ++r) {
            const double m = j - r;
            const auto c = sc::cg_coefficients(n, r);
            const double want[] = {std::abs(j1) >= std::abs(m - 1) ? oracle::clebsch_gordan(j1, m - 1, 1, 1, j, m) : 0.0,
                                   std::abs(j1) >= std::abs(m) ? oracle::clebsch_gordan(j1, m, 1, 0, j, m) : 0.0,
                                   std::abs(j1) >= std::abs(m + 1) ? oracle::clebsch_gordan(j1, m + 1, 1, -1, j, m) : 0.0};
            EXPECT_NEAR(c.c1, want[0], 1e-13) << n << " " << r;
            EXPECT_NEAR(c.c0, want[1], 1e-13) << n << " " << r;
            EXPECT_NEAR(c.cm1, want[2], 1e-13) << n << " " << r;
        }
    }
}

TEST(CgCoefficients, ColumnNormalization)
{
    for (int n = 2; n <= 60; ++n) {
        for (int r = 0; r <= n; ++r) {
            const auto c = sc::cg_coefficients(n, r);
            EXPECT_NEAR(c.c1 * c.c1 + c.c0 * c.c0 + c.cm1 * c.cm1, 1.0, 1e-12);
            EXPECT_GE(std::min({c.c1, c.c0, c.cm1}), 0.0);
        }
    }
}

TEST(CgCoefficients, RejectsOutOfRange)
{
    EXPECT_THROW(sc::cg_coefficients(5, -1), sc::DomainError);
    EXPECT_THROW(sc::cg_coefficients(5, 6), sc::DomainError);
}

TEST(RdmClosedForm, WStateMarginal)
{
    const auto rho = sc::rdm_closed_form(sc::FamilySpec(3, 1, 0.0));
    const auto e = sc::rdm_elements(sc::FamilySpec(3, 1, 0.0));
    EXPECT_NEAR(e.A, 1.0 / 3.0, 1e-15);
    EXPECT_NEAR(e.D, 1.0 / 3.0, 1e-15);
    EXPECT_EQ(e.B, 0.0);
    EXPECT_EQ(e.C, 0.0);
    EXPECT_EQ(e.E, 0.0);
    EXPECT_EQ(e.F, 0.0);
    EXPECT_NEAR(rho.m(1, 2).real(), 1.0 / 3.0, 1e-15);
}

TEST(RdmClosedForm, EightQubitExampleMatchesOracle)
{
    const sc::FamilySpec spec(8, 3, 0.4);
    EXPECT_LT(max_abs(sc::rdm_closed_form(spec).m - brute_rdm(8, 3, 0.4)), 1e-12);
}

TEST(RdmClosedForm, MatchesPartialTraceOnGrid)
{
    for (int n = 3; n <= 10; ++n) {
        for (int k = 1; k <= n / 2; ++k) {
            for (double a : kGrid) {
                const sc::FamilySpec spec(n, k, a);
                const auto closed = sc::rdm_closed_form(spec);
                EXPECT_LT(max_abs(closed.m - brute_rdm(n, k, a)), 1e-12) << n << " " << k << " " << a;
                const auto lib = sc::rdm_oracle(sc::full_state_vector(sc::dicke_coefficients(spec)));
                EXPECT_LT(max_abs(closed.m - lib.m), 1e-12) << n << " " << k << " " << a;
            }
        }
    }
}

TEST(RdmClosedForm, PhysicalRealAndSwapSymmetric)
{
    Eigen::Matrix4cd swap = Eigen::Matrix4cd::Zero();
    swap(0, 0) = swap(1, 2) = swap(2, 1) = swap(3, 3) = 1.0;
    for (int n = 3; n <= 40; n += 3) {
        for (int k = 1; k <= n / 2; ++k) {
            for (double a : {0.0, 0.3, 0.7, 0.95}) {
                const auto rho = sc::rdm_closed_form(sc::FamilySpec(n, k, a));
                EXPECT_TRUE(rho.is_valid()) << n << " " << k << " " << a;
                EXPECT_NEAR(rho.trace().real(), 1.0, 1e-12);
                EXPECT_EQ(rho.m.imag().norm(), 0.0);
                EXPECT_LT(max_abs(swap * rho.m - rho.m * swap), 1e-12);
            }
        }
    }
}

TEST(RdmWClass, PrintedElementsAndAgreement)
{
    for (int n = 3; n <= 30; ++n) {
        for (double a : {0.0, 0.1, 0.3, 0.5, 0.9}) {
            const auto w = sc::rdm_w_class(n, a);
            const auto closed = sc::rdm_closed_form(sc::FamilySpec(n, 1, a));
            EXPECT_LT(max_abs(w.m - closed.m), 1e-12) << n << " " << a;
            EXPECT_NEAR(w.m(0, 1).real(), a * std::sqrt(1 - a * a) / (1 + a * a * (n - 1)), 1e-15);
            EXPECT_EQ(std::abs(w.m(3, 3)), 0.0);
            EXPECT_EQ(std::abs(w.m(0, 3)), 0.0);
        }
    }
    EXPECT_THROW(sc::rdm_w_class(2, 0.1), sc::DomainError);
}

TEST(RdmOracle, PairIndependence)
{
    const auto full = sc::full_state_vector(sc::dicke_coefficients(sc::FamilySpec(6, 2, 0.35)));
    const auto ref = sc::rdm_oracle(full);
    for (auto [qa, qb] : {std::pair{2, 4}, std::pair{1, 3}, std::pair{0, 5}, std::pair{4, 5}}) {
        EXPECT_LT(max_abs(sc::rdm_oracle_pair(full, qa, qb).m - ref.m), 1e-14) << qa << "," << qb;
    }
}

TEST(RdmOracle, ProductStateAndPositivity)
{
    sc::FullStateVector zero{5, Eigen::VectorXcd::Zero(32)};
    zero.amplitudes[0] = 1.0;
    const auto rho = sc::rdm_oracle(zero);
    EXPECT_EQ(rho.m(0, 0), std::complex<double>(1.0, 0.0));
    EXPECT_NEAR(rho.m.cwiseAbs().sum(), 1.0, 1e-15);

    const auto w = sc::rdm_oracle(sc::full_state_vector(sc::dicke_coefficients(sc::FamilySpec(3, 1, 0.0))));
    EXPECT_LT(max_abs(w.m - sc::rdm_closed_form(sc::FamilySpec(3, 1, 0.0)).m), 1e-14);
    EXPECT_GE(w.min_eigenvalue(), -1e-12);
}

TEST(RdmOracle, CapacityGuard)
{
    sc::FullStateVector big{15, Eigen::VectorXcd::Zero(1)};
    EXPECT_THROW(sc::rdm_oracle(big), sc::CapacityError);
}

TEST(TwoQubitDensity, ValidityChecks)
{
    sc::TwoQubitDensity rho;
    rho.m = Eigen::Matrix4cd::Identity() / 4.0;
    EXPECT_TRUE(rho.is_valid());
    rho.m(0, 1) = 0.1;
    EXPECT_FALSE(rho.is_valid()); // not Hermitian
    rho.m = Eigen::Matrix4cd::Identity() / 2.0;
    EXPECT_FALSE(rho.is_valid()); // trace 2
    rho.m = Eigen::Vector4cd(0.7, 0.5, -0.2, 0.0).asDiagonal();
    EXPECT_FALSE(rho.is_valid()); // negative eigenvalue
}
