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

#include <steering_canon/analysis.hpp>
#include <steering_canon/sampling.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <set>

namespace sc = steering_canon;

TEST(Concurrence, ReferenceStates)
{
    sc::TwoQubitDensity mixed;
    mixed.m = Eigen::Matrix4cd::Identity() / 4.0;
    EXPECT_EQ(sc::concurrence_wootters(mixed), 0.0);

    sc::TwoQubitDensity bell;
    const Eigen::Vector4cd phi = Eigen::Vector4cd(1, 0, 0, 1) / std::sqrt(2.0);
    bell.m = phi * phi.adjoint();
    EXPECT_NEAR(sc::concurrence_wootters(bell), 1.0, 1e-14);

    for (int n = 3; n <= 20; ++n) {
        EXPECT_NEAR(sc::concurrence_wootters(sc::rdm_w_class(n, 0.0)), 2.0 / n, 1e-12);
    }
}

TEST(Concurrence, MatchesREigenvalueRoute)
{
    sc::Rng rng(41);
    for (int i = 0; i < 1000; ++i) {
        const auto rho = sc::random_density(rng);
        EXPECT_NEAR(sc::concurrence_wootters(rho), oracle::wootters_r(rho.m), 1e-9);
    }
    // Rank-deficient family states: the R route is only good to ~1e-8 there.
    for (int n = 3; n <= 12; ++n) {
        for (int k = 1; k <= n / 2; ++k) {
            const auto rho = sc::rdm_closed_form(sc::FamilySpec(n, k, 0.3));
            EXPECT_NEAR(sc::concurrence_wootters(rho), oracle::wootters_r(rho.m), 1e-7);
        }
    }
}

TEST(Concurrence, WClassClosedForm)
{
    for (int n = 3; n <= 30; ++n) {
        for (int i = 0; i <= 9; ++i) {
            const double a = i / 10.0;
            EXPECT_NEAR(sc::concurrence_wootters(sc::rdm_w_class(n, a)), sc::concurrence_w_closed_form(n, a), 1e-10);
        }
    }
    EXPECT_NEAR(sc::concurrence_w_closed_form(3, 0.0), 2.0 / 3.0, 1e-15);
    EXPECT_LT(sc::concurrence_w_closed_form(5, 0.999), 1e-3);
    EXPECT_NEAR(sc::concurrence_wootters(sc::rdm_w_class(5, 0.999)), sc::concurrence_w_closed_form(5, 0.999), 1e-10);
    double previous = 2.0;
    for (int i = 0; i < 100; ++i) {
        const double c = sc::concurrence_w_closed_form(8, i / 100.0);
        EXPECT_LE(c, previous);
        previous = c;
    }
}

TEST(Concurrence, CanonicalWClassState)
{
    for (int n = 3; n <= 30; ++n) {
        const auto c = sc::classify(sc::lambda_from_rho(sc::rdm_w_class(n, 0.6)));
        const auto rho = sc::canonical_rho(c);
        EXPECT_NEAR(sc::concurrence_wootters(rho), 1.0 / std::sqrt(n - 1.0), 1e-10);
        EXPECT_NEAR(sc::obesity(rho), 1.0 / std::sqrt(n - 1.0), 1e-10);
    }
}

TEST(Obesity, BoundsConcurrenceAndRatioIsOrbitInvariant)
{
    sc::Rng rng(42);
    int ratio_checks = 0;
    for (int i = 0; i < 10000; ++i) {
        const auto rho = sc::random_density(rng);
        const double c = sc::concurrence_wootters(rho);
        const double o = sc::obesity(rho);
        ASSERT_LE(c, o + 1e-12);
        if (c > 1e-6) {
            const auto moved = sc::slocc_transform(rho, sc::random_sl2c(rng), sc::random_sl2c(rng));
            const double c2 = sc::concurrence_wootters(moved);
            if (c2 > 1e-6) {
                EXPECT_NEAR(sc::obesity(moved) / c2, o / c, 1e-8 * o / c);
                ++ratio_checks;
            }
        }
    }
    EXPECT_GT(ratio_checks, 100);
}

TEST(Monogamy, PureThreeQubit)
{
    const auto sat = sc::monogamy_pure3(0.25, 0.25);
    EXPECT_NEAR(sat.lhs, 1.0, 1e-15);
    EXPECT_TRUE(sat.satisfied);
    EXPECT_EQ(sc::monogamy_pure3(0, 0).lhs, 0.0);
    const auto bad = sc::monogamy_pure3(1, 1);
    EXPECT_EQ(bad.lhs, 2.0);
    EXPECT_FALSE(bad.satisfied);
    EXPECT_EQ(bad.slack, -1.0);
    EXPECT_EQ(bad.relation, sc::MonogamyRelation::pure3);
}

TEST(Monogamy, MixedThreeQubit)
{
    EXPECT_NEAR(sc::monogamy_mixed3(0.25, 0.25).lhs, 2.0 * std::pow(0.25, 2.0 / 3.0), 1e-15);
    EXPECT_NEAR(sc::monogamy_mixed3(0.25, 0.25).lhs, 0.7937, 1e-4);
    EXPECT_EQ(sc::monogamy_mixed3(0, 0).lhs, 0.0);
    const auto edge = sc::monogamy_mixed3(1, 0);
    EXPECT_TRUE(edge.satisfied);
    EXPECT_EQ(edge.slack, 0.0);
}

TEST(Monogamy, Symmetric)
{
    for (int n = 3; n <= 200; ++n) {
        const double v = 1.0 / ((n - 1.0) * (n - 1.0));
        const auto r = sc::monogamy_symmetric(v, n);
        EXPECT_NEAR(r.lhs, std::pow(n - 1.0, -4.0 / 3.0), 1e-14);
        EXPECT_TRUE(r.satisfied);
        EXPECT_EQ(r.bound, 0.5);
    }
    EXPECT_EQ(sc::monogamy_symmetric(0, 5).lhs, 0.0);
    const auto r3 = sc::monogamy_symmetric(0.25, 3);
    EXPECT_NEAR(r3.lhs, 0.3969, 1e-4);
    EXPECT_NEAR(r3.slack, 0.1031, 1e-4);
}

TEST(Monogamy, NQubit)
{
    const std::vector<double> w4(3, 1.0 / 9.0);
    const auto r = sc::monogamy_nqubit(w4, 4);
    EXPECT_NEAR(r.lhs, 3 * std::pow(1.0 / 9.0, 2.0 / 3.0), 1e-15);
    EXPECT_NEAR(r.lhs, 0.6934, 1e-4);
    EXPECT_EQ(r.bound, 1.5);
    EXPECT_EQ(sc::monogamy_nqubit(std::vector<double>(5, 0.0), 6).lhs, 0.0);
    // All-equal volumes reduce to the symmetric relation scaled by N - 1.
    const double v = 0.07;
    EXPECT_NEAR(sc::monogamy_nqubit(std::vector<double>(6, v), 7).lhs, 6 * sc::monogamy_symmetric(v, 7).lhs, 1e-15);
    EXPECT_THROW(sc::monogamy_nqubit(w4, 5), sc::DomainError);
}

TEST(Monogamy, RejectsOutOfRangeInputs)
{
    EXPECT_THROW(sc::monogamy_pure3(-0.1, 0.0), sc::DomainError);
    EXPECT_THROW(sc::monogamy_mixed3(0.0, 1.5), sc::DomainError);
    EXPECT_THROW(sc::monogamy_symmetric(0.1, 2), sc::DomainError);
    EXPECT_THROW(sc::monogamy_symmetric(std::nan(""), 5), sc::DomainError);
}

TEST(WClassReport, ClosedForms)
{
    const auto r3 = sc::w_class_report(3);
    EXPECT_LT((r3.center - Eigen::Vector3d(0, 0, 0.5)).norm(), 1e-15);
    EXPECT_NEAR(r3.semiaxes[0], 1 / std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(r3.semiaxes[2], 0.5, 1e-15);
    EXPECT_NEAR(r3.normalized_volume, 0.25, 1e-15);
    EXPECT_NEAR(sc::w_class_report(10).normalized_volume, 1.0 / 81.0, 1e-15);
    double previous = 1.0;
    for (int n = 3; n <= 100; ++n) {
        const auto r = sc::w_class_report(n);
        EXPECT_LT(r.normalized_volume, previous);
        previous = r.normalized_volume;
        const auto c = sc::classify(sc::lambda_from_rho(sc::rdm_w_class(n, 0.25)));
        const auto e = sc::ellipsoid_from_class(c);
        EXPECT_LT((e.center - r.center).norm(), 1e-10);
        EXPECT_LT((e.semiaxes - r.semiaxes).norm(), 1e-10);
    }
    EXPECT_THROW(sc::w_class_report(2), sc::DomainError);
}

TEST(FamilySweep, WClassRowsShareParametersPerN)
{
    std::vector<int> ns;
    for (int n = 3; n <= 20; ++n) {
        ns.push_back(n);
    }
    std::vector<double> as;
    for (int i = 0; i <= 9; ++i) {
        as.push_back(i / 10.0);
    }
    const int ks[] = {1};
    const auto rows = sc::family_sweep(ns, ks, as);
    ASSERT_EQ(rows.size(), 180u);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& row = rows[i];
        EXPECT_EQ(row.n, ns[i / 10]);
        EXPECT_EQ(row.a, as[i % 10]);
        ASSERT_FALSE(row.error.has_value());
        const auto s = std::get<sc::Shifted>(*row.canonical);
        const auto first = std::get<sc::Shifted>(*rows[i - i % 10].canonical);
        EXPECT_NEAR(s.a0, first.a0, 1e-10);
        EXPECT_NEAR(s.a1, first.a1, 1e-10);
        EXPECT_LE(row.consistency, 1e-10);
    }
}

TEST(FamilySweep, DickeRowsAndErrors)
{
    const int ns[] = {10};
    const int ks[] = {1, 2, 3, 4, 5, 6};
    const double as[] = {0.0};
    const auto rows = sc::family_sweep(ns, ks, as);
    ASSERT_EQ(rows.size(), 6u);
    EXPECT_STREQ(sc::class_kind(*rows[0].canonical), "shifted");
    for (std::size_t i = 1; i < 5; ++i) {
        const auto d = std::get<sc::Diagonal>(*rows[i].canonical);
        EXPECT_NEAR(d.s1, d.s2, 1e-10);
        EXPECT_LT(rows[i].ellipsoid->center.norm(), 1e-12);
        EXPECT_TRUE(rows[i].monogamy->satisfied);
    }
    EXPECT_TRUE(rows[5].error.has_value()); // k = 6 > N/2
    EXPECT_TRUE(sc::family_sweep({}, ks, as).empty());
}

TEST(FamilySweep, EveryFamilyStatePassesSymmetricMonogamy)
{
    for (int n = 3; n <= 50; ++n) {
        for (int k = 1; k <= n / 2; ++k) {
            for (int i = 0; i <= 9; ++i) {
                const auto row = sc::analyze(sc::FamilySpec(n, k, i / 10.0));
                EXPECT_TRUE(row.monogamy->satisfied) << n << " " << k << " " << i;
                EXPECT_GE(row.monogamy->slack, 0.0);
            }
        }
    }
}
