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

// Concurrence, volume-monogamy audits, W-class closed forms and family sweeps.

#pragma once

#include "density.hpp"
#include "errors.hpp"
#include "geometry.hpp"
#include "lorentz.hpp"
#include "realrep.hpp"
#include "states.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace steering_canon {

/// Wootters concurrence max(0, mu1 - mu2 - mu3 - mu4), the mu's being the
/// square roots of the eigenvalues of R = rho (s2 x s2) rho* (s2 x s2).
///
/// With rho = W W^dagger the mu's are the singular values of the complex
/// symmetric matrix W^T (s2 x s2) W. That route avoids square roots of
/// eigenvalues of R that sit at rounding level, which for rank-deficient states
/// would otherwise leak O(1e-8) into C.
inline double concurrence_wootters(const TwoQubitDensity& rho)
{
    const Eigen::Matrix4cd h = 0.5 * (rho.m + rho.m.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(h);
    const Eigen::Vector4d ev = es.eigenvalues();
    const double floor = 1e-14 * std::max(ev.maxCoeff(), 0.0);
    Eigen::Vector4d root;
    for (int i = 0; i < 4; ++i) {
        root[i] = ev[i] > floor ? std::sqrt(ev[i]) : 0.0;
    }
    const Eigen::Matrix4cd w = es.eigenvectors() * root.asDiagonal();

    Eigen::Matrix4d flip = Eigen::Matrix4d::Zero();
    flip(0, 3) = -1.0;
    flip(1, 2) = 1.0;
    flip(2, 1) = 1.0;
    flip(3, 0) = -1.0;
    const Eigen::Matrix4cd tau = w.transpose() * flip * w;
    const Eigen::Vector4d mu = Eigen::JacobiSVD<Eigen::Matrix4cd>(tau).singularValues();
    const double c = mu[0] - mu[1] - mu[2] - mu[3];
    return std::clamp(c, 0.0, 1.0);
}

/// W-class pair concurrence 2(1 - a^2) / (N (1 + a^2 (N - 1))).
inline double concurrence_w_closed_form(int n, double a)
{
    const FamilySpec spec(n, 1, a);
    const double a2 = a * a;
    return 2.0 * (1.0 - a2) / (n * (1.0 + a2 * (n - 1)));
}

inline double obesity(const TwoQubitDensity& rho) { return metrics(lambda_from_rho(rho)).obesity; }

enum class MonogamyRelation { pure3, mixed3, nqubit, symmetric };

inline const char* relation_name(MonogamyRelation r)
{
    switch (r) {
    case MonogamyRelation::pure3:
        return "pure3";
    case MonogamyRelation::mixed3:
        return "mixed3";
    case MonogamyRelation::nqubit:
        return "nqubit";
    case MonogamyRelation::symmetric:
        return "symmetric";
    }
    return "unknown";
}

struct MonogamyReport {
    double lhs = 0.0;
    double bound = 0.0;
    bool satisfied = true;
    /// bound - lhs
    double slack = 0.0;
    MonogamyRelation relation = MonogamyRelation::symmetric;
};

/// Absolute tolerance on the slack; every bound is an exact rational.
inline constexpr double kMonogamyTolerance = 1e-12;

namespace detail {

inline void check_unit_interval(double v, const char* who)
{
    if (!(v >= 0.0 && v <= 1.0)) {
        throw DomainError(std::string(who) + ": normalized volumes must lie in [0, 1] (got " + std::to_string(v) + ")");
    }
}

inline MonogamyReport make_report(double lhs, double bound, MonogamyRelation relation)
{
    MonogamyReport r;
    r.lhs = lhs;
    r.bound = bound;
    r.slack = bound - lhs;
    r.satisfied = lhs <= bound + kMonogamyTolerance;
    r.relation = relation;
    return r;
}

} // namespace detail

/// sqrt(v_AB) + sqrt(v_CB) <= 1 (pure three-qubit states).
inline MonogamyReport monogamy_pure3(double v_ab, double v_cb)
{
    detail::check_unit_interval(v_ab, "monogamy_pure3");
    detail::check_unit_interval(v_cb, "monogamy_pure3");
    return detail::make_report(std::sqrt(v_ab) + std::sqrt(v_cb), 1.0, MonogamyRelation::pure3);
}

/// v_AB^(2/3) + v_CB^(2/3) <= 1 (pure and mixed three-qubit states).
inline MonogamyReport monogamy_mixed3(double v_ab, double v_cb)
{
    detail::check_unit_interval(v_ab, "monogamy_mixed3");
    detail::check_unit_interval(v_cb, "monogamy_mixed3");
    return detail::make_report(std::cbrt(v_ab * v_ab) + std::cbrt(v_cb * v_cb), 1.0, MonogamyRelation::mixed3);
}

/// sum_i v_i^(2/3) <= (N - 1)/2 over the N - 1 ellipsoids steered by one qubit.
inline MonogamyReport monogamy_nqubit(std::span<const double> volumes, int n)
{
    if (n < 3) {
        throw DomainError("monogamy_nqubit: N must satisfy N >= 3");
    }
    if (volumes.size() != static_cast<std::size_t>(n - 1)) {
        throw DomainError("monogamy_nqubit: expected N - 1 = " + std::to_string(n - 1) + " volumes (got " +
                          std::to_string(volumes.size()) + ")");
    }
    double lhs = 0.0;
    for (double v : volumes) {
        detail::check_unit_interval(v, "monogamy_nqubit");
        lhs += std::cbrt(v * v);
    }
    return detail::make_report(lhs, 0.5 * (n - 1), MonogamyRelation::nqubit);
}

/// v^(2/3) <= 1/2 for permutation-symmetric N-qubit states.
inline MonogamyReport monogamy_symmetric(double v, int n)
{
    if (n < 3) {
        throw DomainError("monogamy_symmetric: N must satisfy N >= 3");
    }
    detail::check_unit_interval(v, "monogamy_symmetric");
    return detail::make_report(std::cbrt(v * v), 0.5, MonogamyRelation::symmetric);
}

/// Closed-form canonical data of the W-class; independent of a.
struct WClassReport {
    Eigen::Vector3d center;
    Eigen::Vector3d semiaxes;
    double normalized_volume = 0.0;
    double canonical_concurrence = 0.0;
};

inline WClassReport w_class_report(int n)
{
    if (n < 3) {
        throw DomainError("w_class_report: N must satisfy N >= 3");
    }
    const double m = n - 1.0;
    WClassReport r;
    r.center = Eigen::Vector3d(0.0, 0.0, (n - 2.0) / m);
    r.semiaxes = Eigen::Vector3d(1.0 / std::sqrt(m), 1.0 / std::sqrt(m), 1.0 / m);
    r.normalized_volume = 1.0 / (m * m);
    r.canonical_concurrence = 1.0 / std::sqrt(m);
    return r;
}

/// One grid point of a family sweep. `error` is set (and the optional fields
/// empty) when the point is inadmissible or a computation failed.
struct SweepRow {
    int n = 0;
    int k = 0;
    double a = 0.0;
    std::optional<std::string> error;
    std::optional<CanonicalClass> canonical;
    std::optional<Ellipsoid> ellipsoid;
    std::optional<SteeringMetrics> metrics;
    std::optional<double> concurrence;
    std::optional<MonogamyReport> monogamy;
    /// Largest disagreement between the class-derived ellipsoid and the one
    /// recomputed from the canonical real representation.
    double consistency = 0.0;
};

/// Full pipeline for one admissible family member.
inline SweepRow analyze(const FamilySpec& spec)
{
    SweepRow row;
    row.n = spec.n();
    row.k = spec.k();
    row.a = spec.a();

    const TwoQubitDensity rho = rdm_closed_form(spec);
    const RealRep lambda = lambda_from_rho(rho);
    const CanonicalClass c = classify(lambda);
    const Ellipsoid e = ellipsoid_from_class(c);
    const SteeringMetrics m = metrics(lambda);

    const Ellipsoid recomputed = steering_ellipsoid(canonical_lambda(c));
    Eigen::Vector3d lhs = e.semiaxes;
    Eigen::Vector3d rhs = recomputed.semiaxes;
    std::sort(lhs.data(), lhs.data() + 3);
    std::sort(rhs.data(), rhs.data() + 3);
    row.consistency = std::max((e.center - recomputed.center).cwiseAbs().maxCoeff(), (lhs - rhs).cwiseAbs().maxCoeff());

    row.canonical = c;
    row.ellipsoid = e;
    row.metrics = m;
    row.concurrence = concurrence_wootters(rho);
    row.monogamy = monogamy_symmetric(std::clamp(m.normalized_volume, 0.0, 1.0), spec.n());
    return row;
}

/// Evaluates every (N, k, a) grid point in N-major, then k, then a order.
/// Per-row failures are recorded in the row instead of aborting the sweep.
inline std::vector<SweepRow> family_sweep(std::span<const int> ns, std::span<const int> ks, std::span<const double> as)
{
    std::vector<SweepRow> rows;
    rows.reserve(ns.size() * ks.size() * as.size());
    for (int n : ns) {
        for (int k : ks) {
            for (double a : as) {
                try {
                    rows.push_back(analyze(FamilySpec(n, k, a)));
                } catch (const Error& ex) {
                    SweepRow row;
                    row.n = n;
                    row.k = k;
                    row.a = a;
                    row.error = ex.what();
                    rows.push_back(std::move(row));
                }
            }
        }
    }
    return rows;
}

} // namespace steering_canon
