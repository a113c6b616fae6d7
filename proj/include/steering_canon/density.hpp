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

// Two-qubit reduced density matrices of |D_{N-k,k}>.
//
// Basis order for every 4x4 matrix in this library: |00>, |01>, |10>, |11>,
// first factor = qubit A (row index of the real representation), second = B.

#pragma once

#include "errors.hpp"
#include "states.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <string>

namespace steering_canon {

/// 4x4 Hermitian, unit-trace, positive semidefinite two-qubit state.
struct TwoQubitDensity {
    Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();

    std::complex<double> trace() const { return m.trace(); }

    double hermiticity_defect() const { return (m - m.adjoint()).cwiseAbs().maxCoeff(); }

    /// Smallest eigenvalue of the Hermitian part.
    double min_eigenvalue() const
    {
        const Eigen::Matrix4cd h = 0.5 * (m + m.adjoint());
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(h, Eigen::EigenvaluesOnly);
        return es.eigenvalues().minCoeff();
    }

    /// Hermitian within `tol`, unit trace within `tol`, eigenvalues >= -psd_tol.
    bool is_valid(double tol = 1e-12, double psd_tol = 1e-10) const
    {
        return hermiticity_defect() <= tol && std::abs(trace() - 1.0) <= tol &&
               min_eigenvalue() >= -psd_tol;
    }
};

/// Clebsch-Gordan values C(N/2-1, 1, N/2; m-m2, m2, m) at m = N/2 - r for m2 = +1, 0, -1.
struct CgTriple {
    double c1 = 0.0;
    double c0 = 0.0;
    double cm1 = 0.0;
};

inline CgTriple cg_coefficients(int n, int r)
{
    if (n < 2) {
        throw DomainError("cg_coefficients: N must satisfy N >= 2 (got " + std::to_string(n) + ")");
    }
    if (r < 0 || r > n) {
        throw DomainError("cg_coefficients: r must satisfy 0 <= r <= N (got " + std::to_string(r) + ")");
    }
    const double denom = static_cast<double>(n) * (n - 1);
    CgTriple c;
    c.c1 = std::sqrt(static_cast<double>(n - r) * (n - r - 1) / denom);
    c.c0 = std::sqrt(2.0 * r * (n - r) / denom);
    c.cm1 = std::sqrt(static_cast<double>(r) * (r - 1) / denom);
    return c;
}

/// The six real entries of the symmetric-family reduced state.
struct RdmElements {
    double A = 0.0;
    double B = 0.0;
    double C = 0.0;
    double D = 0.0;
    double E = 0.0;
    double F = 0.0;
};

/// Assembles rows (A,B,B,C / B,D,D,E / B,D,D,E / C,E,E,F).
inline TwoQubitDensity assemble_symmetric_rdm(const RdmElements& e)
{
    TwoQubitDensity rho;
    Eigen::Matrix4d m;
    m << e.A, e.B, e.B, e.C,
         e.B, e.D, e.D, e.E,
         e.B, e.D, e.D, e.E,
         e.C, e.E, e.E, e.F;
    rho.m = m.cast<std::complex<double>>();
    return rho;
}

inline RdmElements rdm_elements(const FamilySpec& spec)
{
    const int n = spec.n();
    const int k = spec.k();
    const DickeBasisState state = dicke_coefficients(spec);
    const auto& beta = state.beta;
    auto cg = [n](int r) { return cg_coefficients(n, r); };
    auto b = [&beta](int r) { return beta[static_cast<std::size_t>(r)]; };

    RdmElements e;
    for (int r = 0; r <= k; ++r) {
        const CgTriple c = cg(r);
        e.A += b(r) * b(r) * c.c1 * c.c1;
        e.F += b(r) * b(r) * c.cm1 * c.cm1;
        if (r >= 1) {
            e.D += b(r) * b(r) * c.c0 * c.c0;
        }
        if (r + 1 <= k) {
            const CgTriple next = cg(r + 1);
            e.B += b(r) * b(r + 1) * c.c1 * next.c0;
            e.E += b(r) * b(r + 1) * c.c0 * next.cm1;
        }
        if (r + 2 <= k) {
            e.C += b(r) * b(r + 2) * c.c1 * cg(r + 2).cm1;
        }
    }
    e.B /= std::sqrt(2.0);
    e.E /= std::sqrt(2.0);
    e.D *= 0.5;
    return e;
}

/// Closed-form reduced state of any pair of qubits of |D_{N-k,k}>, assembled
/// from sums over r of beta products and Clebsch-Gordan products.
inline TwoQubitDensity rdm_closed_form(const FamilySpec& spec)
{
    return assemble_symmetric_rdm(rdm_elements(spec));
}

/// Explicit W-class (k = 1) reduced state; C = E = F = 0.
inline TwoQubitDensity rdm_w_class(int n, double a)
{
    const FamilySpec spec(n, 1, a); // validates N and a
    const double a2 = a * a;
    const double nn = static_cast<double>(n);
    const double denom = nn * nn * a2 + nn * (1.0 - a2);
    RdmElements e;
    e.A = (nn * nn * a2 + (nn - 2.0) * (1.0 - a2)) / denom;
    e.B = a * std::sqrt(1.0 - a2) / (1.0 + a2 * (nn - 1.0));
    e.D = (1.0 - a2) / denom;
    return assemble_symmetric_rdm(e);
}

/// Brute-force partial trace keeping qubits (q_a, q_b) in that order.
inline TwoQubitDensity rdm_oracle_pair(const FullStateVector& full, int q_a, int q_b, int cap = oracle_cap())
{
    const int n = full.n;
    if (n > cap) {
        throw CapacityError("rdm_oracle: N = " + std::to_string(n) + " exceeds the oracle cap of " +
                            std::to_string(cap) + " qubits");
    }
    if (n < 2 || q_a == q_b || q_a < 0 || q_b < 0 || q_a >= n || q_b >= n) {
        throw DomainError("rdm_oracle: need two distinct qubit indices in [0, N)");
    }
    if (full.amplitudes.size() != (Eigen::Index{1} << n)) {
        throw DomainError("rdm_oracle: amplitude count does not match 2^N");
    }

    // Qubit q sits at bit position n-1-q.
    const int pos_a = n - 1 - q_a;
    const int pos_b = n - 1 - q_b;
    const int lo = std::min(pos_a, pos_b);
    const int hi = std::max(pos_a, pos_b);
    auto spread = [&](std::uint64_t rest, int bit_a, int bit_b) {
        // Insert two zero bits at positions lo and hi, then set them.
        std::uint64_t low = rest & ((std::uint64_t{1} << lo) - 1);
        std::uint64_t mid = (rest >> lo) & ((std::uint64_t{1} << (hi - lo - 1)) - 1);
        std::uint64_t top = rest >> (hi - 1);
        std::uint64_t idx = low | (mid << (lo + 1)) | (top << (hi + 1));
        idx |= static_cast<std::uint64_t>(bit_a) << pos_a;
        idx |= static_cast<std::uint64_t>(bit_b) << pos_b;
        return static_cast<Eigen::Index>(idx);
    };

    TwoQubitDensity rho;
    const std::uint64_t rest_dim = std::uint64_t{1} << (n - 2);
    for (int row = 0; row < 4; ++row) {
        for (int col = 0; col < 4; ++col) {
            std::complex<double> acc = 0.0;
            for (std::uint64_t rest = 0; rest < rest_dim; ++rest) {
                acc += full.amplitudes[spread(rest, row >> 1, row & 1)] *
                       std::conj(full.amplitudes[spread(rest, col >> 1, col & 1)]);
            }
            rho.m(row, col) = acc;
        }
    }
    return rho;
}

/// Brute-force partial trace over qubits 2..N-1, keeping qubits 0 and 1.
inline TwoQubitDensity rdm_oracle(const FullStateVector& full, int cap = oracle_cap())
{
    return rdm_oracle_pair(full, 0, 1, cap);
}

} // namespace steering_canon
