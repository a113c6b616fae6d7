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

// Real 4x4 Pauli-basis representation of two-qubit states and the Minkowski
// Gram matrix built from it.

#pragma once

#include "density.hpp"
#include "errors.hpp"

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <complex>
#include <limits>

namespace steering_canon {

using cplx = std::complex<double>;

/// sigma_0 (identity) and the three Pauli matrices in the standard basis.
inline const std::array<Eigen::Matrix2cd, 4>& pauli()
{
    static const std::array<Eigen::Matrix2cd, 4> sigma = [] {
        std::array<Eigen::Matrix2cd, 4> s;
        const cplx i(0.0, 1.0);
        s[0] << 1.0, 0.0, 0.0, 1.0;
        s[1] << 0.0, 1.0, 1.0, 0.0;
        s[2] << 0.0, -i, i, 0.0;
        s[3] << 1.0, 0.0, 0.0, -1.0;
        return s;
    }();
    return sigma;
}

/// Kronecker product of two 2x2 complex matrices.
inline Eigen::Matrix4cd kron(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b)
{
    Eigen::Matrix4cd out;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
        }
    }
    return out;
}

/// Lorentz metric G = diag(1, -1, -1, -1).
inline Eigen::Matrix4d minkowski_metric()
{
    return Eigen::Vector4d(1.0, -1.0, -1.0, -1.0).asDiagonal();
}

/// Pauli-basis representation L_{mu nu} = Tr[rho (sigma_mu x sigma_nu)], scaled so L_00 = 1.
///
/// Column 0 below row 0 holds qubit A's Bloch vector r, row 0 right of column 0
/// holds qubit B's Bloch vector s, and the lower-right 3x3 block is the
/// correlation matrix T.
class RealRep {
public:
    RealRep() : l_(Eigen::Matrix4d::Identity()) {}

    /// Rescales by L_00; throws SingularError if L_00 vanishes.
    explicit RealRep(const Eigen::Matrix4d& l, double floor = 1e-300) : l_(l)
    {
        const double l00 = l(0, 0);
        if (!(std::abs(l00) > floor) || !std::isfinite(l00)) {
            throw SingularError("RealRep: the 00 entry vanishes and cannot be normalized to 1");
        }
        l_ /= l00;
        l_(0, 0) = 1.0;
    }

    const Eigen::Matrix4d& matrix() const noexcept { return l_; }
    double operator()(int mu, int nu) const { return l_(mu, nu); }

    /// Bloch vector of qubit A, r_i = L_{i0}.
    Eigen::Vector3d alice_bloch() const { return l_.block<3, 1>(1, 0); }
    /// Bloch vector of qubit B, s_j = L_{0j}.
    Eigen::Vector3d bob_bloch() const { return l_.block<1, 3>(0, 1).transpose(); }
    /// Correlation block t_ij = L_{ij}.
    Eigen::Matrix3d correlations() const { return l_.block<3, 3>(1, 1); }

    double determinant() const { return l_.determinant(); }

private:
    Eigen::Matrix4d l_;
};

/// Omega = L G L^T, symmetric.
struct MinkowskiGram {
    Eigen::Matrix4d o = Eigen::Matrix4d::Zero();
    /// Absolute rounding-noise estimate of the entries of `o`. The product
    /// cancels heavily for weakly correlated states, so this tracks the size of
    /// L rather than the size of Omega.
    double noise = 0.0;
};

inline RealRep lambda_from_rho(const TwoQubitDensity& rho)
{
    const auto& s = pauli();
    Eigen::Matrix4d l;
    for (int mu = 0; mu < 4; ++mu) {
        for (int nu = 0; nu < 4; ++nu) {
            l(mu, nu) = (rho.m * kron(s[static_cast<std::size_t>(mu)], s[static_cast<std::size_t>(nu)])).trace().real();
        }
    }
    return RealRep(l);
}

/// rho = (1/4) sum L_{mu nu} sigma_mu x sigma_nu. No positivity check here.
inline TwoQubitDensity rho_from_lambda(const RealRep& l)
{
    const auto& s = pauli();
    TwoQubitDensity rho;
    rho.m.setZero();
    for (int mu = 0; mu < 4; ++mu) {
        for (int nu = 0; nu < 4; ++nu) {
            const double c = l(mu, nu);
            if (c != 0.0) {
                rho.m += (0.25 * c) * kron(s[static_cast<std::size_t>(mu)], s[static_cast<std::size_t>(nu)]);
            }
        }
    }
    return rho;
}

inline MinkowskiGram omega(const RealRep& l)
{
    // The Minkowski product cancels to a few digits for weakly entangled or
    // strongly boosted states; accumulating in extended precision keeps the
    // small eigenvalues of G*Omega accurate.
    using Ext = Eigen::Matrix<long double, 4, 4>;
    const Ext le = l.matrix().cast<long double>();
    const Ext raw = le * minkowski_metric().cast<long double>() * le.transpose();
    MinkowskiGram out;
    out.o = (0.5L * (raw + raw.transpose())).cast<double>();
    const double row = l.matrix().rowwise().norm().maxCoeff();
    out.noise = 16.0 * std::numeric_limits<double>::epsilon() * row * row;
    return out;
}

} // namespace steering_canon
