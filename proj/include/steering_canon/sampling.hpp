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

// Seeded random generators used by the verification suites and property tests.

#pragma once

#include "density.hpp"
#include "lorentz.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <random>

namespace steering_canon {

using Rng = std::mt19937_64;

inline Eigen::Vector3d random_unit_vector(Rng& rng)
{
    std::normal_distribution<double> normal;
    Eigen::Vector3d v;
    do {
        v = Eigen::Vector3d(normal(rng), normal(rng), normal(rng));
    } while (v.norm() < 1e-8);
    return v.normalized();
}

/// Haar-random element of SU(2) from a uniform unit quaternion.
inline Eigen::Matrix2cd random_su2(Rng& rng)
{
    std::normal_distribution<double> normal;
    Eigen::Vector4d q;
    do {
        q = Eigen::Vector4d(normal(rng), normal(rng), normal(rng), normal(rng));
    } while (q.norm() < 1e-8);
    q.normalize();
    Eigen::Matrix2cd u;
    u << std::complex<double>(q[0], q[1]), std::complex<double>(q[2], q[3]),
         std::complex<double>(-q[2], q[3]), std::complex<double>(q[0], -q[1]);
    return u;
}

/// Random SL(2,C) element U diag(e^{eta/2}, e^{-eta/2}) V with Haar U, V and
/// rapidity eta uniform in [-max_rapidity, max_rapidity].
inline SlTransform random_sl2c(Rng& rng, double max_rapidity = 1.5)
{
    std::uniform_real_distribution<double> rapidity(-max_rapidity, max_rapidity);
    const double eta = rapidity(rng);
    Eigen::Matrix2cd boost = Eigen::Matrix2cd::Zero();
    boost(0, 0) = std::exp(0.5 * eta);
    boost(1, 1) = std::exp(-0.5 * eta);
    const Eigen::Matrix2cd u = random_su2(rng);
    const Eigen::Matrix2cd v = random_su2(rng);
    Eigen::Matrix2cd a = u * boost * v;
    // Remove rounding drift in the determinant.
    a /= std::sqrt(a.determinant());
    return SlTransform(a);
}

/// Normalized Wishart state G G^dagger / Tr, G with i.i.d. standard complex Gaussian entries.
inline TwoQubitDensity random_density(Rng& rng)
{
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    Eigen::Matrix4cd g;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            g(i, j) = std::complex<double>(normal(rng), normal(rng));
        }
    }
    TwoQubitDensity rho;
    rho.m = g * g.adjoint();
    rho.m /= rho.m.trace().real();
    return rho;
}

} // namespace steering_canon
