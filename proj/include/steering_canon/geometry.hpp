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

// Steering-ellipsoid geometry: steered Bloch points, canonical and general
// ellipsoids, volumes, obesity and plotting meshes.

#pragma once

#include "errors.hpp"
#include "lorentz.hpp"
#include "realrep.hpp"

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <numbers>
#include <variant>
#include <vector>

namespace steering_canon {

/// Ellipsoid {center + orientation * diag(semiaxes) * x : |x| = 1} in Bloch coordinates.
struct Ellipsoid {
    Eigen::Vector3d center = Eigen::Vector3d::Zero();
    Eigen::Vector3d semiaxes = Eigen::Vector3d::Zero();
    Eigen::Matrix3d orientation = Eigen::Matrix3d::Identity();

    /// sum_i (x_i / semiaxis_i)^2 - 1 with x the point in the principal frame.
    double implicit_residual(const Eigen::Vector3d& p) const
    {
        const Eigen::Vector3d local = orientation.transpose() * (p - center);
        return (local.array() / semiaxes.array()).square().sum() - 1.0;
    }

    double volume() const { return 4.0 / 3.0 * std::numbers::pi * semiaxes.prod(); }
};

struct SteeringMetrics {
    double volume = 0.0;
    double normalized_volume = 0.0;
    double obesity = 0.0;
    /// Set when 1 - |s|^2 < 1e-10: the steering qubit is (nearly) pure and the volume is reported as 0.
    bool degenerate_steerer = false;
};

/// Bloch vector of qubit A after qubit B is projected along the unit vector q:
/// (1, p) is proportional to L (1, q).
inline Eigen::Vector3d steered_point(const RealRep& l, const Eigen::Vector3d& q)
{
    if (std::abs(q.norm() - 1.0) > 1e-12) {
        throw DomainError("steered_point: q must be a unit vector");
    }
    const Eigen::Vector4d image = l.matrix() * Eigen::Vector4d(1.0, q.x(), q.y(), q.z());
    if (!(image[0] > 1e-15)) {
        throw SingularError("steered_point: the measurement outcome has zero probability");
    }
    return image.tail<3>() / image[0];
}

/// Canonical ellipsoid: origin-centred with semiaxes |s_i| for the diagonal
/// form, centre (0, 0, 1 - a0) with semiaxes (a1, a1, a0) for the shifted one.
inline Ellipsoid ellipsoid_from_class(const CanonicalClass& c)
{
    Ellipsoid e;
    if (const auto* d = std::get_if<Diagonal>(&c)) {
        e.semiaxes = Eigen::Vector3d(std::abs(d->s1), std::abs(d->s2), std::abs(d->s3));
    } else if (const auto* s = std::get_if<Shifted>(&c)) {
        e.center = Eigen::Vector3d(0.0, 0.0, 1.0 - s->a0);
        e.semiaxes = Eigen::Vector3d(s->a1, s->a1, s->a0);
    }
    return e;
}

/// Steering ellipsoid of qubit A for an arbitrary real representation, with
/// r, s the Bloch vectors of A and B and T the correlation block:
///
///   center = (r - T s) / (1 - s^2)
///   Q      = (T - r s^T) (I + s s^T / (1 - s^2)) (T - r s^T)^T / (1 - s^2)
///
/// Q = M M^T with M = (T - r s^T) sqrt(I + s s^T / (1 - s^2)) / sqrt(1 - s^2),
/// and the semiaxes are the singular values of M. Working with M instead of Q
/// keeps thin ellipsoids accurate.
inline Ellipsoid steering_ellipsoid(const RealRep& l)
{
    const Eigen::Vector3d r = l.alice_bloch();
    const Eigen::Vector3d s = l.bob_bloch();
    const Eigen::Matrix3d t = l.correlations();
    const double s2 = s.squaredNorm();
    const double gap = 1.0 - s2;
    if (!(gap > 1e-10)) {
        throw SingularError("steering_ellipsoid: the steering qubit is pure");
    }
    // sqrt(I + s s^T / gap) = I + (1/sqrt(gap) - 1) s s^T / s^2.
    Eigen::Matrix3d root = Eigen::Matrix3d::Identity();
    if (s2 > 0.0) {
        root += (1.0 / std::sqrt(gap) - 1.0) * s * s.transpose() / s2;
    }
    const Eigen::Matrix3d m = (t - r * s.transpose()) * root / std::sqrt(gap);

    Eigen::JacobiSVD<Eigen::Matrix3d> svd(m, Eigen::ComputeFullU);
    Ellipsoid e;
    e.center = (r - t * s) / gap;
    // Singular values come out descending.
    e.semiaxes = svd.singularValues();
    e.orientation = svd.matrixU();
    if (e.orientation.determinant() < 0.0) {
        e.orientation.col(2) *= -1.0;
    }
    return e;
}

/// Volume of the ellipsoid of qubit A steered by qubit B,
/// V = (4 pi / 3) |det L| / (1 - |s|^2)^2, where s is B's Bloch vector. The
/// symmetric family has r = s. Obesity is |det L|^(1/4).
inline SteeringMetrics metrics(const RealRep& l)
{
    SteeringMetrics m;
    const double det = std::abs(l.determinant());
    m.obesity = std::pow(det, 0.25);
    const double s2 = l.bob_bloch().squaredNorm();
    if (s2 > 1.0 + 1e-10) {
        throw NonPhysicalError("metrics: the steering Bloch vector lies outside the Bloch ball");
    }
    const double gap = 1.0 - s2;
    if (gap < 1e-10) {
        m.degenerate_steerer = true;
        return m;
    }
    m.normalized_volume = det / (gap * gap);
    m.volume = 4.0 / 3.0 * std::numbers::pi * m.normalized_volume;
    return m;
}

/// Indexed triangle mesh, counterclockwise winding seen from outside.
struct Mesh {
    std::vector<Eigen::Vector3d> vertices;
    std::vector<std::array<int, 3>> faces;
};

/// Regular (theta, phi) mesh of an ellipsoid with res_theta * res_phi cells.
/// Vertex 0 is the north pole (theta = 0) and the last vertex the south pole.
inline Mesh mesh(const Ellipsoid& e, int res_theta = 64, int res_phi = 32)
{
    if (res_theta < 4 || res_phi < 4) {
        throw DomainError("mesh: resolution must be at least 4 in each direction");
    }
    auto point = [&](double theta, double phi) -> Eigen::Vector3d {
        const Eigen::Vector3d local(e.semiaxes[0] * std::sin(theta) * std::cos(phi),
                                    e.semiaxes[1] * std::sin(theta) * std::sin(phi),
                                    e.semiaxes[2] * std::cos(theta));
        return e.center + e.orientation * local;
    };

    Mesh out;
    out.vertices.reserve(static_cast<std::size_t>(2 + (res_theta - 1) * res_phi));
    out.vertices.push_back(point(0.0, 0.0));
    for (int i = 1; i < res_theta; ++i) {
        const double theta = std::numbers::pi * i / res_theta;
        for (int j = 0; j < res_phi; ++j) {
            out.vertices.push_back(point(theta, 2.0 * std::numbers::pi * j / res_phi));
        }
    }
    out.vertices.push_back(point(std::numbers::pi, 0.0));

    const int north = 0;
    const int south = static_cast<int>(out.vertices.size()) - 1;
    auto ring = [res_phi](int i, int j) { return 1 + (i - 1) * res_phi + (j % res_phi); };

    for (int j = 0; j < res_phi; ++j) {
        out.faces.push_back({north, ring(1, j), ring(1, j + 1)});
    }
    for (int i = 1; i < res_theta - 1; ++i) {
        for (int j = 0; j < res_phi; ++j) {
            out.faces.push_back({ring(i, j), ring(i + 1, j), ring(i + 1, j + 1)});
            out.faces.push_back({ring(i, j), ring(i + 1, j + 1), ring(i, j + 1)});
        }
    }
    for (int j = 0; j < res_phi; ++j) {
        out.faces.push_back({ring(res_theta - 1, j), south, ring(res_theta - 1, j + 1)});
    }
    return out;
}

} // namespace steering_canon
