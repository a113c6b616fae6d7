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

// Lorentz canonical forms of two-qubit real representations.
//
// Under local filters A x B (A, B in SL(2,C)) the real representation moves as
// L -> L_A L L_B^T / (L_A L L_B^T)_00, and Omega = L G L^T moves by Lorentz
// congruence Omega -> L_A Omega L_A^T (up to scale). The spectrum of G*Omega and
// the Lorentz character of its top eigenvector decide between the diagonal
// (Bell-diagonal) canonical form and the shifted-spheroid form.

#pragma once

#include "density.hpp"
#include "errors.hpp"
#include "realrep.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <string>
#include <variant>
#include <vector>

namespace steering_canon {

/// Thresholds used by the spectral analysis and the classifier. All values are
/// relative to max|G*Omega| unless stated otherwise.
struct Tolerances {
    /// Singular-value floor for eigenspace membership (relative eigenvalue gap).
    double degeneracy = 1e-9;
    /// Absolute bound on |X^T G X| for a unit-norm X to count as isotropic.
    double isotropy = 1e-9;
    /// Absolute floor on the top eigenvalue; below it Omega has no usable rank.
    double rank = 1e-12;
    /// Eigenvalues closer than this are one cluster and share their mean.
    /// Defective (Jordan) clusters split by O(sqrt(eps)), so this sits well above 1e-8.
    double cluster = 1e-6;
    /// Largest imaginary part tolerated on a cluster mean.
    double imaginary = 1e-9;
    /// Entrywise tolerance when matching the shifted Gram pattern.
    double pattern = 1e-8;
};

struct SpectralData {
    /// Eigenvalues of G*Omega, descending.
    std::array<double, 4> eigenvalues{};
    /// Unit eigenvectors matching `eigenvalues`. Defective clusters have fewer
    /// independent eigenvectors than members; the missing slots repeat the last
    /// eigenvector of the cluster.
    std::array<Eigen::Vector4d, 4> eigenvectors{};
    /// Dimension of the eigenspace of the top eigenvalue.
    int top_multiplicity = 1;
    /// min |X^T G X| over unit X in the top eigenspace.
    double isotropy = 0.0;
    /// A unit X in the top eigenspace attaining `isotropy`, with X_0 >= 0.
    Eigen::Vector4d witness = Eigen::Vector4d::UnitX();
    /// max |(G*Omega)_ij|, the scale every relative tolerance refers to.
    double scale = 0.0;
    /// Absolute noise floor on Omega used to widen the tolerances.
    double noise = 0.0;
    /// Effective isotropy threshold (>= Tolerances::isotropy).
    double isotropy_tolerance = 0.0;
};

namespace detail {

// Orthonormal basis of the numerical null space of m, at most max_dim and at least one vector.
inline Eigen::MatrixXd null_space(const Eigen::Matrix4d& m, double abs_tol, int max_dim)
{
    Eigen::JacobiSVD<Eigen::Matrix4d> svd(m, Eigen::ComputeFullV);
    const Eigen::Vector4d sv = svd.singularValues(); // descending
    int dim = 0;
    for (int i = 3; i >= 0 && sv[i] <= abs_tol; --i) {
        ++dim;
    }
    dim = std::clamp(dim, 1, std::max(1, max_dim));
    return svd.matrixV().rightCols(dim);
}

// Unit vector in span(q) minimizing |y^T (q^T G q) y|.
inline std::pair<double, Eigen::Vector4d> min_isotropy(const Eigen::MatrixXd& q, double zero_tol)
{
    const Eigen::Matrix4d g = minkowski_metric();
    const Eigen::MatrixXd form = q.transpose() * g * q;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (form + form.transpose()));
    const Eigen::VectorXd mu = es.eigenvalues(); // ascending
    const Eigen::MatrixXd& u = es.eigenvectors();

    Eigen::Index best = 0;
    for (Eigen::Index i = 1; i < mu.size(); ++i) {
        if (std::abs(mu[i]) < std::abs(mu[best])) {
            best = i;
        }
    }

    Eigen::VectorXd y;
    double value = std::abs(mu[best]);
    if (value > zero_tol && mu[0] < 0.0 && mu[mu.size() - 1] > 0.0) {
        // Mixed signature: blend the extreme directions so that y^T form y = 0.
        const double neg = -mu[0];
        const double pos = mu[mu.size() - 1];
        y = (std::sqrt(neg) * u.col(u.cols() - 1) + std::sqrt(pos) * u.col(0)) / std::sqrt(neg + pos);
        value = 0.0;
    } else {
        y = u.col(best);
    }
    Eigen::Vector4d x = q * y;
    x.normalize();
    if (x[0] < 0.0) {
        x = -x;
    }
    return {value, x};
}

// Proper rotation taking unit vector d onto unit vector t.
inline Eigen::Matrix3d rotation_between(const Eigen::Vector3d& d, const Eigen::Vector3d& t)
{
    const double c = d.dot(t);
    if (c < -1.0 + 1e-12) {
        // Antiparallel: half turn about any axis orthogonal to d.
        Eigen::Vector3d axis = d.cross(Eigen::Vector3d::UnitX());
        if (axis.norm() < 1e-6) {
            axis = d.cross(Eigen::Vector3d::UnitY());
        }
        axis.normalize();
        return 2.0 * axis * axis.transpose() - Eigen::Matrix3d::Identity();
    }
    const Eigen::Vector3d v = d.cross(t);
    Eigen::Matrix3d vx;
    vx << 0.0, -v.z(), v.y(),
          v.z(), 0.0, -v.x(),
          -v.y(), v.x(), 0.0;
    return Eigen::Matrix3d::Identity() + vx + vx * vx / (1.0 + c);
}

} // namespace detail

/// Eigen-analysis of G*Omega.
///
/// A general real eigensolver splits a defective (Jordan) eigenvalue by
/// O(sqrt(noise * |G*Omega|)), either into a complex pair or along the real
/// axis. Such splits are recognized by nearly parallel eigenvectors (or by
/// values closer than the cluster tolerance) and each cluster is replaced by
/// its mean, which is well conditioned. Tolerances are widened to the rounding
/// noise carried by the Gram matrix when that is larger.
inline SpectralData spectral(const MinkowskiGram& gram, const Tolerances& tol = {})
{
    const Eigen::Matrix4d gm = minkowski_metric() * gram.o;
    SpectralData out;
    out.scale = gm.cwiseAbs().maxCoeff();
    const double scale = out.scale > 0.0 ? out.scale : 1.0;
    const double noise = std::max(gram.noise, 16.0 * std::numeric_limits<double>::epsilon() * out.scale);

    Eigen::EigenSolver<Eigen::Matrix4d> es(gm, true);
    if (es.info() != Eigen::Success) {
        throw NonPhysicalError("spectral: eigen-decomposition of G*Omega did not converge");
    }
    const Eigen::Vector4cd raw = es.eigenvalues();
    std::array<Eigen::Vector4cd, 4> vec;
    for (int i = 0; i < 4; ++i) {
        vec[static_cast<std::size_t>(i)] = es.eigenvectors().col(i).normalized();
    }

    // Union-find over the four eigenvalues.
    std::array<int, 4> parent{0, 1, 2, 3};
    auto find = [&parent](int i) {
        while (parent[static_cast<std::size_t>(i)] != i) {
            i = parent[static_cast<std::size_t>(i)];
        }
        return i;
    };
    const double close = tol.cluster * scale;
    // A Jordan block with coupling ~scale splits by ~sqrt(noise * scale).
    // Strong boosts can make genuinely distinct eigenvectors nearly parallel,
    // so the overlap test alone is not enough.
    const double split = std::min(1e-3 * scale, 10.0 * std::sqrt(noise * scale));
    for (int i = 0; i < 4; ++i) {
        for (int j = i + 1; j < 4; ++j) {
            const double gap = std::abs(raw[i] - raw[j]);
            const double overlap = std::abs(vec[static_cast<std::size_t>(i)].dot(vec[static_cast<std::size_t>(j)]));
            if (gap <= close || (gap <= split && overlap >= 1.0 - tol.cluster)) {
                parent[static_cast<std::size_t>(find(j))] = find(i);
            }
        }
    }

    struct Cluster {
        double mean;
        int size;
    };
    std::vector<Cluster> clusters;
    for (int root = 0; root < 4; ++root) {
        std::complex<double> sum = 0.0;
        int size = 0;
        for (int i = 0; i < 4; ++i) {
            if (find(i) == root) {
                sum += raw[i];
                ++size;
            }
        }
        if (size == 0) {
            continue;
        }
        const std::complex<double> mean = sum / static_cast<double>(size);
        if (std::abs(mean.imag()) > std::max(tol.imaginary * scale, 1e3 * noise)) {
            throw NonPhysicalError("spectral: G*Omega has a complex eigenvalue pair (imaginary part " +
                                   std::to_string(mean.imag()) + ")");
        }
        clusters.push_back({mean.real(), size});
    }
    std::sort(clusters.begin(), clusters.end(), [](const Cluster& x, const Cluster& y) { return x.mean > y.mean; });

    const double null_tol = std::max(tol.degeneracy * scale, 1e3 * noise);
    const double iso_tol = std::max(tol.isotropy, 1e3 * noise / scale);
    int slot = 0;
    for (const Cluster& c : clusters) {
        const Eigen::MatrixXd basis =
            detail::null_space(gm - c.mean * Eigen::Matrix4d::Identity(), null_tol, 4);
        if (slot == 0) {
            out.top_multiplicity = static_cast<int>(basis.cols());
            auto [iso, witness] = detail::min_isotropy(basis, iso_tol);
            out.isotropy = iso;
            out.witness = witness;
        }
        for (int m = 0; m < c.size; ++m, ++slot) {
            out.eigenvalues[static_cast<std::size_t>(slot)] = c.mean;
            Eigen::Vector4d x = basis.col(std::min<Eigen::Index>(m, basis.cols() - 1));
            if (x[0] < 0.0) {
                x = -x;
            }
            out.eigenvectors[static_cast<std::size_t>(slot)] = x;
        }
    }
    out.isotropy_tolerance = iso_tol;
    out.noise = noise;
    return out;
}

/// Bell-diagonal canonical form diag(1, s1, s2, s3), 1 >= |s1| >= |s2| >= |s3|.
struct Diagonal {
    double s1 = 0.0;
    double s2 = 0.0;
    double s3 = 0.0;
};

/// Shifted-spheroid canonical form with 0 <= a1^2 <= a0 <= 1 and phi0 = Omega_00 in the pattern frame.
struct Shifted {
    double a0 = 0.0;
    double a1 = 0.0;
    double phi0 = 0.0;
};

/// Omega has no usable rank (e.g. pure product states); treated as the
/// zero-semiaxis diagonal form downstream.
struct Degenerate {
    std::string reason;
};

using CanonicalClass = std::variant<Diagonal, Shifted, Degenerate>;

inline const char* class_kind(const CanonicalClass& c)
{
    return std::visit(
        [](const auto& v) -> const char* {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Diagonal>) {
                return "diagonal";
            } else if constexpr (std::is_same_v<T, Shifted>) {
                return "shifted";
            } else {
                return "degenerate";
            }
        },
        c);
}

namespace detail {

// Tries to bring Omega to the shifted pattern
//   [[phi0, 0, 0, phi0-l0], [0, -l1, 0, 0], [0, 0, -l1, 0], [phi0-l0, 0, 0, phi0-2 l0]]
// with a spatial rotation sending the isotropic witness to (1, 0, 0, -1) and a
// rotation about z that diagonalizes the xy block. Returns false when the
// off-diagonal 03 entry is trivial (the state is Bell-diagonal after all).
inline bool match_shifted(const Eigen::Matrix4d& o, const SpectralData& sd, const Tolerances& tol, Shifted& out)
{
    const Eigen::Vector3d spatial = sd.witness.tail<3>();
    if (spatial.norm() == 0.0) {
        return false;
    }
    Eigen::Matrix4d rot = Eigen::Matrix4d::Identity();
    rot.block<3, 3>(1, 1) = rotation_between(spatial.normalized(), -Eigen::Vector3d::UnitZ());
    Eigen::Matrix4d aligned = rot * o * rot.transpose();

    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> xy(aligned.block<2, 2>(1, 1));
    Eigen::Matrix2d rz = xy.eigenvectors().transpose();
    if (rz.determinant() < 0.0) {
        rz.row(1) *= -1.0;
    }
    Eigen::Matrix4d spin = Eigen::Matrix4d::Identity();
    spin.block<2, 2>(1, 1) = rz;
    aligned = spin * aligned * spin.transpose();

    const double s = o.cwiseAbs().maxCoeff();
    const double eps = std::max(tol.pattern * s, 1e3 * sd.noise);
    const double phi0 = aligned(0, 0);
    const double off = 0.5 * (aligned(0, 3) + aligned(3, 0));
    if (std::abs(off) <= eps) {
        return false;
    }
    const double lambda0 = sd.eigenvalues[0];
    const double lambda1 = -0.5 * (aligned(1, 1) + aligned(2, 2));
    const bool pattern = std::abs(aligned(0, 1)) <= eps && std::abs(aligned(0, 2)) <= eps &&
                         std::abs(aligned(1, 2)) <= eps && std::abs(aligned(1, 3)) <= eps &&
                         std::abs(aligned(2, 3)) <= eps &&
                         std::abs(aligned(1, 1) - aligned(2, 2)) <= eps &&
                         std::abs((phi0 - off) - lambda0) <= eps &&
                         std::abs(aligned(3, 3) - (phi0 - 2.0 * lambda0)) <= eps;
    if (!pattern) {
        throw UnsupportedStructureError(
            "classify: isotropic top eigenspace but Omega does not reduce to the shifted pattern by rotations");
    }
    if (!(phi0 > 0.0)) {
        throw UnsupportedStructureError("classify: shifted pattern with non-positive phi0");
    }
    out.phi0 = phi0;
    out.a0 = lambda0 / phi0;
    out.a1 = std::sqrt(std::max(lambda1, 0.0) / phi0);
    if (out.a0 > 1.0 + 1e-10 || out.a1 * out.a1 > out.a0 + 1e-10) {
        throw UnsupportedStructureError("classify: shifted parameters violate 0 <= a1^2 <= a0 <= 1");
    }
    return true;
}

} // namespace detail

/// Lorentz canonical class of a real representation.
///
/// Shifted is returned only when the top eigenspace of G*Omega holds an
/// isotropic vector *and* Omega reduces to the shifted Gram pattern with a
/// nontrivial 03 entry; a Bell state, whose top eigenspace is all of R^4, is
/// therefore diagonal. The sign of s3 follows det L.
inline CanonicalClass classify(const RealRep& l, const Tolerances& tol = {})
{
    const MinkowskiGram gram = omega(l);
    const SpectralData sd = spectral(gram, tol);
    const double lambda0 = sd.eigenvalues[0];
    if (!(lambda0 > tol.rank)) {
        return Degenerate{"top eigenvalue of G*Omega is below the rank floor"};
    }

    if (sd.isotropy < sd.isotropy_tolerance) {
        Shifted sh;
        if (detail::match_shifted(gram.o, sd, tol, sh)) {
            return sh;
        }
    } else if (sd.witness.transpose() * minkowski_metric() * sd.witness < 0.0) {
        throw NonPhysicalError("classify: top eigenvector of G*Omega is spacelike");
    }

    auto axis = [&](int i) { return std::sqrt(std::max(sd.eigenvalues[static_cast<std::size_t>(i)], 0.0) / lambda0); };
    Diagonal d{std::min(axis(1), 1.0), std::min(axis(2), 1.0), std::min(axis(3), 1.0)};
    if (l.determinant() < 0.0) {
        d.s3 = -d.s3;
    }
    return d;
}

/// The canonical real representation of a class.
inline RealRep canonical_lambda(const CanonicalClass& c)
{
    Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
    m(0, 0) = 1.0;
    if (const auto* d = std::get_if<Diagonal>(&c)) {
        m(1, 1) = d->s1;
        m(2, 2) = d->s2;
        m(3, 3) = d->s3;
    } else if (const auto* s = std::get_if<Shifted>(&c)) {
        m(1, 1) = s->a1;
        m(2, 2) = -s->a1;
        m(3, 0) = 1.0 - s->a0;
        m(3, 3) = s->a0;
    }
    return RealRep(m);
}

/// The canonical two-qubit state of a class: (1/4)(I + sum s_i sigma_i x sigma_i)
/// for the diagonal form, (1/2)[[1,0,0,a1],[0,1-a0,0,0],[0,0,0,0],[a1,0,0,a0]] for the shifted one.
inline TwoQubitDensity canonical_rho(const CanonicalClass& c)
{
    TwoQubitDensity rho = rho_from_lambda(canonical_lambda(c));
    if (rho.min_eigenvalue() < -1e-10) {
        throw InconsistentClassError(std::string("canonical_rho: the ") + class_kind(c) +
                                     " canonical state is not positive semidefinite");
    }
    return rho;
}

/// Element of SL(2,C).
class SlTransform {
public:
    explicit SlTransform(const Eigen::Matrix2cd& a, double tol = 1e-12) : a_(a)
    {
        if (std::abs(a.determinant() - 1.0) > tol) {
            throw DomainError("SlTransform: determinant must equal 1 (|det - 1| = " +
                              std::to_string(std::abs(a.determinant() - 1.0)) + ")");
        }
    }

    static SlTransform identity() { return SlTransform(Eigen::Matrix2cd::Identity()); }

    const Eigen::Matrix2cd& matrix() const noexcept { return a_; }

private:
    Eigen::Matrix2cd a_;
};

/// Proper orthochronous Lorentz matrix (L^T G L = G, det L = 1, L_00 >= 1).
struct LorentzMatrix {
    Eigen::Matrix4d l = Eigen::Matrix4d::Identity();

    double metric_defect() const
    {
        const Eigen::Matrix4d g = minkowski_metric();
        return (l.transpose() * g * l - g).cwiseAbs().maxCoeff();
    }

    bool is_proper_orthochronous(double tol = 1e-10) const
    {
        return metric_defect() <= tol * std::max(1.0, l.cwiseAbs2().maxCoeff()) &&
               std::abs(l.determinant() - 1.0) <= tol * std::max(1.0, l.cwiseAbs().maxCoeff()) &&
               l(0, 0) >= 1.0 - tol;
    }
};

/// L_{mu nu} = (1/2) Re Tr[sigma_mu A sigma_nu A^dagger].
inline LorentzMatrix sl2c_to_lorentz(const SlTransform& a)
{
    const auto& s = pauli();
    const Eigen::Matrix2cd& m = a.matrix();
    LorentzMatrix out;
    for (int mu = 0; mu < 4; ++mu) {
        for (int nu = 0; nu < 4; ++nu) {
            out.l(mu, nu) = 0.5 * (s[static_cast<std::size_t>(mu)] * m * s[static_cast<std::size_t>(nu)] * m.adjoint()).trace().real();
        }
    }
    return out;
}

/// L -> L_A L L_B^T / (L_A L L_B^T)_00.
inline RealRep slocc_transform(const RealRep& l, const LorentzMatrix& la, const LorentzMatrix& lb,
                               double rank_floor = 1e-12)
{
    const Eigen::Matrix4d raw = la.l * l.matrix() * lb.l.transpose();
    if (!(raw(0, 0) > rank_floor)) {
        throw SingularError("slocc_transform: the transformed 00 entry vanishes (singular orbit)");
    }
    return RealRep(raw);
}

/// rho -> (A x B) rho (A x B)^dagger / Tr[...].
inline TwoQubitDensity slocc_transform(const TwoQubitDensity& rho, const SlTransform& a, const SlTransform& b,
                                       double rank_floor = 1e-12)
{
    const Eigen::Matrix4cd f = kron(a.matrix(), b.matrix());
    TwoQubitDensity out;
    out.m = f * rho.m * f.adjoint();
    const double norm = out.m.trace().real();
    if (!(norm > rank_floor)) {
        throw SingularError("slocc_transform: the filtered state has vanishing trace");
    }
    out.m /= norm;
    return out;
}

} // namespace steering_canon
