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

// Two-spinor permutation-symmetric N-qubit states |D_{N-k,k}> in canonical form.
//
// The state is sum_r beta_r |N/2, N/2 - r>, r = 0..k, where the Dicke ket
// |N/2, N/2 - r> is the normalized equal-weight superposition of all bitstrings
// of Hamming weight r. Bitstrings index the computational basis with qubit 0 as
// the most significant bit.

#pragma once

#include "errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <string_view>
#include <vector>

namespace steering_canon {

/// Selects |D_{N-k,k}> from the one-parameter family: qubit count N, spinor
/// degeneracy k and the real parameter a in [0, 1).
class FamilySpec {
public:
    FamilySpec(int n, int k, double a) : n_(n), k_(k), a_(a)
    {
        if (n < 3) {
            throw DomainError("FamilySpec: N must satisfy N >= 3 (got " + std::to_string(n) + ")");
        }
        if (k < 1 || k > n / 2) {
            throw DomainError("FamilySpec: k must satisfy 1 <= k <= floor(N/2) = " +
                              std::to_string(n / 2) + " (got " + std::to_string(k) + ")");
        }
        if (!(a >= 0.0 && a < 1.0)) {
            throw DomainError("FamilySpec: a must satisfy 0 <= a < 1 (got " + std::to_string(a) + ")");
        }
    }

    int n() const noexcept { return n_; }
    int k() const noexcept { return k_; }
    double a() const noexcept { return a_; }
    double b() const noexcept { return std::sqrt(1.0 - a_ * a_); }

    friend bool operator==(const FamilySpec&, const FamilySpec&) = default;

private:
    int n_;
    int k_;
    double a_;
};

/// Amplitudes beta_r (r = 0..k) in the Dicke basis, unit norm.
struct DickeBasisState {
    int n = 0;
    std::vector<double> beta;

    int k() const noexcept { return static_cast<int>(beta.size()) - 1; }
};

/// Full 2^N computational-basis state vector.
struct FullStateVector {
    int n = 0;
    Eigen::VectorXcd amplitudes;
};

/// Default qubit cap for brute-force 2^N expansions.
inline constexpr int kDefaultOracleCap = 14;

/// Qubit cap for brute-force expansions; STEERING_CANON_ORACLE_CAP overrides it.
inline int oracle_cap()
{
    const char* env = std::getenv("STEERING_CANON_ORACLE_CAP");
    if (env == nullptr) {
        return kDefaultOracleCap;
    }
    std::string_view text(env);
    int value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || value < 1 || value > 30) {
        return kDefaultOracleCap;
    }
    return value;
}

/// log of the binomial coefficient C(n, r).
inline double log_binomial(int n, int r)
{
    return std::lgamma(n + 1.0) - std::lgamma(r + 1.0) - std::lgamma(n - r + 1.0);
}

/// Dicke-basis amplitudes of |D_{N-k,k}>:
///
///   beta_r ~ sqrt(N! (N-r)! / r!) a^(k-r) b^r / ((N-k)! (k-r)!),  b = sqrt(1 - a^2),
///
/// normalized so that sum_r beta_r^2 = 1. Evaluated in log space so N can go
/// well beyond the range of double factorials.
inline DickeBasisState dicke_coefficients(const FamilySpec& spec)
{
    const int n = spec.n();
    const int k = spec.k();
    const double a = spec.a();

    DickeBasisState out;
    out.n = n;
    out.beta.assign(static_cast<std::size_t>(k) + 1, 0.0);

    if (a == 0.0) {
        out.beta[static_cast<std::size_t>(k)] = 1.0;
        return out;
    }

    const double log_a = std::log(a);
    const double log_b = 0.5 * std::log1p(-a * a);
    std::vector<double> logs(static_cast<std::size_t>(k) + 1);
    for (int r = 0; r <= k; ++r) {
        logs[static_cast<std::size_t>(r)] =
            0.5 * (std::lgamma(n + 1.0) + std::lgamma(n - r + 1.0) - std::lgamma(r + 1.0)) +
            (k - r) * log_a + r * log_b - std::lgamma(n - k + 1.0) - std::lgamma(k - r + 1.0);
    }
    const double peak = *std::max_element(logs.begin(), logs.end());
    double norm2 = 0.0;
    for (int r = 0; r <= k; ++r) {
        const double v = std::exp(logs[static_cast<std::size_t>(r)] - peak);
        out.beta[static_cast<std::size_t>(r)] = v;
        norm2 += v * v;
    }
    const double inv = 1.0 / std::sqrt(norm2);
    for (double& v : out.beta) {
        v *= inv;
    }
    return out;
}

/// Expands a Dicke-basis state into all 2^N amplitudes. The amplitude of a
/// bitstring of Hamming weight r is beta_r / sqrt(C(N, r)) for r <= k, else 0.
inline FullStateVector full_state_vector(const DickeBasisState& state, int cap = oracle_cap())
{
    const int n = state.n;
    if (n < 1) {
        throw DomainError("full_state_vector: N must be positive");
    }
    if (state.beta.empty() || state.k() > n) {
        throw DomainError("full_state_vector: beta must have between 1 and N+1 entries");
    }
    if (n > cap) {
        throw CapacityError("full_state_vector: N = " + std::to_string(n) +
                            " exceeds the oracle cap of " + std::to_string(cap) + " qubits");
    }

    std::vector<double> per_weight(static_cast<std::size_t>(n) + 1, 0.0);
    for (int r = 0; r <= state.k(); ++r) {
        per_weight[static_cast<std::size_t>(r)] =
            state.beta[static_cast<std::size_t>(r)] * std::exp(-0.5 * log_binomial(n, r));
    }

    FullStateVector out;
    out.n = n;
    const std::uint64_t dim = std::uint64_t{1} << n;
    out.amplitudes.setZero(static_cast<Eigen::Index>(dim));
    for (std::uint64_t i = 0; i < dim; ++i) {
        out.amplitudes[static_cast<Eigen::Index>(i)] = per_weight[static_cast<std::size_t>(std::popcount(i))];
    }
    return out;
}

} // namespace steering_canon
