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
#pragma once

// In-process implementation of the steering_canon command-line tool. The
// executable in steering_canon.cpp only forwards argv to run(); the tests call
// run() directly.

#include <steering_canon/steering_canon.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace steering_canon::cli {

inline constexpr const char* kSchema = "steering-canon/1";

enum class Exit : int { ok = 0, usage = 2, failure = 3 };

/// Bad flag value detected after CLI11 parsing (maps to exit 2).
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Selectors: "v" or "start:stop:step", stop inclusive.

namespace detail {

inline std::vector<std::string> split_colon(const std::string& text)
{
    std::vector<std::string> parts;
    std::size_t begin = 0;
    while (true) {
        const std::size_t pos = text.find(':', begin);
        parts.push_back(text.substr(begin, pos - begin));
        if (pos == std::string::npos) {
            break;
        }
        begin = pos + 1;
    }
    return parts;
}

inline int to_int(const std::string& s, const std::string& flag)
{
    int v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
        throw UsageError(flag + ": '" + s + "' is not an integer");
    }
    return v;
}

inline double to_double(const std::string& s, const std::string& flag)
{
    // strtod instead of from_chars<double>: the latter is missing from older libstdc++.
    if (s.empty()) {
        throw UsageError(flag + ": empty number");
    }
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size() || !std::isfinite(v)) {
        throw UsageError(flag + ": '" + s + "' is not a finite number");
    }
    return v;
}

// Removes accumulated binary noise such as 0.30000000000000004 from range points.
inline double tidy(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return std::strtod(buf, nullptr);
}

} // namespace detail

inline std::vector<int> parse_int_selector(const std::string& text, const std::string& flag)
{
    const auto parts = detail::split_colon(text);
    if (parts.size() == 1) {
        return {detail::to_int(parts[0], flag)};
    }
    if (parts.size() != 3) {
        throw UsageError(flag + ": expected a value or start:stop:step, got '" + text + "'");
    }
    const int start = detail::to_int(parts[0], flag);
    const int stop = detail::to_int(parts[1], flag);
    const int step = detail::to_int(parts[2], flag);
    if (step <= 0) {
        throw UsageError(flag + ": range step must be positive");
    }
    std::vector<int> out;
    for (long v = start; v <= stop; v += step) {
        out.push_back(static_cast<int>(v));
    }
    return out;
}

inline std::vector<double> parse_real_selector(const std::string& text, const std::string& flag)
{
    const auto parts = detail::split_colon(text);
    if (parts.size() == 1) {
        return {detail::to_double(parts[0], flag)};
    }
    if (parts.size() != 3) {
        throw UsageError(flag + ": expected a value or start:stop:step, got '" + text + "'");
    }
    const double start = detail::to_double(parts[0], flag);
    const double stop = detail::to_double(parts[1], flag);
    const double step = detail::to_double(parts[2], flag);
    if (!(step > 0.0)) {
        throw UsageError(flag + ": range step must be positive");
    }
    std::vector<double> out;
    if (stop < start) {
        return out;
    }
    const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
    for (long i = 0; i < count; ++i) {
        out.push_back(detail::tidy(start + static_cast<double>(i) * step));
    }
    return out;
}

/// "WxH" with both parts >= 4.
inline std::pair<int, int> parse_resolution(const std::string& text)
{
    const std::size_t x = text.find('x');
    if (x == std::string::npos) {
        throw UsageError("--res: expected WxH, got '" + text + "'");
    }
    const int w = detail::to_int(text.substr(0, x), "--res");
    const int h = detail::to_int(text.substr(x + 1), "--res");
    if (w < 4 || h < 4) {
        throw UsageError("--res: both resolutions must be at least 4");
    }
    return {w, h};
}

// ---------------------------------------------------------------------------
// Formatting

inline std::string num(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline nlohmann::ordered_json vec_json(const Eigen::Vector3d& v) { return {v.x(), v.y(), v.z()}; }

inline nlohmann::ordered_json canonical_json(const CanonicalClass& c)
{
    nlohmann::ordered_json j;
    j["kind"] = class_kind(c);
    if (const auto* d = std::get_if<Diagonal>(&c)) {
        j["s"] = {d->s1, d->s2, d->s3};
    } else if (const auto* s = std::get_if<Shifted>(&c)) {
        j["a0"] = s->a0;
        j["a1"] = s->a1;
        j["phi0"] = s->phi0;
    } else {
        j["reason"] = std::get<Degenerate>(c).reason;
    }
    return j;
}

inline const std::vector<std::string>& table_columns()
{
    static const std::vector<std::string> cols{
        "N", "k", "a", "class", "a0", "a1", "s1", "s2", "s3", "center_x", "center_y", "center_z",
        "semiaxis_1", "semiaxis_2", "semiaxis_3", "volume", "normalized_volume", "obesity", "concurrence",
        "monogamy_lhs", "monogamy_slack", "consistency", "error"};
    return cols;
}

inline std::string csv_header(const std::string& command)
{
    std::string out = "# " + std::string(kSchema) + " " + command +
                      ": one row per (N, k, a). class is diagonal|shifted|degenerate; a0,a1 are set for "
                      "shifted rows and s1..s3 for diagonal rows; center and semiaxes describe the canonical "
                      "steering ellipsoid; volume and normalized_volume refer to the family state itself; "
                      "monogamy is (v)^(2/3) <= 1/2; consistency is the class-vs-recomputed ellipsoid gap; "
                      "error is set when the row failed.\n";
    for (std::size_t i = 0; i < table_columns().size(); ++i) {
        out += (i ? "," : "") + table_columns()[i];
    }
    return out + "\n";
}

inline std::string csv_quote(const std::string& s)
{
    std::string out = "\"";
    for (char ch : s) {
        out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    }
    return out + "\"";
}

inline std::string csv_row(const SweepRow& row)
{
    std::vector<std::string> f(table_columns().size());
    f[0] = std::to_string(row.n);
    f[1] = std::to_string(row.k);
    f[2] = num(row.a);
    if (row.error) {
        f[22] = csv_quote(*row.error);
    } else {
        const CanonicalClass& c = *row.canonical;
        f[3] = class_kind(c);
        if (const auto* s = std::get_if<Shifted>(&c)) {
            f[4] = num(s->a0);
            f[5] = num(s->a1);
        } else if (const auto* d = std::get_if<Diagonal>(&c)) {
            f[6] = num(d->s1);
            f[7] = num(d->s2);
            f[8] = num(d->s3);
        }
        for (int i = 0; i < 3; ++i) {
            f[static_cast<std::size_t>(9 + i)] = num(row.ellipsoid->center[i]);
            f[static_cast<std::size_t>(12 + i)] = num(row.ellipsoid->semiaxes[i]);
        }
        f[15] = num(row.metrics->volume);
        f[16] = num(row.metrics->normalized_volume);
        f[17] = num(row.metrics->obesity);
        f[18] = num(*row.concurrence);
        f[19] = num(row.monogamy->lhs);
        f[20] = num(row.monogamy->slack);
        f[21] = num(row.consistency);
    }
    std::string out;
    for (std::size_t i = 0; i < f.size(); ++i) {
        out += (i ? "," : "") + f[i];
    }
    return out + "\n";
}

inline nlohmann::ordered_json row_json(const SweepRow& row)
{
    nlohmann::ordered_json j;
    j["spec"] = {{"N", row.n}, {"k", row.k}, {"a", row.a}};
    if (row.error) {
        j["error"] = *row.error;
        return j;
    }
    j["class"] = class_kind(*row.canonical);
    j["canonical"] = canonical_json(*row.canonical);
    j["center"] = vec_json(row.ellipsoid->center);
    j["semiaxes"] = vec_json(row.ellipsoid->semiaxes);
    j["volume"] = row.metrics->volume;
    j["normalized_volume"] = row.metrics->normalized_volume;
    j["obesity"] = row.metrics->obesity;
    j["concurrence"] = *row.concurrence;
    j["monogamy"] = {{"relation", relation_name(row.monogamy->relation)},
                     {"lhs", row.monogamy->lhs},
                     {"bound", row.monogamy->bound},
                     {"slack", row.monogamy->slack},
                     {"satisfied", row.monogamy->satisfied}};
    j["consistency"] = row.consistency;
    return j;
}

inline nlohmann::ordered_json mesh_json(const Mesh& m)
{
    nlohmann::ordered_json v = nlohmann::ordered_json::array();
    for (const auto& p : m.vertices) {
        v.push_back(vec_json(p));
    }
    nlohmann::ordered_json f = nlohmann::ordered_json::array();
    for (const auto& t : m.faces) {
        f.push_back({t[0], t[1], t[2]});
    }
    return {{"vertices", v}, {"faces", f}};
}

// ---------------------------------------------------------------------------
// verify suites

struct SuiteResult {
    std::string name;
    enum class Status { pass, fail, skipped } status = Status::pass;
    double max_residual = 0.0;
    double tolerance = 0.0;
    long cases = 0;
    std::string note;
};

inline const char* status_name(SuiteResult::Status s)
{
    switch (s) {
    case SuiteResult::Status::pass:
        return "PASS";
    case SuiteResult::Status::fail:
        return "FAIL";
    case SuiteResult::Status::skipped:
        return "SKIPPED";
    }
    return "?";
}

struct VerifyConfig {
    std::vector<FamilySpec> specs;
    std::uint64_t seed = 0;
    std::optional<double> tol;
    int directions = 10000;
    int orbit_samples = 20;
    int random_states = 10000;
};

namespace detail {

inline Rng suite_rng(std::uint64_t seed, std::uint64_t suite)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(suite)};
    return Rng(seq);
}

inline void finish(SuiteResult& r)
{
    if (r.status != SuiteResult::Status::skipped && r.max_residual > r.tolerance) {
        r.status = SuiteResult::Status::fail;
    }
}

// Eigenvalues of G*Omega scaled by the largest one; invariant along an SLOCC orbit.
inline std::array<double, 4> normalized_spectrum(const RealRep& l)
{
    const SpectralData sd = spectral(omega(l));
    std::array<double, 4> out = sd.eigenvalues;
    for (double& v : out) {
        v /= sd.eigenvalues[0];
    }
    return out;
}

// Orbit invariants of a class: |s_i| sorted for the diagonal form,
// the ratio a1^2 / a0 for the shifted one.
inline std::vector<double> class_invariants(const CanonicalClass& c)
{
    if (const auto* d = std::get_if<Diagonal>(&c)) {
        std::vector<double> s{std::abs(d->s1), std::abs(d->s2), std::abs(d->s3)};
        std::sort(s.begin(), s.end());
        return s;
    }
    if (const auto* s = std::get_if<Shifted>(&c)) {
        return {s->a1 * s->a1 / s->a0};
    }
    return {};
}

} // namespace detail

inline SuiteResult suite_rdm_oracle(const VerifyConfig& cfg)
{
    SuiteResult r{"rdm-oracle"};
    r.tolerance = cfg.tol.value_or(1e-12);
    const int cap = oracle_cap();
    long skipped = 0;
    for (const FamilySpec& spec : cfg.specs) {
        if (spec.n() > cap) {
            ++skipped;
            continue;
        }
        const TwoQubitDensity closed = rdm_closed_form(spec);
        const TwoQubitDensity brute = rdm_oracle(full_state_vector(dicke_coefficients(spec), cap), cap);
        r.max_residual = std::max(r.max_residual, (closed.m - brute.m).cwiseAbs().maxCoeff());
        ++r.cases;
    }
    if (r.cases == 0) {
        r.status = SuiteResult::Status::skipped;
        r.note = "every N exceeds the oracle cap of " + std::to_string(cap) + " qubits";
    } else if (skipped > 0) {
        r.note = std::to_string(skipped) + " specs above the oracle cap were skipped";
    }
    detail::finish(r);
    return r;
}

inline SuiteResult suite_steered_points(const VerifyConfig& cfg)
{
    SuiteResult r{"steered-points"};
    r.tolerance = cfg.tol.value_or(1e-9);
    Rng rng = detail::suite_rng(cfg.seed, 2);
    for (const FamilySpec& spec : cfg.specs) {
        const RealRep lambda = lambda_from_rho(rdm_closed_form(spec));
        const CanonicalClass c = classify(lambda);
        const RealRep canonical = canonical_lambda(c);
        const Ellipsoid e = ellipsoid_from_class(c);
        const Ellipsoid direct = steering_ellipsoid(lambda);
        for (int i = 0; i < cfg.directions; ++i) {
            const Eigen::Vector3d q = random_unit_vector(rng);
            r.max_residual = std::max(r.max_residual, std::abs(e.implicit_residual(steered_point(canonical, q))));
            r.max_residual = std::max(r.max_residual, std::abs(direct.implicit_residual(steered_point(lambda, q))));
        }
        ++r.cases;
    }
    detail::finish(r);
    return r;
}

inline SuiteResult suite_slocc_invariance(const VerifyConfig& cfg)
{
    SuiteResult r{"slocc-invariance"};
    r.tolerance = cfg.tol.value_or(1e-8);
    Rng rng = detail::suite_rng(cfg.seed, 3);
    for (const FamilySpec& spec : cfg.specs) {
        const RealRep lambda = lambda_from_rho(rdm_closed_form(spec));
        const CanonicalClass c = classify(lambda);
        const std::vector<double> inv = detail::class_invariants(c);
        const auto spectrum = detail::normalized_spectrum(lambda);
        for (int i = 0; i < cfg.orbit_samples; ++i) {
            const LorentzMatrix la = sl2c_to_lorentz(random_sl2c(rng));
            const LorentzMatrix lb = sl2c_to_lorentz(random_sl2c(rng));
            const RealRep moved = slocc_transform(lambda, la, lb);
            const CanonicalClass c2 = classify(moved);
            if (class_kind(c2) != std::string(class_kind(c))) {
                r.max_residual = std::max(r.max_residual, 1.0);
                r.note = "class changed along the orbit for N=" + std::to_string(spec.n()) +
                         " k=" + std::to_string(spec.k()) + " a=" + num(spec.a());
                continue;
            }
            const std::vector<double> inv2 = detail::class_invariants(c2);
            for (std::size_t j = 0; j < inv.size(); ++j) {
                r.max_residual = std::max(r.max_residual, std::abs(inv[j] - inv2[j]));
            }
            const auto spectrum2 = detail::normalized_spectrum(moved);
            for (std::size_t j = 0; j < 4; ++j) {
                r.max_residual = std::max(r.max_residual, std::abs(spectrum[j] - spectrum2[j]));
            }
            ++r.cases;
        }
    }
    detail::finish(r);
    return r;
}

inline SuiteResult suite_monogamy(const VerifyConfig& cfg)
{
    SuiteResult r{"monogamy"};
    r.tolerance = cfg.tol.value_or(1e-10);
    double worst_slack = 0.0;
    for (const FamilySpec& spec : cfg.specs) {
        const SteeringMetrics m = metrics(lambda_from_rho(rdm_closed_form(spec)));
        const MonogamyReport rep = monogamy_symmetric(std::clamp(m.normalized_volume, 0.0, 1.0), spec.n());
        // A violated bound counts as a residual of the size of the violation.
        worst_slack = std::min(worst_slack, rep.slack);
        if (!rep.satisfied) {
            r.max_residual = std::max(r.max_residual, -rep.slack);
            r.status = SuiteResult::Status::fail;
        }
        if (spec.n() == 3 && spec.k() == 1) {
            const MonogamyReport sat = monogamy_pure3(m.normalized_volume, m.normalized_volume);
            r.max_residual = std::max(r.max_residual, std::abs(sat.lhs - 1.0));
        }
        ++r.cases;
    }
    detail::finish(r);
    return r;
}

inline SuiteResult suite_obesity_bound(const VerifyConfig& cfg)
{
    SuiteResult r{"obesity-bound"};
    r.tolerance = cfg.tol.value_or(1e-8);
    Rng rng = detail::suite_rng(cfg.seed, 5);
    for (int i = 0; i < cfg.random_states; ++i) {
        const TwoQubitDensity rho = random_density(rng);
        const double c = concurrence_wootters(rho);
        const double o = obesity(rho);
        // The bound itself is checked at 1e-12 regardless of --tol.
        if (c > o + 1e-12) {
            r.status = SuiteResult::Status::fail;
            r.max_residual = std::max(r.max_residual, c - o);
        }
        if (c > 1e-6) {
            const TwoQubitDensity moved = slocc_transform(rho, random_sl2c(rng), random_sl2c(rng));
            const double c2 = concurrence_wootters(moved);
            if (c2 > 1e-6) {
                const double ratio = o / c;
                r.max_residual = std::max(r.max_residual, std::abs(obesity(moved) / c2 - ratio) / ratio);
            }
        }
        ++r.cases;
    }
    detail::finish(r);
    return r;
}

inline std::vector<SuiteResult> run_verify(const VerifyConfig& cfg)
{
    using Suite = SuiteResult (*)(const VerifyConfig&);
    const std::pair<const char*, Suite> suites[] = {{"rdm-oracle", suite_rdm_oracle},
                                                    {"steered-points", suite_steered_points},
                                                    {"slocc-invariance", suite_slocc_invariance},
                                                    {"monogamy", suite_monogamy},
                                                    {"obesity-bound", suite_obesity_bound}};
    std::vector<SuiteResult> out;
    for (const auto& [name, suite] : suites) {
        try {
            out.push_back(suite(cfg));
        } catch (const Error& ex) {
            SuiteResult failed{name};
            failed.status = SuiteResult::Status::fail;
            failed.note = ex.what();
            out.push_back(failed);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Commands

struct Options {
    std::string n;
    std::optional<std::string> k;
    std::optional<std::string> a;
    std::uint64_t seed = 0;
    std::optional<std::string> format;
    std::optional<std::string> output;
    std::optional<double> tol;
    std::string res = "64x32";
    bool with_bloch = false;
};

namespace detail {

inline std::vector<FamilySpec> resolve_specs(const Options& o, std::vector<double> default_a)
{
    const std::vector<int> ns = parse_int_selector(o.n, "--N");
    const std::vector<double> as = o.a ? parse_real_selector(*o.a, "--a") : std::move(default_a);
    std::vector<FamilySpec> specs;
    for (int n : ns) {
        std::vector<int> ks;
        if (o.k) {
            ks = parse_int_selector(*o.k, "--k");
        } else {
            for (int k = 1; k <= n / 2; ++k) {
                ks.push_back(k);
            }
        }
        for (int k : ks) {
            for (double a : as) {
                try {
                    specs.emplace_back(n, k, a);
                } catch (const DomainError& ex) {
                    throw UsageError(ex.what());
                }
            }
        }
    }
    return specs;
}

inline FamilySpec single_spec(const Options& o)
{
    if (o.n.find(':') != std::string::npos || (o.k && o.k->find(':') != std::string::npos) ||
        (o.a && o.a->find(':') != std::string::npos)) {
        throw UsageError("this command takes single values for --N, --k and --a");
    }
    Options single = o;
    single.k = o.k.value_or("1");
    return resolve_specs(single, {0.0}).front();
}

inline std::string format_or(const Options& o, const std::string& fallback, std::initializer_list<const char*> allowed)
{
    const std::string f = o.format.value_or(fallback);
    for (const char* a : allowed) {
        if (f == a) {
            return f;
        }
    }
    throw UsageError("--format " + f + " is not available for this command");
}

} // namespace detail

inline std::string cmd_ellipsoid(const Options& o)
{
    const std::string format = detail::format_or(o, "json", {"json", "csv"});
    const SweepRow row = analyze(detail::single_spec(o));
    if (format == "csv") {
        return csv_header("ellipsoid") + csv_row(row);
    }
    nlohmann::ordered_json j;
    j["schema"] = kSchema;
    j["command"] = "ellipsoid";
    const nlohmann::ordered_json body = row_json(row);
    for (const auto& [key, value] : body.items()) {
        j[key] = value;
    }
    return j.dump(2) + "\n";
}

inline std::string cmd_sweep(const Options& o)
{
    const std::string format = detail::format_or(o, "csv", {"json", "csv"});
    const std::vector<int> ns = parse_int_selector(o.n, "--N");
    const std::vector<double> as = o.a ? parse_real_selector(*o.a, "--a") : std::vector<double>{0.0};
    std::vector<SweepRow> rows;
    for (int n : ns) {
        std::vector<int> ks;
        if (o.k) {
            ks = parse_int_selector(*o.k, "--k");
        } else {
            for (int k = 1; k <= n / 2; ++k) {
                ks.push_back(k);
            }
        }
        const int one[] = {n};
        auto part = family_sweep(one, ks, as);
        std::move(part.begin(), part.end(), std::back_inserter(rows));
    }
    if (format == "csv") {
        std::string out = csv_header("sweep");
        for (const SweepRow& row : rows) {
            out += csv_row(row);
        }
        return out;
    }
    nlohmann::ordered_json j;
    j["schema"] = kSchema;
    j["command"] = "sweep";
    j["rows"] = nlohmann::ordered_json::array();
    for (const SweepRow& row : rows) {
        j["rows"].push_back(row_json(row));
    }
    return j.dump(2) + "\n";
}

inline std::string cmd_mesh(const Options& o)
{
    detail::format_or(o, "mesh-json", {"mesh-json"});
    const auto [w, h] = parse_resolution(o.res);
    const FamilySpec spec = detail::single_spec(o);
    const CanonicalClass c = classify(lambda_from_rho(rdm_closed_form(spec)));
    const Ellipsoid e = ellipsoid_from_class(c);
    nlohmann::ordered_json j;
    j["schema"] = kSchema;
    j["spec"] = {{"N", spec.n()}, {"k", spec.k()}, {"a", spec.a()}};
    j["class"] = class_kind(c);
    j["center"] = vec_json(e.center);
    j["semiaxes"] = vec_json(e.semiaxes);
    const nlohmann::ordered_json body = mesh_json(mesh(e, w, h));
    for (const auto& [key, value] : body.items()) {
        j[key] = value;
    }
    if (o.with_bloch) {
        Ellipsoid sphere;
        sphere.semiaxes = Eigen::Vector3d::Ones();
        j["bloch"] = mesh_json(mesh(sphere, w, h));
    }
    return j.dump() + "\n";
}

/// Returns the report and whether every suite passed or was skipped.
inline std::pair<std::string, bool> cmd_verify(const Options& o)
{
    const std::string format = detail::format_or(o, "text", {"text", "json"});
    VerifyConfig cfg;
    cfg.specs = detail::resolve_specs(o, {0.0, 0.2, 0.4, 0.6, 0.8});
    cfg.seed = o.seed;
    cfg.tol = o.tol;
    const std::vector<SuiteResult> results = run_verify(cfg);
    bool ok = true;
    for (const auto& r : results) {
        ok = ok && r.status != SuiteResult::Status::fail;
    }
    if (format == "json") {
        nlohmann::ordered_json j;
        j["schema"] = kSchema;
        j["command"] = "verify";
        j["seed"] = o.seed;
        j["suites"] = nlohmann::ordered_json::array();
        for (const auto& r : results) {
            j["suites"].push_back({{"name", r.name},
                                   {"status", status_name(r.status)},
                                   {"max_residual", r.max_residual},
                                   {"tolerance", r.tolerance},
                                   {"cases", r.cases},
                                   {"note", r.note}});
        }
        j["passed"] = ok;
        return {j.dump(2) + "\n", ok};
    }
    std::string out;
    for (const auto& r : results) {
        char buf[96];
        std::snprintf(buf, sizeof buf, " max_residual=%.3e tol=%.1e", r.max_residual, r.tolerance);
        out += std::string(status_name(r.status)) + " " + r.name + buf + " cases=" + std::to_string(r.cases);
        if (!r.note.empty()) {
            out += " (" + r.note + ")";
        }
        out += "\n";
    }
    return {out, ok};
}

// ---------------------------------------------------------------------------
// Entry point

/// Runs the tool with `args` (without the program name). Data goes to `out`
/// or to --output; diagnostics go to `err`.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Canonical steering ellipsoids of symmetric two-spinor multiqubit states"};
    app.name("steering_canon");
    app.require_subcommand(1);

    Options o;
    std::string command;
    auto add_common = [&o](CLI::App* sub, bool ranges) {
        const char* sel = ranges ? " (value or start:stop:step, stop inclusive)" : "";
        sub->add_option("--N", o.n, std::string("number of qubits") + sel)->required();
        sub->add_option("--k", o.k, std::string("minority spinor count") + sel);
        sub->add_option("--a", o.a, std::string("spinor overlap parameter in [0,1)") + sel);
        sub->add_option("--format", o.format, "json | csv | mesh-json");
        sub->add_option("--output", o.output, "write data to this path instead of standard output");
        sub->add_option("--seed", o.seed, "seed for all random sampling (default 0)");
        sub->add_option("--tol", o.tol, "residual tolerance override (> 0)");
    };
    CLI::App* ell = app.add_subcommand("ellipsoid", "canonical class, ellipsoid and metrics of one state");
    CLI::App* swp = app.add_subcommand("sweep", "table over a grid of (N, k, a)");
    CLI::App* ver = app.add_subcommand("verify", "run the oracle and property suites");
    CLI::App* msh = app.add_subcommand("mesh", "triangle mesh of the canonical ellipsoid");
    add_common(ell, false);
    add_common(swp, true);
    add_common(ver, true);
    add_common(msh, false);
    msh->add_option("--res", o.res, "mesh resolution WxH, each >= 4 (default 64x32)");
    msh->add_flag("--with-bloch", o.with_bloch, "add a unit Bloch-sphere mesh");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << "\n" << app.help();
        return static_cast<int>(Exit::usage);
    }

    std::string data;
    int code = static_cast<int>(Exit::ok);
    try {
        if (o.tol && !(*o.tol > 0.0)) {
            throw UsageError("--tol must be positive");
        }
        if (ell->parsed()) {
            data = cmd_ellipsoid(o);
        } else if (swp->parsed()) {
            data = cmd_sweep(o);
        } else if (msh->parsed()) {
            data = cmd_mesh(o);
        } else if (ver->parsed()) {
            auto [report, ok] = cmd_verify(o);
            data = std::move(report);
            if (!ok) {
                code = static_cast<int>(Exit::failure);
            }
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return static_cast<int>(Exit::usage);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return static_cast<int>(Exit::failure);
    }

    if (o.output) {
        std::ofstream file(*o.output, std::ios::binary);
        if (!file || !(file << data)) {
            err << "error: cannot write " << *o.output << "\n";
            return static_cast<int>(Exit::failure);
        }
    } else {
        out << data;
    }
    return code;
}

} // namespace steering_canon::cli
