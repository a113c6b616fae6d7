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
// Walks the W-class family: for each N the canonical spheroid is the same
// for every a, while the state's own ellipsoid moves and shrinks with a.

#include <steering_canon/steering_canon.hpp>

#include <cmath>
#include <cstdio>

int main()
{
    using namespace steering_canon;
    std::printf("%3s %5s %10s %10s %10s %12s %12s %12s\n", "N", "a", "a0", "a1", "center_z", "v", "1/(N-1)^2",
                "concurrence");
    for (int n : {3, 4, 6, 10, 20}) {
        for (double a : {0.0, 0.5, 0.9}) {
            const TwoQubitDensity rho = rdm_w_class(n, a);
            const RealRep lambda = lambda_from_rho(rho);
            const CanonicalClass c = classify(lambda);
            const auto* s = std::get_if<Shifted>(&c);
            if (s == nullptr) {
                std::printf("%3d %5.2f unexpected class %s\n", n, a, class_kind(c));
                return 1;
            }
            const Ellipsoid e = ellipsoid_from_class(c);
            std::printf("%3d %5.2f %10.6f %10.6f %10.6f %12.6e %12.6e %12.6f\n", n, a, s->a0, s->a1, e.center.z(),
                        metrics(lambda).normalized_volume, 1.0 / ((n - 1.0) * (n - 1.0)), concurrence_wootters(rho));
        }
    }

    // The shifted spheroid touches the north pole of the Bloch sphere.
    const Ellipsoid e = ellipsoid_from_class(Shifted{0.5, std::sqrt(0.5), 1.0});
    std::printf("N=3 canonical spheroid: center (0, 0, %.4f), semiaxes (%.4f, %.4f, %.4f), top at z = %.4f\n",
                e.center.z(), e.semiaxes[0], e.semiaxes[1], e.semiaxes[2], e.center.z() + e.semiaxes[2]);
    return 0;
}
