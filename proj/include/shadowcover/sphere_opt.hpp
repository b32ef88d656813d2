#pragma once

#include <vector>

#include "shadowcover/rng.hpp"
#include "shadowcover/vec.hpp"

namespace shadowcover {

struct SphereOpt {
    double value = 0.0;
    Vec point;
};

// Shrinking tangent-stencil descent of fn over the unit sphere, started at u0.
// Handles the piecewise-smooth objectives that support-function differences
// produce (kinked valleys included).
template <class F>
SphereOpt sphere_minimize(F&& fn, Vec u0, Rng& rng, double step0 = 0.2, double step_min = 1e-11) {
    const int n = static_cast<int>(u0.size());
    Vec u = normalized(u0);
    double fu = fn(u);
    double step = step0;
    while (step > step_min) {
        bool improved = false;
        std::vector<Vec> tangent;
        {
            std::vector<Vec> basis = {u};
            std::vector<Vec> cand;
            for (int i = 0; i < n; ++i) cand.push_back(unit(n, i));
            cand.push_back(rng.unit_vec(n));
            gram_schmidt_extend(basis, cand, 1e-12);
            tangent.assign(basis.begin() + 1, basis.end());
        }
        for (const Vec& t : tangent) {
            for (double s : {step, -step}) {
                Vec v = normalized(add(u, scaled(t, s)));
                double fv = fn(v);
                if (fv < fu - 1e-15) {
                    fu = fv;
                    u = v;
                    improved = true;
                }
            }
        }
        if (!improved) step *= 0.5;
    }
    return {fu, u};
}

}  // namespace shadowcover
