// Copyright 2026 xzzxsim Contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "xzzx/fits.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace xzzx {

LinearFit weighted_linear_fit(const std::vector<double>& x, const std::vector<double>& y,
                              const std::vector<double>& sigma) {
    if (x.size() != y.size() || x.size() != sigma.size())
        throw std::invalid_argument("mismatched fit inputs");
    if (x.size() < 2) throw std::invalid_argument("linear fit needs at least 2 points");
    double S = 0, Sx = 0, Sy = 0, Sxx = 0, Sxy = 0;
    for (std::size_t i = 0; i < x.size(); i++) {
        double w = 1.0 / (sigma[i] * sigma[i]);
        S += w;
        Sx += w * x[i];
        Sy += w * y[i];
        Sxx += w * x[i] * x[i];
        Sxy += w * x[i] * y[i];
    }
    double delta = S * Sxx - Sx * Sx;
    if (delta <= 0) throw std::invalid_argument("degenerate linear fit");
    LinearFit f;
    f.slope = (S * Sxy - Sx * Sy) / delta;
    f.intercept = (Sxx * Sy - Sx * Sxy) / delta;
    f.slope_err = std::sqrt(S / delta);
    f.intercept_err = std::sqrt(Sxx / delta);
    f.dof = int(x.size()) - 2;
    for (std::size_t i = 0; i < x.size(); i++) {
        double r = (y[i] - f.slope * x[i] - f.intercept) / sigma[i];
        f.chi2 += r * r;
    }
    return f;
}

std::pair<std::vector<double>, double> nelder_mead_2d(
    const std::function<double(double, double)>& f, double x0, double y0, double step_x,
    double step_y, int max_iter) {
    struct Vertex {
        double x, y, val;
    };
    std::vector<Vertex> s = {{x0, y0, f(x0, y0)},
                             {x0 + step_x, y0, f(x0 + step_x, y0)},
                             {x0, y0 + step_y, f(x0, y0 + step_y)}};
    auto by_val = [](const Vertex& a, const Vertex& b) { return a.val < b.val; };
    for (int it = 0; it < max_iter; it++) {
        std::sort(s.begin(), s.end(), by_val);
        if (std::abs(s[2].val - s[0].val) < 1e-12 * (1 + std::abs(s[0].val))) break;
        double cx = (s[0].x + s[1].x) / 2, cy = (s[0].y + s[1].y) / 2;
        double rx = cx + (cx - s[2].x), ry = cy + (cy - s[2].y);
        double rv = f(rx, ry);
        if (rv < s[0].val) {
            double ex = cx + 2 * (cx - s[2].x), ey = cy + 2 * (cy - s[2].y);
            double ev = f(ex, ey);
            s[2] = ev < rv ? Vertex{ex, ey, ev} : Vertex{rx, ry, rv};
        } else if (rv < s[1].val) {
            s[2] = {rx, ry, rv};
        } else {
            double kx = cx + 0.5 * (s[2].x - cx), ky = cy + 0.5 * (s[2].y - cy);
            double kv = f(kx, ky);
            if (kv < s[2].val) {
                s[2] = {kx, ky, kv};
            } else {
                for (int i = 1; i < 3; i++) {
                    s[i].x = s[0].x + 0.5 * (s[i].x - s[0].x);
                    s[i].y = s[0].y + 0.5 * (s[i].y - s[0].y);
                    s[i].val = f(s[i].x, s[i].y);
                }
            }
        }
    }
    std::sort(s.begin(), s.end(), by_val);
    return {{s[0].x, s[0].y}, s[0].val};
}

}  // namespace xzzx
