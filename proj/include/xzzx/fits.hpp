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

#ifndef XZZX_FITS_H
#define XZZX_FITS_H

#include <functional>
#include <vector>

namespace xzzx {

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_err = 0.0;
    double intercept_err = 0.0;
    double chi2 = 0.0;
    int dof = 0;
};

/// Weighted least squares y = slope*x + intercept with per-point sigmas.
LinearFit weighted_linear_fit(const std::vector<double>& x, const std::vector<double>& y,
                              const std::vector<double>& sigma);

/// Nelder-Mead simplex minimization in 2 dimensions.
std::pair<std::vector<double>, double> nelder_mead_2d(
    const std::function<double(double, double)>& f, double x0, double y0, double step_x,
    double step_y, int max_iter = 500);

}  // namespace xzzx

#endif
