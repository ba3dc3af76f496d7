// Copyright 2026 The qedge Authors
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numeric>
#include <vector>

namespace qedge::detail {

struct SimplexResult {
    std::vector<double> x;
    double value = 0.0;
    std::size_t evaluations = 0;
};

// Nelder-Mead with the standard coefficients (reflect 1, expand 2,
// contract 1/2, shrink 1/2). Stops when every vertex lies within xtol of the
// best one (infinity norm) or after max_evals objective calls.
inline SimplexResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                                 std::vector<double> start, double step, double xtol, std::size_t max_evals) {
    const std::size_t dim = start.size();
    std::vector<std::vector<double>> pts(dim + 1, start);
    std::vector<double> vals(dim + 1);
    std::size_t evals = 0;
    auto eval = [&](const std::vector<double>& p) {
        ++evals;
        return f(p);
    };
    for (std::size_t i = 0; i < dim; ++i) pts[i + 1][i] += step;
    for (std::size_t i = 0; i <= dim; ++i) vals[i] = eval(pts[i]);

    std::vector<std::size_t> order(dim + 1);
    std::vector<double> centroid(dim), trial(dim), trial2(dim);
    auto blend = [&](std::vector<double>& out, const std::vector<double>& from, double t) {
        // out = centroid + t * (from - centroid)
        for (std::size_t k = 0; k < dim; ++k) out[k] = centroid[k] + t * (from[k] - centroid[k]);
    };

    while (evals < max_evals) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
        const std::size_t best = order.front();
        const std::size_t worst = order.back();
        const std::size_t second_worst = order[dim > 0 ? dim - 1 : 0];

        double spread = 0.0;
        for (std::size_t i = 0; i <= dim; ++i) {
            for (std::size_t k = 0; k < dim; ++k) spread = std::max(spread, std::abs(pts[i][k] - pts[best][k]));
        }
        if (spread < xtol || dim == 0) break;

        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t i = 0; i <= dim; ++i) {
            if (i == worst) continue;
            for (std::size_t k = 0; k < dim; ++k) centroid[k] += pts[i][k] / static_cast<double>(dim);
        }

        blend(trial, pts[worst], -1.0);
        const double fr = eval(trial);
        if (fr < vals[best]) {
            blend(trial2, pts[worst], -2.0);
            const double fe = eval(trial2);
            if (fe < fr) {
                pts[worst] = trial2;
                vals[worst] = fe;
            } else {
                pts[worst] = trial;
                vals[worst] = fr;
            }
            continue;
        }
        if (fr < vals[second_worst]) {
            pts[worst] = trial;
            vals[worst] = fr;
            continue;
        }
        const bool outside = fr < vals[worst];
        blend(trial2, outside ? trial : pts[worst], 0.5);
        const double fc = eval(trial2);
        if (fc < (outside ? fr : vals[worst])) {
            pts[worst] = trial2;
            vals[worst] = fc;
            continue;
        }
        for (std::size_t i = 0; i <= dim; ++i) {
            if (i == best) continue;
            for (std::size_t k = 0; k < dim; ++k) pts[i][k] = pts[best][k] + 0.5 * (pts[i][k] - pts[best][k]);
            vals[i] = eval(pts[i]);
        }
    }

    const auto best = static_cast<std::size_t>(std::min_element(vals.begin(), vals.end()) - vals.begin());
    return {pts[best], vals[best], evals};
}

}  // namespace qedge::detail
