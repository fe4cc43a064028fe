// Copyright 2026 The hvkit Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file
 * Integration helpers for piecewise-constant response functions.
 *
 * A deterministic response, viewed along one coordinate of the hidden-state
 * space, is a step function with finitely many jumps. The lengths of its
 * level sets are recovered by scanning a grid and bisecting every cell whose
 * endpoints disagree, so the only error is the final bracket width.
 */

#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace hvkit::quadrature {

struct LevelLengths {
    std::vector<double> lengths;
    /// Upper bound on the total misassigned length.
    double error_bound = 0.0;
};

namespace detail {
template <class Label>
void refine(Label &label, double lo, double hi, std::size_t llo,
            std::size_t lhi, double tol, LevelLengths &acc) {
    if (llo == lhi) {
        acc.lengths[llo] += hi - lo;
        return;
    }
    const double mid = 0.5 * (lo + hi);
    if (hi - lo <= tol || mid <= lo || mid >= hi) {
        acc.lengths[llo] += mid - lo;
        acc.lengths[lhi] += hi - mid;
        acc.error_bound += hi - lo;
        return;
    }
    const std::size_t lm = label(mid);
    refine(label, lo, mid, llo, lm, tol, acc);
    refine(label, mid, hi, lm, lhi, tol, acc);
}
} // namespace detail

/**
 * Measure of {x in [a, b] : label(x) = j} for j < n_labels.
 *
 * `label` maps a coordinate to an outcome index. Level sets narrower than
 * the grid spacing that sit between two grid points with equal labels are
 * invisible to the scan.
 */
template <class Label>
LevelLengths level_lengths(Label &&label, std::size_t n_labels, double a,
                           double b, std::size_t grid, double tol) {
    LevelLengths acc{std::vector<double>(n_labels, 0.0), 0.0};
    const double h = (b - a) / static_cast<double>(grid);
    double lo = a;
    std::size_t llo = label(a);
    for (std::size_t i = 1; i <= grid; ++i) {
        const double hi = (i == grid) ? b : a + h * static_cast<double>(i);
        const std::size_t lhi = label(hi);
        detail::refine(label, lo, hi, llo, lhi, tol, acc);
        lo = hi;
        llo = lhi;
    }
    return acc;
}

} // namespace hvkit::quadrature
