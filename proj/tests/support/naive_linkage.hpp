/*
 * Copyright 2026 the lexiphylo authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

// Test-only reference implementation, kept independent of the production
// chain algorithm: O(n^3) global-minimum agglomeration straight from the
// textbook Ward recurrence.

#include <cmath>
#include <limits>
#include <vector>

#include "lexiphylo/linkage.hpp"

namespace lexiphylo::testsupport {

inline std::vector<LinkageStep> naive_ward_reference(const DistanceMatrix& m) {
    const std::size_t n = m.size();
    std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            double sq = 0.0;
            for (std::size_t k = 0; k < n; ++k) {
                const double diff = m.at(i, k) - m.at(j, k);
                sq += diff * diff;
            }
            d[i][j] = std::sqrt(sq);
        }
    }

    std::vector<int> id(n);
    std::vector<double> size(n, 1.0);
    std::vector<bool> alive(n, true);
    for (std::size_t i = 0; i < n; ++i) id[i] = static_cast<int>(i);

    std::vector<LinkageStep> steps;
    int next_id = static_cast<int>(n);
    for (std::size_t step = 0; step + 1 < n; ++step) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t bi = 0, bj = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (!alive[i]) continue;
            for (std::size_t j = i + 1; j < n; ++j) {
                if (!alive[j]) continue;
                if (d[i][j] < best) {
                    best = d[i][j];
                    bi = i;
                    bj = j;
                }
            }
        }
        LinkageStep s;
        s.a = std::min(id[bi], id[bj]);
        s.b = std::max(id[bi], id[bj]);
        s.height = best;
        s.size = static_cast<int>(size[bi] + size[bj]);
        steps.push_back(s);

        for (std::size_t k = 0; k < n; ++k) {
            if (!alive[k] || k == bi || k == bj) continue;
            const double t = size[bi] + size[bj] + size[k];
            const double v = std::sqrt(std::max(
                0.0, ((size[bi] + size[k]) * d[bi][k] * d[bi][k] +
                      (size[bj] + size[k]) * d[bj][k] * d[bj][k] -
                      size[k] * best * best) /
                         t));
            d[bi][k] = v;
            d[k][bi] = v;
        }
        size[bi] += size[bj];
        alive[bj] = false;
        id[bi] = next_id++;
    }
    return steps;
}

}  // namespace lexiphylo::testsupport
