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
#include "lexiphylo/logodds.hpp"

#include <cmath>
#include <stdexcept>

namespace lexiphylo {

LogOddsResult log_odds_z(std::int64_t word_count_group, std::int64_t total_group,
                         std::int64_t word_count_background,
                         std::int64_t total_background, double prior_word,
                         double prior_total) {
    if (total_group <= 0 || total_background <= 0) {
        throw std::invalid_argument("log_odds_z: totals must be positive");
    }
    if (!(prior_total > prior_word) || !(prior_word > 0.0)) {
        throw std::invalid_argument("log_odds_z: need prior_total > prior_word > 0");
    }

    const double yi = static_cast<double>(word_count_group);
    const double ni = static_cast<double>(total_group);
    const double yb = static_cast<double>(word_count_background);
    const double nb = static_cast<double>(total_background);

    const double num_i = yi + prior_word;
    const double den_i = ni + prior_total - yi - prior_word;
    const double num_b = yb + prior_word;
    const double den_b = nb + prior_total - yb - prior_word;
    if (den_i <= 0.0 || den_b <= 0.0) {
        throw std::invalid_argument("log_odds_z: non-positive shrunk denominator");
    }

    LogOddsResult r;
    r.delta = std::log(num_i / den_i) - std::log(num_b / den_b);
    r.variance = 1.0 / num_i + 1.0 / num_b;
    r.z = r.delta / std::sqrt(r.variance);
    return r;
}

}  // namespace lexiphylo
