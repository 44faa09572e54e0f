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

#include <cstdint>
#include <string>

namespace lexiphylo {

struct LogOddsResult {
    std::string word;
    std::string group;
    double delta = 0.0;     // log-odds difference
    double variance = 0.0;  // > 0
    double z = 0.0;         // delta / sqrt(variance)
};

/// Log-odds ratio with an informative Dirichlet prior: compares a word's
/// rate in one group against a background, shrunk toward prior counts.
///
///   delta = ln((y_i + a_w) / (n_i + a_0 - y_i - a_w))
///         - ln((y_bg + a_w) / (n_bg + a_0 - y_bg - a_w))
///   var   = 1/(y_i + a_w) + 1/(y_bg + a_w)
///   z     = delta / sqrt(var)
///
/// Requires totals > 0 and prior_total > prior_word > 0; throws
/// std::invalid_argument when a shrunk denominator is not positive.
LogOddsResult log_odds_z(std::int64_t word_count_group, std::int64_t total_group,
                         std::int64_t word_count_background,
                         std::int64_t total_background, double prior_word,
                         double prior_total);

}  // namespace lexiphylo
