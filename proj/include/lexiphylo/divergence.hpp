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
#include <span>
#include <string>
#include <vector>

#include "lexiphylo/distance.hpp"
#include "lexiphylo/focus.hpp"

namespace lexiphylo {

/// How the members of one synset split a label's usage: member counts
/// renormalized to probabilities. support_count == 0 flags an empty
/// distribution (probs all zero rather than invented mass).
struct SynsetDistribution {
    std::vector<double> probs;  // aligned to the synset's word order
    std::int64_t support_count = 0;

    bool empty() const { return support_count == 0; }
};

SynsetDistribution synset_distribution(const SynonymSet& synset, std::uint32_t label,
                                       const FrequencyTable& freqs);

/// Jensen-Shannon divergence with base-2 logs, so the result lies in
/// [0, 1]; 0 log 0 terms contribute nothing. Arity mismatch raises
/// std::invalid_argument.
double jsd(std::span<const double> p, std::span<const double> q);

struct DivergenceRow {
    const SynonymSet* synset = nullptr;
    std::vector<double> p_i;
    std::vector<double> p_j;
    double jsd = 0.0;
    std::int64_t support_i = 0;
    std::int64_t support_j = 0;
};

struct DivergenceReport {
    std::string label_i;
    std::string label_j;
    std::vector<DivergenceRow> rows;  // jsd descending

    void save_tsv(const std::string& path) const;
    void save_json(const std::string& path) const;
};

/// Ranks focus synsets by usage divergence between two labels. Synsets
/// need at least `min_support` occurrences in both labels; ties break by
/// total support descending, then by synset key.
DivergenceReport rank_synsets(std::uint32_t label_i, std::uint32_t label_j,
                              const FocusSet& focus, const FrequencyTable& freqs,
                              std::int64_t min_support = 20);

}  // namespace lexiphylo
