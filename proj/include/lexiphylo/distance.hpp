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
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lexiphylo/corpus.hpp"
#include "lexiphylo/embeddings.hpp"
#include "lexiphylo/focus.hpp"

namespace lexiphylo {

/// Per-label relative word frequencies plus pooled probabilities over the
/// whole collection. Raw counts are kept for support-floor decisions.
class FrequencyTable {
  public:
    static FrequencyTable from_corpus(const LabeledCorpus& corpus);

    const std::vector<std::string>& labels() const { return labels_; }
    std::int64_t label_total(std::uint32_t label) const { return totals_.at(label); }

    double relative(std::uint32_t label, const std::string& word) const;
    std::int64_t count(std::uint32_t label, const std::string& word) const;
    /// Probability of the word in the entire collection; 0 when unseen.
    double pooled(const std::string& word) const;

    /// TSV "label<TAB>word<TAB>rel_freq", rows sorted by label then word.
    void save_tsv(const std::string& path) const;

  private:
    std::vector<std::string> labels_;
    std::vector<std::int64_t> totals_;
    std::vector<std::map<std::string, std::int64_t>> counts_;  // per label
    std::map<std::string, std::int64_t> pooled_counts_;
    std::int64_t grand_total_ = 0;
};

/// Per-word distance between two Englishes: a weighted product of the
/// frequency gap and the embedding dissimilarity,
///
///   D = |f_i - f_j|^(1 - p_w) * (1 - cos(v_i, v_j))^p_w
///
/// with 0^x = 0 for x > 0. A missing or zero-norm vector drops the
/// embedding factor (it becomes 1). p_w must lie in (0,1) and is clamped
/// to [1e-6, 1-1e-6] against degenerate exponents.
double word_distance(double f_i, double f_j, std::optional<double> cos_ij, double p_w);

enum class DistanceMode { Combined, FrequencyOnly };

/// Exponent scheme for the two factors: the default ties the embedding
/// weight to the word's collection probability; the constant alternative
/// fixes it, for ablation comparisons.
struct WeightScheme {
    bool constant = false;
    double constant_weight = 0.5;
};

struct DistanceParams {
    DistanceMode mode = DistanceMode::Combined;
    WeightScheme weights;
};

/// Mean word_distance over the focus words; requires a non-empty focus set.
double pairwise_distance(std::uint32_t label_i, std::uint32_t label_j,
                         const FocusSet& focus, const FrequencyTable& freqs,
                         const SituatedEmbeddings* embeddings,
                         const DistanceParams& params = {});

struct DistanceMatrix {
    std::vector<std::string> labels;
    std::vector<double> values;  // row-major |L| x |L|

    double at(std::size_t i, std::size_t j) const { return values[i * labels.size() + j]; }
    double& at(std::size_t i, std::size_t j) { return values[i * labels.size() + j]; }
    std::size_t size() const { return labels.size(); }

    /// CSV with a header row and a leading label column.
    void save_csv(const std::string& path) const;
    static DistanceMatrix load_csv(const std::string& path);
};

/// Symmetric zero-diagonal matrix of pairwise distances. `embeddings` may
/// be null in frequency-only mode.
DistanceMatrix distance_matrix(const FrequencyTable& freqs, const FocusSet& focus,
                               const SituatedEmbeddings* embeddings,
                               const DistanceParams& params = {});

}  // namespace lexiphylo
