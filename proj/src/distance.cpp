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
#include "lexiphylo/distance.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>

#include "lexiphylo/io_util.hpp"
#include "lexiphylo/kernels.hpp"

namespace lexiphylo {

FrequencyTable FrequencyTable::from_corpus(const LabeledCorpus& corpus) {
    FrequencyTable ft;
    ft.labels_ = corpus.labels();
    ft.grand_total_ = corpus.total_tokens();
    ft.totals_.reserve(ft.labels_.size());
    ft.counts_.resize(ft.labels_.size());
    for (std::uint32_t l = 0; l < ft.labels_.size(); ++l) {
        ft.totals_.push_back(corpus.label_tokens(l));
        const auto& counts = corpus.folded_counts(l);
        ft.counts_[l] = {counts.begin(), counts.end()};
    }
    const auto& pooled = corpus.folded_counts();
    ft.pooled_counts_ = {pooled.begin(), pooled.end()};
    return ft;
}

double FrequencyTable::relative(std::uint32_t label, const std::string& word) const {
    const auto& m = counts_.at(label);
    const auto it = m.find(word);
    if (it == m.end()) return 0.0;
    return static_cast<double>(it->second) / static_cast<double>(totals_.at(label));
}

std::int64_t FrequencyTable::count(std::uint32_t label, const std::string& word) const {
    const auto& m = counts_.at(label);
    const auto it = m.find(word);
    return it == m.end() ? 0 : it->second;
}

double FrequencyTable::pooled(const std::string& word) const {
    const auto it = pooled_counts_.find(word);
    if (it == pooled_counts_.end()) return 0.0;
    return static_cast<double>(it->second) / static_cast<double>(grand_total_);
}

void FrequencyTable::save_tsv(const std::string& path) const {
    auto out = open_output(path);
    for (std::uint32_t l = 0; l < labels_.size(); ++l) {
        const double total = static_cast<double>(totals_[l]);
        for (const auto& [word, count] : counts_[l]) {
            out << labels_[l] << '\t' << word << '\t'
                << format_float(static_cast<double>(count) / total) << '\n';
        }
    }
}

namespace {
constexpr double kExponentFloor = 1e-6;
}

double word_distance(double f_i, double f_j, std::optional<double> cos_ij, double p_w) {
    if (!(p_w > 0.0 && p_w < 1.0)) {
        throw std::invalid_argument("word_distance: p_w must lie in (0,1)");
    }
    const double w = std::clamp(p_w, kExponentFloor, 1.0 - kExponentFloor);

    const double gap = std::abs(f_i - f_j);
    const double freq_factor = gap == 0.0 ? 0.0 : std::pow(gap, 1.0 - w);

    double embed_factor = 1.0;
    if (cos_ij.has_value()) {
        const double dissim = std::max(0.0, 1.0 - *cos_ij);
        embed_factor = dissim == 0.0 ? 0.0 : std::pow(dissim, w);
    }
    return freq_factor * embed_factor;
}

namespace {

/// Embedding dissimilarity input for one focus word and label pair, or
/// nullopt when either situated vector is unavailable or zero-norm.
std::optional<double> word_cosine(const SituatedEmbeddings& e, const std::string& word,
                                  const std::string& label_i,
                                  const std::string& label_j) {
    const auto vi = e.vector(word, label_i);
    const auto vj = e.vector(word, label_j);
    if (!vi || !vj) return std::nullopt;
    const double ni = kernels::dot(vi->data(), vi->data(), vi->size());
    const double nj = kernels::dot(vj->data(), vj->data(), vj->size());
    if (ni <= 0.0 || nj <= 0.0) return std::nullopt;
    return cosine(std::span<const float>(*vi), std::span<const float>(*vj));
}

}  // namespace

double pairwise_distance(std::uint32_t label_i, std::uint32_t label_j,
                         const FocusSet& focus, const FrequencyTable& freqs,
                         const SituatedEmbeddings* embeddings,
                         const DistanceParams& params) {
    if (focus.words.empty()) {
        throw std::invalid_argument("pairwise_distance: empty focus set");
    }
    const std::string& name_i = freqs.labels().at(label_i);
    const std::string& name_j = freqs.labels().at(label_j);

    double sum = 0.0;
    for (const auto& word : focus.words) {
        const double f_i = freqs.relative(label_i, word);
        const double f_j = freqs.relative(label_j, word);

        double p_w = freqs.pooled(word);
        if (params.weights.constant) p_w = params.weights.constant_weight;
        p_w = std::clamp(p_w, kExponentFloor, 1.0 - kExponentFloor);

        std::optional<double> cos_ij;
        if (params.mode == DistanceMode::Combined && embeddings) {
            cos_ij = word_cosine(*embeddings, word, name_i, name_j);
        }
        sum += word_distance(f_i, f_j, cos_ij, p_w);
    }
    return sum / static_cast<double>(focus.words.size());
}

DistanceMatrix distance_matrix(const FrequencyTable& freqs, const FocusSet& focus,
                               const SituatedEmbeddings* embeddings,
                               const DistanceParams& params) {
    const std::size_t n = freqs.labels().size();
    if (n < 2) throw std::invalid_argument("distance_matrix: need at least 2 labels");
    if (params.mode == DistanceMode::Combined && embeddings == nullptr) {
        throw std::invalid_argument("distance_matrix: combined mode needs embeddings");
    }

    DistanceMatrix m;
    m.labels = freqs.labels();
    m.values.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d =
                pairwise_distance(static_cast<std::uint32_t>(i),
                                  static_cast<std::uint32_t>(j), focus, freqs,
                                  embeddings, params);
            m.at(i, j) = d;
            m.at(j, i) = d;
        }
    }
    return m;
}

void DistanceMatrix::save_csv(const std::string& path) const {
    auto out = open_output(path);
    out << "label";
    for (const auto& l : labels) out << ',' << l;
    out << '\n';
    for (std::size_t i = 0; i < labels.size(); ++i) {
        out << labels[i];
        for (std::size_t j = 0; j < labels.size(); ++j) {
            out << ',' << format_float(at(i, j));
        }
        out << '\n';
    }
}

namespace {
[[noreturn]] void load_matrix_line_error(const std::string& path, std::size_t lineno,
                                         const std::string& what) {
    throw std::runtime_error(path + ":" + std::to_string(lineno) + ": " + what);
}
}  // namespace

DistanceMatrix DistanceMatrix::load_csv(const std::string& path) {
    DistanceMatrix m;
    std::size_t row = 0;
    for_each_line(path, [&](std::size_t lineno, std::string_view line) {
        if (line.empty()) return;
        const auto fields = split_view(line, ',');
        if (lineno == 1) {
            if (fields.size() < 3 || fields[0] != "label") {
                load_matrix_line_error(path, lineno, "bad header");
            }
            for (std::size_t i = 1; i < fields.size(); ++i) {
                m.labels.emplace_back(fields[i]);
            }
            m.values.assign(m.labels.size() * m.labels.size(), 0.0);
            return;
        }
        if (fields.size() != m.labels.size() + 1) {
            load_matrix_line_error(path, lineno, "row arity mismatch");
        }
        if (row >= m.labels.size()) {
            load_matrix_line_error(path, lineno, "too many rows");
        }
        if (std::string_view(m.labels[row]) != fields[0]) {
            load_matrix_line_error(path, lineno, "row label out of order");
        }
        for (std::size_t j = 0; j < m.labels.size(); ++j) {
            double v = 0.0;
            const auto f = fields[j + 1];
            const auto res = std::from_chars(f.data(), f.data() + f.size(), v);
            if (res.ec != std::errc()) {
                load_matrix_line_error(path, lineno, "bad matrix value");
            }
            m.at(row, j) = v;
        }
        ++row;
    });
    if (row != m.labels.size()) {
        throw std::runtime_error(path + ": expected " + std::to_string(m.labels.size()) +
                                 " rows, found " + std::to_string(row));
    }
    return m;
}

}  // namespace lexiphylo
