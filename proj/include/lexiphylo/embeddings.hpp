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

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lexiphylo/corpus.hpp"

namespace lexiphylo {

struct EmbedConfig {
    int dim = 100;
    int window = 5;
    int negatives = 5;
    int epochs = 5;
    float initial_lr = 0.025f;
    int min_count = 10;
    double subsample_threshold = 1e-4;
    std::uint64_t seed = 1;
    /// >1 enables hogwild-style parallel updates; keep 1 for reproducible runs.
    int threads = 1;
};

/// Word representations with a shared base vector per word plus one
/// additive offset per (label, word): vector(w, l) = base[w] + offset[l][w].
class SituatedEmbeddings {
  public:
    SituatedEmbeddings() = default;
    SituatedEmbeddings(std::vector<std::string> vocab, std::vector<std::string> labels,
                       int dim);

    int dim() const { return dim_; }
    std::size_t vocab_size() const { return vocab_.size(); }
    const std::vector<std::string>& vocab_words() const { return vocab_; }
    const std::vector<std::string>& labels() const { return labels_; }

    std::optional<std::uint32_t> word_index(std::string_view word) const;
    std::optional<std::uint32_t> label_index(std::string_view label) const;

    std::span<float> base_row(std::uint32_t word);
    std::span<const float> base_row(std::uint32_t word) const;
    std::span<float> offset_row(std::uint32_t label, std::uint32_t word);
    std::span<const float> offset_row(std::uint32_t label, std::uint32_t word) const;
    std::span<float> context_row(std::uint32_t word);
    std::span<const float> context_row(std::uint32_t word) const;

    /// base[word] + offset[label][word]; empty when the word or label is
    /// unknown, never a silent zero vector. Lookups fold case.
    std::optional<std::vector<float>> vector(std::string_view word,
                                             std::string_view label) const;

    /// Text model file: "V dim L" header, base rows "word v1 .. vdim", then
    /// per label a "#label <name>" block with offset rows in vocab order.
    /// Floats use shortest round-trip formatting, so save/load is bit-exact.
    void save(const std::string& path) const;
    static SituatedEmbeddings load(const std::string& path);

  private:
    int dim_ = 0;
    std::vector<std::string> vocab_;
    std::vector<std::string> labels_;
    std::unordered_map<std::string, std::uint32_t> word_index_;
    std::unordered_map<std::string, std::uint32_t> label_index_;
    std::vector<float> base_;     // vocab x dim
    std::vector<float> offsets_;  // labels x vocab x dim
    std::vector<float> context_;  // vocab x dim
};

/// cos(u, v); throws std::domain_error on a zero-norm input.
double cosine(std::span<const float> u, std::span<const float> v);
double cosine(std::span<const double> u, std::span<const double> v);

namespace sgns {

/// Loss and dLoss/dscore of one negative-sampling term:
///   positive:  -log sigmoid(s)   with gradient sigmoid(s) - 1
///   negative:  -log sigmoid(-s)  with gradient sigmoid(s)
template <typename Real>
inline std::pair<Real, Real> pair_loss_coeff(Real score, bool positive) {
    const Real s = positive ? score : -score;
    // softplus(-s) computed stably
    const Real loss = s > Real(0) ? std::log1p(std::exp(-s))
                                  : -s + std::log1p(std::exp(s));
    const Real sig = Real(1) / (Real(1) + std::exp(-score));
    const Real coeff = sig - (positive ? Real(1) : Real(0));
    return {loss, coeff};
}

/// One (input, context) interaction of a frozen batch; input is composed as
/// base[input_word] + offsets[label][input_word].
struct BatchPair {
    int input_word = 0;
    int label = 0;
    int context_word = 0;
    bool positive = true;
};

template <typename Real>
struct Params {
    int dim = 0;
    int vocab = 0;
    int labels = 0;
    std::vector<Real> base;     // vocab x dim
    std::vector<Real> offsets;  // labels x vocab x dim
    std::vector<Real> context;  // vocab x dim

    Params() = default;
    Params(int d, int v, int l)
        : dim(d), vocab(v), labels(l), base(static_cast<std::size_t>(v) * d, Real(0)),
          offsets(static_cast<std::size_t>(l) * v * d, Real(0)),
          context(static_cast<std::size_t>(v) * d, Real(0)) {}

    std::size_t base_at(int w) const { return static_cast<std::size_t>(w) * dim; }
    std::size_t offset_at(int l, int w) const {
        return (static_cast<std::size_t>(l) * vocab + w) * dim;
    }
};

/// Batch objective; the analytic-gradient counterpart below mirrors the
/// trainer's update path exactly.
template <typename Real>
Real batch_loss(const Params<Real>& p, const std::vector<BatchPair>& batch) {
    Real total = Real(0);
    std::vector<Real> input(p.dim);
    for (const auto& pair : batch) {
        const Real* base = p.base.data() + p.base_at(pair.input_word);
        const Real* off = p.offsets.data() + p.offset_at(pair.label, pair.input_word);
        for (int d = 0; d < p.dim; ++d) input[d] = base[d] + off[d];
        const Real* ctx = p.context.data() + p.base_at(pair.context_word);
        Real score = Real(0);
        for (int d = 0; d < p.dim; ++d) score += input[d] * ctx[d];
        total += pair_loss_coeff(score, pair.positive).first;
    }
    return total;
}

/// Accumulates dLoss/dparam into `grads` (same shapes, zero-initialized by
/// the caller); returns the batch loss. The base and offset rows of the
/// input word receive identical gradients since the input is their sum.
template <typename Real>
Real batch_gradients(const Params<Real>& p, const std::vector<BatchPair>& batch,
                     Params<Real>& grads) {
    Real total = Real(0);
    std::vector<Real> input(p.dim);
    for (const auto& pair : batch) {
        const Real* base = p.base.data() + p.base_at(pair.input_word);
        const Real* off = p.offsets.data() + p.offset_at(pair.label, pair.input_word);
        for (int d = 0; d < p.dim; ++d) input[d] = base[d] + off[d];
        const Real* ctx = p.context.data() + p.base_at(pair.context_word);
        Real score = Real(0);
        for (int d = 0; d < p.dim; ++d) score += input[d] * ctx[d];
        const auto [loss, coeff] = pair_loss_coeff(score, pair.positive);
        total += loss;

        Real* g_base = grads.base.data() + grads.base_at(pair.input_word);
        Real* g_off = grads.offsets.data() + grads.offset_at(pair.label, pair.input_word);
        Real* g_ctx = grads.context.data() + grads.base_at(pair.context_word);
        for (int d = 0; d < p.dim; ++d) {
            g_base[d] += coeff * ctx[d];
            g_off[d] += coeff * ctx[d];
            g_ctx[d] += coeff * input[d];
        }
    }
    return total;
}

}  // namespace sgns

struct TrainReport {
    /// Mean negative-sampling loss per epoch, in epoch order.
    std::vector<double> epoch_mean_loss;
    std::int64_t trained_tokens = 0;
    std::size_t vocab_size = 0;
};

/// Skip-gram with negative sampling where the input representation of a
/// token in a sentence labeled l is base + offsets[l]; gradients update the
/// base row, the active offset row, and the context row. Labels are first
/// subsampled to equal sentence counts. Deterministic for threads == 1.
SituatedEmbeddings train_situated(const LabeledCorpus& corpus, const EmbedConfig& cfg,
                                  TrainReport* report = nullptr);

}  // namespace lexiphylo
