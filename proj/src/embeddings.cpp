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
#include "lexiphylo/embeddings.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "lexiphylo/io_util.hpp"
#include "lexiphylo/kernels.hpp"

namespace lexiphylo {

SituatedEmbeddings::SituatedEmbeddings(std::vector<std::string> vocab,
                                       std::vector<std::string> labels, int dim)
    : dim_(dim), vocab_(std::move(vocab)), labels_(std::move(labels)) {
    if (dim_ < 1) throw std::invalid_argument("embedding dim must be >= 1");
    for (std::uint32_t i = 0; i < vocab_.size(); ++i) word_index_[vocab_[i]] = i;
    for (std::uint32_t i = 0; i < labels_.size(); ++i) label_index_[labels_[i]] = i;
    base_.assign(vocab_.size() * static_cast<std::size_t>(dim_), 0.0f);
    offsets_.assign(labels_.size() * vocab_.size() * static_cast<std::size_t>(dim_),
                    0.0f);
    context_.assign(vocab_.size() * static_cast<std::size_t>(dim_), 0.0f);
}

std::optional<std::uint32_t> SituatedEmbeddings::word_index(std::string_view word) const {
    const auto it = word_index_.find(lowercase(word));
    if (it == word_index_.end()) return std::nullopt;
    return it->second;
}

std::optional<std::uint32_t> SituatedEmbeddings::label_index(
    std::string_view label) const {
    const auto it = label_index_.find(std::string(label));
    if (it == label_index_.end()) return std::nullopt;
    return it->second;
}

std::span<float> SituatedEmbeddings::base_row(std::uint32_t word) {
    return {base_.data() + static_cast<std::size_t>(word) * dim_,
            static_cast<std::size_t>(dim_)};
}
std::span<const float> SituatedEmbeddings::base_row(std::uint32_t word) const {
    return {base_.data() + static_cast<std::size_t>(word) * dim_,
            static_cast<std::size_t>(dim_)};
}
std::span<float> SituatedEmbeddings::offset_row(std::uint32_t label, std::uint32_t word) {
    const std::size_t at = (static_cast<std::size_t>(label) * vocab_.size() + word) * dim_;
    return {offsets_.data() + at, static_cast<std::size_t>(dim_)};
}
std::span<const float> SituatedEmbeddings::offset_row(std::uint32_t label,
                                                      std::uint32_t word) const {
    const std::size_t at = (static_cast<std::size_t>(label) * vocab_.size() + word) * dim_;
    return {offsets_.data() + at, static_cast<std::size_t>(dim_)};
}
std::span<float> SituatedEmbeddings::context_row(std::uint32_t word) {
    return {context_.data() + static_cast<std::size_t>(word) * dim_,
            static_cast<std::size_t>(dim_)};
}
std::span<const float> SituatedEmbeddings::context_row(std::uint32_t word) const {
    return {context_.data() + static_cast<std::size_t>(word) * dim_,
            static_cast<std::size_t>(dim_)};
}

std::optional<std::vector<float>> SituatedEmbeddings::vector(
    std::string_view word, std::string_view label) const {
    const auto w = word_index(word);
    const auto l = label_index(label);
    if (!w || !l) return std::nullopt;
    const auto base = base_row(*w);
    const auto off = offset_row(*l, *w);
    std::vector<float> out(base.begin(), base.end());
    for (int d = 0; d < dim_; ++d) out[d] += off[d];
    return out;
}

void SituatedEmbeddings::save(const std::string& path) const {
    auto out = open_output(path);
    out << vocab_.size() << ' ' << dim_ << ' ' << labels_.size() << '\n';
    for (std::uint32_t w = 0; w < vocab_.size(); ++w) {
        out << vocab_[w];
        for (const float v : base_row(w)) out << ' ' << format_float(v);
        out << '\n';
    }
    for (std::uint32_t l = 0; l < labels_.size(); ++l) {
        out << "#label " << labels_[l] << '\n';
        for (std::uint32_t w = 0; w < vocab_.size(); ++w) {
            const auto row = offset_row(l, w);
            for (std::size_t d = 0; d < row.size(); ++d) {
                if (d) out << ' ';
                out << format_float(row[d]);
            }
            out << '\n';
        }
    }
}

namespace {

float parse_float_token(std::string_view tok, const std::string& path) {
    float v = 0.0f;
    const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (res.ec != std::errc()) {
        throw std::runtime_error(path + ": bad float '" + std::string(tok) + "'");
    }
    return v;
}

}  // namespace

SituatedEmbeddings SituatedEmbeddings::load(const std::string& path) {
    auto in = open_input(path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error(path + ": empty model file");
    std::istringstream header(line);
    std::size_t vocab_n = 0, label_n = 0;
    int dim = 0;
    if (!(header >> vocab_n >> dim >> label_n)) {
        throw std::runtime_error(path + ": bad model header");
    }

    std::vector<std::string> vocab(vocab_n);
    std::vector<std::vector<float>> base_rows(vocab_n);
    for (std::size_t w = 0; w < vocab_n; ++w) {
        if (!std::getline(in, line)) throw std::runtime_error(path + ": truncated base");
        const auto fields = split_view(line, ' ');
        if (fields.size() != static_cast<std::size_t>(dim) + 1) {
            throw std::runtime_error(path + ": base row arity mismatch");
        }
        vocab[w] = std::string(fields[0]);
        base_rows[w].reserve(dim);
        for (int d = 0; d < dim; ++d) {
            base_rows[w].push_back(parse_float_token(fields[d + 1], path));
        }
    }

    std::vector<std::string> labels;
    std::vector<std::vector<float>> offset_blocks;
    for (std::size_t l = 0; l < label_n; ++l) {
        if (!std::getline(in, line) || !line.starts_with("#label ")) {
            throw std::runtime_error(path + ": expected '#label' block header");
        }
        labels.push_back(line.substr(7));
        std::vector<float> block;
        block.reserve(vocab_n * static_cast<std::size_t>(dim));
        for (std::size_t w = 0; w < vocab_n; ++w) {
            if (!std::getline(in, line)) {
                throw std::runtime_error(path + ": truncated offset block");
            }
            const auto fields = split_view(line, ' ');
            if (fields.size() != static_cast<std::size_t>(dim)) {
                throw std::runtime_error(path + ": offset row arity mismatch");
            }
            for (int d = 0; d < dim; ++d) {
                block.push_back(parse_float_token(fields[d], path));
            }
        }
        offset_blocks.push_back(std::move(block));
    }

    SituatedEmbeddings e(std::move(vocab), std::move(labels), dim);
    for (std::size_t w = 0; w < vocab_n; ++w) {
        std::copy(base_rows[w].begin(), base_rows[w].end(),
                  e.base_row(static_cast<std::uint32_t>(w)).begin());
    }
    for (std::size_t l = 0; l < label_n; ++l) {
        const float* src = offset_blocks[l].data();
        for (std::size_t w = 0; w < vocab_n; ++w) {
            std::copy(src, src + dim,
                      e.offset_row(static_cast<std::uint32_t>(l),
                                   static_cast<std::uint32_t>(w))
                          .begin());
            src += dim;
        }
    }
    return e;
}

double cosine(std::span<const float> u, std::span<const float> v) {
    if (u.size() != v.size()) throw std::invalid_argument("cosine: arity mismatch");
    const double uu = kernels::dot(u.data(), u.data(), u.size());
    const double vv = kernels::dot(v.data(), v.data(), v.size());
    if (uu <= 0.0 || vv <= 0.0) throw std::domain_error("cosine: zero-norm input");
    const double uv = kernels::dot(u.data(), v.data(), u.size());
    return uv / std::sqrt(uu * vv);
}

double cosine(std::span<const double> u, std::span<const double> v) {
    if (u.size() != v.size()) throw std::invalid_argument("cosine: arity mismatch");
    const double uu = kernels::dot(u.data(), u.data(), u.size());
    const double vv = kernels::dot(v.data(), v.data(), v.size());
    if (uu <= 0.0 || vv <= 0.0) throw std::domain_error("cosine: zero-norm input");
    const double uv = kernels::dot(u.data(), v.data(), u.size());
    return uv / std::sqrt(uu * vv);
}

namespace {

struct TrainingData {
    std::vector<std::string> vocab;              // index -> folded word
    std::unordered_map<std::string, std::uint32_t> vocab_index;
    std::vector<std::int64_t> counts;            // per vocab word
    std::int64_t total_tokens = 0;
    // sentences after balancing, tokens remapped to vocab ids (oov dropped)
    std::vector<std::pair<std::uint32_t, std::vector<std::uint32_t>>> sentences;
    std::vector<std::uint32_t> negative_table;
};

constexpr std::size_t kNegativeTableSize = 1u << 22;

TrainingData prepare_training(const LabeledCorpus& corpus, const EmbedConfig& cfg) {
    const std::size_t n_labels = corpus.labels().size();
    if (n_labels == 0) throw std::invalid_argument("train_situated: empty corpus");

    std::int64_t min_sentences = -1;
    for (std::uint32_t l = 0; l < n_labels; ++l) {
        const std::int64_t n = corpus.label_sentences(l);
        if (n == 0) {
            throw std::invalid_argument("train_situated: label without sentences: " +
                                        corpus.labels()[l]);
        }
        min_sentences = min_sentences < 0 ? n : std::min(min_sentences, n);
    }

    // balance: an equal-sized random sample of sentences from each label
    std::vector<std::vector<std::size_t>> per_label_indices(n_labels);
    for (std::size_t i = 0; i < corpus.sentences().size(); ++i) {
        per_label_indices[corpus.sentences()[i].label].push_back(i);
    }
    std::vector<std::size_t> selected;
    for (std::uint32_t l = 0; l < n_labels; ++l) {
        auto& idx = per_label_indices[l];
        std::mt19937_64 rng(mix_seed(cfg.seed, 0xBA7A0000u + l));
        shuffle_portable(idx, rng);
        idx.resize(static_cast<std::size_t>(min_sentences));
        selected.insert(selected.end(), idx.begin(), idx.end());
    }
    std::sort(selected.begin(), selected.end());  // stable corpus order

    // folded counts over the selected sample
    std::unordered_map<std::string, std::int64_t> folded;
    for (const std::size_t si : selected) {
        const auto& s = corpus.sentences()[si];
        for (const std::uint32_t id : s.tokens) {
            ++folded[lowercase(corpus.vocab().str(id))];
        }
    }

    TrainingData data;
    std::vector<std::pair<std::string, std::int64_t>> order(folded.begin(), folded.end());
    std::erase_if(order, [&](const auto& kv) { return kv.second < cfg.min_count; });
    if (order.empty()) {
        throw std::invalid_argument("train_situated: vocabulary empty after min_count");
    }
    std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
        return a.second != b.second ? a.second > b.second : a.first < b.first;
    });
    data.vocab.reserve(order.size());
    data.counts.reserve(order.size());
    for (auto& [word, count] : order) {
        data.vocab_index.emplace(word, static_cast<std::uint32_t>(data.vocab.size()));
        data.vocab.push_back(word);
        data.counts.push_back(count);
        data.total_tokens += count;
    }

    data.sentences.reserve(selected.size());
    for (const std::size_t si : selected) {
        const auto& s = corpus.sentences()[si];
        std::vector<std::uint32_t> ids;
        ids.reserve(s.tokens.size());
        for (const std::uint32_t id : s.tokens) {
            const auto it = data.vocab_index.find(lowercase(corpus.vocab().str(id)));
            if (it != data.vocab_index.end()) ids.push_back(it->second);
        }
        if (!ids.empty()) data.sentences.emplace_back(s.label, std::move(ids));
    }

    // unigram^0.75 sampling table
    double pow_sum = 0.0;
    for (const auto c : data.counts) pow_sum += std::pow(static_cast<double>(c), 0.75);
    data.negative_table.resize(kNegativeTableSize);
    std::size_t word = 0;
    double cumulative = std::pow(static_cast<double>(data.counts[0]), 0.75) / pow_sum;
    for (std::size_t i = 0; i < kNegativeTableSize; ++i) {
        data.negative_table[i] = static_cast<std::uint32_t>(word);
        if (static_cast<double>(i + 1) / kNegativeTableSize > cumulative &&
            word + 1 < data.vocab.size()) {
            ++word;
            cumulative += std::pow(static_cast<double>(data.counts[word]), 0.75) / pow_sum;
        }
    }
    return data;
}

struct EpochShard {
    std::size_t begin = 0;
    std::size_t end = 0;
};

}  // namespace

SituatedEmbeddings train_situated(const LabeledCorpus& corpus, const EmbedConfig& cfg,
                                  TrainReport* report) {
    if (cfg.dim < 1 || cfg.window < 1 || cfg.negatives < 1 || cfg.epochs < 1) {
        throw std::invalid_argument("train_situated: bad configuration");
    }
    TrainingData data = prepare_training(corpus, cfg);

    SituatedEmbeddings model(data.vocab, corpus.labels(), cfg.dim);
    {
        std::mt19937_64 rng(mix_seed(cfg.seed, 0xBA5EBA5Eu));
        for (std::uint32_t w = 0; w < model.vocab_size(); ++w) {
            for (float& v : model.base_row(w)) {
                v = static_cast<float>((uniform01(rng) - 0.5) / cfg.dim);
            }
        }
        // offsets and context start at zero
    }

    const int dim = cfg.dim;
    const double total_words =
        static_cast<double>(data.total_tokens) * cfg.epochs + 1.0;
    std::atomic<std::int64_t> words_done{0};
    std::vector<double> epoch_losses(cfg.epochs, 0.0);
    std::vector<std::int64_t> epoch_terms(cfg.epochs, 0);

    const int n_threads = std::max(1, cfg.threads);

    auto run_shard = [&](int epoch, int thread_id, EpochShard shard, double& loss_sum,
                         std::int64_t& loss_terms) {
        std::mt19937_64 rng(
            mix_seed(cfg.seed, 0xEC0C0000u + static_cast<std::uint64_t>(epoch) * 131 +
                                   static_cast<std::uint64_t>(thread_id)));
        std::vector<float> input(dim);
        std::vector<float> grad_in(dim);
        std::vector<std::uint32_t> kept;
        std::int64_t local_words = 0;
        float lr = cfg.initial_lr *
                   std::max(1e-4f, static_cast<float>(
                                       1.0 - static_cast<double>(words_done.load(
                                                 std::memory_order_relaxed)) /
                                                 total_words));

        for (std::size_t si = shard.begin; si < shard.end; ++si) {
            const auto& [label, tokens] = data.sentences[si];

            // frequency subsampling, standard discard rule
            kept.clear();
            for (const std::uint32_t w : tokens) {
                const double f = static_cast<double>(data.counts[w]) /
                                 static_cast<double>(data.total_tokens);
                if (cfg.subsample_threshold > 0.0 && f > cfg.subsample_threshold) {
                    const double keep =
                        (std::sqrt(f / cfg.subsample_threshold) + 1.0) *
                        cfg.subsample_threshold / f;
                    if (uniform01(rng) > keep) continue;
                }
                kept.push_back(w);
            }
            local_words += static_cast<std::int64_t>(tokens.size());
            if (local_words >= 10000) {
                words_done.fetch_add(local_words, std::memory_order_relaxed);
                local_words = 0;
                const double progress =
                    static_cast<double>(words_done.load(std::memory_order_relaxed)) /
                    total_words;
                lr = cfg.initial_lr *
                     std::max(1e-4f, static_cast<float>(1.0 - progress));
            }
            if (kept.size() < 2) continue;

            for (std::size_t ci = 0; ci < kept.size(); ++ci) {
                const std::uint32_t center = kept[ci];
                const std::size_t reach = 1 + rng() % static_cast<std::size_t>(cfg.window);
                const std::size_t lo = ci > reach ? ci - reach : 0;
                const std::size_t hi = std::min(kept.size() - 1, ci + reach);

                const auto base = model.base_row(center);
                const auto off = model.offset_row(label, center);

                for (std::size_t oi = lo; oi <= hi; ++oi) {
                    if (oi == ci) continue;
                    const std::uint32_t positive = kept[oi];

                    for (int d = 0; d < dim; ++d) input[d] = base[d] + off[d];
                    std::fill(grad_in.begin(), grad_in.end(), 0.0f);

                    for (int k = 0; k <= cfg.negatives; ++k) {
                        std::uint32_t target;
                        bool is_positive;
                        if (k == 0) {
                            target = positive;
                            is_positive = true;
                        } else {
                            target = data.negative_table[rng() % kNegativeTableSize];
                            if (target == positive) continue;
                            is_positive = false;
                        }
                        const auto ctx = model.context_row(target);
                        const float score =
                            kernels::dot(input.data(), ctx.data(), input.size());
                        const auto [loss, coeff] =
                            sgns::pair_loss_coeff(score, is_positive);
                        loss_sum += loss;
                        ++loss_terms;
                        // read context before updating it
                        kernels::axpy(coeff, ctx.data(), grad_in.data(), grad_in.size());
                        kernels::axpy(-lr * coeff, input.data(), ctx.data(), ctx.size());
                    }
                    kernels::axpy(-lr, grad_in.data(), base.data(), base.size());
                    kernels::axpy(-lr, grad_in.data(), off.data(), off.size());
                }
            }
        }
        words_done.fetch_add(local_words, std::memory_order_relaxed);
    };

    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        if (n_threads == 1) {
            run_shard(epoch, 0, {0, data.sentences.size()}, epoch_losses[epoch],
                      epoch_terms[epoch]);
        } else {
            std::vector<std::thread> workers;
            std::vector<double> sums(n_threads, 0.0);
            std::vector<std::int64_t> terms(n_threads, 0);
            const std::size_t chunk =
                (data.sentences.size() + n_threads - 1) / n_threads;
            for (int t = 0; t < n_threads; ++t) {
                const std::size_t begin = std::min(data.sentences.size(), t * chunk);
                const std::size_t end =
                    std::min(data.sentences.size(), begin + chunk);
                workers.emplace_back(run_shard, epoch, t, EpochShard{begin, end},
                                     std::ref(sums[t]), std::ref(terms[t]));
            }
            for (auto& w : workers) w.join();
            for (int t = 0; t < n_threads; ++t) {
                epoch_losses[epoch] += sums[t];
                epoch_terms[epoch] += terms[t];
            }
        }
    }

    if (report) {
        report->epoch_mean_loss.clear();
        for (int e = 0; e < cfg.epochs; ++e) {
            report->epoch_mean_loss.push_back(
                epoch_terms[e] > 0 ? epoch_losses[e] / static_cast<double>(epoch_terms[e])
                                   : 0.0);
        }
        report->trained_tokens = data.total_tokens;
        report->vocab_size = data.vocab.size();
    }
    return model;
}

}  // namespace lexiphylo
