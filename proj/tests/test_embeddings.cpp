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
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <random>

#include "lexiphylo/corpus.hpp"
#include "lexiphylo/embeddings.hpp"
#include "lexiphylo/io_util.hpp"

using namespace lexiphylo;

TEST_CASE("cosine basics") {
    const std::vector<float> u{1.0f, 2.0f, 3.0f};
    const std::vector<float> v{4.0f, 5.0f, 6.0f};
    CHECK(cosine(std::span<const float>(u), std::span<const float>(u)) ==
          doctest::Approx(1.0));
    CHECK(cosine(std::span<const float>(u), std::span<const float>(v)) ==
          doctest::Approx(0.9746318462).epsilon(1e-6));

    const std::vector<float> e1{1.0f, 0.0f};
    const std::vector<float> e2{0.0f, 1.0f};
    CHECK(cosine(std::span<const float>(e1), std::span<const float>(e2)) ==
          doctest::Approx(0.0));

    const std::vector<float> zero{0.0f, 0.0f};
    CHECK_THROWS_AS(cosine(std::span<const float>(zero), std::span<const float>(e1)),
                    std::domain_error);
    CHECK_THROWS_AS(cosine(std::span<const float>(e1), std::span<const float>(u)),
                    std::invalid_argument);
}

namespace {

sgns::Params<double> frozen_params(int dim, int vocab, int labels,
                                   std::uint64_t seed) {
    sgns::Params<double> p(dim, vocab, labels);
    std::mt19937_64 rng(seed);
    for (auto& v : p.base) v = uniform01(rng) - 0.5;
    for (auto& v : p.offsets) v = 0.2 * (uniform01(rng) - 0.5);
    for (auto& v : p.context) v = uniform01(rng) - 0.5;
    return p;
}

std::vector<sgns::BatchPair> frozen_batch(int vocab, int labels, std::uint64_t seed) {
    std::vector<sgns::BatchPair> batch;
    std::mt19937_64 rng(seed);
    for (int i = 0; i < 10; ++i) {
        sgns::BatchPair pair;
        pair.input_word = static_cast<int>(rng() % vocab);
        pair.context_word = static_cast<int>(rng() % vocab);
        pair.label = static_cast<int>(rng() % labels);
        pair.positive = i % 2 == 0;
        batch.push_back(pair);
    }
    return batch;
}

}  // namespace

TEST_CASE("analytic gradients match central finite differences on a frozen batch") {
    const int dim = 7, vocab = 5, labels = 2;
    const auto p0 = frozen_params(dim, vocab, labels, 20260808);
    const auto batch = frozen_batch(vocab, labels, 1234);

    sgns::Params<double> grads(dim, vocab, labels);
    sgns::batch_gradients(p0, batch, grads);

    const double h = 1e-5;
    const auto check_block = [&](const std::vector<double>& param_block,
                                 const std::vector<double>& grad_block,
                                 std::vector<double> sgns::Params<double>::*member) {
        for (std::size_t i = 0; i < param_block.size(); ++i) {
            auto plus = p0;
            auto minus = p0;
            (plus.*member)[i] += h;
            (minus.*member)[i] -= h;
            const double fd =
                (sgns::batch_loss(plus, batch) - sgns::batch_loss(minus, batch)) /
                (2.0 * h);
            const double analytic = grad_block[i];
            const double scale = std::max({std::abs(fd), std::abs(analytic), 1e-8});
            const double rel = std::abs(fd - analytic) / scale;
            CHECK_MESSAGE(rel < 1e-4, "coordinate ", i, " fd=", fd,
                          " analytic=", analytic);
        }
    };

    check_block(p0.base, grads.base, &sgns::Params<double>::base);
    check_block(p0.offsets, grads.offsets, &sgns::Params<double>::offsets);
    check_block(p0.context, grads.context, &sgns::Params<double>::context);
}

TEST_CASE("pair_loss_coeff is consistent between loss and derivative") {
    // derivative of the loss in score matches the returned coefficient
    for (const double s : {-4.0, -1.0, -0.1, 0.0, 0.3, 2.0, 5.0}) {
        for (const bool positive : {true, false}) {
            const double h = 1e-7;
            const double up = sgns::pair_loss_coeff(s + h, positive).first;
            const double down = sgns::pair_loss_coeff(s - h, positive).first;
            const auto [loss, coeff] = sgns::pair_loss_coeff(s, positive);
            CHECK(loss >= 0.0);
            CHECK(coeff == doctest::Approx((up - down) / (2.0 * h)).epsilon(1e-5));
        }
    }
}

namespace {

LabeledCorpus two_sense_corpus() {
    // "bank" lives among river/water under l1 and money/loan under l2;
    // control words keep identical co-occurrence patterns in both labels
    LabeledCorpus corpus;
    std::mt19937_64 rng(77);
    const std::vector<std::string> ctrl{"c0", "c1", "c2", "c3", "c4", "c5"};
    for (int i = 0; i < 1500; ++i) {
        for (const auto* label : {"l1", "l2"}) {
            const bool bank_sentence = i % 2 == 0;
            std::vector<std::string> s;
            if (bank_sentence) {
                const bool first = uniform01(rng) < 0.5;
                if (std::string(label) == "l1") {
                    s = {"bank", first ? "river" : "water"};
                } else {
                    s = {"bank", first ? "money" : "loan"};
                }
            } else {
                s = {ctrl[rng() % ctrl.size()], ctrl[rng() % ctrl.size()],
                     ctrl[rng() % ctrl.size()]};
            }
            corpus.add_sentence(label, s);
        }
    }
    return corpus;
}

EmbedConfig small_config() {
    EmbedConfig cfg;
    cfg.dim = 16;
    cfg.window = 2;
    cfg.negatives = 4;
    cfg.epochs = 8;
    cfg.initial_lr = 0.05f;
    cfg.min_count = 1;
    cfg.subsample_threshold = 0.0;  // tiny corpus, keep everything
    cfg.seed = 3;
    return cfg;
}

}  // namespace

TEST_CASE("training is deterministic in single-worker mode") {
    const auto corpus = two_sense_corpus();
    const auto cfg = small_config();
    const auto a = train_situated(corpus, cfg);
    const auto b = train_situated(corpus, cfg);
    REQUIRE(a.vocab_size() == b.vocab_size());
    for (std::uint32_t w = 0; w < a.vocab_size(); ++w) {
        const auto ra = a.base_row(w);
        const auto rb = b.base_row(w);
        for (std::size_t d = 0; d < ra.size(); ++d) CHECK(ra[d] == rb[d]);
    }
    for (std::uint32_t l = 0; l < a.labels().size(); ++l) {
        for (std::uint32_t w = 0; w < a.vocab_size(); ++w) {
            const auto ra = a.offset_row(l, w);
            const auto rb = b.offset_row(l, w);
            for (std::size_t d = 0; d < ra.size(); ++d) CHECK(ra[d] == rb[d]);
        }
    }
}

TEST_CASE("mean loss drops after the first epoch") {
    const auto corpus = two_sense_corpus();
    auto cfg = small_config();
    TrainReport report;
    train_situated(corpus, cfg, &report);
    REQUIRE(report.epoch_mean_loss.size() == static_cast<std::size_t>(cfg.epochs));
    CHECK(report.epoch_mean_loss[1] < report.epoch_mean_loss[0]);
}

TEST_CASE("situated vectors separate label-dependent senses") {
    const auto corpus = two_sense_corpus();
    const auto model = train_situated(corpus, small_config());

    const auto bank_l1 = model.vector("bank", "l1");
    const auto bank_l2 = model.vector("bank", "l2");
    REQUIRE(bank_l1.has_value());
    REQUIRE(bank_l2.has_value());
    const double bank_cos = cosine(std::span<const float>(*bank_l1),
                                   std::span<const float>(*bank_l2));

    std::vector<double> control_cos;
    for (const auto* w : {"c0", "c1", "c2", "c3", "c4", "c5"}) {
        const auto v1 = model.vector(w, "l1");
        const auto v2 = model.vector(w, "l2");
        REQUIRE(v1.has_value());
        control_cos.push_back(cosine(std::span<const float>(*v1),
                                     std::span<const float>(*v2)));
    }
    std::sort(control_cos.begin(), control_cos.end());
    const double median = control_cos[control_cos.size() / 2];
    CHECK(bank_cos < median);
}

TEST_CASE("vector lookup composes base and offset; unknown keys are not found") {
    LabeledCorpus corpus;
    for (int i = 0; i < 30; ++i) {
        corpus.add_sentence("only", {"aa", "bb", "cc", "dd"});
    }
    auto cfg = small_config();
    cfg.epochs = 1;
    const auto model = train_situated(corpus, cfg);

    const auto v = model.vector("aa", "only");
    REQUIRE(v.has_value());
    const auto w = model.word_index("aa");
    const auto l = model.label_index("only");
    REQUIRE(w.has_value());
    REQUIRE(l.has_value());
    const auto base = model.base_row(*w);
    const auto off = model.offset_row(*l, *w);
    for (std::size_t d = 0; d < base.size(); ++d) {
        CHECK((*v)[d] == base[d] + off[d]);  // definitional, exact
    }
    CHECK(cosine(std::span<const float>(*v), std::span<const float>(*v)) ==
          doctest::Approx(1.0));

    CHECK_FALSE(model.vector("zz", "only").has_value());
    CHECK_FALSE(model.vector("aa", "other").has_value());
}

TEST_CASE("one situated vector per label, all retrievable") {
    LabeledCorpus corpus;
    for (int l = 0; l < 31; ++l) {
        for (int i = 0; i < 20; ++i) {
            corpus.add_sentence("L" + std::to_string(l), {"fatigue", "x", "y"});
        }
    }
    auto cfg = small_config();
    cfg.epochs = 1;
    const auto model = train_situated(corpus, cfg);
    CHECK(model.labels().size() == 31);
    for (int l = 0; l < 31; ++l) {
        CHECK(model.vector("fatigue", "L" + std::to_string(l)).has_value());
    }
}

TEST_CASE("model serialization round-trips bit-exactly") {
    const auto corpus = two_sense_corpus();
    auto cfg = small_config();
    cfg.epochs = 2;
    const auto model = train_situated(corpus, cfg);

    const auto path =
        (std::filesystem::temp_directory_path() / "lexiphylo_model_test.txt").string();
    model.save(path);
    const auto reloaded = SituatedEmbeddings::load(path);

    REQUIRE(reloaded.vocab_size() == model.vocab_size());
    REQUIRE(reloaded.labels() == model.labels());
    CHECK(reloaded.dim() == model.dim());
    for (std::uint32_t w = 0; w < model.vocab_size(); ++w) {
        const auto a = model.base_row(w);
        const auto b = reloaded.base_row(w);
        for (std::size_t d = 0; d < a.size(); ++d) CHECK(a[d] == b[d]);
        for (std::uint32_t l = 0; l < model.labels().size(); ++l) {
            const auto oa = model.offset_row(l, w);
            const auto ob = reloaded.offset_row(l, w);
            for (std::size_t d = 0; d < oa.size(); ++d) CHECK(oa[d] == ob[d]);
        }
    }
    std::remove(path.c_str());
}

TEST_CASE("parallel training mode produces a usable model") {
    // racy updates are allowed in this mode; only shape and sanity checked
    const auto corpus = two_sense_corpus();
    auto cfg = small_config();
    cfg.epochs = 2;
    cfg.threads = 2;
    TrainReport report;
    const auto model = train_situated(corpus, cfg, &report);
    CHECK(model.vocab_size() > 0);
    CHECK(model.labels().size() == 2);
    CHECK(model.vector("bank", "l1").has_value());
    CHECK(report.epoch_mean_loss.size() == 2);
    for (const double loss : report.epoch_mean_loss) CHECK(loss > 0.0);
}

TEST_CASE("training rejects degenerate inputs") {
    LabeledCorpus corpus;
    corpus.add_sentence("a", {"rare", "words"});
    EmbedConfig cfg;
    cfg.min_count = 100;  // nothing survives
    CHECK_THROWS_AS(train_situated(corpus, cfg), std::invalid_argument);

    LabeledCorpus empty;
    CHECK_THROWS_AS(train_situated(empty, EmbedConfig{}), std::invalid_argument);
}
