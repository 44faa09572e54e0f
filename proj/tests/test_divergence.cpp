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

#include "lexiphylo/divergence.hpp"
#include "lexiphylo/io_util.hpp"

using namespace lexiphylo;

TEST_CASE("jsd trivial and frozen values") {
    const std::vector<double> p{1.0, 0.0};
    const std::vector<double> q{0.0, 1.0};
    const std::vector<double> u{0.5, 0.5};

    CHECK(jsd(p, p) == doctest::Approx(0.0));
    CHECK(jsd(p, q) == doctest::Approx(1.0).epsilon(1e-12));
    // 0.5*log2(4/3) + 0.5*(0.5*log2(2/3) + 0.5*log2(2)) = 0.311278124459133
    CHECK(jsd(p, u) == doctest::Approx(0.311278124459133).epsilon(1e-12));

    const std::vector<double> tri{0.2, 0.5, 0.3};
    CHECK_THROWS_AS(jsd(p, tri), std::invalid_argument);
}

TEST_CASE("jsd symmetry and bounds on random distribution pairs") {
    std::mt19937_64 rng(8);
    for (int i = 0; i < 1000; ++i) {
        const std::size_t arity = 2 + rng() % 4;
        std::vector<double> p(arity), q(arity);
        double sp = 0.0, sq = 0.0;
        for (std::size_t k = 0; k < arity; ++k) {
            p[k] = uniform01(rng) + 1e-12;
            q[k] = uniform01(rng) + 1e-12;
            sp += p[k];
            sq += q[k];
        }
        for (std::size_t k = 0; k < arity; ++k) {
            p[k] /= sp;
            q[k] /= sq;
        }
        const double d = jsd(p, q);
        CHECK(d >= 0.0);
        CHECK(d <= 1.0 + 1e-12);
        CHECK(jsd(q, p) == doctest::Approx(d).epsilon(1e-12));
        CHECK(jsd(p, p) == doctest::Approx(0.0));
        if (d == 0.0) {
            for (std::size_t k = 0; k < arity; ++k) {
                CHECK(p[k] == doctest::Approx(q[k]));
            }
        }
    }
}

namespace {

/// Corpus where each focus word appears exactly `count` times per label.
LabeledCorpus counted_corpus(
    const std::vector<std::pair<std::string,
                                std::vector<std::pair<std::string, int>>>>& spec) {
    LabeledCorpus corpus;
    for (const auto& [label, counts] : spec) {
        std::vector<std::string> sentence;
        for (const auto& [word, count] : counts) {
            for (int i = 0; i < count; ++i) {
                sentence.push_back(word);
                if (sentence.size() == 25) {
                    corpus.add_sentence(label, sentence);
                    sentence.clear();
                }
            }
        }
        if (!sentence.empty()) corpus.add_sentence(label, sentence);
    }
    return corpus;
}

FocusSet focus_of(const std::vector<std::vector<std::string>>& synsets) {
    FocusSet fs;
    for (const auto& words : synsets) {
        SynonymSet s;
        s.pos = Pos::Noun;
        s.words = words;
        for (const auto& w : words) s.roots[w] = {"r:" + w};
        fs.synsets.push_back(std::move(s));
    }
    fs.rebuild_word_index();
    return fs;
}

}  // namespace

TEST_CASE("synset_distribution renormalizes member counts") {
    const auto corpus = counted_corpus({
        {"de", {{"hinder", 909}, {"impede", 91}, {"pad", 500}}},
        {"es", {{"hinder", 690}, {"impede", 310}, {"pad", 500}}},
    });
    const auto ft = FrequencyTable::from_corpus(corpus);
    const auto fs = focus_of({{"hinder", "impede"}});

    const auto de = synset_distribution(fs.synsets[0], 0, ft);
    CHECK(de.support_count == 1000);
    CHECK(de.probs[0] == doctest::Approx(0.909));
    CHECK(de.probs[1] == doctest::Approx(0.091));

    const auto es = synset_distribution(fs.synsets[0], 1, ft);
    CHECK(es.probs[0] == doctest::Approx(0.69));
    CHECK(es.probs[1] == doctest::Approx(0.31));

    // equal counts, equal probabilities
    const auto even = counted_corpus({{"x", {{"hinder", 5}, {"impede", 5}}}});
    const auto ft2 = FrequencyTable::from_corpus(even);
    const auto d = synset_distribution(fs.synsets[0], 0, ft2);
    CHECK(d.probs[0] == doctest::Approx(0.5));
    CHECK(d.probs[1] == doctest::Approx(0.5));
}

TEST_CASE("synset_distribution flags empty support instead of throwing") {
    const auto corpus = counted_corpus({{"de", {{"pad", 10}}}});
    const auto ft = FrequencyTable::from_corpus(corpus);
    const auto fs = focus_of({{"hinder", "impede"}});
    const auto d = synset_distribution(fs.synsets[0], 0, ft);
    CHECK(d.empty());
    CHECK(d.support_count == 0);
}

TEST_CASE("synset_distribution is invariant to scaling all counts") {
    const auto small = counted_corpus({{"x", {{"a", 3}, {"b", 7}}}});
    const auto big = counted_corpus({{"x", {{"a", 300}, {"b", 700}}}});
    const auto fs = focus_of({{"a", "b"}});
    const auto ds = synset_distribution(fs.synsets[0], 0,
                                        FrequencyTable::from_corpus(small));
    const auto db = synset_distribution(fs.synsets[0], 0,
                                        FrequencyTable::from_corpus(big));
    for (std::size_t i = 0; i < ds.probs.size(); ++i) {
        CHECK(ds.probs[i] == doctest::Approx(db.probs[i]));
    }
}

TEST_CASE("identical texts give all-zero divergences") {
    const auto corpus = counted_corpus({
        {"p", {{"a", 50}, {"b", 70}, {"c", 30}, {"d", 90}}},
        {"q", {{"a", 50}, {"b", 70}, {"c", 30}, {"d", 90}}},
    });
    const auto ft = FrequencyTable::from_corpus(corpus);
    const auto fs = focus_of({{"a", "b"}, {"c", "d"}});
    const auto report = rank_synsets(0, 1, fs, ft, 20);
    REQUIRE(report.rows.size() == 2);
    for (const auto& row : report.rows) CHECK(row.jsd == doctest::Approx(0.0));
}

TEST_CASE("a planted divergent synset ranks first") {
    const auto corpus = counted_corpus({
        {"p", {{"a", 95}, {"b", 5}, {"c", 50}, {"d", 50}, {"e", 48}, {"f", 52}}},
        {"q", {{"a", 10}, {"b", 90}, {"c", 52}, {"d", 48}, {"e", 50}, {"f", 50}}},
    });
    const auto ft = FrequencyTable::from_corpus(corpus);
    const auto fs = focus_of({{"c", "d"}, {"a", "b"}, {"e", "f"}});
    const auto report = rank_synsets(0, 1, fs, ft, 20);
    REQUIRE(report.rows.size() == 3);
    CHECK(report.rows[0].synset->words == std::vector<std::string>{"a", "b"});
    CHECK(report.rows[0].jsd > report.rows[1].jsd);
}

TEST_CASE("support floor excludes thin synsets; ties break deterministically") {
    const auto corpus = counted_corpus({
        {"p", {{"a", 5}, {"b", 5}, {"c", 500}, {"d", 500}, {"e", 30}, {"f", 30}}},
        {"q", {{"a", 5}, {"b", 5}, {"c", 500}, {"d", 500}, {"e", 30}, {"f", 30}}},
    });
    const auto ft = FrequencyTable::from_corpus(corpus);
    const auto fs = focus_of({{"a", "b"}, {"c", "d"}, {"e", "f"}});
    const auto report = rank_synsets(0, 1, fs, ft, 20);
    REQUIRE(report.rows.size() == 2);  // a|b has support 10 < 20
    // equal jsd (both zero): larger total support first
    CHECK(report.rows[0].synset->words == std::vector<std::string>{"c", "d"});
    CHECK(report.rows[1].synset->words == std::vector<std::string>{"e", "f"});
}

TEST_CASE("report serialization includes every row in rank order") {
    const auto corpus = counted_corpus({
        {"p", {{"a", 95}, {"b", 5}, {"c", 50}, {"d", 50}}},
        {"q", {{"a", 10}, {"b", 90}, {"c", 52}, {"d", 48}}},
    });
    const auto ft = FrequencyTable::from_corpus(corpus);
    const auto fs = focus_of({{"a", "b"}, {"c", "d"}});
    const auto report = rank_synsets(0, 1, fs, ft, 20);

    const auto dir = std::filesystem::temp_directory_path();
    const auto tsv = (dir / "lexiphylo_div_test.tsv").string();
    const auto json = (dir / "lexiphylo_div_test.json").string();
    report.save_tsv(tsv);
    report.save_json(json);

    std::size_t lines = 0;
    std::string first_row;
    for_each_line(tsv, [&](std::size_t lineno, std::string_view line) {
        if (lineno == 2) first_row = std::string(line);
        ++lines;
    });
    CHECK(lines == 3);  // header + 2 rows
    CHECK(first_row.substr(0, 4) == "a|b\t");
    std::remove(tsv.c_str());
    std::remove(json.c_str());
}
