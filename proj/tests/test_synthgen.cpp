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
#include <filesystem>
#include <map>

#include "lexiphylo/distance.hpp"
#include "lexiphylo/io_util.hpp"
#include "lexiphylo/synthgen.hpp"
#include "lexiphylo/text.hpp"

using namespace lexiphylo;

namespace {

PhyloTree two_family_tree() {
    // ((a1,a2),(b1,b2)) with longer family stems
    return parse_newick("((a1:1,a2:1):2,(b1:1,b2:1):2);");
}

PlantedSpec small_spec() {
    PlantedSpec spec;
    spec.gold_tree = two_family_tree();
    spec.synsets = make_planted_synsets(40, 2);
    spec.drift_sigma = 0.4;
    spec.sentences_per_label = 400;
    spec.sentence_length = 12;
    spec.filler_vocab_size = 200;
    spec.synset_slot_rate = 0.3;
    spec.seed = 11;
    return spec;
}

}  // namespace

TEST_CASE("planted synsets have the advertised shape") {
    const auto synsets = make_planted_synsets(5, 3);
    REQUIRE(synsets.size() == 5);
    for (const auto& s : synsets) {
        CHECK(s.words.size() == 3);
        CHECK(s.has_root_diversity());
    }
    CHECK(synsets[0].words[0] == "s000a");
    CHECK(synsets[4].words[2] == "s004c");
    CHECK_THROWS_AS(make_planted_synsets(0, 2), std::invalid_argument);
    CHECK_THROWS_AS(make_planted_synsets(3, 1), std::invalid_argument);
}

TEST_CASE("near-zero drift keeps all labels near the uniform distribution") {
    auto spec = small_spec();
    spec.drift_sigma = 1e-9;
    const auto prefs = drift_preferences(spec);
    for (const auto& label_prefs : prefs.prefs) {
        for (const auto& p : label_prefs) {
            for (const double v : p) {
                CHECK(v == doctest::Approx(1.0 / p.size()).epsilon(1e-6));
            }
        }
    }
}

TEST_CASE("drift preferences are deterministic under the seed") {
    const auto spec = small_spec();
    const auto a = drift_preferences(spec);
    const auto b = drift_preferences(spec);
    REQUIRE(a.labels == b.labels);
    for (std::size_t l = 0; l < a.prefs.size(); ++l) {
        for (std::size_t s = 0; s < a.prefs[l].size(); ++s) {
            for (std::size_t m = 0; m < a.prefs[l][s].size(); ++m) {
                CHECK(a.prefs[l][s][m] == b.prefs[l][s][m]);
            }
        }
    }
}

TEST_CASE("family ids follow the gold tree's own flat families") {
    const auto prefs = drift_preferences(small_spec());
    REQUIRE(prefs.labels == std::vector<std::string>{"a1", "a2", "b1", "b2"});
    CHECK(prefs.family[0] == prefs.family[1]);
    CHECK(prefs.family[2] == prefs.family[3]);
    CHECK(prefs.family[0] != prefs.family[2]);

    // the bundled three-family shape yields three signature scopes
    PlantedSpec spec = small_spec();
    spec.gold_tree = parse_newick(
        "(((((g1:1,g2:1):0.2,g3:1.2):0.2,g4:1.4):2,(((r1:1,r2:1):0.2,r3:1.2):0.2,"
        "r4:1.4):2):1,(((s1:1,s2:1):0.2,s3:1.2):0.2,s4:1.4):3.5);");
    const auto three = drift_preferences(spec);
    std::set<int> distinct(three.family.begin(), three.family.end());
    CHECK(distinct.size() == 3);
    CHECK(three.family[0] == three.family[3]);   // g1 with g4
    CHECK(three.family[0] != three.family[4]);   // g1 apart from r1
    CHECK(three.family[8] != three.family[4]);   // s1 apart from r1
}

TEST_CASE("siblings have closer preferences than cross-family pairs") {
    auto spec = small_spec();
    spec.synsets = make_planted_synsets(250, 2);
    const auto prefs = drift_preferences(spec);

    const auto tv = [&](std::size_t la, std::size_t lb) {
        double total = 0.0;
        for (std::size_t s = 0; s < spec.synsets.size(); ++s) {
            double acc = 0.0;
            for (std::size_t m = 0; m < prefs.prefs[la][s].size(); ++m) {
                acc += std::abs(prefs.prefs[la][s][m] - prefs.prefs[lb][s][m]);
            }
            total += 0.5 * acc;
        }
        return total / static_cast<double>(spec.synsets.size());
    };

    const double sibling = 0.5 * (tv(0, 1) + tv(2, 3));
    const double cross = 0.25 * (tv(0, 2) + tv(0, 3) + tv(1, 2) + tv(1, 3));
    CHECK(sibling < cross);
}

TEST_CASE("generated corpora are deterministic and pass ingestion untouched") {
    const auto spec = small_spec();
    const auto prefs = drift_preferences(spec);
    const auto a = generate_corpus(spec, prefs);
    const auto b = generate_corpus(spec, prefs);
    REQUIRE(a.sentences().size() == b.sentences().size());
    CHECK(a.total_tokens() == b.total_tokens());
    for (std::size_t i = 0; i < a.sentences().size(); i += 97) {
        CHECK(a.sentences()[i].tokens == b.sentences()[i].tokens);
    }

    // every generated sentence survives the ingestion filter and the
    // URL/UNK abstraction rules leave it unchanged
    for (std::size_t i = 0; i < a.sentences().size(); i += 23) {
        const auto& s = a.sentences()[i];
        std::vector<std::string> tokens;
        for (const auto id : s.tokens) tokens.push_back(a.token_text(id));
        CHECK(keep_sentence(tokens));
        for (const auto& t : tokens) CHECK_FALSE(is_url_like(t));
    }
}

TEST_CASE("zero sentences per label gives an empty corpus") {
    auto spec = small_spec();
    spec.sentences_per_label = 0;
    const auto corpus = generate_corpus(spec, drift_preferences(spec));
    CHECK(corpus.sentences().empty());
}

TEST_CASE("empirical member frequencies converge to the planted preferences") {
    auto spec = small_spec();
    spec.synsets = make_planted_synsets(10, 2);
    spec.sentences_per_label = 14000;  // ~50k synset slots per label
    spec.sentence_length = 12;
    const auto prefs = drift_preferences(spec);
    const auto corpus = generate_corpus(spec, prefs);

    for (std::size_t li = 0; li < prefs.labels.size(); ++li) {
        const auto label = corpus.label_id(prefs.labels[li]);
        for (std::size_t s = 0; s < spec.synsets.size(); ++s) {
            const auto& words = spec.synsets[s].words;
            std::int64_t total = 0;
            std::vector<std::int64_t> counts(words.size(), 0);
            for (std::size_t m = 0; m < words.size(); ++m) {
                counts[m] = corpus.count_in_label(label, words[m]);
                total += counts[m];
            }
            REQUIRE(total > 0);
            double tv = 0.0;
            for (std::size_t m = 0; m < words.size(); ++m) {
                tv += std::abs(static_cast<double>(counts[m]) /
                                   static_cast<double>(total) -
                               prefs.prefs[li][s][m]);
            }
            CHECK(0.5 * tv <= 0.02);
        }
    }
}

TEST_CASE("bias words are injected at roughly base and boosted rates") {
    auto spec = small_spec();
    spec.sentences_per_label = 20000;
    spec.bias_words = {{"planted", "a1", 10.0, 5e-4}};
    const auto corpus = generate_corpus(spec, drift_preferences(spec));

    const auto boosted = corpus.label_id("a1");
    const auto plain = corpus.label_id("b1");
    const double rate_boosted =
        static_cast<double>(corpus.count_in_label(boosted, "planted")) /
        static_cast<double>(corpus.label_tokens(boosted));
    const double rate_plain =
        static_cast<double>(corpus.count_in_label(plain, "planted")) /
        static_cast<double>(corpus.label_tokens(plain));
    CHECK(rate_boosted > 6.0 * rate_plain);
    CHECK(rate_plain > 0.0);
}

TEST_CASE("context signature mode pairs members with their signature tokens") {
    auto spec = small_spec();
    spec.context_signature = true;
    spec.signature_rate = 1.0;
    spec.divergent_fraction = 0.5;
    const auto prefs = drift_preferences(spec);
    const auto corpus = generate_corpus(spec, prefs);

    // divergent synsets carry per-family signatures; shared synsets one token
    const auto a1 = corpus.label_id("a1");
    const auto b1 = corpus.label_id("b1");
    const auto sig_div_a = signature_token(spec, 0, prefs.family[0]);
    const auto sig_div_b = signature_token(spec, 0, prefs.family[2]);
    CHECK(sig_div_a != sig_div_b);
    CHECK(corpus.count_in_label(a1, sig_div_a) > 0);
    CHECK(corpus.count_in_label(a1, sig_div_b) == 0);
    CHECK(corpus.count_in_label(b1, sig_div_b) > 0);

    const auto sig_shared = signature_token(spec, spec.synsets.size() - 1, 0);
    CHECK(sig_shared ==
          signature_token(spec, spec.synsets.size() - 1, 1));  // family-agnostic
    CHECK(corpus.count_in_label(a1, sig_shared) > 0);
    CHECK(corpus.count_in_label(b1, sig_shared) > 0);
}

TEST_CASE("planted drift shapes the distance matrix along family lines") {
    auto spec = small_spec();
    spec.synsets = make_planted_synsets(120, 2);
    spec.sentences_per_label = 3000;
    const auto prefs = drift_preferences(spec);
    const auto corpus = generate_corpus(spec, prefs);

    FocusSet focus;
    focus.synsets = spec.synsets;
    focus.rebuild_word_index();
    const auto m = distance_matrix(FrequencyTable::from_corpus(corpus), focus,
                                   nullptr, {DistanceMode::FrequencyOnly, {}});

    double within = 0.0, cross = 0.0;
    int n_within = 0, n_cross = 0;
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t j = i + 1; j < m.size(); ++j) {
            if (prefs.family[i] == prefs.family[j]) {
                within += m.at(i, j);
                ++n_within;
            } else {
                cross += m.at(i, j);
                ++n_cross;
            }
        }
    }
    REQUIRE(n_within > 0);
    REQUIRE(n_cross > 0);
    CHECK(within / n_within < cross / n_cross);
}

TEST_CASE("support files let the pipeline rebuild the planted synsets") {
    const auto spec = small_spec();
    const auto dir =
        (std::filesystem::temp_directory_path() / "lexiphylo_synth_support").string();
    write_support_files(spec, dir);

    const auto graph = EtymologyGraph::load_tsv(dir + "/etymology.tsv");
    const auto inventory =
        SenseInventory::load_jsonl(dir + "/senses.jsonl");
    const auto pos = PosCountTable::load_tsv(dir + "/pos_counts.tsv");

    const auto candidates = build_candidate_synsets(inventory, pos, graph);
    REQUIRE(candidates.size() == spec.synsets.size());
    std::set<std::string> expected;
    for (const auto& s : spec.synsets) expected.insert(s.key());
    for (const auto& c : candidates) CHECK(expected.count(c.key()) == 1);

    const auto gold = load_newick(dir + "/gold.nwk");
    CHECK(gold.leaf_labels() == spec.gold_tree.leaf_labels());

    std::filesystem::remove_all(dir);
}

TEST_CASE("planted spec json loader applies defaults and validates") {
    const auto dir = std::filesystem::temp_directory_path();
    const auto path = (dir / "lexiphylo_spec_test.json").string();
    {
        auto out = open_output(path);
        out << R"({
          "gold_tree": "((x1,x2),(y1,y2));",
          "n_synsets": 7,
          "members_per_synset": 3,
          "drift_sigma": 0.25,
          "sentences_per_label": 10,
          "bias_words": [{"word": "soviet", "label": "x1", "boost": 8.0}]
        })";
    }
    const auto spec = PlantedSpec::load_json(path);
    CHECK(spec.synsets.size() == 7);
    CHECK(spec.synsets[0].words.size() == 3);
    CHECK(spec.drift_sigma == doctest::Approx(0.25));
    CHECK(spec.sentence_length == 16);  // default
    REQUIRE(spec.bias_words.size() == 1);
    CHECK(spec.bias_words[0].boost == doctest::Approx(8.0));
    CHECK(spec.gold_tree.leaf_count() == 4);
    std::remove(path.c_str());
}
