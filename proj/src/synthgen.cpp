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
#include "lexiphylo/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <stdexcept>

#include <json.hpp>

#include "lexiphylo/io_util.hpp"
#include "lexiphylo/linkage.hpp"

namespace lexiphylo {

std::vector<SynonymSet> make_planted_synsets(int n_synsets, int members_per_synset) {
    if (n_synsets < 1 || members_per_synset < 2) {
        throw std::invalid_argument("planted synsets need n >= 1 and members >= 2");
    }
    std::vector<SynonymSet> out;
    out.reserve(n_synsets);
    char buf[32];
    for (int s = 0; s < n_synsets; ++s) {
        SynonymSet synset;
        synset.pos = Pos::Noun;
        for (int m = 0; m < members_per_synset; ++m) {
            std::snprintf(buf, sizeof(buf), "s%03d%c", s, 'a' + m);
            const std::string word = buf;
            synset.words.push_back(word);
            synset.roots[word] = {"fam:root" + word};
        }
        out.push_back(std::move(synset));
    }
    return out;
}

PlantedSpec PlantedSpec::load_json(const std::string& path) {
    const auto j = nlohmann::json::parse(read_file(path));
    PlantedSpec spec;

    if (j.contains("gold_tree")) {
        spec.gold_tree = parse_newick(j.at("gold_tree").get<std::string>());
    } else if (j.contains("gold_tree_path")) {
        spec.gold_tree = load_newick(j.at("gold_tree_path").get<std::string>());
    } else {
        throw std::runtime_error(path + ": planted spec needs gold_tree or gold_tree_path");
    }

    spec.synsets = make_planted_synsets(j.value("n_synsets", 100),
                                        j.value("members_per_synset", 2));
    spec.drift_sigma = j.value("drift_sigma", 0.3);
    spec.sentences_per_label = j.value("sentences_per_label", std::int64_t(1000));
    spec.sentence_length = j.value("sentence_length", 16);
    spec.filler_vocab_size = j.value("filler_vocab_size", 2000);
    spec.synset_slot_rate = j.value("synset_slot_rate", 0.25);
    spec.zipf_exponent = j.value("zipf_exponent", 1.1);
    spec.context_signature = j.value("context_signature", false);
    spec.signature_rate = j.value("signature_rate", 0.5);
    spec.divergent_fraction = j.value("divergent_fraction", 0.5);
    spec.seed = j.value("seed", std::uint64_t(1));
    if (j.contains("bias_words")) {
        for (const auto& jb : j.at("bias_words")) {
            BiasWord b;
            b.word = jb.at("word").get<std::string>();
            b.label = jb.at("label").get<std::string>();
            b.boost = jb.value("boost", 10.0);
            b.base_freq = jb.value("base_freq", 5e-4);
            if (b.boost <= 1.0) {
                throw std::runtime_error(path + ": bias word boost must exceed 1");
            }
            spec.bias_words.push_back(std::move(b));
        }
    }
    if (spec.drift_sigma <= 0.0) {
        throw std::runtime_error(path + ": drift_sigma must be positive");
    }
    return spec;
}

PlantedPreferences drift_preferences(const PlantedSpec& spec) {
    const auto& tree = spec.gold_tree;
    if (tree.root < 0) throw std::invalid_argument("drift_preferences: no gold tree");
    const std::size_t n_synsets = spec.synsets.size();

    PlantedPreferences out;
    out.labels = tree.leaf_labels();
    out.prefs.resize(out.labels.size());
    out.family.assign(out.labels.size(), 0);

    // logits per node, walked root to leaves in DFS child order; the single
    // rng keeps the walk reproducible
    std::mt19937_64 rng(mix_seed(spec.seed, 0xD81F70ULL));

    std::vector<std::vector<std::vector<double>>> logits(tree.nodes.size());

    // root logits: uniform (zero)
    logits[tree.root].resize(n_synsets);
    for (std::size_t s = 0; s < n_synsets; ++s) {
        logits[tree.root][s].assign(spec.synsets[s].words.size(), 0.0);
    }

    // explicit preorder with children in order (stack reversal)
    std::vector<int> dfs;
    std::vector<int> stack{tree.root};
    while (!stack.empty()) {
        const int node = stack.back();
        stack.pop_back();
        dfs.push_back(node);
        const auto& children = tree.nodes[node].children;
        for (auto it = children.rbegin(); it != children.rend(); ++it) {
            stack.push_back(*it);
        }
    }

    for (const int node : dfs) {
        if (node != tree.root) {
            const int parent = tree.nodes[node].parent;
            const double branch =
                std::max(0.0, tree.nodes[parent].height - tree.nodes[node].height);
            const double sd = spec.drift_sigma * branch;
            logits[node].resize(n_synsets);
            for (std::size_t s = 0; s < n_synsets; ++s) {
                const auto& parent_logits = logits[parent][s];
                auto& mine = logits[node][s];
                mine.resize(parent_logits.size());
                for (std::size_t m = 0; m < mine.size(); ++m) {
                    mine[m] = parent_logits[m] + sd * normal01(rng);
                }
            }
        }
    }

    // the family notion follows the gold tree's own flat clustering
    const auto families = flat_clusters(tree, 1.15);

    // leaf softmax
    std::vector<int> leaves = tree.leaf_indices();
    for (std::size_t li = 0; li < leaves.size(); ++li) {
        const int leaf = leaves[li];
        out.family[li] = families.at(tree.nodes[leaf].label);
        auto& label_prefs = out.prefs[li];
        label_prefs.resize(n_synsets);
        for (std::size_t s = 0; s < n_synsets; ++s) {
            const auto& l = logits[leaf][s];
            auto& p = label_prefs[s];
            p.resize(l.size());
            const double mx = *std::max_element(l.begin(), l.end());
            double z = 0.0;
            for (std::size_t m = 0; m < l.size(); ++m) {
                p[m] = std::exp(l[m] - mx);
                z += p[m];
            }
            for (double& v : p) v /= z;
        }
    }
    return out;
}

std::vector<std::string> filler_vocabulary(const PlantedSpec& spec) {
    std::vector<std::string> out;
    out.reserve(spec.filler_vocab_size);
    char buf[32];
    for (int i = 0; i < spec.filler_vocab_size; ++i) {
        std::snprintf(buf, sizeof(buf), "w%05d", i);
        out.emplace_back(buf);
    }
    return out;
}

std::string signature_token(const PlantedSpec& spec, std::size_t synset_index,
                            int family) {
    const bool divergent =
        static_cast<double>(synset_index) <
        spec.divergent_fraction * static_cast<double>(spec.synsets.size());
    if (divergent) {
        return "q" + std::to_string(synset_index) + "f" + std::to_string(family);
    }
    return "q" + std::to_string(synset_index) + "s";
}

LabeledCorpus generate_corpus(const PlantedSpec& spec,
                              const PlantedPreferences& prefs) {
    LabeledCorpus corpus;
    if (prefs.labels.empty()) throw std::invalid_argument("generate_corpus: no labels");

    const auto filler = filler_vocabulary(spec);
    // Zipf cumulative over the filler vocabulary
    std::vector<double> zipf_cdf(filler.size());
    double zipf_sum = 0.0;
    for (std::size_t r = 0; r < filler.size(); ++r) {
        zipf_sum += 1.0 / std::pow(static_cast<double>(r + 1), spec.zipf_exponent);
        zipf_cdf[r] = zipf_sum;
    }
    for (double& v : zipf_cdf) v /= zipf_sum;

    // per-synset member cumulative distributions are rebuilt per label below
    std::vector<std::string> tokens;
    tokens.reserve(spec.sentence_length);

    for (std::size_t li = 0; li < prefs.labels.size(); ++li) {
        const std::string& label = prefs.labels[li];
        corpus.add_label(label);
        std::mt19937_64 rng(mix_seed(spec.seed, 0xC0B050ULL + li));

        // bias words that can fire in this label, with their rates
        std::vector<std::pair<std::string, double>> bias;
        double bias_total = 0.0;
        for (const auto& b : spec.bias_words) {
            const double rate = b.label == label ? b.base_freq * b.boost : b.base_freq;
            bias.emplace_back(b.word, rate);
            bias_total += rate;
        }
        if (bias_total >= 0.5) {
            throw std::invalid_argument("generate_corpus: bias word rates too high");
        }

        std::vector<std::vector<double>> member_cdf(spec.synsets.size());
        for (std::size_t s = 0; s < spec.synsets.size(); ++s) {
            const auto& p = prefs.prefs[li][s];
            member_cdf[s].resize(p.size());
            double acc = 0.0;
            for (std::size_t m = 0; m < p.size(); ++m) {
                acc += p[m];
                member_cdf[s][m] = acc;
            }
        }

        for (std::int64_t sent = 0; sent < spec.sentences_per_label; ++sent) {
            tokens.clear();
            while (static_cast<int>(tokens.size()) < spec.sentence_length) {
                const double u = uniform01(rng);
                if (u < spec.synset_slot_rate) {
                    const std::size_t s = static_cast<std::size_t>(
                        uniform01(rng) * static_cast<double>(spec.synsets.size()));
                    const auto& cdf = member_cdf[s];
                    const double um = uniform01(rng);
                    std::size_t m = 0;
                    while (m + 1 < cdf.size() && um > cdf[m]) ++m;
                    tokens.push_back(spec.synsets[s].words[m]);
                    if (spec.context_signature &&
                        static_cast<int>(tokens.size()) < spec.sentence_length &&
                        uniform01(rng) < spec.signature_rate) {
                        tokens.push_back(signature_token(spec, s, prefs.family[li]));
                    }
                } else {
                    // bias words first, then Zipfian filler
                    const double ub = uniform01(rng);
                    double acc = 0.0;
                    const std::string* injected = nullptr;
                    for (const auto& [word, rate] : bias) {
                        acc += rate;
                        if (ub < acc) {
                            injected = &word;
                            break;
                        }
                    }
                    if (injected) {
                        tokens.push_back(*injected);
                    } else {
                        const double uz = uniform01(rng);
                        const auto it =
                            std::lower_bound(zipf_cdf.begin(), zipf_cdf.end(), uz);
                        const std::size_t r = std::min(
                            filler.size() - 1,
                            static_cast<std::size_t>(it - zipf_cdf.begin()));
                        tokens.push_back(filler[r]);
                    }
                }
            }
            corpus.add_sentence(label, tokens,
                                label + "-" + std::to_string(sent));
        }
    }
    return corpus;
}

void write_support_files(const PlantedSpec& spec, const std::string& dir) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);

    {
        auto out = open_output((fs::path(dir) / "etymology.tsv").string());
        for (const auto& synset : spec.synsets) {
            for (const auto& w : synset.words) {
                for (const auto& root : synset.roots.at(w)) {
                    out << "eng:" << w << "\tetymology\t" << root << '\n';
                }
            }
        }
    }
    {
        auto out = open_output((fs::path(dir) / "senses.jsonl").string());
        for (const auto& synset : spec.synsets) {
            for (const auto& w : synset.words) {
                nlohmann::json j;
                j["word"] = w;
                nlohmann::json sense;
                sense["pos"] = to_string(synset.pos);
                std::vector<std::string> syns;
                for (const auto& other : synset.words) {
                    if (other != w) syns.push_back(other);
                }
                sense["synonyms"] = syns;
                j["senses"] = nlohmann::json::array({sense});
                out << j.dump() << '\n';
            }
        }
    }
    {
        auto out = open_output((fs::path(dir) / "pos_counts.tsv").string());
        for (const auto& synset : spec.synsets) {
            for (const auto& w : synset.words) {
                out << w << '\t' << to_string(synset.pos) << "\t100\n";
            }
        }
    }
    {
        auto out = open_output((fs::path(dir) / "filler_words.txt").string());
        for (const auto& w : filler_vocabulary(spec)) out << w << '\n';
    }
    save_newick(spec.gold_tree, (fs::path(dir) / "gold.nwk").string());
}

}  // namespace lexiphylo
