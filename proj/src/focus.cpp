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
#include "lexiphylo/focus.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <iostream>
#include <random>
#include <stdexcept>

#include <json.hpp>

#include "lexiphylo/io_util.hpp"
#include "lexiphylo/logodds.hpp"

namespace lexiphylo {

std::string to_string(Pos pos) {
    switch (pos) {
        case Pos::Noun: return "N";
        case Pos::Verb: return "V";
        case Pos::Adjective: return "Adj";
    }
    return "?";
}

std::optional<Pos> parse_pos(std::string_view tag) {
    if (tag == "N") return Pos::Noun;
    if (tag == "V") return Pos::Verb;
    if (tag == "Adj") return Pos::Adjective;
    return std::nullopt;
}

void SenseInventory::add(std::string_view word, std::vector<Sense> senses) {
    senses_[std::string(word)] = std::move(senses);
}

const std::vector<Sense>* SenseInventory::senses(const std::string& word) const {
    const auto it = senses_.find(word);
    return it == senses_.end() ? nullptr : &it->second;
}

SenseInventory SenseInventory::load_jsonl(const std::string& path) {
    SenseInventory inv;
    for_each_line(path, [&](std::size_t lineno, std::string_view line) {
        if (line.empty()) return;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": bad JSON: " + e.what());
        }
        std::vector<Sense> senses;
        for (const auto& js : j.at("senses")) {
            const auto pos = parse_pos(js.at("pos").get<std::string>());
            if (!pos) {
                std::cerr << "warning: " << path << ":" << lineno
                          << ": unknown POS tag '" << js.at("pos").get<std::string>()
                          << "', sense skipped\n";
                continue;
            }
            Sense s;
            s.pos = *pos;
            for (const auto& syn : js.at("synonyms")) {
                s.synonyms.push_back(syn.get<std::string>());
            }
            senses.push_back(std::move(s));
        }
        inv.add(j.at("word").get<std::string>(), std::move(senses));
    });
    return inv;
}

void PosCountTable::add(std::string_view word, Pos pos, std::int64_t count) {
    auto& slot = counts_[std::string(word)];
    slot[static_cast<std::size_t>(pos)] += count;
}

std::optional<Pos> PosCountTable::dominant_pos(const std::string& word) const {
    const auto it = counts_.find(word);
    if (it == counts_.end()) return std::nullopt;
    const auto& c = it->second;
    std::size_t best = 0;
    for (std::size_t i = 1; i < c.size(); ++i) {
        if (c[i] > c[best]) best = i;
    }
    if (c[best] <= 0) return std::nullopt;
    return static_cast<Pos>(best);
}

PosCountTable PosCountTable::load_tsv(const std::string& path) {
    PosCountTable table;
    for_each_line(path, [&](std::size_t lineno, std::string_view line) {
        if (line.empty()) return;
        const auto fields = split_view(line, '\t');
        if (fields.size() != 3) {
            std::cerr << "warning: " << path << ":" << lineno
                      << ": expected 3 tab-separated fields, line skipped\n";
            return;
        }
        const auto pos = parse_pos(fields[1]);
        std::int64_t count = 0;
        const auto res =
            std::from_chars(fields[2].data(), fields[2].data() + fields[2].size(), count);
        if (!pos || res.ec != std::errc() || count < 0) {
            std::cerr << "warning: " << path << ":" << lineno
                      << ": bad POS or count, line skipped\n";
            return;
        }
        table.add(fields[0], *pos, count);
    });
    return table;
}

bool SynonymSet::has_root_diversity() const {
    for (std::size_t i = 0; i < words.size(); ++i) {
        const auto& ri = roots.at(words[i]);
        for (std::size_t j = i + 1; j < words.size(); ++j) {
            const auto& rj = roots.at(words[j]);
            const bool disjoint = std::none_of(ri.begin(), ri.end(), [&](const auto& r) {
                return rj.count(r) > 0;
            });
            if (disjoint) return true;
        }
    }
    return false;
}

std::string SynonymSet::key() const {
    std::vector<std::string> sorted = words;
    std::sort(sorted.begin(), sorted.end());
    std::string k = to_string(pos);
    for (const auto& w : sorted) {
        k.push_back('|');
        k += w;
    }
    return k;
}

void FocusSet::rebuild_word_index() {
    words.clear();
    for (const auto& s : synsets) {
        for (const auto& w : s.words) {
            if (!words.insert(w).second) {
                throw std::logic_error("focus set word in two synsets: " + w);
            }
        }
    }
}

void FocusSet::save_json(const std::string& path) const {
    nlohmann::json out;
    out["synsets"] = nlohmann::json::array();
    for (const auto& s : synsets) {
        nlohmann::json js;
        js["pos"] = to_string(s.pos);
        js["words"] = s.words;
        nlohmann::json roots;
        for (const auto& [w, rs] : s.roots) {
            roots[w] = std::vector<std::string>(rs.begin(), rs.end());
        }
        js["roots"] = std::move(roots);
        out["synsets"].push_back(std::move(js));
    }
    auto f = open_output(path);
    f << out.dump(2) << '\n';
}

FocusSet FocusSet::load_json(const std::string& path) {
    const auto j = nlohmann::json::parse(read_file(path));
    FocusSet fs;
    for (const auto& js : j.at("synsets")) {
        SynonymSet s;
        const auto pos = parse_pos(js.at("pos").get<std::string>());
        if (!pos) throw std::runtime_error(path + ": unknown POS in focus set");
        s.pos = *pos;
        for (const auto& w : js.at("words")) s.words.push_back(w.get<std::string>());
        for (const auto& [w, rs] : js.at("roots").items()) {
            auto& slot = s.roots[w];
            for (const auto& r : rs) slot.insert(r.get<std::string>());
        }
        fs.synsets.push_back(std::move(s));
    }
    fs.rebuild_word_index();
    return fs;
}

namespace {

std::string strip_lang(const std::string& node) {
    const auto pos = node.find(':');
    return pos == std::string::npos ? node : node.substr(pos + 1);
}

}  // namespace

std::vector<SynonymSet> build_candidate_synsets(const SenseInventory& inventory,
                                                const PosCountTable& pos_counts,
                                                const EtymologyGraph& graph) {
    std::map<std::string, SynonymSet> by_key;       // canonical key -> synset
    std::map<std::string, std::string> home_key;    // word -> its own synset key

    for (const auto& node : graph.english_words()) {
        const std::string word = strip_lang(node);
        const auto* senses = inventory.senses(word);
        if (!senses) continue;
        const auto top_pos = pos_counts.dominant_pos(word);
        if (!top_pos) continue;

        const Sense* first = nullptr;
        int rank = 0;
        for (std::size_t i = 0; i < senses->size(); ++i) {
            if ((*senses)[i].pos == *top_pos) {
                first = &(*senses)[i];
                rank = static_cast<int>(i);
                break;
            }
        }
        if (!first) continue;

        SynonymSet synset;
        synset.pos = *top_pos;
        synset.sense_rank = rank;
        synset.words.push_back(word);
        for (const auto& syn : first->synonyms) {
            if (std::find(synset.words.begin(), synset.words.end(), syn) ==
                synset.words.end()) {
                synset.words.push_back(syn);
            }
        }
        if (synset.words.size() < 2) continue;

        for (const auto& w : synset.words) {
            synset.roots[w] = graph.root_paths("eng:" + w);
        }
        if (!synset.has_root_diversity()) continue;

        home_key.emplace(word, synset.key());
        by_key.emplace(synset.key(), std::move(synset));
    }

    // Words landing in several candidate synsets stay only in the synset of
    // their own first sense; words without a home synset stay in the first
    // candidate (map order) that contains them.
    std::map<std::string, std::string> keeper = home_key;
    for (const auto& [key, synset] : by_key) {
        for (const auto& w : synset.words) keeper.emplace(w, key);
    }

    std::vector<SynonymSet> out;
    for (auto& [key, synset] : by_key) {
        SynonymSet pruned;
        pruned.pos = synset.pos;
        pruned.sense_rank = synset.sense_rank;
        for (const auto& w : synset.words) {
            if (keeper.at(w) == key) {
                pruned.words.push_back(w);
                pruned.roots[w] = synset.roots.at(w);
            }
        }
        if (pruned.words.size() < 2 || !pruned.has_root_diversity()) continue;
        out.push_back(std::move(pruned));
    }
    return out;
}

bool dominance_keep(const SynonymSet& synset, const LabeledCorpus& corpus,
                    double threshold) {
    std::int64_t total = 0;
    std::int64_t max_count = 0;
    for (const auto& w : synset.words) {
        const std::int64_t c = corpus.count(w);
        total += c;
        max_count = std::max(max_count, c);
    }
    if (total == 0) return false;
    return static_cast<double>(max_count) / static_cast<double>(total) <= threshold;
}

CulturalFilterOutcome cultural_filter(const std::vector<SynonymSet>& candidates,
                                      const LabeledCorpus& corpus,
                                      const CulturalFilterParams& params) {
    CulturalFilterOutcome outcome;

    std::set<std::string> all_words;
    for (const auto& s : candidates) {
        all_words.insert(s.words.begin(), s.words.end());
    }

    const std::int64_t grand_total = corpus.total_tokens();
    std::set<std::string> eliminated;
    for (const auto& w : all_words) {
        const std::int64_t pooled = corpus.count(w);
        if (pooled == 0) continue;  // no evidence either way
        const double prior_word =
            params.alpha0 * static_cast<double>(pooled) / static_cast<double>(grand_total);
        for (std::uint32_t label = 0; label < corpus.labels().size(); ++label) {
            const std::int64_t yi = corpus.count_in_label(label, w);
            const std::int64_t ni = corpus.label_tokens(label);
            const std::int64_t yb = pooled - yi;
            const std::int64_t nb = grand_total - ni;
            if (ni <= 0 || nb <= 0) continue;
            const auto r = log_odds_z(yi, ni, yb, nb, prior_word, params.alpha0);
            if (std::abs(r.z) >= params.threshold) {
                eliminated.insert(w);
                outcome.eliminated.emplace_back(w, corpus.labels()[label], r.z);
                break;
            }
        }
    }

    for (const auto& s : candidates) {
        SynonymSet kept;
        kept.pos = s.pos;
        kept.sense_rank = s.sense_rank;
        for (const auto& w : s.words) {
            if (eliminated.count(w)) continue;
            kept.words.push_back(w);
            kept.roots[w] = s.roots.at(w);
        }
        if (kept.words.size() < 2 || !kept.has_root_diversity()) continue;
        outcome.focus.synsets.push_back(std::move(kept));
    }
    outcome.focus.rebuild_word_index();
    return outcome;
}

CulturalFilterOutcome build_focus_set(const std::vector<SynonymSet>& candidates,
                                      const LabeledCorpus& corpus,
                                      const FocusBuildParams& params) {
    std::vector<SynonymSet> after_dominance;
    for (const auto& s : candidates) {
        if (dominance_keep(s, corpus, params.dominance_threshold)) {
            after_dominance.push_back(s);
        }
    }
    return cultural_filter(after_dominance, corpus, params.cultural);
}

FocusSet random_control_focus_set(std::vector<std::string> pool, std::size_t n,
                                  std::uint64_t seed) {
    if (n < 2) throw std::invalid_argument("random control needs at least 2 words");
    if (pool.size() < n) {
        throw std::invalid_argument("random control pool smaller than requested size");
    }
    std::sort(pool.begin(), pool.end());
    std::mt19937_64 rng(seed);
    shuffle_portable(pool, rng);
    pool.resize(n - (n % 2));

    FocusSet fs;
    for (std::size_t i = 0; i + 1 < pool.size(); i += 2) {
        SynonymSet s;
        s.pos = Pos::Noun;
        s.words = {pool[i], pool[i + 1]};
        s.roots[pool[i]] = {"ctrl:" + pool[i]};
        s.roots[pool[i + 1]] = {"ctrl:" + pool[i + 1]};
        fs.synsets.push_back(std::move(s));
    }
    fs.rebuild_word_index();
    return fs;
}

}  // namespace lexiphylo
