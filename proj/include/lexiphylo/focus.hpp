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
#include <set>
#include <string>
#include <vector>

#include "lexiphylo/corpus.hpp"
#include "lexiphylo/etymology.hpp"

namespace lexiphylo {

enum class Pos { Noun, Verb, Adjective };

std::string to_string(Pos pos);
std::optional<Pos> parse_pos(std::string_view tag);

/// One sense of a word: its part of speech and the other synset members.
struct Sense {
    Pos pos = Pos::Noun;
    std::vector<std::string> synonyms;
};

/// Word -> senses in prominence order.
/// JSON-lines {"word":..., "senses":[{"pos":"N","synonyms":[...]},...]}.
class SenseInventory {
  public:
    void add(std::string_view word, std::vector<Sense> senses);
    const std::vector<Sense>* senses(const std::string& word) const;
    std::size_t size() const { return senses_.size(); }
    static SenseInventory load_jsonl(const std::string& path);

  private:
    std::map<std::string, std::vector<Sense>> senses_;
};

/// Per-word part-of-speech counts (TSV "word<TAB>pos<TAB>count"); stands in
/// for a tagger when choosing each word's dominant category.
class PosCountTable {
  public:
    void add(std::string_view word, Pos pos, std::int64_t count);
    /// Most frequent POS; ties resolve N > V > Adj. Empty when unseen.
    std::optional<Pos> dominant_pos(const std::string& word) const;
    static PosCountTable load_tsv(const std::string& path);

  private:
    std::map<std::string, std::array<std::int64_t, 3>> counts_;
};

struct SynonymSet {
    Pos pos = Pos::Noun;
    std::vector<std::string> words;                  // ordered members
    std::map<std::string, std::set<std::string>> roots;  // word -> root nodes
    int sense_rank = 0;

    /// True when some member pair has fully disjoint root sets.
    bool has_root_diversity() const;
    std::string key() const;  // "pos|w1|w2|..." with members sorted
};

struct FocusSet {
    std::vector<SynonymSet> synsets;
    std::set<std::string> words;  // flattened, each in exactly one synset

    void rebuild_word_index();
    void save_json(const std::string& path) const;
    static FocusSet load_json(const std::string& path);
};

/// Candidate synsets: for every English headword in the graph, the synset
/// of its first sense for its dominant POS, keeping only synsets with at
/// least two members and etymologically disjoint member pairs. A word
/// appearing in several candidates stays only in the synset of its own
/// first sense.
std::vector<SynonymSet> build_candidate_synsets(const SenseInventory& inventory,
                                                const PosCountTable& pos_counts,
                                                const EtymologyGraph& graph);

/// Drop when one member carries more than `threshold` of the synset's
/// pooled corpus frequency, or when the synset never occurs.
bool dominance_keep(const SynonymSet& synset, const LabeledCorpus& corpus,
                    double threshold = 0.9);

struct CulturalFilterParams {
    double threshold = 5.0;  // two-sided |z| cutoff
    double alpha0 = 1000.0;  // Dirichlet prior mass
};

struct CulturalFilterOutcome {
    FocusSet focus;
    /// (word, label, z) for every elimination, in deterministic order.
    std::vector<std::tuple<std::string, std::string, double>> eliminated;
};

/// Eliminates members over-represented in any single label versus the
/// pooled remainder (|z| >= threshold), then drops synsets left without
/// two members or root diversity.
CulturalFilterOutcome cultural_filter(const std::vector<SynonymSet>& candidates,
                                      const LabeledCorpus& corpus,
                                      const CulturalFilterParams& params);

struct FocusBuildParams {
    double dominance_threshold = 0.9;
    CulturalFilterParams cultural;
};

/// Full cascade: dominance filter then cultural filter.
CulturalFilterOutcome build_focus_set(const std::vector<SynonymSet>& candidates,
                                      const LabeledCorpus& corpus,
                                      const FocusBuildParams& params);

/// Control focus set for the random-word baseline: `n` words sampled
/// without replacement from `pool`, paired into two-member synsets with
/// synthetic disjoint roots.
FocusSet random_control_focus_set(std::vector<std::string> pool, std::size_t n,
                                  std::uint64_t seed);

}  // namespace lexiphylo
