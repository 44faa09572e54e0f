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
#include <string>
#include <vector>

#include "lexiphylo/corpus.hpp"
#include "lexiphylo/focus.hpp"
#include "lexiphylo/tree.hpp"

namespace lexiphylo {

/// A word over-injected into one label's text, to exercise the cultural
/// filter. base_freq is its per-token rate everywhere else.
struct BiasWord {
    std::string word;
    std::string label;
    double boost = 10.0;
    double base_freq = 5e-4;
};

/// Recipe for a synthetic corpus with a planted phylogeny: synonym
/// preferences drift along the gold tree, filler tokens are Zipfian, and
/// optional per-family context signatures give the embedding model a
/// recoverable signal.
struct PlantedSpec {
    PhyloTree gold_tree;              // leaves name the labels
    std::vector<SynonymSet> synsets;  // planted synonym structure
    double drift_sigma = 0.3;
    std::int64_t sentences_per_label = 1000;
    int sentence_length = 16;
    int filler_vocab_size = 2000;
    double synset_slot_rate = 0.25;
    double zipf_exponent = 1.1;
    std::vector<BiasWord> bias_words;
    bool context_signature = false;
    double signature_rate = 0.5;      // chance a synset slot emits its signature
    double divergent_fraction = 0.5;  // synsets with family-scoped signatures
    std::uint64_t seed = 1;

    /// JSON config; the gold tree may be inline Newick ("gold_tree") or a
    /// file path ("gold_tree_path"); synsets come from "n_synsets" +
    /// "members_per_synset".
    static PlantedSpec load_json(const std::string& path);
};

/// Synthetic synsets s000a/s000b/..., each member with its own root, so the
/// focus-set machinery can reconstruct them from the emitted resources.
std::vector<SynonymSet> make_planted_synsets(int n_synsets, int members_per_synset);

struct PlantedPreferences {
    std::vector<std::string> labels;  // gold-tree leaf order
    /// prefs[label][synset] = member distribution.
    std::vector<std::vector<std::vector<double>>> prefs;
    /// family[label]: flat-cluster id of the label in the gold tree itself
    /// (default inconsistency cut), so signature scoping follows the same
    /// family notion the pipeline recovers.
    std::vector<int> family;
};

/// Gaussian logit drift along each root-to-leaf edge (std = drift_sigma x
/// branch length); leaf distributions are softmax of the drifted logits.
PlantedPreferences drift_preferences(const PlantedSpec& spec);

LabeledCorpus generate_corpus(const PlantedSpec& spec, const PlantedPreferences& prefs);

/// Words w00000..; shared filler vocabulary of the generator.
std::vector<std::string> filler_vocabulary(const PlantedSpec& spec);

/// Signature token of a synset for a label ("q12f0" family-scoped for
/// divergent synsets, "q12s" shared otherwise).
std::string signature_token(const PlantedSpec& spec, std::size_t synset_index,
                            int family);

/// Companion resources that let the real pipeline rebuild the planted
/// synsets: etymology.tsv, senses.jsonl, pos_counts.tsv, filler_words.txt
/// and gold.nwk under `dir`.
void write_support_files(const PlantedSpec& spec, const std::string& dir);

}  // namespace lexiphylo
