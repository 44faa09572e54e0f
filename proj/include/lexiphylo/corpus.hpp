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
#include <deque>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace lexiphylo {

/// Append-only string pool; ids are dense and stable.
class StringInterner {
  public:
    std::uint32_t intern(std::string_view s);
    /// Returns the id if present, UINT32_MAX otherwise.
    std::uint32_t find(std::string_view s) const;
    const std::string& str(std::uint32_t id) const { return strings_.at(id); }
    std::size_t size() const { return strings_.size(); }

    static constexpr std::uint32_t npos = 0xFFFFFFFFu;

  private:
    // deque: growth never moves stored strings, so the view keys stay valid
    std::deque<std::string> strings_;
    std::unordered_map<std::string_view, std::uint32_t> index_;
};

struct LabeledSentence {
    std::uint32_t label = 0;           // index into LabeledCorpus::labels()
    std::vector<std::uint32_t> tokens; // interned, case-folded for counting via fold map
    std::string source_id;
};

struct CorpusStats {
    double ttr = 0.0;
    double mean_word_rank = 0.0;
    double mean_aoa = 0.0;
    std::int64_t token_count = 0;
    std::int64_t type_count = 0;
};

/// Sentences tagged with a native-language label, plus count indexes built
/// on demand. Tokens are interned with original casing; per-word counts
/// fold case so lexical lookups behave uniformly downstream.
class LabeledCorpus {
  public:
    std::uint32_t add_label(std::string_view label);
    std::uint32_t label_id(std::string_view label) const;  // throws if unknown
    const std::vector<std::string>& labels() const { return labels_; }

    void add_sentence(std::string_view label, const std::vector<std::string>& tokens,
                      std::string_view source_id = {});

    const std::vector<LabeledSentence>& sentences() const { return sentences_; }
    const StringInterner& vocab() const { return interner_; }
    std::string token_text(std::uint32_t id) const { return interner_.str(id); }

    std::int64_t total_tokens() const { return total_tokens_; }
    std::int64_t label_tokens(std::uint32_t label) const;
    std::int64_t label_sentences(std::uint32_t label) const;

    /// Case-folded occurrence counts; O(1) after the first call per build.
    std::int64_t count(std::string_view word) const;
    std::int64_t count_in_label(std::uint32_t label, std::string_view word) const;

    /// Case-folded vocabulary with pooled counts, unordered.
    const std::unordered_map<std::string, std::int64_t>& folded_counts() const;
    const std::unordered_map<std::string, std::int64_t>& folded_counts(
        std::uint32_t label) const;

    bool empty() const { return sentences_.empty(); }

    /// JSON-lines {"l1": ..., "text": ..., "id": optional}; text is
    /// tokenized on load. Sentences failing the single-non-alphabetic-token
    /// filter are dropped.
    static LabeledCorpus load_jsonl(const std::string& path);

    /// Writes one JSON line per sentence with tokens joined by spaces.
    void save_jsonl(const std::string& path) const;

  private:
    void build_index() const;

    StringInterner interner_;
    std::vector<std::string> labels_;
    std::unordered_map<std::string, std::uint32_t> label_index_;
    std::vector<LabeledSentence> sentences_;
    std::int64_t total_tokens_ = 0;
    std::vector<std::int64_t> label_token_counts_;
    std::vector<std::int64_t> label_sentence_counts_;

    // lazily built fold-count indexes
    mutable bool index_built_ = false;
    mutable std::unordered_map<std::string, std::int64_t> pooled_counts_;
    mutable std::vector<std::unordered_map<std::string, std::int64_t>> per_label_counts_;
};

/// TSV "word<TAB>value" lookup used for rank and age-of-acquisition tables.
class ValueTable {
  public:
    void insert(std::string_view word, double value);
    bool lookup(std::string_view word, double& out) const;
    bool empty() const { return values_.empty(); }
    void load(const std::string& path);

  private:
    std::unordered_map<std::string, double> values_;
};

/// Type/token ratio over the exact token stream plus mean rank and mean
/// age-of-acquisition over tokens found in the respective tables.
CorpusStats lexical_stats(const LabeledCorpus& corpus, const ValueTable& rank_table,
                          const ValueTable& aoa_table);

}  // namespace lexiphylo
