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
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace lexiphylo {

/// Whitespace-and-punctuation tokenizer. Punctuation becomes separate
/// tokens; apostrophes and hyphens between word characters stay inside the
/// token; web/subreddit/user pointers are kept whole so the abstraction
/// pass can recognize them. Casing is preserved.
std::vector<std::string> tokenize(std::string_view text);

/// True for tokens the cleanup pass replaces with "URL": anything starting
/// with http://, https://, www., r/ or u/.
bool is_url_like(std::string_view token);

/// Keep/drop decision for an ingested sentence: drop empty sentences and
/// one-token sentences whose only token has no alphabetic character.
bool keep_sentence(const std::vector<std::string>& tokens);

/// Trigram + unigram counts used by the truecaser. Context lookups are
/// case-insensitive on the flanking tokens but case-sensitive on the
/// middle one, so that casing variants of the same middle word compete.
class NgramTable {
  public:
    void add_trigram(std::string_view w1, std::string_view w2, std::string_view w3,
                     std::int64_t count);
    void add_unigram(std::string_view w, std::int64_t count);

    std::int64_t trigram_count(std::string_view left, std::string_view middle,
                               std::string_view right) const;
    std::int64_t unigram_count(std::string_view w) const;

    bool empty() const { return trigrams_.empty() && unigrams_.empty(); }

    /// TSV "w1<TAB>w2<TAB>w3<TAB>count"; malformed lines are skipped with a
    /// warning on stderr.
    void load_trigrams(const std::string& path);
    /// TSV "w<TAB>count".
    void load_unigrams(const std::string& path);

  private:
    std::unordered_map<std::string, std::int64_t> trigrams_;
    std::unordered_map<std::string, std::int64_t> unigrams_;
};

/// Sentence boundary marker for truecasing context.
inline constexpr std::string_view kBoundary = "<s>";

/// Picks the casing variant (lower, UPPER, Initial-upper) of `token` with
/// the highest trigram count in `(left, variant, right)`; falls back to
/// unigram counts, then to the token unchanged. Ties resolve in the listed
/// variant order.
std::string truecase(std::string_view token, std::string_view left,
                     std::string_view right, const NgramTable& table);

/// Truecases a whole sentence in place using sentence-boundary context.
void truecase_sentence(std::vector<std::string>& tokens, const NgramTable& table);

struct EntitySpan {
    std::size_t begin = 0;  // token index, inclusive
    std::size_t end = 0;    // token index, exclusive
    std::string type;       // e.g. "PERSON", "GPE"
};

/// Entity-span file: JSON-lines {"id": ..., "spans": [[begin,end,"TYPE"],...]}
/// keyed by sentence id.
std::map<std::string, std::vector<EntitySpan>> load_entity_spans(
    const std::string& path);

/// Lexicon of known-English words; lookups fold case.
class EnglishLexicon {
  public:
    void insert(std::string_view word);
    bool contains(std::string_view word) const;
    bool empty() const { return words_.empty(); }
    /// One word per line.
    void load(const std::string& path);

  private:
    std::unordered_set<std::string> words_;
};

/// Single-token gazetteer for the fallback entity tagger: surface form
/// (case-folded) -> entity type.
class Gazetteer {
  public:
    void insert(std::string_view name, std::string_view type);
    std::optional<std::string> lookup(std::string_view token) const;
    bool empty() const { return entries_.empty(); }
    /// TSV "name<TAB>TYPE".
    void load(const std::string& path);

  private:
    std::unordered_map<std::string, std::string> entries_;
};

/// Fallback tagger: capitalized tokens that are not sentence-initial and
/// appear in the gazetteer become single-token entity spans.
std::vector<EntitySpan> fallback_entity_spans(const std::vector<std::string>& tokens,
                                              const Gazetteer& gazetteer);

struct AbstractOptions {
    bool replace_urls = true;
    /// UNK replacement only runs when a lexicon is supplied.
    const EnglishLexicon* lexicon = nullptr;
};

/// Entity spans -> type tokens, URL-like tokens -> "URL", tokens missing
/// from the lexicon -> "UNK". Spans must be sorted, non-overlapping and in
/// bounds; violations raise std::invalid_argument.
std::vector<std::string> abstract_sentence(const std::vector<std::string>& tokens,
                                           std::vector<EntitySpan> spans,
                                           const AbstractOptions& opts);

/// Fraction of tokens equal to "UNK"; the ingestion pipeline drops
/// sentences above 0.5 as likely non-English.
double unk_fraction(const std::vector<std::string>& tokens);

}  // namespace lexiphylo
