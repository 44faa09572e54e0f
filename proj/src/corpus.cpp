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
#include "lexiphylo/corpus.hpp"

#include <charconv>
#include <iostream>
#include <stdexcept>
#include <unordered_set>

#include <json.hpp>

#include "lexiphylo/io_util.hpp"
#include "lexiphylo/text.hpp"

namespace lexiphylo {

std::uint32_t StringInterner::intern(std::string_view s) {
    const auto it = index_.find(s);
    if (it != index_.end()) return it->second;
    const auto id = static_cast<std::uint32_t>(strings_.size());
    strings_.emplace_back(s);
    index_.emplace(std::string_view(strings_.back()), id);
    return id;
}

std::uint32_t StringInterner::find(std::string_view s) const {
    const auto it = index_.find(s);
    return it == index_.end() ? npos : it->second;
}

std::uint32_t LabeledCorpus::add_label(std::string_view label) {
    const auto it = label_index_.find(std::string(label));
    if (it != label_index_.end()) return it->second;
    const auto id = static_cast<std::uint32_t>(labels_.size());
    labels_.emplace_back(label);
    label_index_.emplace(labels_.back(), id);
    label_token_counts_.push_back(0);
    label_sentence_counts_.push_back(0);
    return id;
}

std::uint32_t LabeledCorpus::label_id(std::string_view label) const {
    const auto it = label_index_.find(std::string(label));
    if (it == label_index_.end()) {
        throw std::invalid_argument("unknown corpus label: " + std::string(label));
    }
    return it->second;
}

void LabeledCorpus::add_sentence(std::string_view label,
                                 const std::vector<std::string>& tokens,
                                 std::string_view source_id) {
    if (tokens.empty()) throw std::invalid_argument("empty sentence");
    LabeledSentence s;
    s.label = add_label(label);
    s.tokens.reserve(tokens.size());
    for (const auto& t : tokens) s.tokens.push_back(interner_.intern(t));
    s.source_id = std::string(source_id);
    total_tokens_ += static_cast<std::int64_t>(tokens.size());
    label_token_counts_[s.label] += static_cast<std::int64_t>(tokens.size());
    label_sentence_counts_[s.label] += 1;
    sentences_.push_back(std::move(s));
    index_built_ = false;
}

std::int64_t LabeledCorpus::label_tokens(std::uint32_t label) const {
    return label_token_counts_.at(label);
}

std::int64_t LabeledCorpus::label_sentences(std::uint32_t label) const {
    return label_sentence_counts_.at(label);
}

void LabeledCorpus::build_index() const {
    if (index_built_) return;
    pooled_counts_.clear();
    per_label_counts_.assign(labels_.size(), {});
    // fold each interned id once, then count by id
    std::vector<std::string> folded(interner_.size());
    for (std::uint32_t id = 0; id < interner_.size(); ++id) {
        folded[id] = lowercase(interner_.str(id));
    }
    for (const auto& s : sentences_) {
        auto& per_label = per_label_counts_[s.label];
        for (const std::uint32_t id : s.tokens) {
            ++pooled_counts_[folded[id]];
            ++per_label[folded[id]];
        }
    }
    index_built_ = true;
}

std::int64_t LabeledCorpus::count(std::string_view word) const {
    build_index();
    const auto it = pooled_counts_.find(lowercase(word));
    return it == pooled_counts_.end() ? 0 : it->second;
}

std::int64_t LabeledCorpus::count_in_label(std::uint32_t label,
                                           std::string_view word) const {
    build_index();
    const auto& m = per_label_counts_.at(label);
    const auto it = m.find(lowercase(word));
    return it == m.end() ? 0 : it->second;
}

const std::unordered_map<std::string, std::int64_t>& LabeledCorpus::folded_counts()
    const {
    build_index();
    return pooled_counts_;
}

const std::unordered_map<std::string, std::int64_t>& LabeledCorpus::folded_counts(
    std::uint32_t label) const {
    build_index();
    return per_label_counts_.at(label);
}

LabeledCorpus LabeledCorpus::load_jsonl(const std::string& path) {
    LabeledCorpus corpus;
    for_each_line(path, [&](std::size_t lineno, std::string_view line) {
        if (line.empty()) return;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": bad JSON: " + e.what());
        }
        if (!j.contains("l1") || !j.contains("text")) {
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": sentence record needs 'l1' and 'text'");
        }
        const auto tokens = tokenize(j["text"].get<std::string>());
        if (!keep_sentence(tokens)) return;
        const std::string id = j.contains("id") ? j["id"].get<std::string>() : "";
        corpus.add_sentence(j["l1"].get<std::string>(), tokens, id);
    });
    return corpus;
}

void LabeledCorpus::save_jsonl(const std::string& path) const {
    auto out = open_output(path);
    std::string text;
    for (const auto& s : sentences_) {
        text.clear();
        for (std::size_t i = 0; i < s.tokens.size(); ++i) {
            if (i) text.push_back(' ');
            text += interner_.str(s.tokens[i]);
        }
        nlohmann::json j;
        j["l1"] = labels_[s.label];
        j["text"] = text;
        if (!s.source_id.empty()) j["id"] = s.source_id;
        out << j.dump() << '\n';
    }
}

void ValueTable::insert(std::string_view word, double value) {
    values_[lowercase(word)] = value;
}

bool ValueTable::lookup(std::string_view word, double& out) const {
    const auto it = values_.find(lowercase(word));
    if (it == values_.end()) return false;
    out = it->second;
    return true;
}

void ValueTable::load(const std::string& path) {
    for_each_line(path, [&](std::size_t lineno, std::string_view line) {
        if (line.empty()) return;
        const auto fields = split_view(line, '\t');
        if (fields.size() != 2) {
            std::cerr << "warning: " << path << ":" << lineno
                      << ": expected 2 tab-separated fields, line skipped\n";
            return;
        }
        double value = 0.0;
        const auto res =
            std::from_chars(fields[1].data(), fields[1].data() + fields[1].size(), value);
        if (res.ec != std::errc()) {
            std::cerr << "warning: " << path << ":" << lineno << ": bad value '"
                      << fields[1] << "', line skipped\n";
            return;
        }
        insert(fields[0], value);
    });
}

CorpusStats lexical_stats(const LabeledCorpus& corpus, const ValueTable& rank_table,
                          const ValueTable& aoa_table) {
    if (corpus.empty()) throw std::invalid_argument("lexical_stats: empty corpus");

    CorpusStats stats;
    std::unordered_set<std::uint32_t> types;
    double rank_sum = 0.0, aoa_sum = 0.0;
    std::int64_t rank_n = 0, aoa_n = 0;

    for (const auto& s : corpus.sentences()) {
        for (const std::uint32_t id : s.tokens) {
            ++stats.token_count;
            types.insert(id);
            const std::string& word = corpus.vocab().str(id);
            double v = 0.0;
            if (rank_table.lookup(word, v)) {
                rank_sum += v;
                ++rank_n;
            }
            if (aoa_table.lookup(word, v)) {
                aoa_sum += v;
                ++aoa_n;
            }
        }
    }

    stats.type_count = static_cast<std::int64_t>(types.size());
    stats.ttr = static_cast<double>(stats.type_count) /
                static_cast<double>(stats.token_count);
    stats.mean_word_rank = rank_n > 0 ? rank_sum / static_cast<double>(rank_n) : 0.0;
    stats.mean_aoa = aoa_n > 0 ? aoa_sum / static_cast<double>(aoa_n) : 0.0;
    return stats;
}

}  // namespace lexiphylo
