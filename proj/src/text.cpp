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
#include "lexiphylo/text.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <iostream>
#include <stdexcept>

#include <json.hpp>

#include "lexiphylo/io_util.hpp"

namespace lexiphylo {

namespace {

bool is_word_char(unsigned char c) {
    return std::isalnum(c) || c >= 0x80;
}

bool is_space_char(unsigned char c) {
    return std::isspace(c);
}

void split_chunk(std::string_view chunk, std::vector<std::string>& out) {
    std::size_t i = 0;
    const std::size_t n = chunk.size();
    while (i < n) {
        const auto c = static_cast<unsigned char>(chunk[i]);
        if (is_word_char(c)) {
            std::size_t j = i + 1;
            while (j < n) {
                const auto cj = static_cast<unsigned char>(chunk[j]);
                if (is_word_char(cj)) {
                    ++j;
                } else if ((chunk[j] == '\'' || chunk[j] == '-') && j + 1 < n &&
                           is_word_char(static_cast<unsigned char>(chunk[j + 1]))) {
                    // internal apostrophe/hyphen: "don't", "jean-paul"
                    j += 2;
                } else {
                    break;
                }
            }
            out.emplace_back(chunk.substr(i, j - i));
            i = j;
        } else {
            out.emplace_back(1, chunk[i]);
            ++i;
        }
    }
}

}  // namespace

bool is_url_like(std::string_view token) {
    return token.starts_with("http://") || token.starts_with("https://") ||
           token.starts_with("www.") || token.starts_with("r/") ||
           token.starts_with("u/");
}

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> tokens;
    std::size_t i = 0;
    const std::size_t n = text.size();
    while (i < n) {
        while (i < n && is_space_char(static_cast<unsigned char>(text[i]))) ++i;
        if (i >= n) break;
        std::size_t j = i;
        while (j < n && !is_space_char(static_cast<unsigned char>(text[j]))) ++j;
        const std::string_view chunk = text.substr(i, j - i);
        if (is_url_like(chunk)) {
            tokens.emplace_back(chunk);  // keep pointers whole for the URL rule
        } else {
            split_chunk(chunk, tokens);
        }
        i = j;
    }
    return tokens;
}

bool keep_sentence(const std::vector<std::string>& tokens) {
    if (tokens.empty()) return false;
    if (tokens.size() == 1 && !contains_alpha(tokens[0])) return false;
    return true;
}

namespace {

std::string trigram_key(std::string_view left, std::string_view middle,
                        std::string_view right) {
    std::string key = lowercase(left);
    key.push_back('\t');
    key.append(middle);
    key.push_back('\t');
    key.append(lowercase(right));
    return key;
}

}  // namespace

void NgramTable::add_trigram(std::string_view w1, std::string_view w2,
                             std::string_view w3, std::int64_t count) {
    if (count <= 0) return;
    trigrams_[trigram_key(w1, w2, w3)] += count;
}

void NgramTable::add_unigram(std::string_view w, std::int64_t count) {
    if (count <= 0) return;
    unigrams_[std::string(w)] += count;
}

std::int64_t NgramTable::trigram_count(std::string_view left, std::string_view middle,
                                       std::string_view right) const {
    const auto it = trigrams_.find(trigram_key(left, middle, right));
    return it == trigrams_.end() ? 0 : it->second;
}

std::int64_t NgramTable::unigram_count(std::string_view w) const {
    const auto it = unigrams_.find(std::string(w));
    return it == unigrams_.end() ? 0 : it->second;
}

namespace {

std::int64_t parse_count(std::string_view field, const std::string& path,
                         std::size_t lineno) {
    std::int64_t value = 0;
    const auto res = std::from_chars(field.data(), field.data() + field.size(), value);
    if (res.ec != std::errc() || res.ptr != field.data() + field.size()) {
        std::cerr << "warning: " << path << ":" << lineno << ": bad count '" << field
                  << "', line skipped\n";
        return -1;
    }
    return value;
}

}  // namespace

void NgramTable::load_trigrams(const std::string& path) {
    for_each_line(path, [&](std::size_t lineno, std::string_view line) {
        if (line.empty()) return;
        const auto fields = split_view(line, '\t');
        if (fields.size() != 4) {
            std::cerr << "warning: " << path << ":" << lineno
                      << ": expected 4 tab-separated fields, line skipped\n";
            return;
        }
        const std::int64_t count = parse_count(fields[3], path, lineno);
        if (count > 0) add_trigram(fields[0], fields[1], fields[2], count);
    });
}

void NgramTable::load_unigrams(const std::string& path) {
    for_each_line(path, [&](std::size_t lineno, std::string_view line) {
        if (line.empty()) return;
        const auto fields = split_view(line, '\t');
        if (fields.size() != 2) {
            std::cerr << "warning: " << path << ":" << lineno
                      << ": expected 2 tab-separated fields, line skipped\n";
            return;
        }
        const std::int64_t count = parse_count(fields[1], path, lineno);
        if (count > 0) add_unigram(fields[0], count);
    });
}

std::string truecase(std::string_view token, std::string_view left,
                     std::string_view right, const NgramTable& table) {
    const std::string variants[3] = {lowercase(token), uppercase(token),
                                     initial_upper(token)};

    std::int64_t best_count = 0;
    const std::string* best = nullptr;
    for (const auto& v : variants) {
        const std::int64_t c = table.trigram_count(left, v, right);
        if (c > best_count) {
            best_count = c;
            best = &v;
        }
    }
    if (best) return *best;

    for (const auto& v : variants) {
        const std::int64_t c = table.unigram_count(v);
        if (c > best_count) {
            best_count = c;
            best = &v;
        }
    }
    if (best) return *best;

    return std::string(token);
}

void truecase_sentence(std::vector<std::string>& tokens, const NgramTable& table) {
    if (table.empty()) return;
    std::vector<std::string> out;
    out.reserve(tokens.size());
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        const std::string_view left = i == 0 ? kBoundary : std::string_view(tokens[i - 1]);
        const std::string_view right =
            i + 1 == tokens.size() ? kBoundary : std::string_view(tokens[i + 1]);
        out.push_back(truecase(tokens[i], left, right, table));
    }
    tokens = std::move(out);
}

void EnglishLexicon::insert(std::string_view word) { words_.insert(lowercase(word)); }

bool EnglishLexicon::contains(std::string_view word) const {
    return words_.count(lowercase(word)) > 0;
}

void EnglishLexicon::load(const std::string& path) {
    for_each_line(path, [&](std::size_t, std::string_view line) {
        if (!line.empty()) insert(line);
    });
}

void Gazetteer::insert(std::string_view name, std::string_view type) {
    entries_[lowercase(name)] = std::string(type);
}

std::optional<std::string> Gazetteer::lookup(std::string_view token) const {
    const auto it = entries_.find(lowercase(token));
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

void Gazetteer::load(const std::string& path) {
    for_each_line(path, [&](std::size_t lineno, std::string_view line) {
        if (line.empty()) return;
        const auto fields = split_view(line, '\t');
        if (fields.size() != 2) {
            std::cerr << "warning: " << path << ":" << lineno
                      << ": expected 2 tab-separated fields, line skipped\n";
            return;
        }
        insert(fields[0], fields[1]);
    });
}

std::map<std::string, std::vector<EntitySpan>> load_entity_spans(
    const std::string& path) {
    std::map<std::string, std::vector<EntitySpan>> spans;
    for_each_line(path, [&](std::size_t lineno, std::string_view line) {
        if (line.empty()) return;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": bad JSON: " + e.what());
        }
        auto& list = spans[j.at("id").get<std::string>()];
        for (const auto& js : j.at("spans")) {
            EntitySpan span;
            span.begin = js.at(0).get<std::size_t>();
            span.end = js.at(1).get<std::size_t>();
            span.type = js.at(2).get<std::string>();
            list.push_back(span);
        }
    });
    return spans;
}

std::vector<EntitySpan> fallback_entity_spans(const std::vector<std::string>& tokens,
                                              const Gazetteer& gazetteer) {
    std::vector<EntitySpan> spans;
    if (gazetteer.empty()) return spans;
    for (std::size_t i = 1; i < tokens.size(); ++i) {
        const std::string& t = tokens[i];
        if (t.empty() || t != initial_upper(t) || !contains_alpha(t)) continue;
        if (auto type = gazetteer.lookup(t)) {
            spans.push_back({i, i + 1, *type});
        }
    }
    return spans;
}

std::vector<std::string> abstract_sentence(const std::vector<std::string>& tokens,
                                           std::vector<EntitySpan> spans,
                                           const AbstractOptions& opts) {
    std::sort(spans.begin(), spans.end(),
              [](const EntitySpan& a, const EntitySpan& b) { return a.begin < b.begin; });
    for (std::size_t k = 0; k < spans.size(); ++k) {
        const EntitySpan& s = spans[k];
        if (s.begin >= s.end || s.end > tokens.size()) {
            throw std::invalid_argument("entity span out of bounds");
        }
        if (k > 0 && spans[k - 1].end > s.begin) {
            throw std::invalid_argument("overlapping entity spans");
        }
    }

    std::vector<std::string> out;
    out.reserve(tokens.size());
    std::size_t next_span = 0;
    for (std::size_t i = 0; i < tokens.size();) {
        if (next_span < spans.size() && spans[next_span].begin == i) {
            out.push_back(spans[next_span].type);
            i = spans[next_span].end;
            ++next_span;
            continue;
        }
        const std::string& t = tokens[i];
        if (opts.replace_urls && is_url_like(t)) {
            out.emplace_back("URL");
        } else if (opts.lexicon && !opts.lexicon->empty() && contains_alpha(t) &&
                   !opts.lexicon->contains(t)) {
            out.emplace_back("UNK");
        } else {
            out.push_back(t);
        }
        ++i;
    }
    return out;
}

double unk_fraction(const std::vector<std::string>& tokens) {
    if (tokens.empty()) return 0.0;
    std::size_t unk = 0;
    for (const auto& t : tokens) {
        if (t == "UNK") ++unk;
    }
    return static_cast<double>(unk) / static_cast<double>(tokens.size());
}

}  // namespace lexiphylo
