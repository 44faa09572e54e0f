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
#include "lexiphylo/divergence.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "lexiphylo/io_util.hpp"

namespace lexiphylo {

SynsetDistribution synset_distribution(const SynonymSet& synset, std::uint32_t label,
                                       const FrequencyTable& freqs) {
    SynsetDistribution dist;
    dist.probs.assign(synset.words.size(), 0.0);
    std::vector<std::int64_t> counts(synset.words.size(), 0);
    for (std::size_t i = 0; i < synset.words.size(); ++i) {
        counts[i] = freqs.count(label, lowercase(synset.words[i]));
        dist.support_count += counts[i];
    }
    if (dist.support_count > 0) {
        for (std::size_t i = 0; i < counts.size(); ++i) {
            dist.probs[i] = static_cast<double>(counts[i]) /
                            static_cast<double>(dist.support_count);
        }
    }
    return dist;
}

double jsd(std::span<const double> p, std::span<const double> q) {
    if (p.size() != q.size()) {
        throw std::invalid_argument("jsd: distributions have different arity");
    }
    double div = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double m = 0.5 * (p[i] + q[i]);
        if (p[i] > 0.0) div += 0.5 * p[i] * std::log2(p[i] / m);
        if (q[i] > 0.0) div += 0.5 * q[i] * std::log2(q[i] / m);
    }
    return div;
}

DivergenceReport rank_synsets(std::uint32_t label_i, std::uint32_t label_j,
                              const FocusSet& focus, const FrequencyTable& freqs,
                              std::int64_t min_support) {
    DivergenceReport report;
    report.label_i = freqs.labels().at(label_i);
    report.label_j = freqs.labels().at(label_j);

    for (const auto& synset : focus.synsets) {
        const auto di = synset_distribution(synset, label_i, freqs);
        const auto dj = synset_distribution(synset, label_j, freqs);
        if (di.empty() || dj.empty()) continue;
        if (di.support_count < min_support || dj.support_count < min_support) continue;

        DivergenceRow row;
        row.synset = &synset;
        row.p_i = di.probs;
        row.p_j = dj.probs;
        row.jsd = jsd(row.p_i, row.p_j);
        row.support_i = di.support_count;
        row.support_j = dj.support_count;
        report.rows.push_back(std::move(row));
    }

    std::sort(report.rows.begin(), report.rows.end(),
              [](const DivergenceRow& a, const DivergenceRow& b) {
                  if (a.jsd != b.jsd) return a.jsd > b.jsd;
                  const std::int64_t sa = a.support_i + a.support_j;
                  const std::int64_t sb = b.support_i + b.support_j;
                  if (sa != sb) return sa > sb;
                  return a.synset->key() < b.synset->key();
              });
    return report;
}

namespace {

std::string join_words(const std::vector<std::string>& words, char sep) {
    std::string out;
    for (std::size_t i = 0; i < words.size(); ++i) {
        if (i) out.push_back(sep);
        out += words[i];
    }
    return out;
}

std::string join_probs(const std::vector<double>& probs) {
    std::string out;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        if (i) out.push_back(',');
        out += format_float(probs[i]);
    }
    return out;
}

}  // namespace

void DivergenceReport::save_tsv(const std::string& path) const {
    auto out = open_output(path);
    out << "synset\tp_" << label_i << "\tp_" << label_j << "\tjsd\tsupport_"
        << label_i << "\tsupport_" << label_j << '\n';
    for (const auto& row : rows) {
        out << join_words(row.synset->words, '|') << '\t' << join_probs(row.p_i)
            << '\t' << join_probs(row.p_j) << '\t' << format_float(row.jsd) << '\t'
            << row.support_i << '\t' << row.support_j << '\n';
    }
}

void DivergenceReport::save_json(const std::string& path) const {
    nlohmann::json j;
    j["label_i"] = label_i;
    j["label_j"] = label_j;
    j["rows"] = nlohmann::json::array();
    for (const auto& row : rows) {
        nlohmann::json jr;
        jr["synset"] = row.synset->words;
        jr["p_i"] = row.p_i;
        jr["p_j"] = row.p_j;
        jr["jsd"] = row.jsd;
        jr["support_i"] = row.support_i;
        jr["support_j"] = row.support_j;
        j["rows"].push_back(std::move(jr));
    }
    auto out = open_output(path);
    out << j.dump(2) << '\n';
}

}  // namespace lexiphylo
