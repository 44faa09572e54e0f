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

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace lexiphylo {

/// Word ancestry graph. Nodes are "lang:word" strings; an edge points from
/// a word to one of its recorded ancestors. Cycles in the source data are
/// broken at load time so every ancestry walk terminates.
class EtymologyGraph {
  public:
    struct Record {
        std::string child;
        std::string relation;
        std::string parent;
    };

    static EtymologyGraph from_records(const std::vector<Record>& records);

    /// TSV "child<TAB>relation<TAB>parent"; malformed lines are reported
    /// with their line number and skipped.
    static EtymologyGraph load_tsv(const std::string& path);

    void add_edge(std::string_view child, std::string_view parent);

    const std::set<std::string>& ancestors(const std::string& node) const;
    bool has_node(const std::string& node) const { return edges_.count(node) > 0; }
    std::size_t edge_count() const;

    /// Terminal ancestors reachable from `node`; a node with no ancestry
    /// edges is its own root.
    std::set<std::string> root_paths(const std::string& node) const;

    /// Deterministic cycle breaking (lexicographic DFS); returns the number
    /// of edges removed.
    std::size_t break_cycles();

    /// All "eng:*" source nodes, sorted; the candidate headwords.
    std::vector<std::string> english_words() const;

  private:
    std::map<std::string, std::set<std::string>> edges_;
};

}  // namespace lexiphylo
