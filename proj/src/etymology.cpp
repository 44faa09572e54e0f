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
#include "lexiphylo/etymology.hpp"

#include <iostream>
#include <vector>

#include "lexiphylo/io_util.hpp"

namespace lexiphylo {

namespace {
const std::set<std::string> kEmpty;
}

void EtymologyGraph::add_edge(std::string_view child, std::string_view parent) {
    if (child == parent) return;  // self-loops carry no ancestry information
    edges_[std::string(child)].insert(std::string(parent));
}

const std::set<std::string>& EtymologyGraph::ancestors(const std::string& node) const {
    const auto it = edges_.find(node);
    return it == edges_.end() ? kEmpty : it->second;
}

std::size_t EtymologyGraph::edge_count() const {
    std::size_t n = 0;
    for (const auto& [_, parents] : edges_) n += parents.size();
    return n;
}

EtymologyGraph EtymologyGraph::from_records(const std::vector<Record>& records) {
    EtymologyGraph g;
    for (const auto& r : records) {
        if (r.relation == "etymology") {
            g.add_edge(r.child, r.parent);
        } else if (r.relation == "etymological_origin_of") {
            // inverse direction: child IS the origin of parent
            g.add_edge(r.parent, r.child);
        }
        // unknown relations are skipped
    }
    const std::size_t removed = g.break_cycles();
    if (removed > 0) {
        std::cerr << "warning: etymology graph contained cycles; removed " << removed
                  << " edge(s)\n";
    }
    return g;
}

EtymologyGraph EtymologyGraph::load_tsv(const std::string& path) {
    std::vector<Record> records;
    for_each_line(path, [&](std::size_t lineno, std::string_view line) {
        if (line.empty()) return;
        const auto fields = split_view(line, '\t');
        if (fields.size() != 3 || fields[0].empty() || fields[2].empty()) {
            std::cerr << "warning: " << path << ":" << lineno
                      << ": expected 3 tab-separated fields, line skipped\n";
            return;
        }
        records.push_back({std::string(fields[0]), std::string(fields[1]),
                           std::string(fields[2])});
    });
    return from_records(records);
}

std::size_t EtymologyGraph::break_cycles() {
    // Iterative DFS with tri-color marking; removes edges that close a cycle.
    enum class Color { White, Gray, Black };
    std::map<std::string, Color> color;
    std::vector<std::pair<std::string, std::string>> to_remove;

    for (const auto& [start, _] : edges_) {
        if (color.count(start) && color[start] != Color::White) continue;

        struct Frame {
            std::string node;
            std::vector<std::string> parents;
            std::size_t next = 0;
        };
        std::vector<Frame> stack;
        auto push = [&](const std::string& node) {
            color[node] = Color::Gray;
            const auto& ps = ancestors(node);
            stack.push_back({node, {ps.begin(), ps.end()}, 0});
        };
        push(start);
        while (!stack.empty()) {
            Frame& top = stack.back();
            if (top.next >= top.parents.size()) {
                color[top.node] = Color::Black;
                stack.pop_back();
                continue;
            }
            const std::string& parent = top.parents[top.next++];
            const auto it = color.find(parent);
            const Color c = it == color.end() ? Color::White : it->second;
            if (c == Color::Gray) {
                to_remove.emplace_back(top.node, parent);  // back edge
            } else if (c == Color::White) {
                push(parent);
            }
        }
    }

    for (const auto& [child, parent] : to_remove) {
        edges_[child].erase(parent);
        if (edges_[child].empty()) edges_.erase(child);
    }
    return to_remove.size();
}

std::set<std::string> EtymologyGraph::root_paths(const std::string& node) const {
    std::set<std::string> roots;
    std::set<std::string> visited;
    std::vector<std::string> stack{node};
    while (!stack.empty()) {
        const std::string current = std::move(stack.back());
        stack.pop_back();
        if (!visited.insert(current).second) continue;
        const auto& parents = ancestors(current);
        if (parents.empty()) {
            roots.insert(current);
        } else {
            for (const auto& p : parents) stack.push_back(p);
        }
    }
    return roots;
}

std::vector<std::string> EtymologyGraph::english_words() const {
    std::vector<std::string> out;
    for (const auto& [node, _] : edges_) {
        if (node.starts_with("eng:")) out.push_back(node);
    }
    return out;  // map iteration is already sorted
}

}  // namespace lexiphylo
