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
#include "lexiphylo/tree.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include "lexiphylo/io_util.hpp"
#include "lexiphylo/linkage.hpp"

namespace lexiphylo {

int PhyloTree::add_leaf(std::string_view label) {
    Node node;
    node.label = std::string(label);
    nodes.push_back(std::move(node));
    return static_cast<int>(nodes.size()) - 1;
}

int PhyloTree::add_internal(const std::vector<int>& children, double height) {
    if (children.size() < 2) {
        throw std::invalid_argument("internal node needs at least 2 children");
    }
    Node node;
    node.children = children;
    node.height = height;
    const int id = static_cast<int>(nodes.size());
    for (const int c : children) nodes[c].parent = id;
    nodes.push_back(std::move(node));
    return id;
}

std::vector<int> PhyloTree::leaf_indices() const {
    std::vector<int> out;
    for (int i = 0; i < static_cast<int>(nodes.size()); ++i) {
        if (is_leaf(i)) out.push_back(i);
    }
    return out;
}

std::vector<std::string> PhyloTree::leaf_labels() const {
    std::vector<std::string> out;
    for (const int i : leaf_indices()) out.push_back(nodes[i].label);
    return out;
}

namespace {

void write_newick(const PhyloTree& tree, int node, double parent_height,
                  bool is_root, std::string& out) {
    const auto& n = tree.nodes[node];
    if (!tree.is_leaf(node)) {
        out.push_back('(');
        for (std::size_t i = 0; i < n.children.size(); ++i) {
            if (i) out.push_back(',');
            write_newick(tree, n.children[i], n.height, false, out);
        }
        out.push_back(')');
    } else {
        out += n.label;
    }
    if (!is_root) {
        out.push_back(':');
        out += format_float(parent_height - n.height);
    }
}

}  // namespace

std::string to_newick(const PhyloTree& tree) {
    if (tree.root < 0) throw std::invalid_argument("to_newick: tree has no root");
    std::string out;
    write_newick(tree, tree.root, 0.0, true, out);
    out.push_back(';');
    return out;
}

namespace {

struct NewickParser {
    std::string_view text;
    std::size_t pos = 0;
    PhyloTree tree;

    [[noreturn]] void fail(const std::string& what) const {
        throw std::runtime_error("newick parse error at position " +
                                 std::to_string(pos) + ": " + what);
    }

    void skip_ws() {
        while (pos < text.size() &&
               std::isspace(static_cast<unsigned char>(text[pos]))) {
            ++pos;
        }
    }

    char peek() {
        skip_ws();
        if (pos >= text.size()) fail("unexpected end of input");
        return text[pos];
    }

    static bool is_structural(char c) {
        return c == '(' || c == ')' || c == ',' || c == ':' || c == ';';
    }

    std::string read_name() {
        skip_ws();
        const std::size_t start = pos;
        while (pos < text.size() && !is_structural(text[pos]) &&
               !std::isspace(static_cast<unsigned char>(text[pos]))) {
            ++pos;
        }
        return std::string(text.substr(start, pos - start));
    }

    double read_length() {
        skip_ws();
        double v = 0.0;
        const auto res = std::from_chars(text.data() + pos, text.data() + text.size(), v);
        if (res.ec != std::errc()) fail("bad branch length");
        pos = static_cast<std::size_t>(res.ptr - text.data());
        return v;
    }

    /// Returns (node index, edge length to parent); length < 0 means absent.
    std::pair<int, double> parse_subtree() {
        int node;
        if (peek() == '(') {
            ++pos;  // consume '('
            std::vector<int> children;
            std::vector<double> lengths;
            while (true) {
                auto [child, len] = parse_subtree();
                children.push_back(child);
                lengths.push_back(len);
                const char c = peek();
                if (c == ',') {
                    ++pos;
                    continue;
                }
                if (c == ')') {
                    ++pos;
                    break;
                }
                fail("expected ',' or ')'");
            }
            if (children.size() < 2) fail("internal node with a single child");
            // height: bottom-up from children; a missing length counts as 1
            double height = 0.0;
            for (std::size_t i = 0; i < children.size(); ++i) {
                const double len = lengths[i] < 0.0 ? 1.0 : lengths[i];
                height = std::max(height, tree.nodes[children[i]].height + len);
            }
            node = tree.add_internal(children, height);
            read_name();  // optional internal label, ignored
        } else {
            const std::string name = read_name();
            if (name.empty()) fail("expected leaf name");
            node = tree.add_leaf(name);
        }
        double length = -1.0;
        skip_ws();
        if (pos < text.size() && text[pos] == ':') {
            ++pos;
            length = read_length();
        }
        return {node, length};
    }

    PhyloTree parse() {
        auto [root, len] = parse_subtree();
        (void)len;
        skip_ws();
        if (pos >= text.size() || text[pos] != ';') fail("expected ';'");
        ++pos;
        skip_ws();
        if (pos != text.size()) fail("trailing characters after ';'");
        tree.root = root;
        return std::move(tree);
    }
};

}  // namespace

PhyloTree parse_newick(std::string_view text) {
    NewickParser parser{.text = text, .pos = 0, .tree = {}};
    PhyloTree t = parser.parse();
    const auto labels = t.leaf_labels();
    std::set<std::string> unique(labels.begin(), labels.end());
    if (unique.size() != labels.size()) {
        throw std::runtime_error("newick parse error: duplicate leaf labels");
    }
    return t;
}

void save_newick(const PhyloTree& tree, const std::string& path) {
    auto out = open_output(path);
    out << to_newick(tree) << '\n';
}

PhyloTree load_newick(const std::string& path) {
    std::string text = read_file(path);
    // allow trailing whitespace/newlines
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) {
        text.pop_back();
    }
    return parse_newick(text);
}

LeafPathProfile leaf_paths(const PhyloTree& tree) {
    const auto leaves = tree.leaf_indices();
    const std::size_t n = leaves.size();

    // depth of every node from the root, in edges
    std::vector<int> depth(tree.nodes.size(), 0);
    {
        std::vector<int> stack{tree.root};
        while (!stack.empty()) {
            const int node = stack.back();
            stack.pop_back();
            for (const int c : tree.nodes[node].children) {
                depth[c] = depth[node] + 1;
                stack.push_back(c);
            }
        }
    }

    auto lca_distance = [&](int a, int b) {
        int da = depth[a], db = depth[b];
        int steps = 0;
        while (da > db) {
            a = tree.nodes[a].parent;
            --da;
            ++steps;
        }
        while (db > da) {
            b = tree.nodes[b].parent;
            --db;
            ++steps;
        }
        while (a != b) {
            a = tree.nodes[a].parent;
            b = tree.nodes[b].parent;
            steps += 2;
        }
        return steps;
    };

    LeafPathProfile profile;
    profile.labels.reserve(n);
    for (const int leaf : leaves) profile.labels.push_back(tree.nodes[leaf].label);
    profile.d.assign(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const int d = lca_distance(leaves[i], leaves[j]);
            profile.d[i * n + j] = d;
            profile.d[j * n + i] = d;
        }
    }
    return profile;
}

double tree_distance(const PhyloTree& tau, const PhyloTree& gold) {
    const auto pt = leaf_paths(tau);
    const auto pg = leaf_paths(gold);

    const std::set<std::string> st(pt.labels.begin(), pt.labels.end());
    const std::set<std::string> sg(pg.labels.begin(), pg.labels.end());
    if (st != sg) {
        std::ostringstream msg;
        msg << "tree_distance: leaf label sets differ;";
        for (const auto& l : st) {
            if (!sg.count(l)) msg << " +" << l;
        }
        for (const auto& l : sg) {
            if (!st.count(l)) msg << " -" << l;
        }
        throw std::invalid_argument(msg.str());
    }

    // align gold's profile to tau's label order
    std::vector<std::size_t> gold_pos(pt.labels.size());
    for (std::size_t i = 0; i < pt.labels.size(); ++i) {
        gold_pos[i] = static_cast<std::size_t>(
            std::find(pg.labels.begin(), pg.labels.end(), pt.labels[i]) -
            pg.labels.begin());
    }

    double sum = 0.0;
    const std::size_t n = pt.labels.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double diff = static_cast<double>(pt.at(i, j)) -
                                static_cast<double>(pg.at(gold_pos[i], gold_pos[j]));
            sum += diff * diff;
        }
    }
    return sum;
}

TreeEvaluation normalized_tree_distance(const PhyloTree& tau, const PhyloTree& gold,
                                        int n_random, std::uint64_t seed) {
    if (n_random < 1) {
        throw std::invalid_argument("normalized_tree_distance: n_random must be >= 1");
    }
    TreeEvaluation eval;
    eval.raw = tree_distance(tau, gold);
    eval.n_random = n_random;
    eval.seed = seed;

    std::vector<std::string> labels = gold.leaf_labels();
    std::sort(labels.begin(), labels.end());
    const std::size_t n = labels.size();

    double baseline_sum = 0.0;
    for (int sample = 0; sample < n_random; ++sample) {
        std::mt19937_64 rng(mix_seed(seed, 0x7EEE0000u + static_cast<std::uint64_t>(sample)));
        DistanceMatrix m;
        m.labels = labels;
        m.values.assign(n * n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                const double v = static_cast<double>(rng() >> 11) * 0x1.0p-53;
                m.at(i, j) = v;
                m.at(j, i) = v;
            }
        }
        baseline_sum += tree_distance(ward_cluster(m), gold);
    }
    const double baseline = baseline_sum / static_cast<double>(n_random);
    eval.normalized = baseline > 0.0 ? std::max(0.0, eval.raw / baseline) : 0.0;
    return eval;
}

}  // namespace lexiphylo
