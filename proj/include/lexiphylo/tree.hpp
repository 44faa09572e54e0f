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
#include <string_view>
#include <vector>

namespace lexiphylo {

/// Rooted tree with merge heights. Clustering output is strictly binary;
/// parsed gold trees may be multifurcating. Leaves sit at height 0.
struct PhyloTree {
    struct Node {
        int parent = -1;
        std::vector<int> children;
        double height = 0.0;
        std::string label;  // leaves only
    };

    std::vector<Node> nodes;
    int root = -1;

    bool is_leaf(int i) const { return nodes[i].children.empty(); }
    int add_leaf(std::string_view label);
    int add_internal(const std::vector<int>& children, double height);

    std::vector<int> leaf_indices() const;
    std::vector<std::string> leaf_labels() const;
    std::size_t leaf_count() const { return leaf_indices().size(); }
};

/// Serializes with branch lengths = parent height - child height; the root
/// carries no length. Labels must not contain Newick structure characters.
std::string to_newick(const PhyloTree& tree);

/// Accepts multifurcating trees and optional branch lengths; heights are
/// reconstructed bottom-up (missing lengths count as 1). Malformed input
/// raises std::runtime_error naming the byte position.
PhyloTree parse_newick(std::string_view text);

void save_newick(const PhyloTree& tree, const std::string& path);
PhyloTree load_newick(const std::string& path);

/// Pairwise shortest-path edge counts between leaves.
struct LeafPathProfile {
    std::vector<std::string> labels;
    std::vector<int> d;  // row-major |N| x |N|

    int at(std::size_t i, std::size_t j) const { return d[i * labels.size() + j]; }
};

LeafPathProfile leaf_paths(const PhyloTree& tree);

/// Sum over unordered leaf pairs of squared differences between the two
/// trees' leaf-path lengths; leaves align by label. A label-set mismatch
/// raises std::invalid_argument listing the symmetric difference.
double tree_distance(const PhyloTree& tau, const PhyloTree& gold);

struct TreeEvaluation {
    double raw = 0.0;
    double normalized = 0.0;
    int n_random = 0;
    std::uint64_t seed = 0;
};

/// Raw distance divided by the mean distance of trees clustered from
/// random symmetric uniform(0,1) matrices over the same labels, so a
/// random tree scores about 1.
TreeEvaluation normalized_tree_distance(const PhyloTree& tau, const PhyloTree& gold,
                                        int n_random = 100, std::uint64_t seed = 1);

}  // namespace lexiphylo
