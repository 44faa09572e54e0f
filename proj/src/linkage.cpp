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
#include "lexiphylo/linkage.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "lexiphylo/kernels.hpp"

namespace lexiphylo {

namespace {

void validate_matrix(const DistanceMatrix& m) {
    const std::size_t n = m.size();
    if (n < 2) throw std::invalid_argument("ward_linkage: need at least 2 labels");
    for (std::size_t i = 0; i < n; ++i) {
        if (m.at(i, i) != 0.0) {
            throw std::invalid_argument("ward_linkage: nonzero diagonal");
        }
        for (std::size_t j = 0; j < n; ++j) {
            const double v = m.at(i, j);
            if (std::isnan(v) || v < 0.0) {
                throw std::invalid_argument("ward_linkage: NaN or negative entry");
            }
            if (v != m.at(j, i)) {
                throw std::invalid_argument("ward_linkage: matrix not symmetric");
            }
        }
    }
}

/// Ward update of the distance from merged cluster (i u j) to k, all
/// distances unsquared.
double ward_update(double d_ik, double d_jk, double d_ij, double n_i, double n_j,
                   double n_k) {
    const double t = n_i + n_j + n_k;
    const double s = ((n_i + n_k) * d_ik * d_ik + (n_j + n_k) * d_jk * d_jk -
                      n_k * d_ij * d_ij) /
                     t;
    return std::sqrt(std::max(0.0, s));
}

struct RawMerge {
    int x = 0;  // slot indices (original singleton ids)
    int y = 0;
    double height = 0.0;
};

/// Nearest-neighbor-chain agglomeration over a working distance matrix held
/// in slots 0..n-1; merges land in the lower slot.
std::vector<RawMerge> nn_chain(std::vector<double>& dist, std::vector<double>& size,
                               std::size_t n) {
    auto d = [&](int i, int j) -> double& { return dist[i * n + j]; };

    std::vector<bool> active(n, true);
    std::vector<RawMerge> merges;
    merges.reserve(n - 1);
    std::vector<int> chain;

    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (chain.empty()) {
            for (std::size_t i = 0; i < n; ++i) {
                if (active[i]) {
                    chain.push_back(static_cast<int>(i));
                    break;
                }
            }
        }
        while (true) {
            const int x = chain.back();
            // nearest active neighbor, preferring the previous chain element
            // on ties so reciprocal pairs close
            int nearest = -1;
            double best = std::numeric_limits<double>::infinity();
            if (chain.size() >= 2) {
                nearest = chain[chain.size() - 2];
                best = d(x, nearest);
            }
            for (std::size_t i = 0; i < n; ++i) {
                if (!active[i] || static_cast<int>(i) == x) continue;
                if (d(x, static_cast<int>(i)) < best) {
                    best = d(x, static_cast<int>(i));
                    nearest = static_cast<int>(i);
                }
            }
            if (chain.size() >= 2 && nearest == chain[chain.size() - 2]) {
                break;  // reciprocal nearest neighbors
            }
            chain.push_back(nearest);
        }

        const int x = chain.back();
        chain.pop_back();
        const int y = chain.back();
        chain.pop_back();

        merges.push_back({x, y, d(x, y)});

        // fold x into y
        const double d_xy = d(x, y);
        for (std::size_t z = 0; z < n; ++z) {
            if (!active[z] || static_cast<int>(z) == x || static_cast<int>(z) == y) {
                continue;
            }
            const double updated = ward_update(d(x, static_cast<int>(z)),
                                               d(y, static_cast<int>(z)), d_xy, size[x],
                                               size[y], size[z]);
            d(y, static_cast<int>(z)) = updated;
            d(static_cast<int>(z), y) = updated;
        }
        size[y] += size[x];
        active[x] = false;
    }
    return merges;
}

/// Sorts merges by height and renumbers clusters like a standard linkage
/// matrix via union-find over singleton representatives.
std::vector<LinkageStep> relabel_sorted(std::vector<RawMerge> merges, std::size_t n) {
    std::stable_sort(merges.begin(), merges.end(),
                     [](const RawMerge& a, const RawMerge& b) {
                         return a.height < b.height;
                     });

    std::vector<int> cluster_id(n);
    std::iota(cluster_id.begin(), cluster_id.end(), 0);
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::vector<int> leaf_count(n, 1);

    auto find = [&](int i) {
        while (parent[i] != i) {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        return i;
    };

    std::vector<LinkageStep> steps;
    steps.reserve(merges.size());
    int next_id = static_cast<int>(n);
    for (const auto& m : merges) {
        const int rx = find(m.x);
        const int ry = find(m.y);
        LinkageStep step;
        step.a = std::min(cluster_id[rx], cluster_id[ry]);
        step.b = std::max(cluster_id[rx], cluster_id[ry]);
        step.height = m.height;
        step.size = leaf_count[rx] + leaf_count[ry];
        parent[rx] = ry;
        cluster_id[ry] = next_id++;
        leaf_count[ry] += leaf_count[rx];
        steps.push_back(step);
    }
    return steps;
}

std::vector<LinkageStep> ward_on_condensed(std::vector<double> dist, std::size_t n) {
    std::vector<double> size(n, 1.0);
    auto merges = nn_chain(dist, size, n);
    return relabel_sorted(std::move(merges), n);
}

}  // namespace

std::vector<LinkageStep> ward_linkage(const DistanceMatrix& m) {
    validate_matrix(m);
    const std::size_t n = m.size();
    // rows as feature vectors
    std::vector<double> dist(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = std::sqrt(kernels::squared_euclidean(
                m.values.data() + i * n, m.values.data() + j * n, n));
            dist[i * n + j] = d;
            dist[j * n + i] = d;
        }
    }
    return ward_on_condensed(std::move(dist), n);
}

std::vector<LinkageStep> ward_linkage_precomputed(const DistanceMatrix& m) {
    validate_matrix(m);
    return ward_on_condensed(m.values, m.size());
}

PhyloTree tree_from_linkage(const std::vector<LinkageStep>& steps,
                            const std::vector<std::string>& labels) {
    PhyloTree tree;
    for (const auto& label : labels) tree.add_leaf(label);
    for (const auto& step : steps) {
        tree.add_internal({step.a, step.b}, step.height);
    }
    tree.root = static_cast<int>(tree.nodes.size()) - 1;
    return tree;
}

PhyloTree ward_cluster(const DistanceMatrix& m) {
    return tree_from_linkage(ward_linkage(m), m.labels);
}

namespace {

void collect_heights(const PhyloTree& tree, int node, int remaining,
                     std::vector<double>& out) {
    if (tree.is_leaf(node) || remaining == 0) return;
    out.push_back(tree.nodes[node].height);
    for (const int c : tree.nodes[node].children) {
        collect_heights(tree, c, remaining - 1, out);
    }
}

}  // namespace

std::map<int, double> inconsistency(const PhyloTree& tree, int depth) {
    if (depth < 1) throw std::invalid_argument("inconsistency: depth must be >= 1");
    std::map<int, double> coeff;
    std::vector<double> heights;
    for (int i = 0; i < static_cast<int>(tree.nodes.size()); ++i) {
        if (tree.is_leaf(i)) continue;
        heights.clear();
        collect_heights(tree, i, depth, heights);
        const double n = static_cast<double>(heights.size());
        double mean = 0.0;
        for (const double h : heights) mean += h;
        mean /= n;
        double var = 0.0;
        for (const double h : heights) var += (h - mean) * (h - mean);
        var /= n;  // population variance, matching the usual dendrogram tooling
        const double sd = std::sqrt(var);
        coeff[i] = sd > 0.0 ? (tree.nodes[i].height - mean) / sd : 0.0;
    }
    return coeff;
}

std::map<std::string, int> flat_clusters(const PhyloTree& tree, double t_threshold,
                                         int depth) {
    const auto coeff = inconsistency(tree, depth);

    // max coefficient over each internal node's subtree
    std::vector<double> max_coeff(tree.nodes.size(), 0.0);
    // nodes vector is built bottom-up for clustering trees, but recompute
    // generically to stay safe for parsed trees
    std::vector<int> order;
    order.reserve(tree.nodes.size());
    {
        std::vector<int> stack{tree.root};
        while (!stack.empty()) {
            const int node = stack.back();
            stack.pop_back();
            order.push_back(node);
            for (const int c : tree.nodes[node].children) stack.push_back(c);
        }
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const int node = *it;
        if (tree.is_leaf(node)) continue;
        double mx = coeff.at(node);
        for (const int c : tree.nodes[node].children) {
            if (!tree.is_leaf(c)) mx = std::max(mx, max_coeff[c]);
        }
        max_coeff[node] = mx;
    }

    // cluster root of a leaf = its highest ancestor with an accepted subtree
    std::map<std::string, int> assignment;
    std::map<int, int> cluster_ids;
    int next_id = 1;
    for (const int leaf : tree.leaf_indices()) {
        int cluster_root = leaf;
        for (int a = tree.nodes[leaf].parent; a != -1; a = tree.nodes[a].parent) {
            if (max_coeff[a] <= t_threshold) cluster_root = a;
        }
        const auto [it, inserted] = cluster_ids.emplace(cluster_root, next_id);
        if (inserted) ++next_id;
        assignment[tree.nodes[leaf].label] = it->second;
    }
    return assignment;
}

}  // namespace lexiphylo
