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
#include <string>
#include <vector>

#include "lexiphylo/distance.hpp"
#include "lexiphylo/tree.hpp"

namespace lexiphylo {

/// One agglomeration: clusters `a` and `b` (a < b) merge at `height` into a
/// cluster of `size` leaves. Leaves are 0..n-1; merge k creates id n+k.
struct LinkageStep {
    int a = 0;
    int b = 0;
    double height = 0.0;
    int size = 0;
};

/// Ward linkage over the matrix rows taken as feature vectors (pairwise
/// Euclidean row distances feed the Lance-Williams recurrence). Uses the
/// nearest-neighbor-chain algorithm; steps come out sorted by height.
/// NaN or negative entries, asymmetry, or a nonzero diagonal raise
/// std::invalid_argument.
std::vector<LinkageStep> ward_linkage(const DistanceMatrix& m);

/// Same recurrence but treating the matrix entries directly as pairwise
/// dissimilarities, for comparison runs.
std::vector<LinkageStep> ward_linkage_precomputed(const DistanceMatrix& m);

PhyloTree tree_from_linkage(const std::vector<LinkageStep>& steps,
                            const std::vector<std::string>& labels);

/// ward_linkage + tree assembly.
PhyloTree ward_cluster(const DistanceMatrix& m);

/// Inconsistency coefficient per internal node: its height standardized
/// against the merge heights within `depth` levels below it (zero standard
/// deviation yields 0).
std::map<int, double> inconsistency(const PhyloTree& tree, int depth = 2);

/// Flat clusters by the max-inconsistency criterion: maximal subtrees whose
/// every internal node has coefficient <= t_threshold become clusters.
/// Ids start at 1 in order of first appearance over the leaf order.
std::map<std::string, int> flat_clusters(const PhyloTree& tree, double t_threshold,
                                         int depth = 2);

}  // namespace lexiphylo
