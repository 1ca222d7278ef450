#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "linkbox/rng.hpp"
#include "linkbox/sparse_vector.hpp"

namespace linkbox {

struct ClusterConfig {
    double significance = 0.0001;
    std::size_t max_iter = 5;
    std::uint64_t rng_seed = 1;
    std::size_t min_cluster_size = 2;  // splits producing a smaller side are rejected
    std::size_t ad_min_points = 8;     // below this the split test reports Gaussian
};

struct Cluster {
    std::vector<std::string> members;  // sorted
    SparseVector centroid;             // arithmetic mean of member vectors
};

struct DataPoint {
    std::string id;
    SparseVector vec;
};

// k-means++ seed pair: first uniform, second proportional to squared cosine
// distance from the first. Identical inputs degenerate to the first two ids.
std::pair<std::string, std::string> kmeanspp_pair(const std::vector<DataPoint>& points,
                                                  Rng& rng);

struct KMeans2Result {
    Cluster first;
    Cluster second;
    // Total within-cluster cost after each accepted iteration; nonincreasing.
    std::vector<double> cost_trace;
    std::size_t iterations = 0;
};

// Lloyd iterations with k=2 under cosine distance until the assignment is
// stable or max_iter is hit. An iteration that would raise the cost is
// rejected and terminates the loop. An empty side is repaired by moving the
// point farthest from the other centroid.
KMeans2Result kmeans2(const std::vector<DataPoint>& points, const SparseVector& c1,
                      const SparseVector& c2, std::size_t max_iter);

// Anderson-Darling A^2 against the standard normal, on an already
// standardized sample sorted ascending.
double anderson_darling_a2(const std::vector<double>& sorted_z);

// Small-sample corrected statistic A*^2 = A^2 (1 + 4/n - 25/n^2) for a raw
// sample; standardizes to zero mean and unit variance internally.
double anderson_darling_a2star(std::vector<double> sample);

// Critical value for A*^2 at the given significance (both distribution
// parameters estimated). Table anchored at 0.0001 -> 1.8692, log-interpolated
// between entries.
double anderson_darling_critical(double significance);

// Projection of the points onto (c1 - c2)/|c1 - c2|.
std::vector<double> project_onto_center_difference(const std::vector<DataPoint>& points,
                                                   const SparseVector& c1,
                                                   const SparseVector& c2);

// true = projected data looks Gaussian, keep the group unsplit.
bool anderson_darling_split_test(const std::vector<DataPoint>& points, const SparseVector& c1,
                                 const SparseVector& c2, double significance,
                                 std::size_t min_points = 8);

// Recursive bi-partition: k-means++ seeds, 2-means refinement, Gaussianity
// test on the projection. Deterministic for a fixed seed; sibling branches
// draw from independently derived streams.
std::vector<Cluster> gmeans_cluster(const std::vector<DataPoint>& points,
                                    const ClusterConfig& config);

}  // namespace linkbox
