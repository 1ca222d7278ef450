#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "linkbox/gmeans.hpp"
#include "linkbox/kg.hpp"
#include "linkbox/labeling.hpp"
#include "linkbox/rank_aggregation.hpp"

namespace linkbox {

struct ValidIndex {
    double inter = 0.0;
    double intra = 0.0;
    double valid = 0.0;  // inter / intra; +inf when intra == 0
};

// inter = mean pairwise centroid distance, intra = mean member-to-centroid
// distance; needs at least two nonempty clusters. Member vectors are looked
// up in `features`.
ValidIndex valid_index(const std::vector<Cluster>& clusters,
                       const std::map<std::string, SparseVector>& features);

// |truth ∩ top-K| / |truth|.
double m_at_k(const Ranking& ordering, const std::set<std::string>& truth, std::size_t k);

// Curve for K = 1..n; entry [k-1] holds M@K.
std::vector<double> m_at_k_curve(const Ranking& ordering, const std::set<std::string>& truth);

// Ideal curve of an ordering that places every truth element first.
std::vector<double> ideal_m_at_k_curve(std::size_t n, std::size_t truth_size);

// Mean of M@K_r / M@K_truth over K in [s,t]; K with a zero truth term is
// skipped from both sum and count.
double closeness(const std::vector<double>& curve_r, const std::vector<double>& curve_truth,
                 std::size_t s, std::size_t t);

// Judgment key: (cluster id, entity id) -> appropriately labeled?
using JudgmentMap = std::map<std::pair<std::string, std::string>, bool>;

// P(C,L) = mean over clusters of the judged-true member fraction. Every
// member must be judged; gaps raise an error that lists them.
double precision_pcl(const std::vector<LabeledCluster>& labeled,
                     const std::vector<std::string>& cluster_ids,
                     const JudgmentMap& judgments);

struct OverlapDistributions {
    struct CdfPoint {
        double upto = 0.0;  // overlap value at the bin's upper edge
        std::size_t article_count = 0;  // articles with max overlap <= upto
    };
    std::vector<CdfPoint> max_overlap_cdf;
    std::size_t article_total = 0;
    // k -> mean J(seed -> node) over all nodes at BFS distance k.
    std::vector<std::pair<std::size_t, double>> khop_mean;
};

OverlapDistributions overlap_distributions(const KnowledgeGraph& g, std::size_t max_hops = 5,
                                           std::size_t bins = 10,
                                           NeighborMode mode = NeighborMode::Out);

void write_max_overlap_csv(const OverlapDistributions& dist, std::ostream& out);
void write_khop_csv(const OverlapDistributions& dist, std::ostream& out);

}  // namespace linkbox
