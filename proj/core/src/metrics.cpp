#include "linkbox/metrics.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "linkbox/scheduler.hpp"

namespace linkbox {

ValidIndex valid_index(const std::vector<Cluster>& clusters,
                       const std::map<std::string, SparseVector>& features) {
    if (clusters.size() < 2)
        throw std::invalid_argument("valid_index needs at least two clusters");
    for (const Cluster& c : clusters) {
        if (c.members.empty()) throw std::invalid_argument("valid_index: empty cluster");
    }

    ValidIndex out;
    const std::size_t k = clusters.size();
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
            out.inter += cosine_distance(clusters[i].centroid, clusters[j].centroid);
        }
    }
    out.inter *= 2.0 / (static_cast<double>(k) * static_cast<double>(k - 1));

    for (const Cluster& c : clusters) {
        double sum = 0.0;
        for (const std::string& member : c.members) {
            sum += cosine_distance(c.centroid, features.at(member));
        }
        out.intra += sum / static_cast<double>(c.members.size());
    }
    out.intra /= static_cast<double>(k);

    out.valid = out.intra == 0.0 ? std::numeric_limits<double>::infinity()
                                 : out.inter / out.intra;
    return out;
}

double m_at_k(const Ranking& ordering, const std::set<std::string>& truth, std::size_t k) {
    if (truth.empty()) throw std::invalid_argument("m_at_k: empty truth set");
    if (k > ordering.size()) throw std::invalid_argument("m_at_k: K exceeds ordering size");
    std::size_t hits = 0;
    for (const auto& [id, pos] : ordering.position) {
        if (pos <= k && truth.count(id)) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(truth.size());
}

std::vector<double> m_at_k_curve(const Ranking& ordering, const std::set<std::string>& truth) {
    if (truth.empty()) throw std::invalid_argument("m_at_k_curve: empty truth set");
    const std::size_t n = ordering.size();
    std::vector<bool> hit_at(n + 1, false);
    for (const auto& [id, pos] : ordering.position) {
        if (truth.count(id)) hit_at[pos] = true;
    }
    std::vector<double> curve(n, 0.0);
    std::size_t hits = 0;
    for (std::size_t k = 1; k <= n; ++k) {
        if (hit_at[k]) ++hits;
        curve[k - 1] = static_cast<double>(hits) / static_cast<double>(truth.size());
    }
    return curve;
}

std::vector<double> ideal_m_at_k_curve(std::size_t n, std::size_t truth_size) {
    if (truth_size == 0) throw std::invalid_argument("ideal curve: empty truth set");
    std::vector<double> curve(n, 0.0);
    for (std::size_t k = 1; k <= n; ++k) {
        curve[k - 1] = static_cast<double>(std::min(k, truth_size)) /
                       static_cast<double>(truth_size);
    }
    return curve;
}

double closeness(const std::vector<double>& curve_r, const std::vector<double>& curve_truth,
                 std::size_t s, std::size_t t) {
    if (s < 1 || s > t || t > curve_r.size() || curve_r.size() != curve_truth.size())
        throw std::invalid_argument("closeness: bad range");
    double sum = 0.0;
    std::size_t counted = 0;
    for (std::size_t k = s; k <= t; ++k) {
        const double truth = curve_truth[k - 1];
        if (truth == 0.0) continue;  // undefined ratio, skipped from both sides
        sum += curve_r[k - 1] / truth;
        ++counted;
    }
    if (counted == 0) throw std::domain_error("closeness: truth curve is zero on [s,t]");
    return sum / static_cast<double>(counted);
}

double precision_pcl(const std::vector<LabeledCluster>& labeled,
                     const std::vector<std::string>& cluster_ids,
                     const JudgmentMap& judgments) {
    if (labeled.empty()) throw std::invalid_argument("precision_pcl: no clusters");
    if (labeled.size() != cluster_ids.size())
        throw std::invalid_argument("precision_pcl: id/cluster count mismatch");

    std::vector<std::string> missing;
    double sum = 0.0;
    for (std::size_t i = 0; i < labeled.size(); ++i) {
        std::size_t matched = 0;
        for (const std::string& member : labeled[i].cluster.members) {
            auto it = judgments.find({cluster_ids[i], member});
            if (it == judgments.end()) {
                missing.push_back(cluster_ids[i] + "/" + member);
                continue;
            }
            if (it->second) ++matched;
        }
        sum += static_cast<double>(matched) /
               static_cast<double>(labeled[i].cluster.members.size());
    }
    if (!missing.empty()) {
        std::ostringstream os;
        os << "missing judgments:";
        for (const std::string& gap : missing) os << ' ' << gap;
        throw std::runtime_error(os.str());
    }
    return sum / static_cast<double>(labeled.size());
}

OverlapDistributions overlap_distributions(const KnowledgeGraph& g, std::size_t max_hops,
                                           std::size_t bins, NeighborMode mode) {
    if (bins == 0) throw std::invalid_argument("bins must be positive");
    OverlapDistributions dist;

    std::vector<double> max_overlaps;
    for (const auto& [article, targets] : g.links) {
        if (targets.empty()) continue;
        double best = 0.0;
        for (const std::string& v : targets) {
            best = std::max(best, overlap_jaccard(g, article, v, mode));
        }
        max_overlaps.push_back(best);
    }
    dist.article_total = max_overlaps.size();
    dist.max_overlap_cdf.resize(bins + 1);
    for (std::size_t i = 0; i <= bins; ++i) {
        const double upto = static_cast<double>(i) / static_cast<double>(bins);
        dist.max_overlap_cdf[i].upto = upto;
        dist.max_overlap_cdf[i].article_count = static_cast<std::size_t>(std::count_if(
            max_overlaps.begin(), max_overlaps.end(), [&](double v) { return v <= upto; }));
    }

    std::vector<double> sums(max_hops + 1, 0.0);
    std::vector<std::size_t> counts(max_hops + 1, 0);
    for (const std::string& seed : g.entity_ids()) {
        std::map<std::string, std::size_t> hop{{seed, 0}};
        std::deque<std::string> frontier{seed};
        while (!frontier.empty()) {
            const std::string node = frontier.front();
            frontier.pop_front();
            const std::size_t next_hop = hop.at(node) + 1;
            if (next_hop > max_hops) continue;
            for (const std::string& target : g.neighbors(node, mode)) {
                if (hop.count(target)) continue;
                hop[target] = next_hop;
                frontier.push_back(target);
                sums[next_hop] += overlap_jaccard(g, seed, target, mode);
                ++counts[next_hop];
            }
        }
    }
    for (std::size_t k = 1; k <= max_hops; ++k) {
        if (counts[k] == 0) continue;
        dist.khop_mean.emplace_back(k, sums[k] / static_cast<double>(counts[k]));
    }
    return dist;
}

void write_max_overlap_csv(const OverlapDistributions& dist, std::ostream& out) {
    out << "overlap_upto,article_count,article_total\n";
    for (const auto& point : dist.max_overlap_cdf) {
        out << point.upto << ',' << point.article_count << ',' << dist.article_total << '\n';
    }
}

void write_khop_csv(const OverlapDistributions& dist, std::ostream& out) {
    out << "k,mean_overlap\n";
    for (const auto& [k, mean] : dist.khop_mean) out << k << ',' << mean << '\n';
}

}  // namespace linkbox
