#include "linkbox/relatedness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace linkbox {

namespace {

std::size_t intersection_size(const std::vector<std::string>& a,
                              const std::vector<std::string>& b) {
    std::size_t count = 0;
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (*ia < *ib) {
            ++ia;
        } else if (*ib < *ia) {
            ++ib;
        } else {
            ++count;
            ++ia;
            ++ib;
        }
    }
    return count;
}

}  // namespace

double idf_link(const KnowledgeGraph& g, const std::string& e) {
    const double n = static_cast<double>(g.n_linking(e));
    const double total = static_cast<double>(g.article_count);
    const double raw = std::log((total - n + 0.5) / (n + 0.5));
    return std::max(0.0, raw);
}

RelatednessScore pmi(const CoocStats& stats, const std::string& x, const std::string& y,
                     double floor) {
    const std::size_t joint = stats.pairs(x, y);
    if (joint == 0 || stats.total_pairs == 0) return {floor, Measure::Pmi};
    const double total = static_cast<double>(stats.total_pairs);
    const double pxy = static_cast<double>(joint) / total;
    const double px = static_cast<double>(stats.occurrences(x)) / total;
    const double py = static_cast<double>(stats.occurrences(y)) / total;
    return {std::log(pxy / (px * py)), Measure::Pmi};
}

RelatednessScore wjc(const KnowledgeGraph& g, const std::string& x, const std::string& y) {
    const std::vector<std::string>& nx = g.neighbors_sorted(x);
    const std::vector<std::string>& ny = g.neighbors_sorted(y);

    double inter_weight = 0.0;
    double union_weight = 0.0;
    std::size_t inter_count = 0;
    std::size_t union_count = 0;

    auto ix = nx.begin();
    auto iy = ny.begin();
    while (ix != nx.end() || iy != ny.end()) {
        const std::string* e;
        bool shared = false;
        if (iy == ny.end() || (ix != nx.end() && *ix < *iy)) {
            e = &*ix++;
        } else if (ix == nx.end() || *iy < *ix) {
            e = &*iy++;
        } else {
            e = &*ix;
            shared = true;
            ++ix;
            ++iy;
        }
        const double w = idf_link(g, *e);
        union_weight += w;
        ++union_count;
        if (shared) {
            inter_weight += w;
            ++inter_count;
        }
    }

    if (union_count == 0) return {0.0, Measure::Wjc};
    if (union_weight == 0.0) {
        // All weights clamped to zero; fall back to the unweighted Jaccard.
        return {static_cast<double>(inter_count) / static_cast<double>(union_count),
                Measure::Wjc};
    }
    return {inter_weight / union_weight, Measure::Wjc};
}

RelatednessScore sr(const KnowledgeGraph& g, const std::string& a, const std::string& b) {
    const std::vector<std::string>& na = g.neighbors_sorted(a);
    const std::vector<std::string>& nb = g.neighbors_sorted(b);
    const std::size_t inter = intersection_size(na, nb);
    if (inter == 0) return {std::numeric_limits<double>::infinity(), Measure::Sr};

    const double lo = static_cast<double>(std::min(na.size(), nb.size()));
    const double hi = static_cast<double>(std::max(na.size(), nb.size()));
    const double total = static_cast<double>(g.article_count);
    const double denom = std::log(total) - std::log(lo);
    if (denom <= 0.0)
        throw std::domain_error("sr undefined: min neighborhood size reaches article count");
    return {(std::log(hi) - std::log(static_cast<double>(inter))) / denom, Measure::Sr};
}

bool is_noise_link(const KnowledgeGraph& g, const std::string& article,
                   const std::string& linked, double threshold) {
    return sr(g, article, linked).value > threshold;
}

NoiseHistogram noise_distribution(const KnowledgeGraph& g, double threshold,
                                  std::size_t bin_count) {
    if (bin_count == 0) throw std::invalid_argument("bin_count must be positive");
    NoiseHistogram hist;
    hist.bins.resize(bin_count);
    for (std::size_t i = 0; i < bin_count; ++i) {
        hist.bins[i].low = static_cast<double>(i) / static_cast<double>(bin_count);
        hist.bins[i].high = static_cast<double>(i + 1) / static_cast<double>(bin_count);
    }
    for (const auto& [article, targets] : g.links) {
        if (targets.empty()) continue;
        std::size_t noisy = 0;
        for (const std::string& linked : targets) {
            if (is_noise_link(g, article, linked, threshold)) ++noisy;
        }
        const double fraction = static_cast<double>(noisy) / static_cast<double>(targets.size());
        std::size_t bin = static_cast<std::size_t>(fraction * static_cast<double>(bin_count));
        bin = std::min(bin, bin_count - 1);
        ++hist.bins[bin].article_count;
        ++hist.article_total;
    }
    return hist;
}

void write_noise_csv(const NoiseHistogram& hist, std::ostream& out) {
    out << "bin_low,bin_high,article_count\n";
    for (const auto& bin : hist.bins) {
        out << bin.low << ',' << bin.high << ',' << bin.article_count << '\n';
    }
}

}  // namespace linkbox
