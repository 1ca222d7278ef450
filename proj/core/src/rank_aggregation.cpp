#include "linkbox/rank_aggregation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "linkbox/relatedness.hpp"

namespace linkbox {

std::size_t Ranking::at(const std::string& id) const {
    auto it = position.find(id);
    if (it == position.end()) throw std::out_of_range("unranked id: " + id);
    return it->second;
}

Ranking rank_by(const std::map<std::string, double>& values, bool higher_is_better,
                TieBreak tie_break) {
    if (values.empty()) throw std::invalid_argument("rank_by: empty input");

    std::vector<std::pair<std::string, double>> ordered(values.begin(), values.end());
    std::sort(ordered.begin(), ordered.end(), [&](const auto& a, const auto& b) {
        if (a.second != b.second)
            return higher_is_better ? a.second > b.second : a.second < b.second;
        return tie_break == TieBreak::IdAscending ? a.first < b.first : a.first > b.first;
    });

    Ranking r;
    for (std::size_t i = 0; i < ordered.size(); ++i) r.position[ordered[i].first] = i + 1;
    return r;
}

namespace {

void check_positions(std::size_t r1, std::size_t r2, std::size_t n, double beta) {
    if (beta <= 0.0) throw std::invalid_argument("beta must be positive");
    if (n == 0 || r1 == 0 || r2 == 0 || r1 > n || r2 > n)
        throw std::invalid_argument("rank positions must lie in 1..n");
}

}  // namespace

double position_alpha(std::size_t r1_pos, std::size_t r2_pos, std::size_t n, double beta) {
    check_positions(r1_pos, r2_pos, n, beta);
    if (r2_pos == n) return 1.0;  // ratio diverges; sigmoid limit
    const double ratio = static_cast<double>(r1_pos) / static_cast<double>(n - r2_pos);
    return 1.0 / (1.0 + std::pow(ratio, -beta));
}

double aggregate_score(std::size_t r1_pos, std::size_t r2_pos, std::size_t n, double beta) {
    const double alpha = position_alpha(r1_pos, r2_pos, n, beta);
    return alpha * static_cast<double>(r1_pos) +
           (1.0 - alpha) * static_cast<double>(r2_pos);
}

double aggregate_score_beta1(std::size_t r1_pos, std::size_t r2_pos, std::size_t n) {
    check_positions(r1_pos, r2_pos, n, 1.0);
    const double r1 = static_cast<double>(r1_pos);
    const double r2 = static_cast<double>(r2_pos);
    const double total = static_cast<double>(n);
    return (total * r2 + r1 * r1 - r2 * r2) / (total - r2 + r1);
}

FilterResult filter_noise(const KnowledgeGraph& g, const CoocStats& stats,
                          const std::string& article, const AggregationConfig& config) {
    if (config.threshold < 0.0 || config.threshold > 1.0)
        throw std::invalid_argument("threshold must lie in [0,1]");

    FilterResult result;
    const std::vector<std::string>& linked = g.linked_entities(article);
    if (linked.empty()) return result;

    if (linked.size() == 1) {
        result.scores[linked.front()] = 0.0;
        result.related.push_back(linked.front());
        return result;
    }

    std::map<std::string, double> by_pmi;
    std::map<std::string, double> by_wjc;
    for (const std::string& e : linked) {
        by_pmi[e] = pmi(stats, article, e).value;
        by_wjc[e] = wjc(g, article, e).value;
    }
    const Ranking r1 = rank_by(by_pmi, /*higher_is_better=*/true, config.tie_break);
    const Ranking r2 = rank_by(by_wjc, /*higher_is_better=*/true, config.tie_break);

    const std::size_t n = linked.size();
    for (const std::string& e : linked) {
        const double score = aggregate_score(r1.at(e), r2.at(e), n, config.beta);
        result.scores[e] = (score - 1.0) / (static_cast<double>(n) - 1.0);
    }

    std::vector<std::string> ordered = linked;
    std::sort(ordered.begin(), ordered.end(), [&](const std::string& a, const std::string& b) {
        const double sa = result.scores.at(a);
        const double sb = result.scores.at(b);
        if (sa != sb) return sa < sb;
        return a < b;
    });
    for (const std::string& e : ordered) {
        if (result.scores.at(e) > config.threshold) {
            result.noise.push_back(e);
        } else {
            result.related.push_back(e);
        }
    }
    return result;
}

}  // namespace linkbox
