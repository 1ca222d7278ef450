#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "linkbox/kg.hpp"

namespace linkbox {

enum class TieBreak { IdAscending, IdDescending };

// Bijection entity -> {1..n}; position 1 is the most related element.
struct Ranking {
    std::map<std::string, std::size_t> position;

    std::size_t size() const { return position.size(); }
    std::size_t at(const std::string& id) const;
};

Ranking rank_by(const std::map<std::string, double>& values, bool higher_is_better,
                TieBreak tie_break = TieBreak::IdAscending);

struct AggregationConfig {
    double beta = 1.0;
    double threshold = 0.77;  // normalized-score cutoff separating noise
    TieBreak tie_break = TieBreak::IdAscending;
};

// Position-dependent mixing weight 1 / (1 + (r1/(n-r2))^-beta).
// r2 == n returns the limit value 1.
double position_alpha(std::size_t r1_pos, std::size_t r2_pos, std::size_t n, double beta);

// alpha*r1 + (1-alpha)*r2; always within [min(r1,r2), max(r1,r2)] ⊆ [1,n].
double aggregate_score(std::size_t r1_pos, std::size_t r2_pos, std::size_t n, double beta);

// Rational closed form of the aggregate for beta == 1:
// (n*r2 + r1^2 - r2^2) / (n - r2 + r1). Kept as the algebraic cross-check.
double aggregate_score_beta1(std::size_t r1_pos, std::size_t r2_pos, std::size_t n);

struct FilterResult {
    std::vector<std::string> related;  // ascending normalized score, ties by id
    std::vector<std::string> noise;
    std::map<std::string, double> scores;  // normalized to [0,1]
};

// r1 = ranking by PMI(article, .), r2 = ranking by WJC(article, .).
// Entities whose normalized aggregate exceeds the threshold are noise.
FilterResult filter_noise(const KnowledgeGraph& g, const CoocStats& stats,
                          const std::string& article, const AggregationConfig& config = {});

}  // namespace linkbox
