#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "linkbox/kg.hpp"

namespace linkbox {

enum class Measure { Pmi, Wjc, Sr };

struct RelatednessScore {
    double value = 0.0;
    Measure measure = Measure::Pmi;
};

struct RelatednessConfig {
    // Floor returned for pairs that never co-occur, so PMI stays totally
    // ordered instead of hitting -inf.
    double pmi_floor = -30.0;
    // sr above this classifies the link as noise. The published 0.53 assumes
    // an unspecified log base; treated as a calibration constant.
    double sr_noise_threshold = 0.53;
};

// log((N - n(e) + 0.5) / (n(e) + 0.5)), clamped at 0 so WJC stays in [0,1].
double idf_link(const KnowledgeGraph& g, const std::string& e);

// log(p(x,y) / (p(x) p(y))) with probabilities over co-occurrence pairs.
RelatednessScore pmi(const CoocStats& stats, const std::string& x, const std::string& y,
                     double floor = -30.0);

// idf-weighted Jaccard over shared out-neighborhoods, in [0,1].
RelatednessScore wjc(const KnowledgeGraph& g, const std::string& x, const std::string& y);

// Google-distance style dissimilarity over linked-entity sets; larger means
// less related. Empty intersection yields +inf.
RelatednessScore sr(const KnowledgeGraph& g, const std::string& a, const std::string& b);

bool is_noise_link(const KnowledgeGraph& g, const std::string& article,
                   const std::string& linked, double threshold = 0.53);

struct NoiseHistogram {
    struct Bin {
        double low = 0.0;
        double high = 0.0;
        std::size_t article_count = 0;
    };
    std::vector<Bin> bins;
    std::size_t article_total = 0;  // articles with at least one link
};

// Per-article fraction of noisy links (sr > threshold), binned over [0,1].
NoiseHistogram noise_distribution(const KnowledgeGraph& g, double threshold = 0.53,
                                  std::size_t bin_count = 10);

// CSV: bin_low,bin_high,article_count
void write_noise_csv(const NoiseHistogram& hist, std::ostream& out);

}  // namespace linkbox
