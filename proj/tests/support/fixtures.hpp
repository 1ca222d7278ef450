#pragma once

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "linkbox/gmeans.hpp"
#include "linkbox/kg.hpp"
#include "linkbox/rng.hpp"

namespace linkbox::testsupport {

// Assembles the three tab-separated inputs in memory.
class GraphBuilder {
public:
    GraphBuilder& entity(const std::string& id);
    GraphBuilder& category(const std::string& id);
    GraphBuilder& link(const std::string& source, const std::string& target);
    GraphBuilder& isa(const std::string& node, const std::string& category);

    std::string entities_tsv() const { return entities_.str(); }
    std::string links_tsv() const { return links_.str(); }
    std::string categories_tsv() const { return categories_.str(); }

    KnowledgeGraph build(bool strict = true) const;
    // Writes entities.tsv / links.tsv / categories.tsv into dir.
    void write_files(const std::string& dir) const;

private:
    std::ostringstream entities_;
    std::ostringstream links_;
    std::ostringstream categories_;
};

// The four-entity / four-category taxonomy example: c1 above e1,e2; c2 above
// c1 and e3; c4 above everything; e4 reaches c4 through c3.
GraphBuilder taxonomy_idf_example();

// Thirty hub articles chained by links, each linking two ten-entity topic
// blocks; blocks 0 and 5 share one category so inheritance exercises the
// equal-label merge. Articles a02..a30 form one inheritance chain.
GraphBuilder reuse_fixture();

// One article linking two clean ten-entity topic blocks.
GraphBuilder two_topic_article();

std::string block_entity(std::size_t block, std::size_t index);
std::string block_category(std::size_t block);

double normal_sample(Rng& rng);  // Box-Muller

// Points at ("x", x_base) with a Gaussian "y" component.
std::vector<DataPoint> gaussian_line_blob(Rng& rng, std::size_t count, double x_base,
                                          double y_mean, double y_sigma,
                                          const std::string& id_prefix);

}  // namespace linkbox::testsupport
