#pragma once

#include <iosfwd>
#include <string>

#include "linkbox/gmeans.hpp"
#include "linkbox/labeling.hpp"
#include "linkbox/rank_aggregation.hpp"
#include "linkbox/relatedness.hpp"
#include "linkbox/scheduler.hpp"
#include "linkbox/taxonomy.hpp"

namespace linkbox {

// Every published constant lives here with its paper default: 0.53 (noise
// distance), 0.77 (aggregation cutoff), beta 1, tau 0.05, zeta 0.8,
// significance 0.0001, iteration 5.
struct PipelineConfig {
    RelatednessConfig relatedness;
    AggregationConfig aggregation;
    TaxonomyConfig taxonomy;
    ClusterConfig cluster;
    LabelConfig label;
    EcgConfig ecg;
    bool reuse = true;

    void validate() const;  // throws std::invalid_argument
};

// INI-style sections of key = value lines; '#' and ';' start comments.
PipelineConfig parse_config(std::istream& in);
PipelineConfig load_config_file(const std::string& path);
void write_config(const PipelineConfig& config, std::ostream& out);

}  // namespace linkbox
