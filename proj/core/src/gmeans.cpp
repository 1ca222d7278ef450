#include "linkbox/gmeans.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace linkbox {

namespace {

constexpr double kCostSlack = 1e-12;

SparseVector centroid_of(const std::vector<DataPoint>& points,
                         const std::vector<std::size_t>& members) {
    std::vector<const SparseVector*> vecs;
    vecs.reserve(members.size());
    for (std::size_t i : members) vecs.push_back(&points[i].vec);
    return mean_vector(vecs);
}

Cluster make_cluster(const std::vector<DataPoint>& points,
                     const std::vector<std::size_t>& members) {
    Cluster c;
    c.centroid = centroid_of(points, members);
    c.members.reserve(members.size());
    for (std::size_t i : members) c.members.push_back(points[i].id);
    std::sort(c.members.begin(), c.members.end());
    return c;
}

double partition_cost(const std::vector<DataPoint>& points,
                      const std::vector<bool>& in_second, const SparseVector& c1,
                      const SparseVector& c2) {
    double cost = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        cost += cosine_distance(points[i].vec, in_second[i] ? c2 : c1);
    }
    return cost;
}

// Standard normal CDF via erfc; full double precision on both tails.
double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double clamped_log(double p) {
    return std::log(std::max(p, std::numeric_limits<double>::min()));
}

}  // namespace

std::pair<std::string, std::string> kmeanspp_pair(const std::vector<DataPoint>& points,
                                                  Rng& rng) {
    if (points.size() < 2) throw std::invalid_argument("kmeanspp_pair needs >= 2 points");

    const std::size_t first = rng.next_below(points.size());
    std::vector<double> sq(points.size(), 0.0);
    double total = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const double d = cosine_distance(points[i].vec, points[first].vec);
        sq[i] = d * d;
        total += sq[i];
    }

    std::size_t second;
    if (total == 0.0) {
        // All points identical: any distinct index works.
        second = first == 0 ? 1 : 0;
    } else {
        const double pick = rng.next_double() * total;
        double running = 0.0;
        std::size_t chosen = points.size();
        for (std::size_t i = 0; i < points.size(); ++i) {
            if (sq[i] == 0.0) continue;
            running += sq[i];
            chosen = i;  // keep the last positive-mass index as rounding fallback
            if (running >= pick) break;
        }
        second = chosen;
    }
    return {points[first].id, points[second].id};
}

KMeans2Result kmeans2(const std::vector<DataPoint>& points, const SparseVector& c1,
                      const SparseVector& c2, std::size_t max_iter) {
    if (points.size() < 2) throw std::invalid_argument("kmeans2 needs >= 2 points");
    if (max_iter == 0) throw std::invalid_argument("max_iter must be >= 1");

    SparseVector center1 = c1;
    SparseVector center2 = c2;
    std::vector<bool> assignment(points.size(), false);
    bool have_assignment = false;
    double best_cost = std::numeric_limits<double>::infinity();

    KMeans2Result result;
    for (std::size_t iter = 0; iter < max_iter; ++iter) {
        std::vector<bool> next(points.size(), false);
        for (std::size_t i = 0; i < points.size(); ++i) {
            next[i] = cosine_distance(points[i].vec, center2) <
                      cosine_distance(points[i].vec, center1);
        }

        // Repair an empty side with the point farthest from the full side.
        const std::size_t second_count =
            static_cast<std::size_t>(std::count(next.begin(), next.end(), true));
        if (second_count == 0 || second_count == points.size()) {
            const bool empty_side = second_count == 0;
            const SparseVector& full_center = empty_side ? center1 : center2;
            std::size_t farthest = 0;
            double far_dist = -1.0;
            for (std::size_t i = 0; i < points.size(); ++i) {
                const double d = cosine_distance(points[i].vec, full_center);
                if (d > far_dist) {
                    far_dist = d;
                    farthest = i;
                }
            }
            next[farthest] = empty_side;
        }

        if (have_assignment && next == assignment) break;

        std::vector<std::size_t> side1, side2;
        for (std::size_t i = 0; i < points.size(); ++i) {
            (next[i] ? side2 : side1).push_back(i);
        }
        SparseVector new_c1 = centroid_of(points, side1);
        SparseVector new_c2 = centroid_of(points, side2);
        const double cost = partition_cost(points, next, new_c1, new_c2);
        if (have_assignment && cost > best_cost + kCostSlack) break;

        assignment = std::move(next);
        have_assignment = true;
        center1 = std::move(new_c1);
        center2 = std::move(new_c2);
        best_cost = cost;
        result.cost_trace.push_back(cost);
        ++result.iterations;
    }

    std::vector<std::size_t> side1, side2;
    for (std::size_t i = 0; i < points.size(); ++i) {
        (assignment[i] ? side2 : side1).push_back(i);
    }
    result.first = make_cluster(points, side1);
    result.second = make_cluster(points, side2);
    return result;
}

double anderson_darling_a2(const std::vector<double>& sorted_z) {
    const std::size_t n = sorted_z.size();
    if (n == 0) throw std::invalid_argument("empty sample");
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double lo = clamped_log(normal_cdf(sorted_z[i]));
        const double hi = clamped_log(1.0 - normal_cdf(sorted_z[n - 1 - i]));
        sum += static_cast<double>(2 * i + 1) * (lo + hi);
    }
    const double nd = static_cast<double>(n);
    return -nd - sum / nd;
}

double anderson_darling_a2star(std::vector<double> sample) {
    const std::size_t n = sample.size();
    if (n < 2) throw std::invalid_argument("need >= 2 samples");

    double mean = 0.0;
    for (double v : sample) mean += v;
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (double v : sample) var += (v - mean) * (v - mean);
    var /= static_cast<double>(n - 1);
    if (var <= 0.0) return 0.0;  // point mass; nothing to test

    const double sd = std::sqrt(var);
    for (double& v : sample) v = (v - mean) / sd;
    std::sort(sample.begin(), sample.end());

    const double nd = static_cast<double>(n);
    return anderson_darling_a2(sample) * (1.0 + 4.0 / nd - 25.0 / (nd * nd));
}

double anderson_darling_critical(double significance) {
    if (significance <= 0.0 || significance >= 0.5)
        throw std::invalid_argument("significance must lie in (0, 0.5)");

    // Upper-tail critical values, both parameters estimated. The last entry
    // anchors the working significance 0.0001.
    static const std::vector<std::pair<double, double>> table = {
        {0.25, 0.470},  {0.15, 0.561}, {0.10, 0.631},  {0.05, 0.752},
        {0.025, 0.873}, {0.01, 1.035}, {0.005, 1.159}, {0.0001, 1.8692},
    };

    for (const auto& [level, value] : table) {
        if (significance == level) return value;
    }
    if (significance >= table.front().first) return table.front().second;
    for (std::size_t i = 1; i < table.size(); ++i) {
        if (significance >= table[i].first) {
            const double la = std::log(table[i - 1].first);
            const double lb = std::log(table[i].first);
            const double t = (std::log(significance) - la) / (lb - la);
            return table[i - 1].second + t * (table[i].second - table[i - 1].second);
        }
    }
    // Extrapolate below the table with the slope of its final segment.
    const auto& a = table[table.size() - 2];
    const auto& b = table.back();
    const double slope = (b.second - a.second) / (std::log(b.first) - std::log(a.first));
    return b.second + slope * (std::log(significance) - std::log(b.first));
}

std::vector<double> project_onto_center_difference(const std::vector<DataPoint>& points,
                                                   const SparseVector& c1,
                                                   const SparseVector& c2) {
    SparseVector direction = c1;
    direction.subtract(c2);
    const double len = direction.norm();
    if (len == 0.0) return {};
    direction.scale(1.0 / len);
    std::vector<double> projected;
    projected.reserve(points.size());
    for (const DataPoint& p : points) projected.push_back(p.vec.dot(direction));
    return projected;
}

bool anderson_darling_split_test(const std::vector<DataPoint>& points, const SparseVector& c1,
                                 const SparseVector& c2, double significance,
                                 std::size_t min_points) {
    if (points.size() < std::max<std::size_t>(min_points, 2)) return true;
    std::vector<double> projected = project_onto_center_difference(points, c1, c2);
    if (projected.empty()) return true;  // no split direction
    const double statistic = anderson_darling_a2star(std::move(projected));
    return statistic <= anderson_darling_critical(significance);
}

namespace {

void bipartition(const std::vector<DataPoint>& points, std::vector<std::size_t> group,
                 const ClusterConfig& config, const Rng& branch_rng,
                 std::vector<Cluster>& out) {
    if (group.size() < 2) {
        out.push_back(make_cluster(points, group));
        return;
    }

    std::vector<DataPoint> local;
    local.reserve(group.size());
    for (std::size_t i : group) local.push_back(points[i]);

    Rng rng = branch_rng;
    const auto [id1, id2] = kmeanspp_pair(local, rng);
    const SparseVector* seed1 = nullptr;
    const SparseVector* seed2 = nullptr;
    for (const DataPoint& p : local) {
        if (p.id == id1 && !seed1) seed1 = &p.vec;
        if (p.id == id2 && !seed2) seed2 = &p.vec;
    }

    KMeans2Result split = kmeans2(local, *seed1, *seed2, config.max_iter);
    const bool gaussian = anderson_darling_split_test(
        local, split.first.centroid, split.second.centroid, config.significance,
        config.ad_min_points);
    const std::size_t smaller = std::min(split.first.members.size(),
                                         split.second.members.size());
    if (gaussian || smaller < config.min_cluster_size) {
        out.push_back(make_cluster(points, group));
        return;
    }

    std::map<std::string, std::vector<std::size_t>> by_id;
    for (std::size_t i : group) by_id[points[i].id].push_back(i);
    auto take = [&](const std::vector<std::string>& ids) {
        std::vector<std::size_t> indices;
        for (const std::string& id : ids) {
            auto& bucket = by_id[id];
            indices.push_back(bucket.back());
            bucket.pop_back();
        }
        std::sort(indices.begin(), indices.end());
        return indices;
    };
    std::vector<std::size_t> left = take(split.first.members);
    std::vector<std::size_t> right = take(split.second.members);

    bipartition(points, std::move(left), config, branch_rng.child(1), out);
    bipartition(points, std::move(right), config, branch_rng.child(2), out);
}

}  // namespace

std::vector<Cluster> gmeans_cluster(const std::vector<DataPoint>& points,
                                    const ClusterConfig& config) {
    if (points.empty()) throw std::invalid_argument("gmeans_cluster needs >= 1 point");
    std::vector<std::size_t> all(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) all[i] = i;

    std::vector<Cluster> clusters;
    bipartition(points, std::move(all), config, Rng(config.rng_seed), clusters);
    std::sort(clusters.begin(), clusters.end(), [](const Cluster& a, const Cluster& b) {
        return a.members.front() < b.members.front();
    });
    return clusters;
}

}  // namespace linkbox
