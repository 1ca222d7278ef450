#pragma once

#include <map>
#include <string>
#include <vector>

namespace linkbox {

// Sparse feature vector keyed by category id. Zero entries are never stored.
class SparseVector {
public:
    using Map = std::map<std::string, double>;

    SparseVector() = default;
    explicit SparseVector(Map entries);

    void set(const std::string& key, double value);  // value == 0 erases
    double get(const std::string& key) const;
    bool empty() const { return entries_.empty(); }
    std::size_t size() const { return entries_.size(); }
    const Map& entries() const { return entries_; }

    double dot(const SparseVector& other) const;
    double norm() const;
    void add(const SparseVector& other);
    void subtract(const SparseVector& other);
    void scale(double factor);

    bool operator==(const SparseVector& other) const = default;

private:
    Map entries_;
};

// 1 - cos(a, b), clamped to [0, 2]. A zero vector is treated as orthogonal
// to everything, so its distance to any vector is 1.
double cosine_distance(const SparseVector& a, const SparseVector& b);

// Arithmetic mean of the given vectors; empty input yields the zero vector.
SparseVector mean_vector(const std::vector<const SparseVector*>& vectors);

}  // namespace linkbox
