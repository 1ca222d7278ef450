#include "linkbox/sparse_vector.hpp"

#include <algorithm>
#include <cmath>

namespace linkbox {

SparseVector::SparseVector(Map entries) : entries_(std::move(entries)) {
    for (auto it = entries_.begin(); it != entries_.end();) {
        if (it->second == 0.0) {
            it = entries_.erase(it);
        } else {
            ++it;
        }
    }
}

void SparseVector::set(const std::string& key, double value) {
    if (value == 0.0) {
        entries_.erase(key);
    } else {
        entries_[key] = value;
    }
}

double SparseVector::get(const std::string& key) const {
    auto it = entries_.find(key);
    return it == entries_.end() ? 0.0 : it->second;
}

double SparseVector::dot(const SparseVector& other) const {
    const Map& small = entries_.size() <= other.entries_.size() ? entries_ : other.entries_;
    const Map& large = entries_.size() <= other.entries_.size() ? other.entries_ : entries_;
    double sum = 0.0;
    for (const auto& [key, value] : small) {
        auto it = large.find(key);
        if (it != large.end()) sum += value * it->second;
    }
    return sum;
}

double SparseVector::norm() const {
    double sum = 0.0;
    for (const auto& [key, value] : entries_) sum += value * value;
    return std::sqrt(sum);
}

void SparseVector::add(const SparseVector& other) {
    for (const auto& [key, value] : other.entries_) {
        set(key, get(key) + value);
    }
}

void SparseVector::subtract(const SparseVector& other) {
    for (const auto& [key, value] : other.entries_) {
        set(key, get(key) - value);
    }
}

void SparseVector::scale(double factor) {
    if (factor == 0.0) {
        entries_.clear();
        return;
    }
    for (auto& [key, value] : entries_) value *= factor;
}

double cosine_distance(const SparseVector& a, const SparseVector& b) {
    const double na = a.norm();
    const double nb = b.norm();
    if (na == 0.0 || nb == 0.0) return 1.0;
    const double d = 1.0 - a.dot(b) / (na * nb);
    return std::clamp(d, 0.0, 2.0);
}

SparseVector mean_vector(const std::vector<const SparseVector*>& vectors) {
    SparseVector sum;
    if (vectors.empty()) return sum;
    for (const SparseVector* v : vectors) sum.add(*v);
    sum.scale(1.0 / static_cast<double>(vectors.size()));
    return sum;
}

}  // namespace linkbox
