#pragma once

#include "ghx/metric_space.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace ghx {

// An arbitrary set of matched pairs (x, y); need not cover either side.
using Relation = std::vector<std::pair<int, int>>;

// A relation whose projections onto both spaces are surjective. Row x
// stores the set of matched y as a bitmask (bit j = point j of Y), which
// caps the right-hand space at 64 points — far beyond what an exhaustive
// search can absorb anyway.
class Correspondence {
public:
    // Throws empty_relation when some row is empty or some y is unmatched.
    static Correspondence from_rows(int n_x, int n_y, std::vector<std::uint64_t> rows);
    static Correspondence from_pairs(int n_x, int n_y, const Relation& pairs);
    static Correspondence identity(int n);
    // Every x matched with every y.
    static Correspondence full(int n_x, int n_y);

    int n_x() const { return n_x_; }
    int n_y() const { return n_y_; }
    std::uint64_t row_mask(int x) const { return rows_[static_cast<size_t>(x)]; }
    std::vector<int> row(int x) const;
    // All matched pairs in row-major order.
    Relation pairs() const;
    Correspondence transposed() const;

    bool operator==(const Correspondence&) const = default;

private:
    Correspondence(int n_x, int n_y, std::vector<std::uint64_t> rows)
        : n_x_(n_x), n_y_(n_y), rows_(std::move(rows)) {}

    int n_x_;
    int n_y_;
    std::vector<std::uint64_t> rows_;
};

// Distortion: the largest | |x x'| - |y y'| | over pairs of matched pairs.
// Zero for relations with a single pair; the relation must be nonempty and
// within range of both spaces.
Rational distortion(const FiniteMetricSpace& x, const FiniteMetricSpace& y,
                    const Relation& sigma);
Rational distortion(const FiniteMetricSpace& x, const FiniteMetricSpace& y,
                    const Correspondence& r);

}  // namespace ghx
