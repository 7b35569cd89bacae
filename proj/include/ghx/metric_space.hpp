#pragma once

#include "ghx/rational.hpp"

#include <string>
#include <vector>

namespace ghx {

// A finite metric space as a validated symmetric matrix of exact rational
// distances: zero diagonal, positive off-diagonal entries, triangle
// inequality. Immutable after construction.
class FiniteMetricSpace {
public:
    // Throws Error with the first violated axiom (and the offending
    // indices in the message). Labels are optional display names; when
    // given there must be exactly one per point.
    static FiniteMetricSpace validated(std::vector<std::vector<Rational>> matrix,
                                       std::vector<std::string> labels = {});

    int size() const { return n_; }

    const Rational& dist(int i, int j) const {
        return d_[static_cast<size_t>(i) * n_ + j];
    }

    const std::vector<std::string>& labels() const { return labels_; }

    // Copy with points renamed through perm: new point i is old perm[i].
    FiniteMetricSpace permuted(const std::vector<int>& perm) const;

    bool same_matrix(const FiniteMetricSpace& other) const;

private:
    FiniteMetricSpace(int n, std::vector<Rational> d, std::vector<std::string> labels)
        : n_(n), d_(std::move(d)), labels_(std::move(labels)) {}

    int n_;
    std::vector<Rational> d_;  // row-major n*n
    std::vector<std::string> labels_;

    friend FiniteMetricSpace unchecked_space(int n, std::vector<Rational> d,
                                             std::vector<std::string> labels);
};

// Internal fast path for constructions that are metrics by design
// (scalings, simplexes, quotients that were just validated).
FiniteMetricSpace unchecked_space(int n, std::vector<Rational> d,
                                  std::vector<std::string> labels = {});

// Largest distance; 0 for the one-point space.
Rational diameter(const FiniteMetricSpace& x);

// Smallest nonzero distance. Throws single_point when there is none.
Rational min_positive_distance(const FiniteMetricSpace& x);

// Multiplies every distance by factor > 0 (throws non_positive_scale).
FiniteMetricSpace scale(const FiniteMetricSpace& x, const Rational& factor);

// n-point space with every nonzero distance equal to lambda (a "simplex").
// lambda must be positive unless n == 1, where it is irrelevant.
FiniteMetricSpace simplex(int n, const Rational& lambda);

// True when every off-diagonal distance is the same; reports that common
// value through lambda_out if given. One-point spaces count (lambda 0).
bool is_simplex(const FiniteMetricSpace& x, Rational* lambda_out = nullptr);

// A nonempty set of point indices of some space.
struct PointSubset {
    std::vector<int> members;
};

// Hausdorff distance between two nonempty subsets of the same space:
// max over points of one set of the distance to the other set.
Rational hausdorff_distance(const FiniteMetricSpace& x, const PointSubset& a,
                            const PointSubset& b);

}  // namespace ghx
