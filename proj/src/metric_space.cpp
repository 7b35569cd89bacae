#include "ghx/metric_space.hpp"

#include "ghx/errors.hpp"

#include <algorithm>
#include <utility>

namespace ghx {

namespace {

std::string at(int i, int j) {
    return "entry (" + std::to_string(i) + "," + std::to_string(j) + ")";
}

}  // namespace

FiniteMetricSpace unchecked_space(int n, std::vector<Rational> d,
                                  std::vector<std::string> labels) {
    return FiniteMetricSpace(n, std::move(d), std::move(labels));
}

FiniteMetricSpace FiniteMetricSpace::validated(std::vector<std::vector<Rational>> matrix,
                                               std::vector<std::string> labels) {
    const int n = static_cast<int>(matrix.size());
    if (n == 0) throw Error(errc::not_square, "matrix has no rows");
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(matrix[i].size()) != n)
            throw Error(errc::not_square,
                        "row " + std::to_string(i) + " has " +
                            std::to_string(matrix[i].size()) + " entries, expected " +
                            std::to_string(n));
    }
    if (!labels.empty() && static_cast<int>(labels.size()) != n)
        throw Error(errc::parameter_out_of_range,
                    "label count does not match point count");

    for (int i = 0; i < n; ++i) {
        if (matrix[i][i] != 0)
            throw Error(errc::nonzero_diagonal, at(i, i) + " must be 0");
        for (int j = 0; j < n; ++j) {
            if (matrix[i][j] < 0)
                throw Error(errc::negative_distance, at(i, j) + " is negative");
            if (i != j && matrix[i][j] == 0)
                throw Error(errc::zero_off_diagonal,
                            at(i, j) + " is 0 but points differ");
            if (j < i && matrix[i][j] != matrix[j][i])
                throw Error(errc::not_symmetric,
                            at(i, j) + " differs from " + at(j, i));
        }
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                if (k == i || k == j) continue;
                Rational via = matrix[i][k] + matrix[k][j];
                if (matrix[i][j] > via)
                    throw Error(errc::triangle_violation,
                                at(i, j) + " exceeds the path through point " +
                                    std::to_string(k));
            }

    std::vector<Rational> flat;
    flat.reserve(static_cast<size_t>(n) * n);
    for (auto& row : matrix)
        for (auto& v : row) flat.push_back(std::move(v));
    return FiniteMetricSpace(n, std::move(flat), std::move(labels));
}

FiniteMetricSpace FiniteMetricSpace::permuted(const std::vector<int>& perm) const {
    if (static_cast<int>(perm.size()) != n_)
        throw Error(errc::parameter_out_of_range, "permutation size mismatch");
    std::vector<bool> seen(n_, false);
    for (int p : perm) {
        if (p < 0 || p >= n_ || seen[p])
            throw Error(errc::parameter_out_of_range, "not a permutation");
        seen[p] = true;
    }
    std::vector<Rational> d(static_cast<size_t>(n_) * n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j)
            d[static_cast<size_t>(i) * n_ + j] = dist(perm[i], perm[j]);
    std::vector<std::string> labels;
    if (!labels_.empty()) {
        labels.reserve(n_);
        for (int i = 0; i < n_; ++i) labels.push_back(labels_[perm[i]]);
    }
    return FiniteMetricSpace(n_, std::move(d), std::move(labels));
}

bool FiniteMetricSpace::same_matrix(const FiniteMetricSpace& other) const {
    return n_ == other.n_ && d_ == other.d_;
}

Rational diameter(const FiniteMetricSpace& x) {
    Rational best = 0;
    for (int i = 0; i < x.size(); ++i)
        for (int j = i + 1; j < x.size(); ++j)
            if (x.dist(i, j) > best) best = x.dist(i, j);
    return best;
}

Rational min_positive_distance(const FiniteMetricSpace& x) {
    if (x.size() < 2)
        throw Error(errc::single_point, "one-point space has no positive distances");
    Rational best = x.dist(0, 1);
    for (int i = 0; i < x.size(); ++i)
        for (int j = i + 1; j < x.size(); ++j)
            if (x.dist(i, j) < best) best = x.dist(i, j);
    return best;
}

FiniteMetricSpace scale(const FiniteMetricSpace& x, const Rational& factor) {
    if (factor <= 0)
        throw Error(errc::non_positive_scale, "scale factor must be positive");
    std::vector<Rational> d;
    d.reserve(static_cast<size_t>(x.size()) * x.size());
    for (int i = 0; i < x.size(); ++i)
        for (int j = 0; j < x.size(); ++j) {
            Rational v = x.dist(i, j) * factor;
            d.push_back(std::move(v));
        }
    return unchecked_space(x.size(), std::move(d), x.labels());
}

FiniteMetricSpace simplex(int n, const Rational& lambda) {
    if (n < 1) throw Error(errc::bad_cardinal, "simplex needs at least one point");
    if (n > 1 && lambda <= 0)
        throw Error(errc::non_positive_scale, "simplex side must be positive");
    std::vector<Rational> d(static_cast<size_t>(n) * n, lambda);
    for (int i = 0; i < n; ++i) d[static_cast<size_t>(i) * n + i] = 0;
    return unchecked_space(n, std::move(d));
}

bool is_simplex(const FiniteMetricSpace& x, Rational* lambda_out) {
    if (x.size() == 1) {
        if (lambda_out) *lambda_out = 0;
        return true;
    }
    const Rational& side = x.dist(0, 1);
    for (int i = 0; i < x.size(); ++i)
        for (int j = i + 1; j < x.size(); ++j)
            if (x.dist(i, j) != side) return false;
    if (lambda_out) *lambda_out = side;
    return true;
}

Rational hausdorff_distance(const FiniteMetricSpace& x, const PointSubset& a,
                            const PointSubset& b) {
    if (a.members.empty() || b.members.empty())
        throw Error(errc::empty_subset, "Hausdorff distance needs nonempty sets");
    for (int p : a.members)
        if (p < 0 || p >= x.size())
            throw Error(errc::parameter_out_of_range, "subset point out of range");
    for (int p : b.members)
        if (p < 0 || p >= x.size())
            throw Error(errc::parameter_out_of_range, "subset point out of range");

    auto one_sided = [&x](const PointSubset& from, const PointSubset& to) {
        Rational worst = 0;
        for (int p : from.members) {
            Rational nearest = x.dist(p, to.members.front());
            for (int q : to.members)
                if (x.dist(p, q) < nearest) nearest = x.dist(p, q);
            if (nearest > worst) worst = nearest;
        }
        return worst;
    };
    Rational ab = one_sided(a, b);
    Rational ba = one_sided(b, a);
    return ab > ba ? ab : ba;
}

}  // namespace ghx
