#include "ghx/correspondence.hpp"

#include "ghx/errors.hpp"

#include <bit>

namespace ghx {

namespace {

void check_sizes(int n_x, int n_y) {
    if (n_x < 1 || n_y < 1)
        throw Error(errc::bad_cardinal, "correspondence needs nonempty spaces");
    if (n_y > 64)
        throw Error(errc::space_too_large,
                    "right-hand space exceeds 64 points (bitmask rows)");
}

}  // namespace

Correspondence Correspondence::from_rows(int n_x, int n_y,
                                         std::vector<std::uint64_t> rows) {
    check_sizes(n_x, n_y);
    if (static_cast<int>(rows.size()) != n_x)
        throw Error(errc::parameter_out_of_range, "row count mismatch");
    const std::uint64_t all =
        n_y == 64 ? ~0ull : ((1ull << n_y) - 1);
    std::uint64_t covered = 0;
    for (int i = 0; i < n_x; ++i) {
        if (rows[static_cast<size_t>(i)] == 0)
            throw Error(errc::empty_relation,
                        "point " + std::to_string(i) + " of X is unmatched");
        if (rows[static_cast<size_t>(i)] & ~all)
            throw Error(errc::parameter_out_of_range,
                        "row " + std::to_string(i) + " matches points outside Y");
        covered |= rows[static_cast<size_t>(i)];
    }
    if (covered != all)
        throw Error(errc::empty_relation, "some point of Y is unmatched");
    return Correspondence(n_x, n_y, std::move(rows));
}

Correspondence Correspondence::from_pairs(int n_x, int n_y, const Relation& pairs) {
    check_sizes(n_x, n_y);
    std::vector<std::uint64_t> rows(static_cast<size_t>(n_x), 0);
    for (auto [x, y] : pairs) {
        if (x < 0 || x >= n_x || y < 0 || y >= n_y)
            throw Error(errc::parameter_out_of_range, "pair out of range");
        rows[static_cast<size_t>(x)] |= 1ull << y;
    }
    return from_rows(n_x, n_y, std::move(rows));
}

Correspondence Correspondence::identity(int n) {
    check_sizes(n, n);
    std::vector<std::uint64_t> rows(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) rows[static_cast<size_t>(i)] = 1ull << i;
    return Correspondence(n, n, std::move(rows));
}

Correspondence Correspondence::full(int n_x, int n_y) {
    check_sizes(n_x, n_y);
    const std::uint64_t all = n_y == 64 ? ~0ull : ((1ull << n_y) - 1);
    return Correspondence(n_x, n_y, std::vector<std::uint64_t>(static_cast<size_t>(n_x), all));
}

std::vector<int> Correspondence::row(int x) const {
    std::vector<int> out;
    std::uint64_t m = rows_[static_cast<size_t>(x)];
    while (m) {
        out.push_back(std::countr_zero(m));
        m &= m - 1;
    }
    return out;
}

Relation Correspondence::pairs() const {
    Relation out;
    for (int x = 0; x < n_x_; ++x)
        for (int y : row(x)) out.emplace_back(x, y);
    return out;
}

Correspondence Correspondence::transposed() const {
    std::vector<std::uint64_t> rows(static_cast<size_t>(n_y_), 0);
    for (int x = 0; x < n_x_; ++x)
        for (int y : row(x)) rows[static_cast<size_t>(y)] |= 1ull << x;
    // n_x_ <= 64 is implied: the transpose needs X to fit in a mask.
    if (n_x_ > 64)
        throw Error(errc::space_too_large, "left-hand space exceeds 64 points");
    return Correspondence(n_y_, n_x_, std::move(rows));
}

Rational distortion(const FiniteMetricSpace& x, const FiniteMetricSpace& y,
                    const Relation& sigma) {
    if (sigma.empty())
        throw Error(errc::empty_relation, "distortion of an empty relation");
    for (auto [p, q] : sigma)
        if (p < 0 || p >= x.size() || q < 0 || q >= y.size())
            throw Error(errc::parameter_out_of_range, "pair out of range");
    Rational worst = 0;
    for (size_t a = 0; a < sigma.size(); ++a)
        for (size_t b = a; b < sigma.size(); ++b) {
            Rational gap = x.dist(sigma[a].first, sigma[b].first) -
                           y.dist(sigma[a].second, sigma[b].second);
            if (gap < 0) gap = -gap;
            if (gap > worst) worst = std::move(gap);
        }
    return worst;
}

Rational distortion(const FiniteMetricSpace& x, const FiniteMetricSpace& y,
                    const Correspondence& r) {
    if (r.n_x() != x.size() || r.n_y() != y.size())
        throw Error(errc::parameter_out_of_range,
                    "correspondence does not fit the spaces");
    return distortion(x, y, r.pairs());
}

}  // namespace ghx
