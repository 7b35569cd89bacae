#include "ghx/gh_exact.hpp"

#include "ghx/errors.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <cstring>

namespace ghx {

namespace {

constexpr int kMaxPoints = 32;

void check_engine_sizes(const FiniteMetricSpace& x, const FiniteMetricSpace& y) {
    if (x.size() > kMaxPoints || y.size() > kMaxPoints)
        throw Error(errc::space_too_large,
                    "exhaustive search is capped at " + std::to_string(kMaxPoints) +
                        " points per space");
}

Rational abs_diff(const Rational& a, const Rational& b) {
    Rational d = a - b;
    if (d < 0) d = -d;
    return d;
}

// All searches work on integer ranks into the sorted list of candidate
// distortion values |d_X(i,j) - d_Y(k,l)|; the inner loops never touch a
// rational. rank[] is indexed by the ordered quadruple (i,j,k,l).
struct Catalog {
    int nx = 0;
    int ny = 0;
    std::vector<Rational> levels;
    std::vector<std::uint32_t> rank;

    std::uint32_t rank_of(int i, int j, int k, int l) const {
        return rank[((static_cast<size_t>(i) * nx + j) * ny + k) * ny + l];
    }
};

Catalog build_catalog(const FiniteMetricSpace& x, const FiniteMetricSpace& y) {
    Catalog cat;
    cat.nx = x.size();
    cat.ny = y.size();

    std::vector<Rational> vals;
    vals.reserve(static_cast<size_t>(cat.nx) * (cat.nx + 1) * cat.ny * (cat.ny + 1) / 4);
    for (int i = 0; i < cat.nx; ++i)
        for (int j = i; j < cat.nx; ++j)
            for (int k = 0; k < cat.ny; ++k)
                for (int l = k; l < cat.ny; ++l)
                    vals.push_back(abs_diff(x.dist(i, j), y.dist(k, l)));
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    cat.levels = std::move(vals);

    cat.rank.assign(static_cast<size_t>(cat.nx) * cat.nx * cat.ny * cat.ny, 0);
    for (int i = 0; i < cat.nx; ++i)
        for (int j = i; j < cat.nx; ++j)
            for (int k = 0; k < cat.ny; ++k)
                for (int l = k; l < cat.ny; ++l) {
                    Rational v = abs_diff(x.dist(i, j), y.dist(k, l));
                    auto it = std::lower_bound(cat.levels.begin(), cat.levels.end(), v);
                    auto r = static_cast<std::uint32_t>(it - cat.levels.begin());
                    for (auto [a, b] : {std::pair{i, j}, {j, i}})
                        for (auto [c, d] : {std::pair{k, l}, {l, k}})
                            cat.rank[((static_cast<size_t>(a) * cat.nx + b) * cat.ny + c) *
                                         cat.ny +
                                     d] = r;
                }
    return cat;
}

std::uint32_t rank_of_value(const Catalog& cat, const Rational& v) {
    // Largest rank whose level does not exceed v; v must be >= levels[0].
    auto it = std::upper_bound(cat.levels.begin(), cat.levels.end(), v);
    return static_cast<std::uint32_t>(it - cat.levels.begin()) - 1;
}

class Search {
public:
    Search(const FiniteMetricSpace& x, const FiniteMetricSpace& y,
           std::uint64_t budget)
        : cat_(build_catalog(x, y)),
          nx_(x.size()),
          ny_(y.size()),
          budget_(budget) {
        all_ = ny_ == 64 ? ~0ull : (1ull << ny_) - 1;
        // Cost of two Y points sharing one row: their own distance's rank.
        yy_.assign(static_cast<size_t>(ny_) * ny_, 0);
        for (int k = 0; k < ny_; ++k)
            for (int l = 0; l < ny_; ++l)
                yy_[static_cast<size_t>(k) * ny_ + l] = cat_.rank_of(0, 0, k, l);
        viable_.assign(static_cast<size_t>(nx_) + 1,
                       std::vector<std::uint32_t>(static_cast<size_t>(nx_) * ny_, 0));
        chosen_.assign(static_cast<size_t>(nx_), 0);
        lb_rank_ = 0;  // refined by minimize()/decide callers via catalog
    }

    const Catalog& catalog() const { return cat_; }
    std::uint64_t nodes() const { return nodes_; }

    // Smallest achievable distortion rank; exhaustive.
    std::uint32_t minimize() {
        best_rank_ = static_cast<std::uint32_t>(cat_.levels.size()) - 1;
        if (best_rank_ == 0) return 0;
        decide_ = false;
        std::fill(viable_[0].begin(), viable_[0].end(), 0u);
        dfs(0, 0, 0);
        return best_rank_;
    }

    // First correspondence in canonical order with distortion rank <= limit.
    std::optional<Correspondence> first_within(std::uint32_t limit) {
        decide_ = true;
        limit_ = limit;
        std::fill(viable_[0].begin(), viable_[0].end(), 0u);
        if (!dfs(0, 0, 0)) return std::nullopt;
        std::vector<std::uint64_t> rows(chosen_.begin(), chosen_.end());
        return Correspondence::from_rows(nx_, ny_, std::move(rows));
    }

private:
    std::uint32_t threshold() const { return decide_ ? limit_ : best_rank_ - 1; }

    [[noreturn]] void out_of_budget() {
        // The kernel only knows its running upper bound; callers enrich
        // the lower bound with what they have proven themselves.
        Rational upper = cat_.levels[decide_ ? cat_.levels.size() - 1 : best_rank_];
        throw BudgetExceeded("search node budget exhausted after " +
                                 std::to_string(nodes_) + " nodes",
                             Rational(0), upper / 2, nodes_);
    }

    bool dfs(int row, std::uint32_t cur_max, std::uint64_t covered) {
        if (!decide_ && best_rank_ == 0) return false;
        if (row == nx_) {
            assert(covered == all_);
            (void)covered;
            if (decide_) return true;
            best_rank_ = cur_max;
            return false;
        }

        const auto& parent = viable_[static_cast<size_t>(row)];
        auto& child = viable_[static_cast<size_t>(row) + 1];
        const std::uint32_t* mine = parent.data() + static_cast<size_t>(row) * ny_;

        std::uint64_t allowed = 0;
        {
            std::uint32_t thr = threshold();
            for (int y = 0; y < ny_; ++y)
                if (mine[y] <= thr) allowed |= 1ull << y;
        }

        const bool last = row == nx_ - 1;
        std::uint64_t forced = last ? (all_ & ~covered) : 0;
        if (forced & ~allowed) return false;
        std::uint64_t pool = allowed & ~forced;

        // Subsets of `pool` in increasing numeric order; adding the
        // disjoint forced bits keeps the order, so candidates come out in
        // canonical (lexicographically smallest first) order.
        std::uint64_t t = 0;
        bool skip_empty = forced == 0;
        while (true) {
            if (skip_empty && t == 0) {
                t = (t - pool) & pool;
                if (t == 0) break;
            }
            std::uint64_t s = t | forced;

            if (++nodes_ > budget_) out_of_budget();
            // A perfect solution found deeper in the tree ends an
            // optimizing search outright (threshold() would underflow).
            if (!decide_ && best_rank_ == 0) return false;
            std::uint32_t thr = threshold();
            {
                std::uint32_t new_max = cur_max;
                bool ok = new_max <= thr;

                if (ok) {
                    // Pairs inside this row, and this row against all
                    // earlier rows.
                    std::uint64_t rest = s;
                    while (ok && rest) {
                        int a = std::countr_zero(rest);
                        rest &= rest - 1;
                        std::uint32_t v = mine[a];
                        const std::uint32_t* ya = yy_.data() + static_cast<size_t>(a) * ny_;
                        std::uint64_t rest2 = rest;
                        while (rest2) {
                            int b = std::countr_zero(rest2);
                            rest2 &= rest2 - 1;
                            v = std::max(v, ya[b]);
                        }
                        new_max = std::max(new_max, v);
                        ok = new_max <= thr;
                    }
                }

                if (ok && !last) {
                    child = parent;
                    std::uint32_t* cdat = child.data();
                    for (int xr = row + 1; xr < nx_; ++xr) {
                        const std::uint32_t* pairrank =
                            cat_.rank.data() +
                            ((static_cast<size_t>(xr) * nx_ + row) * ny_) * ny_;
                        std::uint32_t* crow = cdat + static_cast<size_t>(xr) * ny_;
                        std::uint32_t rowmin = ~0u;
                        for (int y = 0; y < ny_; ++y) {
                            std::uint32_t v = crow[y];
                            const std::uint32_t* pr = pairrank + static_cast<size_t>(y) * ny_;
                            std::uint64_t rest = s;
                            while (rest) {
                                int b = std::countr_zero(rest);
                                rest &= rest - 1;
                                v = std::max(v, pr[b]);
                            }
                            crow[y] = v;
                            rowmin = std::min(rowmin, v);
                        }
                        if (rowmin > thr) {
                            ok = false;  // that later row has no usable y
                            break;
                        }
                    }
                }

                if (ok && !last) {
                    // Every still-uncovered y needs a future row able to
                    // take it.
                    std::uint64_t need = all_ & ~(covered | s);
                    while (ok && need) {
                        int y = std::countr_zero(need);
                        need &= need - 1;
                        bool placeable = false;
                        for (int xr = row + 1; xr < nx_ && !placeable; ++xr)
                            placeable =
                                child[static_cast<size_t>(xr) * ny_ + y] <= thr;
                        ok = placeable;
                    }
                }

                if (ok) {
                    chosen_[static_cast<size_t>(row)] = s;
                    if (dfs(row + 1, new_max, covered | s) && decide_) return true;
                }
            }

            t = (t - pool) & pool;
            if (t == 0) break;
        }
        return false;
    }

    Catalog cat_;
    int nx_;
    int ny_;
    std::uint64_t budget_;
    std::uint64_t all_ = 0;
    std::uint64_t nodes_ = 0;
    std::vector<std::uint32_t> yy_;
    std::vector<std::vector<std::uint32_t>> viable_;
    std::vector<std::uint64_t> chosen_;
    std::uint32_t best_rank_ = 0;
    std::uint32_t limit_ = 0;
    std::uint32_t lb_rank_ = 0;
    bool decide_ = false;
};

}  // namespace

std::vector<Rational> distortion_levels(const FiniteMetricSpace& x,
                                        const FiniteMetricSpace& y) {
    check_engine_sizes(x, y);
    return build_catalog(x, y).levels;
}

Rational gh_lower_bound(const FiniteMetricSpace& x, const FiniteMetricSpace& y) {
    Rational gap = abs_diff(diameter(x), diameter(y));
    return gap / 2;
}

Rational gh_upper_bound_max_diam(const FiniteMetricSpace& x,
                                 const FiniteMetricSpace& y) {
    Rational dx = diameter(x);
    Rational dy = diameter(y);
    Rational big = dx > dy ? dx : dy;
    return big / 2;
}

DistanceCertificate gh_exact(const FiniteMetricSpace& x, const FiniteMetricSpace& y,
                             const SearchOptions& opts) {
    check_engine_sizes(x, y);
    Search search(x, y, opts.node_budget);
    std::uint32_t best;
    try {
        best = search.minimize();
    } catch (const BudgetExceeded& e) {
        // Enrich with the trivial lower bound, which the kernel does not
        // know about.
        throw BudgetExceeded(e.what(), gh_lower_bound(x, y), e.upper_bound(),
                             e.nodes());
    }
    const auto& levels = search.catalog().levels;
    std::optional<Correspondence> witness;
    try {
        witness = search.first_within(best);
    } catch (const BudgetExceeded& e) {
        // The value is already proven; only the canonical witness ran out
        // of nodes. Report the value as both bounds.
        Rational v = levels[best] / 2;
        throw BudgetExceeded(e.what(), v, v, e.nodes());
    }
    assert(witness.has_value());
    DistanceCertificate cert{levels[best] / 2,
                             levels[best],
                             std::move(*witness),
                             {},
                             search.nodes()};

    Rational diam_gap = abs_diff(diameter(x), diameter(y));
    if (levels[best] == diam_gap) {
        cert.lower_bound.kind = LowerBoundWitness::Kind::diameter_difference;
    } else {
        cert.lower_bound.kind = LowerBoundWitness::Kind::exhausted_below_level;
        cert.lower_bound.largest_infeasible_distortion = levels[best - 1];
    }
    return cert;
}

std::optional<Correspondence> feasible(const FiniteMetricSpace& x,
                                       const FiniteMetricSpace& y,
                                       const Rational& max_distortion,
                                       const SearchOptions& opts) {
    check_engine_sizes(x, y);
    if (max_distortion < 0)
        throw Error(errc::parameter_out_of_range,
                    "distortion thresholds are nonnegative");
    Search search(x, y, opts.node_budget);
    return search.first_within(rank_of_value(search.catalog(), max_distortion));
}

LevelSearchCertificate gh_exact_by_level_search(const FiniteMetricSpace& x,
                                                const FiniteMetricSpace& y,
                                                const SearchOptions& opts) {
    check_engine_sizes(x, y);
    Search search(x, y, opts.node_budget);
    const auto& levels = search.catalog().levels;
    Rational diam_gap = abs_diff(diameter(x), diameter(y));
    std::uint32_t lo = rank_of_value(search.catalog(), diam_gap);
    std::uint32_t hi = static_cast<std::uint32_t>(levels.size()) - 1;
    int probes = 0;

    auto rethrow_with_bounds = [&](const BudgetExceeded& e, std::uint32_t lo_now,
                                   std::uint32_t hi_now) {
        Rational lower = levels[lo_now] / 2;
        Rational upper = levels[hi_now] / 2;
        throw BudgetExceeded(e.what(), std::move(lower), std::move(upper), e.nodes());
    };

    while (lo < hi) {
        std::uint32_t mid = lo + (hi - lo) / 2;
        ++probes;
        std::optional<Correspondence> w;
        try {
            w = search.first_within(mid);
        } catch (const BudgetExceeded& e) {
            rethrow_with_bounds(e, lo, hi);
        }
        if (w)
            hi = mid;
        else
            lo = mid + 1;
    }

    std::optional<Correspondence> witness;
    try {
        witness = search.first_within(lo);
        ++probes;
    } catch (const BudgetExceeded& e) {
        rethrow_with_bounds(e, lo, lo);
    }
    assert(witness.has_value());
    return LevelSearchCertificate{levels[lo] / 2, levels[lo], std::move(*witness),
                                  search.nodes(), probes};
}

}  // namespace ghx
