#include "ghx/partitions.hpp"

#include "ghx/errors.hpp"

#include <algorithm>
#include <bit>
#include <limits>

namespace ghx {

namespace {

Rational subset_diameter(const FiniteMetricSpace& x, const std::vector<int>& block) {
    Rational best = 0;
    for (size_t a = 0; a < block.size(); ++a)
        for (size_t b = a + 1; b < block.size(); ++b)
            if (x.dist(block[a], block[b]) > best) best = x.dist(block[a], block[b]);
    return best;
}

Rational set_distance(const FiniteMetricSpace& x, const std::vector<int>& a,
                      const std::vector<int>& b) {
    Rational best = x.dist(a.front(), b.front());
    for (int p : a)
        for (int q : b)
            if (x.dist(p, q) < best) best = x.dist(p, q);
    return best;
}

std::vector<std::vector<int>> blocks_of_rgs(const std::vector<int>& rgs, int m) {
    std::vector<std::vector<int>> blocks(static_cast<size_t>(m));
    for (int i = 0; i < static_cast<int>(rgs.size()); ++i)
        blocks[static_cast<size_t>(rgs[static_cast<size_t>(i)])].push_back(i);
    return blocks;
}

}  // namespace

PartitionOrCovering make_covering(const FiniteMetricSpace& x,
                                  std::vector<std::vector<int>> blocks,
                                  bool as_partition) {
    if (blocks.empty())
        throw Error(errc::invalid_blocks, "no blocks given");
    std::vector<int> owner(static_cast<size_t>(x.size()), -1);
    std::vector<char> hit(static_cast<size_t>(x.size()), 0);
    for (int b = 0; b < static_cast<int>(blocks.size()); ++b) {
        if (blocks[static_cast<size_t>(b)].empty())
            throw Error(errc::invalid_blocks,
                        "block " + std::to_string(b) + " is empty");
        std::vector<char> in_block(static_cast<size_t>(x.size()), 0);
        for (int p : blocks[static_cast<size_t>(b)]) {
            if (p < 0 || p >= x.size())
                throw Error(errc::invalid_blocks,
                            "block " + std::to_string(b) + " mentions point " +
                                std::to_string(p) + ", out of range");
            if (in_block[static_cast<size_t>(p)])
                throw Error(errc::invalid_blocks,
                            "block " + std::to_string(b) + " repeats point " +
                                std::to_string(p));
            in_block[static_cast<size_t>(p)] = 1;
            if (as_partition && owner[static_cast<size_t>(p)] >= 0)
                throw Error(errc::invalid_blocks,
                            "point " + std::to_string(p) + " appears in blocks " +
                                std::to_string(owner[static_cast<size_t>(p)]) +
                                " and " + std::to_string(b));
            owner[static_cast<size_t>(p)] = b;
            hit[static_cast<size_t>(p)] = 1;
        }
    }
    for (int p = 0; p < x.size(); ++p)
        if (!hit[static_cast<size_t>(p)])
            throw Error(errc::invalid_blocks,
                        "point " + std::to_string(p) + " is not covered");
    return PartitionOrCovering{std::move(blocks), as_partition};
}

PartitionStats partition_stats(const FiniteMetricSpace& x,
                               const PartitionOrCovering& family) {
    if (family.blocks.empty())
        throw Error(errc::invalid_blocks, "no blocks given");
    PartitionStats stats;
    stats.diam = 0;
    for (const auto& block : family.blocks) {
        if (block.empty()) throw Error(errc::invalid_blocks, "empty block");
        Rational d = subset_diameter(x, block);
        if (d > stats.diam) stats.diam = std::move(d);
    }
    for (size_t a = 0; a < family.blocks.size(); ++a)
        for (size_t b = a + 1; b < family.blocks.size(); ++b) {
            Rational d = set_distance(x, family.blocks[a], family.blocks[b]);
            if (!stats.alpha || d < *stats.alpha) stats.alpha = std::move(d);
        }
    return stats;
}

PartitionStream::PartitionStream(int n, int m) : n_(n), m_(m) {
    if (n < 1 || m < 1 || m > n)
        throw Error(errc::bad_cardinal,
                    "cannot split " + std::to_string(n) + " points into " +
                        std::to_string(m) + " blocks");
    rgs_.assign(static_cast<size_t>(n), 0);
    // Lexicographically first growth string with exactly m values: zeros,
    // then the forced climb 1..m-1 at the tail.
    for (int i = 0; i < m - 1; ++i) rgs_[static_cast<size_t>(n - 1 - i)] = m - 1 - i;
}

std::optional<PartitionOrCovering> PartitionStream::next() {
    if (done_) return std::nullopt;
    if (!first_ && !advance()) {
        done_ = true;
        return std::nullopt;
    }
    first_ = false;
    return PartitionOrCovering{blocks_of_rgs(rgs_, m_), true};
}

bool PartitionStream::advance() {
    // Next growth string, lexicographically, among those using exactly m
    // values. A position can grow to v <= prefix_max+1 while keeping
    // m-1 reachable with the slots that remain; the suffix is refilled
    // with the minimal completion (zeros, then a forced climb).
    for (int i = n_ - 1; i >= 1; --i) {
        int prefix_max = 0;
        for (int j = 0; j < i; ++j) prefix_max = std::max(prefix_max, rgs_[static_cast<size_t>(j)]);
        int cap = std::min(prefix_max + 1, m_ - 1);
        for (int v = rgs_[static_cast<size_t>(i)] + 1; v <= cap; ++v) {
            int reached = std::max(prefix_max, v);
            if ((m_ - 1) - reached > n_ - 1 - i) continue;
            rgs_[static_cast<size_t>(i)] = v;
            int cur_max = reached;
            for (int j = i + 1; j < n_; ++j) {
                if ((m_ - 1) - cur_max == n_ - j) {
                    rgs_[static_cast<size_t>(j)] = cur_max + 1;
                    ++cur_max;
                } else {
                    rgs_[static_cast<size_t>(j)] = 0;
                }
            }
            return true;
        }
    }
    return false;
}

std::uint64_t count_partitions(int n, int m) {
    if (n < 1 || m < 1 || m > n)
        throw Error(errc::bad_cardinal, "bad partition shape");
    // S(n, m) by the triangular recurrence, with overflow checks.
    std::vector<std::uint64_t> row(static_cast<size_t>(m) + 1, 0);
    row[std::min<size_t>(1, static_cast<size_t>(m))] = 1;  // S(1,1)
    for (int i = 2; i <= n; ++i)
        for (int k = std::min(i, m); k >= 1; --k) {
            std::uint64_t keep = row[static_cast<size_t>(k)];
            std::uint64_t grow = k > 1 ? row[static_cast<size_t>(k) - 1] : 0;
            if (keep != 0 &&
                keep > (std::numeric_limits<std::uint64_t>::max() - grow) /
                           static_cast<std::uint64_t>(k))
                throw Error(errc::parameter_out_of_range,
                            "partition count overflows 64 bits");
            row[static_cast<size_t>(k)] = static_cast<std::uint64_t>(k) * keep + grow;
        }
    return row[static_cast<size_t>(m)];
}

Rational d_m(const FiniteMetricSpace& x, int m) {
    if (m < 2)
        throw Error(errc::bad_cardinal,
                    "block-diameter minimization needs at least two blocks");
    PartitionStream stream(x.size(), m);
    std::optional<Rational> best;
    while (auto part = stream.next()) {
        Rational diam = partition_stats(x, *part).diam;
        if (!best || diam < *best) best = std::move(diam);
    }
    return *best;
}

Rational alpha_m(const FiniteMetricSpace& x, int m) {
    if (m < 2)
        throw Error(errc::bad_cardinal,
                    "inter-block separation needs at least two blocks");
    PartitionStream stream(x.size(), m);
    std::optional<Rational> best;
    while (auto part = stream.next()) {
        auto stats = partition_stats(x, *part);
        if (!best || *stats.alpha > *best) best = std::move(*stats.alpha);
    }
    return *best;
}

PartitionOrCovering covering_to_partition(const PartitionOrCovering& covering) {
    std::vector<std::vector<int>> out;
    std::vector<char> claimed;
    for (const auto& block : covering.blocks) {
        std::vector<int> rest;
        for (int p : block) {
            if (static_cast<size_t>(p) >= claimed.size())
                claimed.resize(static_cast<size_t>(p) + 1, 0);
            if (!claimed[static_cast<size_t>(p)]) {
                claimed[static_cast<size_t>(p)] = 1;
                rest.push_back(p);
            }
        }
        if (!rest.empty()) out.push_back(std::move(rest));
    }
    if (out.empty())
        throw Error(errc::invalid_blocks, "covering had no blocks");
    return PartitionOrCovering{std::move(out), true};
}

PartitionOrCovering push_covering(const Correspondence& r,
                                  const PartitionOrCovering& covering_of_x) {
    std::vector<std::vector<int>> out;
    out.reserve(covering_of_x.blocks.size());
    for (const auto& block : covering_of_x.blocks) {
        std::uint64_t mask = 0;
        for (int p : block) {
            if (p < 0 || p >= r.n_x())
                throw Error(errc::invalid_blocks, "block point outside X");
            mask |= r.row_mask(p);
        }
        std::vector<int> image;
        for (int y = 0; y < r.n_y(); ++y)
            if (mask >> y & 1) image.push_back(y);
        out.push_back(std::move(image));
    }
    // Surjectivity of r makes the images cover Y; they almost always
    // overlap, so the result is a covering, not a partition.
    return PartitionOrCovering{std::move(out), false};
}

namespace {

// Exact chromatic number of the graph on points joining diametral pairs,
// by iterative deepening over the color count.
class DiamGraphColoring {
public:
    explicit DiamGraphColoring(const FiniteMetricSpace& y) : n_(y.size()) {
        Rational diam = diameter(y);
        adj_.assign(static_cast<size_t>(n_), 0);
        for (int i = 0; i < n_; ++i)
            for (int j = i + 1; j < n_; ++j)
                if (y.dist(i, j) == diam) {
                    adj_[static_cast<size_t>(i)] |= 1ull << j;
                    adj_[static_cast<size_t>(j)] |= 1ull << i;
                }
        // High-degree vertices first makes the backtracking fail fast.
        order_.resize(static_cast<size_t>(n_));
        for (int i = 0; i < n_; ++i) order_[static_cast<size_t>(i)] = i;
        std::stable_sort(order_.begin(), order_.end(), [this](int a, int b) {
            return degree(a) > degree(b);
        });
    }

    int solve(std::vector<int>* colors_out) {
        for (int k = clique_lower_bound(); k <= n_; ++k) {
            colors_.assign(static_cast<size_t>(n_), -1);
            if (try_colors(0, k, 0)) {
                if (colors_out) *colors_out = colors_;
                return k;
            }
        }
        return n_;  // unreachable: n colors always work
    }

private:
    int degree(int v) const {
        return std::popcount(adj_[static_cast<size_t>(v)]);
    }

    int clique_lower_bound() const {
        // Greedy clique in the diametral graph.
        std::uint64_t candidates = (n_ == 64 ? ~0ull : (1ull << n_) - 1);
        int size = 0;
        for (int v : order_) {
            if (!(candidates >> v & 1)) continue;
            ++size;
            candidates &= adj_[static_cast<size_t>(v)];
        }
        return std::max(size, 1);
    }

    bool try_colors(int idx, int k, int used) {
        if (idx == n_) return true;
        int v = order_[static_cast<size_t>(idx)];
        // Symmetry break: a fresh color may only be the next unused one.
        int limit = std::min(used + 1, k);
        for (int c = 0; c < limit; ++c) {
            bool clash = false;
            std::uint64_t nb = adj_[static_cast<size_t>(v)];
            while (nb) {
                int u = std::countr_zero(nb);
                nb &= nb - 1;
                if (colors_[static_cast<size_t>(u)] == c) {
                    clash = true;
                    break;
                }
            }
            if (clash) continue;
            colors_[static_cast<size_t>(v)] = c;
            if (try_colors(idx + 1, k, std::max(used, c + 1))) return true;
            colors_[static_cast<size_t>(v)] = -1;
        }
        return false;
    }

    int n_;
    std::vector<std::uint64_t> adj_;
    std::vector<int> order_;
    std::vector<int> colors_;
};

}  // namespace

BelowDiamCover cover_number_below_diam(const FiniteMetricSpace& y) {
    if (y.size() < 2)
        throw Error(errc::single_point,
                    "below-diameter covers need at least two points");
    if (y.size() > 64)
        throw Error(errc::space_too_large, "more than 64 points");
    std::vector<int> colors;
    DiamGraphColoring coloring(y);
    int k = coloring.solve(&colors);
    std::vector<std::vector<int>> blocks(static_cast<size_t>(k));
    for (int p = 0; p < y.size(); ++p)
        blocks[static_cast<size_t>(colors[static_cast<size_t>(p)])].push_back(p);
    return BelowDiamCover{k, PartitionOrCovering{std::move(blocks), true}};
}

}  // namespace ghx
