#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "ghx/errors.hpp"
#include "ghx/gh_exact.hpp"
#include "ghx/partitions.hpp"
#include "support/oracles.hpp"

using ghx::errc;
using ghx::Error;
using ghx::FiniteMetricSpace;
using ghx::PartitionOrCovering;
using ghx::Rational;

namespace {

template <typename Fn>
void expect_error(Fn&& fn, errc expected) {
    try {
        fn();
        FAIL_CHECK("expected an error, none raised");
    } catch (const Error& e) {
        CHECK(e.code() == expected);
    }
}

std::vector<std::vector<std::vector<int>>> drain(ghx::PartitionStream& stream) {
    std::vector<std::vector<std::vector<int>>> out;
    while (auto part = stream.next()) {
        CHECK(part->is_partition);
        out.push_back(part->blocks);
    }
    return out;
}

// Canonical form for set comparison: blocks sorted internally and by
// least element (the library already emits this shape; the oracle's
// recursion does too, so normalization is belt and braces).
std::vector<std::vector<int>> normalized(std::vector<std::vector<int>> blocks) {
    for (auto& b : blocks) std::sort(b.begin(), b.end());
    std::sort(blocks.begin(), blocks.end());
    return blocks;
}

// Straight-loop reimplementations of the partition statistics, local to
// the tests so the library's own partition_stats is not in the loop.
Rational raw_diam(const FiniteMetricSpace& x,
                  const std::vector<std::vector<int>>& blocks) {
    Rational worst = 0;
    for (const auto& b : blocks)
        for (size_t i = 0; i < b.size(); ++i)
            for (size_t j = i + 1; j < b.size(); ++j)
                if (x.dist(b[i], b[j]) > worst) worst = x.dist(b[i], b[j]);
    return worst;
}

Rational raw_alpha(const FiniteMetricSpace& x,
                   const std::vector<std::vector<int>>& blocks) {
    bool have = false;
    Rational best = 0;
    for (size_t a = 0; a < blocks.size(); ++a)
        for (size_t b = a + 1; b < blocks.size(); ++b)
            for (int p : blocks[a])
                for (int q : blocks[b])
                    if (!have || x.dist(p, q) < best) {
                        best = x.dist(p, q);
                        have = true;
                    }
    REQUIRE(have);
    return best;
}

// A random covering: every point joins one random block, then a sprinkle
// of extra memberships; empty blocks are dropped.
PartitionOrCovering random_covering(std::mt19937& rng, const FiniteMetricSpace& x,
                                    int want_blocks) {
    const int n = x.size();
    std::vector<std::vector<int>> blocks(static_cast<size_t>(want_blocks));
    for (int p = 0; p < n; ++p) blocks[rng() % size_t(want_blocks)].push_back(p);
    for (int p = 0; p < n; ++p)
        if (rng() % 3u == 0) {
            auto& b = blocks[rng() % size_t(want_blocks)];
            if (std::find(b.begin(), b.end(), p) == b.end()) b.push_back(p);
        }
    std::vector<std::vector<int>> kept;
    for (auto& b : blocks)
        if (!b.empty()) {
            std::sort(b.begin(), b.end());
            kept.push_back(std::move(b));
        }
    return ghx::make_covering(x, std::move(kept), false);
}

ghx::Correspondence random_correspondence(std::mt19937& rng, int n_x, int n_y) {
    std::vector<std::uint64_t> rows(static_cast<size_t>(n_x));
    const std::uint64_t full = (n_y == 64) ? ~0ull : (1ull << n_y) - 1;
    std::uint64_t covered = 0;
    for (auto& r : rows) {
        r = (rng() & full);
        if (!r) r = 1ull << (rng() % std::uint64_t(n_y));
        covered |= r;
    }
    for (int y = 0; y < n_y; ++y)
        if (!(covered >> y & 1)) rows[rng() % rows.size()] |= 1ull << y;
    return ghx::Correspondence::from_rows(n_x, n_y, std::move(rows));
}

}  // namespace

TEST_CASE("partition stream matches the recursive enumerator exactly") {
    for (int n = 1; n <= 6; ++n)
        for (int m = 1; m <= n; ++m) {
            CAPTURE(n);
            CAPTURE(m);
            ghx::PartitionStream stream(n, m);
            auto got = drain(stream);
            CHECK(got.size() == ghx::count_partitions(n, m));

            std::set<std::vector<std::vector<int>>> seen;
            for (const auto& blocks : got) {
                CHECK(int(blocks.size()) == m);
                CHECK(seen.insert(normalized(blocks)).second);  // no repeats
            }
            std::set<std::vector<std::vector<int>>> expected;
            for (const auto& blocks : oracle::all_partitions(n, m))
                expected.insert(normalized(blocks));
            CHECK(seen == expected);
        }
}

TEST_CASE("partition stream emits growth strings in increasing order") {
    // The growth string of a partition: the block index of each point,
    // blocks numbered by first appearance.
    auto growth_string = [](const std::vector<std::vector<int>>& blocks, int n) {
        std::vector<int> rgs(size_t(n), -1);
        for (int b = 0; b < int(blocks.size()); ++b)
            for (int p : blocks[size_t(b)]) rgs[size_t(p)] = b;
        return rgs;
    };
    for (int n = 2; n <= 6; ++n)
        for (int m = 2; m <= n; ++m) {
            ghx::PartitionStream stream(n, m);
            auto got = drain(stream);
            for (size_t i = 0; i + 1 < got.size(); ++i)
                CHECK(growth_string(got[i], n) < growth_string(got[i + 1], n));
            // First entry: all points in block 0 except the forced tail
            // climb, which contributes one singleton per later block.
            REQUIRE(!got.empty());
            CHECK(int(got.front()[0].size()) == n - m + 1);
        }
}

TEST_CASE("partition counts follow the two-kind recurrence") {
    CHECK(ghx::count_partitions(3, 3) == 1);
    CHECK(ghx::count_partitions(3, 2) == 3);
    CHECK(ghx::count_partitions(5, 2) == 15);
    CHECK(ghx::count_partitions(6, 3) == 90);
    CHECK(ghx::count_partitions(10, 4) == 34105);
    CHECK(ghx::count_partitions(1, 1) == 1);
    expect_error([] { (void)ghx::count_partitions(3, 4); }, errc::bad_cardinal);
    expect_error([] { (void)ghx::count_partitions(0, 1); }, errc::bad_cardinal);
    expect_error([] { (void)ghx::count_partitions(3, 0); }, errc::bad_cardinal);
    expect_error([] { (void)ghx::count_partitions(40, 20); },
                 errc::parameter_out_of_range);
}

TEST_CASE("partition stream rejects bad shapes") {
    expect_error([] { ghx::PartitionStream s(3, 0); }, errc::bad_cardinal);
    expect_error([] { ghx::PartitionStream s(3, 4); }, errc::bad_cardinal);
    expect_error([] { ghx::PartitionStream s(0, 1); }, errc::bad_cardinal);
}

TEST_CASE("partition statistics: block diameter and separation") {
    auto d3 = ghx::simplex(3, 1);
    auto singletons = ghx::make_covering(d3, {{0}, {1}, {2}}, true);
    auto stats = ghx::partition_stats(d3, singletons);
    CHECK(stats.diam == 0);
    REQUIRE(stats.alpha.has_value());
    CHECK(*stats.alpha == 1);

    auto line = oracle::line_space({"0", "1/2", "1"});
    stats = ghx::partition_stats(line, ghx::make_covering(line, {{0}, {1, 2}}, true));
    CHECK(stats.diam == Rational(1, 2));
    CHECK(*stats.alpha == Rational(1, 2));

    // Overlapping blocks share a point, so the separation collapses to 0.
    auto d2 = ghx::simplex(2, 1);
    stats = ghx::partition_stats(d2, ghx::make_covering(d2, {{0}, {0, 1}}, false));
    CHECK(*stats.alpha == 0);

    // A single block has no inter-block pairs at all.
    stats = ghx::partition_stats(d2, ghx::make_covering(d2, {{0, 1}}, true));
    CHECK_FALSE(stats.alpha.has_value());
    CHECK(stats.diam == 1);
}

TEST_CASE("frozen invariants of small spaces") {
    auto line = oracle::line_space({"0", "1/2", "1"});
    CHECK(ghx::d_m(line, 2) == Rational(1, 2));
    CHECK(ghx::d_m(line, 3) == 0);
    CHECK(ghx::alpha_m(line, 2) == Rational(1, 2));
    CHECK(ghx::alpha_m(line, 3) == Rational(1, 2));

    CHECK(ghx::d_m(ghx::simplex(3, 1), 2) == 1);

    auto far = oracle::line_space({"0", "1", "10"});
    CHECK(ghx::alpha_m(far, 2) == 9);
    CHECK(ghx::d_m(far, 2) == 1);

    // All-singletons always brings the largest block diameter to zero.
    for (const auto& x : oracle::fixed_corpus20())
        if (x.size() >= 2) CHECK(ghx::d_m(x, x.size()) == 0);

    // Every inter-block distance in a one-distance space equals the side.
    for (int n = 2; n <= 5; ++n)
        for (int m = 2; m <= n; ++m)
            CHECK(ghx::alpha_m(ghx::simplex(n, Rational(1, 2)), m) ==
                  Rational(1, 2));

    expect_error([&] { (void)ghx::d_m(line, 1); }, errc::bad_cardinal);
    expect_error([&] { (void)ghx::d_m(line, 4); }, errc::bad_cardinal);
    expect_error([&] { (void)ghx::alpha_m(line, 1); }, errc::bad_cardinal);
    expect_error([&] { (void)ghx::alpha_m(line, 4); }, errc::bad_cardinal);
}

TEST_CASE("invariants agree with exhaustive recomputation") {
    std::mt19937 rng(424242u);
    std::vector<FiniteMetricSpace> spaces = oracle::fixed_corpus20();
    for (int i = 0; i < 5; ++i) spaces.push_back(oracle::random_space(rng, 5));
    for (const auto& x : spaces) {
        if (x.size() < 2) continue;
        for (int m = 2; m <= x.size(); ++m) {
            bool have = false;
            Rational best_diam = 0, best_alpha = 0;
            for (const auto& blocks : oracle::all_partitions(x.size(), m)) {
                Rational d = raw_diam(x, blocks);
                Rational a = raw_alpha(x, blocks);
                if (!have) {
                    best_diam = d;
                    best_alpha = a;
                    have = true;
                } else {
                    if (d < best_diam) best_diam = d;
                    if (a > best_alpha) best_alpha = a;
                }
            }
            REQUIRE(have);
            CAPTURE(m);
            CHECK(ghx::d_m(x, m) == best_diam);
            CHECK(ghx::alpha_m(x, m) == best_alpha);
            CHECK(best_alpha > 0);  // always positive on a metric space
        }
    }
}

TEST_CASE("block invariants are monotone in the block count") {
    std::mt19937 rng(99u);
    std::vector<FiniteMetricSpace> spaces = oracle::fixed_corpus20();
    for (int i = 0; i < 4; ++i) spaces.push_back(oracle::random_space(rng, 6));
    for (const auto& x : spaces) {
        for (int m = 2; m < x.size(); ++m) {
            CHECK(ghx::d_m(x, m + 1) <= ghx::d_m(x, m));
            CHECK(ghx::alpha_m(x, m + 1) <= ghx::alpha_m(x, m));
        }
    }
}

TEST_CASE("disjointification of coverings") {
    auto line = oracle::line_space({"0", "1", "2"});

    auto part = ghx::make_covering(line, {{0, 1}, {2}}, true);
    auto same = ghx::covering_to_partition(part);
    CHECK(same.blocks == part.blocks);
    CHECK(same.is_partition);

    auto cov = ghx::make_covering(line, {{0, 1}, {1, 2}}, false);
    auto fixed = ghx::covering_to_partition(cov);
    CHECK(fixed.blocks == std::vector<std::vector<int>>{{0, 1}, {2}});

    cov = ghx::make_covering(line, {{0, 1, 2}, {1}, {2}}, false);
    fixed = ghx::covering_to_partition(cov);
    CHECK(fixed.blocks == std::vector<std::vector<int>>{{0, 1, 2}});
}

TEST_CASE("disjointification never grows block count or diameter") {
    std::mt19937 rng(31337u);
    for (int trial = 0; trial < 60; ++trial) {
        auto x = oracle::random_space(rng, 2 + int(rng() % 5u));
        auto cov = random_covering(rng, x, 2 + int(rng() % 3u));
        auto part = ghx::covering_to_partition(cov);
        CHECK(part.is_partition);
        CHECK(part.blocks.size() <= cov.blocks.size());
        CHECK(raw_diam(x, part.blocks) <= raw_diam(x, cov.blocks));
        // Disjoint and covering: revalidating as a partition must pass.
        (void)ghx::make_covering(x, part.blocks, true);
    }
}

TEST_CASE("pushing a covering through a correspondence") {
    auto d2 = ghx::simplex(2, 1);

    auto cov = ghx::make_covering(d2, {{0}, {1}}, true);
    auto through_id =
        ghx::push_covering(ghx::Correspondence::identity(2), cov);
    CHECK(through_id.blocks == cov.blocks);

    auto full = ghx::Correspondence::full(2, 2);
    auto pushed = ghx::push_covering(full, cov);
    CHECK(pushed.blocks ==
          std::vector<std::vector<int>>{{0, 1}, {0, 1}});
    CHECK_FALSE(pushed.is_partition);
    CHECK(ghx::partition_stats(d2, pushed).diam == 1);
    CHECK(ghx::distortion(d2, d2, full) == 1);
}

TEST_CASE("pushed coverings obey the diameter bound") {
    // diam(image covering) <= diam(source covering) + distortion.
    std::mt19937 rng(2718u);
    for (int trial = 0; trial < 100; ++trial) {
        auto x = oracle::random_space(rng, 2 + int(rng() % 4u));
        auto y = oracle::random_space(rng, 2 + int(rng() % 4u));
        auto r = random_correspondence(rng, x.size(), y.size());
        auto cov = random_covering(rng, x, 2 + int(rng() % 2u));
        auto pushed = ghx::push_covering(r, cov);

        CHECK(pushed.blocks.size() == cov.blocks.size());
        std::vector<char> hit(size_t(y.size()), 0);
        for (const auto& b : pushed.blocks) {
            CHECK(!b.empty());
            for (int q : b) hit[size_t(q)] = 1;
        }
        CHECK(std::count(hit.begin(), hit.end(), 0) == 0);

        Rational bound = raw_diam(x, cov.blocks) + ghx::distortion(x, y, r);
        CHECK(raw_diam(y, pushed.blocks) <= bound);
    }
}

TEST_CASE("covering construction rejects malformed block lists") {
    auto line = oracle::line_space({"0", "1", "2"});
    expect_error([&] { (void)ghx::make_covering(line, {}, false); },
                 errc::invalid_blocks);
    expect_error([&] { (void)ghx::make_covering(line, {{0, 1, 2}, {}}, false); },
                 errc::invalid_blocks);
    expect_error([&] { (void)ghx::make_covering(line, {{0, 1, 3}}, false); },
                 errc::invalid_blocks);
    expect_error([&] { (void)ghx::make_covering(line, {{0, 1, 1}, {2}}, false); },
                 errc::invalid_blocks);
    expect_error([&] { (void)ghx::make_covering(line, {{0, 1}, {1, 2}}, true); },
                 errc::invalid_blocks);
    expect_error([&] { (void)ghx::make_covering(line, {{0, 1}}, false); },
                 errc::invalid_blocks);
    // The same blocks are fine as a mere covering.
    CHECK_FALSE(ghx::make_covering(line, {{0, 1}, {1, 2}}, false).is_partition);
}

TEST_CASE("below-diameter cover numbers of canonical spaces") {
    for (int n = 2; n <= 6; ++n)
        CHECK(ghx::cover_number_below_diam(ghx::simplex(n, 1)).count == n);

    auto line = oracle::line_space({"0", "1/2", "1"});
    auto res = ghx::cover_number_below_diam(line);
    CHECK(res.count == 2);

    auto cycle = oracle::space({{"0", "1", "2", "1"},
                                {"1", "0", "1", "2"},
                                {"2", "1", "0", "1"},
                                {"1", "2", "1", "0"}});
    CHECK(ghx::cover_number_below_diam(cycle).count == 2);

    expect_error([] { (void)ghx::cover_number_below_diam(ghx::simplex(1, 1)); },
                 errc::single_point);
}

TEST_CASE("below-diameter cover witnesses are valid and minimal") {
    std::mt19937 rng(5150u);
    std::vector<FiniteMetricSpace> spaces = oracle::fixed_corpus20();
    for (const auto& x : oracle::exhaustive_corpus_123(4)) spaces.push_back(x);
    for (int i = 0; i < 6; ++i)
        spaces.push_back(oracle::random_space(rng, 2 + int(rng() % 6u)));

    for (const auto& y : spaces) {
        if (y.size() < 2) continue;
        auto res = ghx::cover_number_below_diam(y);
        CHECK(res.count == oracle::brute_cover_number(y));
        CHECK(int(res.blocks.blocks.size()) == res.count);
        // Witness blocks partition the space and each stays below the
        // diameter.
        (void)ghx::make_covering(y, res.blocks.blocks, true);
        Rational diam = ghx::diameter(y);
        for (const auto& b : res.blocks.blocks) {
            Rational worst = 0;
            for (size_t i = 0; i < b.size(); ++i)
                for (size_t j = i + 1; j < b.size(); ++j)
                    if (y.dist(b[i], b[j]) > worst) worst = y.dist(b[i], b[j]);
            CHECK(worst < diam);
        }
    }
}
