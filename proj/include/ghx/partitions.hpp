#pragma once

#include "ghx/correspondence.hpp"
#include "ghx/metric_space.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace ghx {

// A family of nonempty blocks of point indices covering a space. When
// is_partition is set the blocks are also pairwise disjoint.
struct PartitionOrCovering {
    std::vector<std::vector<int>> blocks;
    bool is_partition = false;
};

// Validates blocks against x: nonempty, in range, no duplicates inside a
// block, union covering every point; disjointness when as_partition.
PartitionOrCovering make_covering(const FiniteMetricSpace& x,
                                  std::vector<std::vector<int>> blocks,
                                  bool as_partition);

struct PartitionStats {
    // Largest block diameter.
    Rational diam;
    // Smallest distance between two points in different blocks; absent
    // (conventionally +infinity) when there is a single block.
    std::optional<Rational> alpha;
};

PartitionStats partition_stats(const FiniteMetricSpace& x,
                               const PartitionOrCovering& family);

// Streams every partition of {0..n-1} into exactly m nonempty blocks, in
// lexicographic restricted-growth-string order. Blocks come out ordered
// by smallest member. O(n) state; nothing is materialized.
class PartitionStream {
public:
    PartitionStream(int n, int m);  // throws bad_cardinal unless 1 <= m <= n
    std::optional<PartitionOrCovering> next();

private:
    bool advance();

    int n_;
    int m_;
    bool first_ = true;
    bool done_ = false;
    std::vector<int> rgs_;
};

// Number of partitions of an n-set into exactly m blocks (Stirling,
// second kind). Overflow-checked against uint64.
std::uint64_t count_partitions(int n, int m);

// Smallest achievable largest-block-diameter over partitions into m
// blocks (2 <= m <= n).
Rational d_m(const FiniteMetricSpace& x, int m);

// Largest achievable smallest-inter-block-distance over partitions into m
// blocks (2 <= m <= n). Always positive on a finite metric space.
Rational alpha_m(const FiniteMetricSpace& x, int m);

// Disjointification: block i keeps only the points not already claimed by
// blocks before it; emptied blocks are dropped. Never increases any block
// diameter.
PartitionOrCovering covering_to_partition(const PartitionOrCovering& covering);

// Image of a covering of X through a correspondence: block i becomes the
// set of all y matched with some member. Produces a covering of Y.
PartitionOrCovering push_covering(const Correspondence& r,
                                  const PartitionOrCovering& covering_of_x);

struct BelowDiamCover {
    int count = 0;
    // A witness partition into `count` blocks, each of diameter strictly
    // below the diameter of the space.
    PartitionOrCovering blocks;
};

// Minimum number of parts needed to cover the space with sets of
// below-diameter size: the chromatic number of the graph joining pairs at
// distance exactly diam. Throws single_point when |Y| < 2.
BelowDiamCover cover_number_below_diam(const FiniteMetricSpace& y);

}  // namespace ghx
