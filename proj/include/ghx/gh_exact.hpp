#pragma once

#include "ghx/correspondence.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace ghx {

struct SearchOptions {
    // Candidate row assignments the search may evaluate before giving up
    // with a budget error. The default is generous for spaces of six or
    // so points each.
    std::uint64_t node_budget = 50'000'000;
};

// How the reported value is known to be optimal.
struct LowerBoundWitness {
    enum class Kind {
        // The value equals |diam X - diam Y| / 2, which no correspondence
        // can beat.
        diameter_difference,
        // The search exhausted every correspondence at all strictly
        // smaller candidate distortion levels.
        exhausted_below_level,
    };
    Kind kind = Kind::diameter_difference;
    // Largest candidate distortion proven infeasible (only for
    // exhausted_below_level).
    std::optional<Rational> largest_infeasible_distortion;
};

struct DistanceCertificate {
    Rational value;           // the distance between the two spaces
    Rational min_distortion;  // 2 * value
    // Canonically smallest optimal correspondence: row masks compared as
    // integers, row 0 most significant.
    Correspondence witness;
    LowerBoundWitness lower_bound;
    std::uint64_t nodes = 0;
};

// Exact distance by branch and bound over correspondences. Throws
// BudgetExceeded (with the bounds proven so far) when the node budget
// runs out, and space_too_large above 32 points per side.
DistanceCertificate gh_exact(const FiniteMetricSpace& x, const FiniteMetricSpace& y,
                             const SearchOptions& opts = {});

// First correspondence in canonical order with distortion <= max_distortion,
// or nullopt when none exists. max_distortion must be nonnegative. With
// x == y and max_distortion == 0 this returns the identity.
std::optional<Correspondence> feasible(const FiniteMetricSpace& x,
                                       const FiniteMetricSpace& y,
                                       const Rational& max_distortion,
                                       const SearchOptions& opts = {});

struct LevelSearchCertificate {
    Rational value;
    Rational min_distortion;
    Correspondence witness;
    std::uint64_t nodes = 0;
    int probes = 0;  // feasibility decisions made
};

// Same distance by a different route, used as a cross-check: binary
// search over the sorted candidate distortion levels, deciding each level
// with the feasibility search.
LevelSearchCertificate gh_exact_by_level_search(const FiniteMetricSpace& x,
                                                const FiniteMetricSpace& y,
                                                const SearchOptions& opts = {});

// |diam X - diam Y| / 2. Never exceeds the distance.
Rational gh_lower_bound(const FiniteMetricSpace& x, const FiniteMetricSpace& y);

// max(diam X, diam Y) / 2: half the distortion of the everything-matches-
// everything correspondence.
Rational gh_upper_bound_max_diam(const FiniteMetricSpace& x,
                                 const FiniteMetricSpace& y);

// Sorted distinct values |d_X(i,j) - d_Y(k,l)|. The optimal distortion is
// always one of these; 0 is always present.
std::vector<Rational> distortion_levels(const FiniteMetricSpace& x,
                                        const FiniteMetricSpace& y);

}  // namespace ghx
