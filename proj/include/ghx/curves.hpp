#pragma once

#include "ghx/correspondence.hpp"
#include "ghx/gh_exact.hpp"
#include "ghx/partitions.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ghx {

// Straight-line interpolation between two spaces through a fixed
// correspondence: the space at parameter t has one point per matched pair
// and distances (1-t)|xx'| + t|yy'|.
struct LinearCurve {
    FiniteMetricSpace x;
    FiniteMetricSpace y;
    Correspondence r;
};

LinearCurve make_linear_curve(FiniteMetricSpace x, FiniteMetricSpace y,
                              Correspondence r);

struct InterpolatedSpace {
    FiniteMetricSpace space;
    // Index of the point carrying pair i of r.pairs(). Distinct pairs at
    // interpolated distance 0 collapse to one point (that keeps the
    // result a metric space; for metric inputs it can only happen at the
    // endpoints, where the exact originals are returned instead).
    std::vector<int> point_of_pair;
    bool merged = false;
};

// Throws parameter_out_of_range unless 0 <= t <= 1. At t = 0 returns x
// itself, at t = 1 returns y itself.
InterpolatedSpace linear_space(const LinearCurve& curve, const Rational& t);

struct BetweennessCertificate {
    Rational d_xy;
    Rational d_yz;
    Rational d_xz;
    bool between = false;  // d_xy + d_yz == d_xz, exactly
};

// Does y lie on a shortest path between x and z? Three exact distance
// computations; no tolerance.
BetweennessCertificate is_between(const FiniteMetricSpace& x,
                                  const FiniteMetricSpace& y,
                                  const FiniteMetricSpace& z,
                                  const SearchOptions& opts = {});

enum class Extremality {
    none,
    // 2d(X,Y) = diam Y - diam X: the least distance the diameters allow.
    subextreme,
    // 2d(X,Y) = diam Y >= diam X: the largest distance the diameters allow.
    hyperextreme,
    // Both spaces hyperextreme with respect to each other:
    // 2d = diam X = diam Y > 0.
    mutually_hyperextreme,
    // One-point X against a larger Y satisfies both definitions at once.
    hyper_and_subextreme,
};

const char* extremality_name(Extremality kind);

struct ExtremalityResult {
    Extremality kind = Extremality::none;
    Rational two_gh;  // 2 d(X, Y)
    Rational diam_x;
    Rational diam_y;
};

// Classifies Y relative to X per the definitions above. Throws
// zero_distance when the spaces are isometric (nothing to classify).
ExtremalityResult classify_extremality(const FiniteMetricSpace& x,
                                       const FiniteMetricSpace& y,
                                       const SearchOptions& opts = {});

// Y plus up to two new points stretching a diametral pair (y1, y2)
// outward by r1 and r2: |z_i y| = r_i + |y_i y|, |z1 z2| = r1 + diam + r2.
// A radius of zero identifies that z_i with y_i.
struct TwoPointExtension {
    FiniteMetricSpace y;
    int y1 = 0;
    int y2 = 0;
    Rational r1;
    Rational r2;
    FiniteMetricSpace z;
    int z1 = 0;  // index in z (equals y1 when r1 == 0)
    int z2 = 0;
};

// Throws not_diametral unless |y1 y2| = diam Y, negative_radius for
// negative radii.
TwoPointExtension two_point_extension(const FiniteMetricSpace& y, int y1, int y2,
                                      const Rational& r1, const Rational& r2);

// Everything needed to check, by hand, that no space can lie strictly
// beyond Y on a shortest path from X: the distance is extreme for the
// diameters, X splits into n well-separated singletons, and Y is covered
// by m <= n below-diameter blocks.
struct NonextendabilityCertificate {
    Rational two_gh;  // = diam X = diam Y
    Rational diam_x;
    Rational diam_y;
    int n = 0;                     // blocks of d_x (always #X singletons)
    PartitionOrCovering d_x;
    Rational alpha_d_x;            // min positive distance of X, > 0
    int m = 0;                     // below-diameter cover number of Y
    PartitionOrCovering c_y;
    Rational c_y_diam;             // largest block diameter, < diam Y
};

// Present iff the sufficient condition holds: mutual hyperextremality
// plus an m-cover of Y below diameter with m <= #X. Absence proves
// nothing. Requires both spaces to have at least two points.
std::optional<NonextendabilityCertificate> nonextendability_certificate(
    const FiniteMetricSpace& x, const FiniteMetricSpace& y,
    const SearchOptions& opts = {});

struct SimplexExtensionWitness {
    FiniteMetricSpace simplex_y;  // the m-point simplex of side lambda
    FiniteMetricSpace simplex_z;  // side lambda_prime
    BetweennessCertificate cert;  // X, simplex_y, simplex_z
};

// For lambda >= diam X + alpha_m(X), the segment [X, lambda simplex]
// keeps going through every larger simplex of the same cardinality; this
// returns the larger simplex with the betweenness certificate verified by
// three exact distance computations. lambda_prime must exceed lambda.
SimplexExtensionWitness simplex_extension_witness(const FiniteMetricSpace& x, int m,
                                                  const Rational& lambda,
                                                  const Rational& lambda_prime,
                                                  const SearchOptions& opts = {});

// When Y is subextreme with respect to X, X sits exactly between the
// one-point space and Y; returns that certificate. Throws not_subextreme
// when 2d(X,Y) != diam Y - diam X.
BetweennessCertificate subextreme_between_delta1(const FiniteMetricSpace& x,
                                                 const FiniteMetricSpace& y,
                                                 const SearchOptions& opts = {});

// A half-side simplex with one point blown up into a tight cluster of k
// points (pairwise eps); every such space sits at the same spot between
// the one-point space and the unit simplex regardless of k and eps.
// Requires n >= 2, k >= 1, 0 < eps < 1/2.
FiniteMetricSpace proper_class_gadget(int n, int k, const Rational& eps);

struct ExtensionWitness {
    // "two_point_extension" (subextreme case, also the isometric case) or
    // "larger_simplex" (Y a one-distance space; the doubled simplex is
    // probed and kept only when the betweenness check verifies).
    std::string kind;
    FiniteMetricSpace z;
    BetweennessCertificate cert;  // X, Y, Z with d_yz > 0
    Rational r1;
    Rational r2;
    Rational lambda_prime;
};

struct ExtendabilityReport {
    Rational gh;
    Rational diam_x;
    Rational diam_y;
    bool zero_distance = false;
    std::optional<ExtremalityResult> extremality;  // absent when gh == 0
    std::optional<NonextendabilityCertificate> nonextendable;
    std::optional<ExtensionWitness> extension;
};

// One-stop extendability analysis of the segment [X, Y] around Y:
// classification, the non-extendability certificate when it applies, and
// a verified extension witness when one of the constructive results
// yields one. Both absent means the question is open for this pair.
ExtendabilityReport extend_check(const FiniteMetricSpace& x,
                                 const FiniteMetricSpace& y,
                                 const SearchOptions& opts = {});

}  // namespace ghx
