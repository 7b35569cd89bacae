#include "ghx/curves.hpp"

#include "ghx/errors.hpp"
#include "ghx/simplex_dist.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

namespace ghx {

namespace {

std::pair<int, int> first_diametral_pair(const FiniteMetricSpace& y) {
    if (y.size() == 1) return {0, 0};
    Rational diam = diameter(y);
    for (int i = 0; i < y.size(); ++i)
        for (int j = i + 1; j < y.size(); ++j)
            if (y.dist(i, j) == diam) return {i, j};
    return {0, 0};  // unreachable: a diametral pair always exists
}

}  // namespace

LinearCurve make_linear_curve(FiniteMetricSpace x, FiniteMetricSpace y,
                              Correspondence r) {
    if (r.n_x() != x.size() || r.n_y() != y.size())
        throw Error(errc::parameter_out_of_range,
                    "correspondence does not fit the spaces");
    return LinearCurve{std::move(x), std::move(y), std::move(r)};
}

InterpolatedSpace linear_space(const LinearCurve& curve, const Rational& t) {
    if (t < 0 || t > 1)
        throw Error(errc::parameter_out_of_range,
                    "curve parameter must lie in [0, 1]");

    Relation pairs = curve.r.pairs();
    const int np = static_cast<int>(pairs.size());

    if (t == 0 || t == 1) {
        // Exact endpoints: hand back the original space; pairs land on
        // the coordinate they carry there.
        InterpolatedSpace out{t == 0 ? curve.x : curve.y, {}, false};
        out.point_of_pair.reserve(pairs.size());
        for (auto [px, py] : pairs)
            out.point_of_pair.push_back(t == 0 ? px : py);
        return out;
    }

    const Rational s = Rational(1) - t;
    auto dist_t = [&](int a, int b) {
        Rational v = s * curve.x.dist(pairs[static_cast<size_t>(a)].first,
                                      pairs[static_cast<size_t>(b)].first) +
                     t * curve.y.dist(pairs[static_cast<size_t>(a)].second,
                                      pairs[static_cast<size_t>(b)].second);
        return v;
    };

    // Quotient out zero-distance pairs. The interpolated distances form a
    // pseudometric (a convex mix of metrics), so "distance zero" is an
    // equivalence and representatives can stand for their class. For
    // metric inputs at interior t a merge actually requires two pairs
    // sharing both coordinates, which a correspondence never has.
    std::vector<int> cls(static_cast<size_t>(np), -1);
    std::vector<int> reps;
    for (int i = 0; i < np; ++i) {
        if (cls[static_cast<size_t>(i)] >= 0) continue;
        int id = static_cast<int>(reps.size());
        cls[static_cast<size_t>(i)] = id;
        for (int j = i + 1; j < np; ++j)
            if (cls[static_cast<size_t>(j)] < 0 && dist_t(i, j) == 0)
                cls[static_cast<size_t>(j)] = id;
        reps.push_back(i);
    }

    const int n = static_cast<int>(reps.size());
    std::vector<std::vector<Rational>> matrix(static_cast<size_t>(n));
    for (int a = 0; a < n; ++a) {
        matrix[static_cast<size_t>(a)].resize(static_cast<size_t>(n));
        for (int b = 0; b < n; ++b)
            matrix[static_cast<size_t>(a)][static_cast<size_t>(b)] =
                dist_t(reps[static_cast<size_t>(a)], reps[static_cast<size_t>(b)]);
    }
    return InterpolatedSpace{FiniteMetricSpace::validated(std::move(matrix)),
                             std::move(cls), n != np};
}

BetweennessCertificate is_between(const FiniteMetricSpace& x,
                                  const FiniteMetricSpace& y,
                                  const FiniteMetricSpace& z,
                                  const SearchOptions& opts) {
    BetweennessCertificate cert;
    cert.d_xy = gh_exact(x, y, opts).value;
    cert.d_yz = gh_exact(y, z, opts).value;
    cert.d_xz = gh_exact(x, z, opts).value;
    cert.between = cert.d_xy + cert.d_yz == cert.d_xz;
    return cert;
}

const char* extremality_name(Extremality kind) {
    switch (kind) {
        case Extremality::none: return "none";
        case Extremality::subextreme: return "subextreme";
        case Extremality::hyperextreme: return "hyperextreme";
        case Extremality::mutually_hyperextreme: return "mutually_hyperextreme";
        case Extremality::hyper_and_subextreme: return "hyper_and_subextreme";
    }
    return "unknown";
}

ExtremalityResult classify_extremality(const FiniteMetricSpace& x,
                                       const FiniteMetricSpace& y,
                                       const SearchOptions& opts) {
    ExtremalityResult res;
    res.two_gh = gh_exact(x, y, opts).min_distortion;
    res.diam_x = diameter(x);
    res.diam_y = diameter(y);
    if (res.two_gh == 0)
        throw Error(errc::zero_distance,
                    "the spaces are isometric; extremality is about how far "
                    "apart the diameters let them be");

    const bool hyper = res.two_gh == res.diam_y && res.diam_y >= res.diam_x;
    const bool sub = res.two_gh == res.diam_y - res.diam_x;
    const bool mutual = res.two_gh == res.diam_x && res.two_gh == res.diam_y;

    if (mutual)
        res.kind = Extremality::mutually_hyperextreme;
    else if (hyper && sub)
        res.kind = Extremality::hyper_and_subextreme;
    else if (hyper)
        res.kind = Extremality::hyperextreme;
    else if (sub)
        res.kind = Extremality::subextreme;
    else
        res.kind = Extremality::none;
    return res;
}

TwoPointExtension two_point_extension(const FiniteMetricSpace& y, int y1, int y2,
                                      const Rational& r1, const Rational& r2) {
    if (y1 < 0 || y1 >= y.size() || y2 < 0 || y2 >= y.size())
        throw Error(errc::parameter_out_of_range, "anchor index out of range");
    if (r1 < 0 || r2 < 0)
        throw Error(errc::negative_radius, "extension radii must be nonnegative");
    Rational diam = diameter(y);
    if (y.dist(y1, y2) != diam)
        throw Error(errc::not_diametral,
                    "|y1 y2| = " + format_rational(y.dist(y1, y2)) +
                        " but diam Y = " + format_rational(diam));

    const int n = y.size();
    const bool add1 = r1 > 0;
    const bool add2 = r2 > 0;
    const int nz = n + (add1 ? 1 : 0) + (add2 ? 1 : 0);
    const int z1 = add1 ? n : y1;
    const int z2 = add2 ? (add1 ? n + 1 : n) : y2;

    std::vector<std::vector<Rational>> matrix(static_cast<size_t>(nz));
    for (auto& row : matrix) row.resize(static_cast<size_t>(nz));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) matrix[i][j] = y.dist(i, j);
    if (add1)
        for (int i = 0; i < n; ++i)
            matrix[z1][i] = matrix[i][z1] = r1 + y.dist(y1, i);
    if (add2)
        for (int i = 0; i < n; ++i)
            matrix[z2][i] = matrix[i][z2] = r2 + y.dist(y2, i);
    if (add1 && add2) matrix[z1][z2] = matrix[z2][z1] = r1 + diam + r2;

    TwoPointExtension ext{y,  y1, y2, r1, r2,
                          FiniteMetricSpace::validated(std::move(matrix)),
                          z1, z2};
    return ext;
}

std::optional<NonextendabilityCertificate> nonextendability_certificate(
    const FiniteMetricSpace& x, const FiniteMetricSpace& y,
    const SearchOptions& opts) {
    if (x.size() < 2 || y.size() < 2)
        throw Error(errc::single_point,
                    "the certificate needs at least two points on each side");

    NonextendabilityCertificate cert;
    cert.two_gh = gh_exact(x, y, opts).min_distortion;
    cert.diam_x = diameter(x);
    cert.diam_y = diameter(y);
    // Mutual hyperextremality: the distance is as large as the two
    // diameters permit, on both sides.
    if (!(cert.two_gh == cert.diam_x && cert.two_gh == cert.diam_y &&
          cert.two_gh > 0))
        return std::nullopt;

    // The well-separated partition of X: all singletons. Its separation
    // is the smallest positive distance, necessarily > 0.
    cert.n = x.size();
    std::vector<std::vector<int>> singletons(static_cast<size_t>(x.size()));
    for (int i = 0; i < x.size(); ++i) singletons[static_cast<size_t>(i)] = {i};
    cert.d_x = PartitionOrCovering{std::move(singletons), true};
    cert.alpha_d_x = min_positive_distance(x);

    BelowDiamCover cover = cover_number_below_diam(y);
    cert.m = cover.count;
    if (cert.m > cert.n) return std::nullopt;
    cert.c_y = cover.blocks;
    cert.c_y_diam = partition_stats(y, cert.c_y).diam;
    return cert;
}

SimplexExtensionWitness simplex_extension_witness(const FiniteMetricSpace& x, int m,
                                                  const Rational& lambda,
                                                  const Rational& lambda_prime,
                                                  const SearchOptions& opts) {
    if (m <= 1 || m > x.size())
        throw Error(errc::bad_cardinal,
                    "need 1 < m <= " + std::to_string(x.size()));
    Rational a = alpha_m(x, m);
    Rational threshold = diameter(x) + a;
    if (lambda < threshold)
        throw Error(errc::lambda_too_small,
                    "need lambda >= diam X + alpha_m(X) = " +
                        format_rational(threshold));
    if (lambda_prime <= lambda)
        throw Error(errc::parameter_out_of_range,
                    "the extension target must be strictly larger (a zero-"
                    "length extension is no extension)");

    SimplexExtensionWitness w{simplex(m, lambda), simplex(m, lambda_prime), {}};
    w.cert = is_between(x, w.simplex_y, w.simplex_z, opts);
    return w;
}

BetweennessCertificate subextreme_between_delta1(const FiniteMetricSpace& x,
                                                 const FiniteMetricSpace& y,
                                                 const SearchOptions& opts) {
    Rational two = gh_exact(x, y, opts).min_distortion;
    Rational gap = diameter(y) - diameter(x);
    if (two != gap)
        throw Error(errc::not_subextreme,
                    "2 d(X,Y) = " + format_rational(two) +
                        " but diam Y - diam X = " + format_rational(gap));
    return is_between(simplex(1, 1), x, y, opts);
}

FiniteMetricSpace proper_class_gadget(int n, int k, const Rational& eps) {
    if (n < 2 || k < 1)
        throw Error(errc::bad_cardinal, "need n >= 2 rim points and k >= 1");
    if (eps <= 0 || eps >= Rational(1, 2))
        throw Error(errc::epsilon_out_of_range,
                    "cluster spread must lie strictly between 0 and 1/2");

    const Rational half(1, 2);
    const int rim = n - 1;
    const int total = rim + k;
    std::vector<std::vector<Rational>> matrix(static_cast<size_t>(total));
    for (auto& row : matrix) row.assign(static_cast<size_t>(total), half);
    for (int i = 0; i < total; ++i) matrix[i][i] = 0;
    for (int i = rim; i < total; ++i)
        for (int j = rim; j < total; ++j)
            if (i != j) matrix[i][j] = eps;
    return FiniteMetricSpace::validated(std::move(matrix));
}

ExtendabilityReport extend_check(const FiniteMetricSpace& x,
                                 const FiniteMetricSpace& y,
                                 const SearchOptions& opts) {
    ExtendabilityReport report;
    report.gh = gh_exact(x, y, opts).value;
    report.diam_x = diameter(x);
    report.diam_y = diameter(y);
    report.zero_distance = report.gh == 0;

    auto two_point_witness = [&](const Rational& r1) {
        auto [y1, y2] = first_diametral_pair(y);
        TwoPointExtension ext = two_point_extension(y, y1, y2, r1, 0);
        ExtensionWitness w{"two_point_extension", ext.z, {}, r1, 0, 0};
        w.cert = is_between(x, y, ext.z, opts);
        return w;
    };

    if (report.zero_distance) {
        // Degenerate segment: anything strictly past Y extends it. Push
        // the diametral pair out by half the diameter (or 1/2 for a
        // single point).
        Rational r1 = report.diam_y > 0 ? report.diam_y / 2 : Rational(1, 2);
        ExtensionWitness w = two_point_witness(r1);
        if (w.cert.between && w.cert.d_yz > 0) report.extension = std::move(w);
        return report;
    }

    report.extremality = classify_extremality(x, y, opts);
    const Extremality kind = report.extremality->kind;

    if (kind == Extremality::mutually_hyperextreme && x.size() >= 2 &&
        y.size() >= 2)
        report.nonextendable = nonextendability_certificate(x, y, opts);

    std::optional<ExtensionWitness> witness;
    if (kind == Extremality::subextreme ||
        kind == Extremality::hyper_and_subextreme) {
        witness = two_point_witness(report.diam_y / 2);
    } else {
        Rational side;
        if (is_simplex(y, &side) && y.size() >= 2) {
            // Y is a one-distance space: probe the double-sided simplex
            // of the same cardinality. The betweenness check below is
            // exact, so an unjustified probe can never produce a false
            // witness — it just comes back unverified and is dropped.
            Rational doubled = side * 2;
            FiniteMetricSpace z = simplex(y.size(), doubled);
            ExtensionWitness w{"larger_simplex", z, {}, 0, 0, doubled};
            w.cert = is_between(x, y, z, opts);
            witness = std::move(w);
        }
    }
    if (witness && witness->cert.between && witness->cert.d_yz > 0)
        report.extension = std::move(*witness);
    return report;
}

}  // namespace ghx
