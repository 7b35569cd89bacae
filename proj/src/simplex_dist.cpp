#include "ghx/simplex_dist.hpp"

#include "ghx/errors.hpp"

#include <utility>

namespace ghx {

namespace {

void check_shape(const FiniteMetricSpace& x, int m) {
    if (m <= 1 || m > x.size())
        throw Error(errc::bad_cardinal,
                    "need 1 < m <= " + std::to_string(x.size()) + ", got m = " +
                        std::to_string(m));
}

}  // namespace

SimplexDistanceReport dist_to_simplex_report(const FiniteMetricSpace& x, int m,
                                             const Rational& lambda) {
    check_shape(x, m);
    if (lambda <= 0)
        throw Error(errc::non_positive_scale, "simplex side must be positive");

    const Rational diam_x = diameter(x);
    const Rational tail = diam_x - lambda;

    SimplexDistanceReport report;
    bool have = false;
    PartitionStream stream(x.size(), m);
    while (auto part = stream.next()) {
        PartitionStats stats = partition_stats(x, *part);
        // m >= 2 guarantees an inter-block pair, so alpha is present.
        Rational objective = stats.diam;
        Rational starved = lambda - *stats.alpha;
        if (starved > objective) objective = starved;
        if (tail > objective) objective = tail;

        if (!have) {
            report.best_partition = *part;
            report.best_diam = stats.diam;
            report.best_alpha = *stats.alpha;
            report.value = objective;
            report.d_m = stats.diam;
            report.alpha_m = *stats.alpha;
            have = true;
            continue;
        }
        if (objective < report.value) {
            report.value = objective;
            report.best_partition = *part;
            report.best_diam = stats.diam;
            report.best_alpha = *stats.alpha;
        }
        if (stats.diam < report.d_m) report.d_m = stats.diam;
        if (*stats.alpha > report.alpha_m) report.alpha_m = *stats.alpha;
    }

    report.value /= 2;
    report.large_lambda_applies = lambda >= diam_x + report.alpha_m;
    return report;
}

Rational dist_to_simplex(const FiniteMetricSpace& x, int m, const Rational& lambda) {
    return dist_to_simplex_report(x, m, lambda).value;
}

Rational dist_to_simplex_large_lambda(const FiniteMetricSpace& x, int m,
                                      const Rational& lambda) {
    check_shape(x, m);
    Rational a = alpha_m(x, m);
    Rational threshold = diameter(x) + a;
    if (lambda < threshold)
        throw Error(errc::lambda_too_small,
                    "need lambda >= diam X + alpha_m(X) = " +
                        format_rational(threshold) + ", got " +
                        format_rational(lambda));
    Rational v = lambda - a;
    return v / 2;
}

Rational dist_to_simplex_alpha0(const FiniteMetricSpace& x, int m,
                                const Rational& lambda) {
    check_shape(x, m);
    Rational a = alpha_m(x, m);
    if (a != 0)
        throw Error(errc::alpha_not_zero,
                    "alpha_m(X) = " + format_rational(a) +
                        "; the zero-separation formula does not apply "
                        "(it never does for a finite metric space)");
    Rational best = d_m(x, m);
    if (lambda > best) best = lambda;
    Rational tail = diameter(x) - lambda;
    if (tail > best) best = tail;
    return best / 2;
}

}  // namespace ghx
