#include "ghx/rational.hpp"

#include "ghx/errors.hpp"

#include <cctype>

namespace ghx {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

[[noreturn]] void bad(std::string_view text) {
    throw Error(errc::parse_error,
                "not a rational number: '" + std::string(text) + "'");
}

}  // namespace

Rational parse_rational(std::string_view text) {
    std::string_view rest = text;
    bool negative = false;
    if (!rest.empty() && (rest.front() == '+' || rest.front() == '-')) {
        negative = rest.front() == '-';
        rest.remove_prefix(1);
    }

    auto slash = rest.find('/');
    auto dot = rest.find('.');
    Rational value;
    if (slash != std::string_view::npos) {
        std::string_view num = rest.substr(0, slash);
        std::string_view den = rest.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) bad(text);
        Integer q{std::string(den)};
        if (q == 0) bad(text);
        value = Rational(Integer{std::string(num)}, q);
    } else if (dot != std::string_view::npos) {
        std::string_view whole = rest.substr(0, dot);
        std::string_view frac = rest.substr(dot + 1);
        if (!all_digits(frac) || (!whole.empty() && !all_digits(whole))) bad(text);
        Integer scale = 1;
        for (size_t i = 0; i < frac.size(); ++i) scale *= 10;
        Integer units = whole.empty() ? Integer(0) : Integer{std::string(whole)};
        value = Rational(units * scale + Integer{std::string(frac)}, scale);
    } else {
        if (!all_digits(rest)) bad(text);
        value = Rational(Integer{std::string(rest)});
    }
    if (negative) value = -value;
    return value;
}

std::string format_rational(const Rational& value) {
    Integer num = numerator(value);
    Integer den = denominator(value);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

const char* errc_name(errc code) {
    switch (code) {
        case errc::parse_error: return "parse_error";
        case errc::not_square: return "not_square";
        case errc::not_symmetric: return "not_symmetric";
        case errc::nonzero_diagonal: return "nonzero_diagonal";
        case errc::negative_distance: return "negative_distance";
        case errc::zero_off_diagonal: return "zero_off_diagonal";
        case errc::triangle_violation: return "triangle_violation";
        case errc::io_error: return "io_error";
        case errc::bad_cardinal: return "bad_cardinal";
        case errc::non_positive_scale: return "non_positive_scale";
        case errc::empty_subset: return "empty_subset";
        case errc::empty_relation: return "empty_relation";
        case errc::invalid_blocks: return "invalid_blocks";
        case errc::parameter_out_of_range: return "parameter_out_of_range";
        case errc::lambda_too_small: return "lambda_too_small";
        case errc::alpha_not_zero: return "alpha_not_zero";
        case errc::not_diametral: return "not_diametral";
        case errc::negative_radius: return "negative_radius";
        case errc::epsilon_out_of_range: return "epsilon_out_of_range";
        case errc::not_subextreme: return "not_subextreme";
        case errc::zero_distance: return "zero_distance";
        case errc::single_point: return "single_point";
        case errc::space_too_large: return "space_too_large";
        case errc::budget_exceeded: return "budget_exceeded";
    }
    return "unknown";
}

bool is_input_error(errc code) {
    switch (code) {
        case errc::parse_error:
        case errc::not_square:
        case errc::not_symmetric:
        case errc::nonzero_diagonal:
        case errc::negative_distance:
        case errc::zero_off_diagonal:
        case errc::triangle_violation:
        case errc::io_error:
            return true;
        default:
            return false;
    }
}

}  // namespace ghx
