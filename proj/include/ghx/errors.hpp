#pragma once

#include "ghx/rational.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ghx {

// Failure categories. The CLI maps these onto exit codes: input problems
// (bad files, matrices that are not metrics) exit 2, exhausted search
// budgets exit 3, violated operation preconditions exit 4.
enum class errc {
    // input / matrix validation
    parse_error,
    not_square,
    not_symmetric,
    nonzero_diagonal,
    negative_distance,
    zero_off_diagonal,
    triangle_violation,
    io_error,

    // operation preconditions
    bad_cardinal,
    non_positive_scale,
    empty_subset,
    empty_relation,
    invalid_blocks,
    parameter_out_of_range,
    lambda_too_small,
    alpha_not_zero,
    not_diametral,
    negative_radius,
    epsilon_out_of_range,
    not_subextreme,
    zero_distance,
    single_point,
    space_too_large,

    // search resources
    budget_exceeded,
};

const char* errc_name(errc code);

// True for the categories that describe malformed input rather than a
// misused operation.
bool is_input_error(errc code);

class Error : public std::runtime_error {
public:
    Error(errc code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    errc code() const { return code_; }

private:
    errc code_;
};

// Raised when a correspondence search runs out of nodes. Keeps whatever
// bounds were proven before the cutoff so callers can still report them.
class BudgetExceeded : public Error {
public:
    BudgetExceeded(const std::string& message, Rational lower_bound,
                   Rational upper_bound, std::uint64_t nodes)
        : Error(errc::budget_exceeded, message),
          lower_bound_(std::move(lower_bound)),
          upper_bound_(std::move(upper_bound)),
          nodes_(nodes) {}

    const Rational& lower_bound() const { return lower_bound_; }
    const Rational& upper_bound() const { return upper_bound_; }
    std::uint64_t nodes() const { return nodes_; }

private:
    Rational lower_bound_;
    Rational upper_bound_;
    std::uint64_t nodes_;
};

}  // namespace ghx
