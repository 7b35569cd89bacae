#include "ghx/matrix_io.hpp"

#include "ghx/errors.hpp"

#include <cstdint>
#include <fstream>
#include <istream>
#include <sstream>

namespace ghx {

namespace {

struct TokenLine {
    int line_no = 0;
    std::vector<std::string> tokens;
};

// Comment-stripped, non-blank lines with their original line numbers.
std::vector<TokenLine> tokenize(std::istream& in) {
    std::vector<TokenLine> out;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream row(line);
        TokenLine tl;
        tl.line_no = line_no;
        std::string tok;
        while (row >> tok) tl.tokens.push_back(tok);
        if (!tl.tokens.empty()) out.push_back(std::move(tl));
    }
    return out;
}

[[noreturn]] void fail(int line_no, const std::string& what) {
    throw Error(errc::parse_error, "line " + std::to_string(line_no) + ": " + what);
}

}  // namespace

FiniteMetricSpace read_distance_matrix(std::istream& in) {
    auto lines = tokenize(in);
    if (lines.empty())
        throw Error(errc::parse_error, "empty input: expected a point count");

    const auto& head = lines.front();
    if (head.tokens.size() != 1)
        fail(head.line_no, "expected a single point count, got " +
                               std::to_string(head.tokens.size()) + " tokens");
    int n = 0;
    try {
        size_t used = 0;
        n = std::stoi(head.tokens[0], &used);
        if (used != head.tokens[0].size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
        fail(head.line_no, "point count is not an integer: '" + head.tokens[0] + "'");
    }
    if (n < 1) fail(head.line_no, "point count must be at least 1");

    if (static_cast<int>(lines.size()) != n + 1) {
        int last = lines.back().line_no;
        fail(last, "expected " + std::to_string(n) + " matrix rows, found " +
                       std::to_string(lines.size() - 1));
    }

    std::vector<std::vector<Rational>> matrix;
    matrix.reserve(n);
    for (int i = 0; i < n; ++i) {
        const auto& row = lines[static_cast<size_t>(i) + 1];
        if (static_cast<int>(row.tokens.size()) != n)
            fail(row.line_no, "row " + std::to_string(i) + " has " +
                                  std::to_string(row.tokens.size()) +
                                  " entries, expected " + std::to_string(n));
        std::vector<Rational> vals;
        vals.reserve(n);
        for (const auto& tok : row.tokens) {
            try {
                vals.push_back(parse_rational(tok));
            } catch (const Error&) {
                fail(row.line_no, "bad entry '" + tok + "'");
            }
        }
        matrix.push_back(std::move(vals));
    }
    return FiniteMetricSpace::validated(std::move(matrix));
}

FiniteMetricSpace load_distance_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(errc::io_error, "cannot open '" + path + "'");
    try {
        return read_distance_matrix(in);
    } catch (const Error& e) {
        if (e.code() == errc::parse_error)
            throw Error(errc::parse_error, path + ": " + e.what());
        throw Error(e.code(), path + ": " + e.what());
    }
}

std::string write_distance_matrix(const FiniteMetricSpace& x) {
    std::ostringstream out;
    out << x.size() << "\n";
    for (int i = 0; i < x.size(); ++i) {
        for (int j = 0; j < x.size(); ++j) {
            if (j) out << ' ';
            out << format_rational(x.dist(i, j));
        }
        out << "\n";
    }
    return out.str();
}

std::string fnv1a_hex(std::string_view bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<size_t>(i)] = digits[h & 0xf];
        h >>= 4;
    }
    return out;
}

std::string slurp_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(errc::io_error, "cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace ghx
