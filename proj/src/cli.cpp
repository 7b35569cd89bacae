#include "ghx/cli.hpp"

#include "ghx/curves.hpp"
#include "ghx/errors.hpp"
#include "ghx/gh_exact.hpp"
#include "ghx/matrix_io.hpp"
#include "ghx/partitions.hpp"
#include "ghx/simplex_dist.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <ostream>
#include <sstream>

namespace ghx::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

// ---------------------------------------------------------------------
// report rendering

bool is_scalar(const ordered_json& j) {
    return j.is_string() || j.is_number() || j.is_boolean() || j.is_null();
}

std::string inline_value(const ordered_json& j) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_boolean()) return j.get<bool>() ? "true" : "false";
    if (j.is_null()) return "none";
    if (j.is_number_unsigned()) return std::to_string(j.get<std::uint64_t>());
    if (j.is_number_integer()) return std::to_string(j.get<std::int64_t>());
    if (j.is_array()) {
        std::string out;
        for (size_t i = 0; i < j.size(); ++i) {
            if (i) out += ' ';
            if (j[i].is_array()) {
                out += '[';
                for (size_t k = 0; k < j[i].size(); ++k) {
                    if (k) out += ' ';
                    out += inline_value(j[i][k]);
                }
                out += ']';
            } else {
                out += inline_value(j[i]);
            }
        }
        return out;
    }
    return j.dump();
}

void render_text(const ordered_json& j, std::ostream& out, int indent) {
    std::string pad(static_cast<size_t>(indent) * 2, ' ');
    for (const auto& [key, value] : j.items()) {
        if (value.is_object()) {
            out << pad << key << ":\n";
            render_text(value, out, indent + 1);
        } else if (is_scalar(value) || value.is_array()) {
            out << pad << key << ": " << inline_value(value) << "\n";
        } else {
            out << pad << key << ": " << value.dump() << "\n";
        }
    }
}

// ---------------------------------------------------------------------
// shared pieces

std::string join_args(const std::vector<std::string>& args) {
    std::string out;
    for (size_t i = 0; i < args.size(); ++i) {
        if (i) out += ' ';
        out += args[i];
    }
    return out;
}

struct LoadedInput {
    FiniteMetricSpace space;
    ordered_json describe;
};

LoadedInput load_input(const std::string& path) {
    std::string bytes = slurp_file(path);
    std::istringstream in(bytes);
    FiniteMetricSpace space = [&] {
        try {
            return read_distance_matrix(in);
        } catch (const Error& e) {
            throw Error(e.code(), path + ": " + e.what());
        }
    }();
    ordered_json d;
    d["path"] = path;
    d["n"] = space.size();
    d["diam"] = format_rational(diameter(space));
    d["digest"] = fnv1a_hex(bytes);
    return LoadedInput{std::move(space), std::move(d)};
}

ordered_json correspondence_json(const Correspondence& r) {
    ordered_json out;
    for (int x = 0; x < r.n_x(); ++x) {
        ordered_json ys = ordered_json::array();
        for (int y : r.row(x)) ys.push_back(y);
        out["x" + std::to_string(x)] = std::move(ys);
    }
    return out;
}

ordered_json blocks_json(const PartitionOrCovering& family) {
    ordered_json out = ordered_json::array();
    for (const auto& block : family.blocks) {
        ordered_json b = ordered_json::array();
        for (int p : block) b.push_back(p);
        out.push_back(std::move(b));
    }
    return out;
}

ordered_json matrix_json(const FiniteMetricSpace& s) {
    ordered_json rows;
    for (int i = 0; i < s.size(); ++i) {
        std::string row;
        for (int j = 0; j < s.size(); ++j) {
            if (j) row += ' ';
            row += format_rational(s.dist(i, j));
        }
        rows["row" + std::to_string(i)] = std::move(row);
    }
    return rows;
}

ordered_json distance_certificate_json(const DistanceCertificate& cert) {
    ordered_json r;
    r["d_gh"] = format_rational(cert.value);
    r["min_distortion"] = format_rational(cert.min_distortion);
    r["witness"] = correspondence_json(cert.witness);
    r["optimality"] =
        cert.lower_bound.kind == LowerBoundWitness::Kind::diameter_difference
            ? "diameter_difference"
            : "exhausted_below_level";
    if (cert.lower_bound.largest_infeasible_distortion)
        r["largest_infeasible_distortion"] =
            format_rational(*cert.lower_bound.largest_infeasible_distortion);
    r["nodes"] = cert.nodes;
    return r;
}

ordered_json betweenness_json(const BetweennessCertificate& cert) {
    ordered_json r;
    r["d_xy"] = format_rational(cert.d_xy);
    r["d_yz"] = format_rational(cert.d_yz);
    r["d_xz"] = format_rational(cert.d_xz);
    r["between"] = cert.between;
    return r;
}

Rational parse_cli_rational(const std::string& text, const char* what) {
    try {
        return parse_rational(text);
    } catch (const Error&) {
        throw Error(errc::parse_error,
                    std::string(what) + " is not a rational: '" + text + "'");
    }
}

// ---------------------------------------------------------------------
// commands

ordered_json cmd_validate(const std::string& path) {
    LoadedInput in = load_input(path);
    ordered_json result;
    result["status"] = "ok";
    result["n"] = in.space.size();
    result["diam"] = format_rational(diameter(in.space));
    if (in.space.size() > 1)
        result["min_positive_distance"] =
            format_rational(min_positive_distance(in.space));
    Rational side;
    result["one_distance_space"] = is_simplex(in.space, &side);
    result["canonical"] = matrix_json(in.space);

    ordered_json report;
    report["input"] = in.describe;
    report["result"] = std::move(result);
    return report;
}

ordered_json cmd_dist(const std::string& path_x, const std::string& path_y,
                      const SearchOptions& opts) {
    LoadedInput x = load_input(path_x);
    LoadedInput y = load_input(path_y);
    DistanceCertificate cert = gh_exact(x.space, y.space, opts);

    ordered_json report;
    report["input_x"] = x.describe;
    report["input_y"] = y.describe;
    report["result"] = distance_certificate_json(cert);
    return report;
}

ordered_json cmd_simplex_dist(const std::string& path_x, int m,
                              const std::string& lambda_text,
                              const SearchOptions& opts) {
    LoadedInput x = load_input(path_x);
    Rational lambda = parse_cli_rational(lambda_text, "lambda");
    SimplexDistanceReport rep = dist_to_simplex_report(x.space, m, lambda);

    ordered_json result;
    result["d_gh"] = format_rational(rep.value);
    Rational two = rep.value * 2;
    result["min_distortion"] = format_rational(two);
    result["m"] = m;
    result["lambda"] = format_rational(lambda);
    result["routing"] = rep.large_lambda_applies ? "large_lambda" : "general";
    result["d_m"] = format_rational(rep.d_m);
    result["alpha_m"] = format_rational(rep.alpha_m);
    ordered_json best;
    best["blocks"] = blocks_json(rep.best_partition);
    best["diam"] = format_rational(rep.best_diam);
    best["alpha"] = format_rational(rep.best_alpha);
    result["best_partition"] = std::move(best);
    if (rep.large_lambda_applies)
        result["large_lambda_value"] =
            format_rational(dist_to_simplex_large_lambda(x.space, m, lambda));

    // Independent confirmation through the correspondence search.
    DistanceCertificate cert = gh_exact(simplex(m, lambda), x.space, opts);
    ordered_json cross;
    cross["d_gh"] = format_rational(cert.value);
    cross["match"] = cert.value == rep.value;
    cross["nodes"] = cert.nodes;
    result["cross_check"] = std::move(cross);

    ordered_json report;
    report["input"] = x.describe;
    report["result"] = std::move(result);
    return report;
}

ordered_json cmd_invariants(const std::string& path, int m) {
    LoadedInput in = load_input(path);
    ordered_json result;
    result["n"] = in.space.size();
    result["diam"] = format_rational(diameter(in.space));

    BelowDiamCover cover = cover_number_below_diam(in.space);
    result["m"] = m;
    result["d_m"] = format_rational(d_m(in.space, m));
    result["alpha_m"] = format_rational(alpha_m(in.space, m));
    result["partitions_enumerated"] = count_partitions(in.space.size(), m);
    result["cover_number_below_diam"] = cover.count;
    result["cover_blocks"] = blocks_json(cover.blocks);

    ordered_json report;
    report["input"] = in.describe;
    report["result"] = std::move(result);
    return report;
}

ordered_json cmd_between(const std::string& path_x, const std::string& path_y,
                         const std::string& path_z, const SearchOptions& opts) {
    LoadedInput x = load_input(path_x);
    LoadedInput y = load_input(path_y);
    LoadedInput z = load_input(path_z);
    BetweennessCertificate cert = is_between(x.space, y.space, z.space, opts);

    ordered_json report;
    report["input_x"] = x.describe;
    report["input_y"] = y.describe;
    report["input_z"] = z.describe;
    report["result"] = betweenness_json(cert);
    return report;
}

ordered_json cmd_extend_check(const std::string& path_x, const std::string& path_y,
                              const SearchOptions& opts) {
    LoadedInput x = load_input(path_x);
    LoadedInput y = load_input(path_y);
    ExtendabilityReport rep = extend_check(x.space, y.space, opts);

    ordered_json result;
    result["d_gh"] = format_rational(rep.gh);
    result["min_distortion"] = format_rational(rep.gh * 2);
    result["diam_x"] = format_rational(rep.diam_x);
    result["diam_y"] = format_rational(rep.diam_y);
    result["classification"] =
        rep.zero_distance ? "isometric" : extremality_name(rep.extremality->kind);

    if (rep.nonextendable) {
        const auto& c = *rep.nonextendable;
        ordered_json cert;
        cert["two_d_gh"] = format_rational(c.two_gh);
        cert["n"] = c.n;
        cert["partition_x"] = blocks_json(c.d_x);
        cert["alpha_partition_x"] = format_rational(c.alpha_d_x);
        cert["m"] = c.m;
        cert["cover_y"] = blocks_json(c.c_y);
        cert["cover_y_diam"] = format_rational(c.c_y_diam);
        cert["diam_y"] = format_rational(c.diam_y);
        result["nonextendable_beyond_y"] = std::move(cert);
    } else {
        result["nonextendable_beyond_y"] = nullptr;
    }

    if (rep.extension) {
        const auto& w = *rep.extension;
        ordered_json ext;
        ext["kind"] = w.kind;
        if (w.kind == "two_point_extension") {
            ext["r1"] = format_rational(w.r1);
            ext["r2"] = format_rational(w.r2);
        } else {
            ext["lambda_prime"] = format_rational(w.lambda_prime);
        }
        ext["z_n"] = w.z.size();
        ext["z_matrix"] = matrix_json(w.z);
        ext["certificate"] = betweenness_json(w.cert);
        result["extension_beyond_y"] = std::move(ext);
    } else {
        result["extension_beyond_y"] = nullptr;
    }

    ordered_json report;
    report["input_x"] = x.describe;
    report["input_y"] = y.describe;
    report["result"] = std::move(result);
    return report;
}

ordered_json cmd_geodesic(const std::string& path_x, const std::string& path_y,
                          const std::string& t_list, const std::string& eps_text,
                          const SearchOptions& opts) {
    LoadedInput x = load_input(path_x);
    LoadedInput y = load_input(path_y);

    Rational eps = parse_cli_rational(eps_text, "epsilon");
    if (eps < 0)
        throw Error(errc::parameter_out_of_range, "epsilon must be nonnegative");

    std::vector<Rational> ts;
    {
        std::istringstream sstr(t_list);
        std::string tok;
        while (std::getline(sstr, tok, ',')) {
            if (tok.empty()) continue;
            Rational t = parse_cli_rational(tok, "curve parameter");
            if (t < 0 || t > 1)
                throw Error(errc::parameter_out_of_range,
                            "curve parameters must lie in [0, 1]");
            ts.push_back(std::move(t));
        }
    }
    if (ts.empty())
        throw Error(errc::parameter_out_of_range, "no curve parameters given");

    DistanceCertificate cert = gh_exact(x.space, y.space, opts);
    Rational slack = cert.min_distortion + eps * 2;
    auto r = feasible(x.space, y.space, slack, opts);
    // Feasible at 2 d_gh + 2 eps always succeeds: the optimum qualifies.
    LinearCurve curve = make_linear_curve(x.space, y.space, *r);
    Rational dis_r = distortion(x.space, y.space, *r);

    ordered_json result;
    result["d_gh"] = format_rational(cert.value);
    result["epsilon"] = format_rational(eps);
    result["distortion_threshold"] = format_rational(slack);
    result["r"] = correspondence_json(*r);
    result["dis_r"] = format_rational(dis_r);

    ordered_json samples;
    for (const auto& t : ts) {
        InterpolatedSpace sample = linear_space(curve, t);
        ordered_json s;
        s["n"] = sample.space.size();
        s["merged"] = sample.merged;
        s["diam"] = format_rational(diameter(sample.space));
        s["matrix"] = matrix_json(sample.space);
        samples["t=" + format_rational(t)] = std::move(s);
    }
    result["samples"] = std::move(samples);

    ordered_json report;
    report["input_x"] = x.describe;
    report["input_y"] = y.describe;
    report["result"] = std::move(result);
    return report;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out) {
    CLI::App app{"exact distance workbench for finite metric spaces"};
    app.require_subcommand(0, 1);
    bool json = false;
    app.add_flag("--json", json, "emit the report as JSON");

    std::string path_x, path_y, path_z;
    int m = 2;
    std::string lambda_text = "1";
    std::string t_list = "0,1/2,1";
    std::string eps_text = "0";
    SearchOptions opts;

    auto add_budget = [&opts](CLI::App* sub) {
        sub->add_option("--budget", opts.node_budget,
                        "search node budget before giving up");
    };

    auto* validate = app.add_subcommand("validate", "check a distance matrix file");
    validate->add_option("path", path_x, "matrix file")->required();

    auto* dist = app.add_subcommand("dist", "exact distance with certificate");
    dist->add_option("x", path_x, "matrix file")->required();
    dist->add_option("y", path_y, "matrix file")->required();
    add_budget(dist);

    auto* sdist = app.add_subcommand(
        "simplex-dist", "distance to a one-distance space by the partition formula");
    sdist->add_option("x", path_x, "matrix file")->required();
    sdist->add_option("-m,--blocks", m, "simplex cardinality")->required();
    sdist->add_option("--lambda", lambda_text, "simplex side")->required();
    add_budget(sdist);

    auto* inv = app.add_subcommand("invariants",
                                   "diameter, partition invariants, cover number");
    inv->add_option("x", path_x, "matrix file")->required();
    inv->add_option("-m,--blocks", m, "partition size")->required();

    auto* between = app.add_subcommand("between", "does Y lie between X and Z");
    between->add_option("x", path_x, "matrix file")->required();
    between->add_option("y", path_y, "matrix file")->required();
    between->add_option("z", path_z, "matrix file")->required();
    add_budget(between);

    auto* extend = app.add_subcommand("extend-check",
                                      "extendability of the segment [X,Y] beyond Y");
    extend->add_option("x", path_x, "matrix file")->required();
    extend->add_option("y", path_y, "matrix file")->required();
    add_budget(extend);

    auto* geo = app.add_subcommand("geodesic",
                                   "sample a straight-line curve between X and Y");
    geo->add_option("x", path_x, "matrix file")->required();
    geo->add_option("y", path_y, "matrix file")->required();
    geo->add_option("--t", t_list, "comma-separated parameters in [0,1]");
    geo->add_option("--epsilon", eps_text, "slack for the correspondence choice");
    add_budget(geo);

    // Let global flags (--json) appear after the subcommand, as in
    // "ghx dist a.txt b.txt --json".
    for (auto* sub : {validate, dist, sdist, inv, between, extend, geo})
        sub->fallthrough();

    ordered_json report;
    report["command"] = join_args(args);

    auto finish = [&](int code) {
        if (json)
            out << report.dump(2) << "\n";
        else
            render_text(report, out, 0);
        return code;
    };

    auto started = std::chrono::steady_clock::now();
    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(std::move(rev));

        ordered_json body;
        if (validate->parsed())
            body = cmd_validate(path_x);
        else if (dist->parsed())
            body = cmd_dist(path_x, path_y, opts);
        else if (sdist->parsed())
            body = cmd_simplex_dist(path_x, m, lambda_text, opts);
        else if (inv->parsed())
            body = cmd_invariants(path_x, m);
        else if (between->parsed())
            body = cmd_between(path_x, path_y, path_z, opts);
        else if (extend->parsed())
            body = cmd_extend_check(path_x, path_y, opts);
        else if (geo->parsed())
            body = cmd_geodesic(path_x, path_y, t_list, eps_text, opts);
        else {
            out << app.help();
            return 0;
        }
        for (auto& [key, value] : body.items()) report[key] = std::move(value);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        report["error"] = e.what();
        report["error_kind"] = "usage";
        return finish(2);
    } catch (const BudgetExceeded& e) {
        report["error"] = e.what();
        report["error_kind"] = errc_name(e.code());
        report["proven_lower_bound"] = format_rational(e.lower_bound());
        report["proven_upper_bound"] = format_rational(e.upper_bound());
        report["nodes"] = e.nodes();
        return finish(3);
    } catch (const Error& e) {
        report["error"] = e.what();
        report["error_kind"] = errc_name(e.code());
        return finish(is_input_error(e.code()) ? 2 : 4);
    }

    auto elapsed = std::chrono::steady_clock::now() - started;
    report["wall_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
    return finish(0);
}

}  // namespace ghx::cli
