// Batch front door: JSON in, JSON out, deterministic byte-for-byte.
//
// Exit codes: 0 success, 1 malformed input or usage error, 2 domain error.

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "smf/errors.hpp"
#include "smf/json_io.hpp"
#include "smf/moduli_ranks.hpp"
#include "smf/mumford.hpp"
#include "smf/superconformal.hpp"

namespace {

using nlohmann::json;

struct Options {
    std::string input_path;
    std::string inline_json;
    int trunc_order = 4;
    int branch_sign = 1;
    std::optional<std::uint64_t> left_inverse_seed;
};

json load_input(const Options& options) {
    std::string text;
    if (!options.inline_json.empty()) {
        text = options.inline_json;
    } else if (!options.input_path.empty()) {
        std::ifstream file(options.input_path);
        if (!file) {
            smf::fail(smf::ErrorKind::MalformedInput, "cli",
                      "cannot open input file: " + options.input_path);
        }
        std::ostringstream buffer;
        buffer << file.rdbuf();
        text = buffer.str();
    } else {
        smf::fail(smf::ErrorKind::MalformedInput, "cli",
                  "either --input or --json is required");
    }
    json parsed = json::parse(text, nullptr, /*allow_exceptions=*/false);
    if (parsed.is_discarded()) {
        smf::fail(smf::ErrorKind::MalformedInput, "cli", "input is not valid JSON");
    }
    return parsed;
}

void emit(const json& output) { std::cout << output.dump() << "\n"; }

void add_input_flags(CLI::App* cmd, Options& options) {
    cmd->add_option("--input", options.input_path, "Path to a JSON input file");
    cmd->add_option("--json", options.inline_json, "Inline JSON input");
}

json ranks_table(const std::string& family, long g, long n_r) {
    json rows = json::array();
    if (family == "ramond") {
        for (int i = 0; i <= 1; ++i) {
            for (int j = -2; j <= 1; ++j) {
                const smf::RankPair rank = smf::ramond_rank(g, n_r, j, i);
                rows.push_back(json{{"i", i},
                                    {"j", j},
                                    {"rank", {rank.even, rank.odd}}});
            }
        }
        return json{{"family", "ramond"},
                    {"g", g},
                    {"n_r", n_r},
                    {"r", smf::r_value(g, n_r)},
                    {"rows", std::move(rows)}};
    }
    for (int i = 0; i <= 1; ++i) {
        for (int j = -1; j <= 3; ++j) {
            const smf::RankPair rank = smf::ns_rank(g, j, i);
            rows.push_back(json{{"i", i}, {"j", j}, {"rank", {rank.even, rank.odd}}});
        }
    }
    return json{{"family", "ns"}, {"g", g}, {"rows", std::move(rows)}};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact local calculus on super Riemann surfaces: Grassmann "
                 "arithmetic, Berezinians, super residues, superconformal "
                 "checks and super Mumford form coefficients"};
    app.require_subcommand(1);

    Options options;
    app.add_option("--trunc-order", options.trunc_order,
                   "Default truncation order for derived series checks")
        ->capture_default_str();
    app.add_option("--branch-sign", options.branch_sign,
                   "Square-root branch (+1 or -1) for constructive helpers")
        ->check(CLI::IsMember({1, -1}))
        ->capture_default_str();
    std::uint64_t seed_value = 0;
    CLI::Option* seed_option =
        app.add_option("--left-inverse-seed", seed_value,
                       "Use the seeded randomized left inverses");

    CLI::App* ber = app.add_subcommand("ber", "Berezinian of a supermatrix");
    add_input_flags(ber, options);

    CLI::App* leftinv = app.add_subcommand("leftinv", "Left inverse of a supermatrix");
    add_input_flags(leftinv, options);

    CLI::App* residue_cmd =
        app.add_subcommand("residue", "Residue of a weight-1 super Laurent series");
    add_input_flags(residue_cmd, options);

    CLI::App* alpha_cmd =
        app.add_subcommand("alpha", "Closed one-form image of a weight-1 section");
    add_input_flags(alpha_cmd, options);

    CLI::App* check = app.add_subcommand(
        "check-superconformal", "Validate a coordinate change and its constraints");
    add_input_flags(check, options);

    CLI::App* ranks = app.add_subcommand("ranks", "Rank tables for R^i pi_* omega^j");
    std::string family;
    long ranks_g = 2;
    long ranks_nr = 0;
    ranks->add_option("--family", family, "ramond or ns")
        ->required()
        ->check(CLI::IsMember({"ramond", "ns"}));
    ranks->add_option("--g", ranks_g, "Genus")->required();
    ranks->add_option("--nr", ranks_nr, "Number of Ramond punctures");

    CLI::App* mumford = app.add_subcommand("mumford", "Super Mumford form coefficient");
    mumford->require_subcommand(1);
    CLI::App* mumford_ramond_cmd =
        mumford->add_subcommand("ramond", "Ramond-punctured family");
    add_input_flags(mumford_ramond_cmd, options);
    CLI::App* mumford_ns_cmd =
        mumford->add_subcommand("ns", "Neveu-Schwarz family (odd spin)");
    add_input_flags(mumford_ns_cmd, options);
    bool punctured = false;
    mumford_ns_cmd->add_flag("--punctured", punctured,
                             "Include the NS-puncture block M'");

    CLI::App* validate = app.add_subcommand(
        "validate", "Check dimensions and parities of a mumford input");
    std::string validate_family;
    validate->add_option("--family", validate_family, "ramond or ns")
        ->required()
        ->check(CLI::IsMember({"ramond", "ns"}));
    add_input_flags(validate, options);

    // Global flags may also appear after the subcommand, e.g.
    // `mumford ramond --input data.json --left-inverse-seed 5`.
    for (CLI::App* sub : app.get_subcommands({})) {
        sub->fallthrough();
        for (CLI::App* nested : sub->get_subcommands({})) {
            nested->fallthrough();
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        json error{{"error_kind", "malformed_input"},
                   {"location", "cli"},
                   {"message", e.what()}};
        emit(error);
        return 1;
    }

    if (*seed_option) options.left_inverse_seed = seed_value;

    try {
        if (*ber) {
            const smf::SuperMatrix m = smf::io::matrix_from_json(load_input(options));
            emit(json{{"ber", smf::io::element_to_json(m.berezinian())}});
        } else if (*leftinv) {
            const smf::SuperMatrix m = smf::io::matrix_from_json(load_input(options));
            const smf::SuperMatrix inv =
                options.left_inverse_seed
                    ? m.left_inverse_randomized(*options.left_inverse_seed)
                    : m.left_inverse();
            emit(json{{"left_inverse", smf::io::matrix_to_json(inv)}});
        } else if (*residue_cmd) {
            const smf::SuperSeries sigma = smf::io::series_from_json(load_input(options));
            emit(json{{"residue", smf::io::element_to_json(smf::residue(sigma))}});
        } else if (*alpha_cmd) {
            const smf::SuperSeries sigma = smf::io::series_from_json(load_input(options));
            emit(smf::io::oneform_to_json(smf::alpha_map(sigma)));
        } else if (*check) {
            smf::CoordinateChange change =
                smf::io::change_from_json(load_input(options));
            // The checks run at min(input truncation, --trunc-order).
            const int order = std::min(change.trunc_order(), options.trunc_order);
            if (order < change.trunc_order()) {
                change = smf::CoordinateChange(
                    change.f.with_range(0, order),
                    change.lambda.with_range(0, order),
                    change.psi.with_range(0, order),
                    change.g.with_range(0, order));
            }
            json output{{"superconformal", smf::is_superconformal(change)},
                        {"ramond_superconformal", smf::is_ramond_superconformal(change)}};
            if (output["ramond_superconformal"].get<bool>()) {
                const auto [g0_squared, lambda_psi] = smf::ramond_boundary_constraints(change);
                output["constraints"] =
                    json{{"g0_squared", smf::io::element_to_json(g0_squared)},
                         {"lambda1_psi0", smf::io::element_to_json(lambda_psi)}};
                output["quotient_ber"] = smf::io::element_to_json(
                    smf::quotient_change_matrix(change).berezinian());
            }
            emit(output);
        } else if (*ranks) {
            if (family == "ramond" && !ranks->count("--nr")) {
                smf::fail(smf::ErrorKind::MalformedInput, "cli",
                          "--nr is required for the ramond family");
            }
            emit(ranks_table(family, ranks_g, ranks_nr));
        } else if (*mumford) {
            if (*mumford_ramond_cmd) {
                const smf::RamondInput input =
                    smf::io::ramond_input_from_json(load_input(options));
                emit(smf::io::result_to_json(
                    smf::mumford_ramond(input, options.left_inverse_seed)));
            } else {
                const smf::NSInput input = smf::io::ns_input_from_json(load_input(options));
                const smf::MumfordFormResult result =
                    punctured ? smf::mumford_ns_punctured(input, options.left_inverse_seed)
                              : smf::mumford_ns(input, options.left_inverse_seed);
                emit(smf::io::result_to_json(result));
            }
        } else if (*validate) {
            const json input = load_input(options);
            if (validate_family == "ramond") {
                smf::io::ramond_input_from_json(input).validate();
            } else {
                smf::io::ns_input_from_json(input).validate();
            }
            emit(json{{"valid", true}});
        }
    } catch (const smf::Error& e) {
        json error{{"error_kind", smf::to_string(e.kind())},
                   {"location", e.location()},
                   {"message", e.what()}};
        emit(error);
        return e.kind() == smf::ErrorKind::MalformedInput ? 1 : 2;
    } catch (const std::exception& e) {
        json error{{"error_kind", "malformed_input"},
                   {"location", "cli"},
                   {"message", e.what()}};
        emit(error);
        return 1;
    }
    return 0;
}
