// Python bindings for the main operations.  Values cross the boundary in the
// same JSON forms the CLI uses, so exactness is preserved end to end.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>

#include "smf/errors.hpp"
#include "smf/json_io.hpp"
#include "smf/moduli_ranks.hpp"
#include "smf/mumford.hpp"
#include "smf/superconformal.hpp"

namespace py = pybind11;
using nlohmann::json;

namespace {

json parse(const std::string& text, const char* what) {
    json parsed = json::parse(text, nullptr, /*allow_exceptions=*/false);
    if (parsed.is_discarded()) {
        smf::fail(smf::ErrorKind::MalformedInput, what, "invalid JSON document");
    }
    return parsed;
}

int common_generator_count(std::initializer_list<const json*> docs) {
    int count = 0;
    for (const json* doc : docs) {
        for (const json& term : *doc) {
            for (const json& g : term.at("gens")) {
                count = std::max(count, g.get<int>() + 1);
            }
        }
    }
    return count;
}

std::string grassmann_multiply(const std::string& a, const std::string& b) {
    const json ja = parse(a, "a"), jb = parse(b, "b");
    const int count = common_generator_count({&ja, &jb});
    const smf::GrassmannElement result = smf::io::element_from_json(ja, count) *
                                         smf::io::element_from_json(jb, count);
    return smf::io::element_to_json(result).dump();
}

std::string grassmann_invert(const std::string& a) {
    const json ja = parse(a, "a");
    const int count = common_generator_count({&ja});
    return smf::io::element_to_json(smf::io::element_from_json(ja, count).inverse())
        .dump();
}

std::string berezinian(const std::string& matrix) {
    const smf::SuperMatrix m = smf::io::matrix_from_json(parse(matrix, "matrix"));
    return smf::io::element_to_json(m.berezinian()).dump();
}

std::string left_inverse(const std::string& matrix,
                         std::optional<std::uint64_t> seed) {
    const smf::SuperMatrix m = smf::io::matrix_from_json(parse(matrix, "matrix"));
    const smf::SuperMatrix inv =
        seed ? m.left_inverse_randomized(*seed) : m.left_inverse();
    return smf::io::matrix_to_json(inv).dump();
}

std::string residue(const std::string& series) {
    const smf::SuperSeries sigma = smf::io::series_from_json(parse(series, "series"));
    return smf::io::element_to_json(smf::residue(sigma)).dump();
}

std::string alpha(const std::string& series) {
    const smf::SuperSeries sigma = smf::io::series_from_json(parse(series, "series"));
    return smf::io::oneform_to_json(smf::alpha_map(sigma)).dump();
}

std::string d_theta_json(const std::string& series) {
    const smf::SuperSeries f = smf::io::series_from_json(parse(series, "series"));
    return smf::io::series_to_json(smf::d_theta(f)).dump();
}

py::dict check_superconformal(const std::string& change_doc) {
    const smf::CoordinateChange change =
        smf::io::change_from_json(parse(change_doc, "change"));
    py::dict out;
    out["superconformal"] = smf::is_superconformal(change);
    const bool ramond = smf::is_ramond_superconformal(change);
    out["ramond_superconformal"] = ramond;
    if (ramond) {
        const auto [g0_squared, lambda_psi] = smf::ramond_boundary_constraints(change);
        out["g0_squared"] = smf::io::element_to_json(g0_squared).dump();
        out["lambda1_psi0"] = smf::io::element_to_json(lambda_psi).dump();
        out["quotient_ber"] =
            smf::io::element_to_json(
                smf::quotient_change_matrix(change).berezinian())
                .dump();
    }
    return out;
}

std::string transform_section_json(const std::string& series,
                                   const std::string& change_doc) {
    const smf::SuperSeries f = smf::io::series_from_json(parse(series, "series"));
    const smf::CoordinateChange change =
        smf::io::change_from_json(parse(change_doc, "change"));
    return smf::io::series_to_json(smf::transform_section(f, change)).dump();
}

std::string mumford_ramond_json(const std::string& input_doc,
                                std::optional<std::uint64_t> seed) {
    const smf::RamondInput input =
        smf::io::ramond_input_from_json(parse(input_doc, "ramond_input"));
    return smf::io::result_to_json(smf::mumford_ramond(input, seed)).dump();
}

std::string mumford_ns_json(const std::string& input_doc, bool punctured,
                            std::optional<std::uint64_t> seed) {
    const smf::NSInput input =
        smf::io::ns_input_from_json(parse(input_doc, "ns_input"));
    const smf::MumfordFormResult result =
        punctured ? smf::mumford_ns_punctured(input, seed)
                  : smf::mumford_ns(input, seed);
    return smf::io::result_to_json(result).dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact local calculus on super Riemann surfaces: Grassmann "
              "arithmetic over Q, Berezinians, super Laurent residues, "
              "superconformal coordinate changes and super Mumford form "
              "coefficients.  All values are JSON strings in the CLI formats.";

    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const smf::Error& e) {
            const std::string message = std::string(smf::to_string(e.kind())) +
                                        " at " + e.location() + ": " + e.what();
            PyErr_SetString(PyExc_ValueError, message.c_str());
        }
    });

    m.def("grassmann_multiply", &grassmann_multiply, py::arg("a"), py::arg("b"),
          "Product of two Grassmann elements (JSON term arrays).");
    m.def("grassmann_invert", &grassmann_invert, py::arg("a"),
          "Two-sided inverse of a Grassmann element with nonzero body.");
    m.def("berezinian", &berezinian, py::arg("matrix"),
          "Berezinian of an even supermatrix (JSON).");
    m.def("left_inverse", &left_inverse, py::arg("matrix"),
          py::arg("seed") = py::none(),
          "Deterministic (or seeded randomized) left inverse of a tall "
          "supermatrix.");
    m.def("residue", &residue, py::arg("series"),
          "res_p of a weight-1 super Laurent series.");
    m.def("alpha", &alpha, py::arg("series"),
          "Closed one-form image (dtheta and varpi parts) of a weight-1 "
          "section.");
    m.def("d_theta", &d_theta_json, py::arg("series"),
          "D_theta = d/dtheta + theta d/dz, coefficientwise.");
    m.def("check_superconformal", &check_superconformal, py::arg("change"),
          "Superconformality checks and the Ramond boundary constraints.");
    m.def("transform_section", &transform_section_json, py::arg("series"),
          py::arg("change"),
          "Pullback of a weight-j section along a superconformal change.");
    m.def("mumford_ramond", &mumford_ramond_json, py::arg("input"),
          py::arg("seed") = py::none(),
          "Super Mumford form coefficient for a Ramond-punctured family.");
    m.def("mumford_ns", &mumford_ns_json, py::arg("input"),
          py::arg("punctured") = false, py::arg("seed") = py::none(),
          "Super Mumford form coefficient for the odd-spin NS family.");
    m.def(
        "ramond_rank",
        [](long g, long n_r, int j, int i) {
            const smf::RankPair rank = smf::ramond_rank(g, n_r, j, i);
            return py::make_tuple(rank.even, rank.odd);
        },
        py::arg("g"), py::arg("n_r"), py::arg("j"), py::arg("i"),
        "Rank of R^i pi_* omega^j for the Ramond family.");
    m.def(
        "ns_rank",
        [](long g, int j, int i) {
            const smf::RankPair rank = smf::ns_rank(g, j, i);
            return py::make_tuple(rank.even, rank.odd);
        },
        py::arg("g"), py::arg("j"), py::arg("i"),
        "Rank of R^i pi_* omega^j for the odd-spin NS family.");
    m.def("r_value", &smf::r_value, py::arg("g"), py::arg("n_r"),
          "r = n_R / 2 - g + 1.");
}
