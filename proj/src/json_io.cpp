#include "smf/json_io.hpp"

#include <algorithm>
#include <string>

#include "smf/errors.hpp"
#include "smf/rational.hpp"

namespace smf::io {

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what) {
    fail(ErrorKind::MalformedInput, where, what);
}

const json& field(const json& j, const char* key, const char* where) {
    if (!j.is_object() || !j.contains(key)) {
        bad(where, std::string("missing field '") + key + "'");
    }
    return j.at(key);
}

long int_field(const json& j, const char* key, const char* where) {
    const json& value = field(j, key, where);
    if (!value.is_number_integer()) {
        bad(where, std::string("field '") + key + "' must be an integer");
    }
    return value.get<long>();
}

// Recursively find the largest generator index mentioned by any element in a
// container; used when "num_generators" is omitted.
int scan_max_index(const json& j) {
    if (j.is_object() && j.contains("coeff") && j.contains("gens")) {
        int max_index = -1;
        const json& gens = j.at("gens");
        if (gens.is_array()) {
            for (const json& g : gens) {
                if (g.is_number_integer()) max_index = std::max(max_index, g.get<int>());
            }
        }
        return max_index;
    }
    int max_index = -1;
    if (j.is_array()) {
        for (const json& item : j) max_index = std::max(max_index, scan_max_index(item));
    } else if (j.is_object()) {
        for (const auto& [key, value] : j.items()) {
            max_index = std::max(max_index, scan_max_index(value));
        }
    }
    return max_index;
}

int generator_context(const json& j) {
    if (j.is_object() && j.contains("num_generators")) {
        const json& n = j.at("num_generators");
        if (!n.is_number_integer() || n.get<int>() < 0) {
            bad("num_generators", "must be a nonnegative integer");
        }
        return n.get<int>();
    }
    return scan_max_index(j) + 1;
}

TableEntry entry_from_json(const json& j, int ngens, const char* where) {
    return {element_from_json(field(j, "minus", where), ngens),
            element_from_json(field(j, "plus", where), ngens)};
}

json entry_to_json(const TableEntry& entry) {
    return json{{"minus", element_to_json(entry.minus)},
                {"plus", element_to_json(entry.plus)}};
}

Table table_from_json(const json& j, int ngens, const char* where) {
    if (!j.is_array()) bad(where, "table must be an array of rows");
    Table table;
    for (const json& row : j) {
        if (!row.is_array()) bad(where, "table rows must be arrays");
        std::vector<TableEntry> out;
        for (const json& entry : row) out.push_back(entry_from_json(entry, ngens, where));
        table.push_back(std::move(out));
    }
    return table;
}

json table_to_json(const Table& table) {
    json rows = json::array();
    for (const auto& row : table) {
        json cells = json::array();
        for (const TableEntry& entry : row) cells.push_back(entry_to_json(entry));
        rows.push_back(std::move(cells));
    }
    return rows;
}

}  // namespace

json element_to_json(const GrassmannElement& element) {
    json terms = json::array();
    for (const auto& [mask, coeff] : element.terms()) {
        json gens = json::array();
        for (int bit = 0; bit < 64; ++bit) {
            if (mask & (std::uint64_t{1} << bit)) gens.push_back(bit);
        }
        terms.push_back(json{{"coeff", rational_to_string(coeff)},
                             {"gens", std::move(gens)}});
    }
    return terms;
}

GrassmannElement element_from_json(const json& j, int num_generators) {
    if (!j.is_array()) bad("element", "element must be an array of terms");
    GrassmannElement value(num_generators);
    for (const json& term : j) {
        const json& coeff = field(term, "coeff", "element");
        if (!coeff.is_string()) bad("element", "'coeff' must be a rational string");
        const json& gens = field(term, "gens", "element");
        std::vector<int> indices;
        for (const json& g : gens) indices.push_back(g.get<int>());
        if (std::adjacent_find(indices.begin(), indices.end(),
                               [](int a, int b) { return a >= b; }) != indices.end()) {
            bad("element", "'gens' must be strictly increasing");
        }
        value = value + GrassmannElement::monomial(
                            rational_from_string(coeff.get<std::string>()), indices,
                            num_generators);
    }
    return value;
}

json matrix_to_json(const SuperMatrix& matrix) {
    json entries = json::array();
    for (int i = 0; i < matrix.num_rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < matrix.num_cols(); ++j) {
            row.push_back(element_to_json(matrix.at(i, j)));
        }
        entries.push_back(std::move(row));
    }
    return json{{"row_layout", {matrix.row_layout().even, matrix.row_layout().odd}},
                {"col_layout", {matrix.col_layout().even, matrix.col_layout().odd}},
                {"num_generators", matrix.num_generators()},
                {"entries", std::move(entries)}};
}

SuperMatrix matrix_from_json(const json& j) {
    const json& rows = field(j, "row_layout", "matrix");
    const json& cols = field(j, "col_layout", "matrix");
    if (!rows.is_array() || rows.size() != 2 || !cols.is_array() || cols.size() != 2) {
        bad("matrix", "layouts must be [even, odd] pairs");
    }
    const Layout row_layout{rows[0].get<int>(), rows[1].get<int>()};
    const Layout col_layout{cols[0].get<int>(), cols[1].get<int>()};
    const int ngens = generator_context(j);
    SuperMatrix matrix(row_layout, col_layout, ngens);
    const json& entries = field(j, "entries", "matrix");
    if (!entries.is_array() ||
        static_cast<int>(entries.size()) != matrix.num_rows()) {
        bad("matrix", "entry rows do not match the row layout");
    }
    for (int i = 0; i < matrix.num_rows(); ++i) {
        const json& row = entries[i];
        if (!row.is_array() || static_cast<int>(row.size()) != matrix.num_cols()) {
            bad("matrix", "entry row " + std::to_string(i) +
                              " does not match the column layout");
        }
        for (int k = 0; k < matrix.num_cols(); ++k) {
            matrix.set(i, k, element_from_json(row[k], ngens));
        }
    }
    return matrix;
}

json series_to_json(const SuperSeries& series) {
    json terms = json::array();
    for (int k = series.lowest_exponent(); k <= series.trunc_order(); ++k) {
        const CoefficientPair pair = series.coeff(k);
        if (pair.is_zero()) continue;
        terms.push_back(json{{"k", k},
                             {"a", element_to_json(pair.a)},
                             {"b", element_to_json(pair.b)}});
    }
    return json{{"weight", series.weight()},
                {"pole_order", series.pole_order()},
                {"trunc_order", series.trunc_order()},
                {"num_generators", series.num_generators()},
                {"terms", std::move(terms)}};
}

SuperSeries series_from_json(const json& j, int num_generators) {
    const int weight = static_cast<int>(int_field(j, "weight", "series"));
    const int pole = static_cast<int>(int_field(j, "pole_order", "series"));
    const int trunc = static_cast<int>(int_field(j, "trunc_order", "series"));
    if (pole < 0) bad("series", "pole_order must be nonnegative");
    SuperSeries series(weight, pole, trunc, num_generators);
    const json& terms = field(j, "terms", "series");
    if (!terms.is_array()) bad("series", "'terms' must be an array");
    for (const json& term : terms) {
        const int k = static_cast<int>(int_field(term, "k", "series"));
        if (k < -pole || k > trunc) {
            bad("series", "term exponent " + std::to_string(k) +
                              " outside [-pole_order, trunc_order]");
        }
        series.set_coeff(k, element_from_json(field(term, "a", "series"), num_generators),
                         element_from_json(field(term, "b", "series"), num_generators));
    }
    return series.canonicalized();
}

SuperSeries series_from_json(const json& j) {
    return series_from_json(j, generator_context(j));
}

json change_to_json(const CoordinateChange& change) {
    return json{{"f", series_to_json(change.f)},
                {"lambda", series_to_json(change.lambda)},
                {"psi", series_to_json(change.psi)},
                {"g", series_to_json(change.g)},
                {"num_generators", change.num_generators()}};
}

CoordinateChange change_from_json(const json& j) {
    const int ngens = generator_context(j);
    return CoordinateChange(series_from_json(field(j, "f", "change"), ngens),
                            series_from_json(field(j, "lambda", "change"), ngens),
                            series_from_json(field(j, "psi", "change"), ngens),
                            series_from_json(field(j, "g", "change"), ngens));
}

json oneform_to_json(const OneFormLocal& form) {
    return json{{"dtheta_part", series_to_json(form.dtheta_part)},
                {"varpi_part", series_to_json(form.varpi_part)}};
}

json ramond_input_to_json(const RamondInput& input) {
    json f = json::array();
    for (const SuperSeries& series : input.f) f.push_back(series_to_json(series));
    return json{{"g", input.g},
                {"n_r", input.n_r},
                {"num_generators", input.num_generators},
                {"f", std::move(f)},
                {"xi", table_to_json(input.xi)},
                {"phi", table_to_json(input.phi)},
                {"sigma", table_to_json(input.sigma)},
                {"tau", table_to_json(input.tau)},
                {"eta", table_to_json(input.eta)},
                {"psi", table_to_json(input.psi)}};
}

RamondInput ramond_input_from_json(const json& j) {
    RamondInput input;
    input.g = int_field(j, "g", "ramond_input");
    input.n_r = int_field(j, "n_r", "ramond_input");
    input.num_generators = generator_context(j);
    const json& f = field(j, "f", "ramond_input");
    if (!f.is_array()) bad("ramond_input", "'f' must be an array of series");
    for (const json& series : f) {
        input.f.push_back(series_from_json(series, input.num_generators));
    }
    input.xi = table_from_json(field(j, "xi", "ramond_input"), input.num_generators, "xi");
    input.phi = table_from_json(field(j, "phi", "ramond_input"), input.num_generators, "phi");
    input.sigma =
        table_from_json(field(j, "sigma", "ramond_input"), input.num_generators, "sigma");
    input.tau = table_from_json(field(j, "tau", "ramond_input"), input.num_generators, "tau");
    input.eta = table_from_json(field(j, "eta", "ramond_input"), input.num_generators, "eta");
    input.psi = table_from_json(field(j, "psi", "ramond_input"), input.num_generators, "psi");
    return input;
}

json ns_input_to_json(const NSInput& input) {
    json xi = json::array();
    for (const TableEntry& entry : input.xi) xi.push_back(entry_to_json(entry));
    return json{{"g", input.g},
                {"n_ns", input.n_ns},
                {"num_generators", input.num_generators},
                {"phi", table_to_json(input.phi)},
                {"chi", table_to_json(input.chi)},
                {"psi", table_to_json(input.psi)},
                {"sigma", table_to_json(input.sigma)},
                {"rho", table_to_json(input.rho)},
                {"xi", std::move(xi)},
                {"xi_inv", element_to_json(input.xi_inv)},
                {"alpha", table_to_json(input.alpha)},
                {"beta", table_to_json(input.beta)}};
}

NSInput ns_input_from_json(const json& j) {
    NSInput input;
    input.g = int_field(j, "g", "ns_input");
    input.n_ns = int_field(j, "n_ns", "ns_input");
    input.num_generators = generator_context(j);
    const int ngens = input.num_generators;
    input.phi = table_from_json(field(j, "phi", "ns_input"), ngens, "phi");
    input.chi = table_from_json(field(j, "chi", "ns_input"), ngens, "chi");
    input.psi = table_from_json(field(j, "psi", "ns_input"), ngens, "psi");
    input.sigma = table_from_json(field(j, "sigma", "ns_input"), ngens, "sigma");
    input.rho = table_from_json(field(j, "rho", "ns_input"), ngens, "rho");
    const json& xi = field(j, "xi", "ns_input");
    if (!xi.is_array()) bad("ns_input", "'xi' must be an array");
    for (const json& entry : xi) input.xi.push_back(entry_from_json(entry, ngens, "xi"));
    input.xi_inv = element_from_json(field(j, "xi_inv", "ns_input"), ngens);
    input.alpha = table_from_json(field(j, "alpha", "ns_input"), ngens, "alpha");
    input.beta = table_from_json(field(j, "beta", "ns_input"), ngens, "beta");
    return input;
}

json result_to_json(const MumfordFormResult& result) {
    json intermediates = json::object();
    for (const auto& [name, value] : result.intermediates) {
        intermediates[name] = element_to_json(value);
    }
    return json{{"coefficient", element_to_json(result.coefficient)},
                {"formal_tag", result.formal_tag},
                {"intermediates", std::move(intermediates)}};
}

}  // namespace smf::io
