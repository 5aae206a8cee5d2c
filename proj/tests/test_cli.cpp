#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "smf/json_io.hpp"
#include "support/mumford_inputs.hpp"

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;
};

std::string cli_path() {
    const char* path = std::getenv("SMF_CLI_PATH");
    return path ? path : "./build/smf";
}

RunResult run_cli(const std::string& args) {
    const std::string command = cli_path() + " " + args + " 2>/dev/null";
    std::array<char, 4096> buffer{};
    RunResult result;
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    while (std::size_t n = std::fread(buffer.data(), 1, buffer.size(), pipe)) {
        result.output.append(buffer.data(), n);
    }
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

std::string write_temp(const std::string& name, const std::string& contents) {
    const std::string path = std::string("/tmp/smf_cli_") + name;
    std::ofstream file(path);
    file << contents;
    return path;
}

}  // namespace

TEST_CASE("ranks subcommand emits the table") {
    const RunResult result = run_cli("ranks --family ramond --g 2 --nr 8");
    REQUIRE(result.exit_code == 0);
    const auto parsed = nlohmann::json::parse(result.output);
    CHECK(parsed.at("r") == 3);
    bool found = false;
    for (const auto& row : parsed.at("rows")) {
        if (row.at("i") == 0 && row.at("j") == 0) {
            CHECK(row.at("rank") == nlohmann::json::array({1, 4}));
            found = true;
        }
    }
    CHECK(found);
}

TEST_CASE("ber subcommand on the multiplication map matrix") {
    // [[f0, 0], [f1, f0]] with f0 = 3/2 + soul, f1 odd.
    smf::SuperMatrix m(smf::Layout{1, 1}, smf::Layout{1, 1}, 3);
    const smf::GrassmannElement f0 =
        smf::GrassmannElement::scalar(smf::Rational(3, 2), 3) +
        smf::GrassmannElement::monomial(smf::Rational(2, 7), {0, 1}, 3);
    m.set(0, 0, f0);
    m.set(1, 0, smf::GrassmannElement::generator(2, 3));
    m.set(1, 1, f0);
    const std::string path =
        write_temp("mf.json", smf::io::matrix_to_json(m).dump());
    const RunResult result = run_cli("ber --input " + path);
    REQUIRE(result.exit_code == 0);
    const auto parsed = nlohmann::json::parse(result.output);
    CHECK(parsed.at("ber") ==
          nlohmann::json::array({{{"coeff", "1"}, {"gens", nlohmann::json::array()}}}));
}

TEST_CASE("mumford ramond on the identity fixture") {
    const smf::RamondInput fixture = smf::testing::ramond_identity_fixture();
    const std::string path = write_temp(
        "ramond_fixture.json", smf::io::ramond_input_to_json(fixture).dump());
    const RunResult result = run_cli("mumford ramond --input " + path);
    REQUIRE(result.exit_code == 0);
    const auto parsed = nlohmann::json::parse(result.output);
    CHECK(parsed.at("coefficient") ==
          nlohmann::json::array({{{"coeff", "1"}, {"gens", nlohmann::json::array()}}}));
    CHECK(parsed.at("formal_tag") == "d_{−1}·d_{1/2}^{−5}");
}

TEST_CASE("byte-identical output across runs") {
    const smf::NSInput fixture = smf::testing::ns_identity_fixture();
    const std::string path =
        write_temp("ns_fixture.json", smf::io::ns_input_to_json(fixture).dump());
    const std::string commands[] = {
        "ranks --family ns --g 3",
        "mumford ns --input " + path,
        "mumford ns --punctured --input " + path,
        "validate --family ns --input " + path,
    };
    for (const std::string& command : commands) {
        const RunResult first = run_cli(command);
        const RunResult second = run_cli(command);
        CHECK(first.exit_code == 0);
        CHECK(first.output == second.output);
        CHECK_FALSE(first.output.empty());
    }
}

TEST_CASE("seeded left inverse output is deterministic but distinct") {
    const smf::RamondInput input = smf::testing::random_ramond_input(2, 8, 5, 42);
    const std::string path =
        write_temp("ramond_rand.json", smf::io::ramond_input_to_json(input).dump());
    const RunResult plain = run_cli("mumford ramond --input " + path);
    const RunResult seeded =
        run_cli("--left-inverse-seed 7 mumford ramond --input " + path);
    const RunResult seeded_again =
        run_cli("--left-inverse-seed 7 mumford ramond --input " + path);
    REQUIRE(plain.exit_code == 0);
    REQUIRE(seeded.exit_code == 0);
    CHECK(seeded.output == seeded_again.output);
    // Left-inverse data differs, the coefficient does not.
    const auto a = nlohmann::json::parse(plain.output);
    const auto b = nlohmann::json::parse(seeded.output);
    CHECK(a.at("coefficient") == b.at("coefficient"));
}

TEST_CASE("exit code 1 on malformed input") {
    const std::string path = write_temp("broken.json", "{ not json ");
    const RunResult result = run_cli("ber --input " + path);
    CHECK(result.exit_code == 1);
    const auto parsed = nlohmann::json::parse(result.output);
    CHECK(parsed.at("error_kind") == "malformed_input");
}

TEST_CASE("exit code 2 on domain errors") {
    // Singular odd-odd block.
    smf::SuperMatrix m = smf::SuperMatrix::identity(smf::Layout{1, 1}, 2);
    m.set(1, 1, smf::GrassmannElement::monomial(1, {0, 1}, 2));
    const std::string path =
        write_temp("singular.json", smf::io::matrix_to_json(m).dump());
    const RunResult result = run_cli("ber --input " + path);
    CHECK(result.exit_code == 2);
    const auto parsed = nlohmann::json::parse(result.output);
    CHECK(parsed.at("error_kind") == "singular_odd_block");
    CHECK(parsed.at("location") == "berezinian");
}

TEST_CASE("unknown flags are an error") {
    const RunResult result = run_cli("ranks --family ns --g 2 --frobnicate");
    CHECK(result.exit_code == 1);
}

TEST_CASE("check-superconformal reports constraints") {
    const smf::CoordinateChange change =
        smf::random_ramond_superconformal_change(4, 4, 1234);
    const std::string path =
        write_temp("change.json", smf::io::change_to_json(change).dump());
    const RunResult result = run_cli("check-superconformal --input " + path);
    REQUIRE(result.exit_code == 0);
    const auto parsed = nlohmann::json::parse(result.output);
    CHECK(parsed.at("ramond_superconformal") == true);
    CHECK(parsed.at("constraints").at("g0_squared") ==
          nlohmann::json::array({{{"coeff", "1"}, {"gens", nlohmann::json::array()}}}));
    CHECK(parsed.at("constraints").at("lambda1_psi0") == nlohmann::json::array());
    CHECK(parsed.at("quotient_ber") ==
          nlohmann::json::array({{{"coeff", "1"}, {"gens", nlohmann::json::array()}}}));
}

TEST_CASE("residue and alpha subcommands") {
    smf::SuperSeries sigma(1, 1, 3, 2);
    sigma.set_coeff(-1, smf::GrassmannElement::zero(2),
                    smf::GrassmannElement::scalar(smf::Rational(5, 2), 2));
    const std::string path =
        write_temp("sigma.json", smf::io::series_to_json(sigma).dump());
    const RunResult residue = run_cli("residue --input " + path);
    REQUIRE(residue.exit_code == 0);
    CHECK(nlohmann::json::parse(residue.output).at("residue") ==
          nlohmann::json::array({{{"coeff", "5/2"}, {"gens", nlohmann::json::array()}}}));

    const RunResult alpha = run_cli("alpha --input " + path);
    REQUIRE(alpha.exit_code == 0);
    const auto parsed = nlohmann::json::parse(alpha.output);
    CHECK(parsed.contains("dtheta_part"));
    CHECK(parsed.contains("varpi_part"));
}

TEST_CASE("validate rejects dimension mismatches with exit 2") {
    smf::RamondInput fixture = smf::testing::ramond_identity_fixture();
    fixture.phi.pop_back();
    const std::string path = write_temp(
        "bad_dims.json", smf::io::ramond_input_to_json(fixture).dump());
    const RunResult result = run_cli("validate --family ramond --input " + path);
    CHECK(result.exit_code == 2);
    CHECK(nlohmann::json::parse(result.output).at("error_kind") ==
          "dimension_mismatch");
}

TEST_CASE("leftinv subcommand round trips") {
    smf::SuperMatrix m(smf::Layout{2, 0}, smf::Layout{1, 0}, 2);
    m.set(0, 0, smf::GrassmannElement::scalar(1, 2) +
                    smf::GrassmannElement::monomial(1, {0, 1}, 2));
    m.set(1, 0, smf::GrassmannElement::generator(0, 2));
    const std::string path =
        write_temp("tall.json", smf::io::matrix_to_json(m).dump());
    const RunResult result = run_cli("leftinv --input " + path);
    REQUIRE(result.exit_code == 0);
    const auto parsed = nlohmann::json::parse(result.output);
    const smf::SuperMatrix inv =
        smf::io::matrix_from_json(parsed.at("left_inverse"));
    const smf::SuperMatrix product = inv.multiply(m);
    CHECK(product.at(0, 0) == smf::GrassmannElement::scalar(1, 2));
}
