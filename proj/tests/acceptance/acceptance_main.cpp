// Acceptance suite: every check is exact (rational arithmetic, zero
// tolerance).  One line per criterion; exit status 0 only if all pass.

#include <array>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "smf/errors.hpp"
#include "smf/json_io.hpp"
#include "smf/moduli_ranks.hpp"
#include "smf/mumford.hpp"
#include "smf/superconformal.hpp"
#include "support/mumford_inputs.hpp"
#include "support/random_elements.hpp"

namespace {

using Clock = std::chrono::steady_clock;
using smf::GrassmannElement;
using smf::Parity;
using smf::Rational;

int failures = 0;

void report(int number, const std::string& description, bool ok,
            double seconds, double limit_seconds) {
    const bool in_time = limit_seconds <= 0.0 || seconds < limit_seconds;
    const bool pass = ok && in_time;
    if (!pass) ++failures;
    std::printf("%s  criterion %d: %s (%.2fs%s)\n", pass ? "PASS" : "FAIL", number,
                description.c_str(), seconds,
                limit_seconds > 0.0 && !in_time ? ", over budget" : "");
    std::fflush(stdout);
}

template <typename Fn>
void run(int number, const std::string& description, double limit_seconds, Fn&& fn) {
    const auto start = Clock::now();
    bool ok = false;
    try {
        ok = fn();
    } catch (const std::exception& e) {
        std::printf("      exception: %s\n", e.what());
        ok = false;
    }
    const double seconds =
        std::chrono::duration<double>(Clock::now() - start).count();
    report(number, description, ok, seconds, limit_seconds);
}

// --- criterion 1 -----------------------------------------------------------

bool grassmann_axioms() {
    std::mt19937_64 rng(20240901);
    const int ngens = 6;
    const GrassmannElement one = GrassmannElement::scalar(1, ngens);
    for (int trial = 0; trial < 500; ++trial) {
        const Parity pa = rng() % 2 ? Parity::Even : Parity::Odd;
        const Parity pb = rng() % 2 ? Parity::Even : Parity::Odd;
        const GrassmannElement a = smf::testing::draw_homogeneous(rng, ngens, pa);
        const GrassmannElement b = smf::testing::draw_homogeneous(rng, ngens, pb);
        const GrassmannElement ab = a * b;
        const GrassmannElement ba = b * a;
        const bool expect_flip = pa == Parity::Odd && pb == Parity::Odd;
        if (!(ab == (expect_flip ? -ba : ba))) return false;

        const GrassmannElement x = smf::testing::draw_element(rng, ngens);
        const GrassmannElement y = smf::testing::draw_element(rng, ngens);
        const GrassmannElement z = smf::testing::draw_element(rng, ngens);
        if (!((x * y) * z == x * (y * z))) return false;

        GrassmannElement u = smf::testing::draw_element(rng, ngens);
        u = u - GrassmannElement::scalar(u.body(), ngens) +
            GrassmannElement::scalar(smf::testing::draw_rational(rng, true), ngens);
        const GrassmannElement inv = u.inverse();
        if (!(u * inv == one) || !(inv * u == one)) return false;
    }
    return true;
}

// --- criterion 2 -----------------------------------------------------------

bool berezinian_multiplicativity() {
    std::mt19937_64 rng(424242);
    const int ngens = 6;
    for (int trial = 0; trial < 100; ++trial) {
        const smf::SuperMatrix m = smf::testing::draw_invertible_even_supermatrix(
            rng, smf::Layout{2, 2}, ngens);
        const smf::SuperMatrix n = smf::testing::draw_invertible_even_supermatrix(
            rng, smf::Layout{2, 2}, ngens);
        if (!(m.multiply(n).berezinian() == m.berezinian() * n.berezinian())) {
            return false;
        }
    }
    for (int p = 0; p <= 4; ++p) {
        for (int q = 0; q <= 4; ++q) {
            if (p + q == 0) continue;
            const smf::SuperMatrix id =
                smf::SuperMatrix::identity(smf::Layout{p, q}, ngens);
            if (!(id.berezinian() == GrassmannElement::scalar(1, ngens))) return false;
        }
    }
    return true;
}

// --- criterion 3 -----------------------------------------------------------

bool multiplication_map_lemma() {
    std::mt19937_64 rng(3333);
    const int ngens = 6;
    for (int trial = 0; trial < 50; ++trial) {
        const GrassmannElement f0 = smf::testing::draw_even_unit(rng, ngens);
        const GrassmannElement f1 = smf::testing::draw_odd(rng, ngens);
        smf::SuperMatrix m(smf::Layout{1, 1}, smf::Layout{1, 1}, ngens);
        m.set(0, 0, f0);
        m.set(1, 0, f1);
        m.set(1, 1, f0);
        if (!(m.berezinian() == GrassmannElement::scalar(1, ngens))) return false;
    }
    return true;
}

// --- criterion 4 -----------------------------------------------------------

bool ramond_change_lemma() {
    const int ngens = 6;
    const GrassmannElement one = GrassmannElement::scalar(1, ngens);
    for (int trial = 0; trial < 50; ++trial) {
        const bool branch = trial % 2 == 0;
        const smf::CoordinateChange change =
            smf::random_ramond_superconformal_change(4, ngens, 5000 + trial, branch);
        if (!smf::is_ramond_superconformal(change)) return false;
        const auto [g0_squared, lambda_psi] =
            smf::ramond_boundary_constraints(change);
        if (!(g0_squared == one) || !lambda_psi.is_zero()) return false;
        if (!(smf::quotient_change_matrix(change).berezinian() == one)) return false;
    }
    return true;
}

// --- criterion 5 -----------------------------------------------------------

bool residue_invariance() {
    std::mt19937_64 rng(77777);
    const int ngens = 6;
    for (int trial = 0; trial < 50; ++trial) {
        const smf::CoordinateChange change = smf::random_superconformal_change(
            9, ngens, 600 + trial, trial % 2 == 0);
        smf::SuperSeries sigma(1, 3, 5, ngens);
        for (int k = -3; k <= 5; ++k) {
            sigma.set_coeff(k, smf::testing::draw_element(rng, ngens, 2),
                            smf::testing::draw_element(rng, ngens, 2));
        }
        sigma = sigma.canonicalized();
        const GrassmannElement direct = smf::residue(sigma);
        const GrassmannElement pulled =
            smf::residue(smf::transform_section(sigma, change));
        if (!(direct == pulled)) return false;
    }
    return true;
}

// --- criterion 6 -----------------------------------------------------------

bool rank_tables() {
    using smf::RankPair;
    const long params[][2] = {{2, 8}, {2, 10}, {3, 14}};
    for (const auto& p : params) {
        const long g = p[0], nr = p[1];
        if (!(smf::ramond_rank(g, nr, -2, 0) ==
              RankPair{nr + 3 - 3 * g, 3 * nr / 2 + 2 - 2 * g}))
            return false;
        if (!(smf::ramond_rank(g, nr, -1, 0) ==
              RankPair{nr + 1 - g, nr / 2 + 2 - 2 * g}))
            return false;
        if (!(smf::ramond_rank(g, nr, 0, 0) == RankPair{1, nr / 2})) return false;
        if (!(smf::ramond_rank(g, nr, 1, 0) == RankPair{g, 0})) return false;
        if (!(smf::ramond_rank(g, nr, -2, 1) == RankPair{0, 0})) return false;
        if (!(smf::ramond_rank(g, nr, -1, 1) == RankPair{0, 0})) return false;
        if (!(smf::ramond_rank(g, nr, 0, 1) == RankPair{g, 0})) return false;
        if (!(smf::ramond_rank(g, nr, 1, 1) == RankPair{1, nr / 2})) return false;
    }
    for (long g : {2L, 3L}) {
        if (!(smf::ns_rank(g, 0, 0) == RankPair{1, 1})) return false;
        if (!(smf::ns_rank(g, 1, 0) == RankPair{g, 1})) return false;
        if (!(smf::ns_rank(g, 2, 0) == RankPair{g, 2 * g - 2})) return false;
        if (!(smf::ns_rank(g, 3, 0) == RankPair{3 * g - 3, 2 * g - 2})) return false;
        if (!(smf::ns_rank(g, -1, 0) == RankPair{1, 0})) return false;
    }
    return true;
}

// --- criterion 7 -----------------------------------------------------------

bool ramond_pipeline() {
    const smf::RamondInput fixture = smf::testing::ramond_identity_fixture(2, 8, 4);
    const smf::MumfordFormResult base = smf::mumford_ramond(fixture);
    if (!(base.coefficient == GrassmannElement::scalar(1, 4))) return false;

    for (int seed = 0; seed < 20; ++seed) {
        const smf::RamondInput input =
            smf::testing::random_ramond_input(2, 8, 6, 8000 + seed);
        const smf::MumfordFormResult deterministic = smf::mumford_ramond(input);
        const smf::MumfordFormResult randomized =
            smf::mumford_ramond(input, 17000 + seed);
        if (!(deterministic.coefficient == randomized.coefficient)) return false;
    }

    // Dimension violations must be rejected before any arithmetic.
    smf::RamondInput bad = smf::testing::ramond_identity_fixture(2, 8, 4);
    bad.sigma.pop_back();
    try {
        (void)smf::mumford_ramond(bad);
        return false;
    } catch (const smf::Error& e) {
        if (e.kind() != smf::ErrorKind::DimensionMismatch) return false;
    }
    return true;
}

// --- criterion 8 -----------------------------------------------------------

bool ns_pipeline() {
    const smf::NSInput fixture = smf::testing::ns_identity_fixture(3, 2, 4);
    if (!(smf::mumford_ns(fixture).coefficient == GrassmannElement::scalar(1, 4))) {
        return false;
    }
    for (int seed = 0; seed < 20; ++seed) {
        const smf::NSInput input = smf::testing::random_ns_input(3, 2, 6, 9000 + seed);
        const smf::MumfordFormResult deterministic = smf::mumford_ns(input);
        const smf::MumfordFormResult randomized =
            smf::mumford_ns(input, 23000 + seed);
        if (!(deterministic.coefficient == randomized.coefficient)) return false;

        const smf::MumfordFormResult punctured = smf::mumford_ns_punctured(input);
        const GrassmannElement recovered =
            punctured.coefficient * punctured.intermediates.at("ber_m_prime");
        if (!(recovered == deterministic.coefficient)) return false;
    }
    return true;
}

// --- criterion 9 -----------------------------------------------------------

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run_cli(const std::string& args) {
    const char* env = std::getenv("SMF_CLI_PATH");
    const std::string command =
        std::string(env ? env : "./smf") + " " + args + " 2>/dev/null";
    std::array<char, 4096> buffer{};
    RunResult result;
    FILE* pipe = popen(command.c_str(), "r");
    if (!pipe) return result;
    while (std::size_t n = std::fread(buffer.data(), 1, buffer.size(), pipe)) {
        result.output.append(buffer.data(), n);
    }
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

std::string write_temp(const std::string& name, const std::string& contents) {
    const std::string path = "/tmp/smf_acceptance_" + name;
    std::ofstream file(path);
    file << contents;
    return path;
}

bool cli_determinism() {
    const std::string ramond_path =
        write_temp("ramond.json",
                   smf::io::ramond_input_to_json(
                       smf::testing::ramond_identity_fixture())
                       .dump());
    const std::string ns_path = write_temp(
        "ns.json",
        smf::io::ns_input_to_json(smf::testing::ns_identity_fixture()).dump());
    smf::SuperMatrix mf(smf::Layout{1, 1}, smf::Layout{1, 1}, 2);
    const GrassmannElement f0 = GrassmannElement::scalar(Rational(5, 3), 2) +
                                GrassmannElement::monomial(1, {0, 1}, 2);
    mf.set(0, 0, f0);
    mf.set(1, 0, GrassmannElement::generator(0, 2));
    mf.set(1, 1, f0);
    const std::string mf_path =
        write_temp("mf.json", smf::io::matrix_to_json(mf).dump());
    const std::string change_path = write_temp(
        "change.json", smf::io::change_to_json(
                           smf::random_ramond_superconformal_change(4, 4, 99))
                           .dump());

    const std::vector<std::string> commands = {
        "ranks --family ramond --g 2 --nr 8",
        "ranks --family ns --g 3",
        "ber --input " + mf_path,
        "leftinv --input " + mf_path,
        "mumford ramond --input " + ramond_path,
        "--left-inverse-seed 5 mumford ramond --input " + ramond_path,
        "mumford ns --input " + ns_path,
        "mumford ns --punctured --input " + ns_path,
        "check-superconformal --input " + change_path,
        "validate --family ramond --input " + ramond_path,
    };
    for (const std::string& command : commands) {
        const RunResult first = run_cli(command);
        const RunResult second = run_cli(command);
        if (first.exit_code != 0 || second.exit_code != 0) return false;
        if (first.output.empty() || first.output != second.output) return false;
    }

    // Exit-code contract: malformed input (1) and a domain error (2).
    const std::string broken_path = write_temp("broken.json", "[not json");
    if (run_cli("ber --input " + broken_path).exit_code != 1) return false;

    smf::SuperMatrix singular = smf::SuperMatrix::identity(smf::Layout{1, 1}, 2);
    singular.set(1, 1, GrassmannElement::monomial(1, {0, 1}, 2));
    const std::string singular_path =
        write_temp("singular.json", smf::io::matrix_to_json(singular).dump());
    if (run_cli("ber --input " + singular_path).exit_code != 2) return false;
    return true;
}

}  // namespace

int main() {
    run(1, "Grassmann ring axioms on 500 randomized elements", 5.0,
        grassmann_axioms);
    run(2, "Berezinian multiplicativity and Ber(I) = 1", 10.0,
        berezinian_multiplicativity);
    run(3, "Ber m_f = 1 for 50 randomized even-invertible multipliers", 0.0,
        multiplication_map_lemma);
    run(4, "Ramond superconformal constraints and Ber A = 1, both branches", 0.0,
        ramond_change_lemma);
    run(5, "residue invariance under superconformal changes", 0.0,
        residue_invariance);
    run(6, "rank tables for (g, n_R) in {(2,8),(2,10),(3,14)} and NS g in {2,3}",
        0.0, rank_tables);
    run(7, "Ramond pipeline: fixture, left-inverse independence, rejection", 30.0,
        ramond_pipeline);
    run(8, "NS pipeline: fixture, B_1 independence, punctured consistency", 0.0,
        ns_pipeline);
    run(9, "CLI determinism and exit-code contract", 0.0, cli_determinism);

    if (failures == 0) {
        std::printf("acceptance: all 9 criteria passed\n");
        return 0;
    }
    std::printf("acceptance: %d criterion(s) failed\n", failures);
    return 1;
}
