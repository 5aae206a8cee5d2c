#include "smf/mumford.hpp"

#include <random>
#include <string>

#include "smf/detail/random.hpp"
#include "smf/errors.hpp"
#include "smf/moduli_ranks.hpp"

namespace smf {

namespace {

constexpr const char* kRamondTag = "d_{−1}·d_{1/2}^{−5}";
constexpr const char* kNsTag = "d_{3/2}·d_{1/2}^{−5}";
constexpr const char* kNsPuncturedTag = "d^N_{3/2}·(δ^N_{3/2})^{−1}·d_{1/2}^{−5}";

void check_table(const Table& table, std::size_t sections, std::size_t points,
                 Parity constant_parity, bool constant_is_minus, int ngens,
                 const char* name) {
    if (table.size() != sections) {
        fail(ErrorKind::DimensionMismatch, name,
             "expected " + std::to_string(sections) + " sections, got " +
                 std::to_string(table.size()));
    }
    const Parity theta_parity = opposite(constant_parity);
    for (std::size_t j = 0; j < table.size(); ++j) {
        if (table[j].size() != points) {
            fail(ErrorKind::DimensionMismatch, name,
                 "section " + std::to_string(j + 1) + " has " +
                     std::to_string(table[j].size()) + " entries, expected " +
                     std::to_string(points));
        }
        for (std::size_t k = 0; k < points; ++k) {
            const TableEntry& e = table[j][k];
            if (e.minus.num_generators() != ngens ||
                e.plus.num_generators() != ngens) {
                fail(ErrorKind::GeneratorMismatch, name,
                     "entry generator count differs from the input context");
            }
            const GrassmannElement& constant = constant_is_minus ? e.minus : e.plus;
            const GrassmannElement& theta = constant_is_minus ? e.plus : e.minus;
            if (!constant.is_homogeneous(constant_parity) ||
                !theta.is_homogeneous(theta_parity)) {
                fail(ErrorKind::ParityViolation, name,
                     "entry (" + std::to_string(j + 1) + ", " +
                         std::to_string(k + 1) + ") has the wrong parity");
            }
        }
    }
}

// The inverse of the unit factor f_k; h s / t expands as
// z^{-1} (h s / f_k) [dz|dtheta] so its residue at the puncture is
// (D_theta (h s invert_series(f_k)))(0 | 0).
SuperSeries unit_inverse(const SuperSeries& f, long k) {
    const std::string loc = "q_" + std::to_string(k + 1);
    if (f.weight() != 0) {
        fail(ErrorKind::WrongWeight, loc, "unit series must have weight 0");
    }
    if (f.valuation() < 0) {
        fail(ErrorKind::NonInvertibleLeading, loc, "unit series has a pole");
    }
    if (f.trunc_order() < 1) {
        fail(ErrorKind::TruncationExceeded, loc,
             "unit series must be known at least to order 1");
    }
    if (is_zero(f.coeff(0).a.body())) {
        fail(ErrorKind::NonInvertibleLeading, loc,
             "unit series has non-invertible constant term");
    }
    return invert_series(f);
}

// res_{q_k}(h s / t) where h has the z^0 pair (h0, h1) and s is 1 or theta.
GrassmannElement residue_with_unit(const GrassmannElement& h0,
                                   const GrassmannElement& h1,
                                   const SuperSeries& unit_inv, bool s_is_theta,
                                   int ngens) {
    const int trunc = unit_inv.trunc_order();
    SuperSeries h(0, 0, trunc, ngens);
    h.set_coeff(0, h0, h1);
    SuperSeries s = s_is_theta
                        ? SuperSeries::monomial_theta(0, 0, trunc, ngens)
                        : SuperSeries::constant(GrassmannElement::scalar(1, ngens),
                                                trunc);
    return residue_simple_pole(h * s * unit_inv, GrassmannElement::zero(ngens),
                               GrassmannElement::zero(ngens));
}

template <typename Fn>
auto relocate(const char* location, Fn&& fn) {
    try {
        return fn();
    } catch (const Error& e) {
        throw Error(e.kind(), location, e.what());
    }
}

std::int64_t draw_small(std::mt19937_64& rng) {
    return detail::draw_int(rng, -3, 3);
}

GrassmannElement draw_matched(std::mt19937_64& rng, Parity parity, int ngens) {
    if (parity == Parity::Even) {
        return GrassmannElement::scalar(detail::draw_rational(rng), ngens) +
               detail::draw_even_soul(rng, ngens);
    }
    return detail::draw_odd_element(rng, ngens);
}

}  // namespace

long RamondInput::r() const { return r_value(g, n_r); }

void RamondInput::validate() const {
    if (g < 2) {
        fail(ErrorKind::PreconditionViolated, "ramond_input", "genus must be >= 2");
    }
    if (n_r % 2 != 0 || n_r <= 6 * g - 6) {
        fail(ErrorKind::PreconditionViolated, "ramond_input",
             "n_R must be even and exceed 6g - 6");
    }
    const std::size_t rr = static_cast<std::size_t>(r());
    if (f.size() != rr) {
        fail(ErrorKind::DimensionMismatch, "ramond_input",
             "expected " + std::to_string(rr) + " unit series, got " +
                 std::to_string(f.size()));
    }
    for (std::size_t k = 0; k < rr; ++k) {
        if (f[k].num_generators() != num_generators) {
            fail(ErrorKind::GeneratorMismatch, "ramond_input",
                 "unit series generator count differs from the input context");
        }
        (void)unit_inverse(f[k], static_cast<long>(k));
    }
    const std::size_t gg = static_cast<std::size_t>(g);
    check_table(xi, rr - 1, rr, Parity::Odd, /*constant_is_minus=*/true,
                num_generators, "xi");
    check_table(phi, gg, rr, Parity::Even, true, num_generators, "phi");
    check_table(sigma, rr, rr, Parity::Even, true, num_generators, "sigma");
    check_table(tau, rr - gg, rr, Parity::Odd, /*constant_is_minus=*/false,
                num_generators, "tau");
    check_table(eta, rr, rr, Parity::Even, /*constant_is_minus=*/false,
                num_generators, "eta");
    check_table(psi, rr, rr, Parity::Odd, true, num_generators, "psi");
}

SuperMatrix residue_matrix_A(const RamondInput& input) {
    input.validate();
    const long r = input.r();
    const int ngens = input.num_generators;
    const GrassmannElement one = GrassmannElement::scalar(1, ngens);
    const GrassmannElement zero = GrassmannElement::zero(ngens);

    SuperMatrix a(Layout{static_cast<int>(r), static_cast<int>(r)},
                  Layout{1, static_cast<int>(r) - 1}, ngens);
    for (long k = 0; k < r; ++k) {
        const SuperSeries unit_inv = unit_inverse(input.f[k], k);
        for (long col = 0; col < r; ++col) {
            const GrassmannElement& h0 = col == 0 ? one : input.xi[col - 1][k].minus;
            const GrassmannElement& h1 = col == 0 ? zero : input.xi[col - 1][k].plus;
            a.set(static_cast<int>(k), static_cast<int>(col),
                  residue_with_unit(h0, h1, unit_inv, false, ngens));
            a.set(static_cast<int>(r + k), static_cast<int>(col),
                  residue_with_unit(h0, h1, unit_inv, true, ngens));
        }
    }
    return a;
}

SuperMatrix residue_matrix_B(const RamondInput& input) {
    input.validate();
    const long r = input.r();
    const int ngens = input.num_generators;

    SuperMatrix b(Layout{static_cast<int>(r), static_cast<int>(r)},
                  Layout{0, static_cast<int>(input.g)}, ngens);
    for (long k = 0; k < r; ++k) {
        const SuperSeries unit_inv = unit_inverse(input.f[k], k);
        for (long j = 0; j < input.g; ++j) {
            const TableEntry& e = input.phi[j][k];
            b.set(static_cast<int>(k), static_cast<int>(j),
                  residue_with_unit(e.minus, e.plus, unit_inv, false, ngens));
            b.set(static_cast<int>(r + k), static_cast<int>(j),
                  residue_with_unit(e.minus, e.plus, unit_inv, true, ngens));
        }
    }
    return b;
}

SuperMatrix a_prime_left_inverse(const SuperMatrix& a_prime) {
    const int r = a_prime.num_cols();
    const int two_r = a_prime.num_rows();
    if (two_r != 2 * r) {
        fail(ErrorKind::DimensionMismatch, "A_prime",
             "expected a (2r x r) residue matrix");
    }
    const int ngens = a_prime.num_generators();

    // Re-block the columns as [xi columns..., 1 column] so the even block
    // comes first, invert, and undo the permutation on the resulting rows.
    SuperMatrix blocked(a_prime.row_layout(), Layout{r - 1, 1}, ngens);
    for (int i = 0; i < two_r; ++i) {
        for (int j = 0; j < r; ++j) {
            blocked.set(i, j, a_prime.at(i, (j + 1) % r));
        }
    }
    const SuperMatrix inv = relocate("A_prime", [&] { return blocked.left_inverse(); });
    SuperMatrix result(Layout{1, r - 1}, a_prime.row_layout(), ngens);
    for (int j = 0; j < r; ++j) {
        for (int i = 0; i < two_r; ++i) {
            result.set((j + 1) % r, i, inv.at(j, i));
        }
    }
    return result;
}

namespace {

// Restriction coordinate vectors in slot order (1_1..1_r | theta_1..theta_r):
// the columns of M_0 that are fixed independently of the left inverse.
std::vector<std::vector<GrassmannElement>> a_side_kernel_rows(
    const RamondInput& input) {
    const long r = input.r();
    const int ngens = input.num_generators;
    std::vector<std::vector<GrassmannElement>> rows;
    std::vector<GrassmannElement> ones(2 * r, GrassmannElement::zero(ngens));
    for (long k = 0; k < r; ++k) ones[k] = GrassmannElement::scalar(1, ngens);
    rows.push_back(std::move(ones));
    for (long j = 0; j + 1 < r; ++j) {
        std::vector<GrassmannElement> row(2 * r, GrassmannElement::zero(ngens));
        for (long k = 0; k < r; ++k) {
            row[k] = input.xi[j][k].minus;
            row[r + k] = input.xi[j][k].plus;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

// tau and sigma slot rows in B'-row order (varpi_1..varpi_r | theta varpi):
// the vectors annihilating B' for constraint-satisfying inputs.
std::vector<std::vector<GrassmannElement>> b_side_kernel_rows(
    const RamondInput& input) {
    const long r = input.r();
    const int ngens = input.num_generators;
    std::vector<std::vector<GrassmannElement>> rows;
    for (const auto& tau_row : input.tau) {
        std::vector<GrassmannElement> row(2 * r, GrassmannElement::zero(ngens));
        for (long k = 0; k < r; ++k) {
            row[k] = tau_row[k].plus;
            row[r + k] = tau_row[k].minus;
        }
        rows.push_back(std::move(row));
    }
    for (const auto& sigma_row : input.sigma) {
        std::vector<GrassmannElement> row(2 * r, GrassmannElement::zero(ngens));
        for (long k = 0; k < r; ++k) {
            row[k] = sigma_row[k].minus;
            row[r + k] = sigma_row[k].plus;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

SuperMatrix a_prime_left_inverse_randomized(const RamondInput& input,
                                            const SuperMatrix& a_prime,
                                            std::uint64_t seed) {
    SuperMatrix base = a_prime_left_inverse(a_prime);
    const long r = input.r();
    const int ngens = input.num_generators;
    std::mt19937_64 rng(seed);
    const auto kernel = a_side_kernel_rows(input);

    // Row 0 lifts the odd dual element: an odd multiple of the all-ones
    // vector plus even multiples of the xi rows keep every downstream column
    // operation parity-valid and unipotent.  Rows 1..r-1 lift even duals and
    // take even multiples of the all-ones vector only (odd coefficients on
    // the xi rows would twist signs between the slot halves).
    for (long row = 0; row < r; ++row) {
        std::vector<GrassmannElement> shift(2 * r, GrassmannElement::zero(ngens));
        if (row == 0) {
            const GrassmannElement c = detail::draw_odd_element(rng, ngens);
            for (long i = 0; i < 2 * r; ++i) shift[i] = shift[i] + c * kernel[0][i];
            for (std::size_t j = 1; j < kernel.size(); ++j) {
                const GrassmannElement d = GrassmannElement::scalar(
                    Rational(draw_small(rng)), ngens);
                for (long i = 0; i < 2 * r; ++i) {
                    shift[i] = shift[i] + d * kernel[j][i];
                }
            }
        } else {
            const GrassmannElement c = GrassmannElement::scalar(
                Rational(draw_small(rng)), ngens);
            for (long i = 0; i < 2 * r; ++i) shift[i] = shift[i] + c * kernel[0][i];
        }
        for (long i = 0; i < 2 * r; ++i) {
            base.set(static_cast<int>(row), static_cast<int>(i),
                     base.at(static_cast<int>(row), static_cast<int>(i)) + shift[i]);
        }
    }
    return base;
}

SuperMatrix b_prime_left_inverse_randomized(const RamondInput& input,
                                            const SuperMatrix& b_prime,
                                            std::uint64_t seed) {
    SuperMatrix base = relocate("B_prime", [&] { return b_prime.left_inverse(); });
    const long r = input.r();
    const int ngens = input.num_generators;
    std::mt19937_64 rng(seed);
    const auto kernel = b_side_kernel_rows(input);
    const std::size_t n_tau = input.tau.size();

    // Perturbations become row operations on M_{-1/2}: tau rows carry even
    // coefficients against the even b rows, sigma rows odd ones.
    for (long row = 0; row < input.g; ++row) {
        for (std::size_t j = 0; j < kernel.size(); ++j) {
            const Parity parity = j < n_tau ? Parity::Even : Parity::Odd;
            const GrassmannElement c = draw_matched(rng, parity, ngens);
            for (long i = 0; i < 2 * r; ++i) {
                base.set(static_cast<int>(row), static_cast<int>(i),
                         base.at(static_cast<int>(row), static_cast<int>(i)) +
                             c * kernel[j][i]);
            }
        }
    }
    return base;
}

SuperMatrix build_M0(const RamondInput& input, const SuperMatrix& a_left_inverse) {
    const long r = input.r();
    const int ngens = input.num_generators;
    if (a_left_inverse.num_rows() != r || a_left_inverse.num_cols() != 2 * r) {
        fail(ErrorKind::DimensionMismatch, "M_0",
             "left inverse must be (r x 2r)");
    }

    SuperMatrix m(Layout{static_cast<int>(r), static_cast<int>(r)},
                  Layout{static_cast<int>(r), static_cast<int>(r)}, ngens);
    for (long i = 0; i < r; ++i) {
        m.set(static_cast<int>(i), 0, GrassmannElement::scalar(1, ngens));
    }
    // Columns 2..r: the lifts a_{2,.}, ..., a_{r,.}.
    for (long col = 1; col < r; ++col) {
        for (long i = 0; i < 2 * r; ++i) {
            m.set(static_cast<int>(i), static_cast<int>(col),
                  a_left_inverse.at(static_cast<int>(col), static_cast<int>(i)));
        }
    }
    // Columns r+1..2r-1: the restrictions xi_j|_T.
    for (long j = 0; j + 1 < r; ++j) {
        for (long k = 0; k < r; ++k) {
            m.set(static_cast<int>(k), static_cast<int>(r + j),
                  input.xi[j][k].minus);
            m.set(static_cast<int>(r + k), static_cast<int>(r + j),
                  input.xi[j][k].plus);
        }
    }
    // Last column: the lift a_{1,.}.
    for (long i = 0; i < 2 * r; ++i) {
        m.set(static_cast<int>(i), static_cast<int>(2 * r - 1),
              a_left_inverse.at(0, static_cast<int>(i)));
    }
    return m;
}

SuperMatrix build_M_minus_half(const RamondInput& input,
                               const SuperMatrix& b_left_inverse) {
    const long r = input.r();
    const long g = input.g;
    const int ngens = input.num_generators;
    if (b_left_inverse.num_rows() != g || b_left_inverse.num_cols() != 2 * r) {
        fail(ErrorKind::DimensionMismatch, "M_minus_half",
             "left inverse must be (g x 2r)");
    }

    SuperMatrix m(Layout{static_cast<int>(r), static_cast<int>(r)},
                  Layout{static_cast<int>(r), static_cast<int>(r)}, ngens);
    // Rows 1..r-g: tau restrictions.
    for (long j = 0; j < r - g; ++j) {
        for (long k = 0; k < r; ++k) {
            m.set(static_cast<int>(j), static_cast<int>(k), input.tau[j][k].minus);
            m.set(static_cast<int>(j), static_cast<int>(r + k),
                  input.tau[j][k].plus);
        }
    }
    // Rows r-g+1..r: the lifts, theta varpi coordinates first.
    for (long j = 0; j < g; ++j) {
        for (long k = 0; k < r; ++k) {
            m.set(static_cast<int>(r - g + j), static_cast<int>(k),
                  b_left_inverse.at(static_cast<int>(j), static_cast<int>(r + k)));
            m.set(static_cast<int>(r - g + j), static_cast<int>(r + k),
                  b_left_inverse.at(static_cast<int>(j), static_cast<int>(k)));
        }
    }
    // Rows r+1..2r: sigma restrictions.
    for (long j = 0; j < r; ++j) {
        for (long k = 0; k < r; ++k) {
            m.set(static_cast<int>(r + j), static_cast<int>(k),
                  input.sigma[j][k].plus);
            m.set(static_cast<int>(r + j), static_cast<int>(r + k),
                  input.sigma[j][k].minus);
        }
    }
    return m;
}

SuperMatrix build_M_minus_one(const RamondInput& input) {
    input.validate();
    const long r = input.r();
    const int ngens = input.num_generators;
    SuperMatrix m(Layout{static_cast<int>(r), static_cast<int>(r)},
                  Layout{static_cast<int>(r), static_cast<int>(r)}, ngens);
    for (long j = 0; j < r; ++j) {
        for (long k = 0; k < r; ++k) {
            m.set(static_cast<int>(j), static_cast<int>(k), input.eta[j][k].plus);
            m.set(static_cast<int>(j), static_cast<int>(r + k),
                  input.eta[j][k].minus);
            m.set(static_cast<int>(r + j), static_cast<int>(k),
                  input.psi[j][k].minus);
            m.set(static_cast<int>(r + j), static_cast<int>(r + k),
                  input.psi[j][k].plus);
        }
    }
    return m;
}

MumfordFormResult mumford_ramond(const RamondInput& input,
                                 std::optional<std::uint64_t> seed) {
    input.validate();
    const SuperMatrix a_prime = residue_matrix_A(input);
    const SuperMatrix b_prime = residue_matrix_B(input);

    const SuperMatrix a = seed ? a_prime_left_inverse_randomized(input, a_prime, *seed)
                               : a_prime_left_inverse(a_prime);
    const SuperMatrix b =
        seed ? b_prime_left_inverse_randomized(input, b_prime, *seed + 1)
             : relocate("B_prime", [&] { return b_prime.left_inverse(); });

    const SuperMatrix m0 = build_M0(input, a);
    const SuperMatrix m_half = build_M_minus_half(input, b);
    const SuperMatrix m_one = build_M_minus_one(input);

    const GrassmannElement ber_m0 = relocate("M_0", [&] { return m0.berezinian(); });
    const GrassmannElement ber_m_half =
        relocate("M_minus_half", [&] { return m_half.berezinian(); });
    const GrassmannElement ber_m_one =
        relocate("M_minus_one", [&] { return m_one.berezinian(); });

    MumfordFormResult result;
    result.coefficient =
        ber_m0 * ber_m0 *
        relocate("mumford_ramond", [&] { return (ber_m_one * ber_m_half).inverse(); });
    result.formal_tag = kRamondTag;
    result.intermediates.emplace("ber_m0", ber_m0);
    result.intermediates.emplace("ber_m_minus_half", ber_m_half);
    result.intermediates.emplace("ber_m_minus_one", ber_m_one);
    return result;
}

// ---- Neveu-Schwarz ----

void NSInput::validate() const {
    if (g < 2) {
        fail(ErrorKind::PreconditionViolated, "ns_input", "genus must be >= 2");
    }
    if (n_ns < 0) {
        fail(ErrorKind::PreconditionViolated, "ns_input",
             "the number of NS punctures must be nonnegative");
    }
    const std::size_t points = static_cast<std::size_t>(g - 1);
    check_table(phi, points, points, Parity::Even, /*constant_is_minus=*/false,
                num_generators, "phi");
    check_table(chi, points, points, Parity::Even, false, num_generators, "chi");
    check_table(psi, static_cast<std::size_t>(g - 2), points, Parity::Odd, true,
                num_generators, "psi");
    check_table(sigma, points, points, Parity::Even, false, num_generators,
                "sigma");
    check_table(rho, static_cast<std::size_t>(g - 2), points, Parity::Odd, true,
                num_generators, "rho");
    if (xi.size() != points) {
        fail(ErrorKind::DimensionMismatch, "xi",
             "expected " + std::to_string(points) + " entries");
    }
    for (const TableEntry& e : xi) {
        if (!e.minus.is_homogeneous(Parity::Odd) ||
            !e.plus.is_homogeneous(Parity::Even)) {
            fail(ErrorKind::ParityViolation, "xi", "entry has the wrong parity");
        }
    }
    if (!xi_inv.is_homogeneous(Parity::Even)) {
        fail(ErrorKind::ParityViolation, "xi_inv", "normalization must be even");
    }
    const std::size_t nn = static_cast<std::size_t>(n_ns);
    check_table(alpha, nn, nn, Parity::Even, false, num_generators, "alpha");
    check_table(beta, nn, nn, Parity::Odd, true, num_generators, "beta");
}

SuperMatrix ns_lift_pairing_matrix(const NSInput& input) {
    input.validate();
    const long n = input.g - 1;
    const int ngens = input.num_generators;
    SuperMatrix x(Layout{static_cast<int>(n), static_cast<int>(n)},
                  Layout{0, static_cast<int>(n)}, ngens);
    for (long k = 0; k < n; ++k) {
        for (long j = 0; j < n; ++j) {
            x.set(static_cast<int>(k), static_cast<int>(j), input.phi[j][k].minus);
            x.set(static_cast<int>(n + k), static_cast<int>(j),
                  input.phi[j][k].plus);
        }
    }
    return x;
}

SuperMatrix ns_pairing_left_inverse_randomized(const NSInput& input,
                                               const SuperMatrix& pairing,
                                               std::uint64_t seed) {
    SuperMatrix base = relocate("M_1", [&] { return pairing.left_inverse(); });
    const long n = input.g - 1;
    const int ngens = input.num_generators;
    std::mt19937_64 rng(seed);

    // Kernel vectors: the phi restriction rows (the rows of A_1).  Adding odd
    // multiples of them to the lift rows is a parity-valid row operation on
    // M_1 and leaves its Berezinian unchanged.
    for (long row = 0; row < n; ++row) {
        for (long i = 0; i < n; ++i) {
            const GrassmannElement c = detail::draw_odd_element(rng, ngens);
            for (long k = 0; k < n; ++k) {
                base.set(static_cast<int>(row), static_cast<int>(k),
                         base.at(static_cast<int>(row), static_cast<int>(k)) +
                             c * input.phi[i][k].plus);
                base.set(static_cast<int>(row), static_cast<int>(n + k),
                         base.at(static_cast<int>(row), static_cast<int>(n + k)) +
                             c * input.phi[i][k].minus);
            }
        }
    }
    return base;
}

SuperMatrix build_M1(const NSInput& input, std::optional<std::uint64_t> seed) {
    input.validate();
    const long n = input.g - 1;
    const int ngens = input.num_generators;
    const SuperMatrix pairing = ns_lift_pairing_matrix(input);
    const SuperMatrix lifts =
        seed ? ns_pairing_left_inverse_randomized(input, pairing, *seed)
             : relocate("M_1", [&] { return pairing.left_inverse(); });

    SuperMatrix m(Layout{static_cast<int>(n), static_cast<int>(n)},
                  Layout{static_cast<int>(n), static_cast<int>(n)}, ngens);
    for (long j = 0; j < n; ++j) {
        for (long k = 0; k < n; ++k) {
            m.set(static_cast<int>(j), static_cast<int>(k), input.phi[j][k].plus);
            m.set(static_cast<int>(j), static_cast<int>(n + k),
                  input.phi[j][k].minus);
        }
    }
    for (long j = 0; j < n; ++j) {
        for (long i = 0; i < 2 * n; ++i) {
            m.set(static_cast<int>(n + j), static_cast<int>(i),
                  lifts.at(static_cast<int>(j), static_cast<int>(i)));
        }
    }
    return m;
}

SuperMatrix build_M2(const NSInput& input) {
    input.validate();
    const long n = input.g - 1;
    const int ngens = input.num_generators;
    SuperMatrix m(Layout{static_cast<int>(n), static_cast<int>(n)},
                  Layout{static_cast<int>(n), static_cast<int>(n)}, ngens);
    for (long j = 0; j < n; ++j) {
        for (long k = 0; k < n; ++k) {
            m.set(static_cast<int>(j), static_cast<int>(k), input.chi[j][k].plus);
            m.set(static_cast<int>(j), static_cast<int>(n + k),
                  input.chi[j][k].minus);
        }
    }
    for (long j = 0; j + 1 < n; ++j) {
        for (long k = 0; k < n; ++k) {
            m.set(static_cast<int>(n + j), static_cast<int>(k),
                  input.psi[j][k].minus);
            m.set(static_cast<int>(n + j), static_cast<int>(n + k),
                  input.psi[j][k].plus);
        }
    }
    m.set(static_cast<int>(2 * n - 1), static_cast<int>(2 * n - 1),
          GrassmannElement::scalar(1, ngens));
    return m;
}

SuperMatrix build_M3(const NSInput& input) {
    input.validate();
    if (is_zero(input.xi_inv.body())) {
        fail(ErrorKind::NonInvertibleNormalization, "M_3",
             "xi_inv must have invertible body");
    }
    const long n = input.g - 1;
    const int ngens = input.num_generators;
    SuperMatrix m(Layout{static_cast<int>(n), static_cast<int>(n)},
                  Layout{static_cast<int>(n), static_cast<int>(n)}, ngens);
    for (long j = 0; j + 1 < n; ++j) {
        for (long k = 0; k < n; ++k) {
            m.set(static_cast<int>(j), static_cast<int>(k), input.rho[j][k].plus);
            m.set(static_cast<int>(j), static_cast<int>(n + k),
                  input.rho[j][k].minus);
        }
    }
    m.set(static_cast<int>(n - 1), 0, input.xi_inv);
    for (long j = 0; j < n; ++j) {
        for (long k = 0; k < n; ++k) {
            m.set(static_cast<int>(n + j), static_cast<int>(k),
                  input.sigma[j][k].minus);
            m.set(static_cast<int>(n + j), static_cast<int>(n + k),
                  input.sigma[j][k].plus);
        }
    }
    return m;
}

SuperMatrix build_Mprime(const NSInput& input) {
    input.validate();
    if (input.n_ns < 1) {
        fail(ErrorKind::PreconditionViolated, "M_prime",
             "at least one NS puncture is required");
    }
    const long n = input.n_ns;
    const int ngens = input.num_generators;
    SuperMatrix m(Layout{static_cast<int>(n), static_cast<int>(n)},
                  Layout{static_cast<int>(n), static_cast<int>(n)}, ngens);
    for (long j = 0; j < n; ++j) {
        for (long k = 0; k < n; ++k) {
            m.set(static_cast<int>(j), static_cast<int>(k), input.alpha[j][k].plus);
            m.set(static_cast<int>(j), static_cast<int>(n + k),
                  input.alpha[j][k].minus);
            m.set(static_cast<int>(n + j), static_cast<int>(k),
                  input.beta[j][k].minus);
            m.set(static_cast<int>(n + j), static_cast<int>(n + k),
                  input.beta[j][k].plus);
        }
    }
    return m;
}

namespace {

MumfordFormResult evaluate_ns(const NSInput& input,
                              std::optional<std::uint64_t> seed, bool punctured) {
    input.validate();
    const SuperMatrix m1 = build_M1(input, seed);
    const SuperMatrix m2 = build_M2(input);
    const SuperMatrix m3 = build_M3(input);

    const GrassmannElement ber_m1 = relocate("M_1", [&] { return m1.berezinian(); });
    const GrassmannElement ber_m2 = relocate("M_2", [&] { return m2.berezinian(); });
    const GrassmannElement ber_m3 = relocate("M_3", [&] { return m3.berezinian(); });

    MumfordFormResult result;
    result.intermediates.emplace("ber_m1", ber_m1);
    result.intermediates.emplace("ber_m2", ber_m2);
    result.intermediates.emplace("ber_m3", ber_m3);

    GrassmannElement denominator = ber_m1 * ber_m1;
    if (punctured) {
        if (input.n_ns < 1) {
            fail(ErrorKind::PreconditionViolated, "mumford_ns_punctured",
                 "at least one NS puncture is required");
        }
        const SuperMatrix m_prime = build_Mprime(input);
        const GrassmannElement ber_m_prime =
            relocate("M_prime", [&] { return m_prime.berezinian(); });
        result.intermediates.emplace("ber_m_prime", ber_m_prime);
        denominator = denominator * ber_m_prime;
    }
    result.coefficient =
        ber_m3 * ber_m2 *
        relocate(punctured ? "mumford_ns_punctured" : "mumford_ns",
                 [&] { return denominator.inverse(); });
    result.formal_tag = punctured ? kNsPuncturedTag : kNsTag;
    return result;
}

}  // namespace

MumfordFormResult mumford_ns(const NSInput& input,
                             std::optional<std::uint64_t> seed) {
    return evaluate_ns(input, seed, /*punctured=*/false);
}

MumfordFormResult mumford_ns_punctured(const NSInput& input,
                                       std::optional<std::uint64_t> seed) {
    return evaluate_ns(input, seed, /*punctured=*/true);
}

}  // namespace smf
