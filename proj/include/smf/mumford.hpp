#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "smf/grassmann.hpp"
#include "smf/supermatrix.hpp"
#include "smf/superseries.hpp"

namespace smf {

// One local expansion coefficient pair: the z^0 term of a section written as
// (constant + theta-coefficient * theta).  Which field is the constant, and
// the parities, vary per table family; the constant coefficient always
// carries the section's parity.
struct TableEntry {
    GrassmannElement minus;
    GrassmannElement plus;
};

using Table = std::vector<std::vector<TableEntry>>;  // [section j][puncture k]

// Per-puncture expansion data for the Ramond-punctured family.  Only the z^0
// coefficients of the section expansions enter the residue matrices; the unit
// factors f_k of the distinguished section may carry arbitrary higher-order
// data.
struct RamondInput {
    long g = 0;
    long n_r = 0;
    int num_generators = 0;

    std::vector<SuperSeries> f;  // r unit series, weight 0, invertible at 0

    Table xi;     // (r-1) x r, odd sections:  minus odd,  plus even
    Table phi;    // g x r,     even sections: minus even, plus odd
    Table sigma;  // r x r,     even sections: minus even, plus odd
    Table tau;    // (r-g) x r, odd sections:  plus odd,   minus even
    Table eta;    // r x r,     even sections: plus even,  minus odd
    Table psi;    // r x r,     odd sections:  minus odd,  plus even

    long r() const;
    // Dimension, parity and unit checks; throws before any arithmetic.
    void validate() const;
};

// Expansion data for the odd-spin Neveu-Schwarz family at the g-1 zeros of
// the distinguished section, plus the alpha/beta blocks at the n_NS punctures.
struct NSInput {
    long g = 0;
    long n_ns = 0;
    int num_generators = 0;

    Table phi;    // (g-1) x (g-1), even: plus even, minus odd
    Table chi;    // (g-1) x (g-1), even: plus even, minus odd
    Table psi;    // (g-2) x (g-1), odd:  minus odd, plus even
    Table sigma;  // (g-1) x (g-1), even: plus even, minus odd
    Table rho;    // (g-2) x (g-1), odd:  minus odd, plus even
    std::vector<TableEntry> xi;  // g-1, odd: minus odd, plus even
    GrassmannElement xi_inv;     // even with invertible body

    Table alpha;  // n_NS x n_NS, even: plus even, minus odd
    Table beta;   // n_NS x n_NS, odd:  minus odd, plus even

    void validate() const;
};

struct MumfordFormResult {
    GrassmannElement coefficient;
    std::string formal_tag;
    std::map<std::string, GrassmannElement> intermediates;
};

// ---- Ramond pipeline ----

// The (2r x r) matrix of residues res_{q_k}(h s / t) for h in {1, xi_j} and
// s in {1_k, theta_k}; rows 1_1..1_r then theta_1..theta_r, columns 1 then
// xi_1..xi_{r-1}, exactly as displayed.
SuperMatrix residue_matrix_A(const RamondInput& input);

// The (2r x g) matrix of residues res_{q_k}(phi_j varpi_k / t) and
// res_{q_k}(phi_j theta_k varpi_k / t).
SuperMatrix residue_matrix_B(const RamondInput& input);

// Left inverse of A' with row j dual to column j of A' (so row 1 lifts the
// dual of the constant function, rows 2..r the xi duals).  Internally
// re-blocks the columns so the body reduction and parity bookkeeping line up.
SuperMatrix a_prime_left_inverse(const SuperMatrix& a_prime);

// A distinct left inverse obtained by adding seeded, parity-matched
// combinations of the restriction vectors (the coordinate rows of 1|_T and
// xi_j|_T).  Valid whenever the input satisfies the global residue
// constraints; Berezinians downstream are provably unchanged.
SuperMatrix a_prime_left_inverse_randomized(const RamondInput& input,
                                            const SuperMatrix& a_prime,
                                            std::uint64_t seed);
SuperMatrix b_prime_left_inverse_randomized(const RamondInput& input,
                                            const SuperMatrix& b_prime,
                                            std::uint64_t seed);

// The three displayed 2r x 2r matrices.
SuperMatrix build_M0(const RamondInput& input, const SuperMatrix& a_left_inverse);
SuperMatrix build_M_minus_half(const RamondInput& input,
                               const SuperMatrix& b_left_inverse);
SuperMatrix build_M_minus_one(const RamondInput& input);

// (Ber M_0)^2 / (Ber M_{-1} Ber M_{-1/2}); a seed switches both left
// inverses to the randomized variants.
MumfordFormResult mumford_ramond(const RamondInput& input,
                                 std::optional<std::uint64_t> seed = std::nullopt);

// ---- Neveu-Schwarz pipeline ----

// The residue-pairing matrix whose left inverses provide the lift rows of
// M_1 (the +/- column blocks of A_1, transposed).
SuperMatrix ns_lift_pairing_matrix(const NSInput& input);

SuperMatrix ns_pairing_left_inverse_randomized(const NSInput& input,
                                               const SuperMatrix& pairing,
                                               std::uint64_t seed);

SuperMatrix build_M1(const NSInput& input,
                     std::optional<std::uint64_t> seed = std::nullopt);
SuperMatrix build_M2(const NSInput& input);
SuperMatrix build_M3(const NSInput& input);
SuperMatrix build_Mprime(const NSInput& input);

// Ber M_3 Ber M_2 / (Ber M_1)^2.
MumfordFormResult mumford_ns(const NSInput& input,
                             std::optional<std::uint64_t> seed = std::nullopt);

// Ber M_3 Ber M_2 / ((Ber M_1)^2 Ber M'); requires n_NS >= 1.
MumfordFormResult mumford_ns_punctured(const NSInput& input,
                                       std::optional<std::uint64_t> seed = std::nullopt);

}  // namespace smf
