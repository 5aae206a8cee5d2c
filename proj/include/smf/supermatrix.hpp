#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "smf/grassmann.hpp"

namespace smf {

// Block sizes of a supermatrix axis: `even` rows/columns come first, then
// `odd` ones.
struct Layout {
    int even = 0;
    int odd = 0;

    int total() const { return even + odd; }
    bool operator==(const Layout& other) const = default;
};

struct ParityReport {
    bool valid = true;
    // (row, column) positions whose entry contradicts the block layout.
    std::vector<std::pair<int, int>> violations;
};

// A dense block-structured matrix over the Grassmann ring.  Entries are
// stored row-major; the layouts say how many rows/columns carry each parity.
// Values are immutable once built up; all operations are pure.
class SuperMatrix {
public:
    SuperMatrix(Layout rows, Layout cols, int num_generators);

    static SuperMatrix identity(Layout layout, int num_generators);

    const Layout& row_layout() const { return rows_; }
    const Layout& col_layout() const { return cols_; }
    int num_rows() const { return rows_.total(); }
    int num_cols() const { return cols_.total(); }
    int num_generators() const { return num_generators_; }

    const GrassmannElement& at(int row, int col) const;
    void set(int row, int col, GrassmannElement value);

    Parity row_parity(int row) const;
    Parity col_parity(int col) const;

    // Ordinary row-by-column product over the (signed, noncommutative)
    // Grassmann ring; the ring multiplication carries all signs.
    SuperMatrix multiply(const SuperMatrix& other) const;

    // Lists entries whose parity contradicts the block layout; zero entries
    // pass anywhere.
    ParityReport validate_parity() const;

    // Standard Berezinian Ber M = det(A - B D^{-1} C) det(D)^{-1} for the
    // block form [[A, B], [C, D]], A the even-even block.  Requires a square,
    // parity-valid even supermatrix whose odd-odd block has invertible body
    // determinant.
    GrassmannElement berezinian() const;

    // Deterministic left inverse L with L * M = I.  The body matrix is
    // left-inverted by minimal-pivot Gauss-Jordan over Q and the nilpotent
    // remainder is absorbed by a terminating Neumann series.  Requires at
    // least as many rows as columns and full column rank of the body.
    SuperMatrix left_inverse() const;

    // A seeded, parity-respecting variant: L' = L + R (I - M L) with R a
    // random even supermatrix.  Used to exercise the non-uniqueness of left
    // inverses; deterministic for a fixed seed.
    SuperMatrix left_inverse_randomized(std::uint64_t seed) const;

    bool operator==(const SuperMatrix& other) const;
    bool operator!=(const SuperMatrix& other) const { return !(*this == other); }

private:
    SuperMatrix subtract(const SuperMatrix& other) const;
    SuperMatrix add(const SuperMatrix& other) const;

    Layout rows_;
    Layout cols_;
    int num_generators_;
    std::vector<GrassmannElement> entries_;
};

// Determinant of a square matrix with Even entries (a commutative subring),
// by fraction-free Bareiss elimination with exact division.  Pivots are
// chosen with full pivoting among invertible-body entries; if none remains,
// the all-nilpotent remainder is expanded directly and rescaled through
// Sylvester's identity.
GrassmannElement determinant_even(std::vector<GrassmannElement> entries, int n,
                                  int num_generators);

}  // namespace smf
