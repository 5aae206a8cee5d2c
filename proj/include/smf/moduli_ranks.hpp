#pragma once

namespace smf {

// Even | odd rank of a locally free sheaf on the base.
struct RankPair {
    long even = 0;
    long odd = 0;

    bool operator==(const RankPair& other) const = default;
};

// Rank of R^i pi_* omega^j for a genus-g family with n_R Ramond punctures.
// Hard-coded closed forms from the rank tables; valid for g >= 2, even
// n_R > 6g - 6, j in [-2, 1], i in {0, 1}.
RankPair ramond_rank(long g, long n_r, int j, int i);

// Rank of R^i pi_* omega^j for the odd-spin Neveu-Schwarz setting; g >= 2,
// j in [-1, 3], i in {0, 1}.  The i = 1 values are the Serre duals of the
// j' = 1 - j row (rank-preserving, as in the tabulated Ramond case).
RankPair ns_rank(long g, int j, int i);

// r = n_R / 2 - g + 1, the number of zeros of the distinguished odd section.
long r_value(long g, long n_r);

}  // namespace smf
