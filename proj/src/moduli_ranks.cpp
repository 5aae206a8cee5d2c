#include "smf/moduli_ranks.hpp"

#include <string>

#include "smf/errors.hpp"

namespace smf {

namespace {

void check_ramond_preconditions(long g, long n_r) {
    if (g < 2) {
        fail(ErrorKind::PreconditionViolated, "ramond_rank", "genus must be >= 2");
    }
    if (n_r % 2 != 0) {
        fail(ErrorKind::PreconditionViolated, "ramond_rank",
             "the number of Ramond punctures must be even");
    }
    if (n_r <= 6 * g - 6) {
        fail(ErrorKind::PreconditionViolated, "ramond_rank",
             "n_R must exceed 6g - 6 (" + std::to_string(n_r) + " <= " +
                 std::to_string(6 * g - 6) + ")");
    }
}

}  // namespace

RankPair ramond_rank(long g, long n_r, int j, int i) {
    check_ramond_preconditions(g, n_r);
    if (j < -2 || j > 1 || i < 0 || i > 1) {
        fail(ErrorKind::PreconditionViolated, "ramond_rank",
             "tabulated range is j in [-2, 1], i in {0, 1}");
    }
    if (i == 0) {
        switch (j) {
            case -2: return {n_r + 3 - 3 * g, 3 * n_r / 2 + 2 - 2 * g};
            case -1: return {n_r + 1 - g, n_r / 2 + 2 - 2 * g};
            case 0: return {1, n_r / 2};
            case 1: return {g, 0};
        }
    }
    switch (j) {
        case -2: return {0, 0};
        case -1: return {0, 0};
        case 0: return {g, 0};
        case 1: return {1, n_r / 2};
    }
    return {};
}

RankPair ns_rank(long g, int j, int i) {
    if (g < 2) {
        fail(ErrorKind::PreconditionViolated, "ns_rank", "genus must be >= 2");
    }
    if (j < -1 || j > 3 || i < 0 || i > 1) {
        fail(ErrorKind::PreconditionViolated, "ns_rank",
             "tabulated range is j in [-1, 3], i in {0, 1}");
    }
    if (i == 0) {
        switch (j) {
            case -1: return {1, 0};
            case 0: return {1, 1};
            case 1: return {g, 1};
            case 2: return {g, 2 * g - 2};
            case 3: return {3 * g - 3, 2 * g - 2};
        }
    }
    // Serre duality: R^1 pi_* omega^j is dual to pi_* omega^{1-j}.  For j = 2
    // and 3 the dual row sits at j' = -1 and -2; the latter has negative
    // degree on the reduced curve, so both parts vanish.
    switch (j) {
        case -1: return ns_rank(g, 2, 0);
        case 0: return ns_rank(g, 1, 0);
        case 1: return ns_rank(g, 0, 0);
        case 2: return ns_rank(g, -1, 0);
        case 3: return {0, 0};
    }
    return {};
}

long r_value(long g, long n_r) {
    if (n_r % 2 != 0) {
        fail(ErrorKind::PreconditionViolated, "r_value",
             "the number of Ramond punctures must be even");
    }
    return n_r / 2 - g + 1;
}

}  // namespace smf
