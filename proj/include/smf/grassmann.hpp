#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "smf/rational.hpp"

namespace smf {

enum class Parity { Even, Odd };

inline Parity opposite(Parity p) {
    return p == Parity::Even ? Parity::Odd : Parity::Even;
}

// An exact element of the Grassmann (exterior) algebra over Q on a fixed
// finite set of odd generators.  A multi-index is stored as a bitmask whose
// set bits are the generator indices in increasing order; bit i < bit j with
// i < j corresponds to the ordered monomial alpha_i alpha_j.  Elements are
// immutable values in canonical sparse form: no stored coefficient is zero.
class GrassmannElement {
public:
    static constexpr int kMaxGenerators = 63;

    // The zero element of the ring with the given number of generators.
    explicit GrassmannElement(int num_generators = 0);

    static GrassmannElement zero(int num_generators);
    static GrassmannElement scalar(const Rational& value, int num_generators);
    static GrassmannElement generator(int index, int num_generators);
    // A single term c * alpha_{i1} ... alpha_{ik}; indices must be strictly
    // increasing.
    static GrassmannElement monomial(const Rational& coeff,
                                     const std::vector<int>& indices,
                                     int num_generators);

    int num_generators() const { return num_generators_; }
    const std::map<std::uint64_t, Rational>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }

    // Coefficient of the empty multi-index (0 if absent).
    Rational body() const;
    // The nilpotent part a - body(a).
    GrassmannElement soul() const;

    // Parity of a homogeneous element; throws MixedParity otherwise.  Zero
    // counts as Even.
    Parity parity() const;
    // True when every term has the given parity; zero passes either.
    bool is_homogeneous(Parity p) const;

    // a |-> a_even - a_odd.  Used to move factors past an odd symbol.
    GrassmannElement grade_involution() const;

    GrassmannElement operator-() const;
    GrassmannElement operator+(const GrassmannElement& other) const;
    GrassmannElement operator-(const GrassmannElement& other) const;
    GrassmannElement operator*(const GrassmannElement& other) const;
    GrassmannElement operator*(const Rational& scalar) const;

    // Two-sided inverse; requires body != 0.  Computed as
    // body^{-1} * sum_k (-n)^k for a = body (1 + n) with n nilpotent; the sum
    // terminates because the generator count is finite.
    GrassmannElement inverse() const;

    bool operator==(const GrassmannElement& other) const;
    bool operator!=(const GrassmannElement& other) const { return !(*this == other); }

private:
    void insert_term(std::uint64_t mask, const Rational& coeff);
    void check_compatible(const GrassmannElement& other, const char* op) const;

    int num_generators_;
    std::map<std::uint64_t, Rational> terms_;
};

inline GrassmannElement operator*(const Rational& scalar, const GrassmannElement& a) {
    return a * scalar;
}

// Number of set bits of `mask` strictly above position `bit`.
int bits_above(std::uint64_t mask, int bit);

// Sign of merging the ordered monomial `left` with `right`; 0 when they share
// a generator (the term annihilates).
int merge_sign(std::uint64_t left, std::uint64_t right);

}  // namespace smf
