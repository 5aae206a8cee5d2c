#pragma once

#include <vector>

#include "smf/grassmann.hpp"

namespace smf {

struct CoordinateChange;

// One Laurent coefficient: the pair (a, b) in (a + b theta) z^k.
struct CoefficientPair {
    GrassmannElement a;
    GrassmannElement b;

    bool is_zero() const { return a.is_zero() && b.is_zero(); }
    bool operator==(const CoefficientPair& other) const = default;
};

// A truncated super Laurent series
//     sum_{k=-N}^{M} (a_k + b_k theta) z^k,
// tagged with the form weight j (the section is f [dz|dtheta]^j; j = 0 for
// plain functions).  N is the pole order, M the guaranteed truncation order:
// coefficients above M are unknown, coefficients below -N are known to be
// zero.  Canonical form keeps the leading pair nonzero unless N = 0.
class SuperSeries {
public:
    SuperSeries(int weight, int pole_order, int trunc_order, int num_generators);

    static SuperSeries zero(int weight, int trunc_order, int num_generators);
    static SuperSeries constant(const GrassmannElement& value, int trunc_order);
    // The monomial z^k (k may be negative) or theta z^k.
    static SuperSeries monomial_z(int k, int weight, int trunc_order,
                                  int num_generators);
    static SuperSeries monomial_theta(int k, int weight, int trunc_order,
                                      int num_generators);

    int weight() const { return weight_; }
    int pole_order() const { return pole_; }
    int trunc_order() const { return trunc_; }
    int num_generators() const { return num_generators_; }
    int lowest_exponent() const { return -pole_; }

    // Known-zero below the pole; throws TruncationExceeded above the
    // truncation order.
    CoefficientPair coeff(int k) const;
    void set_coeff(int k, GrassmannElement a, GrassmannElement b);

    // Lowest exponent carrying a nonzero pair; trunc_order()+1 when the
    // known range is identically zero.
    int valuation() const;
    bool known_range_empty() const { return trunc_ < -pole_; }

    // Strips leading zero pairs (restoring the canonical pole order) and
    // anything beyond the truncation order.
    SuperSeries canonicalized() const;

    // Re-slices to exactly [-pole, trunc]; widening below the old pole fills
    // known zeros, shrinking the truncation forgets coefficients.  Raising
    // the truncation is an error.
    SuperSeries with_range(int pole_order, int trunc_order) const;
    SuperSeries with_weight(int weight) const;

    SuperSeries operator+(const SuperSeries& other) const;
    SuperSeries operator-(const SuperSeries& other) const;
    SuperSeries operator*(const SuperSeries& other) const;
    SuperSeries operator-() const;
    // Left multiplication by a ring element.
    SuperSeries scaled(const GrassmannElement& factor) const;

    // Evaluation at z = z0, theta = theta0 with z0 nilpotent (or zero) even
    // and theta0 odd; requires no pole and enough truncation to exhaust the
    // nilpotency of z0.
    GrassmannElement evaluate(const GrassmannElement& z0,
                              const GrassmannElement& theta0) const;

    bool operator==(const SuperSeries& other) const;
    bool operator!=(const SuperSeries& other) const { return !(*this == other); }

private:
    void check_compatible(const SuperSeries& other, const char* op) const;

    int weight_;
    int pole_;
    int trunc_;
    int num_generators_;
    std::vector<CoefficientPair> coeffs_;  // index i holds exponent -pole_ + i
};

// Multiplicative inverse; the leading coefficient a_v must have invertible
// body.
SuperSeries invert_series(const SuperSeries& f);

// D_theta = d/dtheta + theta d/dz, coefficientwise
// (a_k + b_k theta) z^k |-> b_k z^k + k a_k theta z^{k-1}.
SuperSeries d_theta(const SuperSeries& f);

// Plain d/dz.
SuperSeries derivative_z(const SuperSeries& f);

// res_p sigma = b_{-1} for a weight-1 section.
GrassmannElement residue(const SuperSeries& sigma);

// res of sigma = (z - z0 - theta theta0)^{-1} f [dz|dtheta]: evaluates
// (D_theta f)(z0 | theta0).  f must be a weight-0 function, regular at z0.
GrassmannElement residue_simple_pole(const SuperSeries& f,
                                     const GrassmannElement& z0,
                                     const GrassmannElement& theta0);

// The closed-one-form image of a weight-1 section: dtheta f + varpi D_theta f
// with coefficients written to the right of the forms.
struct OneFormLocal {
    SuperSeries dtheta_part;
    SuperSeries varpi_part;
};

OneFormLocal alpha_map(const SuperSeries& sigma);

// f(z(x,theta), zeta(x,theta)) re-expanded in the new chart; the change must
// fix the origin.
SuperSeries substitute(const SuperSeries& f, const CoordinateChange& change);

// Pullback of a weight-j section: substitute(f, c) * (D_theta zeta)^j.  The
// change must be superconformal.
SuperSeries transform_section(const SuperSeries& f, const CoordinateChange& change);

}  // namespace smf
