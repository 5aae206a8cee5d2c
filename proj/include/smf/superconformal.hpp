#pragma once

#include <cstdint>
#include <utility>

#include "smf/superseries.hpp"
#include "smf/supermatrix.hpp"

namespace smf {

// A coordinate change z = f(x) + lambda(x) theta, zeta = psi(x) + g(x) theta.
// f and g have even coefficients, lambda and psi odd ones; all four are plain
// power series (weight 0, no pole, no theta part) sharing one truncation
// order.  A genuine chart change fixes the center: f(0) = 0 and f'(0) has
// invertible body.
struct CoordinateChange {
    SuperSeries f;
    SuperSeries lambda;
    SuperSeries psi;
    SuperSeries g;

    CoordinateChange(SuperSeries f_in, SuperSeries lambda_in, SuperSeries psi_in,
                     SuperSeries g_in);

    static CoordinateChange identity(int trunc_order, int num_generators);

    int trunc_order() const { return f.trunc_order(); }
    int num_generators() const { return f.num_generators(); }

    // Enforces the type invariants; throws on violation.
    void validate() const;

    // z and zeta as SuperSeries in (x | theta).
    SuperSeries z_series() const;
    SuperSeries zeta_series() const;
};

// Unpunctured superconformality: D_theta z - zeta D_theta zeta vanishes to
// the truncation order (D_zeta is then an O-multiple of D_theta).
bool is_superconformal(const CoordinateChange& change);

// Ramond-punctured superconformality: the two identities
//   lambda - f g psi = 0
//   f g^2 + lambda psi g = x f' - x f psi psi'
// hold to the truncation order.
bool is_ramond_superconformal(const CoordinateChange& change);

// Returns (g(0)^2, lambda'(0) psi(0)); for a Ramond-superconformal change
// these are exactly (1, 0).
std::pair<GrassmannElement, GrassmannElement> ramond_boundary_constraints(
    const CoordinateChange& change);

// The 4x4 even supermatrix expressing {1, z | zeta, z zeta} in the basis
// {1, x | theta, x theta} of the quotient by (x^2); its Berezinian is 1 for
// every Ramond-superconformal change.
SuperMatrix quotient_change_matrix(const CoordinateChange& change);

// D*_theta = d/dtheta + x theta d/dx, coefficientwise
// (a_k + b_k theta) x^k |-> b_k x^k + k a_k theta x^k.
SuperSeries d_star_theta(const SuperSeries& f);

// change2 applied after change1; the result maps the innermost chart
// directly to the outermost one.
CoordinateChange compose(const CoordinateChange& outer,
                         const CoordinateChange& inner);

// Square root of an even series whose constant term has an exactly square
// rational body; `positive_branch` selects the sign of the constant term.
SuperSeries sqrt_series(const SuperSeries& h, bool positive_branch);

// Constructive generators.  Both draw f with f(0) = 0 and invertible f'(0)
// and random odd psi, then solve the defining equations for g (by series
// square root) and lambda, so every generated change satisfies them exactly.
// `centered` forces psi(0) = 0, the subclass fixing the point (0|0) exactly;
// only that subclass is closed under composition in the strict f(0) = 0
// sense.
CoordinateChange random_superconformal_change(int trunc_order, int num_generators,
                                              std::uint64_t seed,
                                              bool positive_branch = true,
                                              bool centered = false);
CoordinateChange random_ramond_superconformal_change(int trunc_order,
                                                     int num_generators,
                                                     std::uint64_t seed,
                                                     bool positive_branch = true);

}  // namespace smf
