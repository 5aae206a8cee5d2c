#include <doctest.h>

#include <random>

#include "smf/errors.hpp"
#include "smf/superconformal.hpp"
#include "smf/superseries.hpp"
#include "support/random_elements.hpp"

using smf::CoefficientPair;
using smf::CoordinateChange;
using smf::GrassmannElement;
using smf::Parity;
using smf::Rational;
using smf::SuperSeries;

namespace {

constexpr int kGens = 4;

GrassmannElement one() { return GrassmannElement::scalar(1, kGens); }
GrassmannElement zero() { return GrassmannElement::zero(kGens); }
GrassmannElement gen(int i) { return GrassmannElement::generator(i, kGens); }

bool values_match(const SuperSeries& a, const SuperSeries& b) {
    const int lo = std::min(a.lowest_exponent(), b.lowest_exponent());
    const int hi = std::min(a.trunc_order(), b.trunc_order());
    for (int k = lo; k <= hi; ++k) {
        if (!(a.coeff(k) == b.coeff(k))) return false;
    }
    return true;
}

SuperSeries random_series(std::mt19937_64& rng, int weight, int pole, int trunc,
                          int ngens) {
    SuperSeries s(weight, pole, trunc, ngens);
    for (int k = -pole; k <= trunc; ++k) {
        s.set_coeff(k, smf::testing::draw_element(rng, ngens, 2),
                    smf::testing::draw_element(rng, ngens, 2));
    }
    return s.canonicalized();
}

SuperSeries parity_homogeneous_series(std::mt19937_64& rng, Parity parity, int pole,
                                      int trunc, int ngens) {
    SuperSeries s(0, pole, trunc, ngens);
    for (int k = -pole; k <= trunc; ++k) {
        s.set_coeff(k, smf::testing::draw_homogeneous(rng, ngens, parity, 2),
                    smf::testing::draw_homogeneous(rng, ngens, smf::opposite(parity), 2));
    }
    return s.canonicalized();
}

}  // namespace

TEST_CASE("(1 + theta)(1 - theta) = 1") {
    SuperSeries plus(0, 0, 4, kGens), minus(0, 0, 4, kGens);
    plus.set_coeff(0, one(), one());
    minus.set_coeff(0, one(), -one());
    const SuperSeries product = plus * minus;
    CHECK(product.coeff(0) == CoefficientPair{one(), zero()});
    for (int k = 1; k <= product.trunc_order(); ++k) {
        CHECK(product.coeff(k).is_zero());
    }
}

TEST_CASE("geometric series inverse") {
    SuperSeries f(0, 0, 5, kGens);
    f.set_coeff(0, one(), zero());
    f.set_coeff(1, -one(), zero());  // 1 - z
    const SuperSeries inv = smf::invert_series(f);
    for (int k = 0; k <= inv.trunc_order(); ++k) {
        CHECK(inv.coeff(k) == CoefficientPair{one(), zero()});
    }
    CHECK(inv.trunc_order() == 5);
}

TEST_CASE("pole shuffling: (z^-1 theta) * z = theta") {
    const SuperSeries pole_theta = SuperSeries::monomial_theta(-1, 0, 4, kGens);
    const SuperSeries z = SuperSeries::monomial_z(1, 0, 4, kGens);
    const SuperSeries product = pole_theta * z;
    CHECK(product.coeff(0) == CoefficientPair{zero(), one()});
    CHECK(product.pole_order() == 0);
}

TEST_CASE("series inversion round trip") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 20; ++trial) {
        SuperSeries f = random_series(rng, 0, 1, 6, 6);
        SuperSeries lead(0, 1, 6, 6);
        lead.set_coeff(-1, smf::testing::draw_even_unit(rng, 6),
                       smf::testing::draw_element(rng, 6, 1));
        f = f + lead;
        if (smf::is_zero(f.coeff(f.valuation()).a.body())) continue;
        const SuperSeries inv = smf::invert_series(f);
        const SuperSeries product = f * inv;
        CHECK(product.coeff(0).a == GrassmannElement::scalar(1, 6));
        CHECK(product.coeff(0).b.is_zero());
        for (int k = product.lowest_exponent(); k <= product.trunc_order(); ++k) {
            if (k == 0) continue;
            CHECK(product.coeff(k).is_zero());
        }
    }
}

TEST_CASE("invert_series rejects zero-body leading pair") {
    const SuperSeries theta = SuperSeries::monomial_theta(0, 0, 4, kGens);
    CHECK_THROWS_AS((void)smf::invert_series(theta), smf::Error);
}

TEST_CASE("d_theta basics") {
    const SuperSeries theta = SuperSeries::monomial_theta(0, 0, 4, kGens);
    const SuperSeries d1 = smf::d_theta(theta);
    CHECK(d1.coeff(0) == CoefficientPair{one(), zero()});

    const SuperSeries z = SuperSeries::monomial_z(1, 0, 4, kGens);
    const SuperSeries dz = smf::d_theta(z);
    CHECK(dz.coeff(0) == CoefficientPair{zero(), one()});
    CHECK(dz.coeff(1).is_zero());
}

TEST_CASE("d_theta squared is d_z") {
    std::mt19937_64 rng(123);
    for (int trial = 0; trial < 25; ++trial) {
        const SuperSeries f = random_series(rng, 0, 2, 6, 6);
        const SuperSeries twice = smf::d_theta(smf::d_theta(f));
        // Independent coefficient-shift oracle for d/dz.
        SuperSeries shifted(0, f.pole_order() + 1, f.trunc_order() - 1, 6);
        for (int k = -f.pole_order() - 1; k < f.trunc_order(); ++k) {
            const CoefficientPair next = f.coeff(k + 1);
            shifted.set_coeff(k, next.a * Rational(k + 1), next.b * Rational(k + 1));
        }
        CHECK(values_match(twice, shifted.canonicalized()));
    }
}

TEST_CASE("d_theta is an odd derivation") {
    // With coefficients written to the left of theta, the sign sits on the
    // homogeneous right factor: D(f g) = f D(g) + (-1)^{|g|} D(f) g.
    std::mt19937_64 rng(321);
    for (int trial = 0; trial < 20; ++trial) {
        const Parity pg = trial % 2 == 0 ? Parity::Even : Parity::Odd;
        const SuperSeries f = random_series(rng, 0, 1, 5, 6);
        const SuperSeries g = parity_homogeneous_series(rng, pg, 1, 5, 6);
        const SuperSeries lhs = smf::d_theta(f * g);
        SuperSeries rhs = f * smf::d_theta(g);
        SuperSeries twisted = smf::d_theta(f) * g;
        if (pg == Parity::Odd) {
            rhs = rhs - twisted;
        } else {
            rhs = rhs + twisted;
        }
        CHECK(values_match(lhs, rhs));
    }
}

TEST_CASE("residue reads b_{-1}") {
    SuperSeries sigma = SuperSeries::monomial_theta(-1, 1, 4, kGens);
    CHECK(smf::residue(sigma) == one());

    const SuperSeries holomorphic = SuperSeries::monomial_z(2, 1, 4, kGens);
    CHECK(smf::residue(holomorphic).is_zero());

    const GrassmannElement c = gen(0) * gen(1);
    SuperSeries mixed(1, 1, 4, kGens);
    mixed.set_coeff(-1, one(), c);
    CHECK(smf::residue(mixed) == c);

    const SuperSeries wrong_weight = SuperSeries::monomial_theta(-1, 0, 4, kGens);
    CHECK_THROWS_AS((void)smf::residue(wrong_weight), smf::Error);
}

TEST_CASE("residue_simple_pole evaluates D_theta f at the point") {
    // Constant pair: res = c1 at any admissible point.
    std::mt19937_64 rng(5);
    const GrassmannElement c0 = smf::testing::draw_even_unit(rng, kGens);
    SuperSeries constant(0, 0, 4, kGens);
    constant.set_coeff(0, c0, gen(1));
    const GrassmannElement z0 = gen(0) * gen(1);
    const GrassmannElement theta0 = gen(2);
    CHECK(smf::residue_simple_pole(constant, zero(), zero()) == gen(1));
    CHECK(smf::residue_simple_pole(constant, z0, theta0) == gen(1));

    // f = z at the origin.
    const SuperSeries z = SuperSeries::monomial_z(1, 0, 4, kGens);
    CHECK(smf::residue_simple_pole(z, zero(), zero()).is_zero());

    // f = theta z: res = z0.
    const SuperSeries theta_z = SuperSeries::monomial_theta(1, 0, 4, kGens);
    CHECK(smf::residue_simple_pole(theta_z, z0, theta0) == z0);
}

TEST_CASE("residue_simple_pole rejects bad evaluation points") {
    const SuperSeries z = SuperSeries::monomial_z(1, 0, 4, kGens);
    CHECK_THROWS_AS(
        (void)smf::residue_simple_pole(z, GrassmannElement::scalar(1, kGens), zero()),
        smf::Error);
    const SuperSeries pole = SuperSeries::monomial_z(-1, 0, 4, kGens);
    CHECK_THROWS_AS((void)smf::residue_simple_pole(pole, zero(), zero()), smf::Error);
}

TEST_CASE("alpha splits a section into its two form components") {
    const SuperSeries sigma_theta = SuperSeries::monomial_theta(0, 1, 4, kGens);
    const smf::OneFormLocal form = smf::alpha_map(sigma_theta);
    CHECK(form.dtheta_part.coeff(0) == CoefficientPair{zero(), one()});
    CHECK(form.varpi_part.coeff(0) == CoefficientPair{one(), zero()});

    const SuperSeries sigma_one = SuperSeries::constant(one(), 4).with_weight(1);
    const smf::OneFormLocal constant_form = smf::alpha_map(sigma_one);
    CHECK(constant_form.dtheta_part.coeff(0) == CoefficientPair{one(), zero()});
    for (int k = constant_form.varpi_part.lowest_exponent();
         k <= constant_form.varpi_part.trunc_order(); ++k) {
        CHECK(constant_form.varpi_part.coeff(k).is_zero());
    }

    const SuperSeries sigma_z = SuperSeries::monomial_z(1, 1, 4, kGens);
    const smf::OneFormLocal z_form = smf::alpha_map(sigma_z);
    CHECK(z_form.dtheta_part.coeff(1) == CoefficientPair{one(), zero()});
    CHECK(z_form.varpi_part.coeff(0) == CoefficientPair{zero(), one()});
    CHECK(z_form.dtheta_part.pole_order() == z_form.varpi_part.pole_order());
    CHECK(z_form.dtheta_part.trunc_order() == z_form.varpi_part.trunc_order());
}

TEST_CASE("substitute: identity change") {
    const CoordinateChange id = CoordinateChange::identity(6, kGens);
    std::mt19937_64 rng(42);
    const SuperSeries f = random_series(rng, 0, 2, 4, kGens);
    CHECK(values_match(smf::substitute(f, id), f));
}

TEST_CASE("substitute: linear scaling and geometric expansion") {
    // z = 2x: f = z maps to 2x.
    SuperSeries f2(0, 0, 6, kGens);
    f2.set_coeff(1, one() * Rational(2), zero());
    const CoordinateChange scale(f2, SuperSeries::zero(0, 6, kGens),
                                 SuperSeries::zero(0, 6, kGens),
                                 SuperSeries::constant(one(), 6));
    const SuperSeries z = SuperSeries::monomial_z(1, 0, 6, kGens);
    const SuperSeries pulled = smf::substitute(z, scale);
    CHECK(pulled.coeff(1) == CoefficientPair{one() * Rational(2), zero()});

    // f = z^{-1} with z = x(1 + x): geometric-series oracle.
    SuperSeries fx(0, 0, 6, kGens);
    fx.set_coeff(1, one(), zero());
    fx.set_coeff(2, one(), zero());
    const CoordinateChange shift(fx, SuperSeries::zero(0, 6, kGens),
                                 SuperSeries::zero(0, 6, kGens),
                                 SuperSeries::constant(one(), 6));
    const SuperSeries z_inv = SuperSeries::monomial_z(-1, 0, 6, kGens);
    const SuperSeries expanded = smf::substitute(z_inv, shift);
    // x^{-1} (1 - x + x^2 - ...) by hand.
    Rational sign(1);
    for (int k = -1; k <= expanded.trunc_order(); ++k) {
        CHECK(expanded.coeff(k).a == one() * sign);
        CHECK(expanded.coeff(k).b.is_zero());
        sign = -sign;
    }
}

TEST_CASE("substitute respects products") {
    std::mt19937_64 rng(9001);
    for (int trial = 0; trial < 10; ++trial) {
        const CoordinateChange change =
            smf::random_superconformal_change(8, 6, 1000 + trial);
        const SuperSeries f = random_series(rng, 0, 1, 5, 6);
        const SuperSeries g = random_series(rng, 0, 1, 5, 6);
        const SuperSeries lhs = smf::substitute(f * g, change);
        const SuperSeries rhs = smf::substitute(f, change) * smf::substitute(g, change);
        CHECK(values_match(lhs, rhs));
    }
}

TEST_CASE("transform_section: identity and scaling") {
    const CoordinateChange id = CoordinateChange::identity(6, kGens);
    std::mt19937_64 rng(7);
    const SuperSeries sigma = random_series(rng, 1, 2, 4, kGens);
    CHECK(values_match(smf::transform_section(sigma, id), sigma));

    // z = c^2 x, zeta = c theta: a constant section of omega picks up c.
    const Rational c(3, 2);
    SuperSeries f2(0, 0, 6, kGens);
    f2.set_coeff(1, one() * (c * c), zero());
    const CoordinateChange scale(f2, SuperSeries::zero(0, 6, kGens),
                                 SuperSeries::zero(0, 6, kGens),
                                 SuperSeries::constant(one() * c, 6));
    REQUIRE(smf::is_superconformal(scale));
    const SuperSeries sigma_one = SuperSeries::constant(one(), 6).with_weight(1);
    const SuperSeries pulled = smf::transform_section(sigma_one, scale);
    CHECK(pulled.coeff(0) == CoefficientPair{one() * c, zero()});
    CHECK(pulled.weight() == 1);
}

TEST_CASE("transform_section requires a superconformal change") {
    SuperSeries fx(0, 0, 6, kGens);
    fx.set_coeff(1, one(), zero());
    const CoordinateChange bad(fx, SuperSeries::zero(0, 6, kGens),
                               SuperSeries::zero(0, 6, kGens),
                               SuperSeries::constant(one() * Rational(2), 6));
    const SuperSeries sigma = SuperSeries::constant(one(), 6).with_weight(1);
    CHECK_THROWS_AS((void)smf::transform_section(sigma, bad), smf::Error);
}

TEST_CASE("residues are invariant under superconformal changes") {
    std::mt19937_64 rng(31337);
    for (int trial = 0; trial < 25; ++trial) {
        const CoordinateChange change =
            smf::random_superconformal_change(9, 6, 500 + trial, trial % 2 == 0);
        const SuperSeries sigma = random_series(rng, 1, 3, 5, 6);
        const GrassmannElement direct = smf::residue(sigma);
        const GrassmannElement pulled = smf::residue(smf::transform_section(sigma, change));
        CHECK(direct == pulled);
    }
}

TEST_CASE("mixed-weight addition is rejected") {
    const SuperSeries a = SuperSeries::constant(one(), 4);
    const SuperSeries b = SuperSeries::constant(one(), 4).with_weight(1);
    CHECK_THROWS_AS((void)(a + b), smf::Error);
}
