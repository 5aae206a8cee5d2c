#include "smf/superconformal.hpp"

#include <random>
#include <string>

#include "smf/detail/random.hpp"
#include "smf/errors.hpp"

namespace smf {

namespace {

// A component series of a coordinate change: weight 0, no pole, no theta
// part, all coefficients of one parity.
void check_component(const SuperSeries& s, Parity parity, const char* name,
                     int trunc, int num_generators) {
    if (s.weight() != 0) {
        fail(ErrorKind::MalformedInput, "coordinate_change",
             std::string(name) + " must have weight 0");
    }
    if (s.num_generators() != num_generators) {
        fail(ErrorKind::GeneratorMismatch, "coordinate_change",
             std::string(name) + " has a different generator count");
    }
    if (s.trunc_order() != trunc) {
        fail(ErrorKind::MalformedInput, "coordinate_change",
             std::string(name) + " does not share the common truncation order");
    }
    if (s.valuation() < 0) {
        fail(ErrorKind::MalformedInput, "coordinate_change",
             std::string(name) + " must be a power series (no pole)");
    }
    for (int k = 0; k <= s.trunc_order(); ++k) {
        const CoefficientPair pair = s.coeff(k);
        if (!pair.b.is_zero()) {
            fail(ErrorKind::MalformedInput, "coordinate_change",
                 std::string(name) + " must not depend on theta");
        }
        if (!pair.a.is_homogeneous(parity)) {
            fail(ErrorKind::MixedParity, "coordinate_change",
                 std::string(name) + " has a coefficient of the wrong parity");
        }
    }
}

bool vanishes(const SuperSeries& s) {
    return s.valuation() > s.trunc_order();
}

SuperSeries x_series(int trunc, int num_generators) {
    return SuperSeries::monomial_z(1, 0, trunc, num_generators);
}

}  // namespace

CoordinateChange::CoordinateChange(SuperSeries f_in, SuperSeries lambda_in,
                                   SuperSeries psi_in, SuperSeries g_in)
    : f(std::move(f_in)),
      lambda(std::move(lambda_in)),
      psi(std::move(psi_in)),
      g(std::move(g_in)) {
    validate();
}

CoordinateChange CoordinateChange::identity(int trunc_order, int num_generators) {
    SuperSeries zero = SuperSeries::zero(0, trunc_order, num_generators);
    return CoordinateChange(x_series(trunc_order, num_generators), zero, zero,
                            SuperSeries::constant(
                                GrassmannElement::scalar(1, num_generators),
                                trunc_order));
}

void CoordinateChange::validate() const {
    const int trunc = f.trunc_order();
    const int ngens = f.num_generators();
    check_component(f, Parity::Even, "f", trunc, ngens);
    check_component(g, Parity::Even, "g", trunc, ngens);
    check_component(lambda, Parity::Odd, "lambda", trunc, ngens);
    check_component(psi, Parity::Odd, "psi", trunc, ngens);
    if (trunc < 1) {
        fail(ErrorKind::MalformedInput, "coordinate_change",
             "truncation order must be at least 1");
    }
    if (!f.coeff(0).a.is_zero()) {
        fail(ErrorKind::MalformedInput, "coordinate_change",
             "f(0) must vanish (the change fixes the center)");
    }
    if (is_zero(f.coeff(1).a.body())) {
        fail(ErrorKind::MalformedInput, "coordinate_change",
             "f'(0) must have invertible body");
    }
}

SuperSeries CoordinateChange::z_series() const {
    SuperSeries z(0, 0, trunc_order(), num_generators());
    for (int k = 0; k <= trunc_order(); ++k) {
        z.set_coeff(k, f.coeff(k).a, lambda.coeff(k).a);
    }
    return z.canonicalized();
}

SuperSeries CoordinateChange::zeta_series() const {
    SuperSeries zeta(0, 0, trunc_order(), num_generators());
    for (int k = 0; k <= trunc_order(); ++k) {
        zeta.set_coeff(k, psi.coeff(k).a, g.coeff(k).a);
    }
    return zeta.canonicalized();
}

bool is_superconformal(const CoordinateChange& change) {
    const SuperSeries z = change.z_series();
    const SuperSeries zeta = change.zeta_series();
    const SuperSeries defect = d_theta(z) - zeta * d_theta(zeta);
    return vanishes(defect);
}

bool is_ramond_superconformal(const CoordinateChange& change) {
    const SuperSeries& f = change.f;
    const SuperSeries& g = change.g;
    const SuperSeries& lambda = change.lambda;
    const SuperSeries& psi = change.psi;
    const SuperSeries x = x_series(change.trunc_order(), change.num_generators());

    const SuperSeries first = lambda - f * g * psi;
    const SuperSeries second = f * g * g + lambda * psi * g - x * derivative_z(f) +
                               x * f * psi * derivative_z(psi);
    return vanishes(first) && vanishes(second);
}

std::pair<GrassmannElement, GrassmannElement> ramond_boundary_constraints(
    const CoordinateChange& change) {
    if (!is_ramond_superconformal(change)) {
        fail(ErrorKind::NotRamondSuperconformal, "ramond_boundary_constraints",
             "change does not satisfy the Ramond superconformal identities");
    }
    const GrassmannElement g0 = change.g.coeff(0).a;
    const GrassmannElement lambda1 = change.lambda.coeff(1).a;
    const GrassmannElement psi0 = change.psi.coeff(0).a;
    return {g0 * g0, lambda1 * psi0};
}

SuperMatrix quotient_change_matrix(const CoordinateChange& change) {
    if (!is_ramond_superconformal(change)) {
        fail(ErrorKind::NotRamondSuperconformal, "quotient_change_matrix",
             "change does not satisfy the Ramond superconformal identities");
    }
    const int ngens = change.num_generators();
    const GrassmannElement one = GrassmannElement::scalar(1, ngens);
    const GrassmannElement f1 = change.f.coeff(1).a;
    const GrassmannElement g0 = change.g.coeff(0).a;
    const GrassmannElement g1 = change.g.coeff(1).a;
    const GrassmannElement psi0 = change.psi.coeff(0).a;
    const GrassmannElement psi1 = change.psi.coeff(1).a;
    const GrassmannElement lambda1 = change.lambda.coeff(1).a;

    // Rows are the quotient basis {1, x | theta, x theta}; columns are the
    // images of {1, z | zeta, z zeta} modulo x^2.
    SuperMatrix m(Layout{2, 2}, Layout{2, 2}, ngens);
    m.set(0, 0, one);
    m.set(0, 2, psi0);
    m.set(1, 1, f1);
    m.set(1, 2, psi1);
    m.set(1, 3, f1 * psi0);
    m.set(2, 2, g0);
    m.set(3, 1, lambda1);
    m.set(3, 2, g1);
    m.set(3, 3, f1 * g0);
    return m;
}

SuperSeries d_star_theta(const SuperSeries& f) {
    SuperSeries result(f.weight(), f.pole_order(), f.trunc_order(),
                       f.num_generators());
    for (int k = -f.pole_order(); k <= f.trunc_order(); ++k) {
        const CoefficientPair pair = f.coeff(k);
        result.set_coeff(k, pair.b, pair.a * Rational(k));
    }
    return result.canonicalized();
}

CoordinateChange compose(const CoordinateChange& outer,
                         const CoordinateChange& inner) {
    const SuperSeries w = substitute(outer.z_series(), inner);
    const SuperSeries omega = substitute(outer.zeta_series(), inner);
    const int trunc = std::min(w.trunc_order(), omega.trunc_order());
    const int ngens = inner.num_generators();
    SuperSeries f(0, 0, trunc, ngens), lambda(0, 0, trunc, ngens),
        psi(0, 0, trunc, ngens), g(0, 0, trunc, ngens);
    for (int k = 0; k <= trunc; ++k) {
        const CoefficientPair wp = k >= w.lowest_exponent()
                                       ? w.coeff(k)
                                       : CoefficientPair{GrassmannElement(ngens),
                                                         GrassmannElement(ngens)};
        const CoefficientPair op = k >= omega.lowest_exponent()
                                       ? omega.coeff(k)
                                       : CoefficientPair{GrassmannElement(ngens),
                                                         GrassmannElement(ngens)};
        f.set_coeff(k, wp.a, GrassmannElement(ngens));
        lambda.set_coeff(k, wp.b, GrassmannElement(ngens));
        psi.set_coeff(k, op.a, GrassmannElement(ngens));
        g.set_coeff(k, op.b, GrassmannElement(ngens));
    }
    return CoordinateChange(std::move(f), std::move(lambda), std::move(psi),
                            std::move(g));
}

SuperSeries sqrt_series(const SuperSeries& h, bool positive_branch) {
    const int trunc = h.trunc_order();
    const int ngens = h.num_generators();
    if (h.pole_order() != 0) {
        fail(ErrorKind::PreconditionViolated, "sqrt_series",
             "square root of a series with a pole");
    }
    const GrassmannElement h0 = h.coeff(0).a;
    const Rational body = h0.body();
    if (sgn(body) <= 0) {
        fail(ErrorKind::PreconditionViolated, "sqrt_series",
             "constant term must have positive body");
    }
    mpz_class num = body.get_num(), den = body.get_den();
    if (mpz_perfect_square_p(num.get_mpz_t()) == 0 ||
        mpz_perfect_square_p(den.get_mpz_t()) == 0) {
        fail(ErrorKind::PreconditionViolated, "sqrt_series",
             "constant term body is not a rational square");
    }
    mpz_class sqrt_num, sqrt_den;
    mpz_sqrt(sqrt_num.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(sqrt_den.get_mpz_t(), den.get_mpz_t());
    Rational root(sqrt_num, sqrt_den);
    root.canonicalize();

    // sqrt(body (1 + m)) with m nilpotent: binomial series, terminating.
    const GrassmannElement m = h0 * Rational(Rational(1) / body) -
                               GrassmannElement::scalar(1, ngens);
    GrassmannElement unit_sqrt = GrassmannElement::scalar(1, ngens);
    GrassmannElement power = GrassmannElement::scalar(1, ngens);
    Rational binom(1);
    for (int k = 1; k <= ngens; ++k) {
        binom *= Rational(Rational(3, 2) - k) / k;  // binom(1/2, k)
        power = power * m;
        if (power.is_zero()) break;
        unit_sqrt = unit_sqrt + power * binom;
    }
    GrassmannElement g0 = unit_sqrt * root;
    if (!positive_branch) g0 = -g0;

    // Remaining coefficients: 2 g0 g_k = h_k - sum_{0<i<k} g_i g_{k-i}.
    std::vector<GrassmannElement> g(static_cast<std::size_t>(trunc) + 1,
                                    GrassmannElement(ngens));
    g[0] = g0;
    const GrassmannElement half_inv = (g0 * Rational(2)).inverse();
    for (int k = 1; k <= trunc; ++k) {
        GrassmannElement rhs = h.coeff(k).a;
        for (int i = 1; i < k; ++i) {
            rhs = rhs - g[static_cast<std::size_t>(i)] *
                            g[static_cast<std::size_t>(k - i)];
        }
        g[static_cast<std::size_t>(k)] = rhs * half_inv;
    }
    SuperSeries result(0, 0, trunc, ngens);
    for (int k = 0; k <= trunc; ++k) {
        result.set_coeff(k, g[static_cast<std::size_t>(k)], GrassmannElement(ngens));
    }
    return result;
}

namespace {

// Shared scaffolding for the two constructive generators: draws f with
// invertible f'(0) (a perfect square body when `square_lead`) and a random
// odd psi, at an internal truncation order padded to absorb the derivative
// and inversion losses.
struct GeneratorDraw {
    SuperSeries f;
    SuperSeries psi;
};

GeneratorDraw draw_f_psi(int trunc, int num_generators, std::mt19937_64& rng,
                         bool square_lead) {
    SuperSeries f(0, 0, trunc, num_generators);
    SuperSeries psi(0, 0, trunc, num_generators);
    const GrassmannElement zero(num_generators);
    for (int k = 0; k <= trunc; ++k) {
        GrassmannElement fk(num_generators);
        if (k == 1) {
            Rational lead = detail::draw_rational(rng, /*nonzero=*/true);
            if (square_lead) lead *= lead;
            fk = GrassmannElement::scalar(lead, num_generators) +
                 detail::draw_even_soul(rng, num_generators);
        } else if (k >= 2) {
            fk = GrassmannElement::scalar(detail::draw_rational(rng), num_generators) +
                 detail::draw_even_soul(rng, num_generators);
        }
        f.set_coeff(k, fk, zero);
        psi.set_coeff(k, detail::draw_odd_element(rng, num_generators), zero);
    }
    return {std::move(f), std::move(psi)};
}

SuperSeries shrink(const SuperSeries& s, int trunc) {
    return s.with_range(s.pole_order(), trunc);
}

}  // namespace

CoordinateChange random_superconformal_change(int trunc_order, int num_generators,
                                              std::uint64_t seed,
                                              bool positive_branch, bool centered) {
    std::mt19937_64 rng(seed);
    const int pad = trunc_order + 2;
    GeneratorDraw draw = draw_f_psi(pad, num_generators, rng, /*square_lead=*/true);
    if (centered) {
        draw.psi.set_coeff(0, GrassmannElement::zero(num_generators),
                           GrassmannElement::zero(num_generators));
    }

    // Superconformality amounts to g^2 = f' - psi psi' and lambda = psi g.
    const SuperSeries rhs = derivative_z(draw.f) - draw.psi * derivative_z(draw.psi);
    const SuperSeries g = sqrt_series(shrink(rhs, trunc_order), positive_branch);
    const SuperSeries lambda = shrink(draw.psi, trunc_order) * g;
    return CoordinateChange(shrink(draw.f, trunc_order), shrink(lambda, trunc_order),
                            shrink(draw.psi, trunc_order), g);
}

CoordinateChange random_ramond_superconformal_change(int trunc_order,
                                                     int num_generators,
                                                     std::uint64_t seed,
                                                     bool positive_branch) {
    std::mt19937_64 rng(seed);
    const int pad = trunc_order + 2;
    GeneratorDraw draw = draw_f_psi(pad, num_generators, rng, /*square_lead=*/false);
    const SuperSeries x = SuperSeries::monomial_z(1, 0, pad, num_generators);

    // g(x)^2 = (x / f) f' - x psi psi'; the constant term is exactly 1, so the
    // square root exists with g(0) = +-1.
    const SuperSeries rhs =
        x * invert_series(draw.f) * derivative_z(draw.f) -
        x * draw.psi * derivative_z(draw.psi);
    const SuperSeries g = sqrt_series(shrink(rhs, trunc_order), positive_branch);
    const SuperSeries lambda =
        shrink(draw.f, trunc_order) * g * shrink(draw.psi, trunc_order);
    return CoordinateChange(shrink(draw.f, trunc_order), shrink(lambda, trunc_order),
                            shrink(draw.psi, trunc_order), g);
}

}  // namespace smf
