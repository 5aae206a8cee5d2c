#include "smf/superseries.hpp"

#include <algorithm>
#include <string>

#include "smf/errors.hpp"
#include "smf/superconformal.hpp"

namespace smf {

namespace {

// (a1 + b1 theta)(a2 + b2 theta) with theta^2 = 0; moving theta past a2
// costs the grade involution.
CoefficientPair pair_mul(const CoefficientPair& lhs, const CoefficientPair& rhs) {
    return {lhs.a * rhs.a, lhs.a * rhs.b + lhs.b * rhs.a.grade_involution()};
}

CoefficientPair pair_scaled(const GrassmannElement& factor,
                            const CoefficientPair& pair) {
    return {factor * pair.a, factor * pair.b};
}

}  // namespace

SuperSeries::SuperSeries(int weight, int pole_order, int trunc_order,
                         int num_generators)
    : weight_(weight),
      pole_(pole_order),
      trunc_(trunc_order),
      num_generators_(num_generators) {
    if (pole_order < 0) {
        fail(ErrorKind::MalformedInput, "superseries", "pole_order must be >= 0");
    }
    if (trunc_order < -pole_order) {
        fail(ErrorKind::TruncationExceeded, "superseries",
             "empty coefficient range: trunc_order " + std::to_string(trunc_order) +
                 " below lowest exponent " + std::to_string(-pole_order));
    }
    coeffs_.assign(static_cast<std::size_t>(pole_ + trunc_ + 1),
                   {GrassmannElement::zero(num_generators),
                    GrassmannElement::zero(num_generators)});
}

SuperSeries SuperSeries::zero(int weight, int trunc_order, int num_generators) {
    return SuperSeries(weight, 0, trunc_order, num_generators);
}

SuperSeries SuperSeries::constant(const GrassmannElement& value, int trunc_order) {
    SuperSeries s(0, 0, trunc_order, value.num_generators());
    s.set_coeff(0, value, GrassmannElement::zero(value.num_generators()));
    return s;
}

SuperSeries SuperSeries::monomial_z(int k, int weight, int trunc_order,
                                    int num_generators) {
    SuperSeries s(weight, k < 0 ? -k : 0, trunc_order, num_generators);
    s.set_coeff(k, GrassmannElement::scalar(1, num_generators),
                GrassmannElement::zero(num_generators));
    return s;
}

SuperSeries SuperSeries::monomial_theta(int k, int weight, int trunc_order,
                                        int num_generators) {
    SuperSeries s(weight, k < 0 ? -k : 0, trunc_order, num_generators);
    s.set_coeff(k, GrassmannElement::zero(num_generators),
                GrassmannElement::scalar(1, num_generators));
    return s;
}

CoefficientPair SuperSeries::coeff(int k) const {
    if (k > trunc_) {
        fail(ErrorKind::TruncationExceeded, "superseries",
             "coefficient at exponent " + std::to_string(k) +
                 " beyond truncation order " + std::to_string(trunc_));
    }
    if (k < -pole_) {
        return {GrassmannElement::zero(num_generators_),
                GrassmannElement::zero(num_generators_)};
    }
    return coeffs_[static_cast<std::size_t>(k + pole_)];
}

void SuperSeries::set_coeff(int k, GrassmannElement a, GrassmannElement b) {
    if (k < -pole_ || k > trunc_) {
        fail(ErrorKind::MalformedInput, "superseries",
             "exponent " + std::to_string(k) + " outside stored range");
    }
    if (a.num_generators() != num_generators_ ||
        b.num_generators() != num_generators_) {
        fail(ErrorKind::GeneratorMismatch, "superseries",
             "coefficient generator count differs from the series context");
    }
    coeffs_[static_cast<std::size_t>(k + pole_)] = {std::move(a), std::move(b)};
}

int SuperSeries::valuation() const {
    for (int k = -pole_; k <= trunc_; ++k) {
        if (!coeffs_[static_cast<std::size_t>(k + pole_)].is_zero()) return k;
    }
    return trunc_ + 1;
}

SuperSeries SuperSeries::canonicalized() const {
    int new_pole = pole_;
    while (new_pole > 0 &&
           coeffs_[static_cast<std::size_t>(-new_pole + pole_)].is_zero()) {
        --new_pole;
    }
    if (new_pole == pole_) return *this;
    SuperSeries result(weight_, new_pole, trunc_, num_generators_);
    for (int k = -new_pole; k <= trunc_; ++k) {
        result.coeffs_[static_cast<std::size_t>(k + new_pole)] =
            coeffs_[static_cast<std::size_t>(k + pole_)];
    }
    return result;
}

SuperSeries SuperSeries::with_range(int pole_order, int trunc_order) const {
    if (trunc_order > trunc_) {
        fail(ErrorKind::TruncationExceeded, "superseries",
             "cannot raise truncation order from " + std::to_string(trunc_) +
                 " to " + std::to_string(trunc_order));
    }
    if (pole_order < pole_ && valuation() < -pole_order) {
        fail(ErrorKind::MalformedInput, "superseries",
             "cannot shrink pole below a nonzero coefficient");
    }
    SuperSeries result(weight_, pole_order, trunc_order, num_generators_);
    for (int k = -pole_order; k <= trunc_order; ++k) {
        if (k >= -pole_) {
            result.coeffs_[static_cast<std::size_t>(k + pole_order)] =
                coeffs_[static_cast<std::size_t>(k + pole_)];
        }
    }
    return result;
}

SuperSeries SuperSeries::with_weight(int weight) const {
    SuperSeries result = *this;
    result.weight_ = weight;
    return result;
}

void SuperSeries::check_compatible(const SuperSeries& other, const char* op) const {
    if (num_generators_ != other.num_generators_) {
        fail(ErrorKind::GeneratorMismatch, "superseries",
             std::string(op) + ": generator counts differ");
    }
}

SuperSeries SuperSeries::operator+(const SuperSeries& other) const {
    check_compatible(other, "add");
    if (weight_ != other.weight_) {
        fail(ErrorKind::WrongWeight, "superseries",
             "mixed-weight addition: " + std::to_string(weight_) + " vs " +
                 std::to_string(other.weight_));
    }
    const int pole = std::max(pole_, other.pole_);
    const int trunc = std::min(trunc_, other.trunc_);
    SuperSeries result(weight_, pole, trunc, num_generators_);
    for (int k = -pole; k <= trunc; ++k) {
        const CoefficientPair x = k >= -pole_ && k <= trunc_
                                      ? coeff(k)
                                      : CoefficientPair{GrassmannElement(num_generators_),
                                                        GrassmannElement(num_generators_)};
        const CoefficientPair y =
            k >= -other.pole_ && k <= other.trunc_
                ? other.coeff(k)
                : CoefficientPair{GrassmannElement(num_generators_),
                                  GrassmannElement(num_generators_)};
        result.set_coeff(k, x.a + y.a, x.b + y.b);
    }
    return result.canonicalized();
}

SuperSeries SuperSeries::operator-() const {
    SuperSeries result = *this;
    for (auto& pair : result.coeffs_) {
        pair.a = -pair.a;
        pair.b = -pair.b;
    }
    return result;
}

SuperSeries SuperSeries::operator-(const SuperSeries& other) const {
    return *this + (-other);
}

SuperSeries SuperSeries::operator*(const SuperSeries& other) const {
    check_compatible(other, "multiply");
    // Weight adds; truncation follows the pessimistic min-rule: the unknown
    // tail of each factor first pollutes exponent trunc+1 shifted by the
    // other factor's lowest exponent.
    const int pole = pole_ + other.pole_;
    const int trunc =
        std::min(trunc_ - other.pole_, other.trunc_ - pole_);
    if (trunc < -pole) {
        fail(ErrorKind::TruncationExceeded, "superseries",
             "product has no provable coefficients");
    }
    SuperSeries result(weight_ + other.weight_, pole, trunc, num_generators_);
    for (int i = -pole_; i <= trunc_; ++i) {
        const CoefficientPair& x = coeffs_[static_cast<std::size_t>(i + pole_)];
        if (x.is_zero()) continue;
        for (int j = -other.pole_; j <= other.trunc_; ++j) {
            const int k = i + j;
            if (k < -pole || k > trunc) continue;
            const CoefficientPair& y =
                other.coeffs_[static_cast<std::size_t>(j + other.pole_)];
            if (y.is_zero()) continue;
            const CoefficientPair term = pair_mul(x, y);
            CoefficientPair& target = result.coeffs_[static_cast<std::size_t>(k + pole)];
            target.a = target.a + term.a;
            target.b = target.b + term.b;
        }
    }
    return result.canonicalized();
}

SuperSeries SuperSeries::scaled(const GrassmannElement& factor) const {
    SuperSeries result = *this;
    for (auto& pair : result.coeffs_) {
        pair = pair_scaled(factor, pair);
    }
    return result.canonicalized();
}

GrassmannElement SuperSeries::evaluate(const GrassmannElement& z0,
                                       const GrassmannElement& theta0) const {
    if (!is_zero(z0.body())) {
        fail(ErrorKind::PreconditionViolated, "evaluate",
             "z0 must be nilpotent (zero body); analytic continuation is out of scope");
    }
    if (!z0.is_homogeneous(Parity::Even) || !theta0.is_homogeneous(Parity::Odd)) {
        fail(ErrorKind::PreconditionViolated, "evaluate",
             "evaluation point must be (even | odd)");
    }
    if (valuation() < 0) {
        fail(ErrorKind::PreconditionViolated, "evaluate",
             "series has a pole at the evaluation point");
    }
    // Powers of the nilpotent z0 die out; the truncation must outlast them.
    std::vector<GrassmannElement> powers;
    powers.push_back(GrassmannElement::scalar(1, num_generators_));
    while (!powers.back().is_zero()) {
        if (static_cast<int>(powers.size()) - 1 > trunc_) {
            fail(ErrorKind::TruncationExceeded, "evaluate",
                 "truncation order insufficient to exhaust the nilpotent shift");
        }
        powers.push_back(powers.back() * z0);
    }
    GrassmannElement value(num_generators_);
    const int top = std::min<int>(trunc_, static_cast<int>(powers.size()) - 1);
    for (int k = 0; k <= top; ++k) {
        const CoefficientPair pair = coeff(k);
        value = value + (pair.a + pair.b * theta0) * powers[static_cast<std::size_t>(k)];
    }
    return value;
}

bool SuperSeries::operator==(const SuperSeries& other) const {
    return weight_ == other.weight_ && pole_ == other.pole_ &&
           trunc_ == other.trunc_ && num_generators_ == other.num_generators_ &&
           coeffs_ == other.coeffs_;
}

namespace {

// Inverse of a theta-free series by triangular solving; the leading
// coefficient must have invertible body.
SuperSeries invert_plain(const SuperSeries& f) {
    int v = f.lowest_exponent() - 1;
    for (int k = f.lowest_exponent(); k <= f.trunc_order(); ++k) {
        if (!f.coeff(k).a.is_zero()) {
            v = k;
            break;
        }
    }
    if (v < f.lowest_exponent()) {
        fail(ErrorKind::NonInvertibleLeading, "invert_series",
             "series is zero on its known range");
    }
    const GrassmannElement lead = f.coeff(v).a;
    if (is_zero(lead.body())) {
        fail(ErrorKind::NonInvertibleLeading, "invert_series",
             "leading coefficient has zero body");
    }
    const GrassmannElement lead_inv = lead.inverse();

    const int order = f.trunc_order() - v;
    const int ngens = f.num_generators();
    std::vector<GrassmannElement> x(static_cast<std::size_t>(order) + 1,
                                    GrassmannElement(ngens));
    x[0] = lead_inv;
    for (int k = 1; k <= order; ++k) {
        GrassmannElement acc(ngens);
        for (int i = 1; i <= k; ++i) {
            acc = acc + f.coeff(v + i).a * x[static_cast<std::size_t>(k - i)];
        }
        x[static_cast<std::size_t>(k)] = lead_inv * (-acc);
    }

    const int pole = v > 0 ? v : 0;
    SuperSeries result(-f.weight(), pole, f.trunc_order() - 2 * v, ngens);
    for (int k = 0; k <= order; ++k) {
        result.set_coeff(k - v, x[static_cast<std::size_t>(k)],
                         GrassmannElement(ngens));
    }
    return result.canonicalized();
}

// Access in invert_plain goes through coeff().a only.
GrassmannElement coeff_a(const SuperSeries& f, int k) { return f.coeff(k).a; }

}  // namespace

SuperSeries invert_series(const SuperSeries& f) {
    // Split f = A + B theta.  Since theta^2 = 0, the inverse is
    // (A^{-1}, -A^{-1} B sigma(A^{-1})) with sigma the coefficientwise grade
    // involution; only the theta-free part must be invertible.
    const int ngens = f.num_generators();
    SuperSeries a_part(0, f.pole_order(), f.trunc_order(), ngens);
    SuperSeries b_part(0, f.pole_order(), f.trunc_order(), ngens);
    for (int k = f.lowest_exponent(); k <= f.trunc_order(); ++k) {
        const CoefficientPair pair = f.coeff(k);
        a_part.set_coeff(k, pair.a, GrassmannElement(ngens));
        b_part.set_coeff(k, pair.b, GrassmannElement(ngens));
    }
    a_part = a_part.canonicalized();
    b_part = b_part.canonicalized();

    const SuperSeries a_inv = invert_plain(a_part);
    if (b_part.valuation() > b_part.trunc_order()) {
        return a_inv.with_weight(-f.weight());
    }
    SuperSeries a_inv_twisted(0, a_inv.pole_order(), a_inv.trunc_order(), ngens);
    for (int k = a_inv.lowest_exponent(); k <= a_inv.trunc_order(); ++k) {
        a_inv_twisted.set_coeff(k, coeff_a(a_inv, k).grade_involution(),
                                GrassmannElement(ngens));
    }
    const SuperSeries theta_coeff = -(a_inv * b_part * a_inv_twisted);

    const int pole = std::max(a_inv.pole_order(), theta_coeff.pole_order());
    const int trunc = std::min(a_inv.trunc_order(), theta_coeff.trunc_order());
    if (trunc < -pole) {
        fail(ErrorKind::TruncationExceeded, "invert_series",
             "inverse has no provable coefficients");
    }
    SuperSeries result(-f.weight(), pole, trunc, ngens);
    for (int k = -pole; k <= trunc; ++k) {
        result.set_coeff(k,
                         k >= a_inv.lowest_exponent() ? coeff_a(a_inv, k)
                                                      : GrassmannElement(ngens),
                         k >= theta_coeff.lowest_exponent()
                             ? coeff_a(theta_coeff, k)
                             : GrassmannElement(ngens));
    }
    return result.canonicalized();
}

SuperSeries d_theta(const SuperSeries& f) {
    const int pole = f.pole_order() + 1;
    const int trunc = f.trunc_order() - 1;
    SuperSeries result(f.weight(), pole, trunc, f.num_generators());
    for (int k = -pole; k <= trunc; ++k) {
        const GrassmannElement a_part =
            k >= -f.pole_order() ? f.coeff(k).b : GrassmannElement(f.num_generators());
        GrassmannElement b_part = f.coeff(k + 1).a * Rational(k + 1);
        result.set_coeff(k, a_part, std::move(b_part));
    }
    return result.canonicalized();
}

SuperSeries derivative_z(const SuperSeries& f) {
    const int pole = f.pole_order() + 1;
    const int trunc = f.trunc_order() - 1;
    SuperSeries result(f.weight(), pole, trunc, f.num_generators());
    for (int k = -pole; k <= trunc; ++k) {
        const CoefficientPair next = f.coeff(k + 1);
        result.set_coeff(k, next.a * Rational(k + 1), next.b * Rational(k + 1));
    }
    return result.canonicalized();
}

GrassmannElement residue(const SuperSeries& sigma) {
    if (sigma.weight() != 1) {
        fail(ErrorKind::WrongWeight, "residue",
             "residues are defined for weight-1 sections, got weight " +
                 std::to_string(sigma.weight()));
    }
    if (sigma.trunc_order() < -1) {
        fail(ErrorKind::TruncationExceeded, "residue",
             "truncation order does not reach exponent -1");
    }
    return sigma.coeff(-1).b;
}

GrassmannElement residue_simple_pole(const SuperSeries& f,
                                     const GrassmannElement& z0,
                                     const GrassmannElement& theta0) {
    if (f.weight() != 0) {
        fail(ErrorKind::WrongWeight, "residue_simple_pole",
             "expected a weight-0 function");
    }
    return d_theta(f).evaluate(z0, theta0);
}

OneFormLocal alpha_map(const SuperSeries& sigma) {
    if (sigma.weight() != 1) {
        fail(ErrorKind::WrongWeight, "alpha",
             "alpha applies to weight-1 sections, got weight " +
                 std::to_string(sigma.weight()));
    }
    SuperSeries varpi_part = d_theta(sigma).with_weight(0);
    // Both parts share the same pole/truncation window.
    const int pole = std::max(sigma.pole_order(), varpi_part.pole_order());
    const int trunc = std::min(sigma.trunc_order(), varpi_part.trunc_order());
    SuperSeries dtheta_part = sigma.with_weight(0).with_range(pole, trunc);
    varpi_part = varpi_part.with_range(pole, trunc);
    return {std::move(dtheta_part), std::move(varpi_part)};
}

SuperSeries substitute(const SuperSeries& f, const CoordinateChange& change) {
    change.validate();
    const int ngens = f.num_generators();
    if (ngens != change.num_generators()) {
        fail(ErrorKind::GeneratorMismatch, "substitute",
             "series and coordinate change have different generator counts");
    }
    const SuperSeries z_of_x = change.z_series();
    const SuperSeries zeta_of_x = change.zeta_series();

    // Powers of z(x, theta), negative ones through the inverse.
    const int lo = f.lowest_exponent();
    const int hi = f.trunc_order();
    const SuperSeries z_inv = lo < 0 ? invert_series(z_of_x)
                                     : SuperSeries::zero(0, change.trunc_order(), ngens);

    SuperSeries result = SuperSeries::zero(f.weight(), change.trunc_order(), ngens);
    SuperSeries power = SuperSeries::constant(GrassmannElement::scalar(1, ngens),
                                              change.trunc_order());
    if (lo < 0) {
        for (int k = 0; k < -lo; ++k) power = power * z_inv;
    } else {
        for (int k = 0; k < lo; ++k) power = power * z_of_x;
    }
    bool first = true;
    for (int k = lo; k <= hi; ++k) {
        if (!first) power = power * z_of_x;
        first = false;
        const CoefficientPair pair = f.coeff(k);
        if (pair.is_zero()) continue;
        // (a_k + b_k zeta) z^k pulled back.
        SuperSeries term = power.scaled(pair.a);
        if (!pair.b.is_zero()) {
            term = term + (zeta_of_x.scaled(pair.b) * power);
        }
        result = result + term.with_weight(f.weight());
    }
    // The unknown tail of f starts at z^{trunc+1}.  Writing z(x, theta) as
    // E(x) + O(x) theta with E of valuation 1, z^k = E^k + k E^{k-1} O theta,
    // so the tail first pollutes exponent trunc + min(1, val(O)).
    int lambda_val = change.trunc_order() + 1;
    for (int k = 0; k <= change.trunc_order(); ++k) {
        if (!change.lambda.coeff(k).a.is_zero()) {
            lambda_val = k;
            break;
        }
    }
    const int slack = std::min(1, lambda_val);
    const int trunc = std::min(result.trunc_order(), f.trunc_order() - 1 + slack);
    if (trunc < -result.pole_order()) {
        fail(ErrorKind::TruncationExceeded, "substitute",
             "result has no provable coefficients");
    }
    return result.with_range(result.pole_order(), trunc).canonicalized();
}

SuperSeries transform_section(const SuperSeries& f, const CoordinateChange& change) {
    if (!is_superconformal(change)) {
        fail(ErrorKind::NotSuperconformal, "transform_section",
             "coordinate change is not superconformal");
    }
    SuperSeries pulled = substitute(f, change);
    const int j = f.weight();
    if (j == 0) return pulled;
    SuperSeries factor = d_theta(change.zeta_series());
    if (j < 0) factor = invert_series(factor).with_weight(0);
    SuperSeries factor_power =
        SuperSeries::constant(GrassmannElement::scalar(1, f.num_generators()),
                              factor.trunc_order());
    const int count = j < 0 ? -j : j;
    for (int k = 0; k < count; ++k) factor_power = factor_power * factor;
    return (pulled * factor_power.with_weight(0)).with_weight(j).canonicalized();
}

}  // namespace smf
