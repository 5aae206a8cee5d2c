#include "smf/grassmann.hpp"

#include <bit>
#include <string>

#include "smf/errors.hpp"

namespace smf {

namespace {

void check_generator_count(int num_generators) {
    if (num_generators < 0 || num_generators > GrassmannElement::kMaxGenerators) {
        fail(ErrorKind::MalformedInput, "grassmann",
             "num_generators must lie in [0, " +
                 std::to_string(GrassmannElement::kMaxGenerators) + "], got " +
                 std::to_string(num_generators));
    }
}

}  // namespace

int bits_above(std::uint64_t mask, int bit) {
    if (bit >= 63) return 0;
    return std::popcount(mask >> (bit + 1));
}

int merge_sign(std::uint64_t left, std::uint64_t right) {
    if (left & right) return 0;
    // Each generator of `right` must move past the generators of `left` that
    // sit above it; every pass contributes one transposition.
    int transpositions = 0;
    std::uint64_t r = right;
    while (r) {
        const int bit = std::countr_zero(r);
        transpositions += bits_above(left, bit);
        r &= r - 1;
    }
    return (transpositions % 2 == 0) ? 1 : -1;
}

GrassmannElement::GrassmannElement(int num_generators)
    : num_generators_(num_generators) {
    check_generator_count(num_generators);
}

GrassmannElement GrassmannElement::zero(int num_generators) {
    return GrassmannElement(num_generators);
}

GrassmannElement GrassmannElement::scalar(const Rational& value, int num_generators) {
    GrassmannElement result(num_generators);
    result.insert_term(0, value);
    return result;
}

GrassmannElement GrassmannElement::generator(int index, int num_generators) {
    check_generator_count(num_generators);
    if (index < 0 || index >= num_generators) {
        fail(ErrorKind::MalformedInput, "grassmann",
             "generator index " + std::to_string(index) + " out of range for " +
                 std::to_string(num_generators) + " generators");
    }
    GrassmannElement result(num_generators);
    result.insert_term(std::uint64_t{1} << index, 1);
    return result;
}

GrassmannElement GrassmannElement::monomial(const Rational& coeff,
                                            const std::vector<int>& indices,
                                            int num_generators) {
    check_generator_count(num_generators);
    std::uint64_t mask = 0;
    int previous = -1;
    for (int index : indices) {
        if (index <= previous) {
            fail(ErrorKind::MalformedInput, "grassmann",
                 "multi-index must be strictly increasing");
        }
        if (index < 0 || index >= num_generators) {
            fail(ErrorKind::MalformedInput, "grassmann",
                 "generator index " + std::to_string(index) + " out of range for " +
                     std::to_string(num_generators) + " generators");
        }
        mask |= std::uint64_t{1} << index;
        previous = index;
    }
    GrassmannElement result(num_generators);
    result.insert_term(mask, coeff);
    return result;
}

Rational GrassmannElement::body() const {
    auto it = terms_.find(0);
    return it == terms_.end() ? Rational(0) : it->second;
}

GrassmannElement GrassmannElement::soul() const {
    GrassmannElement result(num_generators_);
    for (const auto& [mask, coeff] : terms_) {
        if (mask != 0) result.terms_.emplace(mask, coeff);
    }
    return result;
}

Parity GrassmannElement::parity() const {
    if (terms_.empty()) return Parity::Even;
    const int first = std::popcount(terms_.begin()->first) % 2;
    for (const auto& [mask, coeff] : terms_) {
        if (std::popcount(mask) % 2 != first) {
            fail(ErrorKind::MixedParity, "grassmann",
                 "element is not parity-homogeneous");
        }
    }
    return first == 0 ? Parity::Even : Parity::Odd;
}

bool GrassmannElement::is_homogeneous(Parity p) const {
    const int want = p == Parity::Even ? 0 : 1;
    for (const auto& [mask, coeff] : terms_) {
        if (std::popcount(mask) % 2 != want) return false;
    }
    return true;
}

GrassmannElement GrassmannElement::grade_involution() const {
    GrassmannElement result(num_generators_);
    for (const auto& [mask, coeff] : terms_) {
        result.terms_.emplace(mask, (std::popcount(mask) % 2 == 0) ? coeff : -coeff);
    }
    return result;
}

GrassmannElement GrassmannElement::operator-() const {
    GrassmannElement result(num_generators_);
    for (const auto& [mask, coeff] : terms_) {
        result.terms_.emplace(mask, -coeff);
    }
    return result;
}

GrassmannElement GrassmannElement::operator+(const GrassmannElement& other) const {
    check_compatible(other, "add");
    GrassmannElement result = *this;
    for (const auto& [mask, coeff] : other.terms_) {
        result.insert_term(mask, coeff);
    }
    return result;
}

GrassmannElement GrassmannElement::operator-(const GrassmannElement& other) const {
    check_compatible(other, "subtract");
    GrassmannElement result = *this;
    for (const auto& [mask, coeff] : other.terms_) {
        result.insert_term(mask, -coeff);
    }
    return result;
}

GrassmannElement GrassmannElement::operator*(const GrassmannElement& other) const {
    check_compatible(other, "multiply");
    GrassmannElement result(num_generators_);
    for (const auto& [lmask, lcoeff] : terms_) {
        for (const auto& [rmask, rcoeff] : other.terms_) {
            const int sign = merge_sign(lmask, rmask);
            if (sign == 0) continue;
            Rational c = lcoeff * rcoeff;
            if (sign < 0) c = -c;
            result.insert_term(lmask | rmask, c);
        }
    }
    return result;
}

GrassmannElement GrassmannElement::operator*(const Rational& scalar) const {
    GrassmannElement result(num_generators_);
    if (smf::is_zero(scalar)) return result;
    for (const auto& [mask, coeff] : terms_) {
        result.terms_.emplace(mask, coeff * scalar);
    }
    return result;
}

GrassmannElement GrassmannElement::inverse() const {
    const Rational b = body();
    if (smf::is_zero(b)) {
        fail(ErrorKind::NotInvertible, "grassmann",
             "element has zero body and is not invertible");
    }
    const Rational inv_body = 1 / b;
    // a = b (1 + n)  =>  a^{-1} = (sum_k (-n)^k) / b.
    const GrassmannElement n = soul() * inv_body;
    GrassmannElement sum = scalar(1, num_generators_);
    GrassmannElement power = scalar(1, num_generators_);
    for (int k = 0; k < num_generators_; ++k) {
        power = power * n;
        if (power.is_zero()) break;
        if (k % 2 == 0) {
            sum = sum - power;
        } else {
            sum = sum + power;
        }
    }
    return sum * inv_body;
}

bool GrassmannElement::operator==(const GrassmannElement& other) const {
    return num_generators_ == other.num_generators_ && terms_ == other.terms_;
}

void GrassmannElement::insert_term(std::uint64_t mask, const Rational& coeff) {
    if (smf::is_zero(coeff)) return;
    auto [it, inserted] = terms_.emplace(mask, coeff);
    if (!inserted) {
        it->second += coeff;
        if (smf::is_zero(it->second)) terms_.erase(it);
    }
}

void GrassmannElement::check_compatible(const GrassmannElement& other,
                                        const char* op) const {
    if (num_generators_ != other.num_generators_) {
        fail(ErrorKind::GeneratorMismatch, "grassmann",
             std::string(op) + ": operands live in Grassmann rings with " +
                 std::to_string(num_generators_) + " and " +
                 std::to_string(other.num_generators_) + " generators");
    }
}

}  // namespace smf
