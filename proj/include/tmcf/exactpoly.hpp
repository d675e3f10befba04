#pragma once

// Exact foundations: big integers, reduced rationals, dense univariate
// polynomials over Q and the Thue-Morse bit sequence.

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "tmcf/error.hpp"

namespace tmcf {

using BigInt = mpz_class;
/// mpq_class keeps num/den reduced after every arithmetic operation; values
/// built from a raw (num, den) pair must go through make_rat.
using Rat = mpq_class;

Rat make_rat(const BigInt& num, const BigInt& den);
Rat make_rat(long num, long den = 1);

/// Thue-Morse bit t_i, computed as the parity of the binary weight of i.
int tm_bit(std::uint64_t i);

/// Dense polynomial sum c_k z^k with rational coefficients. The stored
/// coefficient vector never has a trailing zero, so the zero polynomial is
/// the empty vector and has degree kZeroDegree.
class Poly {
public:
    static constexpr int kZeroDegree = std::numeric_limits<int>::min();

    Poly() = default;
    explicit Poly(std::vector<Rat> coeffs);
    Poly(std::initializer_list<long> coeffs);

    static Poly constant(const Rat& c);
    static Poly monomial(const Rat& c, int k);
    /// z + c
    static Poly linear(const Rat& c);

    int degree() const { return coeffs_.empty() ? kZeroDegree : static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    bool is_monic() const { return !is_zero() && coeffs_.back() == 1; }

    /// Coefficient of z^k; zero outside the stored range.
    Rat coeff(int k) const;
    const Rat& leading() const;
    const std::vector<Rat>& coefficients() const { return coeffs_; }

    Poly& operator+=(const Poly& rhs);
    Poly& operator-=(const Poly& rhs);
    Poly& operator*=(const Poly& rhs);
    Poly& operator*=(const Rat& c);
    Poly& operator/=(const Rat& c);

    friend Poly operator+(Poly lhs, const Poly& rhs) { return lhs += rhs; }
    friend Poly operator-(Poly lhs, const Poly& rhs) { return lhs -= rhs; }
    friend Poly operator*(const Poly& lhs, const Poly& rhs);
    friend Poly operator*(Poly lhs, const Rat& c) { return lhs *= c; }
    friend Poly operator*(const Rat& c, Poly rhs) { return rhs *= c; }
    friend Poly operator/(Poly lhs, const Rat& c) { return lhs /= c; }
    Poly operator-() const;

    friend bool operator==(const Poly& a, const Poly& b) { return a.coeffs_ == b.coeffs_; }

    /// Text form `z^8-3*z^6+2*z^4+3*z^2-4`, highest degree first.
    std::string to_string() const;
    static Poly parse(std::string_view text);

private:
    void trim();

    std::vector<Rat> coeffs_;
};

struct PolyDivision {
    Poly quotient;
    Poly remainder;
};

/// Euclidean division over Q; throws InvalidArgument for a zero divisor.
PolyDivision divmod(const Poly& num, const Poly& den);

Rat poly_eval(const Poly& p, const Rat& x);

/// P(x) in Z/modulus with every coefficient denominator replaced by its
/// inverse. Throws NonInvertibleDenominator when a denominator is not a unit.
BigInt poly_eval_mod(const Poly& p, const BigInt& x, const BigInt& modulus);
BigInt poly_eval_mod(const Poly& p, const BigInt& x, const BigInt& prime, unsigned m);

Poly poly_derivative(const Poly& p);

enum class Substitution { square, negate };
Poly substitute(const Poly& p, Substitution mode);
/// P(z^k) for k >= 1.
Poly substitute_power(const Poly& p, unsigned long k);

/// Positive lcm of every coefficient denominator (1 for the zero polynomial).
BigInt denominator_lcm(const Poly& p);

/// Coefficients of scale * P, which must all be integral.
std::vector<BigInt> integral_coefficients(const Poly& p, const BigInt& scale);

/// Horner evaluation of an integer polynomial at an integer.
BigInt eval_integral(const std::vector<BigInt>& coeffs, const BigInt& x);

}  // namespace tmcf
