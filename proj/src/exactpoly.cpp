#include "tmcf/exactpoly.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <sstream>

namespace tmcf {

std::string_view errc_name(Errc code) {
    switch (code) {
        case Errc::InvalidArgument: return "InvalidArgument";
        case Errc::ParseError: return "ParseError";
        case Errc::NonInvertibleDenominator: return "NonInvertibleDenominator";
        case Errc::PrecisionExhausted: return "PrecisionExhausted";
        case Errc::ZeroNumerator: return "ZeroNumerator";
        case Errc::NotAConvergent: return "NotAConvergent";
        case Errc::ShapeViolation: return "ShapeViolation";
        case Errc::ZeroInput: return "ZeroInput";
        case Errc::NotCoprime: return "NotCoprime";
        case Errc::NotARoot: return "NotARoot";
        case Errc::SingularRoot: return "SingularRoot";
        case Errc::NotPrimitiveRoot: return "NotPrimitiveRoot";
        case Errc::NoSolution: return "NoSolution";
        case Errc::SizeLimit: return "SizeLimit";
        case Errc::InsufficientPrecision: return "InsufficientPrecision";
        case Errc::NoWitness: return "NoWitness";
        case Errc::NotDivisible: return "NotDivisible";
        case Errc::VerificationFailed: return "VerificationFailed";
    }
    return "Unknown";
}

Rat make_rat(const BigInt& num, const BigInt& den) {
    if (den == 0) throw Error(Errc::InvalidArgument, "zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

Rat make_rat(long num, long den) { return make_rat(BigInt(num), BigInt(den)); }

int tm_bit(std::uint64_t i) { return std::popcount(i) & 1; }

// ---------------------------------------------------------------------------
// Poly

Poly::Poly(std::vector<Rat> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Poly::Poly(std::initializer_list<long> coeffs) {
    coeffs_.reserve(coeffs.size());
    for (long c : coeffs) coeffs_.emplace_back(c);
    trim();
}

Poly Poly::constant(const Rat& c) { return Poly(std::vector<Rat>{c}); }

Poly Poly::monomial(const Rat& c, int k) {
    if (k < 0) throw Error(Errc::InvalidArgument, "negative exponent");
    std::vector<Rat> v(static_cast<std::size_t>(k) + 1);
    v.back() = c;
    return Poly(std::move(v));
}

Poly Poly::linear(const Rat& c) { return Poly(std::vector<Rat>{c, Rat(1)}); }

void Poly::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rat Poly::coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(coeffs_.size())) return Rat(0);
    return coeffs_[static_cast<std::size_t>(k)];
}

const Rat& Poly::leading() const {
    if (coeffs_.empty()) throw Error(Errc::InvalidArgument, "leading coefficient of zero polynomial");
    return coeffs_.back();
}

Poly& Poly::operator+=(const Poly& rhs) {
    if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
    for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
    trim();
    return *this;
}

Poly& Poly::operator-=(const Poly& rhs) {
    if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
    for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
    trim();
    return *this;
}

Poly operator*(const Poly& lhs, const Poly& rhs) {
    if (lhs.is_zero() || rhs.is_zero()) return {};
    std::vector<Rat> out(lhs.coeffs_.size() + rhs.coeffs_.size() - 1);
    for (std::size_t i = 0; i < lhs.coeffs_.size(); ++i) {
        if (lhs.coeffs_[i] == 0) continue;
        for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) out[i + j] += lhs.coeffs_[i] * rhs.coeffs_[j];
    }
    return Poly(std::move(out));
}

Poly& Poly::operator*=(const Poly& rhs) { return *this = *this * rhs; }

Poly& Poly::operator*=(const Rat& c) {
    if (c == 0) {
        coeffs_.clear();
        return *this;
    }
    for (auto& x : coeffs_) x *= c;
    return *this;
}

Poly& Poly::operator/=(const Rat& c) {
    if (c == 0) throw Error(Errc::InvalidArgument, "division of polynomial by zero");
    for (auto& x : coeffs_) x /= c;
    return *this;
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& x : r.coeffs_) x = -x;
    return r;
}

std::string Poly::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (int k = degree(); k >= 0; --k) {
        const Rat& c = coeffs_[static_cast<std::size_t>(k)];
        if (c == 0) continue;
        Rat mag = abs(c);
        if (c < 0)
            out << '-';
        else if (!first)
            out << '+';
        first = false;
        if (k == 0) {
            out << mag.get_str();
            continue;
        }
        if (mag != 1) out << mag.get_str() << '*';
        out << 'z';
        if (k > 1) out << '^' << k;
    }
    return out.str();
}

namespace {

class PolyParser {
public:
    explicit PolyParser(std::string_view s) : s_(s) {}

    Poly run() {
        skip_ws();
        if (pos_ == s_.size()) fail("empty input");
        std::vector<Rat> acc;
        bool first = true;
        while (true) {
            skip_ws();
            if (pos_ == s_.size()) break;
            int sign = 1;
            if (peek() == '+' || peek() == '-') {
                sign = peek() == '-' ? -1 : 1;
                ++pos_;
                skip_ws();
            } else if (!first) {
                fail("expected '+' or '-'");
            }
            first = false;
            auto [c, k] = term();
            if (acc.size() <= static_cast<std::size_t>(k)) acc.resize(static_cast<std::size_t>(k) + 1);
            acc[static_cast<std::size_t>(k)] += sign * c;
        }
        return Poly(std::move(acc));
    }

private:
    std::pair<Rat, int> term() {
        Rat c(1);
        bool have_coeff = false;
        if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(peek()))) {
            c = number();
            have_coeff = true;
            skip_ws();
            if (pos_ < s_.size() && peek() == '/') {
                ++pos_;
                skip_ws();
                Rat den = number();
                if (den == 0) fail("zero denominator");
                c /= den;
            }
            skip_ws();
            if (pos_ < s_.size() && peek() == '*') {
                ++pos_;
                skip_ws();
            } else {
                return {c, 0};
            }
        }
        if (pos_ >= s_.size() || (peek() != 'z' && peek() != 'x')) {
            if (have_coeff) fail("expected variable after '*'");
            fail("expected term");
        }
        ++pos_;
        skip_ws();
        int k = 1;
        if (pos_ < s_.size() && peek() == '^') {
            ++pos_;
            skip_ws();
            Rat e = number();
            if (e.get_den() != 1 || e > 1000000) fail("bad exponent");
            k = static_cast<int>(e.get_num().get_si());
        }
        return {c, k};
    }

    Rat number() {
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        if (start == pos_) fail("expected number");
        return Rat(BigInt(std::string(s_.substr(start, pos_ - start))));
    }

    char peek() const { return s_[pos_]; }
    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    [[noreturn]] void fail(const std::string& why) const {
        throw Error(Errc::ParseError, why + " at offset " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

}  // namespace

Poly Poly::parse(std::string_view text) { return PolyParser(text).run(); }

// ---------------------------------------------------------------------------
// Free operations

PolyDivision divmod(const Poly& num, const Poly& den) {
    if (den.is_zero()) throw Error(Errc::InvalidArgument, "polynomial division by zero");
    if (num.degree() < den.degree()) return {Poly{}, num};
    const int dd = den.degree();
    std::vector<Rat> rem = num.coefficients();
    std::vector<Rat> quo(static_cast<std::size_t>(num.degree() - dd) + 1);
    const Rat& lead = den.leading();
    for (int k = num.degree(); k >= dd; --k) {
        Rat c = rem[static_cast<std::size_t>(k)] / lead;
        quo[static_cast<std::size_t>(k - dd)] = c;
        if (c == 0) continue;
        for (int i = 0; i <= dd; ++i) rem[static_cast<std::size_t>(k - dd + i)] -= c * den.coefficients()[static_cast<std::size_t>(i)];
    }
    return {Poly(std::move(quo)), Poly(std::move(rem))};
}

Rat poly_eval(const Poly& p, const Rat& x) {
    Rat acc(0);
    const auto& c = p.coefficients();
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return acc;
}

BigInt poly_eval_mod(const Poly& p, const BigInt& x, const BigInt& modulus) {
    if (modulus < 1) throw Error(Errc::InvalidArgument, "modulus must be positive");
    BigInt xr = x % modulus;
    if (xr < 0) xr += modulus;
    BigInt acc = 0;
    const auto& c = p.coefficients();
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        BigInt inv;
        if (mpz_invert(inv.get_mpz_t(), it->get_den_mpz_t(), modulus.get_mpz_t()) == 0 && modulus != 1)
            throw Error(Errc::NonInvertibleDenominator,
                        "denominator " + it->get_den().get_str() + " not invertible mod " + modulus.get_str());
        BigInt term = it->get_num() * inv;
        acc = (acc * xr + term) % modulus;
    }
    if (acc < 0) acc += modulus;
    return modulus == 1 ? BigInt(0) : acc;
}

BigInt poly_eval_mod(const Poly& p, const BigInt& x, const BigInt& prime, unsigned m) {
    if (m == 0) throw Error(Errc::InvalidArgument, "exponent m must be positive");
    BigInt modulus;
    mpz_pow_ui(modulus.get_mpz_t(), prime.get_mpz_t(), m);
    return poly_eval_mod(p, x, modulus);
}

Poly poly_derivative(const Poly& p) {
    const auto& c = p.coefficients();
    if (c.size() <= 1) return {};
    std::vector<Rat> d(c.size() - 1);
    for (std::size_t k = 1; k < c.size(); ++k) d[k - 1] = c[k] * static_cast<unsigned long>(k);
    return Poly(std::move(d));
}

Poly substitute(const Poly& p, Substitution mode) {
    if (mode == Substitution::square) return substitute_power(p, 2);
    std::vector<Rat> c = p.coefficients();
    for (std::size_t k = 1; k < c.size(); k += 2) c[k] = -c[k];
    return Poly(std::move(c));
}

Poly substitute_power(const Poly& p, unsigned long k) {
    if (k == 0) throw Error(Errc::InvalidArgument, "substitution power must be positive");
    if (p.is_zero()) return {};
    const auto& c = p.coefficients();
    std::vector<Rat> out((c.size() - 1) * k + 1);
    for (std::size_t i = 0; i < c.size(); ++i) out[i * k] = c[i];
    return Poly(std::move(out));
}

BigInt denominator_lcm(const Poly& p) {
    BigInt d = 1;
    for (const auto& c : p.coefficients()) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), c.get_den_mpz_t());
    return d;
}

std::vector<BigInt> integral_coefficients(const Poly& p, const BigInt& scale) {
    std::vector<BigInt> out;
    out.reserve(p.coefficients().size());
    for (const auto& c : p.coefficients()) {
        Rat scaled = c * scale;
        if (scaled.get_den() != 1)
            throw Error(Errc::InvalidArgument, "scale " + scale.get_str() + " does not clear denominator of " + c.get_str());
        out.push_back(scaled.get_num());
    }
    return out;
}

BigInt eval_integral(const std::vector<BigInt>& coeffs, const BigInt& x) {
    BigInt acc = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
        acc *= x;
        acc += *it;
    }
    return acc;
}

}  // namespace tmcf
