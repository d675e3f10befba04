#include "tmcf/dyadic.hpp"

#include <algorithm>

namespace tmcf {

namespace {

Rat scaled(const BigInt& mantissa, unsigned long scale) {
    BigInt den = 1;
    den <<= static_cast<mp_bitcnt_t>(scale);
    return make_rat(mantissa, den);
}

}  // namespace

DyadicInterval::DyadicInterval(BigInt lo, BigInt hi, unsigned long scale)
    : lo_(std::move(lo)), hi_(std::move(hi)), scale_(scale) {
    if (lo_ > hi_) throw Error(Errc::InvalidArgument, "dyadic interval with lo > hi");
}

Rat DyadicInterval::lower() const { return scaled(lo_, scale_); }
Rat DyadicInterval::upper() const { return scaled(hi_, scale_); }
Rat DyadicInterval::width() const { return scaled(hi_ - lo_, scale_); }
Rat DyadicInterval::midpoint() const { return scaled(lo_ + hi_, scale_ + 1); }

bool DyadicInterval::contains(const Rat& x) const { return lower() <= x && x <= upper(); }

bool DyadicInterval::contains(const DyadicInterval& inner) const {
    return lower() <= inner.lower() && inner.upper() <= upper();
}

bool DyadicInterval::intersects(const DyadicInterval& other) const {
    return lower() <= other.upper() && other.lower() <= upper();
}

DyadicInterval DyadicInterval::reflect_halve(const BigInt& c, unsigned long k) const {
    BigInt shifted_c = c;
    shifted_c <<= static_cast<mp_bitcnt_t>(scale_);
    return DyadicInterval(shifted_c - hi_, shifted_c - lo_, scale_ + k);
}

DyadicInterval DyadicInterval::coarsened(unsigned long new_scale) const {
    if (new_scale >= scale_) {
        const auto sh = static_cast<mp_bitcnt_t>(new_scale - scale_);
        BigInt lo = lo_, hi = hi_;
        lo <<= sh;
        hi <<= sh;
        return DyadicInterval(std::move(lo), std::move(hi), new_scale);
    }
    const auto sh = static_cast<mp_bitcnt_t>(scale_ - new_scale);
    BigInt lo, hi;
    mpz_fdiv_q_2exp(lo.get_mpz_t(), lo_.get_mpz_t(), sh);
    mpz_cdiv_q_2exp(hi.get_mpz_t(), hi_.get_mpz_t(), sh);
    return DyadicInterval(std::move(lo), std::move(hi), new_scale);
}

std::string to_decimal(const Rat& x, int digits, Rounding dir) {
    if (x == 0) return "0";
    digits = std::max(digits, 1);
    const bool negative = x < 0;
    Rat mag = abs(x);
    // Decimal exponent e with 10^e <= mag < 10^(e+1).
    long e = static_cast<long>(mpz_sizeinbase(mag.get_num_mpz_t(), 10)) -
             static_cast<long>(mpz_sizeinbase(mag.get_den_mpz_t(), 10));
    auto pow10 = [](long k) {
        BigInt r;
        mpz_ui_pow_ui(r.get_mpz_t(), 10, static_cast<unsigned long>(k));
        return Rat(r);
    };
    auto ten_to = [&](long k) { return k >= 0 ? pow10(k) : Rat(1) / pow10(-k); };
    while (mag >= ten_to(e + 1)) ++e;
    while (mag < ten_to(e)) --e;

    const long shift = digits - 1 - e;  // mag * 10^shift has `digits` integer digits
    Rat s = mag * ten_to(shift);
    BigInt q;
    // Rounding the magnitude: toward +inf for (up, positive) and (down, negative).
    const bool away = (dir == Rounding::up) != negative;
    if (away)
        mpz_cdiv_q(q.get_mpz_t(), s.get_num_mpz_t(), s.get_den_mpz_t());
    else
        mpz_fdiv_q(q.get_mpz_t(), s.get_num_mpz_t(), s.get_den_mpz_t());

    std::string body = q.get_str();
    long point = static_cast<long>(body.size()) - shift;  // digits before the decimal point
    std::string out;
    if (point <= 0) {
        out = "0." + std::string(static_cast<std::size_t>(-point), '0') + body;
    } else if (point >= static_cast<long>(body.size())) {
        out = body + std::string(static_cast<std::size_t>(point - static_cast<long>(body.size())), '0');
    } else {
        out = body.substr(0, static_cast<std::size_t>(point)) + "." + body.substr(static_cast<std::size_t>(point));
    }
    if (out.find('.') != std::string::npos) {
        while (out.back() == '0') out.pop_back();
        if (out.back() == '.') out.pop_back();
    }
    return negative ? "-" + out : out;
}

}  // namespace tmcf
