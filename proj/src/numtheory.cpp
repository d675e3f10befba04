#include "tmcf/numtheory.hpp"

#include <map>
#include <utility>

namespace tmcf::nt {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mul_mod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 pow_mod_u64(u64 b, u64 e, u64 m) {
    u64 r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1) r = mul_mod(r, b, m);
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    return r;
}

BigInt power(const BigInt& b, unsigned long e) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

BigInt mod_floor(const BigInt& a, const BigInt& m) {
    BigInt r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

BigInt inverse(const BigInt& a, const BigInt& m) {
    BigInt r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
        throw Error(Errc::NotCoprime, a.get_str() + " is not invertible mod " + m.get_str());
    return r;
}

std::vector<std::pair<BigInt, unsigned>> factorize(BigInt n) {
    std::vector<std::pair<BigInt, unsigned>> out;
    if (n < 0) n = -n;
    auto take = [&](const BigInt& d) {
        unsigned e = 0;
        while (mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t())) {
            n /= d;
            ++e;
        }
        if (e) out.emplace_back(d, e);
    };
    take(2);
    for (BigInt d = 3; d * d <= n; d += 2) take(d);
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

std::vector<std::pair<BigInt, unsigned>> totient_factors(const PrimePower& pp) {
    auto f = factorize(pp.p - 1);
    if (pp.m >= 2) f.emplace_back(pp.p, pp.m - 1);
    return f;
}

}  // namespace

bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % q == 0) return n == q;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // These twelve bases are deterministic below 2^64.
    for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        u64 x = pow_mod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

bool is_prime(const BigInt& n) {
    if (n < 2) return false;
    if (!n.fits_ulong_p() || mpz_sizeinbase(n.get_mpz_t(), 2) > 64)
        throw Error(Errc::InvalidArgument, "primality check limited to n < 2^64");
    return is_prime_u64(n.get_ui());
}

PrimePower::PrimePower(BigInt prime, unsigned exponent) : p(std::move(prime)), m(exponent) {
    if (m < 1) throw Error(Errc::InvalidArgument, "prime power exponent must be >= 1");
    if (!is_prime(p)) throw Error(Errc::InvalidArgument, p.get_str() + " is not prime");
}

BigInt PrimePower::modulus() const { return power(p, m); }

BigInt PrimePower::totient() const { return (p - 1) * power(p, m - 1); }

ValuationResult valuation(const Rat& x, const BigInt& p) {
    if (x == 0) throw Error(Errc::ZeroInput, "valuation of zero");
    if (p < 2) throw Error(Errc::InvalidArgument, "valuation base must be >= 2");
    BigInt rest;
    long v = static_cast<long>(mpz_remove(rest.get_mpz_t(), x.get_num_mpz_t(), p.get_mpz_t()));
    v -= static_cast<long>(mpz_remove(rest.get_mpz_t(), x.get_den_mpz_t(), p.get_mpz_t()));
    return {v, v == 1};
}

std::vector<BigInt> prime_factors(BigInt n) {
    std::vector<BigInt> out;
    for (auto& [q, e] : factorize(std::move(n))) out.push_back(q);
    return out;
}

BigInt pow_mod(const BigInt& base, const BigInt& exp, const BigInt& mod) {
    BigInt r;
    mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), mod.get_mpz_t());
    return r;
}

BigInt multiplicative_order(const BigInt& g, const BigInt& mod) {
    if (mod == 1) return 1;
    BigInt gcd_val;
    mpz_gcd(gcd_val.get_mpz_t(), g.get_mpz_t(), mod.get_mpz_t());
    if (gcd_val != 1) throw Error(Errc::NotCoprime, g.get_str() + " is not a unit mod " + mod.get_str());
    // phi(mod) and its prime support
    BigInt phi = 1;
    std::map<BigInt, unsigned> support;
    for (auto& [q, e] : factorize(mod)) {
        phi *= (q - 1) * power(q, e - 1);
        if (e > 1) support[q] += e - 1;
        for (auto& [r, f] : factorize(q - 1)) support[r] += f;
    }
    BigInt order = phi;
    for (auto& [q, e] : support) {
        for (unsigned i = 0; i < e && mpz_divisible_p(order.get_mpz_t(), q.get_mpz_t()); ++i) {
            if (pow_mod(g, order / q, mod) != 1) break;
            order /= q;
        }
    }
    return order;
}

bool is_primitive_root(const BigInt& g, const PrimePower& pp) {
    if (mpz_divisible_p(g.get_mpz_t(), pp.p.get_mpz_t())) throw Error(Errc::NotCoprime, "p divides g");
    const BigInt M = pp.modulus();
    const BigInt phi = pp.totient();
    for (auto& [q, e] : totient_factors(pp))
        if (pow_mod(g, phi / q, M) == 1) return false;
    return true;
}

HenselLift hensel_root(const Poly& P, const PrimePower& pp, const BigInt& seed) {
    const Poly dP = poly_derivative(P);
    const BigInt s = mod_floor(seed, pp.p);
    if (poly_eval_mod(P, s, pp.p) != 0) throw Error(Errc::NotARoot, "P(seed) != 0 mod p");
    if (poly_eval_mod(dP, s, pp.p) == 0) throw Error(Errc::SingularRoot, "P'(seed) = 0 mod p");

    BigInt x = s;
    unsigned k = 1;
    while (k < pp.m) {
        k = std::min(2 * k, pp.m);
        const BigInt mod = power(pp.p, k);
        const BigInt fx = poly_eval_mod(P, x, mod);
        const BigInt dfx = poly_eval_mod(dP, x, mod);
        x = mod_floor(x - fx * inverse(dfx, mod), mod);
    }
    if (poly_eval_mod(P, x, pp.modulus()) != 0) throw Error(Errc::NoSolution, "Newton iteration did not converge");

    HenselLift out;
    out.root = x;
    if (pp.m >= 2) {
        const BigInt p2 = pp.p * pp.p;
        out.differs_mod_p2 = mod_floor(x - s, p2) != 0;
    }
    return out;
}

BigInt tower_mod(const BigInt& a, std::uint64_t n, const PrimePower& pp) {
    if (mpz_divisible_p(a.get_mpz_t(), pp.p.get_mpz_t())) throw Error(Errc::NotCoprime, "p divides a");
    const BigInt M = pp.modulus();
    BigInt x = mod_floor(a, M);
    for (std::uint64_t i = 0; i < n; ++i) x = x * x % M;
    return x;
}

std::optional<BigInt> bsgs(const BigInt& g, const BigInt& h, const BigInt& mod, const BigInt& bound) {
    if (bound <= 0) return std::nullopt;
    BigInt step;
    mpz_sqrt(step.get_mpz_t(), bound.get_mpz_t());
    if (step * step < bound) step += 1;
    std::map<BigInt, BigInt> baby;
    BigInt cur = 1 % mod;
    for (BigInt j = 0; j < step; ++j) {
        baby.emplace(cur, j);
        cur = cur * g % mod;
    }
    const BigInt giant = inverse(pow_mod(g, step, mod), mod);
    BigInt y = mod_floor(h, mod);
    for (BigInt i = 0; i * step < bound; ++i) {
        if (auto it = baby.find(y); it != baby.end()) {
            BigInt d = i * step + it->second;
            if (d < bound) return d;
            return std::nullopt;
        }
        y = y * giant % mod;
    }
    return std::nullopt;
}

std::optional<BigInt> dlog2(const BigInt& x, const PrimePower& pp) {
    if (mpz_divisible_p(x.get_mpz_t(), pp.p.get_mpz_t())) throw Error(Errc::NotCoprime, "p divides x");
    if (pp.p == 2 || !is_primitive_root(2, PrimePower(pp.p, 2)))
        throw Error(Errc::NotPrimitiveRoot, "2 is not a primitive root mod " + pp.p.get_str() + "^2");
    const BigInt M = pp.modulus();
    const BigInt N = pp.totient();
    const BigInt target = mod_floor(x, M);

    BigInt result = 0, combined_mod = 1;
    for (auto& [q, e] : totient_factors(pp)) {
        const BigInt g_q = pow_mod(2, N / q, M);  // order q
        BigInt acc = 0, q_pow = 1;
        for (unsigned i = 0; i < e; ++i) {
            const BigInt qi1 = q_pow * q;
            const BigInt shifted = target * inverse(pow_mod(2, acc, M), M) % M;
            const BigInt h = pow_mod(shifted, N / qi1, M);
            auto digit = bsgs(g_q, h, M, q);
            if (!digit) return std::nullopt;
            acc += *digit * q_pow;
            q_pow = qi1;
        }
        // CRT: result = acc (mod q^e)
        const BigInt t = mod_floor((acc - result) * inverse(combined_mod, q_pow), q_pow);
        result += combined_mod * t;
        combined_mod *= q_pow;
    }
    result = mod_floor(result, N);
    if (pow_mod(2, result, M) != target) return std::nullopt;
    return result;
}

std::optional<PowerOfTwoSolution> solve_power_of_two(const BigInt& target, const BigInt& modulus, std::uint64_t n_min) {
    if (modulus < 1) throw Error(Errc::InvalidArgument, "modulus must be positive");
    if (modulus == 1) return PowerOfTwoSolution{n_min, 1};
    const BigInt T = mod_floor(target, modulus);
    const auto e = static_cast<std::uint64_t>(mpz_scan1(modulus.get_mpz_t(), 0));
    const BigInt r = modulus >> static_cast<mp_bitcnt_t>(e);
    const BigInt ord = r == 1 ? BigInt(1) : multiplicative_order(2, r);

    for (std::uint64_t n = n_min; n < e; ++n)
        if (pow_mod(2, BigInt(static_cast<unsigned long>(n)), modulus) == T) return PowerOfTwoSolution{n, ord};

    const std::uint64_t n0 = std::max(n_min, e);
    if (e > 0 && !mpz_divisible_2exp_p(T.get_mpz_t(), static_cast<mp_bitcnt_t>(e))) return std::nullopt;
    if (r == 1) return PowerOfTwoSolution{n0, 1};

    const BigInt Tr = T % r;
    BigInt g;
    mpz_gcd(g.get_mpz_t(), Tr.get_mpz_t(), r.get_mpz_t());
    if (g != 1) return std::nullopt;
    auto d = bsgs(2, Tr, r, ord);
    if (!d) return std::nullopt;
    BigInt n = *d;
    const BigInt lo(static_cast<unsigned long>(n0));
    if (n < lo) n += ((lo - n + ord - 1) / ord) * ord;
    if (!n.fits_ulong_p()) throw Error(Errc::InvalidArgument, "power-of-two exponent overflow");
    return PowerOfTwoSolution{n.get_ui(), ord};
}

PowerOfTwoSolution solve_double_exp(const BigInt& x, const PrimePower& pp) {
    if (pp.m < 2) throw Error(Errc::InvalidArgument, "solve_double_exp needs m >= 2");
    const BigInt shifted = mod_floor(x - 1, pp.modulus());
    if (shifted == 0 || !valuation(Rat(shifted), pp.p).exact_div)
        throw Error(Errc::NoSolution, "p does not exactly divide x - 1");
    auto k = dlog2(x, pp);
    if (!k) throw Error(Errc::NoSolution, "x is outside the group generated by 2");
    auto sol = solve_power_of_two(*k, pp.totient(), 1);
    if (!sol) throw Error(Errc::NoSolution, "no n with 2^n = log_2 x mod phi(p^m)");
    return *sol;
}

}  // namespace tmcf::nt
