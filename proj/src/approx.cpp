#include "tmcf/approx.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <thread>
#include <utility>

namespace tmcf::approx {

namespace {

unsigned long bitlen(const BigInt& x) { return x == 0 ? 0 : static_cast<unsigned long>(mpz_sizeinbase(x.get_mpz_t(), 2)); }

BigInt pow2(unsigned long k) {
    BigInt r = 1;
    r <<= static_cast<mp_bitcnt_t>(k);
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

BigInt fdiv(const BigInt& a, const BigInt& b) {
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

BigInt cdiv(const BigInt& a, const BigInt& b) {
    BigInt q;
    mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

// p || a^(2^n) - 1, decided modulo p^2.
bool exactly_divides_tower(const BigInt& a, std::uint64_t n, const BigInt& p) {
    if (mpz_divisible_p(a.get_mpz_t(), p.get_mpz_t())) return false;
    const nt::PrimePower pp2(p, 2);
    const BigInt r = mod_floor(nt::tower_mod(a, n, pp2) - 1, pp2.modulus());
    return r != 0 && mpz_divisible_p(r.get_mpz_t(), p.get_mpz_t());
}

constexpr unsigned long kPolynomialFormMaxDegree = 1UL << 16;
constexpr unsigned long kSelfCheckMaxIndex = 128;

}  // namespace

std::pair<Poly, Poly> tilde_polynomials(std::uint64_t n, long t, tm::ClosedForm& cf) {
    if (n >= 16 || static_cast<unsigned long>(t) << (n + 1) > kPolynomialFormMaxDegree)
        throw Error(Errc::SizeLimit, "polynomial form too large");
    const auto conv = cf.canonical(t);
    const unsigned long step = 1UL << (n + 1);
    Poly prod{1};
    for (std::uint64_t k = 0; k <= n; ++k) prod *= Poly::monomial(Rat(1), 1 << k) - Poly{1};
    return {prod * substitute_power(conv.Phat, step), substitute_power(conv.Qhat, step)};
}

ApproxPair tilde_pair(std::uint64_t n, long t, const BigInt& a, unsigned long size_limit_bits, tm::ClosedForm& cf) {
    if (a < 2) throw Error(Errc::InvalidArgument, "base a must be >= 2");
    if (t < 1) throw Error(Errc::InvalidArgument, "convergent index t must be >= 1");
    const auto conv = cf.canonical(t);

    ApproxPair out;
    out.n = n;
    out.t = t;
    out.a = a;
    out.d_P = denominator_lcm(conv.Phat);
    out.d_Q = denominator_lcm(conv.Qhat);

    // q_int ~ d_P d_Q a^(t 2^(n+1)); p_int is no larger in bit length.
    if (n >= 48) throw Error(Errc::SizeLimit, "tower index too large");
    const unsigned long est = bitlen(out.d_P * out.d_Q) + static_cast<unsigned long>(t) * (1UL << (n + 1)) * bitlen(a) + 64;
    if (est > size_limit_bits)
        throw Error(Errc::SizeLimit, "estimated " + std::to_string(est) + " bits exceeds limit " + std::to_string(size_limit_bits));

    const auto P_int = integral_coefficients(conv.Phat, out.d_P);
    const auto Q_int = integral_coefficients(conv.Qhat, out.d_Q);

    BigInt y = a;  // a^(2^k)
    BigInt prod = 1;
    for (std::uint64_t k = 0; k <= n; ++k) {
        prod *= y - 1;
        y *= y;
    }
    out.q_int = out.d_P * eval_integral(Q_int, y);
    out.p_int = out.d_Q * prod * eval_integral(P_int, y);

    if (static_cast<unsigned long>(t) << (n + 1) <= kSelfCheckMaxIndex) {
        auto [Pt, Qt] = tilde_polynomials(n, t, cf);
        const auto doubled = cf.canonical(t << (n + 1));
        if (Pt != doubled.Phat || Qt != doubled.Qhat)
            throw Error(Errc::VerificationFailed, "tilde polynomials differ from canonical(" + std::to_string(t << (n + 1)) + ")");
        const Rat scale(out.d_P * out.d_Q);
        if (poly_eval(Qt, Rat(a)) * scale != Rat(out.q_int) || poly_eval(Pt, Rat(a)) * scale != Rat(out.p_int))
            throw Error(Errc::VerificationFailed, "tilde integers differ from polynomial evaluation");
    }
    return out;
}

SeriesValue ftmm_series(const BigInt& a, unsigned long bits) {
    if (a < 2) throw Error(Errc::InvalidArgument, "base a must be >= 2");
    // K terms with a^K >= 2^(bits+2), so the tail a^-K/(a-1) is at most 2^-(bits+2).
    BigInt aK = 1, N = 0;
    unsigned long K = 0;
    while (bitlen(aK) <= bits + 2) {
        N *= a;
        N += tm_bit(K) ? -1 : 1;
        aK *= a;
        ++K;
    }
    const unsigned long s = bits + 2;
    const BigInt am1 = a - 1;
    const BigInt den = aK * am1;
    BigInt lo_num = (N * am1 - 1) << static_cast<mp_bitcnt_t>(s);
    BigInt hi_num = (N * am1 + 1) << static_cast<mp_bitcnt_t>(s);
    return {DyadicInterval(fdiv(lo_num, den), cdiv(hi_num, den), s), K};
}

DyadicInterval ftmm_value(const BigInt& a, unsigned long bits) { return ftmm_series(a, bits).value; }

DyadicInterval tau_tm(unsigned long bits) {
    BigInt S = 0;
    for (unsigned long k = 0; k < bits; ++k) {
        S <<= 1;
        if (tm_bit(k)) S += 1;
    }
    DyadicInterval tau(S, S + 1, bits);
    const DyadicInterval via_f = ftmm_value(2, bits).reflect_halve(1, 1);
    if (!tau.intersects(via_f)) throw Error(Errc::VerificationFailed, "tau_TM and (1 - f~(2))/2 are disjoint");
    return tau;
}

DyadicInterval lacunary_constant(unsigned long bits) {
    BigInt S = 0;
    for (unsigned long e = 1; e <= bits + 1; e <<= 1) S += pow2(bits + 1 - e);
    return DyadicInterval(S, S + 1, bits);
}

unsigned long min_quality_bits(const ApproxPair& pair) { return 2 * bitlen(pair.q_int) + 64; }

QualityReport quality(const ApproxPair& pair, unsigned long bits) {
    if (pair.q_int <= 0) throw Error(Errc::InvalidArgument, "q_int must be positive");
    if (bits < min_quality_bits(pair))
        throw Error(Errc::InsufficientPrecision, std::to_string(bits) + " bits < required " + std::to_string(min_quality_bits(pair)));
    const SeriesValue f = ftmm_series(pair.a, bits);
    const unsigned long s = f.value.scale();
    const BigInt p_shift = pair.p_int << static_cast<mp_bitcnt_t>(s);
    const BigInt L = pair.q_int * (pair.q_int * f.value.lo_mantissa() - p_shift);
    const BigInt U = pair.q_int * (pair.q_int * f.value.hi_mantissa() - p_shift);
    BigInt lo, hi;
    if (L >= 0) {
        lo = L;
        hi = U;
    } else if (U <= 0) {
        lo = -U;
        hi = -L;
    } else {
        lo = 0;
        hi = std::max(BigInt(-L), U);
    }
    QualityReport rep{DyadicInterval(lo, hi, s), bits, f.terms};
    const Rat ceiling = std::max(Rat(1), rep.lower()) / 256;
    if (rep.bracket.width() > ceiling) throw Error(Errc::InsufficientPrecision, "quality bracket too wide");
    return rep;
}

std::optional<AcceptabilityCertificate> check_acceptable(const BigInt& p, long t, tm::ClosedForm& cf) {
    if (!nt::is_primitive_root(2, nt::PrimePower(p, 2))) return std::nullopt;
    const Poly Q = cf.canonical(t).Qhat;
    for (const auto& c : Q.coefficients())
        if (mpz_divisible_p(c.get_den_mpz_t(), p.get_mpz_t())) return std::nullopt;
    AcceptabilityCertificate cert;
    cert.p = p;
    cert.t = t;
    cert.primroot = true;
    cert.q1 = poly_eval(Q, Rat(1));
    cert.qprime1 = poly_eval(poly_derivative(Q), Rat(1));
    if (cert.q1 == 0) return std::nullopt;
    cert.q1_valuation = nt::valuation(cert.q1, p);
    cert.qprime_nonzero = !mpz_divisible_p(cert.qprime1.get_num_mpz_t(), p.get_mpz_t());
    if (!cert.q1_valuation.exact_div || !cert.qprime_nonzero) return std::nullopt;
    return cert;
}

AcceptabilityResult acceptable(const BigInt& p, long t_max, tm::ClosedForm& cf) {
    if (t_max < 1 || t_max > 200) throw Error(Errc::InvalidArgument, "t_max must lie in [1, 200]");
    AcceptabilityResult out;
    out.p = p;
    out.primroot = nt::is_primitive_root(2, nt::PrimePower(p, 2));
    if (!out.primroot) return out;
    for (long t = 1; t <= t_max; ++t) {
        if (mpz_divisible_p(denominator_lcm(cf.canonical(t).Qhat).get_mpz_t(), p.get_mpz_t())) {
            out.skipped.push_back(t);
            continue;
        }
        if (auto cert = check_acceptable(p, t, cf)) {
            out.certificate = std::move(cert);
            return out;
        }
    }
    return out;
}

WitnessRecord witness(const BigInt& p, long t, const BigInt& a, unsigned m, std::uint64_t search_bound, tm::ClosedForm& cf) {
    if (m < 3) throw Error(Errc::InvalidArgument, "witness needs m >= 3");
    if (a < 2) throw Error(Errc::InvalidArgument, "base a must be >= 2");
    const nt::PrimePower pp(p, m);
    if (!check_acceptable(p, t, cf))
        throw Error(Errc::InvalidArgument, "(p, t) = (" + p.get_str() + ", " + std::to_string(t) + ") is not acceptable");
    if (mpz_divisible_p(a.get_mpz_t(), p.get_mpz_t())) throw Error(Errc::NotCoprime, "p divides a");
    bool condition_one = false;
    for (std::uint64_t n0 = 0; n0 <= 64 && !condition_one; ++n0) condition_one = exactly_divides_tower(a, n0, p);
    if (!condition_one) throw Error(Errc::NoWitness, "no n0 <= 64 with p || a^(2^n0) - 1");

    const auto conv = cf.canonical(t);
    WitnessRecord rec;
    rec.p = p;
    rec.t = t;
    rec.a = a;
    rec.m = m;
    rec.x_m = nt::hensel_root(conv.Qhat, pp, 1).root;

    // a^(2^(n+1)) = x  <=>  A 2^(n+1) = X (mod phi) with A, X logs base 2.
    const BigInt phi = pp.totient();
    const auto A = nt::dlog2(a, pp);
    const auto X = nt::dlog2(rec.x_m, pp);
    if (!A || !X) throw Error(Errc::NoWitness, "discrete logarithm failed");
    BigInt g;
    mpz_gcd(g.get_mpz_t(), A->get_mpz_t(), phi.get_mpz_t());
    if (!mpz_divisible_p(X->get_mpz_t(), g.get_mpz_t())) throw Error(Errc::NoWitness, "x_m is not a power of a");
    const BigInt reduced_mod = phi / g;
    BigInt inv_a;
    const BigInt a_red = mod_floor(*A / g, reduced_mod);
    if (reduced_mod == 1)
        inv_a = 0;
    else if (mpz_invert(inv_a.get_mpz_t(), a_red.get_mpz_t(), reduced_mod.get_mpz_t()) == 0)
        throw Error(Errc::NoWitness, "log a not invertible");
    const BigInt target = mod_floor((*X / g) * inv_a, reduced_mod);

    const auto first = nt::solve_power_of_two(target, reduced_mod, 1);
    const auto shifted = nt::solve_power_of_two(target, reduced_mod, static_cast<std::uint64_t>(m) + 2);
    if (!first || !shifted) throw Error(Errc::NoWitness, "no tower index reaches x_m");
    rec.n_min = first->n - 1;
    rec.n_m = shifted->n - 1;
    rec.period = shifted->period;
    if (rec.n_m > search_bound) throw Error(Errc::NoWitness, "tower index beyond search bound");

    if (p == 3)
        rec.bound_ok = rec.n_m <= power(3, m - 1);
    else
        rec.bound_ok = rec.n_m > m && BigInt(static_cast<unsigned long>(rec.n_m)) <= BigInt(m) + (p - 1) * power(p, m - 2);

    const BigInt M = pp.modulus();
    const BigInt y = nt::tower_mod(a, rec.n_m + 1, pp);
    if (y != rec.x_m) throw Error(Errc::VerificationFailed, "tower does not reach x_m");
    const auto P_int = integral_coefficients(conv.Phat, denominator_lcm(conv.Phat));
    const auto Q_int = integral_coefficients(conv.Qhat, denominator_lcm(conv.Qhat));
    const BigInt dP = denominator_lcm(conv.Phat), dQ = denominator_lcm(conv.Qhat);

    const BigInt q_res = mod_floor(dP * eval_integral(Q_int, y), M);
    BigInt prod = 1, ak = mod_floor(a, M);
    for (std::uint64_t k = 0; k <= rec.n_m && prod != 0; ++k) {
        prod = mod_floor(prod * (ak - 1), M);
        ak = ak * ak % M;
    }
    const BigInt p_res = mod_floor(dQ * prod * eval_integral(P_int, y), M);
    rec.q_divisible = q_res == 0;
    rec.p_divisible = p_res == 0;
    return rec;
}

ApproxPair reduce(const ApproxPair& pair, const BigInt& p, unsigned k) {
    const BigInt d = power(p, k);
    if (!mpz_divisible_p(pair.p_int.get_mpz_t(), d.get_mpz_t()) || !mpz_divisible_p(pair.q_int.get_mpz_t(), d.get_mpz_t()))
        throw Error(Errc::NotDivisible, p.get_str() + "^" + std::to_string(k) + " does not divide both integers");
    ApproxPair out = pair;
    out.p_int /= d;
    out.q_int /= d;
    out.divisor *= d;
    return out;
}

std::vector<ScanRow> scan(long a_min, long a_max, const ScanOptions& opts, tm::ClosedForm& cf) {
    if (a_min < 2 || a_min > a_max) throw Error(Errc::InvalidArgument, "scan needs 2 <= a_min <= a_max");
    std::vector<std::pair<BigInt, long>> usable;  // (p, t) in pool order
    for (const auto& p : opts.pool) {
        auto res = acceptable(p, opts.t_max, cf);
        if (res.certificate) usable.emplace_back(p, res.certificate->t);
    }

    std::vector<ScanRow> rows(static_cast<std::size_t>(a_max - a_min + 1));
    auto work = [&](std::size_t i) {
        ScanRow row;
        row.a = a_min + static_cast<long>(i);
        for (std::uint64_t n = 0; n <= opts.n_max && !row.p; ++n) {
            for (const auto& [p, t] : usable) {
                if (exactly_divides_tower(row.a, n, p)) {
                    row.p = p;
                    row.n = n;
                    row.t = t;
                    break;
                }
            }
        }
        rows[i] = std::move(row);
    };

    const unsigned threads = std::max(1U, opts.threads);
    if (threads == 1) {
        for (std::size_t i = 0; i < rows.size(); ++i) work(i);
        return rows;
    }
    std::atomic<std::size_t> next{0};
    {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < threads; ++w)
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < rows.size(); i = next++) work(i);
            });
    }
    return rows;
}

RealCF real_cf(const DyadicInterval& x, std::size_t max_terms) {
    RealCF out;
    const BigInt den0 = pow2(x.scale());
    BigInt ln = x.lo_mantissa(), ld = den0;
    BigInt hn = x.hi_mantissa(), hd = den0;
    while (out.quotients.size() < max_terms + 1) {
        const BigInt ql = fdiv(ln, ld), qh = fdiv(hn, hd);
        if (ql != qh) {
            out.truncated = true;
            return out;
        }
        out.quotients.push_back(ql);
        const BigInt rl = ln - ql * ld, rh = hn - qh * hd;
        if (rl == 0 || rh == 0) {
            // An endpoint is rational with this exact expansion; nothing
            // further holds for the whole interval.
            out.truncated = out.quotients.size() < max_terms + 1;
            return out;
        }
        ln = std::exchange(ld, rl);
        hn = std::exchange(hd, rh);
    }
    return out;
}

}  // namespace tmcf::approx
