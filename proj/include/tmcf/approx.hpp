#pragma once

// Integer approximation pairs to f~(a) built from functional convergents,
// certified real values, quality measurement and the number-theoretic
// certificates that let the pairs be reduced by growing powers of p.

#include <cstdint>
#include <optional>
#include <vector>

#include "tmcf/dyadic.hpp"
#include "tmcf/numtheory.hpp"
#include "tmcf/thue_morse.hpp"

namespace tmcf::approx {

inline constexpr unsigned long kDefaultSizeLimitBits = 10'000'000;

/// p_int / q_int approximates f~(a), with
///   p_int = d_P d_Q prod_{k=0..n} (a^(2^k) - 1) Phat_t(a^(2^(n+1)))
///   q_int = d_P d_Q Qhat_t(a^(2^(n+1)))
/// where d_P, d_Q clear the denominators of Phat_t, Qhat_t. After reduce()
/// both integers have been divided by `divisor`.
struct ApproxPair {
    std::uint64_t n = 0;
    long t = 0;
    BigInt a;
    BigInt p_int;
    BigInt q_int;
    BigInt d_P = 1;
    BigInt d_Q = 1;
    BigInt divisor = 1;
};

/// Polynomial form (prod_{k=0..n} (z^(2^k) - 1) Phat_t(z^(2^(n+1))), Qhat_t(z^(2^(n+1)))).
std::pair<Poly, Poly> tilde_polynomials(std::uint64_t n, long t, tm::ClosedForm& cf = tm::ClosedForm::shared());

/// Throws SizeLimit when the estimated size of q_int exceeds the limit.
ApproxPair tilde_pair(std::uint64_t n, long t, const BigInt& a, unsigned long size_limit_bits = kDefaultSizeLimitBits,
                      tm::ClosedForm& cf = tm::ClosedForm::shared());

struct SeriesValue {
    DyadicInterval value;
    unsigned long terms = 0;
};

/// f~(a) = sum_{i>=0} (-1)^{t_i} a^{-(i+1)} to width <= 2^-bits, using the
/// tail bound a^-K / (a - 1) after K terms.
SeriesValue ftmm_series(const BigInt& a, unsigned long bits);
DyadicInterval ftmm_value(const BigInt& a, unsigned long bits);

/// Thue-Morse constant sum t_k 2^{-(k+1)} to width 2^-bits. Checks that the
/// result meets (1 - f~(2)) / 2 and throws VerificationFailed otherwise.
DyadicInterval tau_tm(unsigned long bits);

/// 2 sum_{k>=0} 2^{-2^k} to width 2^-bits.
DyadicInterval lacunary_constant(unsigned long bits);

struct QualityReport {
    /// Bracket for q_int * |q_int f~(a) - p_int|.
    DyadicInterval bracket;
    unsigned long bits_used = 0;
    unsigned long tail_terms = 0;

    Rat lower() const { return bracket.lower(); }
    Rat upper() const { return bracket.upper(); }
};

unsigned long min_quality_bits(const ApproxPair& pair);

/// Throws InsufficientPrecision when bits < 2 * bitlength(q_int) + 64.
QualityReport quality(const ApproxPair& pair, unsigned long bits);

struct AcceptabilityCertificate {
    BigInt p;
    long t = 0;
    nt::ValuationResult q1_valuation;
    bool qprime_nonzero = false;
    bool primroot = false;
    Rat q1;       // Qhat_t(1)
    Rat qprime1;  // Qhat_t'(1)
};

struct AcceptabilityResult {
    BigInt p;
    bool primroot = false;
    std::optional<AcceptabilityCertificate> certificate;
    /// Indices passed over because some denominator of Qhat_t shares a factor with p.
    std::vector<long> skipped;
};

/// Smallest t <= t_max with: 2 primitive mod p^2, p || Qhat_t(1),
/// Qhat_t'(1) != 0 mod p, denominators of Qhat_t prime to p.
AcceptabilityResult acceptable(const BigInt& p, long t_max, tm::ClosedForm& cf = tm::ClosedForm::shared());

/// Conditions 2-4 for one fixed t.
std::optional<AcceptabilityCertificate> check_acceptable(const BigInt& p, long t,
                                                         tm::ClosedForm& cf = tm::ClosedForm::shared());

struct WitnessRecord {
    BigInt p;
    long t = 0;
    BigInt a;
    unsigned m = 0;
    BigInt x_m;
    std::uint64_t n_m = 0;
    /// Least n >= 0 with a^(2^(n+1)) = x_m before the shift past m.
    std::uint64_t n_min = 0;
    BigInt period;
    bool bound_ok = false;
    bool q_divisible = false;
    bool p_divisible = false;

    bool ok() const { return bound_ok && q_divisible && p_divisible && n_m > m; }
};

inline constexpr std::uint64_t kDefaultWitnessSearchBound = 50'000'000;

/// Tower index n_m > m with p^m dividing both scaled tilde integers at
/// (n_m, t, a), verified modularly. Requires m >= 3 and (p, t) acceptable.
WitnessRecord witness(const BigInt& p, long t, const BigInt& a, unsigned m,
                      std::uint64_t search_bound = kDefaultWitnessSearchBound,
                      tm::ClosedForm& cf = tm::ClosedForm::shared());

/// (p_int / p^k, q_int / p^k); throws NotDivisible.
ApproxPair reduce(const ApproxPair& pair, const BigInt& p, unsigned k);

struct ScanRow {
    BigInt a;
    std::optional<BigInt> p;
    std::uint64_t n = 0;
    long t = 0;
};

struct ScanOptions {
    std::vector<BigInt> pool;
    long t_max = 64;
    std::uint64_t n_max = 8;
    unsigned threads = 1;
};

/// For each a, the first (n, p) in (n ascending, pool order) with
/// p || a^(2^n) - 1 and p acceptable.
std::vector<ScanRow> scan(long a_min, long a_max, const ScanOptions& opts, tm::ClosedForm& cf = tm::ClosedForm::shared());

struct RealCF {
    /// a_0, a_1, ... all certified for every real in the interval.
    std::vector<BigInt> quotients;
    /// Stopped because the endpoints disagreed (or one terminated) before
    /// max_terms quotients past a_0 were produced.
    bool truncated = false;
};

/// Gauss map on both endpoints at once; emits quotients while they agree.
RealCF real_cf(const DyadicInterval& x, std::size_t max_terms);

}  // namespace tmcf::approx
