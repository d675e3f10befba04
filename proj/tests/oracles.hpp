#pragma once

// Slow, obviously-correct reference computations. Nothing here calls into the
// library except for the basic BigInt/Rat/Poly containers.

#include <cstdint>
#include <vector>

#include "tmcf/exactpoly.hpp"

namespace oracle {

using tmcf::BigInt;
using tmcf::Poly;
using tmcf::Rat;

/// Coefficients c_1..c_K of z^-1 prod_{n>=0} (1 - z^{-2^n}), by multiplying
/// out the truncated product.
std::vector<int> tm_product_coeffs(long K);

/// Thue-Morse by the substitution 0 -> 01, 1 -> 10.
std::vector<int> tm_word(std::size_t length);

/// Q * f - P as coefficients of z^-k for k = -deg Q .. K, with f given by
/// its coefficients c_1.. (index k-1).
std::vector<Rat> naive_residual(const Poly& P, const Poly& Q, const std::vector<int>& f, long K);

/// deg(Q f - P) scanned through K; returns K+1 when everything vanishes.
long naive_residual_order(const Poly& P, const Poly& Q, const std::vector<int>& f, long K);

/// Schoolbook polynomial product on raw coefficient vectors.
std::vector<Rat> naive_mul(const std::vector<Rat>& a, const std::vector<Rat>& b);

bool trial_prime(std::uint64_t n);
std::uint64_t naive_order(std::uint64_t g, std::uint64_t mod);
/// Smallest d >= 0 with g^d = h mod `mod`, or -1.
long naive_dlog(std::uint64_t g, std::uint64_t h, std::uint64_t mod);
/// LONG_MAX for zero.
long naive_valuation(BigInt x, long p);

/// a^(2^n) mod M by n squarings of a machine word... done in BigInt.
BigInt naive_tower(const BigInt& a, std::uint64_t n, const BigInt& M);

/// Least n >= n_from with Qhat(a^(2^(n+1))) = 0 mod M, by evaluating the
/// integer-scaled polynomial; -1 if none up to n_to.
long brute_witness(const Poly& Qhat, const BigInt& a, const BigInt& M, long n_from, long n_to);

/// Euclid on num/den.
std::vector<BigInt> rational_cf(BigInt num, BigInt den);

/// Partial sum sum_{i<K} (-1)^{t_i} a^-(i+1) as an exact rational; the
/// remainder is at most a^-K / (a-1) in absolute value.
Rat ftmm_partial(const BigInt& a, long K);

/// f~(a) as a double, summing 60 terms.
double ftmm_double(double a);

}  // namespace oracle
