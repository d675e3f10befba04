#pragma once

// Modular toolkit: valuations, primality, primitive roots, Hensel lifting,
// towers a^(2^n) and discrete logarithms base 2 modulo prime powers.

#include <cstdint>
#include <optional>
#include <vector>

#include "tmcf/exactpoly.hpp"

namespace tmcf::nt {

bool is_prime_u64(std::uint64_t n);
/// Deterministic Miller-Rabin; throws InvalidArgument for n >= 2^64.
bool is_prime(const BigInt& n);

struct PrimePower {
    BigInt p;
    unsigned m = 1;

    /// Validates primality of p and m >= 1.
    PrimePower(BigInt prime, unsigned exponent);

    BigInt modulus() const;
    /// phi(p^m) = (p-1) p^(m-1)
    BigInt totient() const;
};

struct ValuationResult {
    long value = 0;
    bool exact_div = false;
};

/// p-adic valuation of a non-zero rational (negative when p divides the
/// denominator). Throws ZeroInput for zero.
ValuationResult valuation(const Rat& x, const BigInt& p);

/// Distinct prime factors by trial division.
std::vector<BigInt> prime_factors(BigInt n);

BigInt pow_mod(const BigInt& base, const BigInt& exp, const BigInt& mod);

/// Multiplicative order of g modulo `mod` (g must be a unit).
BigInt multiplicative_order(const BigInt& g, const BigInt& mod);

/// g generates (Z/p^m)^*. Throws NotCoprime when p | g.
bool is_primitive_root(const BigInt& g, const PrimePower& pp);

struct HenselLift {
    BigInt root;
    /// root != seed (mod p^2); false when m < 2.
    bool differs_mod_p2 = false;
};

/// Unique x = seed (mod p) with P(x) = 0 (mod p^m), by Newton iteration.
/// Throws NotARoot, SingularRoot or NonInvertibleDenominator.
HenselLift hensel_root(const Poly& P, const PrimePower& pp, const BigInt& seed);

/// a^(2^n) mod p^m by n squarings. Throws NotCoprime when p | a.
BigInt tower_mod(const BigInt& a, std::uint64_t n, const PrimePower& pp);

/// Smallest d in [0, bound) with g^d = h (mod mod), baby-step giant-step.
std::optional<BigInt> bsgs(const BigInt& g, const BigInt& h, const BigInt& mod, const BigInt& bound);

/// log_2 x in (Z/p^m)^*, in [0, phi(p^m)), by Pohlig-Hellman. Throws
/// NotPrimitiveRoot unless 2 is a primitive root mod p^2, NotCoprime when
/// p | x.
std::optional<BigInt> dlog2(const BigInt& x, const PrimePower& pp);

struct PowerOfTwoSolution {
    std::uint64_t n = 0;
    /// Solutions continue at n + k * period once n >= v_2(modulus).
    BigInt period;
};

/// Least n >= n_min with 2^n = target (mod modulus).
std::optional<PowerOfTwoSolution> solve_power_of_two(const BigInt& target, const BigInt& modulus, std::uint64_t n_min);

/// Least n >= 1 with 2^(2^n) = x (mod p^m). Requires m >= 2, p || x - 1 and
/// 2 primitive mod p^2; a violated precondition or an empty solution set is
/// reported as NoSolution (NotPrimitiveRoot for the generator condition).
PowerOfTwoSolution solve_double_exp(const BigInt& x, const PrimePower& pp);

}  // namespace tmcf::nt
