#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "tmcf/numtheory.hpp"
#include "tmcf/thue_morse.hpp"

using namespace tmcf;
using namespace tmcf::nt;

namespace {

Errc code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("no exception");
    return Errc::InvalidArgument;
}

}  // namespace

TEST_CASE("primality") {
    for (std::uint64_t n = 0; n < 5000; ++n) CHECK_MESSAGE(is_prime_u64(n) == oracle::trial_prime(n), n);
    CHECK(is_prime_u64(18446744073709551557ULL));
    CHECK_FALSE(is_prime_u64(3215031751ULL));  // strong pseudoprime to bases 2, 3, 5, 7
    CHECK(code_of([] { is_prime(BigInt("18446744073709551616")); }) == Errc::InvalidArgument);
    CHECK_THROWS_AS(PrimePower(9, 2), Error);
    CHECK_THROWS_AS(PrimePower(3, 0), Error);
    CHECK(PrimePower(3, 4).totient() == 54);
}

TEST_CASE("valuation") {
    CHECK(valuation(6, 3).value == 1);
    CHECK(valuation(6, 3).exact_div);
    CHECK(valuation(10, 5).exact_div);
    CHECK(valuation(1, 7).value == 0);
    CHECK(valuation(make_rat(5, 9), 3).value == -2);
    CHECK(valuation(54, 3).value == 3);
    CHECK_FALSE(valuation(54, 3).exact_div);
    CHECK(code_of([] { valuation(0, 3); }) == Errc::ZeroInput);
}

TEST_CASE("primitive roots") {
    CHECK(is_primitive_root(2, PrimePower(3, 2)));
    CHECK_FALSE(is_primitive_root(2, PrimePower(7, 2)));
    CHECK_FALSE(is_primitive_root(2, PrimePower(113, 2)));
    CHECK(code_of([] { is_primitive_root(6, PrimePower(3, 2)); }) == Errc::NotCoprime);
    for (std::uint64_t p : {3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43}) {
        const std::uint64_t mod = p * p;
        for (std::uint64_t g = 2; g < 12; ++g) {
            if (g % p == 0) continue;
            const bool expect = oracle::naive_order(g, mod) == p * (p - 1);
            CHECK_MESSAGE(is_primitive_root(g, PrimePower(p, 2)) == expect, g << " mod " << mod);
        }
    }
}

TEST_CASE("Hensel lifting") {
    const Poly Q9 = tm::canonical(9).Qhat;
    CHECK(hensel_root(Q9, PrimePower(3, 3), 1).root == 16);
    CHECK(hensel_root(Q9, PrimePower(3, 2), 1).root == 7);
    CHECK(hensel_root(Q9, PrimePower(3, 1), 1).root == 1);
    CHECK(hensel_root(Q9, PrimePower(3, 3), 1).differs_mod_p2);
    for (unsigned m = 1; m <= 4; ++m) {
        const long M = static_cast<long>(std::pow(3, m));
        int roots = 0;
        for (long x = 1; x < M; x += 3)
            if (poly_eval_mod(Q9, x, 3, m) == 0) ++roots;
        CHECK(roots == 1);
        const auto h = hensel_root(Q9, PrimePower(3, m), 1);
        CHECK(poly_eval_mod(Q9, h.root, 3, m) == 0);
    }
    const Poly Q11 = tm::canonical(11).Qhat;
    const auto h5 = hensel_root(Q11, PrimePower(5, 6), 1);
    CHECK(poly_eval_mod(Q11, h5.root, 5, 6) == 0);
    CHECK(code_of([&] { hensel_root(Q9, PrimePower(3, 3), 0); }) == Errc::NotARoot);
    CHECK(code_of([] { hensel_root(Poly{1, -2, 1}, PrimePower(3, 3), 1); }) == Errc::SingularRoot);
}

TEST_CASE("towers") {
    CHECK(tower_mod(2, 3, PrimePower(3, 2)) == 4);
    CHECK(tower_mod(2, 0, PrimePower(3, 2)) == 2);
    CHECK(tower_mod(2, 8, PrimePower(3, 3)) == 16);
    CHECK(code_of([] { tower_mod(6, 2, PrimePower(3, 2)); }) == Errc::NotCoprime);
    for (unsigned m = 1; m <= 6; ++m) {
        const PrimePower pp(3, m);
        const BigInt M = pp.modulus();
        for (long a : {2, 4, 5, 7}) {
            // Period of n -> a^(2^n) once the 2-adic part of ord(a) is absorbed.
            const auto ord = oracle::naive_order(static_cast<std::uint64_t>(a), M.get_ui());
            std::uint64_t odd = ord;
            while (odd % 2 == 0) odd /= 2;
            const std::uint64_t T = odd == 1 ? 1 : oracle::naive_order(2, odd);
            for (std::uint64_t n = 8; n < 20; ++n) {
                CHECK(tower_mod(a, n, pp) == oracle::naive_tower(a, n, M));
                CHECK(tower_mod(a, n, pp) == tower_mod(a, n + T, pp));
            }
        }
    }
}

TEST_CASE("discrete logarithms") {
    CHECK(*dlog2(4, PrimePower(3, 2)) == 2);
    CHECK(*dlog2(16, PrimePower(3, 3)) == 4);
    CHECK(code_of([] { dlog2(3, PrimePower(7, 2)); }) == Errc::NotPrimitiveRoot);
    for (std::uint64_t p : {3, 5, 11, 13, 19, 29}) {
        for (unsigned m = 1; m <= 3; ++m) {
            const PrimePower pp(p, m);
            const std::uint64_t M = pp.modulus().get_ui();
            for (std::uint64_t x = 1; x < M && x < 400; ++x) {
                if (x % p == 0) continue;
                CHECK(*dlog2(x, pp) == oracle::naive_dlog(2, x, M));
            }
        }
    }
    // 3 || x - 1 forces an even log prime to 3.
    for (unsigned m = 2; m <= 5; ++m) {
        const PrimePower pp(3, m);
        const long M = pp.modulus().get_si();
        for (long x = 4; x < M; x += 3) {
            if ((x - 1) % 9 == 0) continue;
            const BigInt k = *dlog2(x, pp);
            CHECK(k % 2 == 0);
            CHECK(k % 3 != 0);
        }
    }
    CHECK(*bsgs(2, 16, 27, 18) == 4);
    CHECK_FALSE(bsgs(2, 3, 7, 7).has_value());
}

TEST_CASE("double exponential congruence") {
    const auto s = solve_double_exp(16, PrimePower(3, 3));
    CHECK(s.n == 2);
    CHECK(s.period == 6);
    CHECK(solve_double_exp(7, PrimePower(3, 2)).n == 2);
    CHECK(code_of([] { solve_double_exp(10, PrimePower(3, 3)); }) == Errc::NoSolution);
    CHECK(code_of([] { solve_double_exp(28, PrimePower(3, 3)); }) == Errc::NoSolution);
    CHECK(code_of([] { solve_double_exp(4, PrimePower(3, 1)); }) == Errc::InvalidArgument);

    std::mt19937_64 rng(23);
    for (unsigned m : {3U, 4U, 5U}) {
        const PrimePower pp(3, m);
        const long M = pp.modulus().get_si();
        for (int i = 0; i < 100; ++i) {
            long x;
            do {
                x = std::uniform_int_distribution<long>(1, M - 1)(rng);
            } while (oracle::naive_valuation(BigInt(x - 1), 3) != 1);
            const auto r = solve_double_exp(x, pp);
            CHECK(r.n >= 1);
            CHECK(tower_mod(2, r.n, pp) == x);
            CHECK(BigInt(static_cast<unsigned long>(r.n)) <= 2 * BigInt(static_cast<long>(std::pow(3, m - 2))));
            CHECK(tower_mod(2, r.n + r.period.get_ui(), pp) == x);
            for (std::uint64_t n = 1; n < r.n; ++n) CHECK(tower_mod(2, n, pp) != x);
        }
    }
}

TEST_CASE("first congruence lemma by brute force") {
    // Every even t prime to 3 is a power of two mod 2 * 3^m.
    for (unsigned m = 1; m <= 4; ++m) {
        const long mod = 2 * static_cast<long>(std::pow(3, m));
        const long bound = 2 * static_cast<long>(std::pow(3, m - 1));
        for (long t = 2; t < mod; t += 2) {
            if (t % 3 == 0) continue;
            bool found = false;
            long pw = 1;
            for (long n = 0; n <= bound && !found; ++n) {
                found = pw % mod == t;
                pw = pw * 2 % mod;
            }
            CHECK_MESSAGE(found, t << " mod " << mod);
            const auto sol = solve_power_of_two(t, mod, 0);
            REQUIRE(sol);
            CHECK(pow_mod(2, BigInt(static_cast<unsigned long>(sol->n)), mod) == t);
        }
    }
}

TEST_CASE("factoring helpers") {
    CHECK(prime_factors(360) == std::vector<BigInt>{2, 3, 5});
    CHECK(multiplicative_order(2, 27) == 18);
    BigInt x = 1;
    for (int i = 0; i < 200; ++i) x = x * 3 % 1000;
    CHECK(pow_mod(3, 200, 1000) == x);
}
