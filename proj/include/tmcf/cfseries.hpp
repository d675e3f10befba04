#pragma once

// Continued fractions of Laurent series in 1/z: partial-quotient extraction,
// the convergent recurrences, monic normalisation and the convergent
// criterion deg(Q f - P) < -deg Q.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "tmcf/laurent.hpp"

namespace tmcf::cf {

struct ConvergentPair {
    Poly P;
    Poly Q;
    /// Leading coefficient of P (zero when P is zero).
    Rat rho;
    bool canonical = false;

    static ConvergentPair make(Poly P, Poly Q);
    friend bool operator==(const ConvergentPair& a, const ConvergentPair& b) {
        return a.P == b.P && a.Q == b.Q;
    }
};

struct CFPrefix {
    /// Raw (non-normalised) partial quotients a_1, a_2, ...
    std::vector<Poly> quotients;
    std::vector<ConvergentPair> pairs;
    std::size_t verified_count = 0;
    /// The remainder vanished and the last pair equals the rational source
    /// exactly: the expansion is finite and complete.
    bool terminated = false;
};

struct ExtractOptions {
    /// How many coefficients past the start of a remainder are scanned for
    /// its leading term before giving up.
    long scan_budget = 64;
};

CFPrefix extract_cf(const LaurentTail& tail, std::size_t count, const ExtractOptions& opts = {});

/// P_{n+1} = a_{n+1} P_n + P_{n-1}, same for Q; seeds P_0 = 0, Q_0 = 1,
/// P_1 = 1, Q_1 = a_1. Returns pairs 1..quotients.size().
std::vector<ConvergentPair> pq_recurrence(std::span<const Poly> quotients);

/// Scale so that P is monic. Throws ZeroNumerator when P = 0.
ConvergentPair canonicalize(const ConvergentPair& pair);

struct ConvergenceCheck {
    bool convergent = false;
    /// Residual degree; empty when the residual vanishes through the depth
    /// examined (then it is below -depth).
    std::optional<long> residual_degree;
    Rat leading;
    long depth = 0;
};

ConvergenceCheck is_convergent(const Poly& P, const Poly& Q, const LaurentTail& tail = tm_series());

/// beta_{n+1} = rho_{n-1} / rho_{n+1} read off the raw pairs, for n >= 2.
/// Entry i is beta_{i+3}.
std::vector<Rat> implied_betas(const CFPrefix& prefix);

}  // namespace tmcf::cf
