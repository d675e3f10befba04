#include "tmcf/cfseries.hpp"

#include <algorithm>

namespace tmcf::cf {

ConvergentPair ConvergentPair::make(Poly P, Poly Q) {
    ConvergentPair pair;
    pair.rho = P.is_zero() ? Rat(0) : P.leading();
    pair.canonical = P.is_monic();
    pair.P = std::move(P);
    pair.Q = std::move(Q);
    return pair;
}

namespace {

// 1/g = z^h * sum_{j>=0} d_j z^{-j} where c_h is the leading coefficient of g:
// d_0 = 1/c_h, d_j = -(sum_{i=1..j} c_{h+i} d_{j-i}) / c_h.
LaurentTail reciprocal(const LaurentTail& g, long h) {
    const Rat lead = g.coeff(h);
    return LaurentTail(-h, [g, h, lead](std::span<const Rat> prior, long index) {
        const long j = index + h;
        if (j == 0) return Rat(1 / lead);
        Rat acc(0);
        for (long i = 1; i <= j; ++i) acc += g.coeff(h + i) * prior[static_cast<std::size_t>(j - i)];
        return Rat(-acc / lead);
    });
}

bool same_fraction(const Poly& P1, const Poly& Q1, const Poly& P2, const Poly& Q2) { return P1 * Q2 == P2 * Q1; }

}  // namespace

CFPrefix extract_cf(const LaurentTail& tail, std::size_t count, const ExtractOptions& opts) {
    for (long k = tail.start_index(); k <= 0; ++k)
        if (tail.coeff(k) != 0) throw Error(Errc::InvalidArgument, "extract_cf needs a tail of negative degree");

    CFPrefix out;
    LaurentTail g = tail;
    Poly P_prev{1}, Q_prev{};  // P_{-1}, Q_{-1}
    Poly P_cur{}, Q_cur{1};    // P_0, Q_0

    while (out.quotients.size() < count) {
        const long from = std::max(g.start_index(), 1L);
        auto h = g.leading_index(from - 1 + opts.scan_budget);
        if (!h) {
            const auto& src = tail.rational_source();
            if (src && same_fraction(P_cur, Q_cur, src->first, src->second)) {
                out.terminated = true;
                break;
            }
            throw Error(Errc::PrecisionExhausted, "remainder after " + std::to_string(out.quotients.size()) +
                                                      " quotients vanishes through the scan budget");
        }

        LaurentTail recip = reciprocal(g, *h);
        std::vector<Rat> a(static_cast<std::size_t>(*h) + 1);
        for (long e = 0; e <= *h; ++e) a[static_cast<std::size_t>(e)] = recip.coeff(-e);
        Poly quotient(std::move(a));

        g = LaurentTail(1, [recip](std::span<const Rat>, long index) { return recip.coeff(index); });

        Poly P_next = quotient * P_cur + P_prev;
        Poly Q_next = quotient * Q_cur + Q_prev;
        P_prev = std::exchange(P_cur, P_next);
        Q_prev = std::exchange(Q_cur, Q_next);

        out.quotients.push_back(std::move(quotient));
        out.pairs.push_back(ConvergentPair::make(P_cur, Q_cur));

        if (out.verified_count + 1 == out.pairs.size() && is_convergent(P_cur, Q_cur, tail).convergent)
            ++out.verified_count;
    }
    return out;
}

std::vector<ConvergentPair> pq_recurrence(std::span<const Poly> quotients) {
    std::vector<ConvergentPair> pairs;
    pairs.reserve(quotients.size());
    Poly P_prev{1}, Q_prev{};
    Poly P_cur{}, Q_cur{1};
    for (const auto& a : quotients) {
        if (a.degree() < 1) throw Error(Errc::InvalidArgument, "partial quotient of degree < 1");
        Poly P_next = a * P_cur + P_prev;
        Poly Q_next = a * Q_cur + Q_prev;
        P_prev = std::exchange(P_cur, std::move(P_next));
        Q_prev = std::exchange(Q_cur, std::move(Q_next));
        pairs.push_back(ConvergentPair::make(P_cur, Q_cur));
    }
    return pairs;
}

ConvergentPair canonicalize(const ConvergentPair& pair) {
    if (pair.P.is_zero()) throw Error(Errc::ZeroNumerator, "cannot normalise a zero numerator");
    const Rat lead = pair.P.leading();
    ConvergentPair out = ConvergentPair::make(pair.P / lead, pair.Q / lead);
    out.canonical = true;
    return out;
}

ConvergenceCheck is_convergent(const Poly& P, const Poly& Q, const LaurentTail& tail) {
    if (Q.is_zero()) throw Error(Errc::InvalidArgument, "is_convergent with zero denominator");
    ConvergenceCheck out;
    out.depth = default_residual_depth(Q);
    ResidualReport rep = residual(P, Q, out.depth, tail);
    out.residual_degree = rep.degree;
    out.leading = rep.leading();
    // Everything through index deg Q vanishing is exactly deg < -deg Q.
    out.convergent = !rep.degree || *rep.degree < -static_cast<long>(Q.degree());
    return out;
}

std::vector<Rat> implied_betas(const CFPrefix& prefix) {
    std::vector<Rat> out;
    // pairs[i] is convergent i+1
    for (std::size_t n = 2; n + 1 <= prefix.pairs.size(); ++n) {
        const Rat& rho_prev = prefix.pairs[n - 2].rho;
        const Rat& rho_next = prefix.pairs[n].rho;
        if (rho_next == 0) break;
        out.push_back(rho_prev / rho_next);
    }
    return out;
}

}  // namespace tmcf::cf
