#include "tmcf/laurent.hpp"

#include <algorithm>
#include <mutex>

namespace tmcf {

struct LaurentTail::State {
    long start;
    Generator gen;
    std::optional<std::pair<Poly, Poly>> source;
    std::mutex mu;
    std::vector<Rat> memo;

    Rat get(long k) {
        if (k < start) return Rat(0);
        const auto need = static_cast<std::size_t>(k - start) + 1;
        std::lock_guard lock(mu);
        while (memo.size() < need) {
            Rat next = gen(std::span<const Rat>(memo), start + static_cast<long>(memo.size()));
            memo.push_back(std::move(next));
        }
        return memo[need - 1];
    }
};

LaurentTail::LaurentTail(long start_index, Generator gen) : state_(std::make_shared<State>()) {
    state_->start = start_index;
    state_->gen = std::move(gen);
}

LaurentTail LaurentTail::from_coefficients(long start_index, std::vector<Rat> coeffs) {
    auto data = std::make_shared<const std::vector<Rat>>(std::move(coeffs));
    return LaurentTail(start_index, [data](std::span<const Rat> prior, long) {
        return prior.size() < data->size() ? (*data)[prior.size()] : Rat(0);
    });
}

LaurentTail LaurentTail::from_rational(const Poly& num, const Poly& den) {
    if (den.is_zero()) throw Error(Errc::InvalidArgument, "rational tail with zero denominator");
    const int n = den.degree();
    // Start at deg Q - deg P; a zero numerator yields the zero series.
    const long start = num.is_zero() ? 1 : static_cast<long>(n - num.degree());
    auto pn = std::make_shared<const Poly>(num);
    auto qd = std::make_shared<const Poly>(den);
    // (Q*S)_{n-s} = q_n c_s + sum_{i<n} q_i c_{s-n+i} = P_{n-s}
    LaurentTail tail(start, [pn, qd, start, n](std::span<const Rat> prior, long s) {
        Rat acc = (n - s >= 0) ? pn->coeff(static_cast<int>(n - s)) : Rat(0);
        for (int i = 0; i < n; ++i) {
            long j = s - n + i;
            if (j < start) continue;
            acc -= qd->coeff(i) * prior[static_cast<std::size_t>(j - start)];
        }
        return Rat(acc / qd->leading());
    });
    tail.state_->source = std::make_pair(num, den);
    return tail;
}

long LaurentTail::start_index() const { return state_->start; }

Rat LaurentTail::coeff(long k) const { return state_->get(k); }

std::vector<Rat> LaurentTail::coefficients_through(long K) const {
    std::vector<Rat> out;
    for (long k = state_->start; k <= K; ++k) out.push_back(state_->get(k));
    return out;
}

std::optional<long> LaurentTail::leading_index(long K) const {
    for (long k = state_->start; k <= K; ++k)
        if (state_->get(k) != 0) return k;
    return std::nullopt;
}

std::optional<long> LaurentTail::degree(long K) const {
    auto h = leading_index(K);
    if (!h) return std::nullopt;
    return -*h;
}

const std::optional<std::pair<Poly, Poly>>& LaurentTail::rational_source() const { return state_->source; }

const LaurentTail& tm_series() {
    static const LaurentTail series(1, [](std::span<const Rat> prior, long) {
        return Rat(tm_bit(prior.size()) ? -1 : 1);
    });
    return series;
}

// ---------------------------------------------------------------------------

Rat ResidualReport::coeff(long k) const {
    if (k < first_index || k > checked_through) return Rat(0);
    return coeffs[static_cast<std::size_t>(k - first_index)];
}

Rat ResidualReport::leading() const { return degree ? coeff(-*degree) : Rat(0); }

long default_residual_depth(const Poly& Q) { return 2L * std::max(Q.degree(), 0) + 16; }

ResidualReport residual(const Poly& P, const Poly& Q, long K, const LaurentTail& tail) {
    ResidualReport rep;
    const long h = tail.start_index();
    long first = 1;
    if (!P.is_zero()) first = std::min(first, -static_cast<long>(P.degree()));
    if (!Q.is_zero()) first = std::min(first, h - static_cast<long>(Q.degree()));
    rep.first_index = first;
    rep.checked_through = K;
    const auto& q = Q.coefficients();
    for (long k = first; k <= K; ++k) {
        // z^j * c_i z^{-i} lands on index i - j.
        Rat acc(0);
        for (std::size_t j = 0; j < q.size(); ++j) {
            if (q[j] == 0) continue;
            long i = k + static_cast<long>(j);
            if (i < h) continue;
            acc += q[j] * tail.coeff(i);
        }
        if (k <= 0) acc -= P.coeff(static_cast<int>(-k));
        if (!rep.degree && acc != 0) rep.degree = -k;
        rep.coeffs.push_back(std::move(acc));
    }
    return rep;
}

ResidualReport residual(const Poly& P, const Poly& Q) { return residual(P, Q, default_residual_depth(Q)); }

}  // namespace tmcf
