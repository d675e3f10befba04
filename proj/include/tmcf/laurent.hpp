#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "tmcf/exactpoly.hpp"

namespace tmcf {

/// Lazily evaluated Laurent series sum_{k >= h} c_k z^{-k}.
///
/// Coefficients are produced in index order by a generator that sees every
/// coefficient already computed, which is enough for recursive streams such
/// as reciprocals and long division. Results are memoized; the memo is
/// append-only and guarded by a mutex, so a tail may be shared between
/// threads. Copies share the same memo.
///
/// Degree follows the usual convention for series in 1/z: if c_{h'} is the
/// first non-zero coefficient, deg = -h'.
class LaurentTail {
public:
    /// prior[i] holds c_{h+i}; the generator returns c_index.
    using Generator = std::function<Rat(std::span<const Rat> prior, long index)>;

    LaurentTail(long start_index, Generator gen);

    /// Finite series with the given coefficients from start_index on.
    static LaurentTail from_coefficients(long start_index, std::vector<Rat> coeffs);
    /// Expansion of num/den at infinity. The pair is kept so consumers can
    /// recognise exact termination.
    static LaurentTail from_rational(const Poly& num, const Poly& den);

    long start_index() const;
    /// c_k; zero for k below the start index.
    Rat coeff(long k) const;
    /// c_h .. c_K (empty when K < h).
    std::vector<Rat> coefficients_through(long K) const;
    /// Smallest index k <= K with c_k != 0, if any.
    std::optional<long> leading_index(long K) const;
    /// -leading_index, or nothing when every coefficient through K vanishes.
    std::optional<long> degree(long K) const;

    const std::optional<std::pair<Poly, Poly>>& rational_source() const;

private:
    struct State;
    std::shared_ptr<State> state_;
};

/// f~(z) = sum_{i >= 0} (-1)^{t_i} z^{-(i+1)}: start index 1, every
/// coefficient +-1. Process-wide shared instance.
const LaurentTail& tm_series();

struct ResidualReport {
    /// Index of coeffs[0]; indices <= 0 are non-negative powers of z.
    long first_index = 0;
    long checked_through = 0;
    std::vector<Rat> coeffs;
    /// -(first index with non-zero coefficient), or nothing when the series
    /// vanishes through checked_through ("degree below -K").
    std::optional<long> degree;

    Rat coeff(long k) const;
    /// Coefficient at -degree; zero when the degree is unknown.
    Rat leading() const;
};

long default_residual_depth(const Poly& Q);

/// Q(z) * tail - P(z) through index K, by finite convolution.
ResidualReport residual(const Poly& P, const Poly& Q, long K, const LaurentTail& tail = tm_series());
ResidualReport residual(const Poly& P, const Poly& Q);

}  // namespace tmcf
