#pragma once

#include <string>

#include "tmcf/exactpoly.hpp"

namespace tmcf {

/// Closed interval [lo, hi] * 2^-scale with integer mantissas. Every real
/// quantity the library certifies lives in one of these; there is no
/// floating point anywhere on the certification path.
class DyadicInterval {
public:
    DyadicInterval(BigInt lo, BigInt hi, unsigned long scale);

    const BigInt& lo_mantissa() const { return lo_; }
    const BigInt& hi_mantissa() const { return hi_; }
    unsigned long scale() const { return scale_; }

    Rat lower() const;
    Rat upper() const;
    Rat width() const;
    Rat midpoint() const;

    bool contains(const Rat& x) const;
    bool contains(const DyadicInterval& inner) const;
    bool intersects(const DyadicInterval& other) const;

    /// (c - x) / 2^k for integer c, exact.
    DyadicInterval reflect_halve(const BigInt& c, unsigned long k) const;
    /// Outward rounding to a coarser (or equal) scale.
    DyadicInterval coarsened(unsigned long new_scale) const;

private:
    BigInt lo_, hi_;
    unsigned long scale_;
};

enum class Rounding { down, up };

/// Decimal rendering with `digits` significant digits, rounded in the given
/// direction so printed brackets stay valid.
std::string to_decimal(const Rat& x, int digits, Rounding dir);

}  // namespace tmcf
