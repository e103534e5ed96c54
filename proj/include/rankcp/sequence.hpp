#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "point_set.hpp"

// Fixed rank reference sets: the equispaced grid {i/N} in one dimension and
// the unscrambled Halton sequence (bases = first d primes, indices 1..N)
// in higher dimensions.

namespace rankcp {

inline std::vector<std::uint32_t> first_primes(std::size_t count) {
    std::vector<std::uint32_t> primes;
    primes.reserve(count);
    for (std::uint32_t candidate = 2; primes.size() < count; ++candidate) {
        bool is_prime = true;
        for (auto p : primes) {
            if (p * p > candidate) break;
            if (candidate % p == 0) {
                is_prime = false;
                break;
            }
        }
        if (is_prime) primes.push_back(candidate);
    }
    return primes;
}

// Base-b radical inverse of index. Digits are extracted exactly in integer
// arithmetic; when the mirrored integer and b^k both fit in a double mantissa
// the result is a single correctly rounded division, otherwise the digits are
// folded in from the most significant one.
inline double radical_inverse(std::uint64_t index, std::uint32_t base) {
    if (index == 0) throw std::invalid_argument("radical_inverse: index must be >= 1");
    if (base < 2) throw std::invalid_argument("radical_inverse: base must be >= 2");

    constexpr std::uint64_t exact_limit = std::uint64_t{1} << 53;
    std::vector<std::uint32_t> digits;  // least significant first
    for (auto n = index; n > 0; n /= base) digits.push_back(static_cast<std::uint32_t>(n % base));

    std::uint64_t mirrored = 0;
    std::uint64_t denom = 1;
    bool exact = true;
    for (auto digit : digits) {
        if (denom > exact_limit / base) {
            exact = false;
            break;
        }
        mirrored = mirrored * base + digit;
        denom *= base;
    }
    if (exact) return static_cast<double>(mirrored) / static_cast<double>(denom);

    double value = 0.0;
    const double inv_base = 1.0 / static_cast<double>(base);
    for (auto it = digits.rbegin(); it != digits.rend(); ++it) value = (value + *it) * inv_base;
    // Indices whose mirrored digits lie within half an ulp of 1 would round up.
    return std::min(value, std::nextafter(1.0, 0.0));
}

struct ReferenceSet {
    std::size_t dim = 0;
    PointSet points;
    std::vector<std::uint32_t> bases;  // empty when dim == 1
};

inline ReferenceSet reference_set(std::size_t count, std::size_t dim) {
    if (count == 0) throw std::invalid_argument("reference_set: count must be >= 1");
    if (dim == 0) throw std::invalid_argument("reference_set: dimension must be >= 1");

    ReferenceSet ref;
    ref.dim = dim;
    ref.points = PointSet(dim);
    ref.points.reserve(count);

    if (dim == 1) {
        const auto n = static_cast<double>(count);
        for (std::size_t i = 1; i <= count; ++i) {
            const double v = static_cast<double>(i) / n;
            ref.points.push_back({&v, 1});
        }
        return ref;
    }

    ref.bases = first_primes(dim);
    std::vector<double> point(dim);
    for (std::size_t k = 1; k <= count; ++k) {
        for (std::size_t j = 0; j < dim; ++j) point[j] = radical_inverse(k, ref.bases[j]);
        ref.points.push_back(point);
    }
    return ref;
}

}  // namespace rankcp
