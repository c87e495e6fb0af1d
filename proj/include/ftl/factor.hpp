#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace ftl {

// Deterministic Miller-Rabin over the full 64-bit range.
bool is_prime_u64(std::uint64_t n);

// Prime factorisation as (prime, exponent) pairs in increasing prime order.
// Small factors are removed by trial division, the rest by Pollard-Brent rho.
std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n);

// Euler's totient of a single 64-bit argument, through factorize().
std::uint64_t totient_at(std::uint64_t n);

}  // namespace ftl
