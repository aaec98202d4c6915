#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace weylscope {

/// Deterministic Miller-Rabin (valid for n < 3.3e14) behind trial division.
bool is_prime(std::uint64_t n);

/// All primes in [2, limit] by sieve.
std::vector<std::uint64_t> primes_up_to(std::uint64_t limit);

/// Prime factorization (p, e) pairs, trial division by primes <= 10^6.
/// Cofactors above 10^12 that are not proven prime are rejected.
std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n);

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b);

/// n is i-th power full: every prime factor p of n satisfies p^i | n.
/// (1 is both i-full and i-free for every i.)
bool is_i_full(std::uint64_t n, int i);

/// n is i-th power free: no prime factor p of n satisfies p^i | n.
bool is_i_free(std::uint64_t n, int i);

/// Sorted list of all i-full numbers <= x (includes 1). x <= 10^12.
std::vector<std::uint64_t> enumerate_powerful(int i, std::uint64_t x);

/// Continued-fraction convergents p/q of x with q <= q_max, in increasing q.
struct Convergent {
    std::int64_t p;
    std::uint64_t q;
};
std::vector<Convergent> convergents(double x, std::uint64_t q_max);

/// Smallest-prime-factor sieve for bulk factorization of [1, limit].
class SpfSieve {
  public:
    explicit SpfSieve(std::uint32_t limit);
    std::uint32_t limit() const { return static_cast<std::uint32_t>(spf_.size()) - 1; }
    std::vector<std::pair<std::uint64_t, int>> factorize(std::uint32_t n) const;

  private:
    std::vector<std::uint32_t> spf_;
};

} // namespace weylscope
