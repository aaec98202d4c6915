#include "weylscope/numtheory.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "weylscope/errors.hpp"

namespace weylscope {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(u128(a) * b % m); }

u64 powmod(u64 a, u64 e, u64 m) {
    u64 r = 1;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

bool miller_rabin(u64 n, u64 a) {
    if (a % n == 0) return true;
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int i = 1; i < s; ++i) {
        x = mulmod(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

} // namespace

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    // bases 2..37 are deterministic for n < 3.3e14; below that the first
    // seven already suffice
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull})
        if (!miller_rabin(n, a)) return false;
    return true;
}

std::vector<u64> primes_up_to(u64 limit) {
    std::vector<u64> out;
    if (limit < 2) return out;
    std::vector<bool> comp(limit + 1, false);
    for (u64 p = 2; p <= limit; ++p) {
        if (comp[p]) continue;
        out.push_back(p);
        for (u64 m = p * p; m <= limit; m += p) comp[m] = true;
    }
    return out;
}

std::vector<std::pair<u64, int>> factorize(u64 n) {
    if (n == 0) throw invalid_input("cannot factorize 0");
    std::vector<std::pair<u64, int>> out;
    for (u64 p = 2; p * p <= n && p <= 1'000'000; p += (p == 2 ? 1 : 2)) {
        if (n % p) continue;
        int e = 0;
        while (n % p == 0) { n /= p; ++e; }
        out.emplace_back(p, e);
    }
    if (n > 1) {
        if (!is_prime(n))
            throw invalid_input("cofactor " + std::to_string(n) + " beyond trial-division range");
        out.emplace_back(n, 1);
    }
    return out;
}

u64 gcd_u64(u64 a, u64 b) { return std::gcd(a, b); }

bool is_i_full(u64 n, int i) {
    if (n == 0 || i < 1) throw invalid_input("is_i_full needs n >= 1, i >= 1");
    for (auto [p, e] : factorize(n))
        if (e < i) return false;
    return true;
}

bool is_i_free(u64 n, int i) {
    if (n == 0 || i < 1) throw invalid_input("is_i_free needs n >= 1, i >= 1");
    for (auto [p, e] : factorize(n))
        if (e >= i) return false;
    return true;
}

std::vector<u64> enumerate_powerful(int i, u64 x) {
    if (i < 2) throw invalid_input("powerful enumeration needs i >= 2");
    if (x > 1'000'000'000'000ull) throw budget_exceeded("powerful enumeration capped at x = 10^12");
    std::vector<u64> out;
    if (x == 0) return out;
    // DFS over primes p <= x^(1/i), exponent >= i for every chosen prime
    u64 proot = static_cast<u64>(std::floor(std::pow(static_cast<double>(x), 1.0 / i))) + 2;
    std::vector<u64> ps = primes_up_to(proot);
    auto dfs = [&](auto&& self, size_t idx, u64 value) -> void {
        out.push_back(value);
        for (size_t k = idx; k < ps.size(); ++k) {
            u64 p = ps[k];
            // need at least p^i
            u128 v = value;
            bool overflow = false;
            for (int e = 0; e < i; ++e) {
                v *= p;
                if (v > x) { overflow = true; break; }
            }
            if (overflow) break; // primes are sorted, larger ones overflow too
            u64 cur = static_cast<u64>(v);
            while (true) {
                self(self, k + 1, cur);
                if (u128(cur) * p > x) break;
                cur *= p;
            }
        }
    };
    dfs(dfs, 0, 1);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Convergent> convergents(double x, u64 q_max) {
    std::vector<Convergent> out;
    if (q_max == 0) return out;
    // classic recurrence; stop when the tail is below double resolution
    double t = x;
    std::int64_t p_prev = 1, p_cur = static_cast<std::int64_t>(std::floor(t));
    u64 q_prev = 0, q_cur = 1;
    out.push_back({p_cur, 1});
    t -= std::floor(t);
    for (int iter = 0; iter < 64; ++iter) {
        if (t < 0x1p-60) break;
        t = 1.0 / t;
        double fa = std::floor(t);
        if (fa > 9e18) break;
        auto a = static_cast<u64>(fa);
        t -= fa;
        u64 q_next = a * q_cur + q_prev;
        if (q_next > q_max || q_next < q_cur) break;
        std::int64_t p_next = static_cast<std::int64_t>(a) * p_cur + p_prev;
        out.push_back({p_next, q_next});
        p_prev = p_cur; p_cur = p_next;
        q_prev = q_cur; q_cur = q_next;
    }
    return out;
}

SpfSieve::SpfSieve(std::uint32_t limit) : spf_(static_cast<size_t>(limit) + 1, 0) {
    for (std::uint64_t n = 2; n <= limit; ++n) {
        if (spf_[n] != 0) continue;
        for (std::uint64_t m = n; m <= limit; m += n)
            if (spf_[m] == 0) spf_[m] = static_cast<std::uint32_t>(n);
    }
}

std::vector<std::pair<u64, int>> SpfSieve::factorize(std::uint32_t n) const {
    if (n == 0 || n >= spf_.size()) throw invalid_input("value outside sieve range");
    std::vector<std::pair<u64, int>> out;
    while (n > 1) {
        std::uint32_t p = spf_[n];
        int e = 0;
        while (n % p == 0) { n /= p; ++e; }
        out.emplace_back(p, e);
    }
    return out;
}

} // namespace weylscope
