#pragma once

// Prime-divisor extraction for resultant integers.  The inputs are large
// (hundreds of digits) but smooth in practice; the strategy is staged trial
// division over a sieved prime table, a strong probabilistic primality test
// on the remaining cofactor, and Brent's rho for anything left.  Every
// factorization is verified by dividing the input down to 1.

#include "errors.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <vector>

namespace a6arc {

inline std::vector<uint32_t> sieve_primes(uint32_t limit) {
    std::vector<bool> composite(limit + 1, false);
    std::vector<uint32_t> primes;
    for (uint32_t n = 2; n <= limit; ++n) {
        if (composite[n]) continue;
        primes.push_back(n);
        for (uint64_t m = static_cast<uint64_t>(n) * n; m <= limit; m += n) composite[m] = true;
    }
    return primes;
}

inline const std::vector<uint32_t>& small_primes() {
    static const std::vector<uint32_t> primes = sieve_primes(1'000'000);
    return primes;
}

inline bool is_probable_prime(const mpz_class& n) {
    return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

// One nontrivial factor of an odd composite n, or n itself on a failed
// round (the caller retries with the next c).
inline mpz_class brent_rho_round(const mpz_class& n, unsigned long c) {
    mpz_class x = 2, y = 2, d = 1, q = 1, ys = 0, diff;
    unsigned long r = 1;
    const unsigned long block = 128;
    auto step = [&](mpz_class& v) { v = (v * v + c) % n; };
    while (d == 1) {
        x = y;
        for (unsigned long i = 0; i < r; ++i) step(y);
        for (unsigned long k = 0; k < r && d == 1; k += block) {
            ys = y;
            unsigned long count = std::min(block, r - k);
            for (unsigned long i = 0; i < count; ++i) {
                step(y);
                diff = x - y;
                q = (q * abs(diff)) % n;
            }
            mpz_gcd(d.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        }
        r *= 2;
        if (r > (1ul << 24)) return n; // give up this round
    }
    if (d == n) {
        // backtrack one step at a time
        do {
            step(ys);
            diff = abs(x - ys);
            mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
        } while (d == 1);
    }
    return d;
}

inline mpz_class rho_factor(const mpz_class& n) {
    for (unsigned long c = 1; c < 64; ++c) {
        mpz_class d = brent_rho_round(n, c);
        if (d != 1 && d != n) return d;
    }
    throw std::runtime_error("factorization stalled on a " +
                             std::to_string(mpz_sizeinbase(n.get_mpz_t(), 10)) + "-digit composite");
}

// Distinct prime divisors of n, ascending.  Multiplicities are divided out,
// so the reconstruction check is implicit: the cofactor must reach 1.
inline std::vector<mpz_class> factor_primes(const mpz_class& n) {
    if (n == 0) throw zero_resultant("0 has no prime divisor set");
    mpz_class rest = abs(n);
    std::vector<mpz_class> out;
    auto take = [&](mpz_class p) { // by value: p may alias rest
        out.push_back(p);
        while (mpz_divisible_p(rest.get_mpz_t(), p.get_mpz_t()))
            mpz_divexact(rest.get_mpz_t(), rest.get_mpz_t(), p.get_mpz_t());
    };
    const std::vector<uint32_t>& primes = small_primes();
    for (std::size_t i = 0; i < primes.size() && rest != 1; ++i) {
        if (i > 0 && i % 4096 == 0 && is_probable_prime(rest)) {
            take(rest);
            break;
        }
        uint32_t p = primes[i];
        if (mpz_divisible_ui_p(rest.get_mpz_t(), p)) take(mpz_class(p));
        if (mpz_cmp_ui(rest.get_mpz_t(), static_cast<unsigned long>(p) * p) < 0 && rest != 1) {
            take(rest); // remaining cofactor below p^2 is prime
            break;
        }
    }
    std::vector<mpz_class> pending;
    if (rest != 1) pending.push_back(rest);
    while (!pending.empty()) {
        mpz_class m = pending.back();
        pending.pop_back();
        if (is_probable_prime(m)) {
            if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
            continue;
        }
        mpz_class d = rho_factor(m);
        pending.push_back(d);
        pending.push_back(m / d);
    }
    for (const mpz_class& p : out)
        while (mpz_divisible_p(rest.get_mpz_t(), p.get_mpz_t()))
            mpz_divexact(rest.get_mpz_t(), rest.get_mpz_t(), p.get_mpz_t());
    if (rest != 1) throw internal_inconsistency("factorization does not reconstruct the input");
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace a6arc
