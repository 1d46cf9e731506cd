#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace gw {

struct PrimePower {
    uint64_t p;
    uint32_t e;
};

// Factorization into strictly increasing prime powers. 15 slots cover every
// 64-bit integer a 32-bit spf table can reach (the product of the first 10
// primes already exceeds 2^32).
struct Factorization {
    std::array<PrimePower, 15> f;
    uint32_t n = 0;

    void push(uint64_t p, uint32_t e) { f[n++] = {p, e}; }
    const PrimePower* begin() const { return f.data(); }
    const PrimePower* end() const { return f.data() + n; }
    uint32_t size() const { return n; }
    bool empty() const { return n == 0; }
};

namespace detail {
template <typename Fn>
void divisors_rec(const Factorization& fact, uint32_t i, uint64_t d, Fn&& fn) {
    if (i == fact.n) {
        fn(d);
        return;
    }
    uint64_t v = d;
    for (uint32_t e = 0;; ++e) {
        divisors_rec(fact, i + 1, v, fn);
        if (e == fact.f[i].e) break;
        v *= fact.f[i].p;
    }
}
} // namespace detail

// Calls fn(d) for every positive divisor of the factorized integer.
template <typename Fn>
void for_each_divisor(const Factorization& fact, Fn&& fn) {
    detail::divisors_rec(fact, 0, 1, fn);
}

// Sieve-backed prime tables: primality bits over odd numbers, the ascending
// prime list, and a 32-bit smallest-prime-factor table (odd entries only).
// Immutable once built; all readers are lock-free.
//
// Bounds: limit and spf_limit must be < 2^32 (the prime list and spf entries
// are 32-bit). Memory is ~limit/16 bytes of primality bits plus ~2*spf_limit
// bytes of spf entries, so limits up to 1e8..1e9 are practical.
class PrimeTable {
public:
    static constexpr uint64_t kMaxLimit = 0xFFFFFFFFull;
    static constexpr uint64_t kDefaultSegment = uint64_t{1} << 18; // odd entries per segment

    static PrimeTable build(uint64_t limit, uint64_t spf_limit = 0, unsigned threads = 1,
                            uint64_t segment = kDefaultSegment);

    // On-disk primality cache: "GWPT", u64 little-endian limit, then the odd
    // bit table packed LSB-first (bit i <-> number 2i+1).
    void save_cache(const std::string& path) const;
    // Loads a cache whose stored limit is >= limit; returns false (untouched
    // output) when the file is absent, malformed or too small.
    static bool load_cache(const std::string& path, uint64_t limit, uint64_t spf_limit,
                           unsigned threads, PrimeTable& out);

    uint64_t limit() const { return limit_; }
    uint64_t spf_limit() const { return spf_limit_; }

    bool is_prime(uint64_t k) const {
        if (k < 3) return k == 2;
        if ((k & 1) == 0) return false;
        uint64_t i = k >> 1;
        return (bits_[i >> 6] >> (i & 63)) & 1;
    }

    std::span<const uint32_t> primes() const { return primes_; }
    uint64_t prime_count() const { return primes_.size(); }

    // Smallest prime factor of k, 2 <= k <= spf_limit.
    uint32_t spf(uint64_t k) const {
        if ((k & 1) == 0) return 2;
        uint32_t v = spf_odd_[k >> 1];
        return v ? v : static_cast<uint32_t>(k);
    }

    Factorization factorize(uint64_t k) const;

    static double log_weight(uint64_t p) {
        if (p < 2) throw std::invalid_argument("log_weight: p must be >= 2");
        return std::log(static_cast<double>(p));
    }

    // Index of the first prime >= x in primes().
    size_t first_prime_at_least(uint64_t x) const;

private:
    PrimeTable() = default;
    void finish_from_bits(unsigned threads, uint64_t segment);

    uint64_t limit_ = 0;
    uint64_t spf_limit_ = 0;
    std::vector<uint64_t> bits_;    // bit i <-> odd number 2i+1 is prime
    std::vector<uint32_t> primes_;
    std::vector<uint32_t> spf_odd_; // index k>>1 for odd k; 0 means k is prime (or 1)
};

} // namespace gw
