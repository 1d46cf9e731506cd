#include "prime_table.hpp"

#include <algorithm>
#include <cstdio>
#include <cstring>

#include "parallel.hpp"

namespace gw {

namespace {

uint64_t isqrt_u64(uint64_t n) {
    uint64_t r = static_cast<uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

// Simple odd-only sieve used for the base primes (<= sqrt(limit)).
std::vector<uint32_t> base_primes(uint64_t bound) {
    std::vector<uint32_t> out;
    if (bound < 3) return out;
    uint64_t n_odd = (bound + 1) / 2; // odd numbers 1,3,..,<=bound
    std::vector<uint8_t> comp(n_odd, 0);
    for (uint64_t i = 1; i < n_odd; ++i) {
        uint64_t p = 2 * i + 1;
        if (p * p > bound) break;
        if (comp[i]) continue;
        for (uint64_t j = (p * p) >> 1; j < n_odd; j += p) comp[j] = 1;
    }
    for (uint64_t i = 1; i < n_odd; ++i)
        if (!comp[i]) out.push_back(static_cast<uint32_t>(2 * i + 1));
    return out;
}

} // namespace

PrimeTable PrimeTable::build(uint64_t limit, uint64_t spf_limit, unsigned threads,
                             uint64_t segment) {
    if (limit < 2) throw std::invalid_argument("prime table: limit must be >= 2");
    if (limit > kMaxLimit)
        throw std::invalid_argument("prime table: limit must be < 2^32 (32-bit prime list)");
    if (spf_limit == 0) spf_limit = limit;
    if (spf_limit > limit) throw std::invalid_argument("prime table: spf_limit > limit");
    if (segment < 64) segment = 64;
    segment &= ~uint64_t{63}; // word-aligned segments so parallel writes never share a word

    PrimeTable t;
    t.limit_ = limit;
    t.spf_limit_ = spf_limit;

    const uint64_t n_odd = (limit + 1) / 2;
    const uint64_t n_words = (n_odd + 63) / 64;
    try {
        t.bits_.assign(n_words, ~uint64_t{0});
    } catch (const std::bad_alloc&) {
        throw std::runtime_error("prime table: allocation failed for limit " +
                                 std::to_string(limit) + " (~" +
                                 std::to_string(n_words * 8 >> 20) +
                                 " MiB of primality bits); reduce the limit");
    }

    const auto base = base_primes(isqrt_u64(limit));

    block_for(n_odd, segment, threads, [&](uint64_t lo, uint64_t hi) {
        const uint64_t lo_val = 2 * lo + 1;
        for (uint32_t p : base) {
            uint64_t p2 = uint64_t{p} * p;
            uint64_t start;
            if (p2 >= lo_val) {
                start = p2 >> 1;
            } else {
                uint64_t q = (lo_val + p - 1) / p;
                if ((q & 1) == 0) ++q;
                if (q < p) q = p;
                start = (uint64_t{p} * q) >> 1;
            }
            for (uint64_t i = start; i < hi; i += p) t.bits_[i >> 6] &= ~(uint64_t{1} << (i & 63));
        }
    });

    t.bits_[0] &= ~uint64_t{1}; // 1 is not prime
    if (n_odd & 63) t.bits_[n_words - 1] &= (~uint64_t{0}) >> (64 - (n_odd & 63));

    t.finish_from_bits(threads, segment);
    return t;
}

void PrimeTable::finish_from_bits(unsigned threads, uint64_t segment) {
    const uint64_t n_odd = (limit_ + 1) / 2;

    // prime list
    uint64_t count = 1; // the prime 2
    for (uint64_t w = 0; w < bits_.size(); ++w) count += __builtin_popcountll(bits_[w]);
    try {
        primes_.clear();
        primes_.reserve(count);
    } catch (const std::bad_alloc&) {
        throw std::runtime_error("prime table: allocation failed for the prime list");
    }
    primes_.push_back(2);
    for (uint64_t i = 1; i < n_odd; ++i)
        if ((bits_[i >> 6] >> (i & 63)) & 1) primes_.push_back(static_cast<uint32_t>(2 * i + 1));

    // smallest prime factor over odd numbers
    const uint64_t n_spf = (spf_limit_ + 1) / 2;
    try {
        spf_odd_.assign(n_spf, 0);
    } catch (const std::bad_alloc&) {
        throw std::runtime_error("prime table: allocation failed for spf table up to " +
                                 std::to_string(spf_limit_) + " (~" +
                                 std::to_string(n_spf * 4 >> 20) +
                                 " MiB); reduce the spf limit");
    }
    const auto base = base_primes(isqrt_u64(spf_limit_));
    block_for(n_spf, segment, threads, [&](uint64_t lo, uint64_t hi) {
        const uint64_t lo_val = 2 * lo + 1;
        for (uint32_t p : base) { // ascending, so the first mark is the smallest factor
            uint64_t p2 = uint64_t{p} * p;
            if (p2 >= 2 * hi + 1) break;
            uint64_t start;
            if (p2 >= lo_val) {
                start = p2 >> 1;
            } else {
                uint64_t q = (lo_val + p - 1) / p;
                if ((q & 1) == 0) ++q;
                if (q < p) q = p;
                start = (uint64_t{p} * q) >> 1;
            }
            for (uint64_t i = start; i < hi; i += p)
                if (spf_odd_[i] == 0) spf_odd_[i] = p;
        }
    });
}

Factorization PrimeTable::factorize(uint64_t k) const {
    if (k == 0) throw std::invalid_argument("factorize: k must be >= 1");
    if (k > spf_limit_)
        throw std::out_of_range("factorize: " + std::to_string(k) +
                                " exceeds the spf table limit " + std::to_string(spf_limit_));
    Factorization out;
    while (k > 1) {
        uint64_t p = spf(k);
        uint32_t e = 0;
        while (k % p == 0) {
            k /= p;
            ++e;
        }
        out.push(p, e);
    }
    return out;
}

size_t PrimeTable::first_prime_at_least(uint64_t x) const {
    if (x > kMaxLimit) return primes_.size();
    auto it = std::lower_bound(primes_.begin(), primes_.end(), static_cast<uint32_t>(x));
    return static_cast<size_t>(it - primes_.begin());
}

void PrimeTable::save_cache(const std::string& path) const {
    FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw std::runtime_error("prime cache: cannot open '" + path + "' for writing");
    const uint64_t n_odd = (limit_ + 1) / 2;
    const uint64_t n_bytes = (n_odd + 7) / 8;
    bool ok = std::fwrite("GWPT", 1, 4, f) == 4;
    for (int i = 0; ok && i < 8; ++i) {
        unsigned char b = static_cast<unsigned char>((limit_ >> (8 * i)) & 0xFF);
        ok = std::fwrite(&b, 1, 1, f) == 1;
    }
    std::vector<unsigned char> buf;
    buf.resize(static_cast<size_t>(n_bytes), 0);
    for (uint64_t i = 0; i < n_odd; ++i)
        if ((bits_[i >> 6] >> (i & 63)) & 1) buf[static_cast<size_t>(i >> 3)] |= 1u << (i & 7);
    ok = ok && std::fwrite(buf.data(), 1, buf.size(), f) == buf.size();
    std::fclose(f);
    if (!ok) throw std::runtime_error("prime cache: short write to '" + path + "'");
}

bool PrimeTable::load_cache(const std::string& path, uint64_t limit, uint64_t spf_limit,
                            unsigned threads, PrimeTable& out) {
    if (limit < 2 || limit > kMaxLimit) return false;
    FILE* f = std::fopen(path.c_str(), "rb");
    if (!f) return false;
    char magic[4];
    if (std::fread(magic, 1, 4, f) != 4 || std::memcmp(magic, "GWPT", 4) != 0) {
        std::fclose(f);
        return false;
    }
    uint64_t stored = 0;
    for (int i = 0; i < 8; ++i) {
        unsigned char b;
        if (std::fread(&b, 1, 1, f) != 1) {
            std::fclose(f);
            return false;
        }
        stored |= uint64_t{b} << (8 * i);
    }
    if (stored < limit || stored > kMaxLimit) {
        std::fclose(f);
        return false;
    }
    const uint64_t n_odd = (stored + 1) / 2;
    const uint64_t n_bytes = (n_odd + 7) / 8;
    std::vector<unsigned char> buf(static_cast<size_t>(n_bytes));
    bool ok = std::fread(buf.data(), 1, buf.size(), f) == buf.size();
    std::fclose(f);
    if (!ok) return false;

    PrimeTable t;
    t.limit_ = stored;
    t.spf_limit_ = spf_limit == 0 ? stored : spf_limit;
    if (t.spf_limit_ > stored) return false;
    t.bits_.assign((n_odd + 63) / 64, 0);
    for (uint64_t j = 0; j < n_bytes; ++j)
        t.bits_[j >> 3] |= uint64_t{buf[static_cast<size_t>(j)]} << ((j & 7) * 8);
    if (n_odd & 63) t.bits_[t.bits_.size() - 1] &= (~uint64_t{0}) >> (64 - (n_odd & 63));

    // spot-check the header really describes a primality table
    if (t.is_prime(1) || !t.is_prime(3) || (stored >= 9 && t.is_prime(9)) ||
        (stored >= 25 && t.is_prime(25)))
        return false;

    t.finish_from_bits(threads, kDefaultSegment);
    out = std::move(t);
    return true;
}

} // namespace gw
