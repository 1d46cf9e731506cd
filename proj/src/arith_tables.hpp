#pragma once

#include <cstdint>
#include <vector>

#include "prime_table.hpp"

namespace gw {

// Non-principal character modulo 4: +1 on 1 (mod 4), -1 on 3 (mod 4), 0 on evens.
inline int chi4(uint64_t k) {
    if ((k & 1) == 0) return 0;
    return (k & 3) == 1 ? 1 : -1;
}

// chi4(p)^e for a prime power.
inline int chi4_pow(uint64_t p, uint32_t e) {
    int c = chi4(p);
    if (c == 0) return 0;
    return (c == 1 || (e & 1) == 0) ? 1 : -1;
}

// r(k) counted directly: ordered integer pairs (m1, m2), signs and zero
// included, with m1^2 + m2^2 = k. Independent of every table and used as the
// oracle against the sieved r table.
int64_t r_lattice_count(uint64_t k);

// Exact value of the odd-prime product prod_{p|k, p>2} (p-1)/(p-2) in lowest
// terms. Numerator and denominator each divide a product below k, so they fit
// in int64 for any k the spf table can factor.
struct LambdaValue {
    int64_t num;
    int64_t den;
    double value;
};
LambdaValue lambda_exact(uint64_t k, const PrimeTable& pt);

// Same product taken over the primes of n*k without forming the product n*k.
double lambda_of_product(uint64_t n, uint64_t k, const PrimeTable& pt);

// The three-way divisor-range split of r(m)/4 at D and N/D. The middle range
// is open on both sides; an integer boundary divisor lands in r1 resp. r3.
struct RSplit {
    int64_t r1;
    int64_t r2;
    int64_t r3;
};
RSplit r_split(uint64_t m, double D, uint64_t N, const PrimeTable& pt);

// Per-integer tables of r, tau, phi and Omega up to a limit. r is built with
// the divisor-sum sieve (4*chi4(d) added along every multiple of each odd d);
// tau/phi/Omega come from the spf table.
class ArithTables {
public:
    static ArithTables build(uint64_t limit, const PrimeTable& pt);

    uint64_t limit() const { return limit_; }
    const PrimeTable& source() const { return *source_; }

    int32_t r(uint64_t k) const { return r_[k]; }
    uint32_t tau(uint64_t k) const { return tau_[k]; }
    uint32_t phi(uint64_t k) const { return phi_[k]; }
    uint32_t omega(uint64_t k) const { return omega_[k]; } // with multiplicity

    const std::vector<int32_t>& r_table() const { return r_; }

private:
    uint64_t limit_ = 0;
    const PrimeTable* source_ = nullptr;
    std::vector<int32_t> r_;
    std::vector<uint32_t> tau_;
    std::vector<uint32_t> phi_;
    std::vector<uint8_t> omega_;
};

} // namespace gw
