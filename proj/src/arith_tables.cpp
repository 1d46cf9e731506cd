#include "arith_tables.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace gw {

int64_t r_lattice_count(uint64_t k) {
    if (k == 0) return 1; // the single point (0,0)
    uint64_t root = static_cast<uint64_t>(std::sqrt(static_cast<double>(k)));
    while (root * root > k) --root;
    while ((root + 1) * (root + 1) <= k) ++root;
    int64_t count = 0;
    for (uint64_t a = 0; a <= root; ++a) {
        uint64_t rem = k - a * a;
        uint64_t s = static_cast<uint64_t>(std::sqrt(static_cast<double>(rem)));
        while (s * s > rem) --s;
        while ((s + 1) * (s + 1) <= rem) ++s;
        if (s * s == rem) {
            int64_t mult = (a == 0 ? 1 : 2) * (s == 0 ? 1 : 2);
            count += mult;
        }
    }
    return count;
}

LambdaValue lambda_exact(uint64_t k, const PrimeTable& pt) {
    if (k == 0) throw std::invalid_argument("lambda: k must be >= 1");
    int64_t num = 1, den = 1;
    for (const auto& pp : pt.factorize(k)) {
        if (pp.p == 2) continue;
        num *= static_cast<int64_t>(pp.p - 1);
        den *= static_cast<int64_t>(pp.p - 2);
    }
    int64_t g = std::gcd(num, den);
    num /= g;
    den /= g;
    return {num, den, static_cast<double>(num) / static_cast<double>(den)};
}

double lambda_of_product(uint64_t n, uint64_t k, const PrimeTable& pt) {
    double v = 1.0;
    for (const auto& pp : pt.factorize(n)) {
        if (pp.p == 2) continue;
        v *= static_cast<double>(pp.p - 1) / static_cast<double>(pp.p - 2);
    }
    for (const auto& pp : pt.factorize(k)) {
        if (pp.p == 2 || n % pp.p == 0) continue;
        v *= static_cast<double>(pp.p - 1) / static_cast<double>(pp.p - 2);
    }
    return v;
}

RSplit r_split(uint64_t m, double D, uint64_t N, const PrimeTable& pt) {
    if (m == 0) throw std::invalid_argument("r_split: m must be >= 1");
    if (!(D > 0)) throw std::invalid_argument("r_split: D must be positive");
    const double upper = static_cast<double>(N) / D;
    RSplit s{0, 0, 0};
    for_each_divisor(pt.factorize(m), [&](uint64_t d) {
        int c = chi4(d);
        if (c == 0) return;
        double dv = static_cast<double>(d);
        if (dv <= D)
            s.r1 += c;
        else if (dv < upper)
            s.r2 += c;
        else
            s.r3 += c;
    });
    return s;
}

ArithTables ArithTables::build(uint64_t limit, const PrimeTable& pt) {
    if (limit < 1) throw std::invalid_argument("arith tables: limit must be >= 1");
    if (limit > pt.spf_limit())
        throw std::invalid_argument("arith tables: limit exceeds the prime table's spf limit");

    ArithTables t;
    t.limit_ = limit;
    t.source_ = &pt;
    try {
        t.r_.assign(limit + 1, 0);
        t.tau_.assign(limit + 1, 0);
        t.phi_.assign(limit + 1, 0);
        t.omega_.assign(limit + 1, 0);
    } catch (const std::bad_alloc&) {
        throw std::runtime_error("arith tables: allocation failed for limit " +
                                 std::to_string(limit) + "; reduce the limit");
    }

    // divisor-sum sieve for r: each odd d contributes chi4(d) to its multiples
    for (uint64_t d = 1; d <= limit; d += 2) {
        int32_t c = ((d & 3) == 1) ? 1 : -1;
        for (uint64_t mult = d; mult <= limit; mult += d) t.r_[mult] += c;
    }
    for (uint64_t k = 1; k <= limit; ++k) t.r_[k] *= 4;

    t.tau_[1] = 1;
    t.phi_[1] = 1;
    for (uint64_t k = 2; k <= limit; ++k) {
        uint64_t rest = k;
        uint32_t tau = 1, om = 0;
        uint64_t phi = 1;
        while (rest > 1) {
            uint64_t p = pt.spf(rest);
            uint32_t e = 0;
            uint64_t pe = 1;
            while (rest % p == 0) {
                rest /= p;
                ++e;
                pe *= p;
            }
            tau *= e + 1;
            om += e;
            phi *= (pe / p) * (p - 1);
        }
        t.tau_[k] = tau;
        t.phi_[k] = static_cast<uint32_t>(phi);
        t.omega_[k] = static_cast<uint8_t>(om);
    }
    return t;
}

} // namespace gw
