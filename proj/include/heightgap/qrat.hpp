#ifndef HEIGHTGAP_QRAT_HPP
#define HEIGHTGAP_QRAT_HPP

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace heightgap {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Parse "num", "num/den" or a plain integer string into an exact rational.
inline mpq_class parse_rational(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            mpq_class q(mpz_class(s));
            return q;
        }
        mpz_class num(s.substr(0, slash));
        mpz_class den(s.substr(slash + 1));
        if (den == 0) throw error("zero denominator in rational '" + s + "'");
        mpq_class q(num, den);
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        throw error("malformed rational '" + s + "'");
    }
}

inline std::string rational_str(const mpq_class& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

/// log|q| for exact rationals of any magnitude (safe far beyond double range).
inline double log_abs(const mpq_class& q) {
    if (q == 0) throw error("log of zero");
    signed long en, ed;
    double mn = mpz_get_d_2exp(&en, mpq_numref(q.get_mpq_t()));
    double md = mpz_get_d_2exp(&ed, mpq_denref(q.get_mpq_t()));
    return std::log(std::fabs(mn / md)) + double(en - ed) * std::log(2.0);
}

inline double to_double(const mpq_class& q) { return q.get_d(); }

/// v_p of a nonzero integer.
inline long pval(mpz_class n, const mpz_class& p) {
    if (n == 0) throw error("valuation of zero");
    long v = 0;
    mpz_class r;
    while (true) {
        mpz_class quo;
        mpz_fdiv_qr(quo.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
        if (r != 0) break;
        n = quo;
        ++v;
    }
    return v;
}

/// v_p of a nonzero rational (may be negative).
inline long pval(const mpq_class& q, const mpz_class& p) {
    long a = (q.get_num() == 0) ? throw error("valuation of zero")
                                : pval(mpz_class(q.get_num()), p);
    long b = pval(mpz_class(q.get_den()), p);
    return a - b;
}

namespace detail {

inline mpz_class pollard_rho(const mpz_class& n, unsigned long c0) {
    // Brent's variant; n odd composite.
    mpz_class y = 2, q = 1, g = 1, x, ys;
    const unsigned long m = 128;
    const mpz_class c = c0;
    unsigned long r = 1;
    while (g == 1) {
        x = y;
        for (unsigned long i = 0; i < r; ++i) y = (y * y + c) % n;
        unsigned long k = 0;
        while (k < r && g == 1) {
            ys = y;
            const unsigned long chunk = std::min(m, r - k);
            for (unsigned long i = 0; i < chunk; ++i) {
                y = (y * y + c) % n;
                mpz_class d = x - y;
                if (d < 0) d = -d;
                q = q * d % n;
            }
            mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
            k += m;
        }
        r *= 2;
        if (r > (1ul << 22)) return 0;
    }
    if (g == n) {
        do {
            ys = (ys * ys + c) % n;
            mpz_class d = x - ys;
            if (d < 0) d = -d;
            mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
        } while (g == 1);
    }
    if (g == n) return 0;
    return g;
}

inline void factor_into(mpz_class n, std::map<mpz_class, long>& out) {
    if (n < 0) n = -n;
    if (n <= 1) return;
    for (unsigned long p : {2ul, 3ul, 5ul, 7ul, 11ul, 13ul}) {
        while (n % p == 0) { ++out[p]; n /= p; }
    }
    unsigned long d = 17;
    while (n > 1 && mpz_class(d) * d <= n && d < 1000000) {
        while (n % d == 0) { ++out[d]; n /= d; }
        d += 2;
    }
    if (n == 1) return;
    if (mpz_probab_prime_p(n.get_mpz_t(), 40)) { ++out[n]; return; }
    for (unsigned long c = 1; c < 64; ++c) {
        mpz_class g = pollard_rho(n, c);
        if (g != 0 && g != 1 && g != n) {
            factor_into(g, out);
            factor_into(n / g, out);
            return;
        }
    }
    throw error("integer factorization budget exceeded for " + n.get_str());
}

} // namespace detail

/// Prime factorization of a nonzero integer (sign dropped).
inline std::map<mpz_class, long> factor_integer(const mpz_class& n) {
    if (n == 0) throw error("factor of zero");
    std::map<mpz_class, long> out;
    detail::factor_into(n, out);
    return out;
}

/// Primes dividing numerator or denominator of a nonzero rational.
inline std::map<mpz_class, long> rational_prime_valuations(const mpq_class& q) {
    std::map<mpz_class, long> out;
    for (auto& [p, e] : factor_integer(mpz_class(q.get_num()))) out[p] += e;
    for (auto& [p, e] : factor_integer(mpz_class(q.get_den()))) out[p] -= e;
    return out;
}

} // namespace heightgap

#endif
