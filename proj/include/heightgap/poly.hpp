#ifndef HEIGHTGAP_POLY_HPP
#define HEIGHTGAP_POLY_HPP

#include <algorithm>
#include <complex>
#include <map>
#include <utility>
#include <vector>

#include "heightgap/qrat.hpp"
#include "heightgap/rng.hpp"

namespace heightgap {

/// Dense univariate polynomial over Q. Coefficient 0 is the constant term;
/// no trailing zero coefficients (empty vector = zero polynomial).
struct QPoly {
    std::vector<mpq_class> c;

    QPoly() = default;
    explicit QPoly(std::vector<mpq_class> coeffs) : c(std::move(coeffs)) { trim(); }

    static QPoly from_int(const std::vector<long>& coeffs) {
        std::vector<mpq_class> v(coeffs.begin(), coeffs.end());
        return QPoly(std::move(v));
    }
    static QPoly x_power(std::size_t k, const mpq_class& lead = 1) {
        std::vector<mpq_class> v(k + 1, mpq_class(0));
        v[k] = lead;
        return QPoly(std::move(v));
    }

    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    int degree() const { return int(c.size()) - 1; } // -1 for zero
    const mpq_class& lc() const {
        if (c.empty()) throw error("leading coefficient of zero polynomial");
        return c.back();
    }
    mpq_class coeff(std::size_t i) const { return i < c.size() ? c[i] : mpq_class(0); }

    bool operator==(const QPoly& o) const { return c == o.c; }

    QPoly operator+(const QPoly& o) const {
        std::vector<mpq_class> v(std::max(c.size(), o.c.size()), mpq_class(0));
        for (std::size_t i = 0; i < c.size(); ++i) v[i] += c[i];
        for (std::size_t i = 0; i < o.c.size(); ++i) v[i] += o.c[i];
        return QPoly(std::move(v));
    }
    QPoly operator-(const QPoly& o) const {
        std::vector<mpq_class> v(std::max(c.size(), o.c.size()), mpq_class(0));
        for (std::size_t i = 0; i < c.size(); ++i) v[i] += c[i];
        for (std::size_t i = 0; i < o.c.size(); ++i) v[i] -= o.c[i];
        return QPoly(std::move(v));
    }
    QPoly operator*(const QPoly& o) const {
        if (is_zero() || o.is_zero()) return QPoly();
        std::vector<mpq_class> v(c.size() + o.c.size() - 1, mpq_class(0));
        for (std::size_t i = 0; i < c.size(); ++i)
            for (std::size_t j = 0; j < o.c.size(); ++j) v[i + j] += c[i] * o.c[j];
        return QPoly(std::move(v));
    }
    QPoly operator*(const mpq_class& s) const {
        QPoly r = *this;
        for (auto& a : r.c) a *= s;
        r.trim();
        return r;
    }

    /// Quotient and remainder; divisor must be nonzero.
    std::pair<QPoly, QPoly> divmod(const QPoly& d) const {
        if (d.is_zero()) throw error("polynomial division by zero");
        QPoly r = *this, q;
        if (degree() >= d.degree())
            q.c.assign(std::size_t(degree() - d.degree()) + 1, mpq_class(0));
        while (!r.is_zero() && r.degree() >= d.degree()) {
            mpq_class f = r.lc() / d.lc();
            int k = r.degree() - d.degree();
            q.c[std::size_t(k)] = f;
            for (std::size_t i = 0; i < d.c.size(); ++i)
                r.c[std::size_t(k) + i] -= f * d.c[i];
            r.trim();
        }
        q.trim();
        return {q, r};
    }

    QPoly derivative() const {
        if (c.size() <= 1) return QPoly();
        std::vector<mpq_class> v(c.size() - 1);
        for (std::size_t i = 1; i < c.size(); ++i) v[i - 1] = c[i] * mpq_class(long(i));
        return QPoly(std::move(v));
    }

    mpq_class eval(const mpq_class& x) const {
        mpq_class acc = 0;
        for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
        return acc;
    }
    std::complex<double> eval(const std::complex<double>& z) const {
        std::complex<double> acc = 0;
        for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + to_double(*it);
        return acc;
    }

    QPoly monic() const {
        if (is_zero()) return *this;
        return *this * (mpq_class(1) / lc());
    }

    /// Substitute x -> g(x).
    QPoly compose(const QPoly& g) const {
        QPoly acc;
        for (auto it = c.rbegin(); it != c.rend(); ++it) {
            acc = acc * g;
            acc = acc + QPoly({*it});
        }
        return acc;
    }

    /// Primitive integer multiple with positive leading coefficient.
    std::vector<mpz_class> primitive_z() const {
        if (is_zero()) return {};
        mpz_class l = 1;
        for (auto& a : c) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a.get_den().get_mpz_t());
        std::vector<mpz_class> v;
        v.reserve(c.size());
        mpz_class g = 0;
        for (auto& a : c) {
            mpz_class z = mpz_class(a * l);
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z.get_mpz_t());
            v.push_back(z);
        }
        if (g != 0)
            for (auto& z : v) z /= g;
        if (v.back() < 0)
            for (auto& z : v) z = -z;
        return v;
    }
};

inline QPoly gcd(const QPoly& a, const QPoly& b) {
    QPoly u = a, v = b;
    while (!v.is_zero()) {
        QPoly r = u.divmod(v).second;
        u = std::move(v);
        v = std::move(r);
    }
    return u.is_zero() ? u : u.monic();
}

/// Extended gcd: returns (g, s, t) monic with s*a + t*b = g.
inline std::tuple<QPoly, QPoly, QPoly> xgcd(const QPoly& a, const QPoly& b) {
    QPoly r0 = a, r1 = b;
    QPoly s0({mpq_class(1)}), s1, t0, t1({mpq_class(1)});
    while (!r1.is_zero()) {
        auto [q, r2] = r0.divmod(r1);
        QPoly s2 = s0 - q * s1, t2 = t0 - q * t1;
        r0 = std::move(r1); r1 = std::move(r2);
        s0 = std::move(s1); s1 = std::move(s2);
        t0 = std::move(t1); t1 = std::move(t2);
    }
    if (r0.is_zero()) return {r0, s0, t0};
    mpq_class inv = mpq_class(1) / r0.lc();
    return {r0 * inv, s0 * inv, t0 * inv};
}

// ---------------------------------------------------------------------------
// Integer polynomials (vector<mpz_class>, constant term first, no trailing 0)

using ZPoly = std::vector<mpz_class>;

inline void ztrim(ZPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}
inline int zdeg(const ZPoly& f) { return int(f.size()) - 1; }

inline QPoly to_qpoly(const ZPoly& f) {
    std::vector<mpq_class> v(f.begin(), f.end());
    return QPoly(std::move(v));
}

inline ZPoly to_zpoly(const QPoly& f) {
    ZPoly v;
    v.reserve(f.c.size());
    for (auto& a : f.c) {
        if (a.get_den() != 1) throw error("non-integer coefficient");
        v.push_back(a.get_num());
    }
    return v;
}

/// Resultant of two integer polynomials via Sylvester matrix with
/// fraction-free (Bareiss) elimination.
inline mpz_class resultant_z(const ZPoly& A, const ZPoly& B) {
    int m = zdeg(A), n = zdeg(B);
    if (m < 0 || n < 0) return 0;
    if (m == 0) {
        mpz_class r;
        mpz_pow_ui(r.get_mpz_t(), A[0].get_mpz_t(), (unsigned long)n);
        return r;
    }
    if (n == 0) {
        mpz_class r;
        mpz_pow_ui(r.get_mpz_t(), B[0].get_mpz_t(), (unsigned long)m);
        return r;
    }

    int N = m + n;
    std::vector<std::vector<mpz_class>> M(std::size_t(N), std::vector<mpz_class>(std::size_t(N), mpz_class(0)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= m; ++j) M[std::size_t(i)][std::size_t(i + j)] = A[std::size_t(m - j)];
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= n; ++j) M[std::size_t(n + i)][std::size_t(i + j)] = B[std::size_t(n - j)];

    mpz_class prev = 1;
    int sign = 1;
    for (int k = 0; k < N - 1; ++k) {
        if (M[std::size_t(k)][std::size_t(k)] == 0) {
            int piv = -1;
            for (int i = k + 1; i < N; ++i)
                if (M[std::size_t(i)][std::size_t(k)] != 0) { piv = i; break; }
            if (piv < 0) return 0;
            std::swap(M[std::size_t(k)], M[std::size_t(piv)]);
            sign = -sign;
        }
        for (int i = k + 1; i < N; ++i) {
            for (int j = k + 1; j < N; ++j) {
                mpz_class t = M[std::size_t(i)][std::size_t(j)] * M[std::size_t(k)][std::size_t(k)]
                            - M[std::size_t(i)][std::size_t(k)] * M[std::size_t(k)][std::size_t(j)];
                mpz_divexact(M[std::size_t(i)][std::size_t(j)].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            M[std::size_t(i)][std::size_t(k)] = 0;
        }
        prev = M[std::size_t(k)][std::size_t(k)];
    }
    mpz_class det = M[std::size_t(N - 1)][std::size_t(N - 1)];
    return sign > 0 ? det : mpz_class(-det);
}

inline mpz_class discriminant_z(const ZPoly& f) {
    QPoly q = to_qpoly(f);
    ZPoly df = to_zpoly(q.derivative());
    if (df.empty()) return 0;
    mpz_class r = resultant_z(f, df);
    int d = zdeg(f);
    mpz_class lead = f.back();
    mpz_class res;
    mpz_divexact(res.get_mpz_t(), r.get_mpz_t(), lead.get_mpz_t());
    long s = (long(d) * (d - 1) / 2) % 2;
    return s ? mpz_class(-res) : res;
}

// ---------------------------------------------------------------------------
// Arithmetic in F_p[x] (p an arbitrary-precision prime)

namespace modp {

struct Ctx {
    mpz_class p;
};

using MPoly = std::vector<mpz_class>; // coefficients in [0, p)

inline void trim(MPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}
inline int deg(const MPoly& f) { return int(f.size()) - 1; }

inline MPoly from_z(const ZPoly& f, const Ctx& c) {
    MPoly r(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        mpz_mod(r[i].get_mpz_t(), f[i].get_mpz_t(), c.p.get_mpz_t());
    }
    trim(r);
    return r;
}

inline mpz_class inv_mod(const mpz_class& a, const Ctx& c) {
    mpz_class r;
    if (!mpz_invert(r.get_mpz_t(), a.get_mpz_t(), c.p.get_mpz_t()))
        throw error("not invertible mod p");
    return r;
}

inline MPoly add(const MPoly& a, const MPoly& b, const Ctx& c) {
    MPoly r(std::max(a.size(), b.size()), mpz_class(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) { r[i] += b[i]; if (r[i] >= c.p) r[i] -= c.p; }
    trim(r);
    return r;
}

inline MPoly sub(const MPoly& a, const MPoly& b, const Ctx& c) {
    MPoly r(std::max(a.size(), b.size()), mpz_class(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) { r[i] -= b[i]; if (r[i] < 0) r[i] += c.p; }
    trim(r);
    return r;
}

inline MPoly mul(const MPoly& a, const MPoly& b, const Ctx& c) {
    if (a.empty() || b.empty()) return {};
    MPoly r(a.size() + b.size() - 1, mpz_class(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) {
            r[i + j] += a[i] * b[j];
        }
    for (auto& x : r) mpz_mod(x.get_mpz_t(), x.get_mpz_t(), c.p.get_mpz_t());
    trim(r);
    return r;
}

inline std::pair<MPoly, MPoly> divmod(const MPoly& a, const MPoly& b, const Ctx& c) {
    if (b.empty()) throw error("mod-p division by zero polynomial");
    MPoly r = a, q;
    mpz_class binv = inv_mod(b.back(), c);
    if (deg(a) >= deg(b)) q.assign(std::size_t(deg(a) - deg(b)) + 1, mpz_class(0));
    while (deg(r) >= deg(b)) {
        mpz_class f = r.back() * binv % c.p;
        int k = deg(r) - deg(b);
        q[std::size_t(k)] = f;
        for (std::size_t i = 0; i < b.size(); ++i) {
            mpz_class t = r[std::size_t(k) + i] - f * b[i];
            mpz_mod(t.get_mpz_t(), t.get_mpz_t(), c.p.get_mpz_t());
            r[std::size_t(k) + i] = t;
        }
        trim(r);
    }
    trim(q);
    return {q, r};
}

inline MPoly rem(const MPoly& a, const MPoly& b, const Ctx& c) { return divmod(a, b, c).second; }

inline MPoly monic(const MPoly& a, const Ctx& c) {
    if (a.empty()) return a;
    mpz_class inv = inv_mod(a.back(), c);
    MPoly r = a;
    for (auto& x : r) x = x * inv % c.p;
    return r;
}

inline MPoly gcd(MPoly a, MPoly b, const Ctx& c) {
    while (!b.empty()) {
        MPoly r = rem(a, b, c);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a, c);
}

inline MPoly derivative(const MPoly& a, const Ctx& c) {
    if (a.size() <= 1) return {};
    MPoly r(a.size() - 1);
    for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = a[i] * mpz_class(long(i)) % c.p;
    trim(r);
    return r;
}

inline MPoly mulmod(const MPoly& a, const MPoly& b, const MPoly& f, const Ctx& c) {
    return rem(mul(a, b, c), f, c);
}

/// a^e mod f (e arbitrary-precision, >= 0).
inline MPoly powmod(MPoly a, mpz_class e, const MPoly& f, const Ctx& c) {
    MPoly r{mpz_class(1)};
    a = rem(a, f, c);
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = mulmod(r, a, f, c);
        a = mulmod(a, a, f, c);
        e >>= 1;
    }
    return r;
}

/// g(h) mod f by Horner.
inline MPoly compose_mod(const MPoly& g, const MPoly& h, const MPoly& f, const Ctx& c) {
    MPoly acc;
    for (auto it = g.rbegin(); it != g.rend(); ++it) {
        acc = mulmod(acc, h, f, c);
        acc = add(acc, MPoly{*it}, c);
    }
    return acc;
}

inline MPoly random_poly(int degree_below, const Ctx& c, Rng& rng) {
    MPoly r(std::size_t(degree_below));
    for (auto& x : r) {
        // enough entropy for small p; fine for large p too (splitting only
        // needs a non-degenerate element)
        mpz_class v = mpz_class((unsigned long)rng.next_u64());
        v = (v << 64) + mpz_class((unsigned long)rng.next_u64());
        mpz_mod(x.get_mpz_t(), v.get_mpz_t(), c.p.get_mpz_t());
    }
    trim(r);
    return r;
}

/// Equal-degree splitting (Cantor-Zassenhaus; trace map for p = 2).
inline void edf(const MPoly& g, int d, const Ctx& c, Rng& rng, std::vector<MPoly>& out) {
    if (deg(g) == d) {
        out.push_back(monic(g, c));
        return;
    }
    while (true) {
        MPoly a = random_poly(deg(g), c, rng);
        if (deg(a) < 1) continue;
        MPoly b;
        if (c.p == 2) {
            MPoly t = a;
            b = a;
            for (int i = 1; i < d; ++i) {
                t = mulmod(t, t, g, c);
                b = add(b, t, c);
            }
        } else {
            mpz_class e;
            mpz_pow_ui(e.get_mpz_t(), c.p.get_mpz_t(), (unsigned long)d);
            e = (e - 1) / 2;
            b = powmod(a, e, g, c);
            b = sub(b, MPoly{mpz_class(1)}, c);
        }
        MPoly h = gcd(b, g, c);
        if (deg(h) > 0 && deg(h) < deg(g)) {
            edf(h, d, c, rng, out);
            edf(divmod(g, h, c).first, d, c, rng, out);
            return;
        }
    }
}

/// Full factorization of a nonzero polynomial mod p into monic irreducibles
/// with multiplicities. Deterministic for a given (f, p).
inline std::vector<std::pair<MPoly, int>> factor(const MPoly& f_in, const Ctx& c) {
    MPoly f = monic(f_in, c);
    if (deg(f) <= 0) return {};
    Rng rng(0x5eedf00dULL ^ std::uint64_t(mpz_fdiv_ui(c.p.get_mpz_t(), 0x7fffffff)),
            std::uint64_t(deg(f)));

    // peel multiplicities: factor the squarefree part, divide out, repeat
    std::map<std::vector<std::string>, std::pair<MPoly, int>> found;
    MPoly work = f;
    auto key_of = [](const MPoly& g) {
        std::vector<std::string> k;
        k.reserve(g.size());
        for (auto& x : g) k.push_back(x.get_str());
        return k;
    };
    while (deg(work) > 0) {
        MPoly d = derivative(work, c);
        MPoly sf;
        if (d.empty()) {
            // work = g(x^p) = g(x)^p over F_p
            unsigned long pp = mpz_get_ui(c.p.get_mpz_t());
            MPoly g((std::size_t(deg(work)) / pp) + 1);
            for (std::size_t i = 0; i < g.size(); ++i) g[i] = work[i * pp];
            trim(g);
            auto sub_factors = factor(g, c);
            for (auto& [q, m] : sub_factors) {
                auto k = key_of(q);
                if (found.count(k)) found[k].second += m * int(pp);
                else found[k] = {q, m * int(pp)};
            }
            break;
        }
        sf = divmod(work, gcd(work, d, c), c).first; // squarefree part
        // distinct-degree on sf
        MPoly xp;
        {
            MPoly x{mpz_class(0), mpz_class(1)};
            xp = powmod(x, c.p, sf, c);
        }
        MPoly pi = xp, rest = sf;
        for (int dd = 1; dd <= deg(sf) && deg(rest) > 0; ++dd) {
            if (dd > 1) pi = compose_mod(pi, xp, sf, c);
            MPoly x{mpz_class(0), mpz_class(1)};
            MPoly diff = sub(rem(pi, rest, c), x, c);
            MPoly g = gcd(diff, rest, c);
            if (deg(g) > 0) {
                std::vector<MPoly> irr;
                edf(g, dd, c, rng, irr);
                for (auto& q : irr) {
                    // multiplicity of q inside the current work
                    int m = 0;
                    MPoly t = work;
                    while (true) {
                        auto [quo, r] = divmod(t, q, c);
                        if (!r.empty()) break;
                        t = quo;
                        ++m;
                    }
                    auto k = key_of(q);
                    if (found.count(k)) found[k].second += m;
                    else found[k] = {q, m};
                }
                rest = divmod(rest, g, c).first;
            }
        }
        // divide out everything found so far and loop (handles multiplicities)
        MPoly prod{mpz_class(1)};
        for (auto& [k, qm] : found) {
            for (int i = 0; i < qm.second; ++i) prod = mul(prod, qm.first, c);
        }
        auto [quo, r] = divmod(f, prod, c);
        if (!r.empty()) throw error("internal: mod-p factor bookkeeping");
        work = quo;
    }
    std::vector<std::pair<MPoly, int>> out;
    out.reserve(found.size());
    for (auto& [k, qm] : found) out.push_back(qm);
    // canonical deterministic ordering: by degree, then lexicographic coeffs
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (deg(a.first) != deg(b.first)) return deg(a.first) < deg(b.first);
        for (std::size_t i = a.first.size(); i-- > 0;) {
            if (a.first[i] != b.first[i]) return a.first[i] < b.first[i];
        }
        return false;
    });
    return out;
}

} // namespace modp

// ---------------------------------------------------------------------------
// Hensel lifting: f = prod G_i (mod p^N) from a pairwise-coprime mod-p start

namespace hensel {

/// Coefficients of all polynomials are balanced representatives mod m.
inline ZPoly mod_sym(const ZPoly& f, const mpz_class& m) {
    ZPoly r(f.size());
    mpz_class half = m / 2;
    for (std::size_t i = 0; i < f.size(); ++i) {
        mpz_mod(r[i].get_mpz_t(), f[i].get_mpz_t(), m.get_mpz_t());
        if (r[i] > half) r[i] -= m;
    }
    ztrim(r);
    return r;
}

inline ZPoly zmul(const ZPoly& a, const ZPoly& b) {
    if (a.empty() || b.empty()) return {};
    ZPoly r(a.size() + b.size() - 1, mpz_class(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    ztrim(r);
    return r;
}

inline ZPoly zsub(const ZPoly& a, const ZPoly& b) {
    ZPoly r(std::max(a.size(), b.size()), mpz_class(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    ztrim(r);
    return r;
}

/// One linear lift step for the full system: given f = prod g_i mod p^k,
/// produce factors mod p^{k+1}. g_i monic, pairwise coprime mod p.
/// bez_i are the mod-p Bezout cofactors with sum_i bez_i * prod_{j!=i} g_j = 1.
struct MultiLift {
    mpz_class p;
    std::vector<ZPoly> g;      // current factors, monic, coeffs mod p^k
    std::vector<modp::MPoly> bez;
    mpz_class pk;              // current modulus p^k

    /// Initialize from mod-p factors (monic, pairwise coprime).
    MultiLift(const mpz_class& prime, const std::vector<ZPoly>& start)
        : p(prime), g(start), pk(prime) {
        modp::Ctx c{p};
        const std::size_t r = g.size();
        bez.resize(r);
        // Solve sum_i b_i * H_i = 1 where H_i = prod_{j != i} g_j, by
        // iterated two-term xgcd over F_p.
        // Build via partial products: standard recursive splitting is
        // overkill at our degrees; use direct linear algebra free method:
        // For r terms, repeatedly split off one factor.
        std::vector<modp::MPoly> gp(r);
        for (std::size_t i = 0; i < r; ++i) gp[i] = modp::from_z(g[i], c);
        // b_i = (H_i)^{-1} mod g_i  (CRT idempotents)
        for (std::size_t i = 0; i < r; ++i) {
            modp::MPoly H{mpz_class(1)};
            for (std::size_t j = 0; j < r; ++j)
                if (j != i) H = modp::mul(H, gp[j], c);
            H = modp::rem(H, gp[i], c);
            // invert H mod g_i via extended Euclid in F_p[x]
            modp::MPoly r0 = gp[i], r1 = H;
            modp::MPoly t0, t1{mpz_class(1)};
            while (!r1.empty()) {
                auto [q, r2] = modp::divmod(r0, r1, c);
                modp::MPoly t2 = modp::sub(t0, modp::mul(q, t1, c), c);
                r0 = std::move(r1); r1 = std::move(r2);
                t0 = std::move(t1); t1 = std::move(t2);
            }
            if (modp::deg(r0) != 0)
                throw error("hensel: initial factors not coprime mod p");
            mpz_class inv = modp::inv_mod(r0[0], c);
            for (auto& x : t0) x = x * inv % c.p;
            modp::trim(t0);
            bez[i] = t0;
        }
    }

    /// Lift until modulus >= target (by repeated linear steps).
    void lift_to(const ZPoly& f, const mpz_class& target) {
        modp::Ctx c{p};
        while (pk < target) {
            mpz_class next = pk * p;
            // error e = (f - prod g_i)/p^k  (exact)
            ZPoly prod{mpz_class(1)};
            for (auto& gi : g) prod = zmul(prod, gi);
            ZPoly e = zsub(f, prod);
            for (auto& x : e) {
                mpz_class q;
                mpz_divexact(q.get_mpz_t(), x.get_mpz_t(), pk.get_mpz_t());
                x = q;
            }
            ztrim(e);
            modp::MPoly ebar = modp::from_z(e, c);
            for (std::size_t i = 0; i < g.size(); ++i) {
                modp::MPoly gi = modp::from_z(g[i], c);
                modp::MPoly di = modp::rem(modp::mul(ebar, bez[i], c), gi, c);
                // g_i += p^k * d_i
                for (std::size_t j = 0; j < di.size(); ++j) {
                    if (g[i].size() <= j) g[i].resize(j + 1, mpz_class(0));
                    g[i][j] += pk * di[j];
                }
                for (auto& x : g[i]) mpz_mod(x.get_mpz_t(), x.get_mpz_t(), next.get_mpz_t());
                ztrim(g[i]);
            }
            pk = next;
        }
    }
};

} // namespace hensel

// ---------------------------------------------------------------------------
// Factorization over Z (monic, small degree): Zassenhaus

namespace detail {

inline bool zpoly_divides(const ZPoly& d, const ZPoly& f, ZPoly* quot = nullptr) {
    // monic d
    ZPoly r = f, q;
    if (zdeg(r) < zdeg(d)) return false;
    q.assign(std::size_t(zdeg(r) - zdeg(d)) + 1, mpz_class(0));
    while (zdeg(r) >= zdeg(d)) {
        mpz_class fac = r.back(); // d monic
        int k = zdeg(r) - zdeg(d);
        q[std::size_t(k)] = fac;
        for (std::size_t i = 0; i < d.size(); ++i) r[std::size_t(k) + i] -= fac * d[i];
        ztrim(r);
    }
    if (!r.empty()) return false;
    if (quot) *quot = q;
    return true;
}

} // namespace detail

/// Factor a monic integer polynomial into monic irreducible integer factors.
/// Intended for the small degrees of field-defining polynomials (<= 8).
inline std::vector<ZPoly> factor_monic_z(const ZPoly& f_in) {
    ZPoly f = f_in;
    ztrim(f);
    if (f.empty() || f.back() != 1) throw error("factor_monic_z: polynomial must be monic");
    if (zdeg(f) <= 1) return {f};

    // choose a prime with f squarefree mod p
    mpz_class disc = discriminant_z(f);
    if (disc == 0) {
        // not squarefree over Z: split off gcd(f, f') and recurse
        QPoly q = to_qpoly(f);
        QPoly g = gcd(q, q.derivative());
        QPoly rest = q.divmod(g).first;
        std::vector<ZPoly> out;
        for (auto& part : {g.monic(), rest.monic()}) {
            if (part.degree() >= 1)
                for (auto& irr : factor_monic_z(to_zpoly(part))) out.push_back(irr);
        }
        return out;
    }
    unsigned long p = 0;
    for (unsigned long cand : {3ul, 5ul, 7ul, 11ul, 13ul, 17ul, 19ul, 23ul, 29ul, 31ul,
                               37ul, 41ul, 43ul, 47ul, 53ul, 59ul, 61ul, 67ul, 71ul, 2ul}) {
        if (mpz_fdiv_ui(disc.get_mpz_t(), cand) != 0) { p = cand; break; }
    }
    if (p == 0) throw error("factor_monic_z: no suitable prime found");
    modp::Ctx c{mpz_class(p)};
    auto fac = modp::factor(modp::from_z(f, c), c);
    if (fac.size() == 1 && fac[0].second == 1) return {f}; // irreducible mod p

    // Landau-Mignotte bound on factor coefficients
    mpq_class norm2 = 0;
    for (auto& a : f) norm2 += mpq_class(a) * mpq_class(a);
    double bound_log2 = zdeg(f) + 0.5 * std::log2(to_double(norm2) + 1.0) + 1.0;
    mpz_class target = 1;
    mpz_class pz = p;
    while (mpz_sizeinbase(target.get_mpz_t(), 2) < (std::size_t)bound_log2 + 2) target *= pz;

    std::vector<ZPoly> start;
    for (auto& [q, m] : fac) {
        ZPoly lifted(q.begin(), q.end());
        for (int i = 0; i < m; ++i) start.push_back(lifted);
    }
    // collapse repeated mod-p factors: Zassenhaus needs squarefree mod p;
    // disc != 0 mod p guarantees multiplicities are 1
    for (auto& [q, m] : fac)
        if (m != 1) throw error("internal: non-squarefree reduction chosen");

    hensel::MultiLift lift(pz, start);
    lift.lift_to(f, target);
    std::vector<ZPoly> modular;
    for (auto& gi : lift.g) modular.push_back(hensel::mod_sym(gi, lift.pk));

    // subset recombination
    std::vector<ZPoly> out;
    ZPoly rest = f;
    std::vector<int> alive(modular.size(), 1);
    int r = int(modular.size());
    for (int take = 1; take <= r; ++take) {
        bool progress = true;
        while (progress) {
            progress = false;
            std::vector<int> idx;
            for (int i = 0; i < r; ++i)
                if (alive[std::size_t(i)]) idx.push_back(i);
            if (int(idx.size()) < take) break;
            std::vector<int> sel(std::size_t(take));
            // iterate over combinations
            std::function<bool(int, int)> go = [&](int pos, int startat) -> bool {
                if (pos == take) {
                    ZPoly cand{mpz_class(1)};
                    for (int j = 0; j < take; ++j)
                        cand = hensel::zmul(cand, modular[std::size_t(idx[std::size_t(sel[std::size_t(j)])])]);
                    cand = hensel::mod_sym(cand, lift.pk);
                    ZPoly quot;
                    if (detail::zpoly_divides(cand, rest, &quot)) {
                        out.push_back(cand);
                        rest = quot;
                        for (int j = 0; j < take; ++j) alive[std::size_t(idx[std::size_t(sel[std::size_t(j)])])] = 0;
                        return true;
                    }
                    return false;
                }
                for (int i = startat; i < int(idx.size()); ++i) {
                    sel[std::size_t(pos)] = i;
                    if (go(pos + 1, i + 1)) return true;
                }
                return false;
            };
            if (go(0, 0)) progress = true;
            if (zdeg(rest) == 0) break;
        }
        if (zdeg(rest) == 0) break;
    }
    if (zdeg(rest) > 0) out.push_back(rest);
    std::sort(out.begin(), out.end(), [](const ZPoly& a, const ZPoly& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        for (std::size_t i = a.size(); i-- > 0;)
            if (a[i] != b[i]) return a[i] < b[i];
        return false;
    });
    return out;
}

// ---------------------------------------------------------------------------
// Sturm sequences: exact real-root counting and isolation

class SturmSequence {
public:
    explicit SturmSequence(const QPoly& f) {
        QPoly a = f, b = f.derivative();
        seq_.push_back(a);
        while (!b.is_zero()) {
            QPoly r = a.divmod(b).second;
            seq_.push_back(b);
            a = std::move(b);
            b = r * mpq_class(-1);
        }
    }

    /// Number of distinct real roots in (a, b].
    int count(const mpq_class& a, const mpq_class& b) const {
        return variations(a) - variations(b);
    }

    int count_all() const {
        // Cauchy bound
        mpq_class bound = cauchy_bound();
        return count(-bound, bound);
    }

    mpq_class cauchy_bound() const {
        const QPoly& f = seq_[0];
        mpq_class m = 0;
        for (auto& c : f.c) {
            mpq_class a = abs(c / f.lc());
            if (a > m) m = a;
        }
        return m + 1;
    }

    /// Isolating intervals (a_i, b_i] for every distinct real root, each of
    /// width <= tol.
    std::vector<std::pair<mpq_class, mpq_class>> isolate(const mpq_class& tol) const {
        std::vector<std::pair<mpq_class, mpq_class>> out;
        mpq_class bound = cauchy_bound();
        bisect(-bound, bound, tol, out);
        std::sort(out.begin(), out.end(),
                  [](auto& u, auto& v) { return u.first < v.first; });
        return out;
    }

private:
    int variations(const mpq_class& x) const {
        int var = 0, prev = 0;
        for (auto& p : seq_) {
            mpq_class v = p.eval(x);
            int s = sgn(v);
            if (s != 0) {
                if (prev != 0 && s != prev) ++var;
                prev = s;
            }
        }
        return var;
    }
    static int sgn(const mpq_class& v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

    void bisect(const mpq_class& a, const mpq_class& b, const mpq_class& tol,
                std::vector<std::pair<mpq_class, mpq_class>>& out) const {
        int n = count(a, b);
        if (n == 0) return;
        if (n == 1 && b - a <= tol) {
            out.emplace_back(a, b);
            return;
        }
        mpq_class mid = (a + b) / 2;
        bisect(a, mid, tol, out);
        bisect(mid, b, tol, out);
    }

    std::vector<QPoly> seq_;
};

// ---------------------------------------------------------------------------
// Newton polygon

struct PolygonSegment {
    mpq_class slope;
    int length; // horizontal extent = number of roots with valuation -slope
};

/// Lower convex hull of the points (i, v_i); points with undefined value
/// (zero coefficients) are omitted by the caller. Returns segments left to
/// right with strictly increasing slopes.
inline std::vector<PolygonSegment> newton_polygon(
    const std::vector<std::pair<int, mpq_class>>& pts_in) {
    auto pts = pts_in;
    std::sort(pts.begin(), pts.end(),
              [](auto& a, auto& b) { return a.first < b.first; });
    if (pts.size() < 2) return {};
    std::vector<std::pair<int, mpq_class>> hull;
    for (auto& pt : pts) {
        while (hull.size() >= 2) {
            auto& a = hull[hull.size() - 2];
            auto& b = hull[hull.size() - 1];
            // keep b only if it lies strictly below segment a-pt
            mpq_class lhs = (b.second - a.second) * (pt.first - a.first);
            mpq_class rhs = (pt.second - a.second) * (b.first - a.first);
            if (lhs < rhs) break;
            hull.pop_back();
        }
        hull.push_back(pt);
    }
    std::vector<PolygonSegment> segs;
    for (std::size_t i = 1; i < hull.size(); ++i) {
        mpq_class s = (hull[i].second - hull[i - 1].second) /
                      mpq_class(hull[i].first - hull[i - 1].first);
        segs.push_back({s, hull[i].first - hull[i - 1].first});
    }
    return segs;
}

} // namespace heightgap

#endif
