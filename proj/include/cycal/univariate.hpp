#pragma once

#include <cstdint>
#include <functional>
#include <random>

#include "polynomial.hpp"

namespace cycal {

// Dense univariate polynomials, coefficient index = degree.  Field arithmetic
// is delegated to FieldSpec; the Hensel machinery below works over Z.
using UPoly = std::vector<mpq_class>;

namespace uni {

inline void trim(UPoly& f)
{
    while (!f.empty() && f.back() == 0) f.pop_back();
}

inline int deg(const UPoly& f) { return static_cast<int>(f.size()) - 1; }
inline bool is_zero(const UPoly& f) { return f.empty(); }

inline UPoly from_const(const mpq_class& c)
{
    UPoly f;
    if (c != 0) f.push_back(c);
    return f;
}

inline UPoly add(const FieldSpec& F, const UPoly& a, const UPoly& b)
{
    UPoly r(std::max(a.size(), b.size()), mpq_class(0));
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] = F.add(r[i], b[i]);
    trim(r);
    return r;
}

inline UPoly sub(const FieldSpec& F, const UPoly& a, const UPoly& b)
{
    UPoly r(std::max(a.size(), b.size()), mpq_class(0));
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] = F.sub(r[i], b[i]);
    trim(r);
    return r;
}

inline UPoly mul(const FieldSpec& F, const UPoly& a, const UPoly& b)
{
    if (a.empty() || b.empty()) return {};
    UPoly r(a.size() + b.size() - 1, mpq_class(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    for (auto& c : r) c = F.normalize(c);
    trim(r);
    return r;
}

inline UPoly scale(const FieldSpec& F, const UPoly& a, const mpq_class& c)
{
    UPoly r;
    r.reserve(a.size());
    for (const auto& x : a) r.push_back(F.mul(x, c));
    trim(r);
    return r;
}

inline UPoly monic(const FieldSpec& F, const UPoly& a)
{
    if (a.empty()) return a;
    return scale(F, a, F.inv(a.back()));
}

inline void divmod(const FieldSpec& F, const UPoly& a, const UPoly& b, UPoly& q, UPoly& r)
{
    if (b.empty()) fail(errc::zero_input, "univariate division by zero");
    r = a;
    q.assign(a.size() > b.size() ? a.size() - b.size() + 1 : 1, mpq_class(0));
    mpq_class lc_inv = F.inv(b.back());
    while (!r.empty() && r.size() >= b.size()) {
        size_t shift = r.size() - b.size();
        mpq_class c = F.mul(r.back(), lc_inv);
        q[shift] = F.add(q[shift], c);
        for (size_t i = 0; i < b.size(); ++i)
            r[shift + i] = F.sub(r[shift + i], F.mul(c, b[i]));
        trim(r);
    }
    trim(q);
}

inline UPoly rem(const FieldSpec& F, const UPoly& a, const UPoly& b)
{
    UPoly q, r;
    divmod(F, a, b, q, r);
    return r;
}

inline UPoly quo(const FieldSpec& F, const UPoly& a, const UPoly& b)
{
    UPoly q, r;
    divmod(F, a, b, q, r);
    return q;
}

inline UPoly gcd(const FieldSpec& F, UPoly a, UPoly b)
{
    while (!b.empty()) {
        UPoly r = rem(F, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(F, a);
}

// g, s, t with g = gcd, s*a + t*b = g.
inline UPoly xgcd(const FieldSpec& F, UPoly a, UPoly b, UPoly& s, UPoly& t)
{
    UPoly s0 = from_const(1), s1;
    UPoly t0, t1 = from_const(1);
    while (!b.empty()) {
        UPoly q, r;
        divmod(F, a, b, q, r);
        a = std::move(b);
        b = std::move(r);
        UPoly s2 = sub(F, s0, mul(F, q, s1));
        UPoly t2 = sub(F, t0, mul(F, q, t1));
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (!a.empty()) {
        mpq_class inv = F.inv(a.back());
        a = scale(F, a, inv);
        s0 = scale(F, s0, inv);
        t0 = scale(F, t0, inv);
    }
    s = s0;
    t = t0;
    return a;
}

inline UPoly derivative(const FieldSpec& F, const UPoly& f)
{
    UPoly r;
    for (size_t i = 1; i < f.size(); ++i) r.push_back(F.mul(f[i], F.from_int(static_cast<long>(i))));
    trim(r);
    return r;
}

inline mpq_class eval(const FieldSpec& F, const UPoly& f, const mpq_class& x)
{
    mpq_class acc(0);
    for (size_t i = f.size(); i-- > 0;) acc = F.add(F.mul(acc, x), f[i]);
    return acc;
}

inline UPoly pow_mod(const FieldSpec& F, UPoly base, mpz_class e, const UPoly& mod)
{
    UPoly r = from_const(1);
    base = rem(F, base, mod);
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = rem(F, mul(F, r, base), mod);
        e >>= 1;
        if (e > 0) base = rem(F, mul(F, base, base), mod);
    }
    return r;
}

// res(f, g); for monic f this is prod g(alpha) over the roots of f.
inline mpq_class resultant(const FieldSpec& F, UPoly f, UPoly g)
{
    if (f.empty() || g.empty()) return mpq_class(0);
    mpq_class res(1);
    while (true) {
        if (deg(g) == 0) {
            res = F.mul(res, F.pow(g.back(), static_cast<unsigned long>(deg(f))));
            return res;
        }
        UPoly r = rem(F, f, g);
        if (r.empty()) return mpq_class(0);
        long df = deg(f), dg = deg(g), dr = deg(r);
        if ((df * dg) % 2 == 1) res = F.neg(res);
        res = F.mul(res, F.pow(g.back(), static_cast<unsigned long>(df - dr)));
        f = std::move(g);
        g = std::move(r);
    }
}

struct SqfPart {
    UPoly factor;  // monic, squarefree
    unsigned multiplicity;
};

// Squarefree decomposition, valid in characteristic 0 and p (perfect base).
inline std::vector<SqfPart> squarefree_decomposition(const FieldSpec& F, UPoly f)
{
    std::vector<SqfPart> out;
    f = monic(F, f);
    if (deg(f) <= 0) return out;
    UPoly fp = derivative(F, f);
    if (is_zero(fp)) {
        // f = g(x^p); coefficients are p-th powers of themselves over F_p.
        unsigned long p = F.characteristic();
        UPoly g;
        for (size_t i = 0; i < f.size(); i += p) g.push_back(f[i]);
        auto inner = squarefree_decomposition(F, g);
        for (auto& part : inner) out.push_back({part.factor, part.multiplicity * static_cast<unsigned>(p)});
        return out;
    }
    UPoly c = gcd(F, f, fp);
    UPoly w = quo(F, f, c);
    unsigned i = 1;
    while (deg(w) > 0) {
        UPoly y = gcd(F, w, c);
        UPoly z = quo(F, w, y);
        if (deg(z) > 0) out.push_back({monic(F, z), i});
        w = std::move(y);
        c = quo(F, c, w);
        ++i;
    }
    if (deg(c) > 0) {
        unsigned long p = F.characteristic();
        UPoly g;
        for (size_t j = 0; j < c.size(); j += p) g.push_back(c[j]);
        auto inner = squarefree_decomposition(F, g);
        for (auto& part : inner) {
            bool merged = false;
            for (auto& o : out)
                if (o.factor == part.factor) {
                    o.multiplicity += part.multiplicity * static_cast<unsigned>(p);
                    merged = true;
                }
            if (!merged) out.push_back({part.factor, part.multiplicity * static_cast<unsigned>(p)});
        }
    }
    return out;
}

// --- factorization over F_p ------------------------------------------------

inline uint64_t poly_hash(const UPoly& f)
{
    uint64_t h = 0x9e3779b97f4a7c15ull;
    for (const auto& c : f) {
        h ^= std::hash<std::string>{}(c.get_str()) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
}

// Equal-degree splitting (Cantor-Zassenhaus; trace construction for p = 2).
inline void equal_degree_split(const FieldSpec& F, const UPoly& f, int d, std::vector<UPoly>& out,
                               std::mt19937_64& rng)
{
    if (deg(f) == d) {
        out.push_back(monic(F, f));
        return;
    }
    unsigned long p = F.characteristic();
    int n = deg(f);
    while (true) {
        UPoly a(static_cast<size_t>(n), mpq_class(0));
        for (auto& c : a) c = F.from_int(static_cast<long>(rng() % p));
        trim(a);
        if (deg(a) < 1) continue;
        UPoly b;
        if (p == 2) {
            // Trace map: a + a^2 + a^4 + ... (d terms).
            UPoly acc = rem(F, a, f), cur = acc;
            for (int i = 1; i < d; ++i) {
                cur = rem(F, mul(F, cur, cur), f);
                acc = add(F, acc, cur);
            }
            b = acc;
        } else {
            mpz_class pd;
            mpz_ui_pow_ui(pd.get_mpz_t(), p, static_cast<unsigned long>(d));
            mpz_class e = (pd - 1) / 2;
            b = sub(F, pow_mod(F, a, e, f), from_const(1));
        }
        UPoly g = gcd(F, b, f);
        if (deg(g) > 0 && deg(g) < n) {
            equal_degree_split(F, g, d, out, rng);
            equal_degree_split(F, quo(F, f, g), d, out, rng);
            return;
        }
    }
}

struct UniFactor {
    UPoly factor;  // monic irreducible
    unsigned multiplicity;
};

inline std::vector<UniFactor> factor_fp(const FieldSpec& F, const UPoly& input)
{
    std::vector<UniFactor> out;
    std::mt19937_64 rng(poly_hash(input) ^ 0x5eedu);
    for (const auto& part : squarefree_decomposition(F, input)) {
        // Distinct-degree, then equal-degree split.
        UPoly g = part.factor;
        UPoly h = rem(F, UPoly{mpq_class(0), mpq_class(1)}, g);
        int d = 0;
        while (deg(g) > 0) {
            ++d;
            if (2 * d > deg(g)) {
                out.push_back({monic(F, g), part.multiplicity});
                break;
            }
            h = pow_mod(F, h, mpz_class(F.characteristic()), g);
            UPoly diff = sub(F, h, UPoly{mpq_class(0), mpq_class(1)});
            UPoly gd = gcd(F, diff, g);
            if (deg(gd) > 0) {
                std::vector<UPoly> pieces;
                equal_degree_split(F, gd, d, pieces, rng);
                for (auto& q : pieces) out.push_back({q, part.multiplicity});
                g = quo(F, g, gd);
                h = rem(F, h, g);
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const UniFactor& a, const UniFactor& b) {
        if (a.factor.size() != b.factor.size()) return a.factor.size() < b.factor.size();
        for (size_t i = a.factor.size(); i-- > 0;) {
            if (a.factor[i] != b.factor[i]) return a.factor[i] < b.factor[i];
        }
        return a.multiplicity < b.multiplicity;
    });
    return out;
}

// --- factorization over Q ---------------------------------------------------

using ZPoly = std::vector<mpz_class>;

inline void ztrim(ZPoly& f)
{
    while (!f.empty() && f.back() == 0) f.pop_back();
}

inline ZPoly zmul(const ZPoly& a, const ZPoly& b)
{
    if (a.empty() || b.empty()) return {};
    ZPoly r(a.size() + b.size() - 1, mpz_class(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

// Exact division in Z[x]; nullopt when not divisible.
inline std::optional<ZPoly> zdivide(const ZPoly& a, const ZPoly& b)
{
    if (b.empty()) return std::nullopt;
    ZPoly r = a, q(a.size() > b.size() ? a.size() - b.size() + 1 : 1, mpz_class(0));
    ztrim(r);
    while (!r.empty() && r.size() >= b.size()) {
        mpz_class c = r.back() / b.back();
        if (c * b.back() != r.back()) return std::nullopt;
        size_t shift = r.size() - b.size();
        q[shift] = c;
        for (size_t i = 0; i < b.size(); ++i) r[shift + i] -= c * b[i];
        ztrim(r);
    }
    if (!r.empty()) return std::nullopt;
    ztrim(q);
    return q;
}

inline mpz_class zcontent(const ZPoly& f)
{
    mpz_class g(0);
    for (const auto& c : f) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    return g;
}

inline ZPoly to_primitive_z(const UPoly& f)
{
    mpz_class den(1);
    for (const auto& c : f) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den().get_mpz_t());
    ZPoly z;
    z.reserve(f.size());
    for (const auto& c : f) z.push_back(mpz_class(c.get_num() * (den / c.get_den())));
    mpz_class cont = zcontent(z);
    if (cont != 0)
        for (auto& c : z) c /= cont;
    if (!z.empty() && z.back() < 0)
        for (auto& c : z) c = -c;
    return z;
}

inline UPoly z_to_q(const ZPoly& f)
{
    UPoly r;
    r.reserve(f.size());
    for (const auto& c : f) r.push_back(mpq_class(c));
    return r;
}

namespace hensel {

inline ZPoly mod_sym(const ZPoly& f, const mpz_class& m)
{
    ZPoly r = f;
    for (auto& c : r) {
        c %= m;
        if (c < 0) c += m;
        if (2 * c > m) c -= m;
    }
    ztrim(r);
    return r;
}

inline ZPoly zm_norm(ZPoly f, const mpz_class& m)
{
    for (auto& c : f) {
        c %= m;
        if (c < 0) c += m;
    }
    ztrim(f);
    return f;
}

inline ZPoly zm_add(const ZPoly& a, const ZPoly& b, const mpz_class& m)
{
    ZPoly r(std::max(a.size(), b.size()), mpz_class(0));
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    return zm_norm(std::move(r), m);
}

inline ZPoly zm_sub(const ZPoly& a, const ZPoly& b, const mpz_class& m)
{
    ZPoly r(std::max(a.size(), b.size()), mpz_class(0));
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    return zm_norm(std::move(r), m);
}

inline ZPoly zm_mul(const ZPoly& a, const ZPoly& b, const mpz_class& m)
{
    return zm_norm(zmul(a, b), m);
}

// Division with remainder mod m; requires lc(b) invertible mod m.
inline void zm_divmod(const ZPoly& a, const ZPoly& b, const mpz_class& m, ZPoly& q, ZPoly& r)
{
    r = zm_norm(a, m);
    q.assign(a.size() > b.size() ? a.size() - b.size() + 1 : 1, mpz_class(0));
    mpz_class lcinv;
    mpz_class lc = b.back() % m;
    if (lc < 0) lc += m;
    if (mpz_invert(lcinv.get_mpz_t(), lc.get_mpz_t(), m.get_mpz_t()) == 0)
        fail(errc::resource_limit, "non-invertible leading coefficient in Hensel division");
    while (!r.empty() && r.size() >= b.size()) {
        size_t shift = r.size() - b.size();
        mpz_class c = (r.back() * lcinv) % m;
        q[shift] = (q[shift] + c) % m;
        for (size_t i = 0; i < b.size(); ++i) {
            r[shift + i] = (r[shift + i] - c * b[i]) % m;
            if (r[shift + i] < 0) r[shift + i] += m;
        }
        ztrim(r);
    }
    ztrim(q);
}

// One quadratic Hensel step (von zur Gathen 15.10): from
//   f = g*h (mod m), s*g + t*h = 1 (mod m), g and h monic,
// to the same congruences mod m^2.
inline void step(const ZPoly& f, ZPoly& g, ZPoly& h, ZPoly& s, ZPoly& t, const mpz_class& m)
{
    mpz_class m2 = m * m;
    ZPoly e = zm_sub(f, zm_mul(g, h, m2), m2);
    ZPoly q, r;
    zm_divmod(zm_mul(s, e, m2), h, m2, q, r);
    ZPoly g1 = zm_add(zm_add(g, zm_mul(t, e, m2), m2), zm_mul(q, g, m2), m2);
    ZPoly h1 = zm_add(h, r, m2);
    ZPoly b = zm_sub(zm_add(zm_mul(s, g1, m2), zm_mul(t, h1, m2), m2), ZPoly{mpz_class(1)}, m2);
    ZPoly c, d;
    zm_divmod(zm_mul(s, b, m2), h1, m2, c, d);
    ZPoly s1 = zm_sub(s, d, m2);
    ZPoly t1 = zm_sub(zm_sub(t, zm_mul(t, b, m2), m2), zm_mul(c, g1, m2), m2);
    g = std::move(g1);
    h = std::move(h1);
    s = std::move(s1);
    t = std::move(t1);
}

}  // namespace hensel

inline std::vector<UniFactor> factor_q(const UPoly& input);

// Factor a primitive squarefree integer polynomial of degree in [1, 8].
inline std::vector<ZPoly> factor_squarefree_z(const ZPoly& h0)
{
    ZPoly h = h0;
    int n = static_cast<int>(h.size()) - 1;
    if (n <= 0) return {};
    if (n == 1) return {h};

    // Rational-root peel (p/q with p | h(0), q | lc).
    std::vector<ZPoly> linear;
    bool peeled = true;
    while (peeled && static_cast<int>(h.size()) - 1 >= 1) {
        peeled = false;
        mpz_class a0 = h.front(), an = h.back();
        if (a0 == 0) {
            linear.push_back({mpz_class(0), mpz_class(1)});
            h.erase(h.begin());
            peeled = true;
            continue;
        }
        std::vector<mpz_class> ps, qs;
        auto divisors = [](const mpz_class& v, std::vector<mpz_class>& out) {
            mpz_class a = abs(v);
            for (mpz_class d(1); d * d <= a && d < 2000000; ++d)
                if (a % d == 0) {
                    out.push_back(d);
                    out.push_back(a / d);
                }
        };
        divisors(a0, ps);
        divisors(an, qs);
        for (const auto& pv : ps) {
            for (const auto& qv : qs) {
                for (int sign = 1; sign >= -1 && !peeled; sign -= 2) {
                    mpz_class g;
                    mpz_gcd(g.get_mpz_t(), pv.get_mpz_t(), qv.get_mpz_t());
                    if (g != 1) continue;
                    // candidate root sign*pv/qv: divide by (qv*x - sign*pv)
                    ZPoly lin = {mpz_class(-sign * pv), qv};
                    auto quot = zdivide(h, lin);
                    if (quot) {
                        linear.push_back(lin);
                        h = *quot;
                        peeled = true;
                    }
                }
                if (peeled) break;
            }
            if (peeled) break;
        }
    }
    n = static_cast<int>(h.size()) - 1;
    std::vector<ZPoly> out = linear;
    if (n <= 0) return out;
    if (n <= 3) {
        // No rational root and degree <= 3: irreducible over Q.
        out.push_back(h);
        return out;
    }
    if (n > 8) fail(errc::degree_bound, "rational factorization implemented up to degree 8");

    // Zassenhaus: factor mod p, Hensel lift, recombine.
    unsigned long prime = 0;
    static const unsigned long candidates[] = {3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53};
    FieldSpec Fp;
    UPoly hq;
    for (unsigned long p : candidates) {
        if (mpz_class(h.back()) % p == 0) continue;
        FieldSpec F = FieldSpec::prime(p);
        UPoly hp;
        for (const auto& c : h) hp.push_back(F.normalize(mpq_class(c)));
        trim(hp);
        if (deg(gcd(F, hp, derivative(F, hp))) == 0) {
            prime = p;
            Fp = F;
            hq = monic(F, hp);
            break;
        }
    }
    if (prime == 0) fail(errc::resource_limit, "no good prime for Zassenhaus lifting");

    auto modular = factor_fp(Fp, hq);
    std::vector<ZPoly> lifted;  // monic lifts mod p^k of the modular factors
    // Coefficient bound (Mignotte-flavored): factors of h have coefficients
    // bounded by 2^n * |h|_2 * |lc|.
    mpq_class norm2(0);
    for (const auto& c : h) norm2 += mpq_class(c) * mpq_class(c);
    mpz_class B = mpz_class(1) << n;
    mpz_class sq = sqrt(norm2.get_num() / norm2.get_den()) + 1;
    B *= sq * abs(h.back());
    // Working modulus is a tower value p^(2^J) so every quadratic Hensel
    // step's m^2 divides it.
    mpz_class pk(prime);
    while (pk <= 2 * B) pk *= pk;

    // Lift the full factorization via a binary tree of quadratic Hensel
    // steps; every node target is monic mod the working modulus.
    std::function<void(const ZPoly&, std::vector<UPoly>, const mpz_class&, std::vector<ZPoly>&)> split =
        [&](const ZPoly& target, std::vector<UPoly> leaves, const mpz_class& modulus,
            std::vector<ZPoly>& sink) {
            if (leaves.size() == 1) {
                sink.push_back(hensel::mod_sym(target, modulus));
                return;
            }
            size_t half = leaves.size() / 2;
            UPoly gq = from_const(1), rq = from_const(1);
            for (size_t i = 0; i < half; ++i) gq = mul(Fp, gq, leaves[i]);
            for (size_t i = half; i < leaves.size(); ++i) rq = mul(Fp, rq, leaves[i]);
            UPoly s, t;
            xgcd(Fp, rq, gq, s, t);  // s*rq + t*gq = 1, i.e. s*h + t*g with g=gq
            ZPoly g, h, sz, tz;
            for (const auto& c : gq) g.push_back(c.get_num());
            for (const auto& c : rq) h.push_back(c.get_num());
            for (const auto& c : t) sz.push_back(c.get_num());  // multiplies g
            for (const auto& c : s) tz.push_back(c.get_num());  // multiplies h
            mpz_class m(prime);
            while (m < modulus) {
                hensel::step(hensel::zm_norm(target, m * m), g, h, sz, tz, m);
                m *= m;
            }
            split(hensel::zm_norm(g, modulus), std::vector<UPoly>(leaves.begin(), leaves.begin() + half),
                  modulus, sink);
            split(hensel::zm_norm(h, modulus), std::vector<UPoly>(leaves.begin() + half, leaves.end()),
                  modulus, sink);
        };

    // Work with the monic version of h scaled by lc: hm(x) = lc^(n-1) h(x/lc).
    // Simpler classical route: lift against monic target hq over Z with
    // leading coefficient handled during recombination testing instead.
    {
        // target = h made monic mod p^k: multiply by inverse of lc mod p^k.
        mpz_class lcinv;
        mpz_class lc = h.back() % pk;
        if (lc < 0) lc += pk;
        if (mpz_invert(lcinv.get_mpz_t(), lc.get_mpz_t(), pk.get_mpz_t()) == 0)
            fail(errc::resource_limit, "leading coefficient not invertible in lift");
        ZPoly target;
        for (const auto& c : h) target.push_back(((c * lcinv) % pk + pk) % pk);
        ztrim(target);
        target = hensel::mod_sym(target, pk);
        std::vector<UPoly> leaves;
        for (const auto& mf : modular) leaves.push_back(mf.factor);
        split(target, leaves, pk, lifted);
    }

    // Recombination over subsets.
    std::vector<bool> used(lifted.size(), false);
    ZPoly rest = h;
    size_t remaining = lifted.size();
    for (size_t size = 1; size <= lifted.size(); ++size) {
        if (size > remaining) break;
        bool progress = true;
        while (progress) {
            progress = false;
            std::vector<size_t> avail;
            for (size_t i = 0; i < lifted.size(); ++i)
                if (!used[i]) avail.push_back(i);
            if (size > avail.size()) break;
            std::vector<size_t> idx(size);
            std::function<bool(size_t, size_t)> try_subsets = [&](size_t pos, size_t start) -> bool {
                if (pos == size) {
                    ZPoly cand = {mpz_class(rest.back())};
                    for (size_t k = 0; k < size; ++k) cand = zmul(cand, lifted[avail[idx[k]]]);
                    cand = hensel::mod_sym(cand, pk);
                    mpz_class cont = zcontent(cand);
                    if (cont != 0)
                        for (auto& c : cand) c /= cont;
                    if (!cand.empty() && cand.back() < 0)
                        for (auto& c : cand) c = -c;
                    auto quot = zdivide(rest, cand);
                    if (quot) {
                        out.push_back(cand);
                        rest = *quot;
                        for (size_t k = 0; k < size; ++k) used[avail[idx[k]]] = true;
                        remaining -= size;
                        return true;
                    }
                    return false;
                }
                for (size_t i = start; i < avail.size(); ++i) {
                    idx[pos] = i;
                    if (try_subsets(pos + 1, i + 1)) return true;
                }
                return false;
            };
            if (try_subsets(0, 0)) progress = true;
            if (static_cast<int>(rest.size()) - 1 == 0) break;
        }
        if (static_cast<int>(rest.size()) - 1 == 0) break;
    }
    if (static_cast<int>(rest.size()) - 1 > 0) out.push_back(rest);
    return out;
}

inline std::vector<UniFactor> factor_q(const UPoly& input)
{
    std::vector<UniFactor> out;
    FieldSpec Q = FieldSpec::rationals();
    for (const auto& part : squarefree_decomposition(Q, input)) {
        ZPoly z = to_primitive_z(part.factor);
        for (const auto& zf : factor_squarefree_z(z))
            out.push_back({monic(Q, z_to_q(zf)), part.multiplicity});
    }
    std::sort(out.begin(), out.end(), [](const UniFactor& a, const UniFactor& b) {
        if (a.factor.size() != b.factor.size()) return a.factor.size() < b.factor.size();
        for (size_t i = a.factor.size(); i-- > 0;) {
            if (a.factor[i] != b.factor[i]) return a.factor[i] < b.factor[i];
        }
        return a.multiplicity < b.multiplicity;
    });
    return out;
}

inline std::vector<UniFactor> factor(const FieldSpec& F, const UPoly& f)
{
    if (is_zero(f)) fail(errc::zero_input, "factorization of zero");
    if (F.is_prime()) return factor_fp(F, f);
    return factor_q(f);
}

}  // namespace uni

// Bridge between the sparse kernel polynomials and the dense univariate
// routines.  `var` is the index of the distinguished variable.
inline UPoly to_univariate(const Polynomial& f, size_t var)
{
    UPoly u(f.is_zero() ? 0 : f.degree_in(var) + 1, mpq_class(0));
    for (const auto& t : f.terms()) {
        for (size_t i = 0; i < t.exps.size(); ++i)
            if (i != var && t.exps[i] > 0) fail(errc::bad_argument, "polynomial is not univariate");
        u[t.exps[var]] = t.coeff;
    }
    uni::trim(u);
    return u;
}

inline Polynomial from_univariate(const RingPtr& ring, const UPoly& u, size_t var)
{
    std::vector<Term> terms;
    for (size_t i = 0; i < u.size(); ++i) {
        if (u[i] == 0) continue;
        Exponents e(ring->nvars(), 0);
        e[var] = static_cast<unsigned>(i);
        terms.push_back({std::move(e), u[i]});
    }
    return Polynomial(ring, std::move(terms));
}

struct PolyFactor {
    Polynomial factor;
    unsigned multiplicity;
};

// Irreducible factorization of a nonzero univariate kernel polynomial.
inline std::vector<PolyFactor> univariate_factor(const Polynomial& f)
{
    if (f.is_zero()) fail(errc::zero_input, "factorization of zero");
    auto var = f.sole_variable();
    if (!var) {
        if (f.is_constant()) return {};
        fail(errc::bad_argument, "univariate_factor needs a univariate polynomial");
    }
    UPoly u = to_univariate(f, *var);
    std::vector<PolyFactor> out;
    for (const auto& uf : uni::factor(f.ring()->field(), u))
        out.push_back({from_univariate(f.ring(), uf.factor, *var), uf.multiplicity});
    return out;
}

}  // namespace cycal
