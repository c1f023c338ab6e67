#pragma once

#include <gmpxx.h>

#include <string>

#include "error.hpp"

namespace cycal {

inline bool is_prime_u64(unsigned long n)
{
    if (n < 2) return false;
    for (unsigned long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Coefficient field: the rationals or a prime field F_p.  Scalars are stored
// as mpq_class; prime-field values are kept as canonical representatives in
// [0, p) with denominator 1.
class FieldSpec {
  public:
    enum class Kind { rationals, prime };

    FieldSpec() : kind_(Kind::rationals), p_(0) {}

    static FieldSpec rationals() { return FieldSpec(); }

    static FieldSpec prime(unsigned long p)
    {
        if (!is_prime_u64(p)) fail(errc::bad_argument, "field characteristic must be prime: " + std::to_string(p));
        FieldSpec f;
        f.kind_ = Kind::prime;
        f.p_ = p;
        return f;
    }

    Kind kind() const { return kind_; }
    bool is_rationals() const { return kind_ == Kind::rationals; }
    bool is_prime() const { return kind_ == Kind::prime; }
    unsigned long characteristic() const { return is_prime() ? p_ : 0; }

    bool operator==(const FieldSpec& o) const { return kind_ == o.kind_ && p_ == o.p_; }
    bool operator!=(const FieldSpec& o) const { return !(*this == o); }

    mpq_class normalize(const mpq_class& a) const
    {
        if (is_rationals()) {
            mpq_class r = a;
            r.canonicalize();
            return r;
        }
        mpz_class p(p_);
        mpz_class num = a.get_num(), den = a.get_den();
        mpz_class nm = num % p;
        if (nm < 0) nm += p;
        if (den != 1) {
            mpz_class dm = den % p, inv;
            if (dm < 0) dm += p;
            if (dm == 0 || mpz_invert(inv.get_mpz_t(), dm.get_mpz_t(), p.get_mpz_t()) == 0)
                fail(errc::zero_input, "division by zero in F_p");
            nm = (nm * inv) % p;
        }
        return mpq_class(nm);
    }

    mpq_class add(const mpq_class& a, const mpq_class& b) const
    {
        if (is_rationals()) return a + b;
        mpz_class r = (a.get_num() + b.get_num()) % mpz_class(p_);
        return mpq_class(r);
    }

    mpq_class sub(const mpq_class& a, const mpq_class& b) const
    {
        if (is_rationals()) return a - b;
        mpz_class r = (a.get_num() - b.get_num()) % mpz_class(p_);
        if (r < 0) r += p_;
        return mpq_class(r);
    }

    mpq_class mul(const mpq_class& a, const mpq_class& b) const
    {
        if (is_rationals()) return a * b;
        mpz_class r = (a.get_num() * b.get_num()) % mpz_class(p_);
        return mpq_class(r);
    }

    mpq_class neg(const mpq_class& a) const
    {
        if (is_rationals()) return -a;
        if (a == 0) return a;
        return mpq_class(mpz_class(p_ - a.get_num().get_ui()));
    }

    mpq_class inv(const mpq_class& a) const
    {
        if (a == 0) fail(errc::zero_input, "inverse of zero");
        if (is_rationals()) return 1 / a;
        mpz_class p(p_), inv;
        mpz_class n = a.get_num();
        if (mpz_invert(inv.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()) == 0)
            fail(errc::zero_input, "inverse of zero in F_p");
        return mpq_class(inv);
    }

    mpq_class div(const mpq_class& a, const mpq_class& b) const { return mul(a, inv(b)); }

    mpq_class pow(const mpq_class& a, unsigned long e) const
    {
        mpq_class r(1), base = a;
        unsigned long n = e;
        while (n) {
            if (n & 1) r = mul(r, base);
            n >>= 1;
            if (n) base = mul(base, base);
        }
        return r;
    }

    mpq_class from_int(long v) const { return normalize(mpq_class(v)); }

    std::string to_string() const
    {
        if (is_rationals()) return "QQ";
        return "Fp(" + std::to_string(p_) + ")";
    }

  private:
    Kind kind_;
    unsigned long p_;
};

}  // namespace cycal
