#pragma once

#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

#include "ring.hpp"

namespace cycal {

struct Term {
    Exponents exps;
    mpq_class coeff;
};

// Sparse multivariate polynomial with terms sorted in strictly descending
// monomial order.  No zero coefficients are stored.
class Polynomial {
  public:
    Polynomial() = default;

    explicit Polynomial(RingPtr ring) : ring_(std::move(ring)) {}

    Polynomial(RingPtr ring, std::vector<Term> terms) : ring_(std::move(ring))
    {
        std::map<Exponents, mpq_class, std::function<bool(const Exponents&, const Exponents&)>> acc(
            [this](const Exponents& a, const Exponents& b) { return ring_->cmp(a, b) > 0; });
        for (auto& t : terms) {
            if (t.exps.size() != ring_->nvars()) fail(errc::bad_argument, "exponent tuple has wrong length");
            acc[t.exps] += t.coeff;
        }
        for (auto& [e, c] : acc) {
            mpq_class cc = ring_->field().normalize(c);
            if (cc != 0) terms_.push_back({e, cc});
        }
    }

    static Polynomial zero(const RingPtr& ring) { return Polynomial(ring); }

    static Polynomial constant(const RingPtr& ring, const mpq_class& c)
    {
        Polynomial p(ring);
        mpq_class cc = ring->field().normalize(c);
        if (cc != 0) p.terms_.push_back({Exponents(ring->nvars(), 0), cc});
        return p;
    }

    static Polynomial one(const RingPtr& ring) { return constant(ring, 1); }

    static Polynomial variable(const RingPtr& ring, size_t i, unsigned e = 1)
    {
        if (i >= ring->nvars()) fail(errc::bad_argument, "variable index out of range");
        Polynomial p(ring);
        Exponents ex(ring->nvars(), 0);
        ex[i] = e;
        if (e == 0) return one(ring);
        p.terms_.push_back({ex, mpq_class(1)});
        return p;
    }

    static Polynomial monomial(const RingPtr& ring, Exponents e, const mpq_class& c)
    {
        Polynomial p(ring);
        mpq_class cc = ring->field().normalize(c);
        if (cc != 0) p.terms_.push_back({std::move(e), cc});
        return p;
    }

    const RingPtr& ring() const { return ring_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    bool is_constant() const
    {
        return terms_.empty() || (terms_.size() == 1 && total_degree(terms_[0].exps) == 0);
    }

    mpq_class constant_value() const
    {
        if (terms_.empty()) return mpq_class(0);
        if (!is_constant()) fail(errc::bad_argument, "polynomial is not constant");
        return terms_[0].coeff;
    }

    const Exponents& lead_exps() const
    {
        if (is_zero()) fail(errc::zero_input, "leading term of zero polynomial");
        return terms_.front().exps;
    }

    const mpq_class& lead_coeff() const
    {
        if (is_zero()) fail(errc::zero_input, "leading coefficient of zero polynomial");
        return terms_.front().coeff;
    }

    unsigned degree() const
    {
        unsigned d = 0;
        for (const auto& t : terms_) d = std::max(d, total_degree(t.exps));
        return d;
    }

    unsigned degree_in(size_t var) const
    {
        unsigned d = 0;
        for (const auto& t : terms_) d = std::max(d, t.exps[var]);
        return d;
    }

    // Index of the unique variable occurring, or nullopt for constants or
    // genuinely multivariate input.
    std::optional<size_t> sole_variable() const
    {
        std::optional<size_t> var;
        for (const auto& t : terms_)
            for (size_t i = 0; i < t.exps.size(); ++i)
                if (t.exps[i]) {
                    if (var && *var != i) return std::nullopt;
                    var = i;
                }
        return var;
    }

    Polynomial operator-() const
    {
        Polynomial r(ring_);
        r.terms_.reserve(terms_.size());
        for (const auto& t : terms_) r.terms_.push_back({t.exps, ring_->field().neg(t.coeff)});
        return r;
    }

    Polynomial operator+(const Polynomial& o) const
    {
        check_same_ring(ring_, o.ring_);
        Polynomial r(ring_);
        const auto& F = ring_->field();
        size_t i = 0, j = 0;
        while (i < terms_.size() && j < o.terms_.size()) {
            int c = ring_->cmp(terms_[i].exps, o.terms_[j].exps);
            if (c > 0) {
                r.terms_.push_back(terms_[i++]);
            } else if (c < 0) {
                r.terms_.push_back(o.terms_[j++]);
            } else {
                mpq_class s = F.add(terms_[i].coeff, o.terms_[j].coeff);
                if (s != 0) r.terms_.push_back({terms_[i].exps, s});
                ++i;
                ++j;
            }
        }
        for (; i < terms_.size(); ++i) r.terms_.push_back(terms_[i]);
        for (; j < o.terms_.size(); ++j) r.terms_.push_back(o.terms_[j]);
        return r;
    }

    Polynomial operator-(const Polynomial& o) const { return *this + (-o); }

    Polynomial mul_term(const Exponents& e, const mpq_class& c) const
    {
        Polynomial r(ring_);
        if (c == 0) return r;
        const auto& F = ring_->field();
        r.terms_.reserve(terms_.size());
        for (const auto& t : terms_) {
            mpq_class cc = F.mul(t.coeff, c);
            if (cc != 0) r.terms_.push_back({exp_mul(t.exps, e), cc});
        }
        return r;
    }

    Polynomial operator*(const Polynomial& o) const
    {
        check_same_ring(ring_, o.ring_);
        const auto& F = ring_->field();
        std::map<Exponents, mpq_class, std::function<bool(const Exponents&, const Exponents&)>> acc(
            [this](const Exponents& a, const Exponents& b) { return ring_->cmp(a, b) > 0; });
        for (const auto& s : terms_)
            for (const auto& t : o.terms_) acc[exp_mul(s.exps, t.exps)] += s.coeff * t.coeff;
        Polynomial r(ring_);
        for (auto& [e, c] : acc) {
            mpq_class cc = F.normalize(c);
            if (cc != 0) r.terms_.push_back({e, cc});
        }
        return r;
    }

    Polynomial operator*(const mpq_class& c) const
    {
        return mul_term(Exponents(ring_->nvars(), 0), ring_->field().normalize(c));
    }

    Polynomial pow(unsigned long n) const
    {
        Polynomial r = one(ring_), b = *this;
        while (n) {
            if (n & 1) r = r * b;
            n >>= 1;
            if (n) b = b * b;
        }
        return r;
    }

    bool operator==(const Polynomial& o) const
    {
        if (terms_.size() != o.terms_.size()) return false;
        for (size_t i = 0; i < terms_.size(); ++i)
            if (terms_[i].exps != o.terms_[i].exps || terms_[i].coeff != o.terms_[i].coeff) return false;
        return true;
    }

    bool operator!=(const Polynomial& o) const { return !(*this == o); }

    // Monic normalization (unit multiple; leading coefficient becomes 1).
    Polynomial monic() const
    {
        if (is_zero()) return *this;
        return mul_term(Exponents(ring_->nvars(), 0), ring_->field().inv(lead_coeff()));
    }

    // Unit multiple with coprime integer coefficients and positive lead
    // (over Q); monic over F_p.  Tames intermediate growth in basis
    // computations without changing the generated ideal/module.
    Polynomial content_normalized() const
    {
        if (is_zero()) return *this;
        if (!ring_->field().is_rationals()) return monic();
        mpz_class num_gcd(0), den_lcm(1);
        for (const auto& t : terms_) {
            mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), t.coeff.get_num().get_mpz_t());
            mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), t.coeff.get_den().get_mpz_t());
        }
        mpq_class scale(den_lcm, num_gcd);
        scale.canonicalize();
        if (lead_coeff() < 0) scale = -scale;
        return mul_term(Exponents(ring_->nvars(), 0), scale);
    }

    Polynomial derivative(size_t var) const
    {
        Polynomial r(ring_);
        const auto& F = ring_->field();
        for (const auto& t : terms_) {
            if (t.exps[var] == 0) continue;
            mpq_class c = F.mul(t.coeff, F.from_int(static_cast<long>(t.exps[var])));
            if (c == 0) continue;
            Exponents e = t.exps;
            e[var] -= 1;
            r.terms_.push_back({std::move(e), c});
        }
        // Terms keep relative order under d/dx for lex/degrevlex on a single
        // variable shift, but not in general; re-normalize.
        return Polynomial(r.ring_, std::move(r.terms_));
    }

    // Evaluate under a ring map: vars()[i] |-> images[i], where images live
    // in an arbitrary target ring (over the same field).
    Polynomial substitute(const RingPtr& target, const std::vector<Polynomial>& images) const
    {
        if (images.size() != ring_->nvars()) fail(errc::bad_argument, "substitution arity mismatch");
        Polynomial acc = Polynomial::zero(target);
        for (const auto& t : terms_) {
            Polynomial m = Polynomial::constant(target, t.coeff);
            for (size_t i = 0; i < t.exps.size(); ++i)
                if (t.exps[i]) m = m * images[i].pow(t.exps[i]);
            acc = acc + m;
        }
        return acc;
    }

    mpq_class evaluate(const std::vector<mpq_class>& point) const
    {
        const auto& F = ring_->field();
        mpq_class acc(0);
        for (const auto& t : terms_) {
            mpq_class m = t.coeff;
            for (size_t i = 0; i < t.exps.size(); ++i)
                if (t.exps[i]) m = F.mul(m, F.pow(F.normalize(point[i]), t.exps[i]));
            acc = F.add(acc, m);
        }
        return acc;
    }

    std::string to_string() const
    {
        if (is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& t : terms_) {
            mpq_class c = t.coeff;
            bool neg = c < 0;
            if (first) {
                if (neg) os << "-";
            } else {
                os << (neg ? " - " : " + ");
            }
            first = false;
            mpq_class a = neg ? mpq_class(-c) : c;
            bool has_vars = total_degree(t.exps) > 0;
            if (a != 1 || !has_vars) {
                os << a.get_str();
                if (has_vars) os << "*";
            }
            bool firstv = true;
            for (size_t i = 0; i < t.exps.size(); ++i) {
                if (!t.exps[i]) continue;
                if (!firstv) os << "*";
                firstv = false;
                os << ring_->vars()[i];
                if (t.exps[i] > 1) os << "^" << t.exps[i];
            }
        }
        return os.str();
    }

  private:
    RingPtr ring_;
    std::vector<Term> terms_;
};

inline Polynomial operator*(const mpq_class& c, const Polynomial& p) { return p * c; }

// Exact division test: returns the quotient when divisor | dividend.
inline std::optional<Polynomial> divide_exactly(const Polynomial& dividend, const Polynomial& divisor)
{
    if (divisor.is_zero()) fail(errc::zero_input, "division by zero polynomial");
    check_same_ring(dividend.ring(), divisor.ring());
    const auto& ring = dividend.ring();
    const auto& F = ring->field();
    Polynomial rem = dividend, quot(ring);
    while (!rem.is_zero()) {
        if (!divides(divisor.lead_exps(), rem.lead_exps())) return std::nullopt;
        Exponents e = exp_div(rem.lead_exps(), divisor.lead_exps());
        mpq_class c = F.div(rem.lead_coeff(), divisor.lead_coeff());
        Polynomial t = Polynomial::monomial(ring, e, c);
        quot = quot + t;
        rem = rem - divisor.mul_term(e, c);
    }
    return quot;
}

}  // namespace cycal
