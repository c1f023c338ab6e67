#pragma once

#include <algorithm>
#include <memory>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "field.hpp"

namespace cycal {

using Exponents = std::vector<unsigned>;

inline unsigned total_degree(const Exponents& e)
{
    return std::accumulate(e.begin(), e.end(), 0u);
}

// Monomial orders.  lex and degrevlex are the user-facing orders; block(k)
// is the internal elimination order (degrevlex on the first k variables,
// ties broken by degrevlex on the rest) used by saturation, intersection
// and preimage computations.
struct MonomialOrder {
    enum class Kind { lex, degrevlex, block };
    Kind kind = Kind::degrevlex;
    unsigned block_size = 0;

    static MonomialOrder lex() { return {Kind::lex, 0}; }
    static MonomialOrder degrevlex() { return {Kind::degrevlex, 0}; }
    static MonomialOrder block(unsigned k) { return {Kind::block, k}; }

    bool operator==(const MonomialOrder& o) const
    {
        return kind == o.kind && block_size == o.block_size;
    }

    std::string to_string() const
    {
        switch (kind) {
            case Kind::lex: return "lex";
            case Kind::degrevlex: return "degrevlex";
            case Kind::block: return "block(" + std::to_string(block_size) + ")";
        }
        return "?";
    }
};

namespace detail {

inline int cmp_lex(const Exponents& a, const Exponents& b, size_t lo, size_t hi)
{
    for (size_t i = lo; i < hi; ++i) {
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    }
    return 0;
}

inline int cmp_degrevlex(const Exponents& a, const Exponents& b, size_t lo, size_t hi)
{
    unsigned da = 0, db = 0;
    for (size_t i = lo; i < hi; ++i) {
        da += a[i];
        db += b[i];
    }
    if (da != db) return da < db ? -1 : 1;
    for (size_t i = hi; i-- > lo;) {
        if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
    }
    return 0;
}

}  // namespace detail

// Returns <0, 0, >0 when a < b, a == b, a > b in the given order.
inline int compare_exponents(const Exponents& a, const Exponents& b, const MonomialOrder& ord)
{
    size_t n = a.size();
    switch (ord.kind) {
        case MonomialOrder::Kind::lex:
            return detail::cmp_lex(a, b, 0, n);
        case MonomialOrder::Kind::degrevlex:
            return detail::cmp_degrevlex(a, b, 0, n);
        case MonomialOrder::Kind::block: {
            size_t k = std::min<size_t>(ord.block_size, n);
            int c = detail::cmp_degrevlex(a, b, 0, k);
            if (c) return c;
            return detail::cmp_degrevlex(a, b, k, n);
        }
    }
    return 0;
}

inline bool divides(const Exponents& a, const Exponents& b)
{
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

inline Exponents exp_mul(const Exponents& a, const Exponents& b)
{
    Exponents r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline Exponents exp_div(const Exponents& a, const Exponents& b)
{
    Exponents r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline Exponents exp_lcm(const Exponents& a, const Exponents& b)
{
    Exponents r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
    return r;
}

inline bool exp_coprime(const Exponents& a, const Exponents& b)
{
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] && b[i]) return false;
    return true;
}

class PolyRing;
using RingPtr = std::shared_ptr<const PolyRing>;

class PolyRing : public std::enable_shared_from_this<PolyRing> {
  public:
    static RingPtr make(FieldSpec field, std::vector<std::string> vars,
                        MonomialOrder order = MonomialOrder::degrevlex())
    {
        std::set<std::string> seen;
        for (const auto& v : vars) {
            if (v.empty()) fail(errc::bad_argument, "empty variable name");
            if (!seen.insert(v).second) fail(errc::bad_argument, "duplicate variable name: " + v);
        }
        return RingPtr(new PolyRing(std::move(field), std::move(vars), order));
    }

    const FieldSpec& field() const { return field_; }
    const std::vector<std::string>& vars() const { return vars_; }
    size_t nvars() const { return vars_.size(); }
    const MonomialOrder& order() const { return order_; }

    int var_index(const std::string& name) const
    {
        for (size_t i = 0; i < vars_.size(); ++i)
            if (vars_[i] == name) return static_cast<int>(i);
        return -1;
    }

    int cmp(const Exponents& a, const Exponents& b) const { return compare_exponents(a, b, order_); }

    bool same_as(const PolyRing& o) const
    {
        return field_ == o.field_ && vars_ == o.vars_ && order_ == o.order_;
    }

    std::string to_string() const
    {
        std::string s = field_.to_string() + "[";
        for (size_t i = 0; i < vars_.size(); ++i) {
            if (i) s += ",";
            s += vars_[i];
        }
        s += "] " + order_.to_string();
        return s;
    }

  private:
    PolyRing(FieldSpec field, std::vector<std::string> vars, MonomialOrder order)
        : field_(std::move(field)), vars_(std::move(vars)), order_(order)
    {
    }

    FieldSpec field_;
    std::vector<std::string> vars_;
    MonomialOrder order_;
};

inline void check_same_ring(const RingPtr& a, const RingPtr& b)
{
    if (a.get() == b.get()) return;
    if (!a || !b || !a->same_as(*b)) fail(errc::ring_mismatch, "operands live in different rings");
}

}  // namespace cycal
