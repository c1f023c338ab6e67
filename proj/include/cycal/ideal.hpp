#pragma once

#include <mutex>
#include <queue>
#include <set>

#include "polynomial.hpp"

namespace cycal {

// Multivariate division: fully reduced remainder; no remainder term is
// divisible by any divisor leading term.  Quotients are tracked on demand.
inline Polynomial normal_form_list(const Polynomial& f, const std::vector<Polynomial>& divisors,
                                   std::vector<Polynomial>* quotients = nullptr)
{
    const auto& ring = f.ring();
    const auto& F = ring->field();
    if (quotients) quotients->assign(divisors.size(), Polynomial::zero(ring));
    Polynomial rem(ring), work = f;
    while (!work.is_zero()) {
        bool reduced = false;
        for (size_t i = 0; i < divisors.size(); ++i) {
            const auto& g = divisors[i];
            if (g.is_zero()) continue;
            if (divides(g.lead_exps(), work.lead_exps())) {
                Exponents e = exp_div(work.lead_exps(), g.lead_exps());
                mpq_class c = F.div(work.lead_coeff(), g.lead_coeff());
                work = work - g.mul_term(e, c);
                if (quotients)
                    (*quotients)[i] = (*quotients)[i] + Polynomial::monomial(ring, e, c);
                reduced = true;
                break;
            }
        }
        if (!reduced) {
            rem = rem + Polynomial::monomial(ring, work.lead_exps(), work.lead_coeff());
            work = work - Polynomial::monomial(ring, work.lead_exps(), work.lead_coeff());
        }
    }
    return rem;
}

inline Polynomial s_polynomial(const Polynomial& f, const Polynomial& g)
{
    check_same_ring(f.ring(), g.ring());
    const auto& ring = f.ring();
    const auto& F = ring->field();
    Exponents l = exp_lcm(f.lead_exps(), g.lead_exps());
    Polynomial a = f.mul_term(exp_div(l, f.lead_exps()), F.inv(f.lead_coeff()));
    Polynomial b = g.mul_term(exp_div(l, g.lead_exps()), F.inv(g.lead_coeff()));
    return a - b;
}

namespace detail {

struct SPair {
    size_t i, j;
    unsigned sugar;
    unsigned lcm_deg;

    bool operator>(const SPair& o) const
    {
        if (sugar != o.sugar) return sugar > o.sugar;
        if (lcm_deg != o.lcm_deg) return lcm_deg > o.lcm_deg;
        if (j != o.j) return j > o.j;
        return i > o.i;
    }
};

}  // namespace detail

// Buchberger with the sugar selection strategy and both classical criteria
// (coprime leading terms; chain criterion on treated pairs).
inline std::vector<Polynomial> buchberger(const RingPtr& ring, std::vector<Polynomial> gens)
{
    std::vector<Polynomial> basis;
    std::vector<unsigned> sugar;
    for (auto& g : gens) {
        if (g.is_zero()) continue;
        check_same_ring(ring, g.ring());
        basis.push_back(g.content_normalized());
        sugar.push_back(g.degree());
    }
    if (basis.empty()) return {};

    auto lcm_deg = [&](size_t i, size_t j) {
        return total_degree(exp_lcm(basis[i].lead_exps(), basis[j].lead_exps()));
    };
    auto pair_sugar = [&](size_t i, size_t j) {
        Exponents l = exp_lcm(basis[i].lead_exps(), basis[j].lead_exps());
        unsigned si = sugar[i] + total_degree(exp_div(l, basis[i].lead_exps()));
        unsigned sj = sugar[j] + total_degree(exp_div(l, basis[j].lead_exps()));
        return std::max(si, sj);
    };

    std::priority_queue<detail::SPair, std::vector<detail::SPair>, std::greater<detail::SPair>> queue;
    std::set<std::pair<size_t, size_t>> pending;
    auto push_pair = [&](size_t i, size_t j) {
        if (i > j) std::swap(i, j);
        queue.push({i, j, pair_sugar(i, j), lcm_deg(i, j)});
        pending.insert({i, j});
    };
    for (size_t i = 0; i < basis.size(); ++i)
        for (size_t j = i + 1; j < basis.size(); ++j) push_pair(i, j);

    while (!queue.empty()) {
        auto pr = queue.top();
        queue.pop();
        auto key = std::make_pair(pr.i, pr.j);
        if (!pending.count(key)) continue;
        pending.erase(key);
        const auto& fi = basis[pr.i];
        const auto& fj = basis[pr.j];

        if (exp_coprime(fi.lead_exps(), fj.lead_exps())) continue;

        Exponents l = exp_lcm(fi.lead_exps(), fj.lead_exps());
        bool chained = false;
        for (size_t k = 0; k < basis.size() && !chained; ++k) {
            if (k == pr.i || k == pr.j) continue;
            if (!divides(basis[k].lead_exps(), l)) continue;
            auto ik = std::minmax(pr.i, k);
            auto jk = std::minmax(pr.j, k);
            if (!pending.count({ik.first, ik.second}) && !pending.count({jk.first, jk.second}))
                chained = true;
        }
        if (chained) continue;

        Polynomial s = s_polynomial(fi, fj);
        Polynomial r = normal_form_list(s, basis);
        if (r.is_zero()) continue;
        basis.push_back(r.content_normalized());
        sugar.push_back(std::max(pair_sugar(pr.i, pr.j), r.degree()));
        size_t newi = basis.size() - 1;
        for (size_t k = 0; k < newi; ++k) push_pair(k, newi);
    }
    return basis;
}

// The unique reduced Groebner basis: pairwise-irredundant leading terms,
// fully inter-reduced tails, monic, sorted by ascending leading monomial.
inline std::vector<Polynomial> reduce_basis(const RingPtr& ring, std::vector<Polynomial> basis)
{
    std::vector<Polynomial> keep;
    for (size_t i = 0; i < basis.size(); ++i) {
        if (basis[i].is_zero()) continue;
        bool redundant = false;
        for (size_t j = 0; j < basis.size() && !redundant; ++j) {
            if (i == j || basis[j].is_zero()) continue;
            if (divides(basis[j].lead_exps(), basis[i].lead_exps())) {
                if (basis[i].lead_exps() != basis[j].lead_exps() || j < i) redundant = true;
            }
        }
        if (!redundant) keep.push_back(basis[i]);
    }
    std::vector<Polynomial> out;
    for (size_t i = 0; i < keep.size(); ++i) {
        std::vector<Polynomial> others;
        for (size_t j = 0; j < keep.size(); ++j)
            if (j != i) others.push_back(keep[j]);
        Polynomial r = normal_form_list(keep[i], others);
        if (!r.is_zero()) out.push_back(r.monic());
    }
    std::sort(out.begin(), out.end(), [&](const Polynomial& a, const Polynomial& b) {
        return ring->cmp(a.lead_exps(), b.lead_exps()) < 0;
    });
    return out;
}

class Ideal {
  public:
    Ideal() = default;

    Ideal(RingPtr ring, std::vector<Polynomial> gens)
        : ring_(std::move(ring)), gens_(std::move(gens)), cache_(std::make_shared<Cache>())
    {
        for (auto& g : gens_) check_same_ring(ring_, g.ring());
    }

    static Ideal zero(const RingPtr& ring) { return Ideal(ring, {}); }

    const RingPtr& ring() const { return ring_; }
    const std::vector<Polynomial>& gens() const { return gens_; }
    bool has_cached_basis() const { return cache_ && cache_->ready; }

    // Reduced Groebner basis for the ring's order; computed once and shared.
    const std::vector<Polynomial>& groebner() const
    {
        std::call_once(cache_->flag, [this] {
            cache_->basis = reduce_basis(ring_, buchberger(ring_, gens_));
            cache_->ready = true;
        });
        return cache_->basis;
    }

    Polynomial normal_form(const Polynomial& f) const
    {
        check_same_ring(ring_, f.ring());
        return normal_form_list(f, groebner());
    }

    bool contains(const Polynomial& f) const { return normal_form(f).is_zero(); }

    bool is_zero_ideal() const { return groebner().empty(); }

    bool is_unit_ideal() const
    {
        const auto& gb = groebner();
        return gb.size() == 1 && gb[0].is_constant();
    }

    bool operator==(const Ideal& o) const
    {
        check_same_ring(ring_, o.ring_);
        const auto& a = groebner();
        const auto& b = o.groebner();
        if (a.size() != b.size()) return false;
        for (size_t i = 0; i < a.size(); ++i)
            if (a[i] != b[i]) return false;
        return true;
    }

    bool operator!=(const Ideal& o) const { return !(*this == o); }

    std::string key() const
    {
        std::string s;
        for (const auto& g : groebner()) s += g.to_string() + ";";
        return s;
    }

  private:
    struct Cache {
        std::once_flag flag;
        bool ready = false;
        std::vector<Polynomial> basis;
    };

    RingPtr ring_;
    std::vector<Polynomial> gens_;
    std::shared_ptr<Cache> cache_;
};

// Krull dimension of R/I via the dimension of the leading-term ideal
// (largest variable subset supporting no leading monomial); -1 for (1).
inline int ideal_dimension(const Ideal& I)
{
    const auto& gb = I.groebner();
    if (!gb.empty() && gb[0].is_constant()) return -1;
    size_t n = I.ring()->nvars();
    std::vector<Exponents> leads;
    leads.reserve(gb.size());
    for (const auto& g : gb) leads.push_back(g.lead_exps());
    int best = 0;
    for (size_t mask = 0; mask < (size_t(1) << n); ++mask) {
        int size = __builtin_popcountll(mask);
        if (size <= best) continue;
        bool independent = true;
        for (const auto& l : leads) {
            bool inside = true;
            for (size_t v = 0; v < n && inside; ++v)
                if (l[v] && !(mask >> v & 1)) inside = false;
            if (inside) {
                independent = false;
                break;
            }
        }
        if (independent) best = size;
    }
    return best;
}

// --- ring plumbing: variable-name based maps and extensions ---------------

inline Polynomial map_to_ring(const Polynomial& f, const RingPtr& target)
{
    const auto& src = f.ring();
    std::vector<int> where(src->nvars());
    for (size_t i = 0; i < src->nvars(); ++i) {
        where[i] = target->var_index(src->vars()[i]);
        if (where[i] < 0) {
            // Variable absent from the target: legal only if unused.
            if (f.degree_in(i) > 0)
                fail(errc::ring_mismatch, "variable " + src->vars()[i] + " missing in target ring");
        }
    }
    std::vector<Term> terms;
    for (const auto& t : f.terms()) {
        Exponents e(target->nvars(), 0);
        for (size_t i = 0; i < t.exps.size(); ++i)
            if (t.exps[i]) e[static_cast<size_t>(where[i])] = t.exps[i];
        terms.push_back({std::move(e), t.coeff});
    }
    return Polynomial(target, std::move(terms));
}

inline std::string fresh_var_name(const RingPtr& ring, const std::string& stem)
{
    std::string name = stem;
    int k = 0;
    while (ring->var_index(name) >= 0) name = stem + std::to_string(k++);
    return name;
}

// Ring with extra variables prepended (block-eliminable).
inline RingPtr prepend_vars(const RingPtr& ring, const std::vector<std::string>& fresh,
                            MonomialOrder inner_hint = MonomialOrder::degrevlex())
{
    (void)inner_hint;
    std::vector<std::string> vars = fresh;
    vars.insert(vars.end(), ring->vars().begin(), ring->vars().end());
    return PolyRing::make(ring->field(), vars, MonomialOrder::block(static_cast<unsigned>(fresh.size())));
}

// Elements of a block(k)-ordered basis free of the first k variables form a
// basis of the elimination ideal; map them back into `target`.
inline std::vector<Polynomial> eliminate_prefix(const std::vector<Polynomial>& gb, unsigned k,
                                                const RingPtr& target)
{
    std::vector<Polynomial> out;
    for (const auto& g : gb) {
        bool uses = false;
        for (unsigned v = 0; v < k && !uses; ++v)
            if (g.degree_in(v) > 0) uses = true;
        if (!uses) out.push_back(map_to_ring(g, target));
    }
    return out;
}

// I : f^infinity via the Rabinowitsch trick (single elimination).
inline Ideal saturate(const Ideal& I, const Polynomial& f)
{
    if (f.is_zero()) fail(errc::zero_input, "saturation by zero");
    check_same_ring(I.ring(), f.ring());
    const auto& ring = I.ring();
    if (f.is_constant()) return Ideal(ring, I.gens());
    auto t = fresh_var_name(ring, "@t");
    auto ext = prepend_vars(ring, {t});
    std::vector<Polynomial> gens;
    for (const auto& g : I.gens()) gens.push_back(map_to_ring(g, ext));
    Polynomial tf = Polynomial::variable(ext, 0) * map_to_ring(f, ext);
    gens.push_back(Polynomial::one(ext) - tf);
    Ideal E(ext, gens);
    return Ideal(ring, eliminate_prefix(E.groebner(), 1, ring));
}

inline Ideal ideal_sum(const Ideal& A, const Ideal& B)
{
    check_same_ring(A.ring(), B.ring());
    std::vector<Polynomial> gens = A.gens();
    gens.insert(gens.end(), B.gens().begin(), B.gens().end());
    return Ideal(A.ring(), gens);
}

inline Ideal ideal_product(const Ideal& A, const Ideal& B)
{
    check_same_ring(A.ring(), B.ring());
    std::vector<Polynomial> gens;
    for (const auto& a : A.gens())
        for (const auto& b : B.gens()) gens.push_back(a * b);
    return Ideal(A.ring(), gens);
}

inline Ideal ideal_intersect(const Ideal& A, const Ideal& B)
{
    check_same_ring(A.ring(), B.ring());
    const auto& ring = A.ring();
    auto t = fresh_var_name(ring, "@t");
    auto ext = prepend_vars(ring, {t});
    Polynomial tv = Polynomial::variable(ext, 0);
    Polynomial omt = Polynomial::one(ext) - tv;
    std::vector<Polynomial> gens;
    for (const auto& a : A.gens()) gens.push_back(tv * map_to_ring(a, ext));
    for (const auto& b : B.gens()) gens.push_back(omt * map_to_ring(b, ext));
    Ideal E(ext, gens);
    return Ideal(ring, eliminate_prefix(E.groebner(), 1, ring));
}

// I : J^infinity = intersection over generators g of J of I : g^infinity.
inline Ideal saturate_by_ideal(const Ideal& I, const Ideal& J)
{
    check_same_ring(I.ring(), J.ring());
    bool first = true;
    Ideal acc;
    for (const auto& g : J.gens()) {
        if (g.is_zero()) continue;
        Ideal s = saturate(I, g);
        acc = first ? s : ideal_intersect(acc, s);
        first = false;
    }
    if (first) fail(errc::zero_input, "saturation by the zero ideal");
    return acc;
}

// f in rad(I), by Rabinowitsch.
inline bool radical_member(const Polynomial& f, const Ideal& I)
{
    if (f.is_zero()) return true;
    const auto& ring = I.ring();
    auto t = fresh_var_name(ring, "@t");
    auto ext = prepend_vars(ring, {t});
    std::vector<Polynomial> gens;
    for (const auto& g : I.gens()) gens.push_back(map_to_ring(g, ext));
    gens.push_back(Polynomial::one(ext) - Polynomial::variable(ext, 0) * map_to_ring(f, ext));
    return Ideal(ext, gens).is_unit_ideal();
}

}  // namespace cycal
