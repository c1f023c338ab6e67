#pragma once

#include "ideal.hpp"

namespace cycal {

// Element of a free module R^r as a vector of polynomials.
struct ModVec {
    RingPtr ring;
    std::vector<Polynomial> comps;

    ModVec() = default;
    ModVec(RingPtr r, size_t rank) : ring(std::move(r)), comps(rank, Polynomial::zero(ring)) {}
    ModVec(RingPtr r, std::vector<Polynomial> c) : ring(std::move(r)), comps(std::move(c)) {}

    size_t rank() const { return comps.size(); }

    bool is_zero() const
    {
        for (const auto& p : comps)
            if (!p.is_zero()) return false;
        return true;
    }

    ModVec operator+(const ModVec& o) const
    {
        ModVec r(ring, comps.size());
        for (size_t i = 0; i < comps.size(); ++i) r.comps[i] = comps[i] + o.comps[i];
        return r;
    }

    ModVec operator-(const ModVec& o) const
    {
        ModVec r(ring, comps.size());
        for (size_t i = 0; i < comps.size(); ++i) r.comps[i] = comps[i] - o.comps[i];
        return r;
    }

    ModVec mul_term(const Exponents& e, const mpq_class& c) const
    {
        ModVec r(ring, comps.size());
        for (size_t i = 0; i < comps.size(); ++i) r.comps[i] = comps[i].mul_term(e, c);
        return r;
    }

    ModVec operator*(const Polynomial& p) const
    {
        ModVec r(ring, comps.size());
        for (size_t i = 0; i < comps.size(); ++i) r.comps[i] = comps[i] * p;
        return r;
    }
};

// Module term orders.  pot: position dominates (lower component index is
// bigger) -- used for syzygy/lift eliminations where a leading block must
// outrank trailing tags.  top: the ring's monomial order dominates -- used
// for variable elimination (saturation, intersection) inside modules.
enum class ModOrder { pot, top };

struct ModLead {
    size_t comp;
    Exponents exps;
    mpq_class coeff;
};

inline int mod_cmp(const RingPtr& ring, ModOrder ord, size_t c1, const Exponents& e1, size_t c2,
                   const Exponents& e2)
{
    if (ord == ModOrder::pot) {
        if (c1 != c2) return c1 < c2 ? 1 : -1;
        return ring->cmp(e1, e2);
    }
    int c = ring->cmp(e1, e2);
    if (c) return c;
    if (c1 != c2) return c1 < c2 ? 1 : -1;
    return 0;
}

inline std::optional<ModLead> mod_lead(const ModVec& v, ModOrder ord)
{
    std::optional<ModLead> best;
    for (size_t c = 0; c < v.comps.size(); ++c) {
        if (v.comps[c].is_zero()) continue;
        const auto& e = v.comps[c].lead_exps();
        if (!best || mod_cmp(v.ring, ord, c, e, best->comp, best->exps) > 0)
            best = ModLead{c, e, v.comps[c].lead_coeff()};
    }
    return best;
}

inline ModVec mod_unit(const RingPtr& ring, size_t rank, size_t comp)
{
    ModVec v(ring, rank);
    v.comps[comp] = Polynomial::one(ring);
    return v;
}

// Full division: remainder has no term (in any component) divisible by the
// leading term of a divisor in the same component.
inline ModVec mod_normal_form(const ModVec& f, const std::vector<ModVec>& divisors, ModOrder ord,
                              std::vector<Polynomial>* quotients = nullptr)
{
    const auto& ring = f.ring;
    const auto& F = ring->field();
    if (quotients) quotients->assign(divisors.size(), Polynomial::zero(ring));
    ModVec rem(ring, f.rank()), work = f;
    while (true) {
        auto lw = mod_lead(work, ord);
        if (!lw) break;
        bool reduced = false;
        for (size_t i = 0; i < divisors.size(); ++i) {
            auto lg = mod_lead(divisors[i], ord);
            if (!lg || lg->comp != lw->comp) continue;
            if (!divides(lg->exps, lw->exps)) continue;
            Exponents e = exp_div(lw->exps, lg->exps);
            mpq_class c = F.div(lw->coeff, lg->coeff);
            work = work - divisors[i].mul_term(e, c);
            if (quotients) (*quotients)[i] = (*quotients)[i] + Polynomial::monomial(ring, e, c);
            reduced = true;
            break;
        }
        if (!reduced) {
            Polynomial t = Polynomial::monomial(ring, lw->exps, lw->coeff);
            rem.comps[lw->comp] = rem.comps[lw->comp] + t;
            work.comps[lw->comp] = work.comps[lw->comp] - t;
        }
    }
    return rem;
}

namespace detail {

inline ModVec mod_content_normalize(const ModVec& v)
{
    const auto& F = v.ring->field();
    if (!F.is_rationals()) {
        auto l = mod_lead(v, ModOrder::pot);
        if (!l) return v;
        return v.mul_term(Exponents(v.ring->nvars(), 0), F.inv(l->coeff));
    }
    mpz_class num_gcd(0), den_lcm(1);
    for (const auto& p : v.comps)
        for (const auto& t : p.terms()) {
            mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), t.coeff.get_num().get_mpz_t());
            mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), t.coeff.get_den().get_mpz_t());
        }
    if (num_gcd == 0) return v;
    mpq_class scale(den_lcm, num_gcd);
    scale.canonicalize();
    return v.mul_term(Exponents(v.ring->nvars(), 0), scale);
}

}  // namespace detail

// Buchberger for submodules of R^r.  S-pairs only within a common leading
// component (the coprime shortcut is unsound for modules); pairs are
// processed by ascending lcm degree, elements kept content-normalized.
inline std::vector<ModVec> mod_groebner(std::vector<ModVec> gens, ModOrder ord)
{
    std::vector<ModVec> basis;
    for (auto& g : gens)
        if (!g.is_zero()) basis.push_back(detail::mod_content_normalize(g));
    if (basis.empty()) return basis;
    const auto& ring = basis[0].ring;
    const auto& F = ring->field();

    using PairKey = std::pair<unsigned, std::pair<size_t, size_t>>;
    std::priority_queue<PairKey, std::vector<PairKey>, std::greater<PairKey>> queue;
    auto push_pair = [&](size_t i, size_t j) {
        auto li = mod_lead(basis[i], ord);
        auto lj = mod_lead(basis[j], ord);
        if (!li || !lj || li->comp != lj->comp) return;
        unsigned d = total_degree(exp_lcm(li->exps, lj->exps));
        queue.push({d, {i, j}});
    };
    for (size_t i = 0; i < basis.size(); ++i)
        for (size_t j = i + 1; j < basis.size(); ++j) push_pair(i, j);

    while (!queue.empty()) {
        auto [d, ij] = queue.top();
        queue.pop();
        auto [i, j] = ij;
        auto li = mod_lead(basis[i], ord);
        auto lj = mod_lead(basis[j], ord);
        if (!li || !lj || li->comp != lj->comp) continue;
        Exponents l = exp_lcm(li->exps, lj->exps);
        ModVec s = basis[i].mul_term(exp_div(l, li->exps), F.inv(li->coeff)) -
                   basis[j].mul_term(exp_div(l, lj->exps), F.inv(lj->coeff));
        ModVec r = mod_normal_form(s, basis, ord);
        if (r.is_zero()) continue;
        basis.push_back(detail::mod_content_normalize(r));
        for (size_t k = 0; k + 1 < basis.size(); ++k) push_pair(k, basis.size() - 1);
    }
    return basis;
}

inline bool mod_member(const ModVec& v, const std::vector<ModVec>& gb, ModOrder ord)
{
    return mod_normal_form(v, gb, ord).is_zero();
}

// Generators of Syz(f_1..f_s) = { (a_1..a_s) : sum a_i f_i = 0 }, via tagged
// vectors (f_i, e_i) in R^(r+s) under pot order (the f-block dominates).
inline std::vector<ModVec> syzygies(const std::vector<ModVec>& gens)
{
    if (gens.empty()) return {};
    const auto& ring = gens[0].ring;
    size_t r = gens[0].rank(), s = gens.size();
    std::vector<ModVec> aug;
    for (size_t i = 0; i < s; ++i) {
        ModVec v(ring, r + s);
        for (size_t c = 0; c < r; ++c) v.comps[c] = gens[i].comps[c];
        v.comps[r + i] = Polynomial::one(ring);
        aug.push_back(std::move(v));
    }
    auto gb = mod_groebner(std::move(aug), ModOrder::pot);
    std::vector<ModVec> out;
    for (const auto& g : gb) {
        bool front_zero = true;
        for (size_t c = 0; c < r && front_zero; ++c)
            if (!g.comps[c].is_zero()) front_zero = false;
        if (!front_zero) continue;
        ModVec w(ring, s);
        for (size_t i = 0; i < s; ++i) w.comps[i] = g.comps[r + i];
        if (!w.is_zero()) out.push_back(std::move(w));
    }
    return out;
}

// Express v in terms of gens; nullopt when v is outside the span.
inline std::optional<std::vector<Polynomial>> mod_lift(const ModVec& v, const std::vector<ModVec>& gens)
{
    const auto& ring = v.ring;
    size_t r = v.rank(), s = gens.size();
    std::vector<ModVec> aug;
    for (size_t i = 0; i < s; ++i) {
        ModVec w(ring, r + s);
        for (size_t c = 0; c < r; ++c) w.comps[c] = gens[i].comps[c];
        w.comps[r + i] = Polynomial::one(ring);
        aug.push_back(std::move(w));
    }
    auto gb = mod_groebner(std::move(aug), ModOrder::pot);
    ModVec target(ring, r + s);
    for (size_t c = 0; c < r; ++c) target.comps[c] = v.comps[c];
    ModVec rem = mod_normal_form(target, gb, ModOrder::pot);
    for (size_t c = 0; c < r; ++c)
        if (!rem.comps[c].is_zero()) return std::nullopt;
    std::vector<Polynomial> coeffs;
    for (size_t i = 0; i < s; ++i) coeffs.push_back(-rem.comps[r + i]);
    return coeffs;
}

namespace detail {

// Move a module over ring to an extension ring (by variable names).
inline ModVec mod_map(const ModVec& v, const RingPtr& target)
{
    ModVec w(target, v.rank());
    for (size_t c = 0; c < v.rank(); ++c) w.comps[c] = map_to_ring(v.comps[c], target);
    return w;
}

}  // namespace detail

// (M : f^infinity) for a submodule M of R^r, via the module Rabinowitsch
// trick under a variable-eliminating (top/block) order.
inline std::vector<ModVec> module_saturate(const std::vector<ModVec>& gens, const Polynomial& f,
                                           size_t rank, const RingPtr& ring)
{
    if (f.is_zero()) fail(errc::zero_input, "module saturation by zero");
    if (f.is_constant()) return gens;
    auto t = fresh_var_name(ring, "@t");
    auto ext = prepend_vars(ring, {t});
    std::vector<ModVec> egens;
    for (const auto& g : gens) egens.push_back(detail::mod_map(g, ext));
    Polynomial cut = Polynomial::one(ext) - Polynomial::variable(ext, 0) * map_to_ring(f, ext);
    for (size_t c = 0; c < rank; ++c) {
        ModVec v(ext, rank);
        v.comps[c] = cut;
        egens.push_back(std::move(v));
    }
    auto gb = mod_groebner(std::move(egens), ModOrder::top);
    std::vector<ModVec> out;
    for (const auto& g : gb) {
        bool has_t = false;
        for (const auto& p : g.comps)
            if (p.degree_in(0) > 0) has_t = true;
        if (has_t) continue;
        out.push_back(detail::mod_map(g, ring));
    }
    return out;
}

// M : J^infinity = intersection of the g-saturations over generators g of J.
inline std::vector<ModVec> module_saturate_by_ideal(const std::vector<ModVec>& gens, const Ideal& J,
                                                    size_t rank, const RingPtr& ring);

// Intersection of two submodules of R^r via the t-trick.
inline std::vector<ModVec> module_intersect(const std::vector<ModVec>& A, const std::vector<ModVec>& B,
                                            size_t rank, const RingPtr& ring)
{
    auto t = fresh_var_name(ring, "@t");
    auto ext = prepend_vars(ring, {t});
    Polynomial tv = Polynomial::variable(ext, 0);
    Polynomial omt = Polynomial::one(ext) - tv;
    std::vector<ModVec> egens;
    for (const auto& a : A) egens.push_back(detail::mod_map(a, ext) * tv);
    for (const auto& b : B) egens.push_back(detail::mod_map(b, ext) * omt);
    auto gb = mod_groebner(std::move(egens), ModOrder::top);
    std::vector<ModVec> out;
    for (const auto& g : gb) {
        bool has_t = false;
        for (const auto& p : g.comps)
            if (p.degree_in(0) > 0) has_t = true;
        if (has_t) continue;
        out.push_back(detail::mod_map(g, ring));
    }
    (void)rank;
    return out;
}

inline std::vector<ModVec> module_saturate_by_ideal(const std::vector<ModVec>& gens, const Ideal& J,
                                                    size_t rank, const RingPtr& ring)
{
    bool first = true;
    std::vector<ModVec> acc;
    for (const auto& g : J.gens()) {
        if (g.is_zero()) continue;
        auto s = module_saturate(gens, g, rank, ring);
        acc = first ? s : module_intersect(acc, s, rank, ring);
        first = false;
    }
    if (first) fail(errc::zero_input, "module saturation by the zero ideal");
    return acc;
}

// Count of module monomials outside the leading-term module; nullopt when
// infinite (some component fails the pure-power criterion).
inline std::optional<unsigned long> std_monomial_count(const std::vector<ModVec>& gb, size_t rank,
                                                       const RingPtr& ring, ModOrder ord = ModOrder::pot)
{
    size_t n = ring->nvars();
    unsigned long total = 0;
    for (size_t c = 0; c < rank; ++c) {
        std::vector<Exponents> leads;
        for (const auto& g : gb) {
            auto l = mod_lead(g, ord);
            if (l && l->comp == c) leads.push_back(l->exps);
        }
        bool unit_lead = false;
        for (const auto& l : leads)
            if (total_degree(l) == 0) unit_lead = true;
        if (unit_lead) continue;  // component is zero
        // Pure-power bounds per variable; absence means infinite dimension.
        std::vector<unsigned> bound(n, 0);
        bool finite = true;
        for (size_t v = 0; v < n && finite; ++v) {
            unsigned best = 0;
            bool found = false;
            for (const auto& l : leads) {
                bool pure = l[v] > 0;
                for (size_t w = 0; w < n && pure; ++w)
                    if (w != v && l[w] > 0) pure = false;
                if (pure && (!found || l[v] < best)) {
                    best = l[v];
                    found = true;
                }
            }
            if (!found) finite = false;
            bound[v] = best;
        }
        if (!finite) return std::nullopt;
        // Enumerate the box and drop multiples of leading terms.
        std::function<void(size_t, Exponents&)> walk = [&](size_t v, Exponents& cur) {
            if (v == n) {
                for (const auto& l : leads)
                    if (divides(l, cur)) return;
                ++total;
                return;
            }
            for (unsigned e = 0; e < std::max(bound[v], 1u); ++e) {
                cur[v] = e;
                walk(v + 1, cur);
            }
            cur[v] = 0;
        };
        Exponents cur(n, 0);
        walk(0, cur);
    }
    return total;
}

// Matrix of polynomials, stored row-major.
struct PolyMatrix {
    size_t rows = 0, cols = 0;
    std::vector<Polynomial> data;

    PolyMatrix() = default;
    PolyMatrix(const RingPtr& ring, size_t r, size_t c)
        : rows(r), cols(c), data(r * c, Polynomial::zero(ring))
    {
    }

    Polynomial& at(size_t r, size_t c) { return data[r * cols + c]; }
    const Polynomial& at(size_t r, size_t c) const { return data[r * cols + c]; }

    ModVec col(const RingPtr& ring, size_t c) const
    {
        ModVec v(ring, rows);
        for (size_t r = 0; r < rows; ++r) v.comps[r] = at(r, c);
        return v;
    }

    static PolyMatrix from_cols(const RingPtr& ring, size_t rank, const std::vector<ModVec>& cols)
    {
        PolyMatrix m(ring, rank, cols.size());
        for (size_t c = 0; c < cols.size(); ++c)
            for (size_t r = 0; r < rank; ++r) m.at(r, c) = cols[c].comps[r];
        return m;
    }

    std::vector<ModVec> to_cols(const RingPtr& ring) const
    {
        std::vector<ModVec> out;
        for (size_t c = 0; c < cols; ++c) out.push_back(col(ring, c));
        return out;
    }
};

// Rank of a matrix with entries in the domain R/P, i.e. over Frac(R/P).
// Gaussian elimination on normal-form fractions; zero tests via P.
inline size_t rank_mod_prime(const PolyMatrix& M, const Ideal& P)
{
    const auto& ring = P.ring();
    struct Frac {
        Polynomial num, den;
    };
    auto nf = [&](const Polynomial& p) { return P.normal_form(p); };
    std::vector<std::vector<Frac>> a(M.rows);
    for (size_t r = 0; r < M.rows; ++r)
        for (size_t c = 0; c < M.cols; ++c) a[r].push_back({nf(M.at(r, c)), Polynomial::one(ring)});

    size_t rank = 0;
    size_t rr = M.rows, cc = M.cols;
    for (size_t col = 0, row = 0; col < cc && row < rr; ++col) {
        size_t piv = rr;
        for (size_t r = row; r < rr; ++r)
            if (!a[r][col].num.is_zero()) {
                piv = r;
                break;
            }
        if (piv == rr) continue;
        std::swap(a[piv], a[row]);
        for (size_t r = row + 1; r < rr; ++r) {
            if (a[r][col].num.is_zero()) continue;
            // a[r] -= (a[r][col]/a[row][col]) * a[row]
            Frac factor{nf(a[r][col].num * a[row][col].den), nf(a[r][col].den * a[row][col].num)};
            for (size_t c = col; c < cc; ++c) {
                // a[r][c] -= factor * a[row][c]
                Polynomial num = a[r][c].num * factor.den * a[row][c].den -
                                 factor.num * a[row][c].num * a[r][c].den;
                Polynomial den = a[r][c].den * factor.den * a[row][c].den;
                a[r][c] = {nf(num), nf(den)};
            }
        }
        ++row;
        ++rank;
    }
    return rank;
}

}  // namespace cycal
