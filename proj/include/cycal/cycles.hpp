#pragma once

#include "resolution.hpp"

namespace cycal {

// Affine scheme: V(defining) inside Spec of the ambient ring, with a
// Laurent-type localization (inverted elements) and an optional smoothness
// certificate (Jacobian-criterion ideal verified to be the unit ideal).
class AffineScheme;
using SchemePtr = std::shared_ptr<const AffineScheme>;

class AffineScheme {
  public:
    static SchemePtr affine_space(const RingPtr& ring)
    {
        return SchemePtr(new AffineScheme(ring, Ideal::zero(ring), {}, true));
    }

    static SchemePtr localized(const SchemePtr& base, std::vector<Polynomial> extra_inverted)
    {
        for (const auto& f : extra_inverted) {
            check_same_ring(base->ring(), f.ring());
            if (f.is_zero()) fail(errc::zero_input, "cannot invert zero");
        }
        std::vector<Polynomial> inv = base->inverted();
        inv.insert(inv.end(), extra_inverted.begin(), extra_inverted.end());
        return SchemePtr(new AffineScheme(base->ring(), base->defining(), std::move(inv),
                                          base->has_smoothness_witness()));
    }

    // Hypersurface/complete-intersection subscheme; when `check_smooth` the
    // Jacobian criterion (defining + codim-sized minors = (1)) is verified.
    static SchemePtr subscheme(const RingPtr& ring, const Ideal& defining,
                               std::vector<Polynomial> inverted, bool check_smooth)
    {
        bool witness = false;
        if (check_smooth) {
            if (!jacobian_smooth(ring, defining, inverted))
                fail(errc::bad_argument, "Jacobian criterion failed: subscheme is not smooth");
            witness = true;
        }
        return SchemePtr(new AffineScheme(ring, defining, std::move(inverted), witness));
    }

    const RingPtr& ring() const { return ring_; }
    const Ideal& defining() const { return defining_; }
    const std::vector<Polynomial>& inverted() const { return inverted_; }
    bool has_smoothness_witness() const { return smooth_; }

    int dim() const { return dim_; }

    bool same_as(const AffineScheme& o) const
    {
        if (!ring_->same_as(*o.ring_)) return false;
        if (!(defining_ == o.defining_)) return false;
        if (inverted_.size() != o.inverted_.size()) return false;
        for (size_t i = 0; i < inverted_.size(); ++i)
            if (inverted_[i] != o.inverted_[i]) return false;
        return true;
    }

    // The prime survives on the localized scheme iff it avoids the removed
    // locus, i.e. contains no inverted element.
    bool prime_visible(const Ideal& P) const
    {
        for (const auto& f : inverted_)
            if (P.contains(f)) return false;
        return true;
    }

    Ideal saturate_invisible(const Ideal& I) const
    {
        Ideal out = I;
        for (const auto& f : inverted_) out = saturate(out, f);
        return out;
    }

  private:
    AffineScheme(RingPtr ring, Ideal defining, std::vector<Polynomial> inverted, bool smooth)
        : ring_(std::move(ring)), defining_(std::move(defining)), inverted_(std::move(inverted)),
          smooth_(smooth)
    {
        dim_ = ideal_dimension(defining_);
    }

    static bool jacobian_smooth(const RingPtr& ring, const Ideal& defining,
                                const std::vector<Polynomial>& inverted)
    {
        if (defining.is_zero_ideal()) return true;
        int codim = static_cast<int>(ring->nvars()) - ideal_dimension(defining);
        const auto& gens = defining.gens();
        size_t n = ring->nvars(), g = gens.size();
        if (codim <= 0) return false;
        size_t c = static_cast<size_t>(codim);
        if (c > g || c > n) return false;
        // all c x c minors of the Jacobian
        std::vector<Polynomial> minors;
        std::vector<size_t> ri(c), ci(c);
        std::function<void(size_t, size_t)> rows = [&](size_t pos, size_t start) {
            if (pos == c) {
                std::function<void(size_t, size_t)> cols = [&](size_t cpos, size_t cstart) {
                    if (cpos == c) {
                        minors.push_back(minor_det(ring, gens, ri, ci));
                        return;
                    }
                    for (size_t j = cstart; j < n; ++j) {
                        ci[cpos] = j;
                        cols(cpos + 1, j + 1);
                    }
                };
                cols(0, 0);
                return;
            }
            for (size_t i = start; i < g; ++i) {
                ri[pos] = i;
                rows(pos + 1, i + 1);
            }
        };
        rows(0, 0);
        std::vector<Polynomial> all = defining.gens();
        all.insert(all.end(), minors.begin(), minors.end());
        Ideal crit(ring, all);
        for (const auto& f : inverted) crit = saturate(crit, f);
        return crit.is_unit_ideal();
    }

    static Polynomial minor_det(const RingPtr& ring, const std::vector<Polynomial>& gens,
                                const std::vector<size_t>& ri, const std::vector<size_t>& ci)
    {
        size_t c = ri.size();
        std::vector<Polynomial> J(c * c, Polynomial::zero(ring));
        for (size_t a = 0; a < c; ++a)
            for (size_t b = 0; b < c; ++b) J[a * c + b] = gens[ri[a]].derivative(ci[b]);
        // Laplace expansion (c is tiny)
        std::function<Polynomial(std::vector<size_t>, std::vector<size_t>)> det =
            [&](std::vector<size_t> rs, std::vector<size_t> cs) -> Polynomial {
            if (rs.size() == 1) return J[rs[0] * c + cs[0]];
            Polynomial acc = Polynomial::zero(ring);
            for (size_t k = 0; k < cs.size(); ++k) {
                std::vector<size_t> sub = cs;
                sub.erase(sub.begin() + static_cast<long>(k));
                Polynomial term = J[rs[0] * c + cs[k]] * det(std::vector<size_t>(rs.begin() + 1, rs.end()), sub);
                acc = (k % 2 == 0) ? acc + term : acc - term;
            }
            return acc;
        };
        std::vector<size_t> rs(c), cs(c);
        for (size_t i = 0; i < c; ++i) rs[i] = i, cs[i] = i;
        return det(rs, cs);
    }

    RingPtr ring_;
    Ideal defining_;
    std::vector<Polynomial> inverted_;
    bool smooth_;
    int dim_;
};

inline void check_same_scheme(const SchemePtr& a, const SchemePtr& b)
{
    if (a.get() == b.get()) return;
    if (!a || !b || !a->same_as(*b)) fail(errc::scheme_mismatch, "cycles live on different schemes");
}

// Irreducible closed subscheme of fixed codimension.  Primality of the ideal
// is asserted by the caller; construction performs cheap sanity checks
// (proper, contains the defining ideal, visible on the localization, and the
// declared codimension matches the dimension count).
struct PrimeCycle {
    SchemePtr scheme;
    Ideal ideal;
    unsigned codim = 0;

    PrimeCycle() = default;

    PrimeCycle(SchemePtr sch, Ideal id) : scheme(std::move(sch)), ideal(std::move(id))
    {
        check_same_ring(scheme->ring(), ideal.ring());
        if (ideal.is_unit_ideal()) fail(errc::bad_argument, "prime cycle from the unit ideal");
        for (const auto& g : scheme->defining().gens())
            if (!ideal.contains(g))
                fail(errc::bad_argument, "cycle ideal does not contain the defining ideal");
        if (!scheme->prime_visible(ideal))
            fail(errc::bad_argument, "cycle lies in the inverted locus");
        int d = ideal_dimension(ideal);
        codim = static_cast<unsigned>(scheme->dim() - d);
    }

    std::string key() const { return ideal.key(); }
};

// Formal Z-combination of prime cycles of a common codimension.
class Cycle {
  public:
    Cycle() = default;
    Cycle(SchemePtr scheme, unsigned codim) : scheme_(std::move(scheme)), codim_(codim) {}

    static Cycle of_prime(const PrimeCycle& p, const mpz_class& coeff = 1)
    {
        Cycle c(p.scheme, p.codim);
        c.add_term(p, coeff);
        return c;
    }

    const SchemePtr& scheme() const { return scheme_; }
    unsigned codim() const { return codim_; }
    bool is_zero() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }

    const std::map<std::string, std::pair<PrimeCycle, mpz_class>>& terms() const { return terms_; }

    void add_term(const PrimeCycle& p, const mpz_class& coeff)
    {
        if (coeff == 0) return;
        check_same_scheme(scheme_, p.scheme);
        if (p.codim != codim_) fail(errc::codimension_violation, "mixed codimensions in a cycle");
        auto it = terms_.find(p.key());
        if (it == terms_.end()) {
            terms_.emplace(p.key(), std::make_pair(p, coeff));
        } else {
            it->second.second += coeff;
            if (it->second.second == 0) terms_.erase(it);
        }
    }

    Cycle operator+(const Cycle& o) const
    {
        check_same_scheme(scheme_, o.scheme_);
        if (codim_ != o.codim_) fail(errc::codimension_violation, "adding cycles of different codimension");
        Cycle r = *this;
        for (const auto& [k, t] : o.terms_) r.add_term(t.first, t.second);
        return r;
    }

    Cycle operator-() const
    {
        Cycle r(scheme_, codim_);
        for (const auto& [k, t] : terms_) r.add_term(t.first, -t.second);
        return r;
    }

    Cycle operator-(const Cycle& o) const { return *this + (-o); }

    Cycle operator*(const mpz_class& a) const
    {
        Cycle r(scheme_, codim_);
        for (const auto& [k, t] : terms_) r.add_term(t.first, t.second * a);
        return r;
    }

    bool operator==(const Cycle& o) const
    {
        if (codim_ != o.codim_ || terms_.size() != o.terms_.size()) return false;
        auto it = terms_.begin();
        auto jt = o.terms_.begin();
        for (; it != terms_.end(); ++it, ++jt) {
            if (it->first != jt->first || it->second.second != jt->second.second) return false;
        }
        return true;
    }

    bool operator!=(const Cycle& o) const { return !(*this == o); }

    // Total degree of a zero-cycle: sum of coefficients times residue degrees.
    mpz_class degree_zero_cycle() const
    {
        mpz_class acc(0);
        for (const auto& [k, t] : terms_)
            acc += t.second * mpz_class(residue_degree(t.first.ideal));
        return acc;
    }

    std::string to_string() const
    {
        if (terms_.empty()) return "0";
        std::string s;
        bool first = true;
        for (const auto& [k, t] : terms_) {
            if (!first) s += " + ";
            first = false;
            s += t.second.get_str() + "*[";
            bool fg = true;
            for (const auto& g : t.first.ideal.groebner()) {
                if (!fg) s += ", ";
                fg = false;
                s += g.to_string();
            }
            s += "]";
        }
        return s;
    }

  private:
    SchemePtr scheme_;
    unsigned codim_ = 0;
    std::map<std::string, std::pair<PrimeCycle, mpz_class>> terms_;
};

// --- morphisms --------------------------------------------------------------

struct SchemeMorphism {
    enum class Kind { generic, projection, localization, base_extension };

    SchemePtr source, target;
    std::vector<Polynomial> assignment;  // image of each target variable in the source ring
    Kind kind = Kind::generic;
    bool flat = false;

    static SchemeMorphism generic(SchemePtr src, SchemePtr tgt, std::vector<Polynomial> images)
    {
        SchemeMorphism f;
        f.source = std::move(src);
        f.target = std::move(tgt);
        f.assignment = std::move(images);
        f.kind = Kind::generic;
        f.flat = false;
        f.validate();
        return f;
    }

    // Coordinate projection: every target variable maps to a distinct source
    // variable; flat by construction.
    static SchemeMorphism projection(SchemePtr src, SchemePtr tgt)
    {
        SchemeMorphism f;
        f.source = src;
        f.target = tgt;
        std::set<int> used;
        for (const auto& v : tgt->ring()->vars()) {
            int idx = src->ring()->var_index(v);
            if (idx < 0) fail(errc::bad_argument, "projection: target variable missing in source");
            if (!used.insert(idx).second) fail(errc::bad_argument, "projection: repeated variable");
            f.assignment.push_back(Polynomial::variable(src->ring(), static_cast<size_t>(idx)));
        }
        f.kind = Kind::projection;
        f.flat = true;
        f.validate();
        return f;
    }

    // Open immersion given by inverting extra elements.
    static SchemeMorphism localization(SchemePtr src, SchemePtr tgt)
    {
        if (!src->ring()->same_as(*tgt->ring()) || !(src->defining() == tgt->defining()))
            fail(errc::bad_argument, "localization: underlying rings differ");
        SchemeMorphism f;
        f.source = src;
        f.target = tgt;
        for (size_t i = 0; i < src->ring()->nvars(); ++i)
            f.assignment.push_back(Polynomial::variable(src->ring(), i));
        f.kind = Kind::localization;
        f.flat = true;
        f.validate();
        return f;
    }

    void validate() const
    {
        if (assignment.size() != target->ring()->nvars())
            fail(errc::bad_argument, "morphism arity mismatch");
        for (const auto& p : assignment) check_same_ring(source->ring(), p.ring());
        // defining ideal of the target must pull back into the source's
        for (const auto& g : target->defining().gens()) {
            Polynomial img = g.substitute(source->ring(), assignment);
            if (!source->defining().contains(img))
                fail(errc::bad_argument, "morphism does not respect defining ideals");
        }
    }

    Polynomial pull(const Polynomial& f) const { return f.substitute(source->ring(), assignment); }

    Ideal pull_ideal(const Ideal& I) const
    {
        std::vector<Polynomial> gens;
        for (const auto& g : I.gens()) gens.push_back(pull(g));
        for (const auto& g : source->defining().gens()) gens.push_back(g);
        return Ideal(source->ring(), gens);
    }
};

inline SchemeMorphism compose(const SchemeMorphism& g, const SchemeMorphism& f)
{
    // g after f: f: X -> Y, g: Y -> Z.
    check_same_scheme(f.target, g.source);
    std::vector<Polynomial> images;
    for (const auto& gz : g.assignment) images.push_back(gz.substitute(f.source->ring(), f.assignment));
    auto h = SchemeMorphism::generic(f.source, g.target, images);
    return h;
}

// --- intersection theory ----------------------------------------------------

inline bool intersects_properly(const Cycle& C, const Cycle& D)
{
    check_same_scheme(C.scheme(), D.scheme());
    const auto& X = C.scheme();
    int bound = X->dim() - static_cast<int>(C.codim() + D.codim());
    for (const auto& [kc, tc] : C.terms())
        for (const auto& [kd, td] : D.terms()) {
            Ideal S = ideal_sum(tc.first.ideal, td.first.ideal);
            S = X->saturate_invisible(S);
            if (ideal_dimension(S) > bound) return false;
        }
    return true;
}

namespace detail {

// Candidate verification for positive-dimensional products: each candidate
// contains the sum, has the right codimension, is visible, and together they
// cover every component of the target codimension.
inline std::vector<Ideal> verified_components(const SchemePtr& X, const Ideal& S_in, unsigned codim,
                                              const std::vector<Ideal>& candidates)
{
    Ideal S = X->saturate_invisible(S_in);
    int dimS = ideal_dimension(S);
    int target_dim = X->dim() - static_cast<int>(codim);
    if (dimS < 0) return {};
    if (dimS <= 0) {
        auto comps = minimal_primes_zero_dim(S);
        std::vector<Ideal> out;
        for (auto& m : comps) {
            if (!X->prime_visible(m)) continue;
            if (X->dim() - ideal_dimension(m) != static_cast<int>(codim)) continue;
            out.push_back(std::move(m));
        }
        return out;
    }
    if (dimS < target_dim) return {};  // every component is deeper than codim
    if (candidates.empty())
        fail(errc::positive_dimensional,
             "positive-dimensional support: supply candidate components");
    std::vector<Ideal> out;
    Ideal rest = S;
    for (const auto& P : candidates) {
        check_same_ring(P.ring(), S.ring());
        if (P.is_unit_ideal()) fail(errc::bad_argument, "candidate component is the unit ideal");
        bool contains_S = true;
        for (const auto& g : S.gens())
            if (!P.contains(g)) contains_S = false;
        if (!contains_S) continue;  // candidate for another pair
        if (X->dim() - ideal_dimension(P) != static_cast<int>(codim)) continue;
        if (!X->prime_visible(P)) continue;
        out.push_back(P);
        rest = saturate_by_ideal(rest, P);
    }
    if (ideal_dimension(rest) >= target_dim)
        fail(errc::positive_dimensional, "candidate components do not cover the support");
    return out;
}

struct MultiplicityEngine {
    const SchemePtr& X;
    const Ideal* modulus;
    size_t top;

    MultiplicityEngine(const SchemePtr& x) : X(x)
    {
        modulus = X->defining().is_zero_ideal() ? nullptr : &X->defining();
        if (modulus && !X->has_smoothness_witness())
            fail(errc::unsupported, "intersection multiplicities need affine space or a smoothness witness");
        top = modulus ? static_cast<size_t>(std::max(X->dim(), 0)) : X->ring()->nvars();
    }

    // Alternating sums of Tor lengths at each listed component, isolating
    // every component against the others.  One resolution per (A, B) pair.
    std::vector<mpz_class> multiplicities(const Ideal& A, const Ideal& B,
                                          const std::vector<Ideal>& comps) const
    {
        auto pres = tor_presentations(A, B, top, modulus);
        std::vector<mpz_class> out;
        for (const auto& W : comps) {
            std::vector<Ideal> others;
            for (const auto& Q : comps)
                if (!(Q == W)) others.push_back(Q);
            mpz_class acc(0);
            int sign = 1;
            for (const auto& P : pres) {
                if (P.rank > 0) acc += sign * mpz_class(length_at_prime(P, W, others));
                sign = -sign;
            }
            out.push_back(acc);
        }
        return out;
    }
};

}  // namespace detail

// Serre multiplicity at a maximal ideal W: alternating sum of the lengths of
// Tor_i(O/I_C, O/I_D) localized at W.
inline mpz_class serre_multiplicity(const PrimeCycle& C, const PrimeCycle& D, const Ideal& W)
{
    check_same_scheme(C.scheme, D.scheme);
    const auto& X = C.scheme;
    check_same_ring(W.ring(), X->ring());
    if (!intersects_properly(Cycle::of_prime(C), Cycle::of_prime(D)))
        fail(errc::improper_intersection, "cycles do not intersect properly");
    if (!is_maximal(W)) fail(errc::not_maximal, "intersection point is not maximal");
    Ideal CD_sum = ideal_sum(C.ideal, D.ideal);
    for (const auto& g : CD_sum.gens())
        if (!W.contains(g)) fail(errc::bad_argument, "W does not lie on the intersection");
    detail::MultiplicityEngine eng(X);
    std::vector<unsigned long> lens;
    {
        const Ideal* Q = eng.modulus;
        lens = tor_lengths_at_point(C.ideal, D.ideal, W, Q, eng.top);
    }
    mpz_class acc(0);
    int sign = 1;
    for (auto l : lens) {
        acc += sign * mpz_class(l);
        sign = -sign;
    }
    return acc;
}

// C . D = sum over components W of m(W; C, D) . W, extended bilinearly.
inline Cycle intersection_product(const Cycle& C, const Cycle& D,
                                  const std::vector<Ideal>& candidates = {})
{
    check_same_scheme(C.scheme(), D.scheme());
    const auto& X = C.scheme();
    if (!intersects_properly(C, D))
        fail(errc::improper_intersection, "cycles do not intersect properly");
    unsigned codim = C.codim() + D.codim();
    Cycle out(X, codim);
    detail::MultiplicityEngine eng(X);
    for (const auto& [kc, tc] : C.terms()) {
        for (const auto& [kd, td] : D.terms()) {
            Ideal S = ideal_sum(tc.first.ideal, td.first.ideal);
            if (eng.modulus) S = ideal_sum(S, *eng.modulus);
            auto comps = detail::verified_components(X, S, codim, candidates);
            auto mults = eng.multiplicities(tc.first.ideal, td.first.ideal, comps);
            for (size_t i = 0; i < comps.size(); ++i) {
                if (mults[i] == 0) continue;
                out.add_term(PrimeCycle(X, comps[i]), tc.second * td.second * mults[i]);
            }
        }
    }
    return out;
}

// Z_p of a module: length at each codimension-p component of the support.
inline Cycle cycle_of_module(const SchemePtr& X, const ModulePresentation& N, unsigned p,
                             const std::vector<Ideal>& candidates = {})
{
    check_same_ring(X->ring(), N.ring);
    Ideal supp = annihilator(N);
    if (!X->defining().is_zero_ideal()) supp = ideal_sum(supp, X->defining());
    supp = X->saturate_invisible(supp);
    if (supp.is_unit_ideal() || N.rank == 0) return Cycle(X, p);
    if (ideal_dimension(supp) > X->dim() - static_cast<int>(p))
        fail(errc::codimension_violation, "support has a component of codimension < p");
    auto comps = detail::verified_components(X, supp, p, candidates);
    Cycle out(X, p);
    for (const auto& W : comps) {
        std::vector<Ideal> others;
        for (const auto& Q : comps)
            if (!(Q == W)) others.push_back(Q);
        unsigned long l = length_at_prime(N, W, others);
        if (l == 0) continue;
        out.add_term(PrimeCycle(X, W), mpz_class(l));
    }
    return out;
}

inline Cycle cycle_of_ideal(const SchemePtr& X, const Ideal& I, unsigned p,
                            const std::vector<Ideal>& candidates = {})
{
    Ideal full = X->defining().is_zero_ideal() ? I : ideal_sum(I, X->defining());
    return cycle_of_module(X, ModulePresentation::cyclic(full), p, candidates);
}

// sum_i (-1)^i Z_n(Tor_i(R/I, R/J)).
inline Cycle euler_cycle(const SchemePtr& X, const Ideal& I, const Ideal& J, unsigned n,
                         const std::vector<Ideal>& candidates = {})
{
    check_same_ring(X->ring(), I.ring());
    check_same_ring(X->ring(), J.ring());
    detail::MultiplicityEngine eng(X);
    Ideal S = ideal_sum(I, J);
    if (eng.modulus) S = ideal_sum(S, *eng.modulus);
    Ideal sat = X->saturate_invisible(S);
    if (ideal_dimension(sat) > X->dim() - static_cast<int>(n))
        fail(errc::codimension_violation, "Tor support has codimension < n");
    auto comps = detail::verified_components(X, sat, n, candidates);
    auto mults = eng.multiplicities(I, J, comps);
    Cycle out(X, n);
    for (size_t i = 0; i < comps.size(); ++i) {
        if (mults[i] == 0) continue;
        out.add_term(PrimeCycle(X, comps[i]), mults[i]);
    }
    return out;
}

// Flat pullback: components of the extended module with their lengths.
inline Cycle flat_pullback(const SchemeMorphism& f, const Cycle& C,
                           const std::vector<Ideal>& candidates = {})
{
    if (!f.flat) fail(errc::bad_argument, "flat_pullback needs a flat morphism");
    check_same_scheme(f.target, C.scheme());
    const auto& X = f.source;
    Cycle out(X, C.codim());
    for (const auto& [k, t] : C.terms()) {
        Ideal E = f.pull_ideal(t.first.ideal);
        if (f.kind == SchemeMorphism::Kind::projection ||
            f.kind == SchemeMorphism::Kind::localization) {
            // The extended prime stays prime (polynomial extension / open
            // restriction); it survives iff visible.
            Ideal Es = X->saturate_invisible(E);
            if (Es.is_unit_ideal()) continue;
            out.add_term(PrimeCycle(X, Es), t.second);
            continue;
        }
        Cycle piece = cycle_of_ideal(X, E, C.codim(), candidates);
        out = out + piece * t.second;
    }
    return out;
}

namespace detail {

// Product scheme X x Y with target variables renamed away from collisions.
struct ProductData {
    SchemePtr prod;
    RingPtr ring;
    std::vector<std::string> tvar_names;  // names of the target block
};

inline ProductData product_scheme(const SchemePtr& X, const SchemePtr& Y)
{
    std::vector<std::string> vars = X->ring()->vars();
    std::vector<std::string> tnames;
    for (const auto& v : Y->ring()->vars()) {
        std::string nv = v;
        int k = 2;
        while (std::find(vars.begin(), vars.end(), nv) != vars.end()) nv = v + "_" + std::to_string(k++);
        vars.push_back(nv);
        tnames.push_back(nv);
    }
    auto ring = PolyRing::make(X->ring()->field(), vars, X->ring()->order());
    // map target polys: by renamed variables
    auto map_target = [&](const Polynomial& p) {
        std::vector<Polynomial> images;
        for (const auto& tn : tnames)
            images.push_back(Polynomial::variable(ring, static_cast<size_t>(ring->var_index(tn))));
        return p.substitute(ring, images);
    };
    std::vector<Polynomial> def;
    for (const auto& g : X->defining().gens()) def.push_back(map_to_ring(g, ring));
    for (const auto& g : Y->defining().gens()) def.push_back(map_target(g));
    std::vector<Polynomial> inv;
    for (const auto& g : X->inverted()) inv.push_back(map_to_ring(g, ring));
    for (const auto& g : Y->inverted()) inv.push_back(map_target(g));
    ProductData pd;
    pd.ring = ring;
    bool smooth = X->has_smoothness_witness() && Y->has_smoothness_witness();
    if (def.empty()) {
        SchemePtr base = AffineScheme::affine_space(ring);
        pd.prod = inv.empty() ? base : AffineScheme::localized(base, inv);
    } else {
        pd.prod = AffineScheme::subscheme(ring, Ideal(ring, def), inv, smooth);
    }
    pd.tvar_names = tnames;
    return pd;
}

}  // namespace detail

// Graph pullback f^*(C) = Gamma_f . pr_Y^*(C), pushed through the graph
// isomorphism back to the source.  `preimage_candidates` name the components
// of f^{-1}(supp C) in the source ring when those are positive-dimensional.
inline Cycle graph_pullback(const SchemeMorphism& f, const Cycle& C,
                            const std::vector<Ideal>& preimage_candidates = {})
{
    check_same_scheme(f.target, C.scheme());
    const auto& X = f.source;
    unsigned p = C.codim();
    Cycle out(X, p);
    if (C.is_zero()) return out;

    // good position: every preimage has codimension >= p
    std::vector<std::pair<Ideal, mpz_class>> pulled;  // preimage ideals per term
    for (const auto& [k, t] : C.terms()) {
        Ideal B = X->saturate_invisible(f.pull_ideal(t.first.ideal));
        if (ideal_dimension(B) > X->dim() - static_cast<int>(p))
            fail(errc::good_position_failure,
                 "preimage has a component of codimension < " + std::to_string(p));
        pulled.push_back({B, t.second});
    }

    auto pd = detail::product_scheme(X, f.target);
    const auto& R = pd.ring;
    // graph ideal: renamed target var - image polynomial
    std::vector<Polynomial> graph_gens;
    for (size_t j = 0; j < pd.tvar_names.size(); ++j) {
        Polynomial tv = Polynomial::variable(R, static_cast<size_t>(R->var_index(pd.tvar_names[j])));
        graph_gens.push_back(tv - map_to_ring(f.assignment[j], R));
    }
    // push-forward substitution: source vars fixed, target vars -> images
    std::vector<Polynomial> push_images;
    for (const auto& v : R->vars()) {
        int sidx = X->ring()->var_index(v);
        if (sidx >= 0) {
            push_images.push_back(Polynomial::variable(X->ring(), static_cast<size_t>(sidx)));
        } else {
            size_t j = SIZE_MAX;
            for (size_t i = 0; i < pd.tvar_names.size(); ++i)
                if (pd.tvar_names[i] == v) j = i;
            push_images.push_back(f.assignment[j]);
        }
    }
    // map a target-ring polynomial into the product via the renamed block
    std::vector<Polynomial> tvar_polys;
    for (const auto& tn : pd.tvar_names)
        tvar_polys.push_back(Polynomial::variable(R, static_cast<size_t>(R->var_index(tn))));

    detail::MultiplicityEngine eng(pd.prod);

    size_t idx = 0;
    for (const auto& [k, t] : C.terms()) {
        const Ideal& B = pulled[idx].first;
        mpz_class coeff = pulled[idx].second;
        ++idx;
        // components of the preimage in the source
        std::vector<Ideal> pre_comps;
        if (B.is_unit_ideal()) continue;
        if (ideal_dimension(B) <= 0) {
            pre_comps = minimal_primes_zero_dim(B);
        } else {
            for (const auto& Q : preimage_candidates) {
                bool contains = true;
                for (const auto& g : B.gens())
                    if (!Q.contains(g)) contains = false;
                if (contains) pre_comps.push_back(Q);
            }
            if (pre_comps.empty())
                fail(errc::positive_dimensional,
                     "positive-dimensional preimage: supply candidate components");
        }
        // candidates on the product: graph + extended preimage component
        std::vector<Ideal> prod_candidates;
        for (const auto& Q : pre_comps) {
            std::vector<Polynomial> gens = graph_gens;
            for (const auto& g : Q.gens()) gens.push_back(map_to_ring(g, R));
            for (const auto& g : pd.prod->defining().gens()) gens.push_back(g);
            prod_candidates.push_back(Ideal(R, gens));
        }
        // pr_Y^*(I_C) on the product
        std::vector<Polynomial> ic;
        for (const auto& g : t.first.ideal.gens()) ic.push_back(g.substitute(R, tvar_polys));
        Ideal S(R, [&] {
            std::vector<Polynomial> all = graph_gens;
            all.insert(all.end(), ic.begin(), ic.end());
            for (const auto& g : pd.prod->defining().gens()) all.push_back(g);
            return all;
        }());
        unsigned prod_codim = p + static_cast<unsigned>(f.target->dim());
        auto comps = detail::verified_components(pd.prod, S, prod_codim, prod_candidates);
        Ideal graph_ideal(R, [&] {
            auto gg = graph_gens;
            for (const auto& g : pd.prod->defining().gens()) gg.push_back(g);
            return gg;
        }());
        auto mults = eng.multiplicities(graph_ideal, Ideal(R, ic), comps);
        for (size_t ci = 0; ci < comps.size(); ++ci) {
            if (mults[ci] == 0) continue;
            // push through the graph isomorphism
            std::vector<Polynomial> img;
            for (const auto& g : comps[ci].groebner()) img.push_back(g.substitute(X->ring(), push_images));
            for (const auto& g : X->defining().gens()) img.push_back(g);
            Ideal WX = X->saturate_invisible(Ideal(X->ring(), img));
            if (WX.is_unit_ideal()) continue;
            out.add_term(PrimeCycle(X, WX), coeff * mults[ci]);
        }
    }
    return out;
}

}  // namespace cycal
