#pragma once

#include "module.hpp"
#include "zerodim.hpp"

namespace cycal {

// Presentation of a finitely generated module as coker(relations: R^c -> R^g).
struct ModulePresentation {
    RingPtr ring;
    size_t rank = 0;  // number of free generators
    PolyMatrix relations;

    ModulePresentation() = default;
    ModulePresentation(RingPtr r, size_t g, PolyMatrix rel)
        : ring(std::move(r)), rank(g), relations(std::move(rel))
    {
        if (relations.rows != rank) fail(errc::bad_argument, "relation matrix has wrong row count");
    }

    static ModulePresentation cyclic(const Ideal& I)
    {
        PolyMatrix rel(I.ring(), 1, I.gens().size());
        for (size_t c = 0; c < I.gens().size(); ++c) rel.at(0, c) = I.gens()[c];
        return ModulePresentation(I.ring(), 1, rel);
    }
};

struct FreeResolution {
    RingPtr ring;
    std::vector<size_t> ranks;      // ranks of F_0, F_1, ...
    std::vector<PolyMatrix> maps;   // d_1 : F_1 -> F_0, d_2, ...

    // d_i composed with d_{i+1} must vanish identically.
    bool composites_vanish() const
    {
        for (size_t i = 0; i + 1 < maps.size(); ++i) {
            const auto& A = maps[i];
            const auto& B = maps[i + 1];
            for (size_t r = 0; r < A.rows; ++r)
                for (size_t c = 0; c < B.cols; ++c) {
                    Polynomial acc = Polynomial::zero(ring);
                    for (size_t k = 0; k < A.cols; ++k) acc = acc + A.at(r, k) * B.at(k, c);
                    if (!acc.is_zero()) return false;
                }
        }
        return true;
    }
};

namespace detail {

// Syzygies of columns viewed over R/Q: vectors v with d*v in Q*R^rank.
inline std::vector<ModVec> syzygies_mod(const std::vector<ModVec>& cols, size_t rank,
                                        const RingPtr& ring, const std::vector<Polynomial>& qgens)
{
    if (cols.empty()) return {};
    std::vector<ModVec> work = cols;
    size_t s = cols.size();
    for (const auto& q : qgens)
        for (size_t c = 0; c < rank; ++c) {
            ModVec v(ring, rank);
            v.comps[c] = q;
            work.push_back(std::move(v));
        }
    auto syz = syzygies(work);
    std::vector<ModVec> out;
    for (const auto& w : syz) {
        ModVec v(ring, s);
        bool nonzero = false;
        for (size_t i = 0; i < s; ++i) {
            v.comps[i] = w.comps[i];
            nonzero = nonzero || !w.comps[i].is_zero();
        }
        if (nonzero) out.push_back(std::move(v));
    }
    return out;
}

// Cancel unit entries of d_next (and the matching generator of the middle
// free module, i.e. a column of d_cur).
inline void prune_units(PolyMatrix& d_cur, PolyMatrix& d_next, const RingPtr& ring)
{
    const auto& F = ring->field();
    bool again = true;
    while (again) {
        again = false;
        size_t ur = SIZE_MAX, uc = SIZE_MAX;
        for (size_t r = 0; r < d_next.rows && ur == SIZE_MAX; ++r)
            for (size_t c = 0; c < d_next.cols && ur == SIZE_MAX; ++c)
                if (!d_next.at(r, c).is_zero() && d_next.at(r, c).is_constant()) {
                    ur = r;
                    uc = c;
                }
        if (ur == SIZE_MAX) break;
        mpq_class u = d_next.at(ur, uc).constant_value();
        // column ops on d_next: clear row ur outside column uc
        for (size_t c = 0; c < d_next.cols; ++c) {
            if (c == uc || d_next.at(ur, c).is_zero()) continue;
            Polynomial factor = d_next.at(ur, c) * F.inv(u);
            for (size_t r = 0; r < d_next.rows; ++r)
                d_next.at(r, c) = d_next.at(r, c) - factor * d_next.at(r, uc);
        }
        // drop column uc and row ur of d_next; drop column ur of d_cur
        PolyMatrix nn(ring, d_next.rows - 1, d_next.cols - 1);
        for (size_t r = 0, rr = 0; r < d_next.rows; ++r) {
            if (r == ur) continue;
            for (size_t c = 0, cc = 0; c < d_next.cols; ++c) {
                if (c == uc) continue;
                nn.at(rr, cc) = d_next.at(r, c);
                ++cc;
            }
            ++rr;
        }
        PolyMatrix dc(ring, d_cur.rows, d_cur.cols - 1);
        for (size_t c = 0, cc = 0; c < d_cur.cols; ++c) {
            if (c == ur) continue;
            for (size_t r = 0; r < d_cur.rows; ++r) dc.at(r, cc) = d_cur.at(r, c);
            ++cc;
        }
        d_next = std::move(nn);
        d_cur = std::move(dc);
        again = true;
    }
    // drop zero columns of d_next
    std::vector<size_t> keep;
    for (size_t c = 0; c < d_next.cols; ++c) {
        bool nz = false;
        for (size_t r = 0; r < d_next.rows; ++r) nz = nz || !d_next.at(r, c).is_zero();
        if (nz) keep.push_back(c);
    }
    if (keep.size() != d_next.cols) {
        PolyMatrix nn(ring, d_next.rows, keep.size());
        for (size_t i = 0; i < keep.size(); ++i)
            for (size_t r = 0; r < d_next.rows; ++r) nn.at(r, i) = d_next.at(r, keep[i]);
        d_next = std::move(nn);
    }
}

}  // namespace detail

// Free resolution by iterated syzygy computation, pruned of unit entries and
// truncated at the Hilbert syzygy bound (#variables).
inline FreeResolution free_resolution(const ModulePresentation& M)
{
    const auto& ring = M.ring;
    size_t n = ring->nvars();
    FreeResolution res;
    res.ring = ring;
    res.ranks.push_back(M.rank);
    if (M.relations.cols == 0) return res;
    res.maps.push_back(M.relations);
    res.ranks.push_back(M.relations.cols);

    size_t guard = n + 3;
    while (res.maps.size() <= guard) {
        auto cols = res.maps.back().to_cols(ring);
        auto syz = detail::syzygies_mod(cols, res.ranks[res.ranks.size() - 2], ring, {});
        if (syz.empty()) break;
        PolyMatrix next = PolyMatrix::from_cols(ring, cols.size(), syz);
        detail::prune_units(res.maps.back(), next, ring);
        res.ranks.back() = res.maps.back().cols;
        if (next.cols == 0) break;
        if (next.rows != res.maps.back().cols)
            fail(errc::resource_limit, "inconsistent pruning in resolution");
        res.maps.push_back(next);
        res.ranks.push_back(next.cols);
    }
    if (res.maps.size() > n) {
        // A final syzygy check: the tail must already be exact.
        auto cols = res.maps.back().to_cols(ring);
        if (!detail::syzygies_mod(cols, res.ranks[res.ranks.size() - 2], ring, {}).empty())
            fail(errc::resource_limit, "resolution did not terminate within the Hilbert bound");
    }
    return res;
}

// Presentation of the subquotient span(A) / span(B) of R^rank (B inside A).
inline ModulePresentation subquotient_presentation(const std::vector<ModVec>& A,
                                                   const std::vector<ModVec>& B, size_t rank,
                                                   const RingPtr& ring)
{
    (void)rank;
    std::vector<ModVec> rels;
    for (const auto& b : B) {
        auto lift = mod_lift(b, A);
        if (!lift) fail(errc::bad_argument, "subquotient: relations do not lie in the sub:module");
        rels.push_back(ModVec(ring, *lift));
    }
    for (auto& s : syzygies(A)) rels.push_back(std::move(s));
    return ModulePresentation(ring, A.size(), PolyMatrix::from_cols(ring, A.size(), rels));
}

// dim_k of a presented module (must be finite).
inline std::optional<unsigned long> module_k_dimension(const ModulePresentation& P)
{
    auto gb = mod_groebner(P.relations.to_cols(P.ring), ModOrder::pot);
    return std_monomial_count(gb, P.rank, P.ring);
}

// Length over the local ring at a maximal ideal m: the m-power-torsion part
// has finite k-dimension; divide by the residue degree.
inline unsigned long length_at_maximal(const ModulePresentation& N, const Ideal& m)
{
    const auto& ring = N.ring;
    auto im = N.relations.to_cols(ring);
    std::vector<ModVec> sat =
        im.empty() ? std::vector<ModVec>{}
                   : module_saturate_by_ideal(im, m, N.rank, ring);
    if (im.empty()) {
        // N free: torsion part zero unless rank 0.
        if (N.rank == 0) return 0;
        // free module has zero m-torsion
        return 0;
    }
    auto gamma = subquotient_presentation(sat, im, N.rank, ring);
    auto dim = module_k_dimension(gamma);
    if (!dim) fail(errc::infinite_length, "torsion part is not finite-dimensional");
    unsigned long deg = residue_degree(m);
    if (*dim % deg != 0) fail(errc::resource_limit, "length not divisible by residue degree");
    return *dim / deg;
}

// Annihilator of span(R^rank / span(gens)) -- intersection of the colon
// ideals (span : e_c).
inline Ideal annihilator_of_quotient(const std::vector<ModVec>& gens, size_t rank, const RingPtr& ring)
{
    Ideal ann = Ideal(ring, {Polynomial::one(ring)});
    for (size_t c = 0; c < rank; ++c) {
        std::vector<ModVec> items;
        items.push_back(mod_unit(ring, rank, c));
        for (const auto& s : gens) items.push_back(s);
        std::vector<Polynomial> qgens;
        for (const auto& w : syzygies(items))
            if (!w.comps[0].is_zero()) qgens.push_back(w.comps[0]);
        ann = ideal_intersect(ann, Ideal(ring, qgens));
    }
    return ann;
}

inline Ideal annihilator(const ModulePresentation& N)
{
    return annihilator_of_quotient(N.relations.to_cols(N.ring), N.rank, N.ring);
}

// Is the localization N_m of finite length?  Equivalent to: after removing
// the m-power torsion, m avoids the support.
inline bool finite_length_at(const ModulePresentation& N, const Ideal& m)
{
    const auto& ring = N.ring;
    auto im = N.relations.to_cols(ring);
    if (im.empty()) return N.rank == 0;
    std::vector<ModVec> sat = module_saturate_by_ideal(im, m, N.rank, ring);
    Ideal ann = annihilator_of_quotient(sat, N.rank, ring);
    for (const auto& g : ann.groebner())
        if (!m.contains(g)) return true;
    return false;
}

// Length over the local ring at an arbitrary certified prime P.  The caller
// names the other candidate components so the module can be cut down first;
// the graded pieces P^t N / P^{t+1} N are then generically free over R/P and
// their ranks sum to the local length (Nakayama bounds the loop).
inline unsigned long length_at_prime(const ModulePresentation& N, const Ideal& P,
                                     const std::vector<Ideal>& other_components)
{
    const auto& ring = N.ring;
    if (ideal_dimension(P) == 0) return length_at_maximal(N, P);

    auto im = N.relations.to_cols(ring);
    // isolate: saturate away every other component
    Polynomial f = Polynomial::one(ring);
    for (const auto& Q : other_components) {
        bool found = false;
        for (const auto& g : Q.gens()) {
            if (!g.is_zero() && !P.contains(g)) {
                f = f * g;
                found = true;
                break;
            }
        }
        if (!found) {
            for (const auto& g : Q.groebner())
                if (!P.contains(g)) {
                    f = f * g;
                    found = true;
                    break;
                }
        }
        if (!found) fail(errc::bad_argument, "candidate components are not incomparable");
    }
    std::vector<ModVec> base = im;
    if (!f.is_constant() && !im.empty()) base = module_saturate(im, f, N.rank, ring);

    // graded pieces of the P-adic filtration on N' = R^rank / base
    unsigned long total = 0;
    std::vector<Polynomial> pgens = P.gens();
    // current filtration level generators (A_t) as submodule gens incl. base
    std::vector<ModVec> At;
    for (size_t c = 0; c < N.rank; ++c) At.push_back(mod_unit(ring, N.rank, c));
    const unsigned long cap = 64;
    for (unsigned long t = 0;; ++t) {
        if (t > cap) fail(errc::resource_limit, "length filtration did not stabilize");
        // A_{t+1} = P * A_t (+ base)
        std::vector<ModVec> next;
        for (const auto& a : At)
            for (const auto& p : pgens) next.push_back(a * p);
        std::vector<ModVec> Afull = At, Bfull = next;
        for (const auto& b : base) {
            Afull.push_back(b);
            Bfull.push_back(b);
        }
        auto pres = subquotient_presentation(Afull, Bfull, N.rank, ring);
        // rank over Frac(R/P) of the graded piece
        size_t relrank = rank_mod_prime(pres.relations, P);
        unsigned long grk = pres.rank >= relrank ? pres.rank - relrank : 0;
        if (grk == 0) break;
        total += grk;
        At = std::move(next);
    }
    return total;
}

namespace detail {

struct TorContext {
    RingPtr ring;
    std::vector<size_t> ranks;
    std::vector<PolyMatrix> maps;  // d_1, d_2, ..., d_{top+1}
};

// Resolution steps (no pruning) over R or over R/Q when qgens nonempty.
inline TorContext resolution_steps(const Ideal& I, size_t steps, const std::vector<Polynomial>& qgens)
{
    TorContext ctx;
    ctx.ring = I.ring();
    ctx.ranks.push_back(1);
    std::vector<ModVec> cols;
    for (const auto& g : I.gens()) {
        if (g.is_zero()) continue;
        ModVec v(ctx.ring, 1);
        v.comps[0] = g;
        cols.push_back(std::move(v));
    }
    if (cols.empty()) return ctx;
    ctx.maps.push_back(PolyMatrix::from_cols(ctx.ring, 1, cols));
    ctx.ranks.push_back(cols.size());
    for (size_t s = 1; s < steps; ++s) {
        auto syz = syzygies_mod(cols, ctx.ranks[ctx.ranks.size() - 2], ctx.ring, qgens);
        if (syz.empty()) break;
        ctx.maps.push_back(PolyMatrix::from_cols(ctx.ring, cols.size(), syz));
        ctx.ranks.push_back(syz.size());
        cols = std::move(syz);
    }
    return ctx;
}

}  // namespace detail

// Presentations of Tor_i(R/I, R/J) for i = 0..top, over R (or over R/Q when
// a modulus is given; the smoothness witness justifies truncation there).
inline std::vector<ModulePresentation> tor_presentations(const Ideal& I, const Ideal& J, size_t top,
                                                         const Ideal* modulus = nullptr)
{
    check_same_ring(I.ring(), J.ring());
    const auto& ring = I.ring();
    std::vector<Polynomial> qgens;
    if (modulus)
        for (const auto& q : modulus->gens())
            if (!q.is_zero()) qgens.push_back(q);

    auto ctx = detail::resolution_steps(I, top + 1, qgens);
    std::vector<Polynomial> jq = qgens;
    for (const auto& g : J.gens())
        if (!g.is_zero()) jq.push_back(g);

    std::vector<ModulePresentation> out;
    size_t levels = ctx.maps.size();  // highest index with a map
    for (size_t i = 0; i <= top; ++i) {
        if (i > levels) {
            // resolution ended: higher Tor vanish
            out.push_back(ModulePresentation(ring, 0, PolyMatrix(ring, 0, 0)));
            continue;
        }
        size_t bi = ctx.ranks[std::min(i, ctx.ranks.size() - 1)];
        // K_i = kernel of d_i over R/(J+Q); K_0 = everything.
        std::vector<ModVec> K;
        if (i == 0) {
            K.push_back(mod_unit(ring, 1, 0));
            bi = 1;
        } else {
            auto cols = ctx.maps[i - 1].to_cols(ring);
            K = detail::syzygies_mod(cols, ctx.ranks[i - 1], ring, jq);
            bi = ctx.ranks[i];
        }
        // L_i = im d_{i+1} + (J+Q) R^{b_i}
        std::vector<ModVec> L;
        if (i < ctx.maps.size())
            for (auto& c : ctx.maps[i].to_cols(ring)) L.push_back(std::move(c));
        for (const auto& g : jq)
            for (size_t c = 0; c < bi; ++c) {
                ModVec v(ring, bi);
                v.comps[c] = g;
                L.push_back(std::move(v));
            }
        if (K.empty()) {
            out.push_back(ModulePresentation(ring, 0, PolyMatrix(ring, 0, 0)));
            continue;
        }
        out.push_back(subquotient_presentation(K, L, bi, ring));
    }
    return out;
}

// Lengths of Tor_i(R/I, R/J) localized at a maximal ideal m (i = 0, 1, ...).
// Optional modulus: compute over R/Q with truncation bound `top` (defaults to
// #variables, the global dimension of R).
inline std::vector<unsigned long> tor_lengths_at_point(const Ideal& I, const Ideal& J, const Ideal& m,
                                                       const Ideal* modulus = nullptr,
                                                       std::optional<size_t> top_override = std::nullopt)
{
    check_same_ring(I.ring(), m.ring());
    check_same_ring(J.ring(), m.ring());
    const auto& ring = I.ring();
    if (!is_maximal(m)) fail(errc::not_maximal, "localization point is not a maximal ideal");

    // finite-length precondition: after removing the m-primary part of
    // I+J(+Q), m must avoid the remaining support.
    Ideal S = ideal_sum(I, J);
    if (modulus) S = ideal_sum(S, *modulus);
    Ideal away = saturate_by_ideal(S, m);
    bool finite = false;
    if (away.is_unit_ideal()) finite = true;
    for (const auto& g : away.groebner())
        if (!m.contains(g)) finite = true;
    if (!finite) fail(errc::infinite_length, "support at the point is positive-dimensional");

    size_t top = top_override ? *top_override : ring->nvars();
    auto pres = tor_presentations(I, J, top, modulus);
    std::vector<unsigned long> lengths;
    for (const auto& P : pres) {
        if (P.rank == 0) {
            lengths.push_back(0);
            continue;
        }
        lengths.push_back(length_at_maximal(P, m));
    }
    // normalize list shape: drop trailing zeros but keep at least two entries
    while (lengths.size() > 2 && lengths.back() == 0 && lengths[lengths.size() - 2] == 0)
        lengths.pop_back();
    return lengths;
}

}  // namespace cycal
