#pragma once

#include "ideal.hpp"
#include "univariate.hpp"

namespace cycal {

// Standard monomial basis of R/I (finite case); error when dim > 0.
inline std::vector<Exponents> std_monomials(const Ideal& I)
{
    const auto& ring = I.ring();
    const auto& gb = I.groebner();
    if (I.is_unit_ideal()) return {};
    size_t n = ring->nvars();
    std::vector<Exponents> leads;
    for (const auto& g : gb) leads.push_back(g.lead_exps());
    std::vector<unsigned> bound(n, 0);
    for (size_t v = 0; v < n; ++v) {
        bool found = false;
        for (const auto& l : leads) {
            bool pure = l[v] > 0;
            for (size_t w = 0; w < n && pure; ++w)
                if (w != v && l[w] > 0) pure = false;
            if (pure && (!found || l[v] < bound[v])) {
                bound[v] = l[v];
                found = true;
            }
        }
        if (!found) fail(errc::positive_dimensional, "quotient is not finite-dimensional");
    }
    std::vector<Exponents> basis;
    std::function<void(size_t, Exponents&)> walk = [&](size_t v, Exponents& cur) {
        if (v == n) {
            for (const auto& l : leads)
                if (divides(l, cur)) return;
            basis.push_back(cur);
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
    return basis;
}

// dim_k R/m; the residue degree [k(m):k] when m is maximal.
inline unsigned long residue_degree(const Ideal& m)
{
    return static_cast<unsigned long>(std_monomials(m).size());
}

namespace zerodim {

using Vec = std::vector<mpq_class>;

inline Vec coords(const Polynomial& f, const std::vector<Exponents>& basis)
{
    Vec v(basis.size(), mpq_class(0));
    for (const auto& t : f.terms()) {
        bool placed = false;
        for (size_t i = 0; i < basis.size() && !placed; ++i)
            if (basis[i] == t.exps) {
                v[i] = t.coeff;
                placed = true;
            }
        if (!placed) fail(errc::bad_argument, "polynomial not reduced to the standard basis");
    }
    return v;
}

// Column j = coordinates of nf(f * basis[j]).
inline std::vector<Vec> mult_matrix(const Ideal& I, const std::vector<Exponents>& basis,
                                    const Polynomial& f)
{
    const auto& ring = I.ring();
    std::vector<Vec> cols;
    for (const auto& b : basis) {
        Polynomial prod = I.normal_form(f * Polynomial::monomial(ring, b, mpq_class(1)));
        cols.push_back(coords(prod, basis));
    }
    return cols;
}

// Minimal polynomial of mult-by-f on R/I (for commutative algebras this is
// the minimal polynomial of the element; the Krylov space of 1 suffices).
inline UPoly minpoly(const Ideal& I, const std::vector<Exponents>& basis, const Polynomial& f)
{
    const auto& F = I.ring()->field();
    size_t D = basis.size();
    // Krylov vectors 1, f, f^2, ... reduced in R/I.
    std::vector<Vec> krylov;
    std::vector<Vec> echelon;          // row-reduced copies
    std::vector<size_t> pivot_of_row;  // pivot column of each echelon row
    Polynomial power = Polynomial::one(I.ring());
    for (size_t step = 0; step <= D; ++step) {
        Vec v = coords(I.normal_form(power), basis);
        Vec w = v;
        for (size_t r = 0; r < echelon.size(); ++r) {
            size_t p = pivot_of_row[r];
            if (w[p] == 0) continue;
            mpq_class c = F.div(w[p], echelon[r][p]);
            for (size_t j = 0; j < D; ++j) w[j] = F.sub(w[j], F.mul(c, echelon[r][j]));
        }
        bool zero = true;
        for (const auto& x : w)
            if (x != 0) zero = false;
        if (zero) {
            // First dependency: f^k = sum a_i f^i, i < k.  Solve for the a_i
            // directly (quotient dimensions are tiny at desk scale).
            size_t k = krylov.size();
            // Solve sum_{i<k} a_i * krylov[i] = v.
            std::vector<Vec> A(D, Vec(k, mpq_class(0)));
            for (size_t i = 0; i < k; ++i)
                for (size_t j = 0; j < D; ++j) A[j][i] = krylov[i][j];
            Vec rhs = v;
            // Gaussian elimination.
            std::vector<size_t> where(k, SIZE_MAX);
            size_t row = 0;
            for (size_t col = 0; col < k && row < D; ++col) {
                size_t piv = SIZE_MAX;
                for (size_t r = row; r < D; ++r)
                    if (A[r][col] != 0) {
                        piv = r;
                        break;
                    }
                if (piv == SIZE_MAX) continue;
                std::swap(A[piv], A[row]);
                std::swap(rhs[piv], rhs[row]);
                for (size_t r = 0; r < D; ++r) {
                    if (r == row || A[r][col] == 0) continue;
                    mpq_class c = F.div(A[r][col], A[row][col]);
                    for (size_t cc = 0; cc < k; ++cc) A[r][cc] = F.sub(A[r][cc], F.mul(c, A[row][cc]));
                    rhs[r] = F.sub(rhs[r], F.mul(c, rhs[row]));
                }
                where[col] = row;
                ++row;
            }
            UPoly mp(k + 1, mpq_class(0));
            mp[k] = 1;
            for (size_t i = 0; i < k; ++i) {
                mpq_class a = where[i] == SIZE_MAX ? mpq_class(0) : F.div(rhs[where[i]], A[where[i]][i]);
                mp[i] = F.neg(a);
            }
            uni::trim(mp);
            return mp;
        }
        size_t p = 0;
        while (w[p] == 0) ++p;
        krylov.push_back(v);
        echelon.push_back(w);
        pivot_of_row.push_back(p);
        power = I.normal_form(power * f);
    }
    fail(errc::resource_limit, "minimal polynomial search exceeded the dimension bound");
}

}  // namespace zerodim

// Minimal primes of a zero-dimensional ideal, every output certified maximal
// by a primitive element whose minimal polynomial is irreducible of degree
// dim_k of the component.  Splits are exact (factors of minimal polynomials);
// radical refinements strictly shrink the algebra.
inline std::vector<Ideal> minimal_primes_zero_dim(const Ideal& I0)
{
    const auto& ring = I0.ring();
    if (ideal_dimension(I0) > 0)
        fail(errc::positive_dimensional, "minimal_primes_zero_dim needs a zero-dimensional ideal");

    std::vector<Ideal> out;
    std::function<void(const Ideal&)> walk = [&](const Ideal& I) {
        if (I.is_unit_ideal()) return;
        auto basis = std_monomials(I);
        size_t D = basis.size();
        const auto& F = ring->field();

        auto split_on = [&](const Polynomial& elem, const std::vector<PolyFactor>& factors) {
            for (const auto& fac : factors) {
                // substitute elem into the univariate factor
                UPoly u = to_univariate(fac.factor, *fac.factor.sole_variable());
                Polynomial g = Polynomial::zero(ring);
                Polynomial pw = Polynomial::one(ring);
                for (size_t d = 0; d < u.size(); ++d) {
                    if (u[d] != 0) g = g + pw * Polynomial::constant(ring, u[d]);
                    pw = pw * elem;
                }
                std::vector<Polynomial> gens = I.gens();
                gens.push_back(g);
                walk(Ideal(ring, gens));
            }
        };

        auto try_element = [&](const Polynomial& elem) -> bool {
            UPoly mp = zerodim::minpoly(I, basis, elem);
            if (uni::deg(mp) <= 0) return false;
            auto ufs = uni::factor(F, mp);
            std::vector<PolyFactor> pfs;
            auto uring = PolyRing::make(F, {"@u"});
            for (const auto& u : ufs) pfs.push_back({from_univariate(uring, u.factor, 0), u.multiplicity});
            if (pfs.size() >= 2) {
                std::vector<PolyFactor> distinct;
                for (auto& f : pfs) distinct.push_back({f.factor, 1});
                split_on(elem, distinct);
                return true;
            }
            if (pfs.size() == 1 && pfs[0].multiplicity >= 2) {
                split_on(elem, {{pfs[0].factor, 1}});
                return true;
            }
            if (pfs.size() == 1 && static_cast<size_t>(pfs[0].factor.degree()) == D) {
                // Certified: R/I = k[elem]/(irreducible of full degree).
                out.push_back(Ideal(ring, I.groebner()));
                return true;
            }
            return false;
        };

        for (size_t v = 0; v < ring->nvars(); ++v)
            if (try_element(Polynomial::variable(ring, v))) return;

        std::mt19937_64 rng(std::hash<std::string>{}(I.key()) ^ 0x632d5u);
        for (int attempt = 0; attempt < 64; ++attempt) {
            long spread = 2 + attempt;
            std::vector<Term> terms;
            for (size_t v = 0; v < ring->nvars(); ++v) {
                long c = static_cast<long>(rng() % (2 * spread + 1)) - spread;
                if (c == 0) continue;
                Exponents e(ring->nvars(), 0);
                e[v] = 1;
                terms.push_back({e, mpq_class(c)});
            }
            if (attempt > 16) {
                // widen the search beyond linear forms
                size_t pick = rng() % basis.size();
                terms.push_back({basis[pick], mpq_class(static_cast<long>(rng() % 5) + 1)});
            }
            Polynomial elem(ring, terms);
            if (elem.is_constant()) continue;
            if (try_element(elem)) return;
        }
        fail(errc::resource_limit, "no separating primitive element found");
    };
    walk(I0);

    // canonical order, dedupe
    std::sort(out.begin(), out.end(), [](const Ideal& a, const Ideal& b) { return a.key() < b.key(); });
    out.erase(std::unique(out.begin(), out.end(), [](const Ideal& a, const Ideal& b) { return a == b; }),
              out.end());
    return out;
}

// Maximality certificate: zero-dimensional, and the decomposition returns the
// ideal itself as its single (radical) component.
inline bool is_maximal(const Ideal& m)
{
    if (m.is_unit_ideal()) return false;
    if (ideal_dimension(m) != 0) return false;
    auto comps = minimal_primes_zero_dim(m);
    return comps.size() == 1 && comps[0] == m;
}

}  // namespace cycal
