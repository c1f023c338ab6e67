#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <vector>

namespace cycal {

// Dense integer matrix, row-major.
struct IntMat {
    size_t rows = 0, cols = 0;
    std::vector<mpz_class> data;

    IntMat() = default;
    IntMat(size_t r, size_t c) : rows(r), cols(c), data(r * c, mpz_class(0)) {}

    mpz_class& at(size_t r, size_t c) { return data[r * cols + c]; }
    const mpz_class& at(size_t r, size_t c) const { return data[r * cols + c]; }
};

// Invariant factors d_1 | d_2 | ... (positive, ones included) of the Smith
// normal form.
inline std::vector<mpz_class> smith_invariants(IntMat A)
{
    std::vector<mpz_class> inv;
    size_t t = 0;
    while (t < A.rows && t < A.cols) {
        // find a pivot of minimal absolute value in the lower-right block
        size_t pr = SIZE_MAX, pc = SIZE_MAX;
        mpz_class best(0);
        for (size_t r = t; r < A.rows; ++r)
            for (size_t c = t; c < A.cols; ++c) {
                if (A.at(r, c) == 0) continue;
                mpz_class a = abs(A.at(r, c));
                if (pr == SIZE_MAX || a < best) {
                    best = a;
                    pr = r;
                    pc = c;
                }
            }
        if (pr == SIZE_MAX) break;
        // move pivot to (t, t)
        if (pr != t)
            for (size_t c = 0; c < A.cols; ++c) std::swap(A.at(pr, c), A.at(t, c));
        if (pc != t)
            for (size_t r = 0; r < A.rows; ++r) std::swap(A.at(r, pc), A.at(r, t));
        // clear row and column by division steps
        bool dirty = false;
        for (size_t r = t + 1; r < A.rows; ++r) {
            if (A.at(r, t) == 0) continue;
            mpz_class q = A.at(r, t) / A.at(t, t);
            for (size_t c = t; c < A.cols; ++c) A.at(r, c) -= q * A.at(t, c);
            if (A.at(r, t) != 0) dirty = true;
        }
        for (size_t c = t + 1; c < A.cols; ++c) {
            if (A.at(t, c) == 0) continue;
            mpz_class q = A.at(t, c) / A.at(t, t);
            for (size_t r = t; r < A.rows; ++r) A.at(r, c) -= q * A.at(r, t);
            if (A.at(t, c) != 0) dirty = true;
        }
        if (dirty) continue;  // smaller remainders exist; repick pivot
        // divisibility sweep: pivot must divide the remaining block
        bool fixed = true;
        for (size_t r = t + 1; r < A.rows && fixed; ++r)
            for (size_t c = t + 1; c < A.cols && fixed; ++c)
                if (A.at(r, c) % A.at(t, t) != 0) {
                    for (size_t cc = t; cc < A.cols; ++cc) A.at(t, cc) += A.at(r, cc);
                    fixed = false;
                }
        if (!fixed) continue;
        inv.push_back(abs(A.at(t, t)));
        ++t;
    }
    return inv;
}

struct HomologyGroup {
    unsigned long free_rank = 0;
    std::vector<mpz_class> torsion;  // invariant factors > 1

    bool trivial() const { return free_rank == 0 && torsion.empty(); }

    bool operator==(const HomologyGroup& o) const
    {
        return free_rank == o.free_rank && torsion == o.torsion;
    }

    std::string to_string() const
    {
        std::string s;
        if (free_rank) s += "Z^" + std::to_string(free_rank);
        for (const auto& d : torsion) s += (s.empty() ? "" : " + ") + ("Z/" + d.get_str());
        return s.empty() ? "0" : s;
    }
};

// Homology of a bounded complex of free Z-modules.  dims[k] is the rank of
// C_k; maps[k] : C_{k+1} -> C_k (so maps.size() == dims.size() - 1, or the
// complex ends with zero maps).
inline std::vector<HomologyGroup> complex_homology(const std::vector<size_t>& dims,
                                                   const std::vector<IntMat>& maps)
{
    auto rank_of = [](const IntMat& M) {
        size_t count = 0;
        for (const auto& d : smith_invariants(M))
            if (d != 0) ++count;
        return count;
    };
    std::vector<HomologyGroup> H(dims.size());
    for (size_t k = 0; k < dims.size(); ++k) {
        size_t rank_out = 0;  // rank of d_k: C_k -> C_{k-1}
        if (k >= 1 && k - 1 < maps.size()) rank_out = rank_of(maps[k - 1]);
        size_t rank_in = 0;  // rank of d_{k+1}: C_{k+1} -> C_k
        std::vector<mpz_class> tors;
        if (k < maps.size()) {
            auto inv = smith_invariants(maps[k]);
            for (const auto& d : inv) {
                if (d != 0) ++rank_in;
                if (d > 1) tors.push_back(d);
            }
        }
        H[k].free_rank = static_cast<unsigned long>(dims[k] - rank_out - rank_in);
        H[k].torsion = tors;
    }
    return H;
}

}  // namespace cycal
