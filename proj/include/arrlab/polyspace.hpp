#ifndef ARRLAB_POLYSPACE_HPP
#define ARRLAB_POLYSPACE_HPP

#include <map>
#include <vector>

#include "arrlab/scalar.hpp"

namespace arrlab {

// Monomial exponent vectors of a fixed total degree, with index lookup.
struct MonomialBasis {
    long nvars = 0;
    long deg = 0;
    std::vector<std::vector<int>> mons;       // lexicographic
    std::map<std::vector<int>, long> index;

    long size() const { return (long)mons.size(); }
};

inline MonomialBasis monomial_basis(long nvars, long deg) {
    MonomialBasis b;
    b.nvars = nvars;
    b.deg = deg;
    std::vector<int> cur(nvars, 0);
    // generate all exponent vectors summing to deg
    auto rec = [&](auto&& self, long pos, long left) -> void {
        if (pos == nvars - 1) {
            cur[pos] = (int)left;
            b.mons.push_back(cur);
            return;
        }
        for (long e = left; e >= 0; --e) {
            cur[pos] = (int)e;
            self(self, pos + 1, left - e);
        }
    };
    if (nvars >= 1) rec(rec, 0, deg);
    for (long i = 0; i < (long)b.mons.size(); ++i) b.index[b.mons[i]] = i;
    return b;
}

// Sparse polynomial over exponent vectors.
using SparsePoly = std::map<std::vector<int>, Scalar>;

inline void sparse_add_term(SparsePoly& p, const std::vector<int>& mon,
                            const Scalar& c) {
    if (c.is_zero()) return;
    auto it = p.find(mon);
    if (it == p.end()) {
        p.emplace(mon, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) p.erase(it);
    }
}

inline SparsePoly sparse_mul(const SparsePoly& a, const SparsePoly& b) {
    SparsePoly r;
    for (const auto& [ma, ca] : a)
        for (const auto& [mb, cb] : b) {
            std::vector<int> m(ma.size());
            for (size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
            sparse_add_term(r, m, ca * cb);
        }
    return r;
}

// Linear form sum coeffs[i] * v_i as a sparse polynomial.
inline SparsePoly linear_form(const std::vector<Scalar>& coeffs) {
    SparsePoly p;
    std::vector<int> mon(coeffs.size(), 0);
    for (size_t i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i].is_zero()) continue;
        mon[i] = 1;
        p.emplace(mon, coeffs[i]);
        mon[i] = 0;
    }
    return p;
}

inline std::vector<Scalar> densify(const SparsePoly& p, const MonomialBasis& b,
                                   const Field& f) {
    std::vector<Scalar> out(b.size(), Scalar::zero(f));
    for (const auto& [mon, c] : p) out[b.index.at(mon)] = c;
    return out;
}

// Evaluate a dense degree-d form at a coordinate vector.
inline Scalar eval_form(const std::vector<Scalar>& coeffs, const MonomialBasis& b,
                        const std::vector<Scalar>& point, const Field& f) {
    Scalar acc = Scalar::zero(f);
    for (long i = 0; i < b.size(); ++i) {
        if (coeffs[i].is_zero()) continue;
        Scalar term = coeffs[i];
        for (long v = 0; v < b.nvars; ++v)
            for (int e = 0; e < b.mons[i][v]; ++e) term *= point[v];
        acc += term;
    }
    return acc;
}

// Field embeddings used when a configuration meets objects over a larger
// field: identity, prime field into an extension, QQ into QQ(zeta_m), and
// QQ(zeta_m) into QQ(zeta_M) with m | M via zeta_m -> zeta_M^(M/m).
Scalar embed_scalar(const Scalar& s, const Field& big);

}  // namespace arrlab

#endif
