#include "arrlab/duality.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <sstream>

#include "arrlab/linalg.hpp"
#include "arrlab/threads.hpp"

namespace arrlab {

long BiGradedForm::xdeg() const {
    if (terms.empty()) return 0;
    long d = 0;
    const auto& mon = terms.begin()->first;
    for (long i = 0; i <= n; ++i) d += mon[i];
    return d;
}

BiGradedForm BiGradedForm::operator*(const BiGradedForm& o) const {
    BiGradedForm r{n, field, sparse_mul(terms, o.terms)};
    return r;
}

BiGradedForm BiGradedForm::operator+(const BiGradedForm& o) const {
    BiGradedForm r = *this;
    for (const auto& [m, c] : o.terms) sparse_add_term(r.terms, m, c);
    return r;
}

BiGradedForm BiGradedForm::scaled(const Scalar& c) const {
    BiGradedForm r{n, field, {}};
    if (c.is_zero()) return r;
    for (const auto& [m, v] : terms) r.terms.emplace(m, v * c);
    return r;
}

std::string BiGradedForm::to_string() const {
    if (terms.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [mon, c] : terms) {
        if (!first) out << " + ";
        first = false;
        std::string cs = c.to_string();
        if (cs.find(' ') != std::string::npos) cs = "(" + cs + ")";
        out << cs;
        for (long i = 0; i <= n; ++i) {
            if (!mon[i]) continue;
            out << "*X" << i;
            if (mon[i] > 1) out << "^" << mon[i];
        }
        for (long r = 1; r <= n - 1; ++r)
            for (long j = 0; j <= n; ++j) {
                int e = mon[avar(n, r, j)];
                if (!e) continue;
                out << "*A" << r << "_" << j;
                if (e > 1) out << "^" << e;
            }
    }
    return out.str();
}

BiGradedForm minor_form(const Field& f, long i, long n) {
    if (i < 0 || i > n) throw UsageError("minor index out of range");
    long nvars = n * (n + 1);
    // rows of the matrix as variable indices; row 0 is X, rows 1..n-1 the A rows
    std::vector<std::vector<long>> var(n, std::vector<long>(n + 1));
    for (long j = 0; j <= n; ++j) var[0][j] = xvar(n, j);
    for (long r = 1; r <= n - 1; ++r)
        for (long j = 0; j <= n; ++j) var[r][j] = avar(n, r, j);
    std::vector<long> cols;
    for (long j = 0; j <= n; ++j)
        if (j != i) cols.push_back(j);

    BiGradedForm out{n, f, {}};
    // Laplace expansion over permutations
    std::vector<int> perm(n);
    for (long r = 0; r < n; ++r) perm[r] = (int)r;
    std::function<void(long, int, std::vector<int>&)> rec =
        [&](long row, int sign, std::vector<int>& used) {
            if (row == n) {
                std::vector<int> mon(nvars, 0);
                for (long r = 0; r < n; ++r) ++mon[var[r][cols[perm[r]]]];
                Scalar c = Scalar::from_int(f, sign);
                sparse_add_term(out.terms, mon, c);
                return;
            }
            for (long c = 0; c < n; ++c) {
                if (used[c]) continue;
                used[c] = 1;
                perm[row] = (int)c;
                int inversions = 0;
                for (long r = 0; r < row; ++r)
                    if (perm[r] > c) ++inversions;
                rec(row + 1, (inversions % 2) ? -sign : sign, used);
                used[c] = 0;
            }
        };
    std::vector<int> used(n, 0);
    rec(0, (i % 2) ? -1 : 1, used);
    return out;
}

namespace {

// substitute X := P into a bigraded form; remaining polynomial over A vars
SparsePoly substitute_x(const BiGradedForm& f, const std::vector<Scalar>& P) {
    long n = f.n;
    SparsePoly out;
    for (const auto& [mon, c] : f.terms) {
        Scalar v = c;
        for (long i = 0; i <= n; ++i)
            for (int e = 0; e < mon[i]; ++e) v *= P[i];
        if (v.is_zero()) continue;
        std::vector<int> amon(mon.begin(), mon.end());
        for (long i = 0; i <= n; ++i) amon[i] = 0;
        sparse_add_term(out, amon, v);
    }
    return out;
}

}  // namespace

bool igg_member(const Configuration& cfg, const BiGradedForm& f) {
    for (const auto& p : cfg.points)
        if (!substitute_x(f, p.coords).empty()) return false;
    return true;
}

std::vector<Scalar> epsilon(const BiGradedForm& f,
                            const std::vector<std::vector<Scalar>>& rows,
                            const Field& big) {
    long n = f.n;
    if ((long)rows.size() != n - 1) throw UsageError("need n-1 substitution rows");
    {
        SpanTester t(big, n + 1);
        for (const auto& r : rows)
            if (!t.add(r)) throw UsageError("substitution rows must be independent");
    }
    long d = f.xdeg();
    MonomialBasis xb = monomial_basis(n + 1, d);
    std::vector<Scalar> out(xb.size(), Scalar::zero(big));
    for (const auto& [mon, c] : f.terms) {
        Scalar v = embed_scalar(c, big);
        for (long r = 1; r <= n - 1; ++r)
            for (long j = 0; j <= n; ++j)
                for (int e = 0; e < mon[avar(n, r, j)]; ++e) v *= rows[r - 1][j];
        if (v.is_zero()) continue;
        std::vector<int> xm(mon.begin(), mon.begin() + n + 1);
        out[xb.index.at(xm)] += v;
    }
    return out;
}

std::vector<std::vector<Scalar>> q_span_rows(const GenericCodim2& q, long n) {
    Mat m(q.field, 2, n + 1);
    for (long j = 0; j <= n; ++j) {
        m.at(0, j) = q.l0[j];
        m.at(1, j) = q.l1[j];
    }
    KernelResult kr = kernel_and_rank(std::move(m));
    if ((long)kr.kernel.size() != n - 1)
        throw InvariantViolation("codimension-2 subspace has wrong kernel size");
    return kr.kernel;
}

// ---------------------------------------------------------------------------
// Per-degree engine for the bigraded module.
// ---------------------------------------------------------------------------

namespace {

struct DegreeData {
    long d = 0;
    MonomialBasis mmb;  // monomials of degree d-1 in the n+1 minor symbols
    long gens = 0;      // (n+1) * mmb.size(), generator (i, m) = X_i * m(M)
    std::vector<std::vector<Scalar>> ker_rel;  // relation space basis
    std::vector<std::vector<Scalar>> reps;     // module basis representatives
    long dim = 0;
};

// integer-coefficient sparse polynomial reduced mod p
using PolyP = std::map<std::vector<int>, uint64_t>;

PolyP to_poly_p(const BiGradedForm& f, long p) {
    PolyP out;
    for (const auto& [m, c] : f.terms) {
        mpq_class q = c.rational_value();
        if (q.get_den() != 1) throw InvariantViolation("non-integer minor coefficient");
        long v = ((long)mpz_fdiv_ui(q.get_num().get_mpz_t(), (unsigned long)p));
        if (v) out[m] = (uint64_t)v;
    }
    return out;
}

PolyP poly_p_mul(const PolyP& a, const PolyP& b, long p) {
    PolyP r;
    for (const auto& [ma, ca] : a)
        for (const auto& [mb, cb] : b) {
            std::vector<int> m(ma.size());
            for (size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
            uint64_t add = (uint64_t)((__uint128_t)ca * cb % p);
            auto [it, fresh] = r.try_emplace(std::move(m), add);
            if (!fresh) {
                it->second = (it->second + add) % (uint64_t)p;
                if (!it->second) r.erase(it);
            }
        }
    return r;
}

class IggAnalyzer {
  public:
    explicit IggAnalyzer(const Configuration& cfg) : cfg_(cfg) {}

    const Configuration& cfg() const { return cfg_; }

    std::shared_ptr<const DegreeData> degree(long d) {
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto it = cache_.find(d);
            if (it != cache_.end()) return it->second;
        }
        auto data = std::make_shared<DegreeData>(compute(d));
        std::lock_guard<std::mutex> lock(mu_);
        auto [it, fresh] = cache_.emplace(d, data);
        return it->second;
    }

    void ensure(long lo, long hi) {
        std::vector<long> todo;
        {
            std::lock_guard<std::mutex> lock(mu_);
            for (long d = lo; d <= hi; ++d)
                if (!cache_.count(d)) todo.push_back(d);
        }
        // heavier degrees first so the pool drains evenly
        std::sort(todo.begin(), todo.end(), std::greater<long>());
        parallel_over(todo, [&](long d) { degree(d); });
    }

  private:
    DegreeData compute(long d) const;

    Configuration cfg_;
    std::mutex mu_;
    std::map<long, std::shared_ptr<const DegreeData>> cache_;
};

// relation-space basis: multiples of the identity sum_i X_i M_i = 0
std::vector<std::vector<Scalar>> koszul_vectors(const Field& f, long n,
                                                const MonomialBasis& mmb, long d) {
    std::vector<std::vector<Scalar>> out;
    if (d < 2) return out;
    MonomialBasis hb = monomial_basis(n + 1, d - 2);
    long gens = (n + 1) * mmb.size();
    for (long h = 0; h < hb.size(); ++h) {
        std::vector<Scalar> v(gens, Scalar::zero(f));
        for (long i = 0; i <= n; ++i) {
            std::vector<int> m = hb.mons[h];
            m[i] += 1;
            v[i * mmb.size() + mmb.index.at(m)] = Scalar::one(f);
        }
        out.push_back(std::move(v));
    }
    return out;
}

DegreeData IggAnalyzer::compute(long d) const {
    if (d < 1) throw UsageError("degree must be positive");
    const Field& f = cfg_.field;
    long n = cfg_.ambient_dim;
    DegreeData out;
    out.d = d;
    out.mmb = monomial_basis(n + 1, d - 1);
    long gmon = out.mmb.size();
    out.gens = (n + 1) * gmon;

    bool prime_field = (f->kind == FieldKind::Finite && f->k == 1);

    // minors over the base field and with integer coefficients
    Field qq = make_rationals();
    std::vector<BiGradedForm> minors_q;
    for (long i = 0; i <= n; ++i) minors_q.push_back(minor_form(qq, i, n));

    // --- relation space (kernel of the expansion map) ---
    auto koszul = koszul_vectors(f, n, out.mmb, d);
    {
        long p = prime_field ? f->p : reduction_primes(make_rationals(), 1)[0];
        std::vector<PolyP> minors_p;
        for (long i = 0; i <= n; ++i) minors_p.push_back(to_poly_p(minors_q[i], p));
        // m(M) mod p for all degree d-1 monomials, level by level
        std::map<std::vector<int>, PolyP> level;
        level[std::vector<int>(n + 1, 0)] = PolyP{{std::vector<int>(n * (n + 1), 0), 1}};
        for (long e = 1; e <= d - 1; ++e) {
            std::map<std::vector<int>, PolyP> next;
            for (const auto& mon : monomial_basis(n + 1, e).mons) {
                long j = 0;
                while (mon[j] == 0) ++j;
                std::vector<int> prev = mon;
                prev[j] -= 1;
                next[mon] = poly_p_mul(level.at(prev), minors_p[j], p);
            }
            level = std::move(next);
        }
        // expansion rows over a shared column map
        std::map<std::vector<int>, long> colid;
        std::vector<std::vector<std::pair<long, uint64_t>>> sparse_rows(out.gens);
        for (long mi = 0; mi < gmon; ++mi) {
            const PolyP& poly = level.at(out.mmb.mons[mi]);
            for (long i = 0; i <= n; ++i) {
                auto& row = sparse_rows[i * gmon + mi];
                for (const auto& [mon, c] : poly) {
                    std::vector<int> m = mon;
                    m[i] += 1;
                    auto [it, fresh] = colid.try_emplace(m, (long)colid.size());
                    row.emplace_back(it->second, c);
                }
            }
        }
        std::vector<std::vector<uint64_t>> rows(out.gens,
                                                std::vector<uint64_t>(colid.size(), 0));
        for (long g = 0; g < out.gens; ++g)
            for (const auto& [cid, c] : sparse_rows[g]) rows[g][cid] = c;
        long rank_p = rank_mod_p(std::move(rows), p);
        if (rank_p == out.gens - (long)koszul.size()) {
            // the independent Koszul span meets the certified rank bound
            out.ker_rel = std::move(koszul);
        } else if (prime_field) {
            // exact over F_p: redo elimination keeping the kernel
            std::vector<std::vector<uint64_t>> rows2(
                out.gens, std::vector<uint64_t>(colid.size(), 0));
            for (long g = 0; g < out.gens; ++g)
                for (const auto& [cid, c] : sparse_rows[g]) rows2[g][cid] = c;
            // kernel of the transpose-free row space: we need left kernel;
            // transpose so the relation space becomes a right kernel
            std::vector<std::vector<uint64_t>> tr(colid.size(),
                                                  std::vector<uint64_t>(out.gens, 0));
            for (long g = 0; g < out.gens; ++g)
                for (long c = 0; c < (long)colid.size(); ++c) tr[c][g] = rows2[g][c];
            KernelModP kp = kernel_mod_p(std::move(tr), p);
            out.ker_rel.clear();
            for (const auto& v : kp.kernel) {
                std::vector<Scalar> s(out.gens, Scalar::zero(f));
                for (long g = 0; g < out.gens; ++g)
                    if (v[g]) s[g] = Scalar::from_int(f, (long)v[g]);
                out.ker_rel.push_back(std::move(s));
            }
        } else {
            // exact fallback over the field: expand symbolically
            std::vector<BiGradedForm> minors_f;
            for (long i = 0; i <= n; ++i) minors_f.push_back(minor_form(f, i, n));
            std::map<std::vector<int>, BiGradedForm> lv;
            lv[std::vector<int>(n + 1, 0)] =
                BiGradedForm{n, f, {{std::vector<int>(n * (n + 1), 0), Scalar::one(f)}}};
            for (long e = 1; e <= d - 1; ++e) {
                std::map<std::vector<int>, BiGradedForm> nx;
                for (const auto& mon : monomial_basis(n + 1, e).mons) {
                    long j = 0;
                    while (mon[j] == 0) ++j;
                    std::vector<int> prev = mon;
                    prev[j] -= 1;
                    nx[mon] = lv.at(prev) * minors_f[j];
                }
                lv = std::move(nx);
            }
            std::map<std::vector<int>, long> colid2;
            std::vector<std::vector<std::pair<long, Scalar>>> srows(out.gens);
            for (long mi = 0; mi < gmon; ++mi) {
                const auto& poly = lv.at(out.mmb.mons[mi]).terms;
                for (long i = 0; i <= n; ++i) {
                    auto& row = srows[i * gmon + mi];
                    for (const auto& [mon, c] : poly) {
                        std::vector<int> m = mon;
                        m[i] += 1;
                        auto [it, fresh] = colid2.try_emplace(m, (long)colid2.size());
                        row.emplace_back(it->second, c);
                    }
                }
            }
            Mat tr(f, colid2.size(), out.gens);
            for (long g = 0; g < out.gens; ++g)
                for (const auto& [cid, c] : srows[g]) tr.at(cid, g) = c;
            KernelResult kr = kernel_and_rank(std::move(tr));
            out.ker_rel = std::move(kr.kernel);
        }
    }

    // --- point conditions ---
    // After X := P the minors become linear forms lambda_j in the A entries;
    // for the planar case these span a 2-dimensional space, so each point
    // contributes only d condition rows (coefficients of a binary form).
    long nullity_c = 0;
    std::vector<std::vector<Scalar>> ker_c;
    if (n == 2) {
        Mat cond(f, 0, out.gens);
        for (const auto& pt : cfg_.points) {
            const auto& P = pt.coords;
            // lambda_0 = (0, -P2, P1), lambda_1 = (P2, 0, -P0),
            // lambda_2 = (-P1, P0, 0) over (A_0, A_1, A_2)
            std::vector<std::vector<Scalar>> lam = {
                {Scalar::zero(f), -P[2], P[1]},
                {P[2], Scalar::zero(f), -P[0]},
                {-P[1], P[0], Scalar::zero(f)}};
            // reduced basis mu0, mu1 of their span, with read-off coordinates
            SpanTester span(f, 3);
            for (const auto& l : lam) span.add(l);
            if (span.rank() != 2)
                throw InvariantViolation("evaluated minors do not span a plane");
            // rebuild an explicit rref basis
            Mat sp(f, 3, 3);
            for (long r = 0; r < 3; ++r)
                for (long c = 0; c < 3; ++c) sp.at(r, c) = lam[r][c];
            // manual rref on the 3x3
            std::vector<std::vector<Scalar>> mu;
            std::vector<long> piv;
            {
                Mat tmp = sp;
                long rr = 0;
                for (long col = 0; col < 3 && rr < 3; ++col) {
                    long pv = -1;
                    for (long i = rr; i < 3; ++i)
                        if (!tmp.at(i, col).is_zero()) {
                            pv = i;
                            break;
                        }
                    if (pv < 0) continue;
                    for (long j = 0; j < 3; ++j) std::swap(tmp.at(rr, j), tmp.at(pv, j));
                    Scalar inv = tmp.at(rr, col).inverse();
                    for (long j = 0; j < 3; ++j) tmp.at(rr, j) = tmp.at(rr, j) * inv;
                    for (long i = 0; i < 3; ++i) {
                        if (i == rr) continue;
                        Scalar fac = tmp.at(i, col);
                        if (fac.is_zero()) continue;
                        for (long j = 0; j < 3; ++j)
                            tmp.at(i, j) = tmp.at(i, j) - fac * tmp.at(rr, j);
                    }
                    piv.push_back(col);
                    ++rr;
                }
                for (long r = 0; r < (long)piv.size(); ++r) {
                    std::vector<Scalar> row(3, Scalar::zero(f));
                    for (long j = 0; j < 3; ++j) row[j] = tmp.at(r, j);
                    mu.push_back(std::move(row));
                }
            }
            // coordinates of each lambda_j in the (mu0, mu1) basis
            std::vector<std::array<Scalar, 2>> co(3, {Scalar::zero(f), Scalar::zero(f)});
            for (long j = 0; j < 3; ++j) {
                co[j][0] = lam[j][piv[0]];
                co[j][1] = lam[j][piv[1]];
            }
            // binary forms of m(lambda) by monomial DP
            std::map<std::vector<int>, std::vector<Scalar>> bf;
            bf[std::vector<int>(3, 0)] = {Scalar::one(f)};
            for (long e = 1; e <= d - 1; ++e) {
                std::map<std::vector<int>, std::vector<Scalar>> nx;
                for (const auto& mon : monomial_basis(3, e).mons) {
                    long j = 0;
                    while (mon[j] == 0) ++j;
                    std::vector<int> prev = mon;
                    prev[j] -= 1;
                    const auto& lo = bf.at(prev);
                    std::vector<Scalar> hi(e + 1, Scalar::zero(f));
                    for (long t = 0; t < e; ++t) {
                        if (lo[t].is_zero()) continue;
                        hi[t] += lo[t] * co[j][0];
                        hi[t + 1] += lo[t] * co[j][1];
                    }
                    nx[mon] = std::move(hi);
                }
                bf = std::move(nx);
            }
            // d rows: coefficient t of P_i * bf(m)
            for (long t = 0; t < d; ++t) {
                std::vector<Scalar> row(out.gens, Scalar::zero(f));
                bool nonzero = false;
                for (long mi = 0; mi < gmon; ++mi) {
                    const auto& v = bf.at(out.mmb.mons[mi]);
                    if (v[t].is_zero()) continue;
                    for (long i = 0; i <= n; ++i) {
                        if (P[i].is_zero()) continue;
                        row[i * gmon + mi] = P[i] * v[t];
                        nonzero = true;
                    }
                }
                if (nonzero) cond.append_row(row);
            }
        }
        if (prime_field) {
            std::vector<std::vector<uint64_t>> rows(
                cond.rows(), std::vector<uint64_t>(out.gens, 0));
            for (long i = 0; i < cond.rows(); ++i)
                for (long j = 0; j < out.gens; ++j)
                    rows[i][j] =
                        (uint64_t)cond.at(i, j).coeffs()[0].get_num().get_si();
            KernelModP kp = kernel_mod_p(std::move(rows), f->p);
            nullity_c = out.gens - kp.rank;
            for (const auto& v : kp.kernel) {
                std::vector<Scalar> s(out.gens, Scalar::zero(f));
                for (long g = 0; g < out.gens; ++g)
                    if (v[g]) s[g] = Scalar::from_int(f, (long)v[g]);
                ker_c.push_back(std::move(s));
            }
        } else {
            KernelResult kr = kernel_certified(cond);
            nullity_c = out.gens - kr.rank;
            ker_c = std::move(kr.kernel);
        }
    } else {
        // general case: expand the evaluated minors in the A monomials
        std::vector<BiGradedForm> minors_f;
        for (long i = 0; i <= n; ++i) minors_f.push_back(minor_form(f, i, n));
        Mat cond(f, 0, out.gens);
        std::map<std::vector<int>, long> colid;
        std::vector<std::vector<std::pair<long, Scalar>>> cols_per_gen;
        std::vector<std::vector<std::vector<std::pair<long, Scalar>>>> per_point;
        for (const auto& pt : cfg_.points) {
            const auto& P = pt.coords;
            std::vector<SparsePoly> lam;
            for (long j = 0; j <= n; ++j) lam.push_back(substitute_x(minors_f[j], P));
            std::map<std::vector<int>, SparsePoly> lv;
            lv[std::vector<int>(n + 1, 0)] =
                SparsePoly{{std::vector<int>(n * (n + 1), 0), Scalar::one(f)}};
            for (long e = 1; e <= d - 1; ++e) {
                std::map<std::vector<int>, SparsePoly> nx;
                for (const auto& mon : monomial_basis(n + 1, e).mons) {
                    long j = 0;
                    while (mon[j] == 0) ++j;
                    std::vector<int> prev = mon;
                    prev[j] -= 1;
                    nx[mon] = sparse_mul(lv.at(prev), lam[j]);
                }
                lv = std::move(nx);
            }
            std::vector<std::vector<std::pair<long, Scalar>>> gen_entries(out.gens);
            for (long mi = 0; mi < gmon; ++mi) {
                const SparsePoly& poly = lv.at(out.mmb.mons[mi]);
                for (long i = 0; i <= n; ++i) {
                    if (P[i].is_zero()) continue;
                    for (const auto& [mon, c] : poly) {
                        auto [it, fresh] = colid.try_emplace(mon, (long)colid.size());
                        gen_entries[i * gmon + mi].emplace_back(it->second, P[i] * c);
                    }
                }
            }
            per_point.push_back(std::move(gen_entries));
        }
        // one condition row per point per A monomial
        for (const auto& gen_entries : per_point) {
            std::vector<std::vector<Scalar>> rows(
                colid.size(), std::vector<Scalar>(out.gens, Scalar::zero(f)));
            std::vector<char> used(colid.size(), 0);
            for (long g = 0; g < out.gens; ++g)
                for (const auto& [cid, c] : gen_entries[g]) {
                    rows[cid][g] += c;
                    used[cid] = 1;
                }
            for (size_t r = 0; r < rows.size(); ++r)
                if (used[r]) cond.append_row(rows[r]);
        }
        KernelResult kr = kernel_certified(cond);
        nullity_c = out.gens - kr.rank;
        ker_c = std::move(kr.kernel);
    }

    // representatives of the kernel modulo the relation space
    SpanTester span(f, out.gens);
    for (const auto& v : out.ker_rel) span.add(v);
    for (auto& v : ker_c)
        if (span.add(v)) out.reps.push_back(std::move(v));
    out.dim = (long)out.reps.size();
    if (out.dim != nullity_c - (long)out.ker_rel.size())
        throw InvariantViolation("relation space is not inside the condition kernel");
    return out;
}

// analyzer cache keyed by a structural fingerprint of the configuration
std::string fingerprint(const Configuration& cfg) {
    std::ostringstream out;
    out << cfg.ambient_dim << "|" << (int)cfg.field->kind << "|" << cfg.field->m
        << "|" << cfg.field->p << "|" << cfg.field->k << "|";
    for (const auto& p : cfg.points) {
        for (const auto& c : p.coords) out << c.to_string() << ",";
        out << ";";
    }
    return out.str();
}

IggAnalyzer& analyzer_for(const Configuration& cfg) {
    static std::map<std::string, std::unique_ptr<IggAnalyzer>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto key = fingerprint(cfg);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, std::make_unique<IggAnalyzer>(cfg)).first;
    return *it->second;
}

// expand a generator-coordinate vector into an honest bigraded polynomial
BiGradedForm expand_rep(const Configuration& cfg, const MonomialBasis& mmb,
                        const std::vector<Scalar>& rep) {
    const Field& f = cfg.field;
    long n = cfg.ambient_dim;
    std::vector<BiGradedForm> minors_f;
    for (long i = 0; i <= n; ++i) minors_f.push_back(minor_form(f, i, n));
    std::map<std::vector<int>, BiGradedForm> cache;
    std::function<const BiGradedForm&(const std::vector<int>&)> mform =
        [&](const std::vector<int>& mon) -> const BiGradedForm& {
        auto it = cache.find(mon);
        if (it != cache.end()) return it->second;
        long total = 0;
        for (int e : mon) total += e;
        BiGradedForm val{n, f, {}};
        if (total == 0) {
            val.terms.emplace(std::vector<int>(n * (n + 1), 0), Scalar::one(f));
        } else {
            long j = 0;
            while (mon[j] == 0) ++j;
            std::vector<int> prev = mon;
            prev[j] -= 1;
            val = mform(prev) * minors_f[j];
        }
        return cache.emplace(mon, std::move(val)).first->second;
    };
    BiGradedForm out{n, f, {}};
    long gmon = mmb.size();
    for (long i = 0; i <= n; ++i)
        for (long mi = 0; mi < gmon; ++mi) {
            const Scalar& c = rep[i * gmon + mi];
            if (c.is_zero()) continue;
            BiGradedForm t = mform(mmb.mons[mi]).scaled(c);
            // multiply by X_i
            BiGradedForm shifted{n, f, {}};
            for (const auto& [mon, v] : t.terms) {
                std::vector<int> m = mon;
                m[i] += 1;
                shifted.terms.emplace(std::move(m), v);
            }
            out = out + shifted;
        }
    return out;
}

// dense degree-d X-forms of the epsilon images of the representatives
std::vector<std::vector<Scalar>> epsilon_images(const Configuration& cfg,
                                                const DegreeData& dd,
                                                const std::vector<std::vector<Scalar>>& rows,
                                                const Field& big) {
    long n = cfg.ambient_dim;
    long d = dd.d;
    // evaluated minors as linear X-forms over `big`
    std::vector<BiGradedForm> minors_f;
    for (long i = 0; i <= n; ++i) minors_f.push_back(minor_form(big, i, n));
    std::vector<std::vector<Scalar>> lam;  // length n+1 coefficient vectors
    for (long j = 0; j <= n; ++j) {
        std::vector<Scalar> l(n + 1, Scalar::zero(big));
        for (const auto& [mon, c] : minors_f[j].terms) {
            Scalar v = c;
            long xv = -1;
            for (long i = 0; i <= n; ++i)
                if (mon[i]) xv = i;
            for (long r = 1; r <= n - 1; ++r)
                for (long jj = 0; jj <= n; ++jj)
                    for (int e = 0; e < mon[avar(n, r, jj)]; ++e)
                        v *= rows[r - 1][jj];
            l[xv] += v;
        }
        lam.push_back(std::move(l));
    }
    // m(lambda) as dense X-forms by DP
    MonomialBasis xd = monomial_basis(n + 1, d);
    std::map<std::vector<int>, std::vector<Scalar>> lv;
    {
        MonomialBasis x0 = monomial_basis(n + 1, 0);
        lv[std::vector<int>(n + 1, 0)] = {Scalar::one(big)};
    }
    MonomialBasis xprev = monomial_basis(n + 1, 0);
    for (long e = 1; e <= d - 1; ++e) {
        MonomialBasis xe = monomial_basis(n + 1, e);
        std::map<std::vector<int>, std::vector<Scalar>> nx;
        for (const auto& mon : monomial_basis(n + 1, e).mons) {
            long j = 0;
            while (mon[j] == 0) ++j;
            std::vector<int> prev = mon;
            prev[j] -= 1;
            const auto& lo = lv.at(prev);
            std::vector<Scalar> hi(xe.size(), Scalar::zero(big));
            for (long t = 0; t < xprev.size(); ++t) {
                if (lo[t].is_zero()) continue;
                for (long v = 0; v <= n; ++v) {
                    if (lam[j][v].is_zero()) continue;
                    std::vector<int> m = xprev.mons[t];
                    m[v] += 1;
                    hi[xe.index.at(m)] += lo[t] * lam[j][v];
                }
            }
            nx[mon] = std::move(hi);
        }
        lv = std::move(nx);
        xprev = std::move(xe);
    }
    // per-generator images combined along each representative
    std::vector<std::vector<Scalar>> images;
    long gmon = dd.mmb.size();
    for (const auto& rep : dd.reps) {
        std::vector<Scalar> img(xd.size(), Scalar::zero(big));
        for (long i = 0; i <= n; ++i)
            for (long mi = 0; mi < gmon; ++mi) {
                const Scalar& c = rep[i * gmon + mi];
                if (c.is_zero()) continue;
                Scalar cb = embed_scalar(c, big);
                const auto& mf = lv.at(dd.mmb.mons[mi]);
                for (long t = 0; t < xprev.size(); ++t) {
                    if (mf[t].is_zero()) continue;
                    std::vector<int> m = xprev.mons[t];
                    m[i] += 1;
                    img[xd.index.at(m)] += cb * mf[t];
                }
            }
        images.push_back(std::move(img));
    }
    return images;
}

}  // namespace

long igg_dim(const Configuration& cfg, long d) {
    return analyzer_for(cfg).degree(d)->dim;
}

std::vector<BiGradedForm> igg_basis(const Configuration& cfg, long d) {
    auto dd = analyzer_for(cfg).degree(d);
    std::vector<BiGradedForm> out;
    for (const auto& rep : dd->reps) out.push_back(expand_rep(cfg, dd->mmb, rep));
    return out;
}

std::optional<long> alpha(const Configuration& cfg, long d_max) {
    if (d_max < 2) throw UsageError("d_max must be >= 2");
    IggAnalyzer& an = analyzer_for(cfg);
    for (long d = 1; d <= d_max; ++d)
        if (an.degree(d)->dim > 0) return d - 1;
    return std::nullopt;
}

std::map<long, long> generator_degrees(const Configuration& cfg, long d_max,
                                       const std::vector<long>& q_seeds) {
    if (d_max < 2) throw UsageError("d_max must be >= 2");
    long n = cfg.ambient_dim;
    std::vector<long> a = splitting_type(cfg, q_seeds);
    // pick a seed realizing the generic (minimal) dimension everywhere
    long stop = std::min(d_max, a.back() + 1);
    GenericCodim2 q = generic_q(cfg, q_seeds.front());
    {
        bool ok = false;
        for (long s : q_seeds) {
            GenericCodim2 cand = generic_q(cfg, s);
            ok = true;
            for (long d = 1; d <= stop && ok; ++d) {
                long expect = 0;
                for (long ai : a) expect += std::max<long>(0, d - ai);
                if (iqgg_dim(cfg, d, cand) != expect) ok = false;
            }
            if (ok) {
                q = std::move(cand);
                break;
            }
        }
        if (!ok)
            throw InvariantViolation(
                "no seed realizes the generic restriction dimensions");
    }
    const Field& f = q.field;
    std::map<long, long> out;
    std::vector<std::vector<Scalar>> prev;
    for (long d = 1; d <= stop; ++d) {
        std::vector<std::vector<Scalar>> basis = iqgg_kernel_basis(cfg, d, q);
        long mu;
        if (prev.empty()) {
            mu = (long)basis.size();
        } else {
            MonomialBasis lo = monomial_basis(n + 1, d - 1);
            MonomialBasis hi = monomial_basis(n + 1, d);
            Mat m(f, 0, hi.size());
            for (const auto& b : prev)
                for (const auto* l : {&q.l0, &q.l1}) {
                    std::vector<Scalar> prod(hi.size(), Scalar::zero(f));
                    for (long t = 0; t < lo.size(); ++t) {
                        if (b[t].is_zero()) continue;
                        for (long v = 0; v <= n; ++v) {
                            if ((*l)[v].is_zero()) continue;
                            std::vector<int> mon = lo.mons[t];
                            mon[v] += 1;
                            prod[hi.index.at(mon)] += b[t] * (*l)[v];
                        }
                    }
                    m.append_row(prod);
                }
            mu = (long)basis.size() - rank_certified(m);
        }
        if (mu < 0)
            throw InvariantViolation("generator count turned negative at d=" +
                                     std::to_string(d));
        if (mu > 0) out[d] = mu;
        prev = std::move(basis);
    }
    // beyond the largest splitting entry the restricted module is generated
    long total = 0;
    for (const auto& [d, mu] : out) total += mu;
    if (stop == a.back() + 1 && total != n)
        throw InvariantViolation("restricted module has wrong generator count");
    return out;
}

long epsilon_image_dim(const Configuration& cfg, long d, const GenericCodim2& q) {
    auto dd = analyzer_for(cfg).degree(d);
    if (dd->dim == 0) return 0;
    auto rows = q_span_rows(q, cfg.ambient_dim);
    auto images = epsilon_images(cfg, *dd, rows, q.field);
    Mat m(q.field, 0, (long)images[0].size());
    for (const auto& img : images) m.append_row(img);
    return rank_exact(std::move(m));
}

bool commute_check(const Configuration& cfg, long d, const GenericCodim2& q) {
    auto dd = analyzer_for(cfg).degree(d);
    long target = iqgg_dim(cfg, d, q);
    if (dd->dim == 0) return true;
    auto rows = q_span_rows(q, cfg.ambient_dim);
    auto images = epsilon_images(cfg, *dd, rows, q.field);
    auto target_basis = iqgg_kernel_basis(cfg, d, q);
    SpanTester span(q.field, (long)images[0].size());
    for (const auto& b : target_basis) span.add(b);
    long img_rank = 0;
    {
        SpanTester ispan(q.field, (long)images[0].size());
        for (const auto& img : images)
            if (ispan.add(img)) ++img_rank;
    }
    if (img_rank > target) return false;
    for (const auto& img : images)
        if (!span.contains(img)) return false;
    return true;
}

long c2_combinatorial(const Configuration& cfg) {
    if (cfg.ambient_dim != 2) throw UsageError("defined for the plane only");
    if (cfg.size() < 2) throw UsageError("need at least two points");
    long total = 0;
    for (const auto& L : spanned_lines(cfg)) total += (long)L.indices.size() - 1;
    return total - cfg.size() + 1;
}

bool semistable(const Configuration& cfg) {
    if (cfg.ambient_dim != 2) throw UsageError("defined for the plane only");
    long d = (cfg.size() - 2) / 2 + 1;
    return igg_dim(cfg, d) == 0;
}

bool freeness(const Configuration& cfg) { return freeness(cfg, {42, 43, 44}); }

bool freeness(const Configuration& cfg, const std::vector<long>& q_seeds) {
    long n = cfg.ambient_dim;
    std::vector<long> a = splitting_type(cfg, q_seeds);
    long dmax = a.back() + 1;
    IggAnalyzer& an = analyzer_for(cfg);
    an.ensure(1, dmax);
    std::vector<GenericCodim2> qs;
    for (long s : q_seeds) qs.push_back(generic_q(cfg, s));
    bool free_eps = true;
    for (long d = 1; d <= dmax && free_eps; ++d) {
        long h = -1;
        std::vector<long> hv;
        for (const auto& q : qs) hv.push_back(iqgg_dim(cfg, d, q));
        h = *std::min_element(hv.begin(), hv.end());
        bool surj = (h == 0);
        for (size_t s = 0; s < qs.size() && !surj; ++s) {
            if (hv[s] != h) continue;
            if (epsilon_image_dim(cfg, d, qs[s]) == h) surj = true;
        }
        if (!surj) free_eps = false;
    }
    if (n == 2) {
        bool free_c2 = (c2_combinatorial(cfg) == a[0] * a[1]);
        if (free_c2 != free_eps)
            throw InvariantViolation(
                "surjectivity and Chern freeness criteria disagree");
    }
    return free_eps;
}

}  // namespace arrlab
