#include "arrlab/idealdims.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>
#include <random>

#include "arrlab/linalg.hpp"

namespace arrlab {

Scalar embed_scalar(const Scalar& s, const Field& big) {
    const Field& small = s.field();
    if (small == big || *small == *big) return s;
    if (small->kind == FieldKind::Rationals &&
        (big->kind == FieldKind::Rationals || big->kind == FieldKind::Cyclotomic))
        return Scalar::from_mpq(big, s.rational_value());
    if (small->kind == FieldKind::Rationals && big->kind == FieldKind::Finite)
        return Scalar(big, {s.rational_value()});
    if (small->kind == FieldKind::Cyclotomic && big->kind == FieldKind::Cyclotomic) {
        long m = small->m, M = big->m;
        if (M % m != 0) throw UsageError("no embedding between cyclotomic orders");
        long step = M / m;
        Scalar acc = Scalar::zero(big);
        const auto& c = s.coeffs();
        for (size_t i = 0; i < c.size(); ++i) {
            if (c[i] == 0) continue;
            acc += Scalar::from_mpq(big, c[i]) * Scalar::zeta_power(big, step * (long)i);
        }
        return acc;
    }
    if (small->kind == FieldKind::Finite && big->kind == FieldKind::Finite &&
        small->p == big->p && small->k == 1) {
        return Scalar(big, {s.coeffs()[0]});
    }
    throw UsageError("unsupported field embedding");
}

long binomial(long n, long k) {
    if (k < 0 || n < 0 || k > n) return 0;
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), (unsigned long)n, (unsigned long)k);
    if (!r.fits_slong_p()) throw UsageError("binomial overflow");
    return r.get_si();
}

long hilbert(const Configuration& cfg, long d) {
    if (d < 0) throw UsageError("degree must be nonnegative");
    const Field& f = cfg.field;
    MonomialBasis mb = monomial_basis(cfg.ambient_dim + 1, d);
    Mat ev(f, cfg.size(), mb.size());
    for (long i = 0; i < cfg.size(); ++i) {
        const auto& P = cfg.points[i].coords;
        for (long j = 0; j < mb.size(); ++j) {
            Scalar t = Scalar::one(f);
            for (long v = 0; v < mb.nvars; ++v)
                for (int e = 0; e < mb.mons[j][v]; ++e) t *= P[v];
            ev.at(i, j) = t;
        }
    }
    return rank_exact(std::move(ev));
}

long regularity(const Configuration& cfg) {
    if (cfg.size() < 1) throw UsageError("configuration is empty");
    for (long r = 0;; ++r)
        if (hilbert(cfg, r) == cfg.size()) return 1 + r;
}

namespace {

Field sampling_field(const Configuration& cfg) {
    const Field& f = cfg.field;
    if (f->kind != FieldKind::Finite) return f;
    // need more than 10^6 elements for a credible genericity draw
    double sz = 1;
    for (long i = 0; i < f->k; ++i) sz *= (double)f->p;
    if (sz > 1e6) return f;
    if (f->k != 1)
        throw EnvironmentError(
            "genericity draws over a small proper extension field would need an "
            "embedding into a larger extension; restrict to prime base fields or "
            "fields above 10^6 elements");
    long K = 1;
    double acc = (double)f->p;
    while (acc <= 1e6) {
        acc *= (double)f->p;
        ++K;
    }
    return make_finite(f->p, K);
}

Scalar draw_scalar(const Field& f, std::mt19937_64& rng) {
    if (f->kind == FieldKind::Finite) {
        std::vector<mpq_class> c(f->degree());
        std::uniform_int_distribution<long> dist(0, f->p - 1);
        for (auto& x : c) x = dist(rng);
        return Scalar(f, std::move(c));
    }
    std::uniform_int_distribution<long> dist(-1000000, 1000000);
    return Scalar::from_int(f, dist(rng));
}

}  // namespace

GenericCodim2 generic_q(const Configuration& cfg, long seed) {
    long n = cfg.ambient_dim;
    Field sf = sampling_field(cfg);
    std::mt19937_64 rng((uint64_t)seed);
    std::vector<std::vector<Scalar>> pts;
    for (const auto& p : cfg.points) {
        std::vector<Scalar> q;
        for (const auto& c : p.coords) q.push_back(embed_scalar(c, sf));
        pts.push_back(std::move(q));
    }
    std::string last_fail = "no draw attempted";
    for (int attempt = 0; attempt < 200; ++attempt) {
        std::vector<Scalar> l0(n + 1, Scalar::zero(sf)), l1(n + 1, Scalar::zero(sf));
        for (long i = 0; i <= n; ++i) l0[i] = draw_scalar(sf, rng);
        for (long i = 0; i <= n; ++i) l1[i] = draw_scalar(sf, rng);
        // independence
        {
            SpanTester t(sf, n + 1);
            t.add(l0);
            if (!t.add(l1)) {
                last_fail = "dependent linear forms";
                continue;
            }
        }
        auto eval = [&](const std::vector<Scalar>& l, const std::vector<Scalar>& p) {
            Scalar acc = Scalar::zero(sf);
            for (long i = 0; i <= n; ++i) acc += l[i] * p[i];
            return acc;
        };
        bool ok = true;
        for (const auto& p : pts)
            if (eval(l0, p).is_zero() && eval(l1, p).is_zero()) {
                ok = false;
                last_fail = "subspace meets a configuration point";
                break;
            }
        if (ok)
            for (size_t a = 0; a < pts.size() && ok; ++a)
                for (size_t b = a + 1; b < pts.size(); ++b) {
                    Scalar det = eval(l0, pts[a]) * eval(l1, pts[b]) -
                                 eval(l0, pts[b]) * eval(l1, pts[a]);
                    if (det.is_zero()) {
                        ok = false;
                        last_fail = "subspace meets a line spanned by two points";
                        break;
                    }
                }
        if (ok) return GenericCodim2{std::move(l0), std::move(l1), seed, sf};
    }
    throw EnvironmentError("genericity draw exhausted: " + last_fail);
}

namespace {

// generators L0^a L1^(d-1-a) x_j of [I(Q)^(d-1)]_d as dense vectors, plus
// their evaluations at the configuration points
struct IqggData {
    Mat gens;  // #gens x #monomials
    Mat evals; // #gens x |Z|
};

IqggData iqgg_build(const Configuration& cfg, long d, const GenericCodim2& q) {
    if (d < 1) throw UsageError("degree must be positive");
    const Field& f = q.field;
    long n = cfg.ambient_dim;
    MonomialBasis mb = monomial_basis(n + 1, d);
    std::vector<std::vector<Scalar>> pts;
    for (const auto& p : cfg.points) {
        std::vector<Scalar> e;
        for (const auto& c : p.coords) e.push_back(embed_scalar(c, f));
        pts.push_back(std::move(e));
    }
    // powers of the two forms
    std::vector<SparsePoly> pow0(d), pow1(d);
    SparsePoly one{{std::vector<int>(n + 1, 0), Scalar::one(f)}};
    pow0[0] = one;
    pow1[0] = one;
    SparsePoly f0 = linear_form(q.l0), f1 = linear_form(q.l1);
    for (long a = 1; a < d; ++a) {
        pow0[a] = sparse_mul(pow0[a - 1], f0);
        pow1[a] = sparse_mul(pow1[a - 1], f1);
    }
    IqggData out{Mat(f, 0, mb.size()), Mat(f, 0, (long)pts.size())};
    for (long a = 0; a <= d - 1; ++a) {
        SparsePoly base = sparse_mul(pow0[a], pow1[d - 1 - a]);
        for (long j = 0; j <= n; ++j) {
            SparsePoly g;
            for (const auto& [mon, c] : base) {
                std::vector<int> m = mon;
                m[j] += 1;
                g.emplace(std::move(m), c);
            }
            out.gens.append_row(densify(g, mb, f));
            std::vector<Scalar> ev;
            for (const auto& P : pts) {
                Scalar acc = Scalar::zero(f);
                for (const auto& [mon, c] : g) {
                    Scalar t = c;
                    for (long v = 0; v <= n; ++v)
                        for (int e = 0; e < mon[v]; ++e) t *= P[v];
                    acc += t;
                }
                ev.push_back(std::move(acc));
            }
            out.evals.append_row(ev);
        }
    }
    return out;
}

// After a linear change of coordinates sending l0, l1 to variables y0, y1
// (valid because the two forms are independent), the generator span is the
// degree-d part of (y0, y1)^(d-1): all monomials whose (y0, y1)-degree is at
// least d-1. There are d*(n-1) of them with y-degree exactly d-1 (a choice of
// y0^a y1^(d-1-a) times one of the n-1 remaining variables) and d+1 of pure
// y-degree d, so the dimension is n*d + 1.
long iqgg_generator_rank(long n, long d) {
    return n * d + 1;
}

// evaluation matrix: row (a, j) at point P is l0(P)^a l1(P)^(d-1-a) P_j
Mat iqgg_eval_matrix(const Configuration& cfg, long d, const GenericCodim2& q) {
    const Field& f = q.field;
    long n = cfg.ambient_dim;
    long nz = cfg.size();
    std::vector<std::vector<Scalar>> pts;
    std::vector<Scalar> u, v;
    for (const auto& p : cfg.points) {
        std::vector<Scalar> e;
        for (const auto& c : p.coords) e.push_back(embed_scalar(c, f));
        Scalar u0 = Scalar::zero(f), v0 = Scalar::zero(f);
        for (long j = 0; j <= n; ++j) {
            u0 += q.l0[j] * e[j];
            v0 += q.l1[j] * e[j];
        }
        pts.push_back(std::move(e));
        u.push_back(std::move(u0));
        v.push_back(std::move(v0));
    }
    // powers of the form values per point
    std::vector<std::vector<Scalar>> up(nz), vp(nz);
    for (long i = 0; i < nz; ++i) {
        up[i].assign(d, Scalar::one(f));
        vp[i].assign(d, Scalar::one(f));
        for (long a = 1; a < d; ++a) {
            up[i][a] = up[i][a - 1] * u[i];
            vp[i][a] = vp[i][a - 1] * v[i];
        }
    }
    Mat ev(f, (n + 1) * d, nz);
    for (long a = 0; a <= d - 1; ++a)
        for (long j = 0; j <= n; ++j)
            for (long i = 0; i < nz; ++i)
                ev.at(a * (n + 1) + j, i) = up[i][a] * vp[i][d - 1 - a] * pts[i][j];
    return ev;
}

}  // namespace

long iqgg_dim(const Configuration& cfg, long d, const GenericCodim2& q) {
    if (d < 1) throw UsageError("degree must be positive");
    static std::map<std::string, long> cache;
    static std::mutex mu;
    std::string key = configuration_key(cfg) + "#" + std::to_string(q.seed) +
                      "#" + std::to_string(d);
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    long rg = iqgg_generator_rank(cfg.ambient_dim, d);
    long re = rank_certified(iqgg_eval_matrix(cfg, d, q));
    long dim = rg - re;
    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(std::move(key), dim);
    return dim;
}

std::vector<std::vector<Scalar>> iqgg_kernel_basis(const Configuration& cfg,
                                                   long d, const GenericCodim2& q) {
    IqggData data = iqgg_build(cfg, d, q);
    const Field& f = q.field;
    // combinations of generators vanishing at every point = left kernel of
    // the evaluation matrix, i.e. right kernel of its transpose
    Mat evt(f, data.evals.cols(), data.evals.rows());
    for (long i = 0; i < data.evals.rows(); ++i)
        for (long j = 0; j < data.evals.cols(); ++j)
            evt.at(j, i) = data.evals.at(i, j);
    KernelResult ker = kernel_and_rank(std::move(evt));
    // push kernel combinations through the generator matrix, keep a basis
    std::vector<std::vector<Scalar>> out;
    SpanTester span(f, data.gens.cols());
    for (const auto& v : ker.kernel) {
        std::vector<Scalar> form(data.gens.cols(), Scalar::zero(f));
        for (long g = 0; g < data.gens.rows(); ++g) {
            if (v[g].is_zero()) continue;
            for (long j = 0; j < data.gens.cols(); ++j) {
                if (data.gens.at(g, j).is_zero()) continue;
                form[j] += v[g] * data.gens.at(g, j);
            }
        }
        if (span.add(form)) out.push_back(std::move(form));
    }
    return out;
}

std::vector<long> splitting_type(const Configuration& cfg,
                                 const std::vector<long>& q_seeds) {
    long n = cfg.ambient_dim;
    long nz = cfg.size();
    std::vector<long> all(nz);
    for (long i = 0; i < nz; ++i) all[i] = i;
    if (span_dim(cfg, all) != n)
        throw UsageError("splitting type requires a configuration spanning the space");
    if (q_seeds.empty()) throw UsageError("at least one seed required");
    std::vector<GenericCodim2> qs;
    for (long s : q_seeds) qs.push_back(generic_q(cfg, s));
    std::vector<long> h{0};  // h[0] = 0
    auto h_at = [&](long d) {
        while ((long)h.size() <= d) {
            long dd = (long)h.size();
            long best = -1;
            for (const auto& q : qs) {
                long v = iqgg_dim(cfg, dd, q);
                if (best < 0 || v < best) best = v;
            }
            h.push_back(best);
        }
        return h[d];
    };
    std::vector<long> a;
    for (long t = 1; t <= nz + 1 && (long)a.size() < n; ++t) {
        long c = (h_at(t + 1) - h_at(t)) - (h_at(t) - h_at(t - 1));
        for (long r = 0; r < c; ++r) a.push_back(t);
    }
    if ((long)a.size() != n)
        throw InvariantViolation("splitting recovery did not find n entries");
    long sum = 0;
    for (long x : a) sum += x;
    if (sum != nz - 1)
        throw InvariantViolation(
            "splitting entries do not sum to |Z| - 1 (non-generic subspace; re-seed)");
    return a;
}

long expected_conditions(long n, long d, long m, long q_dim) {
    if (q_dim < 0 || q_dim > n - 1 || m < 1 || d < 0)
        throw UsageError("expected_conditions parameter out of range");
    long codim = n - q_dim;
    long total = 0;
    for (long i = 0; i < m; ++i)
        total += binomial(q_dim + d - i, q_dim) * binomial(codim - 1 + i, codim - 1);
    return total;
}

}  // namespace arrlab
