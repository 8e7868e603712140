#include "arrlab/classify.hpp"

#include <algorithm>

#include "arrlab/linalg.hpp"
#include "arrlab/threads.hpp"

namespace arrlab {

namespace {

long h_min_over_seeds(const Configuration& cfg, long d,
                      const std::vector<long>& q_seeds) {
    if (q_seeds.empty()) throw UsageError("at least one seed required");
    long best = -1;
    for (long s : q_seeds) {
        long h = iqgg_dim(cfg, d, generic_q(cfg, s));
        if (best < 0 || h < best) best = h;
    }
    return best;
}

}  // namespace

std::set<long> unexpected_degrees(const Configuration& cfg, long d_max,
                                  const std::vector<long>& q_seeds) {
    if (d_max < 2) throw UsageError("d_max must be >= 2");
    long n = cfg.ambient_dim;
    std::set<long> out;
    for (long d = 2; d <= d_max; ++d) {
        long naive = std::max<long>(0, n * d + 1 - hilbert(cfg, d));
        if (h_min_over_seeds(cfg, d, q_seeds) > naive) out.insert(d);
    }
    return out;
}

std::set<long> very_unexpected_degrees(const Configuration& cfg, long d_max,
                                       const std::vector<long>& q_seeds) {
    if (d_max < 2) throw UsageError("d_max must be >= 2");
    long n = cfg.ambient_dim;
    std::set<long> out;
    for (long d = 2; d <= d_max; ++d) {
        long c = exc(cfg, d).value;
        if (n * d + 1 - h_min_over_seeds(cfg, d, q_seeds) < c) out.insert(d);
    }
    return out;
}

bool balanced(const Configuration& cfg) {
    long n = cfg.ambient_dim;
    long nz = cfg.size();
    std::vector<long> all(nz);
    for (long i = 0; i < nz; ++i) all[i] = i;
    if (span_dim(cfg, all) != n)
        throw UsageError("balancedness requires a spanning configuration");
    if (n < 2) return true;
    for (const auto& fl : enumerate_flats(cfg, n - 1)) {
        // (|Z cap H| - 1) / dim H <= (|Z| - 1) / n, cross-multiplied
        if (((long)fl.indices.size() - 1) * n > (nz - 1) * fl.dim) return false;
    }
    return true;
}

long lp_algebraic(const Configuration& cfg, const ProjectivePoint& p) {
    if (cfg.ambient_dim != 2) throw UsageError("defined for the plane only");
    if (cfg.size() < 2) throw UsageError("need at least two points");
    const Field& f = cfg.field;
    if ((long)p.coords.size() != 3) throw UsageError("point must have 3 coordinates");
    // basis g0, g1 of the linear forms vanishing at p
    Mat pm(f, 1, 3);
    for (long j = 0; j < 3; ++j) pm.at(0, j) = p.coords[j];
    KernelResult kr = kernel_and_rank(std::move(pm));
    if (kr.kernel.size() != 2) throw UsageError("point coordinates are degenerate");
    std::vector<Scalar> g0v, g1v;
    for (long i = 0; i < cfg.size(); ++i) {
        Scalar a = Scalar::zero(f), b = Scalar::zero(f);
        for (long j = 0; j < 3; ++j) {
            a += kr.kernel[0][j] * cfg.points[i].coords[j];
            b += kr.kernel[1][j] * cfg.points[i].coords[j];
        }
        g0v.push_back(std::move(a));
        g1v.push_back(std::move(b));
    }
    for (long d = 1; d <= cfg.size() + 1; ++d) {
        // [I(p)^d]_d is spanned by g0^a g1^(d-a); those vanishing on Z form
        // a space of dimension (d+1) - rank of the evaluation matrix
        Mat ev(f, d + 1, cfg.size());
        for (long a = 0; a <= d; ++a)
            for (long i = 0; i < cfg.size(); ++i) {
                Scalar t = Scalar::one(f);
                for (long e = 0; e < a; ++e) t *= g0v[i];
                for (long e = 0; e < d - a; ++e) t *= g1v[i];
                ev.at(a, i) = t;
            }
        if (rank_exact(std::move(ev)) < d + 1) return d;
    }
    throw InvariantViolation("line-count degree exceeded the point count");
}

bool char_hypothesis(long p, long d) {
    if (d < 1) throw UsageError("degree must be positive");
    if (p == 0) return true;
    if (p < 2 || !is_prime(p)) throw UsageError("characteristic must be 0 or prime");
    long q = d + 1;
    while (q % p == 0) q /= p;
    return q <= p;
}

BoundsReport bounds_report(const Configuration& cfg,
                           const std::vector<long>& q_seeds) {
    if (cfg.ambient_dim != 2) throw UsageError("defined for the plane only");
    BoundsReport rep;
    std::set<long> unexp = unexpected_degrees(cfg, cfg.size(), q_seeds);
    if (unexp.empty()) return rep;  // not applicable
    rep.applicable = true;
    long d = *unexp.begin();
    rep.degree = d;

    // irreducibility proxy: the degree-d element has nonzero image under
    // every point substitution A := P (no dual form divides it)
    {
        auto basis = igg_basis(cfg, d);
        rep.irreducible_proxy = !basis.empty();
        if (!basis.empty()) {
            const BiGradedForm& F = basis.front();
            for (const auto& P : cfg.points) {
                auto img = epsilon(F, {P.coords}, cfg.field);
                bool zero = true;
                for (const auto& c : img)
                    if (!c.is_zero()) {
                        zero = false;
                        break;
                    }
                if (zero) {
                    rep.irreducible_proxy = false;
                    break;
                }
            }
        }
    }

    auto push = [&](std::string name, long value, long bound, bool cond) {
        BoundCheck c;
        c.name = std::move(name);
        c.value = value;
        c.bound = bound;
        c.holds = value <= bound;
        c.sharp = value == bound;
        c.conditional = cond;
        rep.checks.push_back(std::move(c));
    };

    push("point count <= 3d-3", cfg.size(), 3 * d - 3, false);
    GeneralPositionResult gp = max_general_position_subset(cfg);
    push("general-position subset <= d+1", gp.size, d + 1, false);
    if (d % 2 == 0 && rep.irreducible_proxy)
        push("general-position subset <= d (even degree)", gp.size, d, true);
    push("spanned lines <= d^2-d+1", (long)spanned_lines(cfg).size(),
         d * d - d + 1, rep.irreducible_proxy);
    long max_lp = 0;
    for (long i = 0; i < cfg.size(); ++i) max_lp = std::max(max_lp, l_p_count(cfg, i));
    push("max line count through a point <= d", max_lp, d, rep.irreducible_proxy);
    return rep;
}

AddPointResult add_point_splitting(const Configuration& cfg,
                                   const ProjectivePoint& p,
                                   const std::vector<long>& q_seeds) {
    if (cfg.ambient_dim != 2) throw UsageError("defined for the plane only");
    ProjectivePoint np = normalize_point(p.coords);
    for (const auto& q : cfg.points)
        if (q == np) throw UsageError("point already belongs to the configuration");
    AddPointResult out;
    std::vector<long> a = splitting_type(cfg, q_seeds);
    out.lp = l_p_count(cfg, np);
    if (out.lp > a[0]) {
        out.predicted = true;
        out.prediction = {a[0] + 1, a[1]};
        std::sort(out.prediction.begin(), out.prediction.end());
    }
    std::vector<ProjectivePoint> pts = cfg.points;
    pts.push_back(np);
    Configuration bigger =
        make_configuration(2, cfg.field, std::move(pts), cfg.name + "+P");
    out.computed = splitting_type(bigger, q_seeds);
    out.agrees = !out.predicted || out.prediction == out.computed;
    return out;
}

AnalysisReport analyze(const Configuration& cfg, long d_max,
                       const std::vector<long>& q_seeds) {
    long n = cfg.ambient_dim;
    long nz = cfg.size();
    if (d_max <= 0) d_max = nz;
    if (d_max < 2) d_max = 2;
    AnalysisReport rep;
    rep.name = cfg.name;
    rep.ambient_dim = n;
    rep.size = nz;
    rep.seeds = q_seeds;
    rep.d_max = d_max;

    rep.splitting = splitting_type(cfg, q_seeds);
    const std::vector<long>& a = rep.splitting;

    // per-degree rows, independent degrees in parallel
    rep.rows.assign(d_max, DegreeRow{});
    std::vector<long> degs(d_max);
    for (long d = 1; d <= d_max; ++d) degs[d - 1] = d;
    parallel_over(degs, [&](long d) {
        DegreeRow& row = rep.rows[d - 1];
        row.d = d;
        row.h_z = hilbert(cfg, d);
        row.h = h_min_over_seeds(cfg, d, q_seeds);
        row.exc = exc(cfg, d).value;
        if (d >= 2) {
            row.unexpected = row.h > std::max<long>(0, n * d + 1 - row.h_z);
            row.very_unexpected = n * d + 1 - row.h < row.exc;
        }
    });

    for (const DegreeRow& row : rep.rows) {
        long d = row.d;
        if (d < 2) continue;
        if (row.very_unexpected && !row.unexpected)
            throw InvariantViolation(
                "very-unexpected degree without the basic excess at d=" +
                std::to_string(d));
        if (row.very_unexpected && !(a.front() < d && d < a.back()))
            throw InvariantViolation(
                "very-unexpected degree outside the splitting range at d=" +
                std::to_string(d));
        // h(d) >= nd+1-c always, strict exactly on the very-unexpected set,
        // and the equivalent section-count form of the same inequality
        long c = row.exc;
        long lhs = row.h, rhs = n * d + 1 - c;
        long sec = 0;
        for (long ai : a) sec += std::max<long>(0, ai - d);
        if (lhs < rhs || (lhs > rhs) != row.very_unexpected)
            throw InvariantViolation("excess-count identity failed at d=" +
                                     std::to_string(d));
        if ((lhs >= rhs) != (sec >= nz - c) || (lhs > rhs) != (sec > nz - c))
            throw InvariantViolation("section-count identity failed at d=" +
                                     std::to_string(d));
    }
    // a degree adjacent to a very-unexpected one is itself very unexpected
    // or equals one of the splitting entries
    for (long d = 2; d <= d_max; ++d) {
        const DegreeRow& row = rep.rows[d - 1];
        if (row.very_unexpected) continue;
        bool neighbor = (d > 2 && rep.rows[d - 2].very_unexpected) ||
                        (d < d_max && rep.rows[d].very_unexpected);
        if (neighbor && std::find(a.begin(), a.end(), d) == a.end())
            throw InvariantViolation(
                "boundary degree is not a splitting entry at d=" + std::to_string(d));
    }

    rep.alpha = alpha(cfg, std::max<long>(2, d_max));
    rep.free = freeness(cfg, q_seeds);
    if (n == 2) {
        rep.semistable = semistable(cfg);
        rep.bounds = bounds_report(cfg, q_seeds);
    }
    return rep;
}

}  // namespace arrlab
