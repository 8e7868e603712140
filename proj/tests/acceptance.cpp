// Acceptance suite: eight criteria, each printing a single pass/fail line.
// Usage: acceptance [N]  (run criterion N, or all when omitted).

#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "arrlab/classify.hpp"
#include "arrlab/configlib.hpp"
#include "arrlab/duality.hpp"

using namespace arrlab;

namespace {

struct Criterion {
    bool ok = true;
    std::ostringstream why;

    void expect(bool cond, const std::string& what) {
        if (!cond) {
            if (!ok) why << "; ";
            why << what;
            ok = false;
        }
    }
};

template <typename T>
std::string show(const T& xs) {
    std::ostringstream s;
    s << "{";
    bool first = true;
    for (const auto& x : xs) {
        if (!first) s << ",";
        s << x;
        first = false;
    }
    s << "}";
    return s.str();
}

BiGradedForm xform(const Field& f, long n, long i) {
    BiGradedForm x;
    x.n = n;
    x.field = f;
    std::vector<int> mono(n * (n + 1), 0);
    mono[xvar(n, i)] = 1;
    x.terms[mono] = Scalar::one(f);
    return x;
}

BiGradedForm power(const BiGradedForm& b, long e) {
    BiGradedForm p = b;
    for (long i = 1; i < e; ++i) p = p * b;
    return p;
}

// ---------------------------------------------------------------------------
// 1. the 18-point fifth-root-of-unity configuration
void criterion1(Criterion& c) {
    Configuration z = build_ceva_extended(5, 2);
    auto a = splitting_type(z, {42, 43, 44});
    c.expect(a == std::vector<long>{6, 11}, "splitting " + show(a));
    std::set<long> want{7, 8, 9, 10};
    auto unexp = unexpected_degrees(z, 12);
    auto very = very_unexpected_degrees(z, 12);
    c.expect(unexp == want, "unexpected " + show(unexp));
    c.expect(very == want, "very " + show(very));
    c.expect(freeness(z), "not free");
    long lines = (long)spanned_lines(z).size();
    c.expect(lines == 43, "lines " + std::to_string(lines));
    long d = 7;
    c.expect(z.size() == 3 * d - 3, "point-count bound not sharp");
    c.expect(lines == d * d - d + 1, "line-count bound not sharp");
}

// ---------------------------------------------------------------------------
// 2. ten coplanar (resp. co-conic) points plus two general points in 3-space
Configuration plane_pair(bool conic) {
    Field f = make_rationals();
    std::vector<ProjectivePoint> pts;
    if (conic) {
        for (long t = 1; t <= 10; ++t)
            pts.push_back(normalize_point(
                {Scalar::from_int(f, t * t), Scalar::from_int(f, t),
                 Scalar::one(f), Scalar::zero(f)}));
    } else {
        for (const auto& p : build_generic(10, 2, 101).points) {
            std::vector<Scalar> cds = p.coords;
            cds.push_back(Scalar::zero(f));
            pts.push_back(normalize_point(std::move(cds)));
        }
    }
    for (const auto& p : build_generic(2, 3, 777).points) pts.push_back(p);
    return make_configuration(3, f, std::move(pts),
                              conic ? "conic10+2" : "plane10+2");
}

void criterion2(Criterion& c) {
    Configuration z = plane_pair(false), zp = plane_pair(true);
    for (const Configuration* w : {&z, &zp}) {
        auto a = splitting_type(*w, {42, 43, 44});
        c.expect(a == std::vector<long>{2, 4, 5},
                 w->name + " splitting " + show(a));
        auto very = very_unexpected_degrees(*w, 12);
        c.expect(very.empty(), w->name + " very " + show(very));
    }
    c.expect(hilbert(z, 3) == 12, "h(3) of the coplanar set");
    c.expect(hilbert(zp, 3) == 9, "h(3) of the co-conic set");
    c.expect(unexpected_degrees(z, 3).count(3) == 1, "coplanar not unexpected at 3");
    c.expect(unexpected_degrees(zp, 3).count(3) == 0, "co-conic unexpected at 3");
}

// ---------------------------------------------------------------------------
// 3. all 13 rational points of the projective plane over the 3-element field
void criterion3(Criterion& c) {
    Configuration z = build_projective_space(3, 2);
    auto a = splitting_type(z, {42, 43, 44});
    c.expect(a == std::vector<long>{3, 9}, "splitting " + show(a));
    auto very = very_unexpected_degrees(z, 10);
    c.expect(very == std::set<long>{4, 5, 6, 7, 8}, "very " + show(very));
    const Field& f = z.field;
    for (long q : {3L, 9L}) {
        BiGradedForm sum;
        for (long j = 0; j <= 2; ++j) {
            BiGradedForm t = power(minor_form(f, j, 2), q) * xform(f, 2, j);
            sum = (j == 0) ? t : sum + t;
        }
        c.expect(igg_member(z, sum),
                 "membership fails at degree " + std::to_string(q + 1));
    }
}

// ---------------------------------------------------------------------------
// 4. the coordinate simplex plus (1:1:1)
void criterion4(Criterion& c) {
    Field f = make_rationals();
    std::vector<ProjectivePoint> pts;
    for (long i = 0; i < 3; ++i) {
        std::vector<Scalar> v(3, Scalar::zero(f));
        v[i] = Scalar::one(f);
        pts.push_back(ProjectivePoint{std::move(v)});
    }
    pts.push_back(ProjectivePoint{std::vector<Scalar>(3, Scalar::one(f))});
    Configuration z = make_configuration(2, f, std::move(pts), "simplex+1");

    auto gens = generator_degrees(z, 3);
    c.expect(gens == std::map<long, long>{{2, 1}, {3, 1}},
             "generator degrees differ");
    GenericCodim2 q = generic_q(z, 42);
    c.expect(iqgg_dim(z, 2, q) == 1, "degree-2 piece is not one-dimensional");
    auto a = splitting_type(z, {42, 43, 44});
    c.expect(a == std::vector<long>{1, 2}, "splitting " + show(a));

    // the degree-2 element is (A0-A1)A2 X0X1 - (A0-A2)A1 X0X2 + (A1-A2)A0 X1X2,
    // compared after substituting the concrete subspace row for A
    auto rows = q_span_rows(q, 2);
    const auto& A = rows[0];
    Scalar c01 = (A[0] - A[1]) * A[2];
    Scalar c02 = (A[0] - A[2]) * A[1];
    Scalar c12 = (A[1] - A[2]) * A[0];
    MonomialBasis mb = monomial_basis(3, 2);
    std::vector<Scalar> f1(mb.size(), Scalar::zero(q.field));
    f1[mb.index.at({1, 1, 0})] = c01;
    f1[mb.index.at({1, 0, 1})] = -c02;
    f1[mb.index.at({0, 1, 1})] = c12;
    auto basis = iqgg_kernel_basis(z, 2, q);
    bool match = false;
    if (basis.size() == 1) {
        // proportionality: find a nonzero coordinate and compare ratios
        Scalar ratio = Scalar::zero(q.field);
        bool have = false, good = true;
        for (long i = 0; i < mb.size(); ++i) {
            if (basis[0][i].is_zero() != f1[i].is_zero()) good = false;
            if (basis[0][i].is_zero()) continue;
            Scalar r = f1[i] / basis[0][i];
            if (!have) {
                ratio = r;
                have = true;
            } else if (r != ratio) {
                good = false;
            }
        }
        match = have && good;
    }
    c.expect(match, "degree-2 element does not match the displayed form");
}

// ---------------------------------------------------------------------------
// 5. direct-sum laws
void criterion5(Criterion& c) {
    Configuration c2 = build_ceva_extended(2, 2);
    Configuration s = direct_sum(c2, c2);
    auto very = very_unexpected_degrees(s, 6);
    c.expect(very == std::set<long>{4}, "very of the double sum " + show(very));
    for (long d = 2; d <= 6; ++d)
        c.expect(exc(s, d).value == 2 * exc(c2, d).value,
                 "cover optimum not additive at d=" + std::to_string(d));
    // the 33-point sum with the 7th-root family is beyond direct computation;
    // its verdict {4} u {9..14} follows from the additivity law applied to
    // the planar verdicts of each summand
    auto v2 = very_unexpected_degrees(c2, 9);
    Configuration c7 = build_ceva_extended(7, 2);
    auto v7 = very_unexpected_degrees(c7, 16);
    std::set<long> both = v2;
    both.insert(v7.begin(), v7.end());
    c.expect(v2 == std::set<long>{4}, "planar verdict of the 2-family " + show(v2));
    c.expect(v7 == std::set<long>{9, 10, 11, 12, 13, 14},
             "planar verdict of the 7-family " + show(v7));
    c.expect(both == std::set<long>{4, 9, 10, 11, 12, 13, 14},
             "combined verdict " + show(both));
}

// ---------------------------------------------------------------------------
// 6. oracle identities on 50 random planar configurations
Configuration random_planar(long size, long seed) {
    std::mt19937_64 rng((uint64_t)seed * 1000003 + 17);
    std::uniform_int_distribution<long> coord(-7, 7);
    Field q = make_rationals();
    std::vector<ProjectivePoint> pts;
    auto fresh = [&](std::vector<Scalar> v) {
        bool zero = true;
        for (const auto& x : v)
            if (!x.is_zero()) zero = false;
        if (zero) return;
        ProjectivePoint p = normalize_point(std::move(v));
        for (const auto& e : pts)
            if (e == p) return;
        pts.push_back(std::move(p));
    };
    // a third of the configurations get a forced collinear run
    long collinear = (seed % 3 == 0) ? std::min<long>(size - 1, 3 + seed % 4) : 0;
    while ((long)pts.size() < collinear) {
        long t = coord(rng);
        fresh({Scalar::from_int(q, t), Scalar::from_int(q, 3 * t - 2),
               Scalar::one(q)});
    }
    while ((long)pts.size() < size)
        fresh({Scalar::from_int(q, coord(rng)), Scalar::from_int(q, coord(rng)),
               Scalar::from_int(q, coord(rng))});
    Configuration z = make_configuration(2, q, std::move(pts),
                                         "random-" + std::to_string(seed));
    // the dual-bundle invariants need a spanning configuration; redraw if the
    // sample happened to be collinear
    std::vector<long> all(z.size());
    for (long i = 0; i < z.size(); ++i) all[i] = i;
    if (span_dim(z, all) < 2) return random_planar(size, seed + 1000);
    return z;
}

void criterion6(Criterion& c) {
    for (long trial = 0; trial < 50 && c.ok; ++trial) {
        long size = 3 + trial % 7;  // 3..9
        Configuration z = random_planar(size, trial);
        std::string tag = " [" + z.name + "]";
        // (a) three independent computations of the cover optimum
        for (long d = 2; d <= 5; ++d) {
            long e = exc(z, d).value;
            c.expect(e == md_rank(z, d), "matroid rank disagrees" + tag);
            c.expect(e == exc_partition_bruteforce(z, d),
                     "partition brute force disagrees" + tag);
        }
        // (b) algebraic vs combinatorial line counts through each point
        for (long i = 0; i < z.size(); ++i) {
            std::vector<ProjectivePoint> rest = z.points;
            ProjectivePoint p = rest[i];
            rest.erase(rest.begin() + i);
            if ((long)rest.size() < 2) continue;
            Configuration w = make_configuration(2, z.field, rest);
            c.expect(lp_algebraic(w, p) == l_p_count(w, p),
                     "line count disagrees" + tag);
        }
        // (c) splitting entries sum to |Z| - 1
        auto a = splitting_type(z, {42, 43, 44});
        c.expect(a[0] + a[1] == z.size() - 1, "splitting sum" + tag);
        // (d) per-degree inequality with strictness exactly on the very set
        auto very = very_unexpected_degrees(z, size + 2);
        for (long d = 2; d <= size + 2; ++d) {
            long h = -1;
            for (long s : {42L, 43L, 44L}) {
                long v = iqgg_dim(z, d, generic_q(z, s));
                if (h < 0 || v < h) h = v;
            }
            long bound = 2 * d + 1 - exc(z, d).value;
            c.expect(h >= bound, "inequality fails" + tag);
            c.expect((h > bound) == (very.count(d) == 1), "strictness" + tag);
        }
        // (e) the smaller splitting entry from the module's initial degree
        auto al = alpha(z, z.size());
        long cap = (z.size() - 1) / 2;
        long want = al ? std::min(*al, cap) : cap;
        c.expect(a[0] == want, "initial-degree identity" + tag);
        // (f) the two freeness criteria agree
        bool surj = freeness(z, {42, 43, 44});
        bool comb = c2_combinatorial(z) == a[0] * a[1];
        c.expect(surj == comb, "freeness criteria disagree" + tag);
    }
}

// ---------------------------------------------------------------------------
// 7. regularity
void criterion7(Criterion& c) {
    Field q = make_rationals();
    for (long d = 1; d <= 4; ++d) {
        std::vector<ProjectivePoint> pts;
        for (long t = 0; t < 2 * d + 3; ++t)
            pts.push_back(normalize_point({Scalar::from_int(q, t * t),
                                           Scalar::from_int(q, t),
                                           Scalar::one(q)}));
        Configuration z = make_configuration(2, q, std::move(pts));
        c.expect(regularity(z) == d + 2,
                 "conic regularity at d=" + std::to_string(d));
    }
    // every planar configuration with an unexpected degree d (from the other
    // suites) has regularity <= d
    std::vector<Configuration> planar;
    planar.push_back(build_ceva_extended(2, 2));
    planar.push_back(build_ceva_extended(5, 2));
    planar.push_back(build_ceva_extended(7, 2));
    for (long trial = 0; trial < 50; ++trial)
        planar.push_back(random_planar(3 + trial % 7, trial));
    for (const Configuration& z : planar) {
        // scan upward and stop at the first unexpected degree
        long first = 0;
        for (long d = 2; d <= z.size() && first == 0; ++d) {
            long h = -1;
            for (long s : {42L, 43L, 44L}) {
                long v = iqgg_dim(z, d, generic_q(z, s));
                if (h < 0 || v < h) h = v;
            }
            if (h > std::max<long>(0, 2 * d + 1 - hilbert(z, d))) first = d;
        }
        if (first == 0) continue;
        c.expect(regularity(z) <= first,
                 "regularity exceeds the unexpected degree for " + z.name);
    }
}

// ---------------------------------------------------------------------------
// 8. semistability of generic points
void criterion8(Criterion& c) {
    for (long k : {5L, 7L, 9L}) {
        Configuration z = build_generic(k, 2, 500 + k);
        c.expect(semistable(z), std::to_string(k) + " points not semistable");
        auto a = splitting_type(z, {42, 43, 44});
        c.expect(a[1] - a[0] <= 1,
                 "splitting gap " + std::to_string(a[1] - a[0]) + " for " +
                     std::to_string(k) + " points");
    }
    Configuration g5 = build_generic(5, 2, 505);
    c.expect(igg_dim(g5, 3) == 0, "degree-3 piece of 5 generic points nonzero");
}

}  // namespace

int main(int argc, char** argv) {
    using Fn = void (*)(Criterion&);
    Fn fns[8] = {criterion1, criterion2, criterion3, criterion4,
                 criterion5, criterion6, criterion7, criterion8};
    int lo = 1, hi = 8;
    if (argc > 1) {
        lo = hi = std::atoi(argv[1]);
        if (lo < 1 || hi > 8) {
            std::cerr << "criterion number must be 1..8\n";
            return 2;
        }
    }
    bool all_ok = true;
    for (int i = lo; i <= hi; ++i) {
        Criterion c;
        try {
            fns[i - 1](c);
        } catch (const std::exception& e) {
            c.expect(false, std::string("exception: ") + e.what());
        }
        std::cout << "criterion " << i << ": " << (c.ok ? "PASS" : "FAIL");
        if (!c.ok) {
            std::cout << " (" << c.why.str() << ")";
            all_ok = false;
        }
        std::cout << std::endl;
    }
    return all_ok ? 0 : 1;
}
