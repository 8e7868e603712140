#include "arrlab/geometry.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <set>

namespace arrlab {

ProjectivePoint normalize_point(std::vector<Scalar> coords) {
    long lead = -1;
    for (size_t i = 0; i < coords.size(); ++i)
        if (!coords[i].is_zero()) {
            lead = (long)i;
            break;
        }
    if (lead < 0) throw UsageError("projective point cannot be zero");
    if (!coords[lead].is_one()) {
        Scalar inv = coords[lead].inverse();
        for (auto& c : coords) c = c * inv;
    }
    return ProjectivePoint{std::move(coords)};
}

Configuration make_configuration(long n, Field field,
                                 std::vector<ProjectivePoint> points,
                                 std::string name) {
    if (n < 1) throw UsageError("ambient dimension must be >= 1");
    for (const auto& p : points)
        if ((long)p.coords.size() != n + 1)
            throw UsageError("point coordinate count does not match ambient dimension");
    for (size_t i = 0; i < points.size(); ++i)
        for (size_t j = i + 1; j < points.size(); ++j)
            if (points[i] == points[j])
                throw UsageError("configuration points must be pairwise distinct");
    return Configuration{n, std::move(field), std::move(points), std::move(name)};
}

SpanTester::SpanTester(const Field& f, long ncoords) : f_(f), n_(ncoords) {}

std::vector<Scalar> SpanTester::reduce(std::vector<Scalar> v) const {
    for (size_t b = 0; b < rows_.size(); ++b) {
        const Scalar& f = v[pivots_[b]];
        if (f.is_zero()) continue;
        Scalar c = f;  // rows are pivot-normalized
        for (long j = 0; j < n_; ++j) {
            if (rows_[b][j].is_zero()) continue;
            v[j] = v[j] - c * rows_[b][j];
        }
    }
    return v;
}

bool SpanTester::add(const std::vector<Scalar>& v) {
    std::vector<Scalar> r = reduce(v);
    long piv = -1;
    for (long j = 0; j < n_; ++j)
        if (!r[j].is_zero()) {
            piv = j;
            break;
        }
    if (piv < 0) return false;
    Scalar inv = r[piv].inverse();
    for (long j = 0; j < n_; ++j)
        if (!r[j].is_zero()) r[j] = r[j] * inv;
    rows_.push_back(std::move(r));
    pivots_.push_back(piv);
    return true;
}

bool SpanTester::contains(const std::vector<Scalar>& v) const {
    std::vector<Scalar> r = reduce(v);
    for (const auto& x : r)
        if (!x.is_zero()) return false;
    return true;
}

namespace {

void check_subset(const Configuration& cfg, const std::vector<long>& subset) {
    if (subset.empty()) throw UsageError("subset must be nonempty");
    for (long i : subset)
        if (i < 0 || i >= cfg.size()) throw UsageError("point index out of range");
}

SpanTester span_of(const Configuration& cfg, const std::vector<long>& subset) {
    SpanTester t(cfg.field, cfg.ambient_dim + 1);
    for (long i : subset) t.add(cfg.points[i].coords);
    return t;
}

}  // namespace

long span_dim(const Configuration& cfg, const std::vector<long>& subset) {
    check_subset(cfg, subset);
    return span_of(cfg, subset).rank() - 1;
}

Flat closure(const Configuration& cfg, const std::vector<long>& subset) {
    check_subset(cfg, subset);
    SpanTester t = span_of(cfg, subset);
    Flat fl;
    fl.dim = t.rank() - 1;
    for (long i = 0; i < cfg.size(); ++i)
        if (t.contains(cfg.points[i].coords)) fl.indices.push_back(i);
    return fl;
}

std::vector<Flat> enumerate_flats(const Configuration& cfg, long max_dim) {
    if (max_dim < 1 || max_dim > cfg.ambient_dim - 1)
        throw UsageError("max_dim must lie in [1, n-1]");
    std::set<std::vector<long>> seen;
    std::vector<Flat> out;
    long nz = cfg.size();
    // closures of independent subsets of size s give the dim s-1 flats
    std::vector<long> subset;
    auto visit = [&](const std::vector<long>& sub) {
        Flat fl = closure(cfg, sub);
        if (fl.dim < 1 || fl.dim > max_dim) return;
        if ((long)fl.indices.size() < 2) return;
        if (seen.insert(fl.indices).second) out.push_back(std::move(fl));
    };
    // enumerate subsets of size 2..max_dim+1
    std::vector<long> idx;
    std::function<void(long, long)> rec = [&](long start, long want) {
        if (want == 0) {
            visit(idx);
            return;
        }
        for (long i = start; i + want <= nz; ++i) {
            idx.push_back(i);
            rec(i + 1, want - 1);
            idx.pop_back();
        }
    };
    for (long s = 2; s <= max_dim + 1; ++s) rec(0, s);
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

long count_join_lines(const Configuration& cfg, const std::vector<Scalar>& p,
                      long skip_index) {
    if (cfg.size() < 2) throw UsageError("need at least two points");
    std::vector<SpanTester> lines;
    for (long i = 0; i < cfg.size(); ++i) {
        if (i == skip_index) continue;
        bool found = false;
        for (const auto& L : lines)
            if (L.contains(cfg.points[i].coords)) {
                found = true;
                break;
            }
        if (found) continue;
        SpanTester t(cfg.field, cfg.ambient_dim + 1);
        t.add(p);
        if (!t.add(cfg.points[i].coords)) continue;  // point equals p
        lines.push_back(std::move(t));
    }
    return (long)lines.size();
}

}  // namespace

long l_p_count(const Configuration& cfg, long point_index) {
    if (point_index < 0 || point_index >= cfg.size())
        throw UsageError("point index out of range");
    return count_join_lines(cfg, cfg.points[point_index].coords, point_index);
}

long l_p_count(const Configuration& cfg, const ProjectivePoint& external) {
    return count_join_lines(cfg, external.coords, -1);
}

std::vector<Flat> spanned_lines(const Configuration& cfg) {
    if (cfg.size() < 2) throw UsageError("need at least two points");
    std::set<std::vector<long>> seen;
    std::vector<Flat> out;
    for (long i = 0; i < cfg.size(); ++i)
        for (long j = i + 1; j < cfg.size(); ++j) {
            Flat fl = closure(cfg, {i, j});
            if (fl.dim != 1) continue;
            if (seen.insert(fl.indices).second) out.push_back(std::move(fl));
        }
    std::sort(out.begin(), out.end());
    return out;
}

GeneralPositionResult max_general_position_subset(const Configuration& cfg) {
    long nz = cfg.size();
    long n = cfg.ambient_dim;
    if (nz == 0) return {0, true};
    // degenerate-tuple table: which (n+1)-subsets are rank deficient is
    // queried incrementally during the search
    auto dependent_with = [&](const std::vector<long>& chosen, long q) {
        // does some n-subset of chosen complete q to a degenerate (n+1)-tuple
        long c = (long)chosen.size();
        if (c < n) return false;
        std::vector<long> pick(n);
        std::function<bool(long, long)> rec = [&](long start, long want) -> bool {
            if (want == 0) {
                std::vector<long> sub(pick.begin(), pick.end());
                sub.push_back(q);
                return span_dim(cfg, sub) < n;
            }
            for (long i = start; i + want <= c; ++i) {
                pick[n - want] = chosen[i];
                if (rec(i + 1, want - 1)) return true;
            }
            return false;
        };
        return rec(0, n);
    };

    // order points by descending incidence degree so conflicts appear early
    std::vector<long> order(nz);
    for (long i = 0; i < nz; ++i) order[i] = i;
    if (n >= 2 && nz <= 40) {
        std::vector<long> deg(nz, 0);
        for (const auto& L : spanned_lines(cfg))
            if ((long)L.indices.size() >= 3)
                for (long i : L.indices) deg[i] += (long)L.indices.size();
        std::stable_sort(order.begin(), order.end(),
                         [&](long a, long b) { return deg[a] > deg[b]; });
    }

    bool exact = nz <= 25;
    long best = 0;
    std::vector<long> chosen;
    std::function<void(long)> rec = [&](long pos) {
        if ((long)chosen.size() > best) best = (long)chosen.size();
        if (pos >= nz) return;
        if ((long)chosen.size() + (nz - pos) <= best) return;
        long q = order[pos];
        if (!dependent_with(chosen, q)) {
            chosen.push_back(q);
            rec(pos + 1);
            chosen.pop_back();
        }
        if ((long)chosen.size() + (nz - pos - 1) > best) rec(pos + 1);
    };
    if (exact) {
        rec(0);
    } else {
        // greedy lower bound only
        for (long pos = 0; pos < nz; ++pos)
            if (!dependent_with(chosen, order[pos])) chosen.push_back(order[pos]);
        best = (long)chosen.size();
    }
    return {best, exact};
}

std::string configuration_key(const Configuration& cfg) {
    std::ostringstream out;
    out << cfg.ambient_dim << "|" << (int)cfg.field->kind << "|" << cfg.field->m
        << "|" << cfg.field->p << "|" << cfg.field->k << "|";
    for (const auto& p : cfg.points) {
        for (const auto& c : p.coords) out << c.to_string() << ",";
        out << ";";
    }
    return out.str();
}

}  // namespace arrlab
