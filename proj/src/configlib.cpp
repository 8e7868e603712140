#include "arrlab/configlib.hpp"

#include "arrlab/idealdims.hpp"

#include <fstream>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>

#include <json.hpp>

namespace arrlab {

using nlohmann::json;

Configuration build_fermat(long m, long n) {
    if (m < 2) throw UsageError("root-of-unity order must be >= 2");
    if (n < 2) throw UsageError("ambient dimension must be >= 2");
    Field f = make_cyclotomic(m);
    std::vector<ProjectivePoint> pts;
    for (long i = 0; i <= n; ++i)
        for (long j = i + 1; j <= n; ++j)
            for (long k = 0; k < m; ++k) {
                std::vector<Scalar> c(n + 1, Scalar::zero(f));
                c[i] = Scalar::from_int(f, -1);
                c[j] = Scalar::zeta_power(f, k);
                pts.push_back(normalize_point(std::move(c)));
            }
    return make_configuration(n, f, std::move(pts), "fermat-" + std::to_string(m));
}

Configuration build_ceva_extended(long m, long n) {
    Configuration fm = build_fermat(m, n);
    const Field& f = fm.field;
    std::vector<ProjectivePoint> pts;
    for (long i = 0; i <= n; ++i) {
        std::vector<Scalar> c(n + 1, Scalar::zero(f));
        c[i] = Scalar::one(f);
        pts.push_back(ProjectivePoint{std::move(c)});
    }
    pts.insert(pts.end(), fm.points.begin(), fm.points.end());
    return make_configuration(n, f, std::move(pts), "ceva-" + std::to_string(m));
}

Configuration build_projective_space(long q, long n) {
    if (q < 2) throw UsageError("field size must be >= 2");
    if (n < 1) throw UsageError("ambient dimension must be >= 1");
    long p = 0, e = 0;
    for (long cand = 2; cand * cand <= q; ++cand)
        if (q % cand == 0) {
            p = cand;
            break;
        }
    if (p == 0) {
        p = q;  // q itself prime
        e = 1;
    } else {
        long t = q;
        e = 0;
        while (t % p == 0) {
            t /= p;
            ++e;
        }
        if (t != 1 || !is_prime(p))
            throw UsageError("field size must be a prime power");
    }
    Field f = make_finite(p, e);
    // field elements in a fixed order: base-p digit vectors of 0..q-1
    std::vector<Scalar> elems;
    for (long v = 0; v < q; ++v) {
        std::vector<mpq_class> digits(e);
        long t = v;
        for (long i = 0; i < e; ++i) {
            digits[i] = t % p;
            t /= p;
        }
        elems.emplace_back(f, std::move(digits));
    }
    std::vector<ProjectivePoint> pts;
    // leading coordinate 1, earlier coordinates 0, later ones arbitrary
    for (long lead = 0; lead <= n; ++lead) {
        long free = n - lead;
        std::vector<long> idx(free, 0);
        for (;;) {
            std::vector<Scalar> c(n + 1, Scalar::zero(f));
            c[lead] = Scalar::one(f);
            for (long i = 0; i < free; ++i) c[lead + 1 + i] = elems[idx[i]];
            pts.push_back(ProjectivePoint{std::move(c)});
            long i = free - 1;
            while (i >= 0 && idx[i] == q - 1) idx[i--] = 0;
            if (i < 0) break;
            ++idx[i];
        }
    }
    return make_configuration(n, f, std::move(pts),
                              "projective-space-q" + std::to_string(q) + "-n" +
                                  std::to_string(n));
}

namespace {

Field common_field(const Field& a, const Field& b) {
    if (*a == *b) return a;
    auto cyc_order = [](const Field& f) -> long {
        if (f->kind == FieldKind::Rationals) return 1;
        if (f->kind == FieldKind::Cyclotomic) return f->m;
        return 0;
    };
    long ma = cyc_order(a), mb = cyc_order(b);
    if (ma > 0 && mb > 0) {
        long l = std::lcm(ma, mb);
        return l == 1 ? make_rationals() : make_cyclotomic(l);
    }
    throw UsageError("configurations live over incompatible fields");
}

}  // namespace

Configuration direct_sum(const Configuration& a, const Configuration& b) {
    Field f = common_field(a.field, b.field);
    long n = a.ambient_dim + b.ambient_dim + 1;
    std::vector<ProjectivePoint> pts;
    for (const auto& p : a.points) {
        std::vector<Scalar> c(n + 1, Scalar::zero(f));
        for (long j = 0; j <= a.ambient_dim; ++j) c[j] = embed_scalar(p.coords[j], f);
        pts.push_back(ProjectivePoint{std::move(c)});
    }
    for (const auto& p : b.points) {
        std::vector<Scalar> c(n + 1, Scalar::zero(f));
        for (long j = 0; j <= b.ambient_dim; ++j)
            c[a.ambient_dim + 1 + j] = embed_scalar(p.coords[j], f);
        pts.push_back(ProjectivePoint{std::move(c)});
    }
    return make_configuration(n, f, std::move(pts), a.name + "(+)" + b.name);
}

Configuration build_generic(long k, long n, long seed) {
    if (k < 1) throw UsageError("need at least one point");
    if (n < 1) throw UsageError("ambient dimension must be >= 1");
    Field f = make_rationals();
    std::mt19937_64 rng((uint64_t)seed);
    std::uniform_int_distribution<long> dist(-1000, 1000);
    std::vector<ProjectivePoint> pts;
    // accept a draw only if it completes every independent n-subset of the
    // existing points to a full-rank tuple
    std::vector<long> pick;
    auto general_with = [&](const ProjectivePoint& cand) {
        long have = (long)pts.size();
        long need = std::min<long>(n, have);
        pick.assign(need, 0);
        std::function<bool(long, long)> all_ok = [&](long start, long want) -> bool {
            if (want == 0) {
                SpanTester t(f, n + 1);
                for (long i : pick)
                    if (!t.add(pts[i].coords)) return true;  // dependent subset
                return t.add(cand.coords);
            }
            for (long i = start; i + want <= have; ++i) {
                pick[need - want] = i;
                if (!all_ok(i + 1, want - 1)) return false;
            }
            return true;
        };
        return all_ok(0, need);
    };
    int guard = 0;
    while ((long)pts.size() < k) {
        std::vector<Scalar> c(n + 1, Scalar::zero(f));
        for (long j = 0; j <= n; ++j) c[j] = Scalar::from_int(f, dist(rng));
        bool zero = true;
        for (const auto& x : c)
            if (!x.is_zero()) zero = false;
        if (zero) continue;
        ProjectivePoint cand = normalize_point(std::move(c));
        bool dup = false;
        for (const auto& p : pts)
            if (p == cand) dup = true;
        if (!dup && general_with(cand)) {
            pts.push_back(std::move(cand));
            guard = 0;
        } else if (++guard > 1000) {
            throw EnvironmentError("could not reach general position");
        }
    }
    return make_configuration(n, f, std::move(pts),
                              "generic-" + std::to_string(k) + "-n" +
                                  std::to_string(n) + "-s" + std::to_string(seed));
}

namespace {

Field field_from_json(const json& j) {
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
        throw UsageError("field descriptor needs a string \"kind\"");
    std::string kind = j["kind"].get<std::string>();
    if (kind == "rationals") return make_rationals();
    if (kind == "cyclotomic") {
        if (!j.contains("m") || !j["m"].is_number_integer())
            throw UsageError("cyclotomic field descriptor needs integer \"m\"");
        return make_cyclotomic(j["m"].get<long>());
    }
    if (kind == "finite") {
        if (!j.contains("p") || !j["p"].is_number_integer())
            throw UsageError("finite field descriptor needs integer \"p\"");
        long k = j.value("k", 1);
        return make_finite(j["p"].get<long>(), k);
    }
    throw UsageError("unknown field kind: " + kind);
}

json field_to_json(const Field& f) {
    json j;
    switch (f->kind) {
        case FieldKind::Rationals:
            j["kind"] = "rationals";
            break;
        case FieldKind::Cyclotomic:
            j["kind"] = "cyclotomic";
            j["m"] = f->m;
            break;
        case FieldKind::Finite:
            j["kind"] = "finite";
            j["p"] = f->p;
            j["k"] = f->k;
            break;
    }
    return j;
}

}  // namespace

Configuration parse_configuration(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw UsageError(std::string("configuration JSON: ") + e.what());
    }
    if (!j.is_object()) throw UsageError("configuration must be a JSON object");
    for (const char* key : {"field", "ambient_dim", "points"})
        if (!j.contains(key))
            throw UsageError(std::string("configuration is missing \"") + key + "\"");
    Field f = field_from_json(j["field"]);
    if (!j["ambient_dim"].is_number_integer())
        throw UsageError("ambient_dim must be an integer");
    long n = j["ambient_dim"].get<long>();
    if (!j["points"].is_array()) throw UsageError("points must be an array");
    std::vector<ProjectivePoint> pts;
    long row = 0;
    for (const auto& pj : j["points"]) {
        ++row;
        if (!pj.is_array() || (long)pj.size() != n + 1)
            throw UsageError("point " + std::to_string(row) + " must be an array of " +
                             std::to_string(n + 1) + " scalar literals");
        std::vector<Scalar> c;
        long col = 0;
        for (const auto& sj : pj) {
            ++col;
            if (!sj.is_string())
                throw UsageError("point " + std::to_string(row) + ", coordinate " +
                                 std::to_string(col) + ": expected a string literal");
            try {
                c.push_back(parse_scalar(f, sj.get<std::string>()));
            } catch (const UsageError& e) {
                throw UsageError("point " + std::to_string(row) + ", coordinate " +
                                 std::to_string(col) + ": " + e.what());
            }
        }
        pts.push_back(ProjectivePoint{std::move(c)});
    }
    std::string name = j.value("name", std::string{});
    return make_configuration(n, f, std::move(pts), std::move(name));
}

std::string serialize_configuration(const Configuration& cfg) {
    json j;
    j["field"] = field_to_json(cfg.field);
    j["ambient_dim"] = cfg.ambient_dim;
    json pts = json::array();
    for (const auto& p : cfg.points) {
        json row = json::array();
        for (const auto& c : p.coords) row.push_back(c.to_string());
        pts.push_back(std::move(row));
    }
    j["points"] = std::move(pts);
    if (!cfg.name.empty()) j["name"] = cfg.name;
    return j.dump(2) + "\n";
}

Configuration load_configuration(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open configuration file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_configuration(buf.str());
}

void save_configuration(const Configuration& cfg, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw UsageError("cannot write configuration file: " + path);
    out << serialize_configuration(cfg);
}

}  // namespace arrlab
