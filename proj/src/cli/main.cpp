// Command-line frontend: builds named configurations and runs the analysis
// pipeline, emitting right-aligned tables or schema-stable JSON.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "arrlab/classify.hpp"
#include "arrlab/conditions.hpp"
#include "arrlab/configlib.hpp"
#include "arrlab/duality.hpp"
#include "arrlab/geometry.hpp"
#include "arrlab/idealdims.hpp"

using nlohmann::ordered_json;
using namespace arrlab;

namespace {

struct CommonOpts {
    std::string path;
    long ceva = 0, fermat = 0, projective = 0, generic = 0;
    long dim = 2;
    long gen_seed = 42;
    long dmax = 0;
    long seed = 42;
    long samples = 3;
    std::string format = "table";
    std::string out;
};

void add_input_flags(CLI::App* cmd, CommonOpts& o, bool need_input) {
    auto* p = cmd->add_option("input", o.path, "configuration JSON file");
    auto* g = cmd->add_option_group("builder", "built-in configuration families");
    g->add_option("--ceva", o.ceva, "root-of-unity order m of the extended family");
    g->add_option("--fermat", o.fermat, "root-of-unity order m");
    g->add_option("--projective", o.projective, "prime power q (all rational points)");
    g->add_option("--generic", o.generic, "number of random points");
    cmd->add_option("--dim", o.dim, "ambient projective dimension")
        ->default_val(2);
    cmd->add_option("--gen-seed", o.gen_seed, "seed for --generic draws")
        ->default_val(42);
    if (need_input) {
        (void)p;  // validated after parsing so the error carries exit code 2
    }
}

void add_analysis_flags(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--dmax", o.dmax, "maximum degree (default: point count)");
    cmd->add_option("--seed", o.seed, "base seed for the generic subspaces")
        ->default_val(42);
    cmd->add_option("--samples", o.samples, "number of consecutive seeds")
        ->default_val(3)
        ->check(CLI::PositiveNumber);
    cmd->add_option("--format", o.format, "output format")
        ->default_val("table")
        ->check(CLI::IsMember({"json", "table"}));
    cmd->add_option("--out", o.out, "write output to a file instead of stdout");
}

Configuration resolve_input(const CommonOpts& o) {
    int builders = (o.ceva > 0) + (o.fermat > 0) + (o.projective > 0) +
                   (o.generic > 0) + (int)!o.path.empty();
    if (builders != 1)
        throw UsageError(
            "give exactly one input: a configuration file or one builder flag");
    if (o.ceva > 0) return build_ceva_extended(o.ceva, o.dim);
    if (o.fermat > 0) return build_fermat(o.fermat, o.dim);
    if (o.projective > 0) return build_projective_space(o.projective, o.dim);
    if (o.generic > 0) return build_generic(o.generic, o.dim, o.gen_seed);
    return load_configuration(o.path);
}

std::vector<long> seed_list(const CommonOpts& o) {
    std::vector<long> s;
    for (long i = 0; i < o.samples; ++i) s.push_back(o.seed + i);
    return s;
}

long effective_dmax(const CommonOpts& o, const Configuration& cfg) {
    long d = o.dmax > 0 ? o.dmax : cfg.size();
    return std::max<long>(2, d);
}

void emit(const CommonOpts& o, const std::string& text) {
    if (o.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(o.out);
    if (!f) throw UsageError("cannot write output file: " + o.out);
    f << text;
}

std::string right_table(const std::vector<std::string>& head,
                        const std::vector<std::vector<std::string>>& rows) {
    std::vector<size_t> w(head.size());
    for (size_t j = 0; j < head.size(); ++j) w[j] = head[j].size();
    for (const auto& r : rows)
        for (size_t j = 0; j < r.size(); ++j) w[j] = std::max(w[j], r[j].size());
    std::ostringstream out;
    auto line = [&](const std::vector<std::string>& r) {
        for (size_t j = 0; j < r.size(); ++j) {
            if (j) out << " | ";
            out << std::string(w[j] - r[j].size(), ' ') << r[j];
        }
        out << "\n";
    };
    line(head);
    size_t total = 0;
    for (size_t j = 0; j < head.size(); ++j) total += w[j] + (j ? 3 : 0);
    out << std::string(total, '-') << "\n";
    for (const auto& r : rows) line(r);
    return out.str();
}

ordered_json bounds_json(const BoundsReport& b) {
    ordered_json j;
    j["applicable"] = b.applicable;
    if (!b.applicable) return j;
    j["degree"] = b.degree;
    j["irreducible_proxy"] = b.irreducible_proxy;
    ordered_json checks = ordered_json::array();
    for (const auto& c : b.checks) {
        ordered_json cj;
        cj["name"] = c.name;
        cj["value"] = c.value;
        cj["bound"] = c.bound;
        cj["holds"] = c.holds;
        cj["sharp"] = c.sharp;
        cj["conditional"] = c.conditional;
        checks.push_back(std::move(cj));
    }
    j["checks"] = std::move(checks);
    return j;
}

ordered_json report_json(const AnalysisReport& rep) {
    ordered_json j;
    j["name"] = rep.name;
    j["ambient_dim"] = rep.ambient_dim;
    j["size"] = rep.size;
    j["seeds"] = rep.seeds;
    j["d_max"] = rep.d_max;
    ordered_json rows = ordered_json::array();
    std::vector<long> unexp, very;
    for (const auto& r : rep.rows) {
        ordered_json rj;
        rj["d"] = r.d;
        rj["h_Z"] = r.h_z;
        rj["h"] = r.h;
        rj["exc"] = r.exc;
        rj["unexpected"] = r.unexpected;
        rj["very_unexpected"] = r.very_unexpected;
        rows.push_back(std::move(rj));
        if (r.unexpected) unexp.push_back(r.d);
        if (r.very_unexpected) very.push_back(r.d);
    }
    j["degrees"] = std::move(rows);
    j["splitting_type"] = rep.splitting;
    j["unexpected_degrees"] = unexp;
    j["very_unexpected_degrees"] = very;
    if (rep.alpha)
        j["alpha"] = *rep.alpha;
    else
        j["alpha"] = nullptr;
    j["free"] = rep.free;
    if (rep.semistable) j["semistable"] = *rep.semistable;
    if (rep.bounds) j["bounds"] = bounds_json(*rep.bounds);
    return j;
}

std::string report_table(const AnalysisReport& rep) {
    std::ostringstream out;
    out << "configuration: " << (rep.name.empty() ? "(unnamed)" : rep.name)
        << "  (" << rep.size << " points in P^" << rep.ambient_dim << ")\n";
    out << "seeds:";
    for (long s : rep.seeds) out << " " << s;
    out << "\n\n";
    std::vector<std::vector<std::string>> rows;
    for (const auto& r : rep.rows)
        rows.push_back({std::to_string(r.d), std::to_string(r.h_z),
                        std::to_string(r.h), std::to_string(r.exc),
                        r.unexpected ? "yes" : "no",
                        r.very_unexpected ? "yes" : "no"});
    out << right_table({"d", "h_Z", "h", "Ex.C", "unexp", "very-unexp"}, rows);
    out << "\nsplitting type:";
    for (long a : rep.splitting) out << " " << a;
    out << "\nalpha: ";
    if (rep.alpha)
        out << *rep.alpha;
    else
        out << "> d_max";
    out << "\nfree: " << (rep.free ? "yes" : "no") << "\n";
    if (rep.semistable)
        out << "semistable: " << (*rep.semistable ? "yes" : "no") << "\n";
    if (rep.bounds && rep.bounds->applicable) {
        out << "bounds at d=" << rep.bounds->degree
            << " (irreducible proxy: " << (rep.bounds->irreducible_proxy ? "yes" : "no")
            << "):\n";
        for (const auto& c : rep.bounds->checks)
            out << "  " << c.name << ": " << c.value << " <= " << c.bound << "  "
                << (c.holds ? (c.sharp ? "sharp" : "holds") : "FAILS")
                << (c.conditional ? " (conditional)" : "") << "\n";
    }
    return out.str();
}

int dispatch(const CommonOpts& o, const Configuration& cfg,
             const std::vector<long>& seeds, bool json_fmt, CLI::App* c_build,
             CLI::App* c_analyze, CLI::App* c_exc, CLI::App* c_split,
             CLI::App* c_classify, CLI::App* c_free, CLI::App* c_bounds);

int run(int argc, char** argv) {
    CLI::App app{"exact analysis of point configurations in projective space"};
    app.require_subcommand(1);

    CommonOpts o;

    auto* c_build = app.add_subcommand("build", "emit a configuration file");
    add_input_flags(c_build, o, false);
    c_build->add_option("--out", o.out, "output path (default: stdout)");

    auto* c_analyze = app.add_subcommand("analyze", "full per-degree report");
    auto* c_exc = app.add_subcommand("exc", "cover-optimum table with witnesses");
    auto* c_split = app.add_subcommand("splitting", "splitting type of the dual bundle");
    auto* c_classify =
        app.add_subcommand("classify", "unexpected / very unexpected degrees");
    auto* c_free = app.add_subcommand("free", "freeness of the dual arrangement");
    auto* c_bounds =
        app.add_subcommand("bounds", "combinatorial bounds at the minimal degree");
    for (CLI::App* c : {c_analyze, c_exc, c_split, c_classify, c_free, c_bounds}) {
        add_input_flags(c, o, true);
        add_analysis_flags(c, o);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    Configuration cfg = resolve_input(o);
    std::vector<long> seeds = seed_list(o);
    bool json_fmt = o.format == "json";

    try {
        return dispatch(o, cfg, seeds, json_fmt, c_build, c_analyze, c_exc, c_split,
                        c_classify, c_free, c_bounds);
    } catch (const InvariantViolation& e) {
        std::cerr << "invariant violation: " << e.what() << " (seeds:";
        for (long s : seeds) std::cerr << " " << s;
        std::cerr << ")\n";
        return 1;
    }
}

int dispatch(const CommonOpts& o, const Configuration& cfg,
             const std::vector<long>& seeds, bool json_fmt, CLI::App* c_build,
             CLI::App* c_analyze, CLI::App* c_exc, CLI::App* c_split,
             CLI::App* c_classify, CLI::App* c_free, CLI::App* c_bounds) {
    if (c_build->parsed()) {
        emit(o, serialize_configuration(cfg));
        return 0;
    }
    if (c_analyze->parsed()) {
        AnalysisReport rep = analyze(cfg, o.dmax, seeds);
        emit(o, json_fmt ? report_json(rep).dump(2) + "\n" : report_table(rep));
        return 0;
    }
    if (c_exc->parsed()) {
        long dmax = effective_dmax(o, cfg);
        if (json_fmt) {
            ordered_json j;
            j["name"] = cfg.name;
            j["seeds"] = seeds;
            ordered_json rows = ordered_json::array();
            for (long d = 1; d <= dmax; ++d) {
                ExcResult r = exc(cfg, d);
                ordered_json rj;
                rj["d"] = d;
                rj["exc"] = r.value;
                ordered_json blocks = ordered_json::array();
                for (const auto& b : r.witness) {
                    ordered_json bj;
                    bj["indices"] = b.indices;
                    bj["dim"] = b.dim;
                    blocks.push_back(std::move(bj));
                }
                rj["witness"] = std::move(blocks);
                rows.push_back(std::move(rj));
            }
            j["degrees"] = std::move(rows);
            emit(o, j.dump(2) + "\n");
        } else {
            std::vector<std::vector<std::string>> rows;
            for (long d = 1; d <= dmax; ++d) {
                ExcResult r = exc(cfg, d);
                std::ostringstream w;
                for (const auto& b : r.witness) {
                    w << " {";
                    for (size_t i = 0; i < b.indices.size(); ++i)
                        w << (i ? "," : "") << b.indices[i];
                    w << "}dim" << b.dim;
                }
                rows.push_back({std::to_string(d), std::to_string(r.value), w.str()});
            }
            emit(o, right_table({"d", "Ex.C", "witness"}, rows));
        }
        return 0;
    }
    if (c_split->parsed()) {
        std::vector<long> a = splitting_type(cfg, seeds);
        if (json_fmt) {
            ordered_json j;
            j["name"] = cfg.name;
            j["seeds"] = seeds;
            j["splitting_type"] = a;
            emit(o, j.dump(2) + "\n");
        } else {
            std::ostringstream s;
            s << "splitting type:";
            for (long ai : a) s << " " << ai;
            s << "\n";
            emit(o, s.str());
        }
        return 0;
    }
    if (c_classify->parsed()) {
        long dmax = effective_dmax(o, cfg);
        std::set<long> unexp = unexpected_degrees(cfg, dmax, seeds);
        std::set<long> very = very_unexpected_degrees(cfg, dmax, seeds);
        bool bal = balanced(cfg);
        if (json_fmt) {
            ordered_json j;
            j["name"] = cfg.name;
            j["seeds"] = seeds;
            j["d_max"] = dmax;
            j["unexpected_degrees"] = std::vector<long>(unexp.begin(), unexp.end());
            j["very_unexpected_degrees"] = std::vector<long>(very.begin(), very.end());
            j["balanced"] = bal;
            emit(o, j.dump(2) + "\n");
        } else {
            std::ostringstream s;
            s << "unexpected degrees:";
            for (long d : unexp) s << " " << d;
            s << "\nvery unexpected degrees:";
            for (long d : very) s << " " << d;
            s << "\nbalanced: " << (bal ? "yes" : "no") << "\n";
            emit(o, s.str());
        }
        return 0;
    }
    if (c_free->parsed()) {
        std::vector<long> a = splitting_type(cfg, seeds);
        bool fr = freeness(cfg, seeds);
        if (json_fmt) {
            ordered_json j;
            j["name"] = cfg.name;
            j["seeds"] = seeds;
            j["splitting_type"] = a;
            j["free"] = fr;
            if (cfg.ambient_dim == 2) j["c2"] = c2_combinatorial(cfg);
            emit(o, j.dump(2) + "\n");
        } else {
            std::ostringstream s;
            s << "free: " << (fr ? "yes" : "no") << "\nsplitting type:";
            for (long ai : a) s << " " << ai;
            s << "\n";
            if (cfg.ambient_dim == 2)
                s << "c2: " << c2_combinatorial(cfg) << "\n";
            emit(o, s.str());
        }
        return 0;
    }
    if (c_bounds->parsed()) {
        BoundsReport b = bounds_report(cfg, seeds);
        if (json_fmt) {
            ordered_json j;
            j["name"] = cfg.name;
            j["seeds"] = seeds;
            j["bounds"] = bounds_json(b);
            emit(o, j.dump(2) + "\n");
        } else {
            std::ostringstream s;
            if (!b.applicable) {
                s << "no unexpected degree up to the point count\n";
            } else {
                s << "minimal unexpected degree: " << b.degree
                  << "\nirreducible proxy: " << (b.irreducible_proxy ? "yes" : "no")
                  << "\n";
                for (const auto& c : b.checks)
                    s << "  " << c.name << ": " << c.value << " <= " << c.bound
                      << "  " << (c.holds ? (c.sharp ? "sharp" : "holds") : "FAILS")
                      << (c.conditional ? " (conditional)" : "") << "\n";
            }
            emit(o, s.str());
        }
        return 0;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const InvariantViolation& e) {
        std::cerr << "invariant violation: " << e.what()
                  << " (rerun with different --seed values)\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
