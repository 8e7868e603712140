#include "arrlab/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>

namespace arrlab {

long block_cost(const Configuration& cfg, const std::vector<long>& block, long d) {
    return d * span_dim(cfg, block) + 1;
}

namespace {

// span dimension memoized by point bitmask (|Z| <= 63 at desk scale)
struct SpanDimCache {
    const Configuration& cfg;
    std::map<uint64_t, long> memo;
    long get(uint64_t mask) {
        auto it = memo.find(mask);
        if (it != memo.end()) return it->second;
        std::vector<long> sub;
        for (long i = 0; i < cfg.size(); ++i)
            if (mask >> i & 1) sub.push_back(i);
        long dm = span_dim(cfg, sub);
        memo[mask] = dm;
        return dm;
    }
};

std::vector<long> mask_to_indices(uint64_t mask, long nz) {
    std::vector<long> out;
    for (long i = 0; i < nz; ++i)
        if (mask >> i & 1) out.push_back(i);
    return out;
}

ExcResult exc_planar(const Configuration& cfg, long d) {
    long nz = cfg.size();
    std::vector<long> all(nz);
    std::iota(all.begin(), all.end(), 0L);
    long whole_dim = span_dim(cfg, all);

    ExcResult best;
    best.value = nz;
    for (long i = 0; i < nz; ++i) best.witness.push_back({{i}, 0});

    auto consider_whole = [&] {
        long c = d * whole_dim + 1;
        if (c < best.value) {
            best.value = c;
            best.witness = {{all, whole_dim}};
        }
    };
    consider_whole();
    if (whole_dim >= 1) {
        // one line block plus leftover singletons; a second positive
        // dimensional block can never beat the whole-plane block
        for (const auto& L : spanned_lines(cfg)) {
            long c = (d + 1) + (nz - (long)L.indices.size());
            if (c < best.value) {
                best.value = c;
                best.witness = {{L.indices, 1}};
                for (long i = 0; i < nz; ++i)
                    if (!std::binary_search(L.indices.begin(), L.indices.end(), i))
                        best.witness.push_back({{i}, 0});
            }
        }
    }
    return best;
}

}  // namespace

ExcResult exc_cover_search(const Configuration& cfg, long d) {
    long nz = cfg.size();
    long n = cfg.ambient_dim;
    if (nz > 63) throw UsageError("cover search supports at most 63 points");
    std::vector<long> all(nz);
    std::iota(all.begin(), all.end(), 0L);
    long whole_dim = span_dim(cfg, all);

    // candidate blocks: flats whose block cost beats their singleton cost
    struct Cand {
        uint64_t mask;
        long cost;
        long npts;
    };
    std::vector<Cand> cands;
    if (n >= 2 && whole_dim >= 1) {
        long maxflat = std::min(n - 1, whole_dim);
        if (maxflat >= 1)
            for (const auto& fl : enumerate_flats(cfg, maxflat)) {
                long cost = d * fl.dim + 1;
                if ((long)fl.indices.size() <= cost) continue;  // singletons do it
                uint64_t mask = 0;
                for (long i : fl.indices) mask |= 1ULL << i;
                cands.push_back({mask, cost, (long)fl.indices.size()});
            }
    }
    std::sort(cands.begin(), cands.end(),
              [](const Cand& a, const Cand& b) { return a.cost * b.npts < b.cost * a.npts; });
    std::vector<std::vector<long>> cands_with(nz);
    for (long c = 0; c < (long)cands.size(); ++c)
        for (long i = 0; i < nz; ++i)
            if (cands[c].mask >> i & 1) cands_with[i].push_back(c);

    // fractional per-point cost lower bound for pruning
    double gamma = 1.0;
    for (const auto& c : cands)
        gamma = std::min(gamma, (double)c.cost / (double)c.npts);

    uint64_t full = (nz == 63) ? ~0ULL >> 1 : (1ULL << nz) - 1;

    ExcResult out;
    out.value = nz;
    for (long i = 0; i < nz; ++i) out.witness.push_back({{i}, 0});
    if (d * whole_dim + 1 < out.value) {
        out.value = d * whole_dim + 1;
        out.witness = {{all, whole_dim}};
    }
    long best = out.value;
    std::vector<long> best_choice;  // candidate ids of the best proper cover
    bool improved = false;
    std::vector<long> choice;

    std::function<void(uint64_t, long)> rec = [&](uint64_t covered, long cost) {
        uint64_t uncovered = full & ~covered;
        if (!uncovered) {
            if (cost < best) {
                best = cost;
                best_choice = choice;
                improved = true;
            }
            return;
        }
        long remaining = __builtin_popcountll(uncovered);
        if (cost + (long)std::ceil(gamma * remaining - 1e-9) >= best) return;
        long i = __builtin_ctzll(uncovered);
        // cover point i by a candidate flat or by a singleton
        for (long cid : cands_with[i]) {
            const Cand& c = cands[cid];
            if (cost + c.cost >= best) continue;
            choice.push_back(cid);
            rec(covered | c.mask, cost + c.cost);
            choice.pop_back();
        }
        rec(covered | (1ULL << i), cost + 1);
    };
    rec(0, 0);

    if (improved) {
        out.value = best;
        out.witness.clear();
        uint64_t covered = 0;
        for (long cid : best_choice) {
            const Cand& c = cands[cid];
            long dm = (c.cost - 1) / d;
            out.witness.push_back({mask_to_indices(c.mask, nz), dm});
            covered |= c.mask;
        }
        for (long i = 0; i < nz; ++i)
            if (!(covered >> i & 1)) out.witness.push_back({{i}, 0});
    }
    return out;
}

ExcResult exc(const Configuration& cfg, long d) {
    if (d < 1) throw UsageError("degree must be positive");
    if (cfg.size() == 0) throw UsageError("configuration is empty");
    if (cfg.ambient_dim == 2) return exc_planar(cfg, d);
    return exc_cover_search(cfg, d);
}

namespace {

// enumerate set partitions by restricted growth strings with cost pruning;
// callback receives block masks and the exact cost
void enumerate_partitions(const Configuration& cfg, long d, long prune_above,
                          const std::function<void(const std::vector<uint64_t>&,
                                                   long)>& emit) {
    long nz = cfg.size();
    SpanDimCache sd{cfg};
    std::vector<uint64_t> blocks;
    std::vector<long> costs;
    std::function<void(long, long)> rec = [&](long i, long total) {
        if (total > prune_above) return;
        if (i == nz) {
            emit(blocks, total);
            return;
        }
        for (size_t b = 0; b < blocks.size(); ++b) {
            uint64_t nm = blocks[b] | (1ULL << i);
            long nc = d * sd.get(nm) + 1;
            long ntotal = total - costs[b] + nc;
            uint64_t save = blocks[b];
            long csave = costs[b];
            blocks[b] = nm;
            costs[b] = nc;
            rec(i + 1, ntotal);
            blocks[b] = save;
            costs[b] = csave;
        }
        blocks.push_back(1ULL << i);
        costs.push_back(1);
        rec(i + 1, total + 1);
        blocks.pop_back();
        costs.pop_back();
    };
    rec(0, 0);
}

}  // namespace

long exc_partition_bruteforce(const Configuration& cfg, long d) {
    if (cfg.size() > 12) throw UsageError("partition brute force capped at 12 points");
    long best = cfg.size();
    enumerate_partitions(cfg, d, best,
                         [&](const std::vector<uint64_t>&, long cost) {
                             best = std::min(best, cost);
                         });
    return best;
}

namespace {

struct UnionFind {
    std::vector<long> parent;
    explicit UnionFind(long n) : parent(n) { std::iota(parent.begin(), parent.end(), 0L); }
    long find(long x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
    void unite(long a, long b) { parent[find(a)] = find(b); }
};

long partition_cost(const Configuration& cfg, const std::vector<std::vector<long>>& blocks,
                    long d) {
    long total = 0;
    for (const auto& b : blocks) total += block_cost(cfg, b, d);
    return total;
}

std::vector<std::vector<long>> components(UnionFind& uf, long nz) {
    std::map<long, std::vector<long>> by_root;
    for (long i = 0; i < nz; ++i) by_root[uf.find(i)].push_back(i);
    std::vector<std::vector<long>> out;
    for (auto& [root, idx] : by_root) out.push_back(std::move(idx));
    return out;
}

}  // namespace

ExblPartition exbl(const Configuration& cfg, long d) {
    if (d < 1) throw UsageError("degree must be positive");
    long nz = cfg.size();
    long opt = exc(cfg, d).value;
    ExblPartition out;
    out.cost = opt;
    if (nz <= 12) {
        UnionFind uf(nz);
        enumerate_partitions(cfg, d, opt,
                             [&](const std::vector<uint64_t>& blocks, long cost) {
                                 if (cost != opt) return;
                                 for (uint64_t m : blocks) {
                                     long first = __builtin_ctzll(m);
                                     for (long i = first + 1; i < nz; ++i)
                                         if (m >> i & 1) uf.unite(first, i);
                                 }
                             });
        out.blocks = components(uf, nz);
        if (partition_cost(cfg, out.blocks, d) != opt)
            throw InvariantViolation(
                "join of optimal partitions is not optimal at degree " +
                std::to_string(d));
        return out;
    }
    // large case: partition from the cover witness, then greedy coarsening
    ExcResult w = exc(cfg, d);
    std::vector<std::vector<long>> blocks;
    std::vector<char> assigned(nz, 0);
    for (const auto& b : w.witness) {
        std::vector<long> blk;
        for (long i : b.indices)
            if (!assigned[i]) {
                blk.push_back(i);
                assigned[i] = 1;
            }
        if (!blk.empty()) blocks.push_back(std::move(blk));
    }
    if (partition_cost(cfg, blocks, d) != opt)
        throw InvariantViolation("cover witness does not yield an optimal partition");
    bool merged = true;
    while (merged) {
        merged = false;
        for (size_t a = 0; a < blocks.size() && !merged; ++a)
            for (size_t b = a + 1; b < blocks.size() && !merged; ++b) {
                std::vector<long> uni = blocks[a];
                uni.insert(uni.end(), blocks[b].begin(), blocks[b].end());
                std::sort(uni.begin(), uni.end());
                long delta = block_cost(cfg, uni, d) - block_cost(cfg, blocks[a], d) -
                             block_cost(cfg, blocks[b], d);
                if (delta <= 0) {
                    blocks[a] = std::move(uni);
                    blocks.erase(blocks.begin() + b);
                    merged = true;
                }
            }
    }
    if (partition_cost(cfg, blocks, d) != opt)
        throw InvariantViolation("coarsened partition lost optimality");
    for (auto& b : blocks) std::sort(b.begin(), b.end());
    std::sort(blocks.begin(), blocks.end());
    out.blocks = std::move(blocks);
    return out;
}

bool md_is_independent(const Configuration& cfg, const std::vector<long>& subset,
                       long d) {
    if (d < 1) throw UsageError("degree must be positive");
    if (subset.empty()) return true;
    long n = cfg.ambient_dim;
    if ((long)subset.size() > d * n + 1) return false;
    // |A| <= d dim Span(A) + 1 for all A is equivalent to the flat-wise
    // bound |I cap F| <= d dim F + 1 over every flat plus the global bound
    if (n >= 2) {
        long maxflat = std::min(n - 1, span_dim(cfg, subset));
        if (maxflat >= 1)
            for (const auto& fl : enumerate_flats(cfg, maxflat)) {
                long inter = 0;
                for (long i : subset)
                    if (std::binary_search(fl.indices.begin(), fl.indices.end(), i))
                        ++inter;
                if (inter > d * fl.dim + 1) return false;
            }
    }
    return true;
}

long md_rank(const Configuration& cfg, long d) {
    if (d < 1) throw UsageError("degree must be positive");
    long nz = cfg.size();
    long n = cfg.ambient_dim;
    std::vector<Flat> flats;
    if (n >= 2) flats = enumerate_flats(cfg, n - 1);
    std::vector<long> chosen;
    std::vector<long> flat_counts(flats.size(), 0);
    for (long i = 0; i < nz; ++i) {
        if ((long)chosen.size() + 1 > d * n + 1) break;
        bool ok = true;
        for (size_t f = 0; f < flats.size(); ++f) {
            if (!std::binary_search(flats[f].indices.begin(), flats[f].indices.end(), i))
                continue;
            if (flat_counts[f] + 1 > d * flats[f].dim + 1) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        chosen.push_back(i);
        for (size_t f = 0; f < flats.size(); ++f)
            if (std::binary_search(flats[f].indices.begin(), flats[f].indices.end(), i))
                ++flat_counts[f];
    }
    return (long)chosen.size();
}

std::vector<long> exc_delta_sequence(const Configuration& cfg, long d_max) {
    if (d_max < 2) throw UsageError("d_max must be >= 2");
    std::vector<long> vals;
    for (long d = 1; d <= d_max; ++d) vals.push_back(exc(cfg, d).value);
    std::vector<long> deltas;
    for (long d = 1; d < d_max; ++d) deltas.push_back(vals[d] - vals[d - 1]);
    for (size_t i = 1; i < deltas.size(); ++i)
        if (deltas[i] > deltas[i - 1])
            throw InvariantViolation("forward differences are not nonincreasing");
    for (long d = 1; d < d_max; ++d) {
        auto lo = exbl(cfg, d + 1), hi = exbl(cfg, d);
        long hi_sum = 0, lo_sum = 0;
        for (const auto& b : hi.blocks) hi_sum += span_dim(cfg, b);
        for (const auto& b : lo.blocks) lo_sum += span_dim(cfg, b);
        if (!(hi_sum >= deltas[d - 1] && deltas[d - 1] >= lo_sum))
            throw InvariantViolation("difference sandwich violated at degree " +
                                     std::to_string(d));
    }
    return deltas;
}

}  // namespace arrlab
