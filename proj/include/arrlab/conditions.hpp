#ifndef ARRLAB_CONDITIONS_HPP
#define ARRLAB_CONDITIONS_HPP

#include <vector>

#include "arrlab/geometry.hpp"

namespace arrlab {

struct CoverBlock {
    std::vector<long> indices;  // sorted
    long dim = 0;               // projective dimension of the span
};

// Minimum of sum(d * dim Span(B) + 1) over covers of Z, with a witness.
struct ExcResult {
    long value = 0;
    std::vector<CoverBlock> witness;
};

ExcResult exc(const Configuration& cfg, long d);

// Exhaustive minimum over all set partitions (oracle; |Z| <= 12).
long exc_partition_bruteforce(const Configuration& cfg, long d);

// General branch-and-bound cover solver (used by exc for n >= 3, exposed for
// cross-checking the planar closed form).
ExcResult exc_cover_search(const Configuration& cfg, long d);

// Coarsest optimal partition.
struct ExblPartition {
    std::vector<std::vector<long>> blocks;
    long cost = 0;
};
ExblPartition exbl(const Configuration& cfg, long d);

bool md_is_independent(const Configuration& cfg, const std::vector<long>& subset,
                       long d);
long md_rank(const Configuration& cfg, long d);

// Forward differences Ex.C(Z,d+1) - Ex.C(Z,d) for d = 1..d_max-1, verified
// nonincreasing and sandwiched by the coarsest-partition span dimensions.
std::vector<long> exc_delta_sequence(const Configuration& cfg, long d_max);

long block_cost(const Configuration& cfg, const std::vector<long>& block, long d);

}  // namespace arrlab

#endif
