#ifndef ARRLAB_CLASSIFY_HPP
#define ARRLAB_CLASSIFY_HPP

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "arrlab/conditions.hpp"
#include "arrlab/duality.hpp"
#include "arrlab/geometry.hpp"
#include "arrlab/idealdims.hpp"

namespace arrlab {

// Degrees d in [2, d_max] where dim[I(Z) cap I(Q)^(d-1)]_d exceeds the naive
// count max{0, nd+1 - h_Z(d)}. h(d) is the minimum over the given seeds.
std::set<long> unexpected_degrees(const Configuration& cfg, long d_max,
                                  const std::vector<long>& q_seeds = {42, 43, 44});

// Degrees where (nd+1) - h(d) < Ex.C(Z, d).
std::set<long> very_unexpected_degrees(const Configuration& cfg, long d_max,
                                       const std::vector<long>& q_seeds = {42, 43,
                                                                           44});

// (|Z cap H| - 1) / dim H <= (|Z| - 1) / n for every positive-dimensional
// proper flat H; when true the cover optimum is min{dn+1, |Z|} at every d.
bool balanced(const Configuration& cfg);

struct BoundCheck {
    std::string name;
    long value = 0;
    long bound = 0;
    bool holds = false;
    bool sharp = false;
    bool conditional = false;  // depends on the irreducibility proxy
};

struct BoundsReport {
    bool applicable = false;
    long degree = 0;  // minimal unexpected degree
    bool irreducible_proxy = false;
    std::vector<BoundCheck> checks;
};

// Combinatorial bounds evaluated at the minimal unexpected degree (plane only).
BoundsReport bounds_report(const Configuration& cfg,
                           const std::vector<long>& q_seeds = {42, 43, 44});

// Minimal d with [I(Z) cap I(P)^d]_d nonzero, via the spanning set
// g0^a g1^(d-a) of [I(P)^d]_d for g0, g1 a basis of the forms vanishing at P.
long lp_algebraic(const Configuration& cfg, const ProjectivePoint& p);

// Whether the d-th power map on linear forms spans degree d: always in
// characteristic 0; in characteristic p exactly when d = q p^e - 1, q <= p.
bool char_hypothesis(long p, long d);

struct AddPointResult {
    bool predicted = false;
    std::vector<long> prediction;  // when predicted
    std::vector<long> computed;
    bool agrees = false;  // meaningful when predicted
    long lp = 0;          // line count from the new point
};

// Splitting-type prediction when a point is added to a planar configuration:
// if the line count from p exceeds a_1 the type becomes (a_1 + 1, a_2).
AddPointResult add_point_splitting(const Configuration& cfg,
                                   const ProjectivePoint& p,
                                   const std::vector<long>& q_seeds = {42, 43, 44});

struct DegreeRow {
    long d = 0;
    long h_z = 0;    // Hilbert function of Z
    long h = 0;      // dim [I(Z) cap I(Q)^(d-1)]_d, min over seeds
    long exc = 0;    // cover optimum
    bool unexpected = false;
    bool very_unexpected = false;
};

struct AnalysisReport {
    std::string name;
    long ambient_dim = 0;
    long size = 0;
    std::vector<long> seeds;
    long d_max = 0;
    std::vector<DegreeRow> rows;
    std::vector<long> splitting;
    std::optional<long> alpha;
    bool free = false;
    std::optional<bool> semistable;  // plane only
    std::optional<BoundsReport> bounds;  // plane only
};

// Full orchestration; cross-identities between modules are re-verified and
// raise InvariantViolation on mismatch.
AnalysisReport analyze(const Configuration& cfg, long d_max = 0,
                       const std::vector<long>& q_seeds = {42, 43, 44});

}  // namespace arrlab

#endif
