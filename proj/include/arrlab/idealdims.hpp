#ifndef ARRLAB_IDEALDIMS_HPP
#define ARRLAB_IDEALDIMS_HPP

#include <vector>

#include "arrlab/geometry.hpp"
#include "arrlab/polyspace.hpp"

namespace arrlab {

// Two independent linear forms cutting out a generic codimension-2 subspace
// Q, drawn deterministically from the seed. For finite base fields the forms
// live in an extension with more than 10^6 elements.
struct GenericCodim2 {
    std::vector<Scalar> l0, l1;  // length n+1, entries in `field`
    long seed = 0;
    Field field;  // sampling field (base field or an extension of it)
};

// dim [R / I(Z)]_d, the Hilbert function of the point set.
long hilbert(const Configuration& cfg, long d);

// 1 + min { r : h_Z(r) = |Z| }.
long regularity(const Configuration& cfg);

GenericCodim2 generic_q(const Configuration& cfg, long seed);

// dim [I(Z) cap I(Q)^(d-1)]_d, one exact kernel computation over the span
// of { L0^a L1^b x_j : a + b = d - 1 }.
long iqgg_dim(const Configuration& cfg, long d, const GenericCodim2& q);

// Basis of that space as dense degree-d coefficient vectors (over q.field).
std::vector<std::vector<Scalar>> iqgg_kernel_basis(const Configuration& cfg,
                                                   long d, const GenericCodim2& q);

// Splitting type (a_1 <= ... <= a_n) recovered from second differences of
// d -> iqgg_dim, taking the per-degree minimum over the seeds.
std::vector<long> splitting_type(const Configuration& cfg,
                                 const std::vector<long>& q_seeds);

// Closed-form count of conditions imposed by the m-th power of the ideal of
// a q_dim-dimensional linear subspace in degree d.
long expected_conditions(long n, long d, long m, long q_dim);

long binomial(long n, long k);

}  // namespace arrlab

#endif
