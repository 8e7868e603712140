#ifndef ARRLAB_DUALITY_HPP
#define ARRLAB_DUALITY_HPP

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "arrlab/geometry.hpp"
#include "arrlab/idealdims.hpp"
#include "arrlab/polyspace.hpp"

namespace arrlab {

// Bihomogeneous polynomial in the point variables X_0..X_n and the generic
// row variables A_{r,0..n}, r = 1..n-1. Exponent vectors have length
// n*(n+1): block 0 is X, block r is the r-th A row.
struct BiGradedForm {
    long n = 0;
    Field field;
    SparsePoly terms;

    long xdeg() const;
    std::string to_string() const;  // canonical sorted text form

    BiGradedForm operator*(const BiGradedForm& o) const;
    BiGradedForm operator+(const BiGradedForm& o) const;
    BiGradedForm scaled(const Scalar& c) const;
};

inline long xvar(long /*n*/, long i) { return i; }
inline long avar(long n, long r, long j) { return r * (n + 1) + j; }

// Signed maximal minor M_i of the n x (n+1) matrix whose first row is X and
// whose remaining rows are the A rows: M_i = (-1)^i det(drop column i).
BiGradedForm minor_form(const Field& f, long i, long n);

// Substitute X := P; true iff the remaining polynomial in A is zero for
// every configuration point (the membership test for the bigraded module).
bool igg_member(const Configuration& cfg, const BiGradedForm& f);

// Substitute the A rows by n-1 linearly independent coordinate vectors;
// the result is a dense degree-d form in X over `big`.
std::vector<Scalar> epsilon(const BiGradedForm& f,
                            const std::vector<std::vector<Scalar>>& rows,
                            const Field& big);

// Points spanning Q = V(l0, l1), used as epsilon rows.
std::vector<std::vector<Scalar>> q_span_rows(const GenericCodim2& q, long n);

long igg_dim(const Configuration& cfg, long d);
std::vector<BiGradedForm> igg_basis(const Configuration& cfg, long d);

// (min degree with a nonzero element) - 1, searched up to d_max.
std::optional<long> alpha(const Configuration& cfg, long d_max);

// degree -> number of minimal generators of the restricted module with
// graded pieces [I(Z) cap I(Q)^(d-1)]_d over the two-variable coordinate
// ring of the pencil through Q, computed by the quotient formula
// (new generators in degree d = dim_d - dim of the span of the degree-(d-1)
// basis multiplied by the two pencil forms)
std::map<long, long> generator_degrees(const Configuration& cfg, long d_max,
                                       const std::vector<long>& q_seeds = {42, 43,
                                                                           44});

bool commute_check(const Configuration& cfg, long d, const GenericCodim2& q);

// dim of the epsilon image of the degree-d piece under the rows of q.
long epsilon_image_dim(const Configuration& cfg, long d, const GenericCodim2& q);

bool freeness(const Configuration& cfg);
bool freeness(const Configuration& cfg, const std::vector<long>& q_seeds);

long c2_combinatorial(const Configuration& cfg);

bool semistable(const Configuration& cfg);

}  // namespace arrlab

#endif
