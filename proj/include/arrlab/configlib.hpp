#ifndef ARRLAB_CONFIGLIB_HPP
#define ARRLAB_CONFIGLIB_HPP

#include <string>

#include "arrlab/geometry.hpp"

namespace arrlab {

// The m * C(n+1, 2) points with -1 in slot i and a power of zeta_m in slot j
// over all pairs i < j, defined over Q(zeta_m).
Configuration build_fermat(long m, long n);

// build_fermat plus the n+1 coordinate points.
Configuration build_ceva_extended(long m, long n);

// All F_q-rational points of projective n-space, q = p^e.
Configuration build_projective_space(long q, long n);

// Points of a padded with zeros on the right, points of b on the left;
// the ambient dimension becomes n_a + n_b + 1. Fields are unified when an
// embedding exists (rationals into cyclotomic, cyclotomic orders via lcm).
Configuration direct_sum(const Configuration& a, const Configuration& b);

// k deterministic pseudo-random rational points in linearly general position.
Configuration build_generic(long k, long n, long seed);

// JSON round-trip. Parse errors throw UsageError with position diagnostics.
Configuration parse_configuration(const std::string& json_text);
std::string serialize_configuration(const Configuration& cfg);
Configuration load_configuration(const std::string& path);
void save_configuration(const Configuration& cfg, const std::string& path);

}  // namespace arrlab

#endif
