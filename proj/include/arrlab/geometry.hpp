#ifndef ARRLAB_GEOMETRY_HPP
#define ARRLAB_GEOMETRY_HPP

#include <optional>
#include <string>
#include <vector>

#include "arrlab/linalg.hpp"
#include "arrlab/scalar.hpp"

namespace arrlab {

// Point of projective n-space, normalized so the first nonzero coordinate
// is 1. Equality of normalized coordinate vectors is projective equality.
struct ProjectivePoint {
    std::vector<Scalar> coords;
    bool operator==(const ProjectivePoint& o) const { return coords == o.coords; }
};

ProjectivePoint normalize_point(std::vector<Scalar> coords);

// Ordered list of pairwise-distinct points of P^n over one field.
struct Configuration {
    long ambient_dim = 0;  // n
    Field field;
    std::vector<ProjectivePoint> points;
    std::string name;

    long size() const { return (long)points.size(); }
};

Configuration make_configuration(long n, Field field,
                                 std::vector<ProjectivePoint> points,
                                 std::string name = "");

// Closure-closed set of point indices with the projective dimension of its
// span.
struct Flat {
    std::vector<long> indices;  // sorted
    long dim = 0;
    bool operator==(const Flat& o) const { return indices == o.indices; }
    bool operator<(const Flat& o) const { return indices < o.indices; }
};

// Incremental span membership tester (echelonized basis of a subspace).
class SpanTester {
  public:
    explicit SpanTester(const Field& f, long ncoords);
    // returns true if the vector enlarged the span
    bool add(const std::vector<Scalar>& v);
    bool contains(const std::vector<Scalar>& v) const;
    long rank() const { return (long)rows_.size(); }

  private:
    std::vector<Scalar> reduce(std::vector<Scalar> v) const;
    Field f_;
    long n_;
    std::vector<std::vector<Scalar>> rows_;
    std::vector<long> pivots_;
};

// Projective dimension of Span(subset) = matrix rank - 1.
long span_dim(const Configuration& cfg, const std::vector<long>& subset);

// All configuration points inside Span(subset).
Flat closure(const Configuration& cfg, const std::vector<long>& subset);

// Flats of projective dimension 1..max_dim holding at least two points.
std::vector<Flat> enumerate_flats(const Configuration& cfg, long max_dim);

// Number of distinct lines joining p to the other points.
long l_p_count(const Configuration& cfg, long point_index);
long l_p_count(const Configuration& cfg, const ProjectivePoint& external);

// All 1-dimensional closures of point pairs.
std::vector<Flat> spanned_lines(const Configuration& cfg);

struct GeneralPositionResult {
    long size = 0;
    bool exact = true;  // false: lower bound only (|Z| above the search cap)
};
GeneralPositionResult max_general_position_subset(const Configuration& cfg);

// Structural fingerprint (field + coordinates), usable as a cache key.
std::string configuration_key(const Configuration& cfg);

}  // namespace arrlab

#endif
