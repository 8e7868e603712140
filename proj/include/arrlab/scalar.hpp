#ifndef ARRLAB_SCALAR_HPP
#define ARRLAB_SCALAR_HPP

#include <gmpxx.h>

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace arrlab {

// Error taxonomy shared by the whole library. Usage errors map to CLI exit
// code 2, invariant violations to exit code 1.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InvariantViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct EnvironmentError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class FieldKind { Rationals, Cyclotomic, Finite };

// Immutable field descriptor, shared by all scalars of that field.
class FieldSpec {
  public:
    FieldKind kind;
    long m = 0;  // cyclotomic order
    long p = 0;  // finite characteristic
    long k = 1;  // finite extension degree

    // Monic minimal polynomial of the generator, as coefficient vector
    // c[0] + c[1] z + ... + c[deg] z^deg with c[deg] = 1.
    // Cyclotomic: the m-th cyclotomic polynomial over QQ (degree phi(m)).
    // Finite with k > 1: lexicographically first monic irreducible of degree
    // k over F_p (coefficients as nonnegative longs < p).
    std::vector<mpq_class> min_poly;

    long degree() const;  // dimension of the field over its prime field / QQ

    bool operator==(const FieldSpec& o) const;
};

using Field = std::shared_ptr<const FieldSpec>;

Field make_rationals();
Field make_cyclotomic(long m);
Field make_finite(long p, long k = 1);
// Finite field with a caller-supplied monic modulus (checked irreducible).
Field make_finite_with_modulus(long p, const std::vector<long>& modulus);

long euler_phi(long m);
// Coefficients of the m-th cyclotomic polynomial, exact.
std::vector<mpq_class> cyclotomic_polynomial(long m);

// One exact field element. Representation:
//   Rationals: c has size 1 (a reduced mpq).
//   Cyclotomic: c has size phi(m), residue mod Phi_m in the power basis.
//   Finite: c has size k, entries are integers in [0, p).
// Canonical: equal field elements have identical representations.
class Scalar {
  public:
    Scalar() = default;
    Scalar(Field f, std::vector<mpq_class> coeffs);  // reduces to canonical

    static Scalar zero(const Field& f);
    static Scalar one(const Field& f);
    static Scalar from_int(const Field& f, long v);
    static Scalar from_mpq(const Field& f, const mpq_class& v);
    // Primitive m-th root of unity to the power e (cyclotomic fields only).
    static Scalar zeta_power(const Field& f, long e);
    // Generator t of F_{p^k} over F_p, k > 1.
    static Scalar generator(const Field& f);

    const Field& field() const { return f_; }
    const std::vector<mpq_class>& coeffs() const { return c_; }

    bool is_zero() const;
    bool is_one() const;
    bool is_rational() const;          // lies in the prime field / QQ
    mpq_class rational_value() const;  // requires is_rational()

    Scalar operator-() const;
    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator/(const Scalar& o) const;
    Scalar inverse() const;

    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }
    // Arbitrary total order (for canonical sorting), not field-meaningful.
    bool operator<(const Scalar& o) const;

    std::string to_string() const;  // matches the literal grammar

  private:
    void canonicalize();
    static void check_same_field(const Scalar& a, const Scalar& b);

    Field f_;
    std::vector<mpq_class> c_;
};

// Literal grammar: integers `-12`, fractions `3/4`, polynomials in `z`
// (cyclotomic) or `t` (finite, k > 1) with rational coefficients such as
// `1 - z + 2/3*z^2`. Whitespace-insensitive.
Scalar parse_scalar(const Field& f, const std::string& text);

bool is_prime(long n);

}  // namespace arrlab

#endif
