#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "arrlab/scalar.hpp"

using namespace arrlab;

TEST_CASE("rational literals round-trip") {
    Field q = make_rationals();
    for (const char* lit : {"0", "1", "-12", "3/4", "-7/5"}) {
        Scalar s = parse_scalar(q, lit);
        CHECK(parse_scalar(q, s.to_string()) == s);
    }
    CHECK(parse_scalar(q, " 3 / 4 ") == parse_scalar(q, "3/4"));
    CHECK(parse_scalar(q, "2/4") == parse_scalar(q, "1/2"));
    CHECK_THROWS_AS(parse_scalar(q, "z"), UsageError);
    CHECK_THROWS_AS(parse_scalar(q, "1//2"), UsageError);
    CHECK_THROWS_AS(parse_scalar(q, ""), UsageError);
}

TEST_CASE("rational field arithmetic") {
    Field q = make_rationals();
    Scalar a = parse_scalar(q, "3/4"), b = parse_scalar(q, "-2/3");
    CHECK((a + b).rational_value() == mpq_class(1, 12));
    CHECK((a * b).rational_value() == mpq_class(-1, 2));
    CHECK((a / a).is_one());
    CHECK((a - a).is_zero());
    CHECK(a.inverse() * a == Scalar::one(q));
}

TEST_CASE("cyclotomic reduction modulo the minimal polynomial") {
    Field f = make_cyclotomic(5);
    CHECK(f->degree() == 4);
    Scalar z = Scalar::zeta_power(f, 1);
    Scalar z5 = z * z * z * z * z;
    CHECK(z5.is_one());
    // 1 + z + z^2 + z^3 + z^4 = 0
    Scalar sum = Scalar::one(f);
    Scalar p = Scalar::one(f);
    for (int i = 0; i < 4; ++i) {
        p *= z;
        sum += p;
    }
    CHECK(sum.is_zero());
    CHECK(z.inverse() == Scalar::zeta_power(f, 4));
}

TEST_CASE("cyclotomic literals") {
    Field f = make_cyclotomic(5);
    Scalar s = parse_scalar(f, "1 - z + 2/3*z^2");
    CHECK(parse_scalar(f, s.to_string()) == s);
    CHECK(parse_scalar(f, "z^5") == Scalar::one(f));
    CHECK(parse_scalar(f, "z^4") == -(parse_scalar(f, "1+z+z^2+z^3")));
    CHECK_THROWS_AS(parse_scalar(f, "t"), UsageError);
}

TEST_CASE("cyclotomic polynomial values") {
    CHECK(cyclotomic_polynomial(1) == std::vector<mpq_class>{-1, 1});
    CHECK(cyclotomic_polynomial(2) == std::vector<mpq_class>{1, 1});
    CHECK(cyclotomic_polynomial(4) == std::vector<mpq_class>{1, 0, 1});
    CHECK(cyclotomic_polynomial(6) == std::vector<mpq_class>{1, -1, 1});
    // Phi_12 = x^4 - x^2 + 1
    CHECK(cyclotomic_polynomial(12) == std::vector<mpq_class>{1, 0, -1, 0, 1});
    CHECK(euler_phi(1) == 1);
    CHECK(euler_phi(12) == 4);
    CHECK(euler_phi(14) == 6);
}

TEST_CASE("prime field arithmetic") {
    Field f = make_finite(7);
    Scalar a = Scalar::from_int(f, 5), b = Scalar::from_int(f, 4);
    CHECK((a + b) == Scalar::from_int(f, 2));
    CHECK((a * b) == Scalar::from_int(f, 6));
    CHECK((a.inverse() * a).is_one());
    CHECK(Scalar::from_int(f, 7).is_zero());
    CHECK(Scalar::from_int(f, -1) == Scalar::from_int(f, 6));
}

TEST_CASE("extension field F_9") {
    Field f = make_finite(3, 2);
    CHECK(f->degree() == 2);
    Scalar t = Scalar::generator(f);
    // multiplicative order of any nonzero element divides 8
    Scalar p = Scalar::one(f);
    for (int i = 0; i < 8; ++i) p *= t;
    CHECK(p.is_one());
    // t itself is not in the prime field
    CHECK(!t.is_rational());
    Scalar s = parse_scalar(f, "1 + 2*t");
    CHECK(parse_scalar(f, s.to_string()) == s);
    CHECK((s * s.inverse()).is_one());
}

TEST_CASE("field constructors validate input") {
    CHECK_THROWS_AS(make_finite(6), UsageError);
    CHECK_THROWS_AS(make_finite(0), UsageError);
    CHECK_THROWS_AS(make_cyclotomic(0), UsageError);
}

TEST_CASE("primality helper") {
    CHECK(is_prime(2));
    CHECK(is_prime(31));
    CHECK(!is_prime(1));
    CHECK(!is_prime(91));
}

TEST_CASE("canonical representation makes equality structural") {
    Field f = make_cyclotomic(4);  // min poly x^2 + 1
    Scalar a = parse_scalar(f, "z^2");
    Scalar b = Scalar::from_int(f, -1);
    CHECK(a == b);
    CHECK(a.coeffs() == b.coeffs());
}
