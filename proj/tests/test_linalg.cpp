#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "arrlab/linalg.hpp"

using namespace arrlab;

namespace {

Mat from_ints(const Field& f, const std::vector<std::vector<long>>& rows) {
    Mat m(f, (long)rows.size(), rows.empty() ? 0 : (long)rows[0].size());
    for (long i = 0; i < m.rows(); ++i)
        for (long j = 0; j < m.cols(); ++j)
            m.at(i, j) = Scalar::from_int(f, rows[i][j]);
    return m;
}

bool annihilates(const Mat& a, const std::vector<Scalar>& v) {
    for (long i = 0; i < a.rows(); ++i) {
        Scalar s = Scalar::zero(a.field());
        for (long j = 0; j < a.cols(); ++j) s += a.at(i, j) * v[j];
        if (!s.is_zero()) return false;
    }
    return true;
}

Mat random_mat(const Field& f, long rows, long cols, std::mt19937_64& rng) {
    std::uniform_int_distribution<long> d(-9, 9);
    Mat m(f, rows, cols);
    for (long i = 0; i < rows; ++i)
        for (long j = 0; j < cols; ++j) m.at(i, j) = Scalar::from_int(f, d(rng));
    return m;
}

}  // namespace

TEST_CASE("rank of hand matrices") {
    Field q = make_rationals();
    CHECK(rank_exact(from_ints(q, {{1, 2}, {2, 4}})) == 1);
    CHECK(rank_exact(from_ints(q, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}})) == 3);
    CHECK(rank_exact(from_ints(q, {{0, 0}, {0, 0}})) == 0);
    CHECK(rank_exact(from_ints(q, {{1, 2, 3}, {4, 5, 6}, {7, 8, 9}})) == 2);
}

TEST_CASE("kernel vectors annihilate and have the right count") {
    Field q = make_rationals();
    Mat a = from_ints(q, {{1, 2, 3}, {4, 5, 6}, {7, 8, 9}});
    KernelResult k = kernel_and_rank(a);
    CHECK(k.rank == 2);
    CHECK(k.kernel.size() == 1);
    CHECK(annihilates(a, k.kernel[0]));
}

TEST_CASE("kernel over a cyclotomic field") {
    Field f = make_cyclotomic(3);
    Scalar z = Scalar::zeta_power(f, 1);
    Mat a(f, 1, 3);
    a.at(0, 0) = Scalar::one(f);
    a.at(0, 1) = z;
    a.at(0, 2) = z * z;
    KernelResult k = kernel_and_rank(a);
    CHECK(k.rank == 1);
    CHECK(k.kernel.size() == 2);
    for (const auto& v : k.kernel) CHECK(annihilates(a, v));
}

TEST_CASE("certified routines agree with the exact ones") {
    std::mt19937_64 rng(7);
    for (const Field& f : {make_rationals(), make_cyclotomic(5), make_finite(13)}) {
        for (int trial = 0; trial < 10; ++trial) {
            Mat a = random_mat(f, 6, 4, rng);
            CHECK(rank_certified(a) == rank_exact(a));
            KernelResult kc = kernel_certified(a);
            KernelResult ke = kernel_and_rank(a);
            CHECK(kc.rank == ke.rank);
            CHECK(kc.kernel.size() == ke.kernel.size());
            for (const auto& v : kc.kernel) CHECK(annihilates(a, v));
        }
    }
}

TEST_CASE("certified kernel on a rank-deficient tall matrix") {
    Field q = make_rationals();
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> d(-5, 5);
    // 40 rows spanning only a 3-dimensional row space of a 6-column matrix
    std::vector<std::vector<long>> basis(3, std::vector<long>(6));
    for (auto& r : basis)
        for (auto& x : r) x = d(rng);
    Mat a(q, 40, 6);
    for (long i = 0; i < 40; ++i)
        for (long j = 0; j < 6; ++j) {
            long v = 0;
            for (int b = 0; b < 3; ++b) v += d(rng) * 0 + basis[b][j] * ((i + b) % 3);
            a.at(i, j) = Scalar::from_int(q, v);
        }
    KernelResult k = kernel_certified(a);
    CHECK(k.rank == rank_exact(a));
    for (const auto& v : k.kernel) CHECK(annihilates(a, v));
    CHECK((long)k.kernel.size() == 6 - k.rank);
}

TEST_CASE("modular reduction maps the cyclotomic generator to an order-m element") {
    Field f = make_cyclotomic(5);
    auto primes = reduction_primes(f, 3);
    REQUIRE(primes.size() == 3);
    for (long p : primes) CHECK((p - 1) % 5 == 0);
    Mat a(f, 1, 1);
    a.at(0, 0) = Scalar::zeta_power(f, 1);
    auto red = reduce_mod_prime(a, primes[0]);
    REQUIRE(red.has_value());
    // image has multiplicative order 5
    uint64_t x = red->rows[0][0], p = (uint64_t)red->p, acc = 1;
    for (int i = 0; i < 5; ++i) acc = (unsigned __int128)acc * x % p;
    CHECK(acc == 1);
    CHECK(x != 1);
}

TEST_CASE("mod-p kernel helpers") {
    long p = 10007;
    std::vector<std::vector<uint64_t>> rows = {{1, 2, 3}, {2, 4, 6}, {0, 1, 1}};
    CHECK(rank_mod_p(rows, p) == 2);
    KernelModP k = kernel_mod_p(rows, p);
    CHECK(k.rank == 2);
    CHECK(k.kernel.size() == 1);
    for (const auto& r : rows) {
        uint64_t s = 0;
        for (size_t j = 0; j < r.size(); ++j)
            s = (s + (unsigned __int128)r[j] * k.kernel[0][j]) % p;
        CHECK(s == 0);
    }
    auto idx = independent_rows_mod_p(rows, p);
    CHECK(idx.size() == 2);
}
