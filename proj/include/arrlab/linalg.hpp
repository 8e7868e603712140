#ifndef ARRLAB_LINALG_HPP
#define ARRLAB_LINALG_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "arrlab/scalar.hpp"

namespace arrlab {

// Dense matrix over one exact field. Row-major.
class Mat {
  public:
    Mat() = default;
    Mat(Field f, long rows, long cols)
        : f_(std::move(f)), rows_(rows), cols_(cols),
          a_(rows * cols, Scalar::zero(f_)) {}

    long rows() const { return rows_; }
    long cols() const { return cols_; }
    const Field& field() const { return f_; }

    Scalar& at(long i, long j) { return a_[i * cols_ + j]; }
    const Scalar& at(long i, long j) const { return a_[i * cols_ + j]; }

    void append_row(const std::vector<Scalar>& row);

  private:
    Field f_;
    long rows_ = 0, cols_ = 0;
    std::vector<Scalar> a_;
};

// Exact rank by Gaussian elimination over the field.
long rank_exact(Mat a);

// Exact basis of the right kernel {x : A x = 0}, plus the rank.
struct KernelResult {
    long rank = 0;
    std::vector<std::vector<Scalar>> kernel;  // each of length cols
};
KernelResult kernel_and_rank(Mat a);

// Exact kernel with a mod-p pre-pass for characteristic-zero fields: a prime
// reduction picks a candidate independent row set, the exact elimination runs
// on those rows only, and the leftover rows are verified to annihilate the
// exact kernel. Verification failure falls back to the plain exact routine,
// so the result is always exact.
KernelResult kernel_certified(const Mat& a);
long rank_certified(const Mat& a);

// Reduction of a characteristic-zero matrix modulo a prime. For cyclotomic
// fields the power-basis generator maps to an element of order m in F_p
// (requires p = 1 mod m). Fails if any denominator vanishes mod p.
struct PrimeReduction {
    long p = 0;
    std::vector<std::vector<uint64_t>> rows;
};
std::optional<PrimeReduction> reduce_mod_prime(const Mat& a, long p);

// Suitable primes for the field (p = 1 mod m for cyclotomic), deterministic.
std::vector<long> reduction_primes(const Field& f, int count);

long rank_mod_p(std::vector<std::vector<uint64_t>> rows, long p);
// Right kernel basis over F_p (machine arithmetic).
struct KernelModP {
    long rank = 0;
    std::vector<std::vector<uint64_t>> kernel;
};
KernelModP kernel_mod_p(std::vector<std::vector<uint64_t>> rows, long p);
// Row-echelon pass returning the indices of an independent row subset.
std::vector<long> independent_rows_mod_p(
    const std::vector<std::vector<uint64_t>>& rows, long p);

}  // namespace arrlab

#endif
