#include "arrlab/linalg.hpp"

#include <algorithm>

namespace arrlab {

void Mat::append_row(const std::vector<Scalar>& row) {
    if ((long)row.size() != cols_) throw UsageError("row length mismatch");
    a_.insert(a_.end(), row.begin(), row.end());
    ++rows_;
}

namespace {

// Full reduced row echelon form in place. Returns pivot columns per row.
std::vector<long> rref(Mat& a) {
    std::vector<long> pivcols;
    long r = 0;
    for (long col = 0; col < a.cols() && r < a.rows(); ++col) {
        // pivot choice: prefer a unit entry, else the first nonzero
        long piv = -1;
        for (long i = r; i < a.rows(); ++i) {
            if (a.at(i, col).is_zero()) continue;
            if (piv < 0) piv = i;
            if (a.at(i, col).is_one()) {
                piv = i;
                break;
            }
        }
        if (piv < 0) continue;
        if (piv != r)
            for (long j = col; j < a.cols(); ++j) std::swap(a.at(r, j), a.at(piv, j));
        if (!a.at(r, col).is_one()) {
            Scalar inv = a.at(r, col).inverse();
            for (long j = col; j < a.cols(); ++j)
                if (!a.at(r, j).is_zero()) a.at(r, j) = a.at(r, j) * inv;
        }
        for (long i = 0; i < a.rows(); ++i) {
            if (i == r || a.at(i, col).is_zero()) continue;
            Scalar f = a.at(i, col);
            for (long j = col; j < a.cols(); ++j) {
                if (a.at(r, j).is_zero()) continue;
                a.at(i, j) = a.at(i, j) - f * a.at(r, j);
            }
        }
        pivcols.push_back(col);
        ++r;
    }
    return pivcols;
}

}  // namespace

long rank_exact(Mat a) { return (long)rref(a).size(); }

KernelResult kernel_and_rank(Mat a) {
    const Field& f = a.field();
    std::vector<long> pivcols = rref(a);
    KernelResult out;
    out.rank = (long)pivcols.size();
    std::vector<long> pivot_of_col(a.cols(), -1);
    for (size_t r = 0; r < pivcols.size(); ++r) pivot_of_col[pivcols[r]] = (long)r;
    for (long j = 0; j < a.cols(); ++j) {
        if (pivot_of_col[j] >= 0) continue;
        std::vector<Scalar> v(a.cols(), Scalar::zero(f));
        v[j] = Scalar::one(f);
        for (size_t r = 0; r < pivcols.size(); ++r)
            v[pivcols[r]] = -a.at((long)r, j);
        out.kernel.push_back(std::move(v));
    }
    return out;
}

std::vector<long> reduction_primes(const Field& f, int count) {
    long m = (f->kind == FieldKind::Cyclotomic) ? f->m : 1;
    std::vector<long> out;
    for (long p = (1L << 31) - 1; p > (1L << 30) && (int)out.size() < count; p -= 2) {
        if (p % m != 1 % m) continue;
        if (is_prime(p)) out.push_back(p);
    }
    return out;
}

namespace {

uint64_t pow_mod(uint64_t b, uint64_t e, uint64_t p) {
    uint64_t r = 1 % p;
    b %= p;
    while (e) {
        if (e & 1) r = (uint64_t)((__uint128_t)r * b % p);
        b = (uint64_t)((__uint128_t)b * b % p);
        e >>= 1;
    }
    return r;
}

uint64_t inv_mod(uint64_t a, uint64_t p) { return pow_mod(a, p - 2, p); }

// element of exact multiplicative order m in F_p (requires m | p-1)
std::optional<uint64_t> order_m_element(long m, long p) {
    if ((p - 1) % m != 0) return std::nullopt;
    std::vector<long> prime_factors;
    long t = m;
    for (long q = 2; q * q <= t; ++q)
        if (t % q == 0) {
            prime_factors.push_back(q);
            while (t % q == 0) t /= q;
        }
    if (t > 1) prime_factors.push_back(t);
    for (uint64_t g = 2; g < 1000; ++g) {
        uint64_t w = pow_mod(g, (uint64_t)((p - 1) / m), (uint64_t)p);
        if (w == 1) continue;
        bool ok = true;
        for (long q : prime_factors)
            if (pow_mod(w, (uint64_t)(m / q), (uint64_t)p) == 1) {
                ok = false;
                break;
            }
        if (ok) return w;
    }
    return std::nullopt;
}

std::optional<uint64_t> scalar_mod_p(const Scalar& s, long p,
                                     const std::vector<uint64_t>& zeta_pows) {
    const auto& c = s.coeffs();
    uint64_t acc = 0;
    for (size_t i = 0; i < c.size(); ++i) {
        const mpq_class& q = c[i];
        if (q == 0) continue;
        unsigned long dn = mpz_fdiv_ui(q.get_den().get_mpz_t(), (unsigned long)p);
        if (dn == 0) return std::nullopt;
        unsigned long nn = mpz_fdiv_ui(q.get_num().get_mpz_t(), (unsigned long)p);
        uint64_t v = (uint64_t)((__uint128_t)nn * inv_mod(dn, p) % p);
        if (!zeta_pows.empty())
            v = (uint64_t)((__uint128_t)v * zeta_pows[i] % p);
        acc = (acc + v) % (uint64_t)p;
    }
    return acc;
}

}  // namespace

std::optional<PrimeReduction> reduce_mod_prime(const Mat& a, long p) {
    const Field& f = a.field();
    if (f->kind == FieldKind::Finite) return std::nullopt;
    std::vector<uint64_t> zeta_pows;
    if (f->kind == FieldKind::Cyclotomic) {
        auto w = order_m_element(f->m, p);
        if (!w) return std::nullopt;
        zeta_pows.resize(f->degree());
        uint64_t cur = 1;
        for (long i = 0; i < f->degree(); ++i) {
            zeta_pows[i] = cur;
            cur = (uint64_t)((__uint128_t)cur * *w % p);
        }
    }
    PrimeReduction red;
    red.p = p;
    red.rows.assign(a.rows(), std::vector<uint64_t>(a.cols(), 0));
    for (long i = 0; i < a.rows(); ++i)
        for (long j = 0; j < a.cols(); ++j) {
            auto v = scalar_mod_p(a.at(i, j), p, zeta_pows);
            if (!v) return std::nullopt;
            red.rows[i][j] = *v;
        }
    return red;
}

long rank_mod_p(std::vector<std::vector<uint64_t>> rows, long p) {
    long r = 0;
    long n = rows.empty() ? 0 : (long)rows[0].size();
    for (long col = 0; col < n && r < (long)rows.size(); ++col) {
        long piv = -1;
        for (long i = r; i < (long)rows.size(); ++i)
            if (rows[i][col]) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        std::swap(rows[r], rows[piv]);
        uint64_t inv = inv_mod(rows[r][col], p);
        for (long j = col; j < n; ++j)
            rows[r][j] = (uint64_t)((__uint128_t)rows[r][j] * inv % p);
        for (long i = r + 1; i < (long)rows.size(); ++i) {
            uint64_t f = rows[i][col];
            if (!f) continue;
            for (long j = col; j < n; ++j) {
                uint64_t sub = (uint64_t)((__uint128_t)f * rows[r][j] % p);
                rows[i][j] = (rows[i][j] + (uint64_t)p - sub) % (uint64_t)p;
            }
        }
        ++r;
    }
    return r;
}

KernelModP kernel_mod_p(std::vector<std::vector<uint64_t>> rows, long p) {
    long n = rows.empty() ? 0 : (long)rows[0].size();
    long r = 0;
    std::vector<long> pivcols;
    for (long col = 0; col < n && r < (long)rows.size(); ++col) {
        long piv = -1;
        for (long i = r; i < (long)rows.size(); ++i)
            if (rows[i][col]) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        std::swap(rows[r], rows[piv]);
        uint64_t inv = inv_mod(rows[r][col], p);
        for (long j = col; j < n; ++j)
            rows[r][j] = (uint64_t)((__uint128_t)rows[r][j] * inv % p);
        for (long i = 0; i < (long)rows.size(); ++i) {
            if (i == r || !rows[i][col]) continue;
            uint64_t f = rows[i][col];
            for (long j = col; j < n; ++j) {
                uint64_t sub = (uint64_t)((__uint128_t)f * rows[r][j] % p);
                rows[i][j] = (rows[i][j] + (uint64_t)p - sub) % (uint64_t)p;
            }
        }
        pivcols.push_back(col);
        ++r;
    }
    KernelModP out;
    out.rank = r;
    std::vector<long> pivot_of_col(n, -1);
    for (long i = 0; i < r; ++i) pivot_of_col[pivcols[i]] = i;
    for (long j = 0; j < n; ++j) {
        if (pivot_of_col[j] >= 0) continue;
        std::vector<uint64_t> v(n, 0);
        v[j] = 1;
        for (long i = 0; i < r; ++i)
            v[pivcols[i]] = (rows[i][j] ? (uint64_t)p - rows[i][j] : 0);
        out.kernel.push_back(std::move(v));
    }
    return out;
}

std::vector<long> independent_rows_mod_p(
    const std::vector<std::vector<uint64_t>>& rows, long p) {
    // incremental insertion against an echelon basis, keeping source indices
    std::vector<std::vector<uint64_t>> basis;  // echelonized rows
    std::vector<long> pivcol;
    std::vector<long> picked;
    long n = rows.empty() ? 0 : (long)rows[0].size();
    for (long i = 0; i < (long)rows.size(); ++i) {
        std::vector<uint64_t> v = rows[i];
        for (size_t b = 0; b < basis.size(); ++b) {
            uint64_t f = v[pivcol[b]];
            if (!f) continue;
            for (long j = 0; j < n; ++j) {
                uint64_t sub = (uint64_t)((__uint128_t)f * basis[b][j] % p);
                v[j] = (v[j] + (uint64_t)p - sub) % (uint64_t)p;
            }
        }
        long col = -1;
        for (long j = 0; j < n; ++j)
            if (v[j]) {
                col = j;
                break;
            }
        if (col < 0) continue;
        uint64_t inv = inv_mod(v[col], p);
        for (long j = 0; j < n; ++j)
            v[j] = (uint64_t)((__uint128_t)v[j] * inv % p);
        basis.push_back(std::move(v));
        pivcol.push_back(col);
        picked.push_back(i);
    }
    return picked;
}

KernelResult kernel_certified(const Mat& a) {
    const Field& f = a.field();
    if (f->kind == FieldKind::Finite || a.rows() <= 24)
        return kernel_and_rank(a);
    for (long p : reduction_primes(f, 3)) {
        auto red = reduce_mod_prime(a, p);
        if (!red) continue;
        std::vector<long> idx = independent_rows_mod_p(red->rows, p);
        if ((long)idx.size() == a.rows()) break;  // no row savings
        Mat sub(f, 0, a.cols());
        {
            std::vector<Scalar> row((size_t)a.cols(), Scalar::zero(f));
            for (long i : idx) {
                for (long j = 0; j < a.cols(); ++j) row[j] = a.at(i, j);
                sub.append_row(row);
            }
        }
        KernelResult kr = kernel_and_rank(std::move(sub));
        if (kr.rank != (long)idx.size())
            throw InvariantViolation("mod-p rank exceeded exact rank");
        // verify the skipped rows vanish on the exact kernel
        std::vector<char> in_idx(a.rows(), 0);
        for (long i : idx) in_idx[i] = 1;
        bool ok = true;
        for (long i = 0; i < a.rows() && ok; ++i) {
            if (in_idx[i]) continue;
            for (const auto& v : kr.kernel) {
                Scalar dot = Scalar::zero(f);
                for (long j = 0; j < a.cols(); ++j) {
                    if (a.at(i, j).is_zero() || v[j].is_zero()) continue;
                    dot += a.at(i, j) * v[j];
                }
                if (!dot.is_zero()) {
                    ok = false;
                    break;
                }
            }
        }
        if (ok) return kr;
    }
    return kernel_and_rank(a);
}

long rank_certified(const Mat& a) { return kernel_certified(a).rank; }

}  // namespace arrlab
