#include "arrlab/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>
#include <sstream>

namespace arrlab {

namespace {

// ---- polynomial helpers over QQ (dense coefficient vectors) ----

void poly_trim(std::vector<mpq_class>& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

std::vector<mpq_class> poly_mul(const std::vector<mpq_class>& a,
                                const std::vector<mpq_class>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<mpq_class> r(a.size() + b.size() - 1, mpq_class(0));
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    poly_trim(r);
    return r;
}

// Exact division, throws on nonzero remainder.
std::vector<mpq_class> poly_divexact(std::vector<mpq_class> a,
                                     const std::vector<mpq_class>& b) {
    if (b.empty()) throw UsageError("polynomial division by zero");
    std::vector<mpq_class> q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0,
                             mpq_class(0));
    while (a.size() >= b.size()) {
        mpq_class c = a.back() / b.back();
        size_t shift = a.size() - b.size();
        q[shift] = c;
        for (size_t j = 0; j < b.size(); ++j) a[shift + j] -= c * b[j];
        poly_trim(a);
        if (!a.empty() && a.size() >= b.size() && a.back() == 0) poly_trim(a);
        if (a.size() < b.size()) break;
    }
    if (!a.empty()) throw InvariantViolation("inexact polynomial division");
    poly_trim(q);
    return q;
}

// remainder of a mod b (b monic-ish: leading coeff invertible rational)
std::vector<mpq_class> poly_mod(std::vector<mpq_class> a,
                                const std::vector<mpq_class>& b) {
    while (a.size() >= b.size()) {
        mpq_class c = a.back() / b.back();
        size_t shift = a.size() - b.size();
        for (size_t j = 0; j < b.size(); ++j) a[shift + j] -= c * b[j];
        poly_trim(a);
    }
    return a;
}

// ---- F_p polynomial helpers (coefficients in [0,p)) ----

long mod_pow(long b, long e, long p) {
    long r = 1 % p;
    b %= p;
    while (e > 0) {
        if (e & 1) r = (long)((__int128)r * b % p);
        b = (long)((__int128)b * b % p);
        e >>= 1;
    }
    return r;
}

long mod_inv(long a, long p) {
    long t = 0, newt = 1, r = p, newr = a % p;
    while (newr != 0) {
        long q = r / newr;
        long tmp = t - q * newt;
        t = newt;
        newt = tmp;
        tmp = r - q * newr;
        r = newr;
        newr = tmp;
    }
    if (r != 1) throw UsageError("not invertible mod p");
    return ((t % p) + p) % p;
}

void fpoly_trim(std::vector<long>& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

std::vector<long> fpoly_mul(const std::vector<long>& a,
                            const std::vector<long>& b, long p) {
    if (a.empty() || b.empty()) return {};
    std::vector<long> r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = (long)((r[i + j] + (__int128)a[i] * b[j]) % p);
    }
    fpoly_trim(r);
    return r;
}

std::vector<long> fpoly_mod(std::vector<long> a, const std::vector<long>& b,
                            long p) {
    long binv = mod_inv(b.back(), p);
    while (a.size() >= b.size()) {
        long c = (long)((__int128)a.back() * binv % p);
        size_t shift = a.size() - b.size();
        for (size_t j = 0; j < b.size(); ++j) {
            a[shift + j] = (long)(((a[shift + j] - (__int128)c * b[j]) % p + p) % p);
        }
        fpoly_trim(a);
    }
    return a;
}

bool fpoly_is_irreducible(const std::vector<long>& f, long p) {
    // trial division by every monic polynomial of lower degree >= 1
    long deg = (long)f.size() - 1;
    if (deg < 1) return false;
    for (long d = 1; 2 * d <= deg; ++d) {
        // enumerate monic degree-d polynomials
        std::vector<long> g(d + 1, 0);
        g[d] = 1;
        long count = 1;
        for (long i = 0; i < d; ++i) count *= p;
        for (long idx = 0; idx < count; ++idx) {
            long t = idx;
            for (long i = 0; i < d; ++i) {
                g[i] = t % p;
                t /= p;
            }
            if (fpoly_mod(f, g, p).empty()) return false;
        }
    }
    return true;
}

std::vector<long> first_irreducible(long p, long k) {
    // lexicographically first (c_0, c_1, ..., c_{k-1}) with leading coeff 1
    std::vector<long> f(k + 1, 0);
    f[k] = 1;
    long count = 1;
    for (long i = 0; i < k; ++i) {
        if (count > 100000000L / p) throw EnvironmentError("modulus search too large");
        count *= p;
    }
    for (long idx = 0; idx < count; ++idx) {
        long t = idx;
        for (long i = k - 1; i >= 0; --i) {
            f[i] = t % p;
            t /= p;
        }
        if (fpoly_is_irreducible(f, p)) return f;
    }
    throw EnvironmentError("no irreducible modulus found");
}

}  // namespace

bool is_prime(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

long euler_phi(long m) {
    long r = m;
    long n = m;
    for (long d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            r -= r / d;
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) r -= r / n;
    return r;
}

std::vector<mpq_class> cyclotomic_polynomial(long m) {
    // Phi_m = (z^m - 1) / prod_{d | m, d < m} Phi_d, filled bottom-up over
    // the divisors of m so each division sees its smaller factors already.
    static std::map<long, std::vector<mpq_class>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    for (long e = 1; e <= m; ++e) {
        if (m % e != 0 || cache.count(e)) continue;
        std::vector<mpq_class> num(e + 1, mpq_class(0));
        num[0] = -1;
        num[e] = 1;
        for (long d = 1; d < e; ++d)
            if (e % d == 0) num = poly_divexact(num, cache.at(d));
        cache[e] = std::move(num);
    }
    return cache.at(m);
}

long FieldSpec::degree() const {
    switch (kind) {
        case FieldKind::Rationals: return 1;
        case FieldKind::Cyclotomic: return (long)min_poly.size() - 1;
        case FieldKind::Finite: return k;
    }
    return 1;
}

bool FieldSpec::operator==(const FieldSpec& o) const {
    return kind == o.kind && m == o.m && p == o.p && k == o.k &&
           min_poly == o.min_poly;
}

Field make_rationals() {
    auto f = std::make_shared<FieldSpec>();
    f->kind = FieldKind::Rationals;
    return f;
}

Field make_cyclotomic(long m) {
    if (m < 2) throw UsageError("cyclotomic order must be >= 2");
    auto f = std::make_shared<FieldSpec>();
    f->kind = FieldKind::Cyclotomic;
    f->m = m;
    f->min_poly = cyclotomic_polynomial(m);
    return f;
}

Field make_finite(long p, long k) {
    if (!is_prime(p)) throw UsageError("finite field characteristic must be prime");
    if (k < 1) throw UsageError("extension degree must be positive");
    auto f = std::make_shared<FieldSpec>();
    f->kind = FieldKind::Finite;
    f->p = p;
    f->k = k;
    if (k > 1) {
        auto mod = first_irreducible(p, k);
        f->min_poly.assign(mod.begin(), mod.end());
    }
    return f;
}

Field make_finite_with_modulus(long p, const std::vector<long>& modulus) {
    if (!is_prime(p)) throw UsageError("finite field characteristic must be prime");
    if (modulus.size() < 2 || modulus.back() != 1)
        throw UsageError("modulus must be monic of degree >= 1");
    if (!fpoly_is_irreducible(modulus, p))
        throw UsageError("modulus is not irreducible");
    auto f = std::make_shared<FieldSpec>();
    f->kind = FieldKind::Finite;
    f->p = p;
    f->k = (long)modulus.size() - 1;
    f->min_poly.assign(modulus.begin(), modulus.end());
    return f;
}

// ---- Scalar ----

Scalar::Scalar(Field f, std::vector<mpq_class> coeffs)
    : f_(std::move(f)), c_(std::move(coeffs)) {
    canonicalize();
}

void Scalar::canonicalize() {
    long deg = f_->degree();
    switch (f_->kind) {
        case FieldKind::Rationals:
            c_.resize(1, mpq_class(0));
            c_[0].canonicalize();
            break;
        case FieldKind::Cyclotomic: {
            if ((long)c_.size() > deg) c_ = poly_mod(std::move(c_), f_->min_poly);
            c_.resize(deg, mpq_class(0));
            for (auto& x : c_) x.canonicalize();
            break;
        }
        case FieldKind::Finite: {
            long p = f_->p;
            // reduce rational entries mod p (denominators must be coprime to p)
            std::vector<long> v(c_.size());
            for (size_t i = 0; i < c_.size(); ++i) {
                mpz_class num = c_[i].get_num(), den = c_[i].get_den();
                long dn = (long)mpz_fdiv_ui(den.get_mpz_t(), (unsigned long)p);
                if (dn == 0) throw UsageError("denominator divisible by characteristic");
                long nn = (long)mpz_fdiv_ui(num.get_mpz_t(), (unsigned long)p);
                v[i] = (long)((__int128)nn * mod_inv(dn, p) % p);
            }
            if (f_->k > 1 && (long)v.size() > f_->k) {
                std::vector<long> mod(f_->min_poly.size());
                for (size_t i = 0; i < mod.size(); ++i)
                    mod[i] = (long)f_->min_poly[i].get_num().get_si();
                v = fpoly_mod(std::move(v), mod, p);
            }
            v.resize(deg, 0);
            c_.assign(deg, mpq_class(0));
            for (long i = 0; i < deg; ++i) c_[i] = v[i];
            break;
        }
    }
}

Scalar Scalar::zero(const Field& f) {
    return Scalar(f, std::vector<mpq_class>(f->degree(), mpq_class(0)));
}

Scalar Scalar::one(const Field& f) { return from_int(f, 1); }

Scalar Scalar::from_int(const Field& f, long v) {
    std::vector<mpq_class> c(f->degree(), mpq_class(0));
    c[0] = v;
    return Scalar(f, std::move(c));
}

Scalar Scalar::from_mpq(const Field& f, const mpq_class& v) {
    std::vector<mpq_class> c(f->degree(), mpq_class(0));
    c[0] = v;
    return Scalar(f, std::move(c));
}

Scalar Scalar::zeta_power(const Field& f, long e) {
    if (f->kind != FieldKind::Cyclotomic)
        throw UsageError("zeta_power requires a cyclotomic field");
    long m = f->m;
    e %= m;
    if (e < 0) e += m;
    std::vector<mpq_class> c(e + 1, mpq_class(0));
    c[e] = 1;
    return Scalar(f, std::move(c));
}

Scalar Scalar::generator(const Field& f) {
    if (f->kind != FieldKind::Finite || f->k < 2)
        throw UsageError("generator requires a proper extension field");
    std::vector<mpq_class> c(f->k, mpq_class(0));
    c[1] = 1;
    return Scalar(f, std::move(c));
}

bool Scalar::is_zero() const {
    for (const auto& x : c_)
        if (x != 0) return false;
    return true;
}

bool Scalar::is_one() const {
    if (c_.empty() || c_[0] != 1) return false;
    for (size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

bool Scalar::is_rational() const {
    for (size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

mpq_class Scalar::rational_value() const {
    if (!is_rational()) throw UsageError("scalar is not rational");
    return c_.empty() ? mpq_class(0) : c_[0];
}

void Scalar::check_same_field(const Scalar& a, const Scalar& b) {
    if (!a.f_ || !b.f_) throw UsageError("uninitialized scalar");
    if (a.f_ != b.f_ && !(*a.f_ == *b.f_))
        throw UsageError("scalar field mismatch");
}

Scalar Scalar::operator-() const {
    Scalar r(*this);
    if (f_->kind == FieldKind::Finite) {
        long p = f_->p;
        for (auto& x : r.c_) {
            long v = (long)x.get_num().get_si();
            x = v ? p - v : 0;
        }
    } else {
        for (auto& x : r.c_) x = -x;
    }
    return r;
}

Scalar Scalar::operator+(const Scalar& o) const {
    check_same_field(*this, o);
    Scalar r(*this);
    if (f_->kind == FieldKind::Finite) {
        long p = f_->p;
        for (size_t i = 0; i < r.c_.size(); ++i) {
            long v = (long)(r.c_[i].get_num().get_si() + o.c_[i].get_num().get_si());
            if (v >= p) v -= p;
            r.c_[i] = v;
        }
    } else {
        for (size_t i = 0; i < r.c_.size(); ++i) r.c_[i] += o.c_[i];
    }
    return r;
}

Scalar Scalar::operator-(const Scalar& o) const {
    check_same_field(*this, o);
    Scalar r(*this);
    if (f_->kind == FieldKind::Finite) {
        long p = f_->p;
        for (size_t i = 0; i < r.c_.size(); ++i) {
            long v = (long)(r.c_[i].get_num().get_si() - o.c_[i].get_num().get_si());
            if (v < 0) v += p;
            r.c_[i] = v;
        }
    } else {
        for (size_t i = 0; i < r.c_.size(); ++i) r.c_[i] -= o.c_[i];
    }
    return r;
}

Scalar Scalar::operator*(const Scalar& o) const {
    check_same_field(*this, o);
    switch (f_->kind) {
        case FieldKind::Rationals:
            return Scalar(f_, {c_[0] * o.c_[0]});
        case FieldKind::Cyclotomic: {
            auto prod = poly_mul(c_, o.c_);
            return Scalar(f_, std::move(prod));
        }
        case FieldKind::Finite: {
            long p = f_->p;
            std::vector<long> a(c_.size()), b(o.c_.size());
            for (size_t i = 0; i < a.size(); ++i) a[i] = (long)c_[i].get_num().get_si();
            for (size_t i = 0; i < b.size(); ++i) b[i] = (long)o.c_[i].get_num().get_si();
            auto prod = fpoly_mul(a, b, p);
            if (f_->k > 1) {
                std::vector<long> mod(f_->min_poly.size());
                for (size_t i = 0; i < mod.size(); ++i)
                    mod[i] = (long)f_->min_poly[i].get_num().get_si();
                prod = fpoly_mod(std::move(prod), mod, p);
            }
            std::vector<mpq_class> c(f_->degree(), mpq_class(0));
            for (size_t i = 0; i < prod.size(); ++i) c[i] = prod[i];
            Scalar r;
            r.f_ = f_;
            r.c_ = std::move(c);
            return r;
        }
    }
    throw UsageError("unreachable");
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw UsageError("division by zero");
    switch (f_->kind) {
        case FieldKind::Rationals:
            return Scalar(f_, {mpq_class(1) / c_[0]});
        case FieldKind::Cyclotomic: {
            // extended Euclid in QQ[z] against the minimal polynomial
            std::vector<mpq_class> r0 = f_->min_poly, r1 = c_;
            poly_trim(r1);
            std::vector<mpq_class> t0 = {}, t1 = {mpq_class(1)};
            while (!r1.empty()) {
                // quotient of r0 by r1
                std::vector<mpq_class> q;
                std::vector<mpq_class> rem = r0;
                q.assign(rem.size() >= r1.size() ? rem.size() - r1.size() + 1 : 0,
                         mpq_class(0));
                while (rem.size() >= r1.size() && !rem.empty()) {
                    mpq_class cq = rem.back() / r1.back();
                    size_t shift = rem.size() - r1.size();
                    q[shift] = cq;
                    for (size_t j = 0; j < r1.size(); ++j) rem[shift + j] -= cq * r1[j];
                    poly_trim(rem);
                }
                auto t2 = t0;
                auto qt1 = poly_mul(q, t1);
                if (t2.size() < qt1.size()) t2.resize(qt1.size(), mpq_class(0));
                for (size_t i = 0; i < qt1.size(); ++i) t2[i] -= qt1[i];
                poly_trim(t2);
                r0 = r1;
                r1 = rem;
                t0 = t1;
                t1 = t2;
            }
            if (r0.size() != 1)
                throw InvariantViolation("minimal polynomial not coprime to element");
            for (auto& x : t0) x /= r0[0];
            return Scalar(f_, std::move(t0));
        }
        case FieldKind::Finite: {
            long p = f_->p;
            if (f_->k == 1) {
                long v = (long)c_[0].get_num().get_si();
                return from_int(f_, mod_inv(v, p));
            }
            std::vector<long> mod(f_->min_poly.size());
            for (size_t i = 0; i < mod.size(); ++i)
                mod[i] = (long)f_->min_poly[i].get_num().get_si();
            std::vector<long> r0 = mod, r1(c_.size());
            for (size_t i = 0; i < c_.size(); ++i) r1[i] = (long)c_[i].get_num().get_si();
            fpoly_trim(r1);
            std::vector<long> t0 = {}, t1 = {1};
            while (!r1.empty()) {
                long linv = mod_inv(r1.back(), p);
                std::vector<long> rem = r0;
                std::vector<long> q(rem.size() >= r1.size() ? rem.size() - r1.size() + 1 : 0, 0);
                while (rem.size() >= r1.size() && !rem.empty()) {
                    long cq = (long)((__int128)rem.back() * linv % p);
                    size_t shift = rem.size() - r1.size();
                    q[shift] = cq;
                    for (size_t j = 0; j < r1.size(); ++j)
                        rem[shift + j] = (long)(((rem[shift + j] - (__int128)cq * r1[j]) % p + p) % p);
                    fpoly_trim(rem);
                }
                auto qt1 = fpoly_mul(q, t1, p);
                auto t2 = t0;
                if (t2.size() < qt1.size()) t2.resize(qt1.size(), 0);
                for (size_t i = 0; i < qt1.size(); ++i)
                    t2[i] = (long)(((t2[i] - qt1[i]) % p + p) % p);
                fpoly_trim(t2);
                r0 = r1;
                r1 = rem;
                t0 = t1;
                t1 = t2;
            }
            if (r0.size() != 1) throw InvariantViolation("modulus not coprime to element");
            long s = mod_inv(r0[0], p);
            std::vector<mpq_class> out(f_->k, mpq_class(0));
            for (size_t i = 0; i < t0.size(); ++i)
                out[i] = (long)((__int128)t0[i] * s % p);
            Scalar r;
            r.f_ = f_;
            r.c_ = std::move(out);
            return r;
        }
    }
    throw UsageError("unreachable");
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inverse(); }

bool Scalar::operator==(const Scalar& o) const {
    check_same_field(*this, o);
    return c_ == o.c_;
}

bool Scalar::operator<(const Scalar& o) const {
    check_same_field(*this, o);
    for (size_t i = 0; i < c_.size(); ++i) {
        int cmp = mpq_cmp(c_[i].get_mpq_t(), o.c_[i].get_mpq_t());
        if (cmp != 0) return cmp < 0;
    }
    return false;
}

std::string Scalar::to_string() const {
    const char* var = (f_->kind == FieldKind::Cyclotomic) ? "z" : "t";
    if (f_->kind == FieldKind::Rationals || f_->degree() == 1)
        return c_[0].get_str();
    std::ostringstream out;
    bool first = true;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        mpq_class v = c_[i];
        if (first) {
            if (v < 0) {
                out << "-";
                v = -v;
            }
        } else {
            out << (v < 0 ? " - " : " + ");
            if (v < 0) v = -v;
        }
        first = false;
        if (i == 0) {
            out << v.get_str();
        } else {
            if (v != 1) out << v.get_str() << "*";
            out << var;
            if (i > 1) out << "^" << i;
        }
    }
    if (first) out << "0";
    return out.str();
}

// ---- literal parser ----

namespace {

struct Cursor {
    const std::string& s;
    size_t i = 0;
    void skip() {
        while (i < s.size() && std::isspace((unsigned char)s[i])) ++i;
    }
    bool done() {
        skip();
        return i >= s.size();
    }
    char peek() {
        skip();
        return i < s.size() ? s[i] : '\0';
    }
    char take() {
        skip();
        return s[i++];
    }
};

mpq_class parse_rational(Cursor& c) {
    c.skip();
    size_t start = c.i;
    if (c.i < c.s.size() && (c.s[c.i] == '+' || c.s[c.i] == '-')) ++c.i;
    size_t digits = 0;
    while (c.i < c.s.size() && std::isdigit((unsigned char)c.s[c.i])) {
        ++c.i;
        ++digits;
    }
    if (digits == 0) throw UsageError("expected number at position " + std::to_string(start));
    mpz_class num(c.s.substr(start, c.i - start));
    c.skip();
    if (c.i < c.s.size() && c.s[c.i] == '/') {
        ++c.i;
        c.skip();
        size_t ds = c.i;
        while (c.i < c.s.size() && std::isdigit((unsigned char)c.s[c.i])) ++c.i;
        if (c.i == ds) throw UsageError("expected denominator at position " + std::to_string(ds));
        mpz_class den(c.s.substr(ds, c.i - ds));
        if (den == 0) throw UsageError("zero denominator");
        mpq_class q(num, den);
        q.canonicalize();
        return q;
    }
    return mpq_class(num);
}

}  // namespace

Scalar parse_scalar(const Field& f, const std::string& text) {
    char var = (f->kind == FieldKind::Cyclotomic) ? 'z' : 't';
    Cursor c{text};
    std::vector<mpq_class> coeffs;
    auto add_term = [&](const mpq_class& coef, long exp) {
        if ((long)coeffs.size() <= exp) coeffs.resize(exp + 1, mpq_class(0));
        coeffs[exp] += coef;
    };
    bool any = false;
    while (!c.done()) {
        int sign = 1;
        char ch = c.peek();
        if (ch == '+' || ch == '-') {
            c.take();
            if (ch == '-') sign = -1;
        } else if (any) {
            throw UsageError("expected '+' or '-' at position " + std::to_string(c.i));
        }
        c.skip();
        mpq_class coef(1);
        bool have_coef = false;
        if (c.i < c.s.size() && (std::isdigit((unsigned char)c.s[c.i]))) {
            coef = parse_rational(c);
            have_coef = true;
        }
        long exp = 0;
        c.skip();
        if (c.i < c.s.size() && (c.s[c.i] == '*' || c.s[c.i] == var)) {
            if (c.s[c.i] == '*') {
                ++c.i;
                c.skip();
            }
            if (c.i >= c.s.size() || c.s[c.i] != var)
                throw UsageError(std::string("expected variable '") + var + "'");
            ++c.i;
            exp = 1;
            c.skip();
            if (c.i < c.s.size() && c.s[c.i] == '^') {
                ++c.i;
                c.skip();
                size_t ds = c.i;
                while (c.i < c.s.size() && std::isdigit((unsigned char)c.s[c.i])) ++c.i;
                if (c.i == ds) throw UsageError("expected exponent");
                exp = std::stol(c.s.substr(ds, c.i - ds));
            }
        } else if (!have_coef) {
            throw UsageError("expected term at position " + std::to_string(c.i));
        }
        if (exp > 0 && f->kind == FieldKind::Rationals)
            throw UsageError("polynomial literal in a rational field");
        add_term(sign * coef, exp);
        any = true;
    }
    if (!any) throw UsageError("empty scalar literal");
    return Scalar(f, std::move(coeffs));
}

}  // namespace arrlab
