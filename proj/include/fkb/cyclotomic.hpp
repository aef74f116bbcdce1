#pragma once

// Exact arithmetic in cyclotomic rings Z[zeta_n] and their fraction fields.
//
// Elements are integer coordinate vectors in the power basis
// 1, zeta, ..., zeta^{phi(n)-1}, always reduced modulo the n-th cyclotomic
// polynomial, so equality is coordinate-wise comparison.  No floating point
// is used anywhere.

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fkb/bigint.hpp"
#include "fkb/errors.hpp"

namespace fkb {

namespace detail {

inline int euler_phi(int n) {
    int result = n;
    int m = n;
    for (int q = 2; q * q <= m; ++q) {
        if (m % q == 0) {
            while (m % q == 0) m /= q;
            result -= result / q;
        }
    }
    if (m > 1) result -= result / m;
    return result;
}

// polynomial helpers on ascending coefficient vectors
inline void poly_trim(std::vector<Int>& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline std::vector<Int> poly_mul(const std::vector<Int>& a, const std::vector<Int>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<Int> r(a.size() + b.size() - 1, Int(0));
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) {
            if (b[j] == 0) continue;
            r[i + j] += a[i] * b[j];
        }
    }
    return r;
}

// exact division of polynomials over Z (caller guarantees divisibility)
inline std::vector<Int> poly_div_exact(std::vector<Int> a, const std::vector<Int>& b) {
    poly_trim(a);
    if (a.empty()) return {};
    std::vector<Int> q(a.size() - b.size() + 1, Int(0));
    for (int i = static_cast<int>(a.size()) - 1; i >= static_cast<int>(b.size()) - 1; --i) {
        Int c = a[i] / b.back();
        int sh = i - static_cast<int>(b.size()) + 1;
        q[sh] = c;
        if (c != 0) {
            for (size_t j = 0; j < b.size(); ++j) a[sh + j] -= c * b[j];
        }
    }
    return q;
}

struct CycloData {
    int n = 0;
    int phi = 0;
    std::vector<Int> cyclo;  // Phi_n, monic, ascending, size phi+1
};

// Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d
inline std::shared_ptr<const CycloData> cyclo_data(int n) {
    static std::mutex mu;
    static std::map<int, std::shared_ptr<const CycloData>> cache;
    {
        std::scoped_lock lk(mu);
        auto it = cache.find(n);
        if (it != cache.end()) return it->second;
    }
    if (n < 1) throw RangeError("conductor must be positive");
    // compute Phi_d for all divisors d of n, bottom-up
    std::vector<int> divs;
    for (int d = 1; d <= n; ++d)
        if (n % d == 0) divs.push_back(d);
    std::map<int, std::vector<Int>> phis;
    for (int d : divs) {
        std::vector<Int> xd1(d + 1, Int(0));  // x^d - 1
        xd1[0] = -1;
        xd1[d] = 1;
        std::vector<Int> q = xd1;
        for (int e : divs) {
            if (e < d && d % e == 0) q = poly_div_exact(std::move(q), phis[e]);
        }
        poly_trim(q);
        phis[d] = std::move(q);
    }
    auto data = std::make_shared<CycloData>();
    data->n = n;
    data->phi = euler_phi(n);
    data->cyclo = phis[n];
    if (static_cast<int>(data->cyclo.size()) != data->phi + 1 || data->cyclo.back() != 1)
        throw std::logic_error("cyclotomic polynomial computation failed");
    std::scoped_lock lk(mu);
    auto [it, ok] = cache.emplace(n, data);
    return it->second;
}

// Bareiss fraction-free determinant, exact over Z
inline Int bareiss_det(std::vector<std::vector<Int>> m) {
    const size_t n = m.size();
    if (n == 0) return Int(1);
    Int prev(1);
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            size_t piv = k + 1;
            while (piv < n && m[piv][k] == 0) ++piv;
            if (piv == n) return Int(0);
            std::swap(m[k], m[piv]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j) {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    return sign > 0 ? m[n - 1][n - 1] : Int(-m[n - 1][n - 1]);
}

}  // namespace detail

class CycInt {
public:
    explicit CycInt(int conductor)
        : data_(detail::cyclo_data(conductor)), c_(data_->phi, Int(0)) {}

    static CycInt integer(int conductor, Int v) {
        CycInt r(conductor);
        if (r.c_.empty())
            throw RangeError("conductor 1 not supported");
        r.c_[0] = std::move(v);
        return r;
    }

    static CycInt zeta(int conductor, long power = 1) {
        std::vector<Int> p;
        long k = power % conductor;
        if (k < 0) k += conductor;
        p.resize(static_cast<size_t>(k) + 1, Int(0));
        p.back() = 1;
        return from_poly(conductor, std::move(p));
    }

    static CycInt from_poly(int conductor, std::vector<Int> coeffs) {
        CycInt r(conductor);
        r.reduce_assign(std::move(coeffs));
        return r;
    }

    int conductor() const { return data_->n; }
    int degree() const { return data_->phi; }
    const std::vector<Int>& coeffs() const { return c_; }

    bool is_zero() const {
        return std::all_of(c_.begin(), c_.end(), [](const Int& x) { return x == 0; });
    }

    friend bool operator==(const CycInt& a, const CycInt& b) {
        return a.conductor() == b.conductor() && a.c_ == b.c_;
    }
    friend bool operator!=(const CycInt& a, const CycInt& b) { return !(a == b); }

    friend CycInt operator+(const CycInt& a, const CycInt& b) {
        a.check_same(b);
        CycInt r = a;
        for (int i = 0; i < r.degree(); ++i) r.c_[i] += b.c_[i];
        return r;
    }
    friend CycInt operator-(const CycInt& a, const CycInt& b) {
        a.check_same(b);
        CycInt r = a;
        for (int i = 0; i < r.degree(); ++i) r.c_[i] -= b.c_[i];
        return r;
    }
    CycInt operator-() const {
        CycInt r = *this;
        for (auto& x : r.c_) x = -x;
        return r;
    }
    friend CycInt operator*(const CycInt& a, const CycInt& b) {
        a.check_same(b);
        CycInt r(a.conductor());
        r.reduce_assign(detail::poly_mul(a.c_, b.c_));
        return r;
    }
    CycInt& operator+=(const CycInt& b) { return *this = *this + b; }
    CycInt& operator-=(const CycInt& b) { return *this = *this - b; }
    CycInt& operator*=(const CycInt& b) { return *this = *this * b; }

    CycInt scaled(const Int& k) const {
        CycInt r = *this;
        for (auto& x : r.c_) x *= k;
        return r;
    }

    // multiply by zeta^k: exponent shift, then reduce
    CycInt mul_zeta_pow(long k) const {
        long kk = k % conductor();
        if (kk < 0) kk += conductor();
        if (kk == 0) return *this;
        std::vector<Int> p(c_.size() + static_cast<size_t>(kk), Int(0));
        for (size_t i = 0; i < c_.size(); ++i) p[i + kk] = c_[i];
        return from_poly(conductor(), std::move(p));
    }

    // the ring automorphism zeta -> zeta^t, gcd(t, n) = 1
    CycInt galois(long t) const {
        const int n = conductor();
        long tt = t % n;
        if (tt < 0) tt += n;
        if (std::gcd(tt, static_cast<long>(n)) != 1)
            throw RangeError("galois exponent not coprime to conductor");
        std::vector<Int> p(static_cast<size_t>(n), Int(0));
        for (size_t j = 0; j < c_.size(); ++j) {
            if (c_[j] == 0) continue;
            p[(j * tt) % n] += c_[j];
        }
        return from_poly(n, std::move(p));
    }

    CycInt conj() const { return galois(conductor() - 1); }

    // evaluation at zeta -> 1 (image in Z under the augmentation map)
    Int augmentation() const {
        Int s(0);
        for (const auto& x : c_) s += x;
        return s;
    }

    // absolute field norm, computed as |Res(Phi_n, a(x))| (Sylvester/Bareiss)
    Int norm() const {
        std::vector<Int> a(c_);
        detail::poly_trim(a);
        if (a.empty()) return Int(0);
        const auto& f = data_->cyclo;
        const int df = data_->phi;
        const int dg = static_cast<int>(a.size()) - 1;
        if (dg == 0) {
            Int r(1);
            for (int i = 0; i < df; ++i) r *= a[0];
            return abs_int(r);
        }
        const int N = df + dg;
        std::vector<std::vector<Int>> m(N, std::vector<Int>(N, Int(0)));
        for (int r = 0; r < dg; ++r)
            for (int j = 0; j <= df; ++j) m[r][r + j] = f[df - j];
        for (int r = 0; r < df; ++r)
            for (int j = 0; j <= dg; ++j) m[dg + r][r + j] = a[dg - j];
        return abs_int(detail::bareiss_det(std::move(m)));
    }

    // independent route: product of all Galois conjugates
    Int norm_via_galois() const {
        const int n = conductor();
        CycInt prod = integer(n, 1);
        for (int t = 1; t < n; ++t) {
            if (std::gcd(t, n) != 1) continue;
            prod *= galois(t);
        }
        for (size_t i = 1; i < prod.c_.size(); ++i)
            if (prod.c_[i] != 0) throw std::logic_error("galois norm not rational");
        return abs_int(prod.c_[0]);
    }

    bool is_unit() const { return norm() == 1; }

    // inclusion Z[zeta_m] -> Z[zeta_n] for m | n
    CycInt embed(int new_conductor) const {
        const int m = conductor();
        if (new_conductor == m) return *this;
        if (new_conductor % m != 0)
            throw RangeError("embed: old conductor must divide new conductor");
        const int step = new_conductor / m;
        std::vector<Int> p(static_cast<size_t>(m) * step, Int(0));
        for (size_t j = 0; j < c_.size(); ++j) p[j * step] = c_[j];
        return from_poly(new_conductor, std::move(p));
    }

    std::string str() const;
    static CycInt parse(int conductor, std::string_view text);

private:
    void check_same(const CycInt& b) const {
        if (conductor() != b.conductor())
            throw RangeError("conductor mismatch: " + std::to_string(conductor()) +
                             " vs " + std::to_string(b.conductor()));
    }

    void reduce_assign(std::vector<Int> p) {
        const auto& f = data_->cyclo;
        const int df = data_->phi;
        for (int i = static_cast<int>(p.size()) - 1; i >= df; --i) {
            if (p[i] == 0) continue;
            Int c = std::move(p[i]);
            p[i] = 0;
            for (int j = 0; j < df; ++j) p[i - df + j] -= c * f[j];
        }
        p.resize(df, Int(0));
        c_ = std::move(p);
    }

    std::shared_ptr<const detail::CycloData> data_;
    std::vector<Int> c_;
};

// ---------------------------------------------------------------------------
// rendering and parsing: integer polynomials in "z"

inline std::string CycInt::str() const {
    std::string out;
    for (size_t j = 0; j < c_.size(); ++j) {
        if (c_[j] == 0) continue;
        Int a = c_[j];
        if (out.empty()) {
            if (a < 0) { out += "-"; a = -a; }
        } else {
            out += (a < 0) ? " - " : " + ";
            if (a < 0) a = -a;
        }
        const bool unit_coeff = (a == 1) && j > 0;
        if (!unit_coeff) out += a.str();
        if (j > 0) {
            if (!unit_coeff) out += "*";
            out += "z";
            if (j > 1) out += "^" + std::to_string(j);
        }
    }
    return out.empty() ? "0" : out;
}

inline CycInt CycInt::parse(int conductor, std::string_view text) {
    std::vector<Int> p;
    size_t i = 0;
    auto skip_ws = [&] { while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i; };
    auto add_term = [&](const Int& coeff, long power) {
        if (power < 0) throw ParseError("negative power");
        if (p.size() <= static_cast<size_t>(power)) p.resize(power + 1, Int(0));
        p[power] += coeff;
    };
    skip_ws();
    bool first = true;
    while (i < text.size()) {
        int sign = 1;
        skip_ws();
        if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
            sign = text[i] == '-' ? -1 : 1;
            ++i;
            skip_ws();
        } else if (!first) {
            throw ParseError("expected '+' or '-' between terms");
        }
        first = false;
        Int coeff(1);
        bool saw_number = false;
        if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            size_t j = i;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
            coeff = Int(std::string(text.substr(i, j - i)));
            i = j;
            saw_number = true;
        }
        skip_ws();
        if (i < text.size() && text[i] == '*') {
            ++i;
            skip_ws();
        }
        long power = 0;
        if (i < text.size() && text[i] == 'z') {
            ++i;
            power = 1;
            if (i < text.size() && text[i] == '^') {
                ++i;
                size_t j = i;
                while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
                if (j == i) throw ParseError("missing exponent");
                power = std::stol(std::string(text.substr(i, j - i)));
                i = j;
            }
        } else if (!saw_number) {
            throw ParseError("expected coefficient or 'z' at position " + std::to_string(i));
        }
        add_term(sign > 0 ? coeff : Int(-coeff), power);
        skip_ws();
    }
    if (first) throw ParseError("empty polynomial");
    return from_poly(conductor, std::move(p));
}

// ---------------------------------------------------------------------------
// fractions: CycInt numerator over a positive rational integer denominator

class CycFrac {
public:
    explicit CycFrac(CycInt num, Int den = Int(1)) : num_(std::move(num)), den_(std::move(den)) {
        if (den_ == 0) throw RangeError("zero denominator");
        if (den_ < 0) {
            den_ = -den_;
            num_ = -num_;
        }
        normalize();
    }

    static CycFrac zero(int conductor) { return CycFrac(CycInt(conductor)); }
    static CycFrac one(int conductor) { return CycFrac(CycInt::integer(conductor, 1)); }

    const CycInt& num() const { return num_; }
    const Int& den() const { return den_; }
    int conductor() const { return num_.conductor(); }
    bool is_zero() const { return num_.is_zero(); }

    friend bool operator==(const CycFrac& a, const CycFrac& b) {
        return a.num_.scaled(b.den_) == b.num_.scaled(a.den_);
    }
    friend bool operator!=(const CycFrac& a, const CycFrac& b) { return !(a == b); }

    friend CycFrac operator+(const CycFrac& a, const CycFrac& b) {
        return CycFrac(a.num_.scaled(b.den_) + b.num_.scaled(a.den_), a.den_ * b.den_);
    }
    friend CycFrac operator-(const CycFrac& a, const CycFrac& b) {
        return CycFrac(a.num_.scaled(b.den_) - b.num_.scaled(a.den_), a.den_ * b.den_);
    }
    friend CycFrac operator*(const CycFrac& a, const CycFrac& b) {
        return CycFrac(a.num_ * b.num_, a.den_ * b.den_);
    }
    CycFrac operator-() const { return CycFrac(-num_, den_); }
    CycFrac& operator+=(const CycFrac& b) { return *this = *this + b; }
    CycFrac& operator-=(const CycFrac& b) { return *this = *this - b; }
    CycFrac& operator*=(const CycFrac& b) { return *this = *this * b; }

    CycFrac mul_zeta_pow(long k) const { return CycFrac(num_.mul_zeta_pow(k), den_); }

    // 1/x: clear the cyclotomic denominator with the product of conjugates
    CycFrac inverse() const {
        if (is_zero()) throw RangeError("division by zero");
        const int n = conductor();
        CycInt cof = CycInt::integer(n, 1);
        for (int t = 2; t < n; ++t) {
            if (std::gcd(t, n) != 1) continue;
            cof *= num_.galois(t);
        }
        CycInt prod = num_ * cof;  // = +-Norm(num), a rational integer
        for (size_t i = 1; i < prod.coeffs().size(); ++i)
            if (prod.coeffs()[i] != 0)
                throw std::logic_error("conjugate product not rational");
        Int nrm = prod.coeffs()[0];
        return CycFrac(cof.scaled(den_), std::move(nrm));
    }

    friend CycFrac operator/(const CycFrac& a, const CycFrac& b) { return a * b.inverse(); }

    CycFrac pow(long e) const {
        if (e < 0) return inverse().pow(-e);
        CycFrac r = one(conductor());
        CycFrac base = *this;
        while (e > 0) {
            if (e & 1) r *= base;
            base *= base;
            e >>= 1;
        }
        return r;
    }

    bool is_integral() const { return den_ == 1; }

    // extract the CycInt value, failing loudly if a denominator survived
    CycInt to_integral(const char* what = "value") const {
        if (den_ != 1)
            throw IntegralityError(std::string(what) + " is not an algebraic integer: den = " + den_.str());
        return num_;
    }

    std::string str() const {
        if (den_ == 1) return num_.str();
        return "(" + num_.str() + ")/" + den_.str();
    }

private:
    void normalize() {
        if (num_.is_zero()) {
            den_ = 1;
            return;
        }
        Int g = den_;
        for (const auto& x : num_.coeffs()) {
            g = gcd_int(g, x);
            if (g == 1) return;
        }
        if (g > 1) {
            std::vector<Int> c = num_.coeffs();
            for (auto& x : c) x /= g;
            num_ = CycInt::from_poly(num_.conductor(), std::move(c));
            den_ /= g;
        }
    }

    CycInt num_;
    Int den_;
};

// ---------------------------------------------------------------------------
// quantum integers, h-adic valuation, Gauss sums, i-decomposition

// [m] = (zeta^m - zeta^-m)/(zeta - zeta^-1) in Z[zeta_p]
inline CycInt quantum_int(int p, long m) {
    if (m < 0) return -quantum_int(p, -m);
    CycInt r(p);
    for (long j = 0; j < m; ++j) r += CycInt::zeta(p, m - 1 - 2 * j);
    return r;
}

namespace detail {

// cofactor P with (1 - zeta_p) * P = p; used for exact division by h
inline CycInt h_cofactor(int p) {
    CycInt cof = CycInt::integer(p, 1);
    CycInt one = CycInt::integer(p, 1);
    for (int t = 2; t < p; ++t) cof *= (one - CycInt::zeta(p, t));
    return cof;
}

}  // namespace detail

// exact division by h = 1 - zeta_p; nullopt if h does not divide a
inline std::optional<CycInt> divide_h(const CycInt& a, int p) {
    if (a.conductor() != p) throw RangeError("divide_h: conductor must be p");
    if (a.augmentation() % p != 0) return std::nullopt;
    static std::mutex mu;
    static std::map<int, CycInt> cache;
    CycInt cof(p);
    {
        std::scoped_lock lk(mu);
        auto it = cache.find(p);
        if (it == cache.end()) it = cache.emplace(p, detail::h_cofactor(p)).first;
        cof = it->second;
    }
    CycInt prod = a * cof;
    std::vector<Int> c = prod.coeffs();
    for (auto& x : c) {
        if (x % p != 0) return std::nullopt;
        x /= p;
    }
    return CycInt::from_poly(p, std::move(c));
}

// h-adic valuation; nullopt encodes +infinity (the zero element)
inline std::optional<long> nu_h(CycInt a, int p) {
    if (a.is_zero()) return std::nullopt;
    long v = 0;
    while (true) {
        auto q = divide_h(a, p);
        if (!q) return v;
        a = std::move(*q);
        ++v;
    }
}

struct GaussPair {
    CycInt g;             // sum of zeta_p^{a^2}, conductor p
    CycInt sqrt_minus_p;  // a square root of -p (conductor p or 4p)
    int p = 0;
    std::string convention;  // records which root was chosen
};

inline GaussPair gauss_sum(int p) {
    if (p < 5) throw RangeError("gauss_sum: need prime p >= 5");
    CycInt g(p);
    for (long a = 0; a < p; ++a) g += CycInt::zeta(p, (a * a) % p);
    GaussPair out;
    out.p = p;
    out.g = g;
    if (p % 4 == 3) {
        out.sqrt_minus_p = g;
        out.convention = "g";
    } else {
        // g^2 = +p here; i*g squares to -p, taken in Z[zeta_{4p}]
        CycInt i4p = CycInt::zeta(4 * p, p);
        out.sqrt_minus_p = i4p * g.embed(4 * p);
        out.convention = "i*g";
    }
    return out;
}

// Z[zeta_{4p}] = Z[zeta_p] + i Z[zeta_p]: split off the two parts.
inline std::pair<CycInt, CycInt> i_decompose(const CycInt& a, int p) {
    const int n = 4 * p;
    if (a.conductor() != n) throw RangeError("i_decompose: conductor must be 4p");
    // zeta_{4p}^j = i^{j v} zeta_p^{j u} with 4u + pv = 1
    long u = 0, v = 0;
    for (long cand = 0; cand < p; ++cand) {
        if ((4 * cand) % p == 1 % p) { u = cand; break; }
    }
    v = (1 - 4 * u) / p;
    std::vector<Int> re(static_cast<size_t>(p), Int(0)), im(static_cast<size_t>(p), Int(0));
    const auto& c = a.coeffs();
    for (size_t j = 0; j < c.size(); ++j) {
        if (c[j] == 0) continue;
        long r = static_cast<long>((j * u) % p);
        long s = static_cast<long>(((j % 4) * (((v % 4) + 4) % 4)) % 4);
        switch (s) {
            case 0: re[r] += c[j]; break;
            case 1: im[r] += c[j]; break;
            case 2: re[r] -= c[j]; break;
            case 3: im[r] -= c[j]; break;
        }
    }
    return {CycInt::from_poly(p, std::move(re)), CycInt::from_poly(p, std::move(im))};
}

// inverse of i_decompose
inline CycInt i_recompose(const CycInt& re, const CycInt& im, int p) {
    CycInt i4p = CycInt::zeta(4 * p, p);
    return re.embed(4 * p) + i4p * im.embed(4 * p);
}

}  // namespace fkb
