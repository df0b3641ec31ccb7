#include "vdc/nt_utils.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

namespace vdc::nt {

using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) {
    return static_cast<u64>((u128(a) * b) % m);
}

u64 powmod(u64 a, u64 e, u64 m) {
    if (m == 1) return 0;
    u64 r = 1;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

u64 gcd_u64(u64 a, u64 b) {
    while (b) {
        a %= b;
        std::swap(a, b);
    }
    return a;
}

u64 invmod(u64 a, u64 m) {
    i64 t = 0, nt = 1;
    i64 r = static_cast<i64>(m), nr = static_cast<i64>(a % m);
    while (nr != 0) {
        i64 q = r / nr;
        std::swap(t -= q * nt, nt);
        std::swap(r -= q * nr, nr);
    }
    if (r != 1) throw std::domain_error("invmod: arguments not coprime");
    return static_cast<u64>(t < 0 ? t + static_cast<i64>(m) : t);
}

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

cplx unit_root(i64 a, u64 q) {
    i64 r = a % static_cast<i64>(q);
    if (r < 0) r += static_cast<i64>(q);
    double t = 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(q);
    return {std::cos(t), std::sin(t)};
}

std::vector<cplx> unit_root_table(u64 q) {
    std::vector<cplx> tab(q);
    for (u64 j = 0; j < q; ++j) {
        double t = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(q);
        tab[j] = {std::cos(t), std::sin(t)};
    }
    return tab;
}

u64 Factorization::value() const {
    u64 n = 1;
    for (auto [p, e] : pairs)
        for (int i = 0; i < e; ++i) n *= p;
    return n;
}

bool Factorization::contains(u64 p) const {
    for (auto [q, e] : pairs)
        if (q == p) return true;
    return false;
}

namespace {

u64 pollard_rho(u64 n) {
    if ((n & 1) == 0) return 2;
    std::mt19937_64 rng(0x9e3779b97f4a7c15ull ^ n);
    while (true) {
        u64 c = rng() % n;
        u64 x = rng() % n, y = x, d = 1;
        auto f = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
        while (d == 1) {
            x = f(x);
            y = f(f(y));
            d = gcd_u64(x > y ? x - y : y - x, n);
        }
        if (d != n) return d;
    }
}

void factor_rec(u64 n, std::vector<u64>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        out.push_back(n);
        return;
    }
    u64 d = pollard_rho(n);
    factor_rec(d, out);
    factor_rec(n / d, out);
}

}  // namespace

Factorization factorize(u64 n) {
    Factorization f;
    if (n == 0) throw std::domain_error("factorize: n must be positive");
    std::vector<u64> primes;
    for (u64 p = 2; p * p <= n && p < 1000000; p += (p == 2 ? 1 : 2)) {
        while (n % p == 0) {
            primes.push_back(p);
            n /= p;
        }
    }
    if (n > 1) factor_rec(n, primes);
    std::sort(primes.begin(), primes.end());
    for (u64 p : primes) {
        if (!f.pairs.empty() && f.pairs.back().first == p)
            ++f.pairs.back().second;
        else
            f.pairs.push_back({p, 1});
    }
    return f;
}

int omega(u64 n) { return static_cast<int>(factorize(n).pairs.size()); }

u64 tau(u64 n) {
    u64 t = 1;
    for (auto [p, e] : factorize(n).pairs) t *= static_cast<u64>(e + 1);
    return t;
}

u64 tau_k(u64 n, int k) {
    // binomial(e+k-1, k-1) per prime power
    u64 t = 1;
    for (auto [p, e] : factorize(n).pairs) {
        u64 b = 1;
        for (int i = 1; i <= e; ++i) b = b * static_cast<u64>(k - 1 + i) / static_cast<u64>(i);
        t *= b;
    }
    return t;
}

std::pair<u64, u64> split_flat_sharp(u64 n) {
    u64 flat = 1, sharp = 1;
    for (auto [p, e] : factorize(n).pairs) {
        u64 pe = 1;
        for (int i = 0; i < e; ++i) pe *= p;
        (e == 1 ? flat : sharp) *= pe;
    }
    return {flat, sharp};
}

u64 xi(u64 n) {
    u64 x = 1;
    for (auto [p, e] : factorize(n).pairs) {
        if (e >= 4) {
            u64 pe = 1;
            for (int i = 0; i < e; ++i) pe *= p;
            x *= pe;
        }
    }
    return x;
}

u64 d_infinity(u64 d, u64 r) {
    u64 out = 1;
    u64 g = gcd_u64(d, r);
    while (g > 1) {
        out *= g;
        d /= g;
        g = gcd_u64(d, g);
    }
    return out;
}

u64 c_ddagger(const Factorization& f) {
    u64 c = 1;
    for (auto [p, e] : f.pairs)
        if (e == 2 || e == 3) c *= p;
    return c;
}

u64 smallest_primitive_root(u64 p) {
    if (p == 2) return 1;
    auto fac = factorize(p - 1);
    for (u64 g = 2; g < p; ++g) {
        bool ok = true;
        for (auto [q, e] : fac.pairs) {
            if (powmod(g, (p - 1) / q, p) == 1) {
                ok = false;
                break;
            }
        }
        if (ok) return g;
    }
    throw std::logic_error("no primitive root found");
}

std::vector<u32> index_table(u64 p) {
    std::vector<u32> ind(p, static_cast<u32>(p - 1));
    u64 g = smallest_primitive_root(p);
    u64 x = 1;
    for (u64 j = 0; j < p - 1; ++j) {
        ind[x] = static_cast<u32>(j);
        x = mulmod(x, g, p);
    }
    return ind;
}

std::vector<u64> sqrt_minus_one(u64 p) {
    if (p == 2) return {1};
    if (p % 4 == 3) return {};
    u64 g = smallest_primitive_root(p);
    u64 r = powmod(g, (p - 1) / 4, p);
    if (mulmod(r, r, p) != p - 1) throw std::logic_error("sqrt_minus_one: bad root");
    u64 r2 = p - r;
    return r < r2 ? std::vector<u64>{r, r2} : std::vector<u64>{r2, r};
}

// ---- polynomials -------------------------------------------------------

PolyZ::PolyZ(std::initializer_list<i64> coeffs) : c(coeffs) {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

PolyZ::PolyZ(std::vector<i64> coeffs) : c(std::move(coeffs)) {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

int PolyZ::degree() const { return static_cast<int>(c.size()) - 1; }

u64 PolyZ::eval_mod(u64 x, u64 m) const {
    u64 acc = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        acc = mulmod(acc, x, m);
        i64 v = *it % static_cast<i64>(m);
        if (v < 0) v += static_cast<i64>(m);
        acc = (acc + static_cast<u64>(v)) % m;
    }
    return acc;
}

PolyZ PolyZ::derivative() const {
    std::vector<i64> d;
    for (size_t i = 1; i < c.size(); ++i) d.push_back(c[i] * static_cast<i64>(i));
    return PolyZ(std::move(d));
}

PolyZ PolyZ::operator*(const PolyZ& rhs) const {
    if (is_zero() || rhs.is_zero()) return {};
    std::vector<i64> out(c.size() + rhs.c.size() - 1, 0);
    for (size_t i = 0; i < c.size(); ++i)
        for (size_t j = 0; j < rhs.c.size(); ++j) out[i + j] += c[i] * rhs.c[j];
    return PolyZ(std::move(out));
}

PolyZ PolyZ::operator-(const PolyZ& rhs) const {
    std::vector<i64> out(std::max(c.size(), rhs.c.size()), 0);
    for (size_t i = 0; i < c.size(); ++i) out[i] += c[i];
    for (size_t i = 0; i < rhs.c.size(); ++i) out[i] -= rhs.c[i];
    return PolyZ(std::move(out));
}

std::string PolyZ::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    for (size_t i = 0; i < c.size(); ++i) {
        if (i) os << ",";
        os << c[i];
    }
    return os.str();
}

int poly_gcd_degree(const PolyZ& a, const PolyZ& b) {
    std::vector<Rat> f, g;
    for (i64 v : a.c) f.emplace_back(v);
    for (i64 v : b.c) g.emplace_back(v);
    auto deg = [](const std::vector<Rat>& p) { return static_cast<int>(p.size()) - 1; };
    auto trim = [](std::vector<Rat>& p) {
        while (!p.empty() && p.back() == 0) p.pop_back();
    };
    trim(f);
    trim(g);
    if (f.empty()) return deg(g);
    if (g.empty()) return deg(f);
    while (!g.empty()) {
        // f mod g
        while (deg(f) >= deg(g) && !f.empty()) {
            Rat q = f.back() / g.back();
            int shift = deg(f) - deg(g);
            for (size_t i = 0; i < g.size(); ++i) f[i + shift] -= q * g[i];
            trim(f);
            if (f.empty()) break;
        }
        std::swap(f, g);
        trim(g);
    }
    return deg(f);
}

bool constant_reduction_mod_p(const PolyZ& f1, const PolyZ& f2, u64 p) {
    auto red = [&](const PolyZ& f) {
        std::vector<u64> r;
        for (i64 v : f.c) {
            i64 m = v % static_cast<i64>(p);
            if (m < 0) m += static_cast<i64>(p);
            r.push_back(static_cast<u64>(m));
        }
        while (!r.empty() && r.back() == 0) r.pop_back();
        return r;
    };
    auto a = red(f1), b = red(f2);
    if (b.empty()) return false;  // denominator vanishes identically: everything excluded
    if (a.empty()) return true;   // f1 = 0 mod p
    if (a.size() != b.size()) return false;
    u64 c = mulmod(a.back(), invmod(b.back(), p), p);
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] != mulmod(c, b[i], p)) return false;
    return true;
}

// ---- averaged checks -----------------------------------------------------

GcdAverageCheck gcd_average_check(u64 x, u64 q) {
    GcdAverageCheck r;
    r.x = x;
    r.q = q;
    u64 s = 0;
    for (u64 n = 1; n <= x; ++n) s += gcd_u64(n, q);
    r.lhs = s;
    r.rhs = tau(q) * x;
    r.pass = r.lhs <= r.rhs;
    return r;
}

SharpAverageCheck avg_sharp_check(u64 x, double t, bool use_xi) {
    // smallest-prime-factor sieve, then accumulate (n_sharp)^t or Xi(n)^t
    std::vector<u32> spf(x + 1, 0);
    for (u64 i = 2; i <= x; ++i) {
        if (spf[i] == 0) {
            for (u64 j = i; j <= x; j += i)
                if (spf[j] == 0) spf[j] = static_cast<u32>(i);
        }
    }
    SharpAverageCheck out;
    double acc = 1.0;  // n = 1 contributes 1
    u64 checkpoint = 1000;
    for (u64 n = 2; n <= x; ++n) {
        u64 m = n, part = 1;
        while (m > 1) {
            u64 p = spf[m];
            int e = 0;
            while (m % p == 0) {
                m /= p;
                ++e;
            }
            u64 pe = 1;
            for (int i = 0; i < e; ++i) pe *= p;
            if (use_xi ? (e >= 4) : (e >= 2)) part *= pe;
        }
        acc += std::pow(static_cast<double>(part), t);
        if (n == checkpoint || n == x) {
            double ratio = acc / (static_cast<double>(n) * std::log(static_cast<double>(n)));
            out.curve.push_back({n, ratio});
            out.max_ratio = std::max(out.max_ratio, ratio);
            checkpoint *= 10;
        }
    }
    out.pass = out.max_ratio < 10.0;
    return out;
}

std::vector<cplx> normalized_dft(const std::vector<cplx>& f, int sign) {
    u64 q = f.size();
    auto tab = unit_root_table(q);
    std::vector<cplx> out(q);
    double norm = 1.0 / std::sqrt(static_cast<double>(q));
    for (u64 y = 0; y < q; ++y) {
        cplx s = 0;
        for (u64 x = 0; x < q; ++x) {
            u64 idx = (x * y) % q;
            cplx w = tab[idx];
            if (sign < 0) w = std::conj(w);
            s += f[x] * w;
        }
        out[y] = s * norm;
    }
    return out;
}

UncertaintyCheck uncertainty_check(const std::vector<cplx>& values) {
    if (values.empty()) throw std::invalid_argument("uncertainty_check: empty input");
    double mx = 0;
    for (const auto& v : values) mx = std::max(mx, std::abs(v));
    if (mx == 0) throw std::invalid_argument("uncertainty_check: zero input");
    auto hat = normalized_dft(values, -1);
    double mxh = 0;
    for (const auto& v : hat) mxh = std::max(mxh, std::abs(v));
    UncertaintyCheck r;
    for (const auto& v : values)
        if (std::abs(v) > 1e-9 * mx) ++r.support_f;
    for (const auto& v : hat)
        if (std::abs(v) > 1e-9 * mxh) ++r.support_fhat;
    r.product = r.support_f * r.support_fhat;
    r.pass = r.product >= values.size();
    return r;
}

}  // namespace vdc::nt
