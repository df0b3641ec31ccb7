#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vdc/rational.hpp"

namespace vdc::nt {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;
using cplx = std::complex<double>;

// ---- modular kernels -------------------------------------------------

// a*b mod m, widening through __int128; valid for m < 2^63.
u64 mulmod(u64 a, u64 b, u64 m);
u64 powmod(u64 a, u64 e, u64 m);
u64 gcd_u64(u64 a, u64 b);
// Inverse of a mod m; throws std::domain_error unless gcd(a, m) = 1.
u64 invmod(u64 a, u64 m);
bool is_prime(u64 n);  // deterministic Miller-Rabin for n < 3.3e24

// e(a/q) from the reduced residue a mod q; exact argument reduction.
cplx unit_root(i64 a, u64 q);
// Table of e(j/q), j = 0..q-1.
std::vector<cplx> unit_root_table(u64 q);

// ---- factorization ---------------------------------------------------

struct Factorization {
    std::vector<std::pair<u64, int>> pairs;  // ascending primes

    u64 value() const;
    bool contains(u64 p) const;
};

// Trial division to 1e6, then Miller-Rabin + Pollard rho for the cofactor.
Factorization factorize(u64 n);

int omega(u64 n);
u64 tau(u64 n);
u64 tau_k(u64 n, int k);

// n = flat * sharp with flat squarefree, sharp squarefull, coprime.
std::pair<u64, u64> split_flat_sharp(u64 n);
// Product of prime powers p^v || n with v >= 4.
u64 xi(u64 n);
// Largest divisor of d supported on the primes of r (iterated gcd stripping).
u64 d_infinity(u64 d, u64 r);
// prod_{p^2 || c} p * prod_{p^3 || c} p.
u64 c_ddagger(const Factorization& f);

u64 smallest_primitive_root(u64 p);
// Discrete log base smallest primitive root: ind[g^j] = j, ind[0] = p-1 (sentinel).
std::vector<u32> index_table(u64 p);
// Solutions of x^2 + 1 = 0 mod p for odd prime p (empty if p = 3 mod 4).
std::vector<u64> sqrt_minus_one(u64 p);

// ---- integer polynomials ---------------------------------------------

// Integer-coefficient polynomial, ascending coefficients; trailing zeros trimmed.
struct PolyZ {
    std::vector<i64> c;

    PolyZ() = default;
    PolyZ(std::initializer_list<i64> coeffs);
    explicit PolyZ(std::vector<i64> coeffs);

    int degree() const;  // -1 for the zero polynomial
    bool is_zero() const { return c.empty(); }
    u64 eval_mod(u64 x, u64 m) const;  // Horner
    PolyZ derivative() const;
    PolyZ operator*(const PolyZ& rhs) const;
    PolyZ operator-(const PolyZ& rhs) const;
    std::string str() const;
};

// gcd degree over Q (pseudo-remainder Euclid); 0 means coprime.
int poly_gcd_degree(const PolyZ& a, const PolyZ& b);
// True if f1 = c*f2 mod p for some constant c (the reduction is a constant
// function wherever defined); such pairs fall outside the Weil-type bounds.
bool constant_reduction_mod_p(const PolyZ& f1, const PolyZ& f2, u64 p);

// ---- averaged checks ---------------------------------------------------

struct GcdAverageCheck {
    u64 x = 0, q = 0;
    u64 lhs = 0, rhs = 0;
    bool pass = false;
};
// Sum_{n<=x} gcd(n,q) <= tau(q) x, exact integers.
GcdAverageCheck gcd_average_check(u64 x, u64 q);

struct SharpAverageCheck {
    struct Point {
        u64 x;
        double ratio;
    };
    std::vector<Point> curve;
    double max_ratio = 0;
    bool pass = false;
};
// Sum_{n<=x} (n_sharp)^t / (x log x) at logarithmic checkpoints, bounded by 10.
// With use_xi, checks Xi(n)^t instead (t <= 3/4).
SharpAverageCheck avg_sharp_check(u64 x, double t, bool use_xi = false);

// ---- Fourier ----------------------------------------------------------

// q^{-1/2} sum_x f(x) e(sign * xy / q).
std::vector<cplx> normalized_dft(const std::vector<cplx>& f, int sign);

struct UncertaintyCheck {
    u64 support_f = 0, support_fhat = 0;
    u64 product = 0;
    bool pass = false;  // product >= q
};
// Donoho-Stark support product; entries below 1e-9 * max modulus count as zero.
UncertaintyCheck uncertainty_check(const std::vector<cplx>& values);

struct PoissonCheck {
    double lhs = 0;
    cplx rhs;
    double diff = 0;
    double tail_bound = 0;
    bool pass = false;
};

}  // namespace vdc::nt

namespace vdc::nt {

// ---- smooth windows ----------------------------------------------------

enum class WindowId { Bump, Plateau };

// Compactly supported weight on [1,2]: a C-infinity bump or a C^2
// polynomial-smoothed plateau. hat() is the real-line Fourier transform
// by panel Gauss-Legendre quadrature; envelope() dominates |hat| and
// tail_sum() bounds sum_{|h|>H} |hat(h*s)| using it.
class Window {
public:
    explicit Window(WindowId id);

    WindowId id() const { return id_; }
    double value(double x) const;
    cplx hat_c(double y) const;
    double hat(double y) const { return std::abs(hat_c(y)); }
    double hat0() const { return hat0_; }
    double envelope(double y) const;
    double tail_sum(double H, double s) const;
    static const Window& get(WindowId id);

private:
    WindowId id_;
    double hat0_;
};

PoissonCheck poisson_check(WindowId g, double X, u64 q, u64 a, i64 H);

}  // namespace vdc::nt
