#include "vdc/complete_sums.hpp"

#include <cmath>
#include <stdexcept>

namespace vdc::csum {

RationalFunctionZ::RationalFunctionZ(nt::PolyZ numer, nt::PolyZ denom)
    : f1(std::move(numer)), f2(std::move(denom)) {
    if (f2.is_zero()) throw std::domain_error("RationalFunctionZ: zero denominator");
    if (!f1.is_zero() && nt::poly_gcd_degree(f1, f2) > 0)
        throw std::domain_error("RationalFunctionZ: f1, f2 must be coprime over Q");
}

int RationalFunctionZ::degree() const {
    return std::max(0, f1.degree()) + std::max(0, f2.degree());
}

nt::PolyZ RationalFunctionZ::derivative_numerator() const {
    return f1.derivative() * f2 - f1 * f2.derivative();
}

SumValue sigma_direct(const RationalFunctionZ& lam, u64 c) { return sigma_direct_twisted(lam, 1, c); }

SumValue sigma_direct_twisted(const RationalFunctionZ& lam, u64 w, u64 c) {
    if (c == 0) throw std::domain_error("sigma_direct: modulus must be positive");
    SumValue out;
    out.modulus = c;
    if (c == 1) {
        out.value = 1;
        return out;
    }
    auto roots = nt::unit_root_table(c);
    cplx s = 0;
    w %= c;
    for (u64 a = 0; a < c; ++a) {
        u64 v2 = lam.f2.eval_mod(a, c);
        if (nt::gcd_u64(v2, c) != 1) {
            ++out.excluded;
            continue;
        }
        u64 phase = nt::mulmod(lam.f1.eval_mod(a, c), nt::invmod(v2, c), c);
        s += roots[nt::mulmod(phase, w, c)];
    }
    out.value = s;
    return out;
}

SumValue sigma_crt(const RationalFunctionZ& lam, const nt::Factorization& fac) {
    u64 c = fac.value();
    SumValue out;
    out.modulus = c;
    cplx prod = 1;
    u64 kept = 1;
    for (auto [p, e] : fac.pairs) {
        u64 pe = 1;
        for (int i = 0; i < e; ++i) pe *= p;
        u64 cof = (c / pe) % pe;
        u64 twist = nt::invmod(cof, pe);
        SumValue factor = sigma_direct_twisted(lam, twist, pe);
        prod *= factor.value;
        kept *= pe - factor.excluded;
        out.degenerate += factor.degenerate;
    }
    out.value = prod;
    out.excluded = c - kept;
    return out;
}

namespace {

u64 pow_u64(u64 p, int e) {
    u64 r = 1;
    while (e-- > 0) r *= p;
    return r;
}

}  // namespace

SumValue sigma_prime_power(const RationalFunctionZ& lam, u64 p, int beta, u64 twist) {
    if (p == 2 || !nt::is_prime(p)) throw std::domain_error("sigma_prime_power: p must be an odd prime");
    if (beta < 2 || beta > 5) throw std::domain_error("sigma_prime_power: beta must be in [2,5]");

    int alpha = beta / 2;
    bool odd = (beta & 1) != 0;
    u64 pa = pow_u64(p, alpha);
    u64 p2a = pa * pa;
    u64 pb = pow_u64(p, beta);
    u64 pa1 = pa * p;  // p^{alpha+1}

    SumValue out;
    out.modulus = pb;

    nt::PolyZ dnum = lam.derivative_numerator();
    // lambda'' numerator over f2^3: N' f2 - 2 N f2'
    nt::PolyZ d2num = dnum.derivative() * lam.f2 - (dnum * lam.f2.derivative()) * nt::PolyZ{2};

    auto roots2a = nt::unit_root_table(p2a);
    auto rootsp = nt::unit_root_table(p);
    u64 inv2 = nt::invmod(2, p);
    twist %= pb;

    cplx total = 0;
    u64 bad_residues_mod_p = 0;
    for (u64 y0 = 0; y0 < p; ++y0)
        if (lam.f2.eval_mod(y0, p) == 0) ++bad_residues_mod_p;
    out.excluded = bad_residues_mod_p * pow_u64(p, beta - 1);

    for (u64 y = 0; y < pa; ++y) {
        if (nt::gcd_u64(lam.f2.eval_mod(y, p), p) != 1) continue;
        // stationary iff lambda'(y) = 0 mod p^alpha; the denominator is a unit
        u64 n1 = dnum.eval_mod(y, pa1);
        u64 f2v = lam.f2.eval_mod(y, pa1);
        u64 d1 = nt::mulmod(nt::mulmod(n1, nt::invmod(nt::mulmod(f2v, f2v, pa1), pa1), pa1), twist % pa1, pa1);
        if (d1 % pa != 0) continue;

        u64 lam_y = nt::mulmod(nt::mulmod(lam.f1.eval_mod(y, p2a),
                                          nt::invmod(lam.f2.eval_mod(y, p2a), p2a), p2a),
                               twist % p2a, p2a);
        cplx term = roots2a[lam_y];

        if (odd) {
            u64 lin = (d1 / pa) % p;  // lambda'(y) p^{-alpha} mod p
            u64 quad = nt::mulmod(nt::mulmod(d2num.eval_mod(y, p),
                                             nt::invmod(nt::powmod(lam.f2.eval_mod(y, p), 3, p), p), p),
                                  twist % p, p);
            quad = nt::mulmod(quad, inv2, p);  // (1/2) lambda''(y)
            if (quad == 0) ++out.degenerate;
            cplx gauss = 0;
            for (u64 z = 0; z < p; ++z) {
                u64 ph = (nt::mulmod(quad, nt::mulmod(z, z, p), p) + nt::mulmod(lin, z, p)) % p;
                gauss += rootsp[ph];
            }
            term *= gauss;
        }
        total += term;
    }
    out.value = total * static_cast<double>(pa);
    return out;
}

u64 lambda_gcd(const nt::PolyZ& f1, const nt::PolyZ& f2, u64 m) {
    u64 g = 0;
    auto eat = [&](const nt::PolyZ& f) {
        for (size_t i = 1; i < f.c.size(); ++i) {
            u64 a = static_cast<u64>(f.c[i] < 0 ? -f.c[i] : f.c[i]);
            g = nt::gcd_u64(g, a % m);
        }
    };
    eat(f1);
    eat(f2);
    g = nt::gcd_u64(g, m);
    return g == 0 ? m : g;
}

bool degenerate_mod_p(const RationalFunctionZ& lam, u64 p) {
    return nt::constant_reduction_mod_p(lam.f1, lam.f2, p);
}

InequalityCheck weil_check(const RationalFunctionZ& lam, u64 p) {
    if (!nt::is_prime(p)) throw std::domain_error("weil_check: p must be prime");
    InequalityCheck out;
    out.lhs = std::abs(sigma_direct(lam, p).value);
    double d = lam.degree();
    double g = static_cast<double>(lambda_gcd(lam.f1, lam.f2, p));
    out.bound = 2.0 * d * std::sqrt(static_cast<double>(p)) * std::sqrt(g);
    out.pass = out.lhs <= out.bound + 1e-6;
    return out;
}

InequalityCheck thmB3_check(const RationalFunctionZ& lam, u64 c) {
    InequalityCheck out;
    out.lhs = std::abs(sigma_direct(lam, c).value);
    auto fac = nt::factorize(c);
    auto [flat, sharp] = nt::split_flat_sharp(c);
    nt::PolyZ dnum = lam.derivative_numerator();
    nt::PolyZ den2 = lam.f2 * lam.f2;
    double d = lam.degree();
    double g1 = static_cast<double>(lambda_gcd(lam.f1, lam.f2, flat));
    double g2 = static_cast<double>(lambda_gcd(dnum, den2, nt::c_ddagger(fac)));
    out.bound = std::sqrt(static_cast<double>(c)) * std::sqrt(g1) * g2 *
                std::pow(2.0 * d, static_cast<double>(fac.pairs.size())) *
                std::sqrt(static_cast<double>(nt::xi(c)));
    out.pass = out.lhs <= out.bound + 1e-6;
    return out;
}

}  // namespace vdc::csum
