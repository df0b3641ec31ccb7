#pragma once

#include <complex>
#include <string>
#include <vector>

#include "vdc/nt_utils.hpp"

namespace vdc::csum {

using nt::cplx;
using nt::i64;
using nt::u64;

// lambda = f1/f2 with integer polynomials, coprime over Q.
struct RationalFunctionZ {
    nt::PolyZ f1, f2;

    RationalFunctionZ(nt::PolyZ numer, nt::PolyZ denom);
    int degree() const;  // deg f1 + deg f2
    // numerator of the formal derivative: f1' f2 - f1 f2'
    nt::PolyZ derivative_numerator() const;
};

struct SumValue {
    cplx value;
    u64 modulus = 0;
    u64 excluded = 0;    // residues with gcd(f2(a), c) != 1
    u64 degenerate = 0;  // stationary points with lambda'' = 0 mod p (odd-power case)
};

// Direct O(c) summation of sum_{a mod c} e(lambda(a)/c), skipping residues
// where the denominator is not invertible. Optional unit twist multiplies
// the phase by w.
SumValue sigma_direct(const RationalFunctionZ& lam, u64 c);
SumValue sigma_direct_twisted(const RationalFunctionZ& lam, u64 w, u64 c);

// Chinese-remainder product over prime powers with per-factor twists.
SumValue sigma_crt(const RationalFunctionZ& lam, const nt::Factorization& fac);

// Stationary-phase evaluation for odd p and beta in {2,..,5}; exact, with a
// quadratic Gauss sum factor for odd beta. Degenerate stationary points
// (lambda''(y) = 0 mod p) are evaluated literally and counted.
SumValue sigma_prime_power(const RationalFunctionZ& lam, u64 p, int beta, u64 twist = 1);

// gcd of m with the coefficients of non-constant terms of f1 and f2 jointly
// (m itself when there are none).
u64 lambda_gcd(const nt::PolyZ& f1, const nt::PolyZ& f2, u64 m);

struct InequalityCheck {
    double lhs = 0;
    double bound = 0;
    bool pass = false;
};

// |Sigma(lambda,p)| <= 2 d sqrt(p) (lambda,p)^{1/2}.
InequalityCheck weil_check(const RationalFunctionZ& lam, u64 p);

// |Sigma(lambda,c)| <= c^{1/2} (lambda,c_flat)^{1/2} (lambda',c_ddagger)
//                      (2d)^{omega(c)} Xi(c)^{1/2}.
InequalityCheck thmB3_check(const RationalFunctionZ& lam, u64 c);

// True if f1/f2 reduces to a constant function mod p; the Weil-type bounds
// presume this does not happen.
bool degenerate_mod_p(const RationalFunctionZ& lam, u64 p);

}  // namespace vdc::csum
