#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "vdc/nt_utils.hpp"

namespace vdc::quad {

using nt::cplx;
using nt::i64;
using nt::u64;

// Proper representation ell = r^2 + s^2, gcd(r,s) = 1, r > 0, s > 0;
// (r,s) and (s,r) are distinct solutions.
struct TwoSquaresRep {
    u64 r = 0, s = 0;
    u64 ell = 0;

    bool operator==(const TwoSquaresRep&) const = default;
};

struct RootSet {
    u64 ell = 0;
    std::vector<u64> roots;  // ascending, a^2 + 1 = 0 mod ell
};

// All solutions of a^2 + 1 = 0 mod ell. Fast path factors ell, takes the
// square root of -1 per prime via the smallest primitive root, Hensel-lifts
// and CRT-combines; brute_force scans residues directly (ell <= 1e7).
RootSet roots_minus_one(u64 ell);
RootSet roots_minus_one_brute(u64 ell);
u64 rho(u64 ell);  // number of roots, multiplicative

std::vector<TwoSquaresRep> two_squares(u64 ell);

// Gauss pairing a <-> (r,s): a/ell = sbar/r - s/(r ell) mod 1 with
// sbar s = 1 mod r*ell. Throws std::logic_error unless it is a bijection.
struct Correspondence {
    u64 ell = 0;
    std::vector<std::pair<u64, TwoSquaresRep>> pairs;  // (root, rep)

    const TwoSquaresRep& rep_of(u64 root) const;
};
Correspondence correspondence(u64 ell);

// rho_n(ell) = sum over roots a of e(a n / ell).
cplx weyl_rho(i64 n, u64 ell);

// Exact mod-1 decomposition of dbar*a/ell through the paired (r,s):
//   dbar a / ell = -r inv(d2 ell) / (d1 s) + r/(d s ell) - r inv(d1 s ell)/d2,
// d = d1 d2 with d2 = (d, r^infinity). For squarefree d also checks the
// two-term form. All arithmetic exact.
struct FractionDecomposition {
    u64 d = 0, d1 = 0, d2 = 0;
    u64 root = 0;
    TwoSquaresRep rep;
    bool exact = false;
    std::optional<bool> exact_squarefree_form;
};
FractionDecomposition decompose_fraction(u64 d, u64 a, u64 ell);

}  // namespace vdc::quad
