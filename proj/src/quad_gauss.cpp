#include "vdc/quad_gauss.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace vdc::quad {

namespace {

u64 pow_u64(u64 p, int e) {
    u64 r = 1;
    while (e-- > 0) r *= p;
    return r;
}

// Newton lift of a root of x^2 + 1 from p^k to p^{2k}.
std::vector<u64> roots_prime_power(u64 p, int e) {
    if (p == 2) return e == 1 ? std::vector<u64>{1} : std::vector<u64>{};
    if (p % 4 == 3) return {};
    u64 r = nt::sqrt_minus_one(p)[0];
    u64 mod = p;
    while (mod < pow_u64(p, e)) {
        u64 next = std::min(mod * mod, pow_u64(p, e));
        // r <- r - (r^2+1) * inv(2r)  mod next
        u64 val = (nt::mulmod(r % next, r % next, next) + 1) % next;
        u64 inv2r = nt::invmod(nt::mulmod(2 % next, r % next, next), next);
        r = (r % next + next - nt::mulmod(val, inv2r, next)) % next;
        mod = next;
    }
    return {r, mod - r};
}

}  // namespace

RootSet roots_minus_one(u64 ell) {
    if (ell == 0) throw std::domain_error("roots_minus_one: ell must be positive");
    RootSet out;
    out.ell = ell;
    if (ell == 1) {
        out.roots = {0};
        return out;
    }
    std::vector<u64> acc = {0};
    u64 acc_mod = 1;
    for (auto [p, e] : nt::factorize(ell).pairs) {
        auto rp = roots_prime_power(p, e);
        if (rp.empty()) return out;  // unsolvable
        u64 pe = pow_u64(p, e);
        std::vector<u64> merged;
        merged.reserve(acc.size() * rp.size());
        u64 m1 = nt::invmod(acc_mod % pe, pe);        // acc_mod * m1 = 1 mod pe
        u64 m2 = nt::invmod(pe % acc_mod, acc_mod);   // pe * m2 = 1 mod acc_mod
        for (u64 a : acc)
            for (u64 b : rp) {
                // CRT: x = a mod acc_mod, x = b mod pe
                u64 x = (nt::mulmod(nt::mulmod(a, pe % (acc_mod * pe), acc_mod * pe), m2 % (acc_mod * pe), acc_mod * pe) +
                         nt::mulmod(nt::mulmod(b, acc_mod % (acc_mod * pe), acc_mod * pe), m1 % (acc_mod * pe), acc_mod * pe)) %
                        (acc_mod * pe);
                merged.push_back(x);
            }
        acc = std::move(merged);
        acc_mod *= pe;
    }
    std::sort(acc.begin(), acc.end());
    out.roots = std::move(acc);
    return out;
}

RootSet roots_minus_one_brute(u64 ell) {
    if (ell == 0 || ell > 10000000ull)
        throw std::domain_error("roots_minus_one_brute: ell out of range");
    RootSet out;
    out.ell = ell;
    for (u64 a = 0; a < ell; ++a)
        if ((nt::mulmod(a, a, ell) + 1) % ell == 0) out.roots.push_back(a);
    return out;
}

u64 rho(u64 ell) {
    if (ell == 1) return 1;
    u64 count = 1;
    for (auto [p, e] : nt::factorize(ell).pairs) {
        if (p == 2) {
            if (e > 1) return 0;
        } else if (p % 4 == 3) {
            return 0;
        } else {
            count *= 2;
        }
    }
    return count;
}

std::vector<TwoSquaresRep> two_squares(u64 ell) {
    std::vector<TwoSquaresRep> reps;
    for (u64 r = 1; r * r < ell; ++r) {
        u64 s2 = ell - r * r;
        u64 s = static_cast<u64>(std::sqrt(static_cast<double>(s2)));
        while (s * s > s2) --s;
        while ((s + 1) * (s + 1) <= s2) ++s;
        if (s * s == s2 && s > 0 && nt::gcd_u64(r, s) == 1) reps.push_back({r, s, ell});
    }
    return reps;
}

namespace {

// a/ell = sbar/r - s/(r ell) mod 1, i.e. r ell | (a r - sbar ell + s),
// with sbar the inverse of s mod r*ell.
bool pairing_holds(u64 a, const TwoSquaresRep& rep, u64 ell) {
    u64 m = rep.r * ell;
    u64 sbar = nt::invmod(rep.s % m, m);
    __int128 num = static_cast<__int128>(a) * rep.r - static_cast<__int128>(sbar) * ell + rep.s;
    __int128 mm = static_cast<__int128>(m);
    return ((num % mm) + mm) % mm == 0;
}

}  // namespace

Correspondence correspondence(u64 ell) {
    Correspondence out;
    out.ell = ell;
    auto rs = roots_minus_one(ell);
    auto reps = two_squares(ell);
    if (rs.roots.empty()) throw std::domain_error("correspondence: no roots mod ell");
    if (rs.roots.size() != reps.size())
        throw std::logic_error("correspondence: |roots| != |representations|");
    std::vector<bool> used(reps.size(), false);
    for (u64 a : rs.roots) {
        size_t match = reps.size();
        for (size_t i = 0; i < reps.size(); ++i) {
            if (pairing_holds(a, reps[i], ell)) {
                if (match != reps.size())
                    throw std::logic_error("correspondence: root pairs with two representations");
                match = i;
            }
        }
        if (match == reps.size())
            throw std::logic_error("correspondence: unmatched root");
        if (used[match]) throw std::logic_error("correspondence: representation reused");
        used[match] = true;
        out.pairs.push_back({a, reps[match]});
    }
    return out;
}

const TwoSquaresRep& Correspondence::rep_of(u64 root) const {
    for (const auto& [a, rep] : pairs)
        if (a == root) return rep;
    throw std::out_of_range("Correspondence::rep_of: unknown root");
}

cplx weyl_rho(i64 n, u64 ell) {
    auto rs = roots_minus_one(ell);
    cplx s = 0;
    for (u64 a : rs.roots) {
        i64 an = static_cast<i64>(a % ell) * (n % static_cast<i64>(ell));
        s += nt::unit_root(an, ell);
    }
    return s;
}

FractionDecomposition decompose_fraction(u64 d, u64 a, u64 ell) {
    if (d == 0 || nt::gcd_u64(d, ell) != 1)
        throw std::domain_error("decompose_fraction: need d >= 1 coprime to ell");
    auto corr = correspondence(ell);
    FractionDecomposition out;
    out.d = d;
    out.root = a;
    out.rep = corr.rep_of(a);  // throws if a is not a root
    const u64 r = out.rep.r, s = out.rep.s;
    out.d2 = nt::d_infinity(d, r);
    out.d1 = d / out.d2;
    const u64 d1 = out.d1, d2 = out.d2;

    // exact rational arithmetic mod 1
    auto frac = [](Int num, Int den) {
        Rat f(num, den);
        // reduce into [0,1)
        Int whole = numerator(f) / denominator(f);
        f -= whole;
        if (f < 0) f += 1;
        return f;
    };

    Rat lhs = frac(Int(nt::mulmod(nt::invmod(d % ell, ell), a % ell, ell)), Int(ell));

    auto term1 = [&]() {
        Int m = Int(d1) * s;
        if (m == 1) return Rat(0);
        u64 mm = d1 * s;
        u64 inv = nt::invmod((nt::mulmod(d2 % mm, ell % mm, mm)) % mm, mm);
        return frac(-Int(r) * inv, m);
    };
    auto term3 = [&]() {
        if (d2 == 1) return Rat(0);
        u64 prod = nt::mulmod(nt::mulmod(d1 % d2, s % d2, d2), ell % d2, d2);
        u64 inv = nt::invmod(prod, d2);
        return frac(-Int(r) * inv, Int(d2));
    };
    Rat term2 = Rat(Int(r), Int(d) * s * ell);

    Rat rhs = term1() + term2 + term3();
    Rat diff = lhs - rhs;
    out.exact = denominator(diff) == 1;

    if (nt::split_flat_sharp(d).second == 1) {  // squarefree d
        Rat rhs2 = term1() + term2;
        Rat diff2 = lhs - rhs2;
        out.exact_squarefree_form = denominator(diff2) == 1;
    }
    return out;
}

}  // namespace vdc::quad
