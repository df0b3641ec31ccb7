#pragma once

#include <complex>
#include <vector>

#include "vdc/nt_utils.hpp"
#include "vdc/rational.hpp"

namespace vdc::sieve {

using nt::cplx;
using nt::i64;
using nt::u64;

// Linear Rosser-Iwaniec sieve limit functions on a uniform grid:
//   s F(s) = 2 e^gamma           (0 < s <= 2, hence F = 2e^gamma/s up to 3)
//   s f(s) = 0                   (0 < s <= 2)
//   (s F(s))' = f(s-1), (s f(s))' = F(s-1)   (s > 2)
// Integrated forward from s = 2 by per-step Simpson quadrature with the
// delay term interpolated cubically.
class SieveTable {
public:
    SieveTable(double s_max, double h);

    double F(double s) const;
    double f(double s) const;
    double s_max() const { return s_max_; }
    double step() const { return h_; }
    double grid_start() const { return grid_start_; }
    const std::vector<double>& F_values() const { return F_; }
    const std::vector<double>& f_values() const { return f_; }
    // raw table value (integration output, no closed-form shortcut)
    double F_table(double s) const { return lookup(F_, s); }
    double f_table(double s) const { return lookup(f_, s); }

    static double F_closed(double s);  // 2 e^gamma / s, valid on (0, 3]
    static double f_closed(double s);  // 0 on (0,2], 2 e^gamma log(s-1)/s on (2, 4]

private:
    double s_max_, h_;
    double grid_start_;                 // 2 - h
    std::vector<double> F_, f_;         // values on grid_start_ + i*h

    double lookup(const std::vector<double>& vals, double s) const;
};

SieveTable build_table(double s_max, double h);

// 2 / gamma(theta); theta in [1/2, 16/17).
double bt_upper_constant(const Rat& theta);

struct CongruenceSumCheck {
    double A_d = 0;        // sum_{n = 0 mod d, n^2+1 = 0 mod ell} g(n/X)
    double main = 0;       // ghat(0) rho(ell) X / (d ell)
    double remainder = 0;  // A_d - main
    double poisson = 0;    // truncated Poisson evaluation of A_d
    double poisson_diff = 0;
    double tail_bound = 0;
    bool poisson_ok = false;
};
// Direct congruence sum against its Poisson main term, plus a truncated
// Poisson expansion cross-check with H ~ d*ell*X^{-0.9} frequencies.
CongruenceSumCheck congruence_sum_check(double X, u64 d, u64 ell, nt::WindowId g);

}  // namespace vdc::sieve
