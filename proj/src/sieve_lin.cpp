#include "vdc/sieve_lin.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_set>

#include "vdc/quad_gauss.hpp"
#include "vdc/xp_opt.hpp"

namespace vdc::sieve {

namespace {

// Euler's constant to 30 digits.
constexpr double kEulerGamma = 0.577215664901532860606512090082;
const double kTwoEGamma = 2.0 * std::exp(kEulerGamma);

// cubic Lagrange interpolation on a uniform grid
double interp_cubic(const std::vector<double>& v, double start, double h, double s) {
    double u = (s - start) / h;
    i64 n = static_cast<i64>(v.size());
    i64 i = static_cast<i64>(std::floor(u));
    i64 base = std::clamp<i64>(i - 1, 0, n - 4);
    double t = u - static_cast<double>(base);
    double c0 = -(t - 1) * (t - 2) * (t - 3) / 6.0;
    double c1 = t * (t - 2) * (t - 3) / 2.0;
    double c2 = -t * (t - 1) * (t - 3) / 2.0;
    double c3 = t * (t - 1) * (t - 2) / 6.0;
    return c0 * v[base] + c1 * v[base + 1] + c2 * v[base + 2] + c3 * v[base + 3];
}

}  // namespace

double SieveTable::F_closed(double s) {
    if (s <= 0 || s > 3) throw std::domain_error("F_closed: s outside (0,3]");
    return kTwoEGamma / s;
}

double SieveTable::f_closed(double s) {
    if (s <= 0 || s > 4) throw std::domain_error("f_closed: s outside (0,4]");
    if (s <= 2) return 0.0;
    return kTwoEGamma * std::log(s - 1.0) / s;
}

SieveTable::SieveTable(double s_max, double h) : s_max_(s_max), h_(h) {
    if (s_max > 20) throw std::domain_error("SieveTable: s_max must be <= 20");
    if (h > 1.0 / 64) throw std::domain_error("SieveTable: step too coarse (h > 1/64)");
    grid_start_ = 2.0 - h;
    size_t n = static_cast<size_t>(std::ceil((s_max - grid_start_) / h)) + 2;
    F_.assign(n, 0.0);
    f_.assign(n, 0.0);

    // delayed values come from the closed forms below their breakpoints and
    // from the filled part of the grid above them
    auto F_delayed = [&](double s) {
        return s <= 3.0 ? F_closed(s) : interp_cubic(F_, grid_start_, h_, s);
    };
    auto f_delayed = [&](double s) {
        return s <= 4.0 ? f_closed(s) : interp_cubic(f_, grid_start_, h_, s);
    };

    // sF(s) = 2e^gamma + int_2^s f(t-1) dt,  sf(s) = int_2^s F(t-1) dt
    double IF = 0.0;  // running integral of f(t-1)
    double If = 0.0;  // running integral of F(t-1)
    for (size_t i = 0; i < n; ++i) {
        double s = grid_start_ + static_cast<double>(i) * h_;
        if (s <= 2.0 + 1e-12) {
            F_[i] = kTwoEGamma / s;
            f_[i] = 0.0;
            continue;
        }
        double a = s - h_;
        // Simpson over [a, s]; integrands need values at most at s-1 < a
        double ff = f_delayed(a - 1.0) + 4.0 * f_delayed(a + h_ / 2 - 1.0) + f_delayed(s - 1.0);
        double FF = F_delayed(a - 1.0) + 4.0 * F_delayed(a + h_ / 2 - 1.0) + F_delayed(s - 1.0);
        IF += ff * h_ / 6.0;
        If += FF * h_ / 6.0;
        F_[i] = (kTwoEGamma + IF) / s;
        f_[i] = If / s;
    }
}

double SieveTable::lookup(const std::vector<double>& vals, double s) const {
    if (s > s_max_ + 1e-9) throw std::domain_error("SieveTable: s beyond table range");
    return interp_cubic(vals, grid_start_, h_, s);
}

double SieveTable::F(double s) const {
    if (s <= 0) throw std::domain_error("SieveTable::F: s must be positive");
    if (s <= 3.0) return F_closed(s);
    return lookup(F_, s);
}

double SieveTable::f(double s) const {
    if (s <= 0) throw std::domain_error("SieveTable::f: s must be positive");
    if (s <= 2.0) return 0.0;
    if (s <= 4.0) return f_closed(s);
    return lookup(f_, s);
}

SieveTable build_table(double s_max, double h) { return SieveTable(s_max, h); }

double bt_upper_constant(const Rat& theta) { return to_double(opt::bt_constant(theta)); }

CongruenceSumCheck congruence_sum_check(double X, u64 d, u64 ell, nt::WindowId g) {
    if (nt::gcd_u64(d, ell) != 1)
        throw std::domain_error("congruence_sum_check: need gcd(d, ell) = 1");
    if (X > 1e7) throw std::domain_error("congruence_sum_check: X too large");
    const nt::Window& w = nt::Window::get(g);

    auto rs = quad::roots_minus_one(ell);
    std::unordered_set<u64> root_set(rs.roots.begin(), rs.roots.end());

    CongruenceSumCheck out;
    double direct = 0;
    u64 lo = static_cast<u64>(X);
    u64 hi = static_cast<u64>(2.0 * X) + 1;
    for (u64 n = (lo / d) * d; n <= hi; n += d) {
        if (n == 0) continue;
        if (root_set.count(n % ell)) direct += w.value(static_cast<double>(n) / X);
    }
    out.A_d = direct;
    double rho_ell = static_cast<double>(rs.roots.size());
    out.main = w.hat0() * rho_ell * X / (static_cast<double>(d) * static_cast<double>(ell));
    out.remainder = out.A_d - out.main;

    // truncated Poisson expansion of A_d over frequencies |h| <= H:
    //   A_d = X/(d ell) sum_h ghat(h X / (d ell)) rho_{h * dbar}(ell)
    double dl = static_cast<double>(d) * static_cast<double>(ell);
    i64 H = static_cast<i64>(std::ceil(dl / X * std::pow(X, 0.1))) + 4;
    u64 dbar = nt::invmod(d % ell, ell);
    cplx acc = 0;
    for (i64 h = -H; h <= H; ++h) {
        i64 freq = (h % static_cast<i64>(ell)) * static_cast<i64>(dbar % ell);
        double y = static_cast<double>(h) * X / dl;
        acc += w.hat_c(y) * quad::weyl_rho(freq, ell);
    }
    out.poisson = (acc * (X / dl)).real();
    out.poisson_diff = std::abs(out.A_d - out.poisson);
    out.tail_bound = (X / dl) * rho_ell * w.tail_sum(static_cast<double>(H), X / dl) +
                     1e-6 * X / dl * std::max(1.0, rho_ell);
    out.poisson_ok = out.poisson_diff <= out.tail_bound;
    return out;
}

}  // namespace vdc::sieve
