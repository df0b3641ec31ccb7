#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "vdc/nt_utils.hpp"

namespace vdc::nt {

namespace {

// 16-point Gauss-Legendre nodes/weights on [-1,1].
constexpr double kNodes[8] = {
    0.0950125098376374, 0.2816035507792589, 0.4580167776572274, 0.6178762444026438,
    0.7554044083550030, 0.8656312023878318, 0.9445750230732326, 0.9894009349916499,
};
constexpr double kWeights[8] = {
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
    0.1246289712555339, 0.0951585116824928, 0.0622535239386479, 0.0271524594117541,
};

double bump_value(double x) {
    if (x <= 1.0 || x >= 2.0) return 0.0;
    return std::exp(-1.0 / ((x - 1.0) * (2.0 - x)));
}

// quintic smoothstep, C^2 at both ends
double smoothstep(double t) { return t * t * t * (10.0 + t * (-15.0 + 6.0 * t)); }

double plateau_value(double x) {
    if (x <= 1.0 || x >= 2.0) return 0.0;
    if (x < 1.25) return smoothstep((x - 1.0) / 0.25);
    if (x > 1.75) return smoothstep((2.0 - x) / 0.25);
    return 1.0;
}

// integral of f(x) e(-xy) dx over [1,2], panels sized to the oscillation
template <typename F>
cplx oscillatory_integral(F f, double y) {
    int panels = std::max(8, static_cast<int>(std::ceil(std::abs(y) / 2.0)));
    double h = 1.0 / panels;
    cplx total = 0;
    for (int k = 0; k < panels; ++k) {
        double a = 1.0 + k * h, mid = a + h / 2, half = h / 2;
        cplx s = 0;
        for (int i = 0; i < 8; ++i) {
            for (double sgn : {-1.0, 1.0}) {
                double x = mid + sgn * half * kNodes[i];
                double ph = -2.0 * std::numbers::pi * x * y;
                s += kWeights[i] * f(x) * cplx{std::cos(ph), std::sin(ph)};
            }
        }
        total += s * half;
    }
    return total;
}

}  // namespace

Window::Window(WindowId id) : id_(id) {
    hat0_ = oscillatory_integral(id_ == WindowId::Bump ? bump_value : plateau_value, 0.0).real();
}

const Window& Window::get(WindowId id) {
    static const Window bump(WindowId::Bump);
    static const Window plateau(WindowId::Plateau);
    return id == WindowId::Bump ? bump : plateau;
}

double Window::value(double x) const {
    return id_ == WindowId::Bump ? bump_value(x) : plateau_value(x);
}

cplx Window::hat_c(double y) const {
    return oscillatory_integral(id_ == WindowId::Bump ? bump_value : plateau_value, y);
}

namespace {

// fitted against quadrature samples with a 4-25x margin; validated in tests
double fit_envelope(WindowId id, double hat0, double y) {
    double a = std::abs(y);
    if (a < 1.0) return hat0;
    if (id == WindowId::Bump) return 3.0 * std::exp(-4.0 * std::sqrt(a));
    return 10.0 / (a * a * a);
}

constexpr double kQuadratureFloor = 1e-12;

}  // namespace

double Window::envelope(double y) const {
    return std::max(fit_envelope(id_, hat0_, y), kQuadratureFloor);
}

double Window::tail_sum(double H, double s) const {
    // sum_{|h| > H} |hat(h s)|, through the fitted envelope plus a flat
    // allowance for the quadrature noise floor
    double total = 512 * kQuadratureFloor;
    for (u64 h = static_cast<u64>(std::floor(H)) + 1;; ++h) {
        double term = fit_envelope(id_, hat0_, static_cast<double>(h) * s);
        total += 2.0 * term;
        if (term < 1e-20 * (1.0 + total) && h > H + 16) break;
        if (h > H + 2000000) break;
    }
    return total;
}

PoissonCheck poisson_check(WindowId g, double X, u64 q, u64 a, i64 H) {
    const Window& w = Window::get(g);
    PoissonCheck out;
    // direct side: walk n = a mod q across [X, 2X]
    double lhs = 0;
    i64 lo = static_cast<i64>(std::floor(X)) - 1;
    i64 n0 = static_cast<i64>(a % q);
    while (n0 < lo) n0 += static_cast<i64>(q);
    while (n0 > lo) n0 -= static_cast<i64>(q);
    double up = 2.0 * X + 1;
    for (i64 n = n0; n <= static_cast<i64>(up); n += static_cast<i64>(q)) {
        if (n >= 1) lhs += w.value(static_cast<double>(n) / X);
    }
    out.lhs = lhs;

    cplx rhs = 0;
    double scale = X / static_cast<double>(q);
    for (i64 h = -H; h <= H; ++h) {
        double y = static_cast<double>(h) / scale;
        rhs += w.hat_c(y) * unit_root(static_cast<i64>(a % q) * h, q);
    }
    rhs *= scale;
    out.rhs = rhs;
    out.diff = std::abs(lhs - rhs);
    out.tail_bound = scale * w.tail_sum(static_cast<double>(H), 1.0 / scale);
    out.pass = out.diff <= out.tail_bound + 1e-9 * (1.0 + std::abs(lhs));
    return out;
}

}  // namespace vdc::nt
