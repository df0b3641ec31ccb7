#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "vdc/trace_eval.hpp"

using namespace vdc;
using namespace vdc::trace;

namespace {

// independent oracle: nested-loop hyper-Kloosterman at a single point
cplx kloosterman_oracle(int k, u64 p, u64 x) {
    // sum over tuples in F_p^k with product = x of e((x1+..+xk)/p)
    std::vector<u64> idx(k, 0);
    cplx s = 0;
    while (true) {
        u64 prod = 1, sum = 0;
        for (int i = 0; i < k; ++i) {
            prod = nt::mulmod(prod, idx[i], p);
            sum = (sum + idx[i]) % p;
        }
        if (prod == x % p) s += nt::unit_root(static_cast<nt::i64>(sum), p);
        int j = 0;
        while (j < k && ++idx[j] == p) idx[j++] = 0;
        if (j == k) break;
    }
    return s * std::pow(static_cast<double>(p), -0.5 * (k - 1));
}

}  // namespace

TEST_CASE("hyper-Kloosterman values") {
    TraceSpec kl1{HyperKloosterman{1}};
    CHECK(std::abs(eval_trace(kl1, 7, 3) - nt::unit_root(3, 7)) < 1e-12);

    TraceSpec kl2{HyperKloosterman{2}};
    // Kl_2(0,5) = -1/sqrt(5)
    CHECK(std::abs(eval_trace(kl2, 5, 0) - cplx{-1.0 / std::sqrt(5.0), 0}) < 1e-12);
    // Kl_2(1,5) = (2 + 2cos(4pi/5))/sqrt(5), from summing e((x+xbar)/5) directly
    double expected = (2.0 + 2.0 * std::cos(4.0 * std::numbers::pi / 5.0)) / std::sqrt(5.0);
    CHECK(std::abs(eval_trace(kl2, 5, 1) - cplx{expected, 0}) < 1e-12);
    CHECK(expected == doctest::Approx(0.17082).epsilon(1e-4));

    // the convolution line agrees with the nested-loop oracle
    for (u64 p : {5ull, 7ull, 11ull}) {
        auto line = eval_line(TraceSpec{HyperKloosterman{2}}, p);
        auto line3 = eval_line(TraceSpec{HyperKloosterman{3}}, p);
        for (u64 x = 0; x < p; ++x) {
            CHECK(std::abs(line[x] - kloosterman_oracle(2, p, x)) < 1e-9);
            CHECK(std::abs(line3[x] - kloosterman_oracle(3, p, x)) < 1e-9);
        }
    }
}

TEST_CASE("Deligne bound numerically") {
    for (u64 p = 3; p <= 200; p += 2) {
        if (!nt::is_prime(p)) continue;
        for (int k : {2, 3}) {
            auto line = eval_line(TraceSpec{HyperKloosterman{k}}, p);
            for (u64 x = 1; x < p; ++x) CHECK(std::abs(line[x]) <= k + 1e-9);
        }
    }
}

TEST_CASE("additive rational and multiplicative characters") {
    // e(3 xbar / 7): pole at 0
    TraceSpec inv3{AdditiveRational{nt::PolyZ{3}, nt::PolyZ{0, 1}}};
    auto line = eval_line(inv3, 7);
    CHECK(std::abs(line[0]) == 0);
    for (u64 x = 1; x < 7; ++x)
        CHECK(std::abs(line[x] - nt::unit_root(static_cast<nt::i64>(3 * nt::invmod(x, 7) % 7), 7)) <
              1e-12);

    // Legendre symbol mod 11 as the character of order 2
    TraceSpec leg{MultiplicativeChar{(11 - 1) / 2, nt::PolyZ{0, 1}}};
    auto lline = eval_line(leg, 11);
    for (u64 x = 1; x < 11; ++x) {
        double expected = nt::powmod(x, 5, 11) == 1 ? 1.0 : -1.0;
        CHECK(std::abs(lline[x] - cplx{expected, 0}) < 1e-12);
    }
    CHECK(std::abs(lline[0]) == 0);
    CHECK_THROWS_AS(eval_line(TraceSpec{MultiplicativeChar{1, nt::PolyZ{0, 1}}}, 2),
                    std::domain_error);
}

TEST_CASE("composite evaluation is the product over primes") {
    CompositeTraceSpec empty;
    CHECK(eval_composite(empty, 12345) == cplx{1, 0});

    CompositeTraceSpec both;
    both.primes = {3, 5};
    both.per_prime[3] = TraceSpec{HyperKloosterman{2}};
    both.per_prime[5] = TraceSpec{HyperKloosterman{2}};
    auto l3 = eval_line(TraceSpec{HyperKloosterman{2}}, 3);
    auto l5 = eval_line(TraceSpec{HyperKloosterman{2}}, 5);
    for (nt::i64 n = -7; n < 20; ++n) {
        cplx expected = l3[((n % 3) + 3) % 3] * l5[((n % 5) + 5) % 5];
        CHECK(std::abs(eval_composite(both, n) - expected) < 1e-12);
    }
}

TEST_CASE("incomplete sums") {
    // constant function mod one prime
    CompositeTraceSpec one;
    one.primes = {5};
    one.per_prime[5] = TraceSpec{TableValues{std::vector<cplx>(5, 1.0)}};
    CHECK(std::abs(incomplete_sum(one, 0, 10) - cplx{10, 0}) < 1e-12);

    // full-period orthogonality for e(hn/q)
    CompositeTraceSpec phase;
    phase.primes = {7};
    std::vector<cplx> vals(7);
    for (u64 x = 0; x < 7; ++x) vals[x] = nt::unit_root(static_cast<nt::i64>(3 * x), 7);
    phase.per_prime[7] = TraceSpec{TableValues{vals}};
    CHECK(std::abs(incomplete_sum(phase, 2, 7)) < 1e-12);

    // CRT consistency: full-period sum = product of complete sums
    auto kspec = CompositeTraceSpec::inverse_phase(3, {3, 5, 7});
    cplx full = incomplete_sum(kspec, 0, 3 * 5 * 7);
    cplx prod = 1;
    for (u64 p : kspec.primes) {
        auto line = eval_line(kspec.per_prime.at(p), p);
        cplx s = 0;
        for (auto& v : line) s += v;
        prod *= s;
    }
    CHECK(std::abs(full - prod) < 1e-9);

    // determinism across worker counts, bit for bit
    CompositeTraceSpec big = CompositeTraceSpec::inverse_phase(1, {101, 103, 107});
    cplx a = incomplete_sum(big, -500, 250000, 1);
    cplx b = incomplete_sum(big, -500, 250000, 4);
    cplx c = incomplete_sum(big, -500, 250000, 3);
    CHECK(a == b);
    CHECK(a == c);
}

TEST_CASE("inverse phase matches e(h nbar / q)") {
    auto spec = CompositeTraceSpec::inverse_phase(3, {3, 5, 7, 11, 13});
    u64 q = spec.modulus();
    CHECK(q == 15015);
    std::mt19937_64 rng(17);
    for (int i = 0; i < 50; ++i) {
        u64 n = rng() % q;
        if (nt::gcd_u64(n, q) != 1) {
            CHECK(std::abs(eval_composite(spec, static_cast<nt::i64>(n))) < 1e-12);
            continue;
        }
        cplx expected = nt::unit_root(static_cast<nt::i64>(nt::mulmod(3, nt::invmod(n, q), q)), q);
        CHECK(std::abs(eval_composite(spec, static_cast<nt::i64>(n)) - expected) < 1e-10);
    }
}

TEST_CASE("normalized Fourier transform over F_p") {
    // delta at 0 -> constant -p^{-1/2}
    u64 p = 13;
    std::vector<cplx> delta(p, 0);
    delta[0] = 1;
    auto ft = fourier_transform_p(delta, p);
    for (auto& v : ft) CHECK(std::abs(v - cplx{-1.0 / std::sqrt(13.0), 0}) < 1e-12);

    // f(x) = e(ax/p) -> -sqrt(p) at t = -a
    std::vector<cplx> phase(p);
    for (u64 x = 0; x < p; ++x) phase[x] = nt::unit_root(static_cast<nt::i64>(4 * x), p);
    auto ft2 = fourier_transform_p(phase, p);
    for (u64 t = 0; t < p; ++t) {
        cplx expected = (t == p - 4) ? cplx{-std::sqrt(13.0), 0} : cplx{0, 0};
        CHECK(std::abs(ft2[t] - expected) < 1e-9);
    }

    // involution and Parseval on random data
    std::mt19937_64 rng(23);
    for (u64 pp : {11ull, 97ull}) {
        std::vector<cplx> f(pp);
        double norm1 = 0;
        for (auto& v : f) {
            v = {std::uniform_real_distribution<double>(-1, 1)(rng),
                 std::uniform_real_distribution<double>(-1, 1)(rng)};
            norm1 += std::norm(v);
        }
        auto g = fourier_transform_p(f, pp);
        double norm2 = 0;
        for (auto& v : g) norm2 += std::norm(v);
        CHECK(std::abs(norm1 - norm2) < 1e-9 * norm1);
        auto gg = fourier_transform_p(g, pp);
        for (u64 x = 0; x < pp; ++x)
            CHECK(std::abs(gg[x] - f[(pp - x) % pp]) < 1e-9);
    }
    CHECK_THROWS_AS(fourier_transform_p(std::vector<cplx>(5, 1.0), 7), std::invalid_argument);
}

TEST_CASE("quasi-orthogonality") {
    u64 p = 101;
    TraceSpec kl2{HyperKloosterman{2}};
    TraceSpec addx;
    addx.variant = AdditiveRational{nt::PolyZ{0, 3}, nt::PolyZ{1}};  // e(3x/p)

    auto r = quasi_orthogonality_check(kl2, addx, p);
    CHECK(r.alpha == cplx{0, 0});
    CHECK(r.bound == doctest::Approx(3.0 * 25 * 4 * std::sqrt(101.0)));
    CHECK(r.pass);

    auto self = quasi_orthogonality_check(kl2, kl2, p);
    CHECK(std::abs(self.alpha - cplx{1, 0}) < 1e-9);
    CHECK(self.pass);
    CHECK(self.lhs < 3 * std::sqrt(101.0));  // sum |Kl_2|^2 is close to p

    // scaled-argument Kloosterman pairs through explicit tables
    auto base = eval_line(kl2, p);
    auto scaled = [&](u64 a) {
        std::vector<cplx> v(p);
        for (u64 x = 0; x < p; ++x) v[x] = base[(a * x) % p];
        TraceSpec s{TableValues{v}};
        s.conductor_bound = 5;
        return s;
    };
    auto cross = quasi_orthogonality_check(scaled(2), scaled(3), p);
    CHECK(cross.alpha == cplx{0, 0});
    CHECK(cross.bound == doctest::Approx(1875.0 * std::sqrt(101.0)));
    CHECK(cross.pass);
}

TEST_CASE("Weyl differencing inequality") {
    std::mt19937_64 rng(31);
    auto random_psi = [&](u64 q) {
        std::vector<cplx> v(q);
        for (auto& z : v)
            z = {std::uniform_real_distribution<double>(-1, 1)(rng),
                 std::uniform_real_distribution<double>(-1, 1)(rng)};
        return v;
    };
    for (int i = 0; i < 50; ++i) {
        auto r = weyl_differencing_check(random_psi(7), random_psi(5), -3, 20);
        CHECK(r.pass);
    }
    // N <= q2: the l-sum is empty, plain Cauchy
    auto small = weyl_differencing_check(random_psi(7), random_psi(9), 0, 6);
    CHECK(small.pass);
    CHECK(small.rhs == doctest::Approx(9.0 * 6.0).epsilon(1e-9));

    // equality regime for constant functions with q2 | N
    std::vector<cplx> ones7(7, 1.0), ones5(5, 1.0);
    auto eq = weyl_differencing_check(ones7, ones5, 0, 20);
    CHECK(eq.lhs == doctest::Approx(400.0));
    CHECK(eq.rhs >= 400.0 - 1e-9);
    CHECK(eq.pass);
}

TEST_CASE("empirical exponent pair ratios stay small") {
    auto spec = CompositeTraceSpec::inverse_phase(3, {3, 5, 7, 11, 13});
    auto pair = xp::apply_A(xp::seed_triple());
    auto rep = empirical_pair_check(spec, pair, {47, 122}, 8);
    CHECK(rep.max_ratio > 0);
    CHECK(rep.max_ratio <= 50);
}

TEST_CASE("trace spec grammar") {
    auto s = parse_trace_spec("addrat:f1=3;f2=0,1");
    auto* a = std::get_if<AdditiveRational>(&s.variant);
    REQUIRE(a != nullptr);
    CHECK(a->f1.c == std::vector<nt::i64>{3});
    CHECK(a->f2.c == std::vector<nt::i64>{0, 1});

    auto m = parse_trace_spec("mult:r=2;f=0,1");
    CHECK(std::get_if<MultiplicativeChar>(&m.variant) != nullptr);

    auto k = parse_trace_spec("kloo:k=3");
    CHECK(std::get_if<HyperKloosterman>(&k.variant)->k == 3);

    auto comp = parse_composite_spec("q=3*5;3=kloo:k=2;5=addrat:f1=1;f2=0,1");
    CHECK(comp.primes == std::vector<u64>{3, 5});
    CHECK(std::get_if<HyperKloosterman>(&comp.per_prime[3].variant) != nullptr);
    CHECK(std::get_if<AdditiveRational>(&comp.per_prime[5].variant) != nullptr);

    CHECK_THROWS(parse_trace_spec("bogus:x=1"));
    CHECK_THROWS(parse_composite_spec("q=4;4=kloo:k=2"));
    CHECK_THROWS(parse_composite_spec("q=3*5;3=kloo:k=2"));
}
