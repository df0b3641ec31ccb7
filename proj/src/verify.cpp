#include "vdc/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>

#include "vdc/complete_sums.hpp"
#include "vdc/quad_gauss.hpp"
#include "vdc/sieve_lin.hpp"
#include "vdc/trace_eval.hpp"
#include "vdc/xp_core.hpp"
#include "vdc/xp_opt.hpp"

namespace vdc::verify {

namespace {

using nt::cplx;
using nt::i64;
using nt::u64;
using xp::ExponentTriple;
using xp::ProcessWord;
using xp::apply_word;
using xp::seed_triple;

struct Check {
    bool ok = true;
    std::ostringstream detail;

    void expect(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            if (detail.tellp() > 0) detail << "; ";
            detail << what;
        }
    }
    void note(const std::string& s) {
        if (detail.tellp() > 0) detail << "; ";
        detail << s;
    }
};

csum::RationalFunctionZ random_lambda(std::mt19937_64& rng, int max_deg = 4) {
    while (true) {
        auto poly = [&](int dmax) {
            int d = static_cast<int>(rng() % (dmax + 1));
            std::vector<i64> c(d + 1);
            for (auto& v : c) v = static_cast<i64>(rng() % 19) - 9;
            return nt::PolyZ(std::move(c));
        };
        nt::PolyZ f1 = poly(max_deg);
        nt::PolyZ f2 = poly(2);
        if (f1.is_zero() || f2.is_zero()) continue;
        if (f1.degree() + f2.degree() == 0) continue;
        if (nt::poly_gcd_degree(f1, f2) > 0) continue;
        return {f1, f2};
    }
}

// 1. Table 1 exactness
Check c01_table1(std::uint64_t) {
    Check c;
    const std::pair<const char*, std::pair<Rat, Rat>> table[] = {
        {"A", {Rat(1, 6), Rat(2, 3)}},       {"A2", {Rat(1, 14), Rat(11, 14)}},
        {"A3", {Rat(1, 30), Rat(26, 30)}},   {"BA2", {Rat(2, 7), Rat(4, 7)}},
        {"BA3", {Rat(11, 30), Rat(16, 30)}}, {"ABA2", {Rat(2, 18), Rat(13, 18)}},
        {"A2BA2", {Rat(2, 40), Rat(33, 40)}},{"BABA2", {Rat(4, 18), Rat(11, 18)}},
    };
    for (const auto& [word, kl] : table) {
        auto t = apply_word(ProcessWord(word), seed_triple());
        c.expect(t.kappa == kl.first && t.lambda == kl.second,
                 std::string(word) + " mismatch");
    }
    c.note("8 words exact");
    return c;
}

// 2. The divisor word
Check c02_divisor_word(std::uint64_t) {
    Check c;
    auto t = apply_word(ProcessWord("BA3BA2BABABA2"), seed_triple());
    c.expect(t.kappa == Rat(591, 1535), "kappa != 591/1535");
    c.expect(t.lambda == Rat(808, 1535), "lambda != 808/1535");
    Rat level = opt::divisor_level(t);
    c.expect(level == Rat(55, 12756), "divisor level != 55/12756");
    c.expect(level >= Rat(1, 232), "55/12756 < 1/232");
    c.note("level " + rat_to_string(level));
    return c;
}

// 3. Rankin search
Check c03_rankin(std::uint64_t seed) {
    Check c;
    auto rep = opt::optimize_word(opt::ObjectiveKind::MinKappaPlusLambda, 40, 60.0, seed);
    c.expect(rep.best_value <= Rat(8291, 10000), "kappa+lambda > 0.8291");
    auto t = apply_word(rep.best_word, seed_triple());
    c.expect(t.kappa + t.lambda == rep.best_value, "report value inconsistent");
    Rat delta = opt::subconvex_delta(t);
    c.expect(delta >= Rat(85489, 1000000), "subconvex delta < 0.085489");
    std::ostringstream os;
    os << "best " << to_double(rep.best_value) << " via " << rep.best_word.str() << " ("
       << rep.nodes_expanded << " nodes)";
    c.note(os.str());
    return c;
}

// 4. Table 2 / gamma curve
Check c04_table2(std::uint64_t) {
    Check c;
    auto seed = seed_triple();
    struct Row {
        const char* word;
        Rat num0, num1, den;  // gamma = (num0 - num1 theta)/den
        Rat validity;
    };
    const Row rows[] = {
        {"A", Rat(19), Rat(18), Rat(14), Rat(16, 17)},
        {"A2", Rat(86), Rat(83), Rat(60), Rat(8, 9)},
        {"A3", Rat(91), Rat(89), Rat(62), Rat(112, 131)},
    };
    for (const auto& row : rows) {
        auto pair = apply_word(ProcessWord(row.word), seed);
        Rat vr = opt::validity_range(pair, opt::LpVariant::Table2, xp::PairFamily::Ak);
        c.expect(vr == row.validity, std::string(row.word) + " validity range mismatch");
        for (int i = 0; i < 50; ++i) {
            Rat theta = Rat(1, 2) + (vr - Rat(1, 2)) * Rat(i, 50);
            auto r = opt::level_max_gamma({theta, pair, opt::LpVariant::Table2, xp::PairFamily::Ak});
            if (!r) {
                c.expect(false, "LP infeasible inside validity range");
                break;
            }
            c.expect(r->gamma == (row.num0 - row.num1 * theta) / row.den,
                     std::string(row.word) + " formula mismatch");
        }
    }
    c.expect(opt::gamma_of_theta(Rat(1, 2)) == Rat(3, 4), "gamma(1/2) != 3/4");
    c.expect(opt::gamma_of_theta(Rat(64, 97)) == Rat(101, 194), "gamma(64/97) != 101/194");
    c.expect(opt::gamma_of_theta(Rat(32, 41)) == Rat(29, 82), "gamma(32/41) != 29/82");
    auto pairA = apply_word(ProcessWord("A"), seed);
    auto lim = opt::level_max_gamma({Rat(16, 17), pairA, opt::LpVariant::Table2, xp::PairFamily::Ak});
    c.expect(lim && lim->gamma == Rat(5, 34), "left limit at 16/17 != 5/34");
    c.note("3 formulas x 50 samples, ranges 16/17, 8/9, 112/131");
    return c;
}

// 5. Calculus algebra
Check c05_calculus(std::uint64_t seed) {
    Check c;
    std::mt19937_64 rng(seed);
    auto random_triple = [&] {
        auto r = [&](Rat lo, Rat hi) {
            long long den = 1 + static_cast<long long>(rng() % 997);
            long long num = static_cast<long long>(rng() % static_cast<unsigned long long>(den + 1));
            return lo + (hi - lo) * Rat(num, den);
        };
        return ExponentTriple{r(Rat(0), Rat(1, 2)), r(Rat(1, 2), Rat(1)), r(Rat(0), Rat(1))};
    };
    for (int i = 0; i < 1000; ++i) {
        auto t = random_triple();
        if (xp::apply_B(xp::apply_B(t)) != t) {
            c.expect(false, "B∘B != id");
            break;
        }
        if (xp::inverse_A(xp::apply_A(t)) != t) {
            c.expect(false, "invA∘A != id");
            break;
        }
    }
    c.expect(xp::inverse_A(xp::apply_A(seed_triple())) == seed_triple(), "seed round trip");
    // box closure for every word of length <= 12
    for (int len = 0; len <= 12 && c.ok; ++len) {
        for (unsigned mask = 0; mask < (1u << len); ++mask) {
            std::string letters;
            for (int i = 0; i < len; ++i) letters.push_back((mask >> i) & 1 ? 'B' : 'A');
            auto t = apply_word(ProcessWord::from_letters(letters), seed_triple());
            if (!t.in_box()) {
                c.expect(false, "box violated by " + letters);
                break;
            }
        }
    }
    c.note("1000 involution/round-trip cases, all words to length 12");
    return c;
}

// 6. Appendix B stationary phase + CRT
Check c06_stationary(std::uint64_t seed) {
    Check c;
    std::mt19937_64 rng(seed ^ 0xB2);
    const u64 ps[] = {3, 5, 7, 11};
    for (int i = 0; i < 200; ++i) {
        u64 p = ps[rng() % 4];
        int beta = 2 + static_cast<int>(rng() % 4);
        auto lam = random_lambda(rng);
        u64 cmod = 1;
        for (int j = 0; j < beta; ++j) cmod *= p;
        auto direct = csum::sigma_direct(lam, cmod);
        auto stat = csum::sigma_prime_power(lam, p, beta);
        if (std::abs(direct.value - stat.value) > 1e-8 * static_cast<double>(cmod)) {
            c.expect(false, "stationary mismatch at p=" + std::to_string(p) +
                                " beta=" + std::to_string(beta));
            break;
        }
        if (direct.excluded != stat.excluded) {
            c.expect(false, "exclusion mismatch");
            break;
        }
    }
    for (int i = 0; i < 200; ++i) {
        u64 cmod = 2 + rng() % 9999;
        auto lam = random_lambda(rng);
        auto direct = csum::sigma_direct(lam, cmod);
        auto crt = csum::sigma_crt(lam, nt::factorize(cmod));
        if (std::abs(direct.value - crt.value) > 1e-8 * static_cast<double>(cmod) ||
            direct.excluded != crt.excluded) {
            c.expect(false, "CRT mismatch at c=" + std::to_string(cmod));
            break;
        }
    }
    c.note("200 stationary + 200 CRT cases");
    return c;
}

// 7. Inequality suites
Check c07_inequalities(std::uint64_t seed) {
    Check c;
    std::mt19937_64 rng(seed ^ 0x71);

    std::vector<u64> primes;
    for (u64 p = 3; p <= 500; ++p)
        if (nt::is_prime(p)) primes.push_back(p);
    int weil_done = 0;
    while (weil_done < 500) {
        u64 p = primes[rng() % primes.size()];
        auto lam = random_lambda(rng);
        if (csum::degenerate_mod_p(lam, p)) continue;
        if (!csum::weil_check(lam, p).pass) {
            c.expect(false, "Weil failure at p=" + std::to_string(p));
            break;
        }
        ++weil_done;
    }

    int b3_done = 0;
    while (c.ok && b3_done < 300) {
        u64 cmod = 2 + rng() % 9999;
        auto lam = random_lambda(rng);
        bool degenerate = false;
        for (auto [p, e] : nt::factorize(cmod).pairs)
            if (csum::degenerate_mod_p(lam, p)) degenerate = true;
        if (degenerate) continue;
        if (!csum::thmB3_check(lam, cmod).pass) {
            c.expect(false, "ThmB3 failure at c=" + std::to_string(cmod));
            break;
        }
        ++b3_done;
    }

    auto random_psi = [&](u64 q) {
        std::vector<cplx> v(q);
        for (auto& z : v)
            z = {std::uniform_real_distribution<double>(-1, 1)(rng),
                 std::uniform_real_distribution<double>(-1, 1)(rng)};
        return v;
    };
    const std::pair<u64, u64> moduli[] = {{7, 5}, {11, 8}, {13, 9}, {25, 6}};
    for (int i = 0; c.ok && i < 200; ++i) {
        auto [q1, q2] = moduli[rng() % 4];
        u64 N = 5 + rng() % 60;
        i64 M = static_cast<i64>(rng() % 100) - 50;
        auto r = trace::weyl_differencing_check(random_psi(q1), random_psi(q2), M, N);
        if (!r.pass) {
            c.expect(false, "Weyl differencing failure");
            break;
        }
    }

    for (u64 q = 1; c.ok && q <= 200; ++q) {
        for (u64 x = 1; x <= 500; ++x) {
            if (!nt::gcd_average_check(x, q).pass) {
                c.expect(false, "gcd bound failure");
                break;
            }
        }
    }

    for (int i = 0; c.ok && i < 200; ++i) {
        u64 q = 8 + rng() % 505;
        std::vector<cplx> f(q, 0);
        u64 nnz = 1 + rng() % (q / 2 + 1);
        for (u64 j = 0; j < nnz; ++j)
            f[rng() % q] = cplx{std::uniform_real_distribution<double>(-1, 1)(rng),
                                std::uniform_real_distribution<double>(-1, 1)(rng)};
        bool any = false;
        for (auto& z : f) any |= std::abs(z) > 0;
        if (!any) f[0] = 1;
        if (!nt::uncertainty_check(f).pass) {
            c.expect(false, "uncertainty product < q");
            break;
        }
    }
    c.note("Weil 500, ThmB3 300, differencing 200, gcd exhaustive, support 200");
    return c;
}

// 8. Gauss correspondence
Check c08_gauss(std::uint64_t seed) {
    Check c;
    for (u64 ell = 2; ell <= 10000; ++ell) {
        if (quad::rho(ell) == 0) continue;
        try {
            auto corr = quad::correspondence(ell);
            if (corr.pairs.size() != quad::rho(ell)) {
                c.expect(false, "pair count mismatch at ell=" + std::to_string(ell));
                break;
            }
        } catch (const std::exception& e) {
            c.expect(false, "ell=" + std::to_string(ell) + ": " + e.what());
            break;
        }
    }
    std::mt19937_64 rng(seed ^ 0x88);
    int done = 0;
    while (c.ok && done < 200) {
        u64 ell = 2 + rng() % 1999;
        if (quad::rho(ell) == 0) continue;
        u64 d = 1 + rng() % 50;
        if (nt::gcd_u64(d, ell) != 1) continue;
        auto roots = quad::roots_minus_one(ell).roots;
        u64 a = roots[rng() % roots.size()];
        auto dec = quad::decompose_fraction(d, a, ell);
        if (!dec.exact || (dec.exact_squarefree_form && !*dec.exact_squarefree_form)) {
            c.expect(false, "decomposition failed at d=" + std::to_string(d) +
                                " ell=" + std::to_string(ell));
            break;
        }
        ++done;
    }
    c.note("bijection to 10^4, 200 decompositions");
    return c;
}

// 9. Sieve solver
Check c09_sieve(std::uint64_t) {
    Check c;
    sieve::SieveTable t = sieve::build_table(12.0, 1.0 / 1024);
    for (double s = 2.0; s <= 3.0; s += 1.0 / 64)
        if (std::abs(t.F_table(s) - sieve::SieveTable::F_closed(s)) >= 1e-10) {
            c.expect(false, "F closed-form mismatch");
            break;
        }
    for (double s = 2.0 + 1.0 / 64; c.ok && s <= 4.0; s += 1.0 / 64)
        if (std::abs(t.f_table(s) - sieve::SieveTable::f_closed(s)) >= 1e-10) {
            c.expect(false, "f closed-form mismatch");
            break;
        }
    c.expect(std::abs(t.F(10.0) - 1.0) < 1e-3, "F(10) not near 1");
    c.expect(std::abs(t.f(10.0) - 1.0) < 1e-3, "f(10) not near 1");
    sieve::SieveTable fine = sieve::build_table(12.0, 1.0 / 2048);
    for (double s = 2.5; c.ok && s <= 10.0; s += 0.25)
        if (std::abs(t.F(s) - fine.F(s)) >= 1e-8 || std::abs(t.f(s) - fine.f(s)) >= 1e-8) {
            c.expect(false, "grid refinement drift");
            break;
        }
    std::ostringstream os;
    os << "F(10)-1 = " << t.F(10.0) - 1.0 << ", f(10)-1 = " << t.f(10.0) - 1.0;
    c.note(os.str());
    return c;
}

// 10. Fourier properties
Check c10_fourier(std::uint64_t seed) {
    Check c;
    std::mt19937_64 rng(seed ^ 0xF0);
    std::vector<u64> primes;
    for (u64 p = 5; p <= 499; ++p)
        if (nt::is_prime(p)) primes.push_back(p);
    for (int trial = 0; trial < 100 && c.ok; ++trial) {
        u64 p = primes[rng() % primes.size()];
        std::vector<cplx> f(p);
        double norm1 = 0;
        for (auto& v : f) {
            v = {std::uniform_real_distribution<double>(-1, 1)(rng),
                 std::uniform_real_distribution<double>(-1, 1)(rng)};
            norm1 += std::norm(v);
        }
        auto g = trace::fourier_transform_p(f, p);
        double norm2 = 0;
        for (auto& v : g) norm2 += std::norm(v);
        if (std::abs(norm1 - norm2) > 1e-9 * std::max(1.0, norm1)) {
            c.expect(false, "Parseval failure at p=" + std::to_string(p));
            break;
        }
        auto gg = trace::fourier_transform_p(g, p);
        for (u64 x = 0; x < p; ++x) {
            if (std::abs(gg[x] - f[(p - x) % p]) > 1e-9) {
                c.expect(false, "involution failure at p=" + std::to_string(p));
                break;
            }
        }
    }
    c.note("100 random functions");
    return c;
}

// 11. Empirical exponent pair monitoring
Check c11_empirical(std::uint64_t) {
    Check c;
    auto spec = trace::CompositeTraceSpec::inverse_phase(3, {3, 5, 7, 11, 13});
    u64 q = spec.modulus();
    std::vector<u64> Ns = {static_cast<u64>(std::pow(q, 0.4)), static_cast<u64>(std::pow(q, 0.5)),
                           static_cast<u64>(std::pow(q, 0.6))};
    double worst = 0;
    for (const char* word : {"A", "A2", "BA2"}) {
        auto pair = apply_word(ProcessWord(word), seed_triple());
        auto rep = trace::empirical_pair_check(spec, pair, Ns, 32);
        worst = std::max(worst, rep.max_ratio);
        c.expect(rep.max_ratio <= 50.0, std::string(word) + " ratio above 50");
    }
    std::ostringstream os;
    os << "max ratio " << worst << " (cap 50)";
    c.note(os.str());
    return c;
}

// 12. Performance
Check c12_performance(std::uint64_t) {
    Check c;
    using clock = std::chrono::steady_clock;

    csum::RationalFunctionZ inv{nt::PolyZ{1}, nt::PolyZ{0, 1}};
    auto t0 = clock::now();
    auto s = csum::sigma_direct(inv, 1000000);
    double dt1 = std::chrono::duration<double>(clock::now() - t0).count();
    c.expect(dt1 < 1.0, "sigma_direct at c=1e6 took " + std::to_string(dt1) + "s");
    c.expect(std::abs(s.value) <= 1e6, "implausible sum");

    auto spec = trace::CompositeTraceSpec::inverse_phase(1, {101, 103, 107, 109, 113});
    t0 = clock::now();
    cplx four = trace::incomplete_sum(spec, 0, 10000000, 4);
    double dt2 = std::chrono::duration<double>(clock::now() - t0).count();
    c.expect(dt2 < 20.0, "incomplete_sum took " + std::to_string(dt2) + "s");
    cplx one = trace::incomplete_sum(spec, 0, 10000000, 1);
    c.expect(four == one, "worker count changed the bits");

    std::ostringstream os;
    os << "sigma 1e6: " << dt1 << "s; sum 1e7 on 4 workers: " << dt2 << "s";
    c.note(os.str());
    return c;
}

struct Criterion {
    std::string name;
    double limit_seconds;
    Check (*fn)(std::uint64_t);
};

const Criterion kCriteria[] = {
    {"c01_table1", 1.0, c01_table1},
    {"c02_divisor_word", 1.0, c02_divisor_word},
    {"c03_rankin_search", 60.0, c03_rankin},
    {"c04_table2_gamma", 5.0, c04_table2},
    {"c05_calculus_algebra", 5.0, c05_calculus},
    {"c06_appxB_stationary", 30.0, c06_stationary},
    {"c07_inequality_suites", 60.0, c07_inequalities},
    {"c08_gauss_correspondence", 30.0, c08_gauss},
    {"c09_sieve_solver", 10.0, c09_sieve},
    {"c10_fourier_props", 10.0, c10_fourier},
    {"c11_empirical_pairs", 60.0, c11_empirical},
    {"c12_performance", 25.0, c12_performance},
};

int resolve_threads(int threads) {
    if (threads > 0) return threads;
    if (const char* env = std::getenv("VDC_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

}  // namespace

std::vector<CriterionResult> run_suites(const Options& opts) {
    std::vector<const Criterion*> todo;
    for (const auto& cr : kCriteria)
        if (opts.filter.empty() || cr.name.find(opts.filter) != std::string::npos)
            todo.push_back(&cr);

    std::vector<CriterionResult> results(todo.size());
    std::atomic<size_t> next{0};
    auto work = [&] {
        while (true) {
            size_t i = next.fetch_add(1);
            if (i >= todo.size()) return;
            const Criterion& cr = *todo[i];
            auto t0 = std::chrono::steady_clock::now();
            Check c;
            try {
                c = cr.fn(opts.seed);
            } catch (const std::exception& e) {
                c.ok = false;
                c.note(std::string("exception: ") + e.what());
            }
            double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            CriterionResult& r = results[i];
            r.name = cr.name;
            r.seconds = dt;
            r.limit_seconds = cr.limit_seconds;
            r.pass = c.ok && dt < cr.limit_seconds;
            r.detail = c.detail.str();
            if (c.ok && dt >= cr.limit_seconds) r.detail += "; over time limit";
        }
    };

    int nthreads = opts.parallel ? std::min<int>(resolve_threads(opts.threads),
                                                 static_cast<int>(todo.size()))
                                 : 1;
    if (nthreads <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < nthreads; ++i) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }

    std::sort(results.begin(), results.end(),
              [](const CriterionResult& a, const CriterionResult& b) { return a.name < b.name; });
    return results;
}

bool report(const std::vector<CriterionResult>& results, std::ostream& os) {
    bool all = true;
    for (const auto& r : results) {
        all = all && r.pass;
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%7.2fs", r.seconds);
        os << (r.pass ? "[PASS] " : "[FAIL] ") << r.name << " (" << buf << " / limit "
           << r.limit_seconds << "s)";
        if (!r.detail.empty()) os << " — " << r.detail;
        os << "\n";
    }
    return all;
}

}  // namespace vdc::verify
