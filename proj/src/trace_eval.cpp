#include "vdc/trace_eval.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace vdc::trace {

int TraceSpec::conductor() const {
    if (conductor_bound > 0) return conductor_bound;
    if (auto* a = std::get_if<AdditiveRational>(&variant))
        return std::max(0, a->f1.degree()) + std::max(0, a->f2.degree()) + 1;
    if (auto* m = std::get_if<MultiplicativeChar>(&variant)) return std::max(0, m->f.degree()) + 1;
    if (auto* k = std::get_if<HyperKloosterman>(&variant)) return k->k + 3;
    return 1;
}

std::string TraceSpec::str() const {
    std::ostringstream os;
    if (auto* a = std::get_if<AdditiveRational>(&variant))
        os << "addrat:f1=" << a->f1.str() << ";f2=" << a->f2.str();
    else if (auto* m = std::get_if<MultiplicativeChar>(&variant))
        os << "mult:r=" << m->r << ";f=" << m->f.str();
    else if (auto* k = std::get_if<HyperKloosterman>(&variant))
        os << "kloo:k=" << k->k;
    else
        os << "table";
    return os.str();
}

namespace {

std::vector<u64> inverse_table(u64 p) {
    std::vector<u64> inv(p, 0);
    if (p > 1) inv[1] = 1;
    for (u64 i = 2; i < p; ++i)
        inv[i] = nt::mulmod(p - p / i, inv[p % i], p);
    return inv;
}

std::vector<cplx> additive_rational_line(const AdditiveRational& a, u64 p) {
    auto roots = nt::unit_root_table(p);
    auto inv = inverse_table(p);
    std::vector<cplx> line(p);
    for (u64 x = 0; x < p; ++x) {
        u64 v2 = a.f2.eval_mod(x, p);
        if (v2 == 0) {
            line[x] = 0;
            continue;
        }
        u64 phase = nt::mulmod(a.f1.eval_mod(x, p), inv[v2], p);
        line[x] = roots[phase];
    }
    return line;
}

std::vector<cplx> mult_char_line(const MultiplicativeChar& m, u64 p) {
    if (p == 2) throw std::domain_error("MultiplicativeChar: p must be odd");
    auto ind = nt::index_table(p);
    auto roots = nt::unit_root_table(p - 1);
    std::vector<cplx> line(p);
    i64 r = m.r % static_cast<i64>(p - 1);
    if (r < 0) r += static_cast<i64>(p - 1);
    for (u64 x = 0; x < p; ++x) {
        u64 v = m.f.eval_mod(x, p);
        if (v == 0) {
            line[x] = 0;
            continue;
        }
        u64 phase = (static_cast<u64>(r) * ind[v]) % (p - 1);
        line[x] = roots[phase];
    }
    return line;
}

// W_j[y] = sum over (x1..xj) in F_p^j with product y of e((x1+..+xj)/p);
// W_{j+1}[y] = sum_{u != 0} W_j[u] e(y ubar / p) for y != 0, and
// W_{j+1}[0] = sum_{u != 0} W_j[u].
std::vector<cplx> kloosterman_line(int k, u64 p) {
    if (k < 1) throw std::domain_error("HyperKloosterman: k must be >= 1");
    auto roots = nt::unit_root_table(p);
    auto inv = inverse_table(p);
    std::vector<cplx> w(p);
    for (u64 x = 0; x < p; ++x) w[x] = roots[x];
    for (int j = 2; j <= k; ++j) {
        std::vector<cplx> next(p, cplx{0, 0});
        for (u64 u = 1; u < p; ++u) {
            next[0] += w[u];
            u64 ub = inv[u];
            for (u64 y = 1; y < p; ++y) next[y] += w[u] * roots[nt::mulmod(y, ub, p)];
        }
        w.swap(next);
    }
    double norm = std::pow(static_cast<double>(p), -0.5 * (k - 1));
    for (auto& v : w) v *= norm;
    return w;
}

}  // namespace

std::vector<cplx> eval_line(const TraceSpec& spec, u64 p) {
    if (!nt::is_prime(p)) throw std::domain_error("eval_line: p must be prime");
    if (auto* a = std::get_if<AdditiveRational>(&spec.variant)) {
        if (a->f2.is_zero()) throw std::domain_error("AdditiveRational: zero denominator");
        return additive_rational_line(*a, p);
    }
    if (auto* m = std::get_if<MultiplicativeChar>(&spec.variant)) return mult_char_line(*m, p);
    if (auto* k = std::get_if<HyperKloosterman>(&spec.variant)) return kloosterman_line(k->k, p);
    const auto& t = std::get<TableValues>(spec.variant);
    if (t.values.size() != p) throw std::invalid_argument("TableValues: length must equal p");
    return t.values;
}

cplx eval_trace(const TraceSpec& spec, u64 p, u64 x) { return eval_line(spec, p)[x % p]; }

u64 CompositeTraceSpec::modulus() const {
    u64 q = 1;
    for (u64 p : primes) q *= p;
    return q;
}

CompositeTraceSpec CompositeTraceSpec::inverse_phase(i64 h, const std::vector<u64>& primes) {
    CompositeTraceSpec spec;
    spec.primes = primes;
    std::sort(spec.primes.begin(), spec.primes.end());
    u64 q = 1;
    for (u64 p : spec.primes) q *= p;
    for (u64 p : spec.primes) {
        u64 cof = (q / p) % p;
        i64 hp = h % static_cast<i64>(p);
        if (hp < 0) hp += static_cast<i64>(p);
        u64 c = nt::mulmod(static_cast<u64>(hp), nt::invmod(cof, p), p);
        TraceSpec ts;
        ts.variant = AdditiveRational{nt::PolyZ{static_cast<i64>(c)}, nt::PolyZ{0, 1}};
        spec.per_prime.emplace(p, std::move(ts));
    }
    return spec;
}

cplx eval_composite(const CompositeTraceSpec& spec, i64 n) {
    cplx prod = 1;
    for (u64 p : spec.primes) {
        i64 r = n % static_cast<i64>(p);
        if (r < 0) r += static_cast<i64>(p);
        prod *= eval_trace(spec.per_prime.at(p), p, static_cast<u64>(r));
    }
    return prod;
}

namespace {

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

cplx incomplete_sum(const CompositeTraceSpec& spec, i64 M, u64 N, int threads) {
    if (N == 0) return 0;
    std::vector<std::vector<cplx>> lines;
    lines.reserve(spec.primes.size());
    for (u64 p : spec.primes) lines.push_back(eval_line(spec.per_prime.at(p), p));

    constexpr u64 kBlock = 1u << 15;
    u64 nblocks = (N + kBlock - 1) / kBlock;
    std::vector<cplx> partial(nblocks, cplx{0, 0});
    std::atomic<u64> next{0};

    auto worker = [&] {
        while (true) {
            u64 b = next.fetch_add(1);
            if (b >= nblocks) return;
            i64 lo = M + 1 + static_cast<i64>(b * kBlock);
            i64 hi = M + static_cast<i64>(std::min(N, (b + 1) * kBlock));
            cplx s = 0;
            for (i64 n = lo; n <= hi; ++n) {
                cplx prod = 1;
                for (size_t i = 0; i < spec.primes.size(); ++i) {
                    i64 p = static_cast<i64>(spec.primes[i]);
                    i64 r = n % p;
                    if (r < 0) r += p;
                    prod *= lines[i][static_cast<u64>(r)];
                }
                s += prod;
            }
            partial[b] = s;
        }
    };

    int nthreads = std::min<u64>(resolve_threads(threads), nblocks);
    if (nthreads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    // fixed pairwise tree, independent of the worker count
    std::vector<cplx> level = std::move(partial);
    while (level.size() > 1) {
        std::vector<cplx> up((level.size() + 1) / 2);
        for (size_t i = 0; i + 1 < level.size(); i += 2) up[i / 2] = level[i] + level[i + 1];
        if (level.size() & 1) up.back() = level.back();
        level.swap(up);
    }
    return level[0];
}

std::vector<cplx> fourier_transform_p(const std::vector<cplx>& values, u64 p) {
    if (values.size() != p) throw std::invalid_argument("fourier_transform_p: length must equal p");
    auto roots = nt::unit_root_table(p);
    std::vector<cplx> out(p);
    double norm = -1.0 / std::sqrt(static_cast<double>(p));
    for (u64 t = 0; t < p; ++t) {
        cplx s = 0;
        for (u64 x = 0; x < p; ++x) s += values[x] * roots[(t * x) % p];
        out[t] = s * norm;
    }
    return out;
}

QuasiOrthogonalityCheck quasi_orthogonality_check(const TraceSpec& s1, const TraceSpec& s2, u64 p) {
    auto l1 = eval_line(s1, p);
    auto l2 = eval_line(s2, p);

    // proportional lines -> measured alpha, otherwise alpha = 0
    cplx alpha = 0;
    {
        double m2 = 0;
        for (const auto& v : l2) m2 = std::max(m2, std::abs(v));
        size_t x0 = l2.size();
        for (size_t x = 0; x < l2.size(); ++x)
            if (std::abs(l2[x]) > 0.5 * m2) {
                x0 = x;
                break;
            }
        if (x0 < l2.size()) {
            cplx c = l1[x0] / l2[x0];
            bool prop = true;
            for (size_t x = 0; x < l1.size(); ++x)
                if (std::abs(l1[x] - c * l2[x]) > 1e-6 * (1.0 + m2)) {
                    prop = false;
                    break;
                }
            if (prop) alpha = c;
        }
    }

    cplx corr = 0;
    for (u64 x = 0; x < p; ++x) corr += l1[x] * std::conj(l2[x]);

    QuasiOrthogonalityCheck out;
    out.alpha = alpha;
    out.lhs = std::abs(corr - alpha * static_cast<double>(p));
    double c1 = s1.conductor(), c2 = s2.conductor();
    out.bound = 3.0 * c1 * c1 * c2 * c2 * std::sqrt(static_cast<double>(p));
    out.pass = out.lhs <= out.bound;
    return out;
}

WeylDifferencingCheck weyl_differencing_check(const std::vector<cplx>& psi1,
                                              const std::vector<cplx>& psi2, i64 M, u64 N) {
    u64 q1 = psi1.size(), q2 = psi2.size();
    if (q1 == 0 || q2 == 0) throw std::invalid_argument("weyl_differencing_check: empty inputs");
    if (nt::gcd_u64(q1, q2) != 1)
        throw std::invalid_argument("weyl_differencing_check: moduli must be coprime");

    std::vector<cplx> p2 = psi2;
    double sup2 = 0;
    for (const auto& v : p2) sup2 = std::max(sup2, std::abs(v));
    if (sup2 > 1.0) {
        for (auto& v : p2) v /= sup2;
        sup2 = 1.0;
    }

    auto at = [](const std::vector<cplx>& f, i64 n) {
        i64 q = static_cast<i64>(f.size());
        i64 r = n % q;
        if (r < 0) r += q;
        return f[static_cast<u64>(r)];
    };

    cplx S = 0;
    for (i64 n = M + 1; n <= M + static_cast<i64>(N); ++n) S += at(psi1, n) * at(p2, n);
    double lhs = std::norm(S);

    double corr = 0;
    for (u64 l = 1; l * q2 <= N; ++l) {
        i64 shift = static_cast<i64>(l * q2);
        cplx D = 0;
        for (i64 n = M + 1; n + shift <= M + static_cast<i64>(N); ++n)
            D += at(psi1, n) * std::conj(at(psi1, n + shift));
        corr += 2.0 * std::abs(D);  // l and -l contribute conjugates
    }
    double rhs = sup2 * sup2 * static_cast<double>(q2) * (static_cast<double>(N) + corr);

    WeylDifferencingCheck out;
    out.lhs = lhs;
    out.rhs = rhs;
    out.pass = lhs <= rhs * (1 + 1e-12) + 1e-9;
    return out;
}

BoundReport empirical_pair_check(const CompositeTraceSpec& spec, const xp::ExponentTriple& t,
                                 const std::vector<u64>& N_list, int shifts) {
    BoundReport rep;
    rep.q = spec.modulus();
    rep.kappa = to_double(t.kappa);
    rep.lambda = to_double(t.lambda);
    for (u64 N : N_list) {
        double denom = std::pow(static_cast<double>(rep.q) / N, rep.kappa) *
                       std::pow(static_cast<double>(N), rep.lambda);
        double worst = 0;
        for (int j = 0; j < shifts; ++j) {
            i64 M = static_cast<i64>((rep.q / static_cast<u64>(shifts)) * static_cast<u64>(j));
            double ratio = std::abs(incomplete_sum(spec, M, N, 1)) / denom;
            worst = std::max(worst, ratio);
        }
        rep.entries.push_back({N, worst});
        rep.max_ratio = std::max(rep.max_ratio, worst);
    }
    return rep;
}

// ---- mini-grammar ---------------------------------------------------------

namespace {

std::vector<i64> parse_coeffs(const std::string& s) {
    std::vector<i64> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stoll(item));
    return out;
}

std::string expect_prefix(const std::string& s, const std::string& prefix) {
    if (s.rfind(prefix, 0) != 0)
        throw std::invalid_argument("trace spec: expected '" + prefix + "' in '" + s + "'");
    return s.substr(prefix.size());
}

}  // namespace

TraceSpec parse_trace_spec(const std::string& text) {
    TraceSpec spec;
    if (text.rfind("addrat:", 0) == 0) {
        std::string body = text.substr(7);
        auto semi = body.find(';');
        if (semi == std::string::npos) throw std::invalid_argument("addrat: missing f2");
        auto f1 = parse_coeffs(expect_prefix(body.substr(0, semi), "f1="));
        auto f2 = parse_coeffs(expect_prefix(body.substr(semi + 1), "f2="));
        spec.variant = AdditiveRational{nt::PolyZ(f1), nt::PolyZ(f2)};
        return spec;
    }
    if (text.rfind("mult:", 0) == 0) {
        std::string body = text.substr(5);
        auto semi = body.find(';');
        if (semi == std::string::npos) throw std::invalid_argument("mult: missing f");
        long long r = std::stoll(expect_prefix(body.substr(0, semi), "r="));
        auto f = parse_coeffs(expect_prefix(body.substr(semi + 1), "f="));
        spec.variant = MultiplicativeChar{r, nt::PolyZ(f)};
        return spec;
    }
    if (text.rfind("kloo:", 0) == 0) {
        int k = std::stoi(expect_prefix(text.substr(5), "k="));
        spec.variant = HyperKloosterman{k};
        return spec;
    }
    throw std::invalid_argument("trace spec: unknown variant in '" + text + "'");
}

CompositeTraceSpec parse_composite_spec(const std::string& text) {
    // "q=3*5;3=kloo:k=2;5=addrat:f1=1;f2=0,1" -- per-prime specs may contain
    // ';' themselves, so segments that do not open a new prime are re-joined.
    std::vector<std::string> raw;
    {
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ';')) raw.push_back(item);
    }
    if (raw.empty() || raw[0].rfind("q=", 0) != 0)
        throw std::invalid_argument("composite spec must start with q=");

    auto opens_prime = [](const std::string& s) {
        auto eq = s.find('=');
        if (eq == std::string::npos || eq == 0) return false;
        for (size_t i = 0; i < eq; ++i)
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
        std::string rest = s.substr(eq + 1);
        return rest.rfind("addrat:", 0) == 0 || rest.rfind("mult:", 0) == 0 ||
               rest.rfind("kloo:", 0) == 0;
    };

    CompositeTraceSpec spec;
    {
        std::stringstream ss(raw[0].substr(2));
        std::string item;
        while (std::getline(ss, item, '*')) spec.primes.push_back(std::stoull(item));
        std::sort(spec.primes.begin(), spec.primes.end());
        for (size_t i = 0; i + 1 < spec.primes.size(); ++i)
            if (spec.primes[i] == spec.primes[i + 1])
                throw std::invalid_argument("composite spec: repeated prime");
        for (u64 p : spec.primes)
            if (!nt::is_prime(p)) throw std::invalid_argument("composite spec: non-prime factor");
    }

    size_t i = 1;
    while (i < raw.size()) {
        if (!opens_prime(raw[i]))
            throw std::invalid_argument("composite spec: expected <prime>=<spec>, got '" + raw[i] + "'");
        auto eq = raw[i].find('=');
        u64 p = std::stoull(raw[i].substr(0, eq));
        std::string body = raw[i].substr(eq + 1);
        ++i;
        while (i < raw.size() && !opens_prime(raw[i])) {
            body += ';';
            body += raw[i];
            ++i;
        }
        spec.per_prime[p] = parse_trace_spec(body);
    }
    for (u64 p : spec.primes)
        if (!spec.per_prime.count(p))
            throw std::invalid_argument("composite spec: missing spec for prime " + std::to_string(p));
    return spec;
}

}  // namespace vdc::trace
