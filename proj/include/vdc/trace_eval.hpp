#pragma once

#include <complex>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "vdc/nt_utils.hpp"
#include "vdc/xp_core.hpp"

namespace vdc::trace {

using nt::cplx;
using nt::i64;
using nt::u64;

// e(f1(x) / f2(x) / p), zero at poles of f2.
struct AdditiveRational {
    nt::PolyZ f1, f2;
};

// chi_r(f(x)) with chi_r = e(r * ind_g(.) / (p-1)), g the smallest primitive
// root; zero where p | f(x). Requires odd p.
struct MultiplicativeChar {
    long long r = 1;
    nt::PolyZ f;
};

// Normalized hyper-Kloosterman sum Kl_k; Kl_k(0,p) = (-1)^{k-1} p^{-(k-1)/2}.
struct HyperKloosterman {
    int k = 2;
};

// Explicit table of values (length p at evaluation time).
struct TableValues {
    std::vector<cplx> values;
};

struct TraceSpec {
    std::variant<AdditiveRational, MultiplicativeChar, HyperKloosterman, TableValues> variant;
    int amiability_hint = -1;  // -1 encodes infinity
    int conductor_bound = 0;   // 0 = derive from the variant

    int conductor() const;
    std::string str() const;
};

// All values over F_p in one pass. Kloosterman lines are built by iterated
// multiplicative convolution, O(k p^2) per line.
std::vector<cplx> eval_line(const TraceSpec& spec, u64 p);
cplx eval_trace(const TraceSpec& spec, u64 p, u64 x);

// Product of per-prime trace functions over a squarefree modulus.
struct CompositeTraceSpec {
    std::vector<u64> primes;                 // distinct primes, ascending
    std::map<u64, TraceSpec> per_prime;

    u64 modulus() const;
    // K(n) = e(h * nbar / q) split into per-prime twisted inverse phases.
    static CompositeTraceSpec inverse_phase(i64 h, const std::vector<u64>& primes);
};

cplx eval_composite(const CompositeTraceSpec& spec, i64 n);

// Sum over M < n <= M+N. Sharded into fixed blocks summed in ascending
// index order and combined by a fixed pairwise tree, so the result is
// bit-identical for any worker count. threads = 0 reads VDC_THREADS.
cplx incomplete_sum(const CompositeTraceSpec& spec, i64 M, u64 N, int threads = 0);

// FT(f)(t) = -p^{-1/2} sum_x f(x) e(tx/p); involutive: FT(FT(f))(x) = f(-x).
std::vector<cplx> fourier_transform_p(const std::vector<cplx>& values, u64 p);

struct QuasiOrthogonalityCheck {
    double lhs = 0;
    double bound = 0;
    cplx alpha;
    bool pass = false;
};
// |sum K1 conj(K2) - alpha p| <= 3 c1^2 c2^2 sqrt(p), with alpha = 0 for
// distinct inputs and the measured pointwise ratio when the lines are
// proportional.
QuasiOrthogonalityCheck quasi_orthogonality_check(const TraceSpec& s1, const TraceSpec& s2, u64 p);

struct WeylDifferencingCheck {
    double lhs = 0, rhs = 0;
    bool pass = false;
};
// |S(Psi;I)|^2 <= ||psi2||_inf^2 q2 (N + sum_{0<|l|<=N/q2} |D_l|) with
// Psi = psi1 psi2 and D_l the windowed difference correlation of psi1.
// psi2 is rescaled to sup norm <= 1 first.
WeylDifferencingCheck weyl_differencing_check(const std::vector<cplx>& psi1,
                                              const std::vector<cplx>& psi2, i64 M, u64 N);

struct BoundReport {
    u64 q = 0;
    double kappa = 0, lambda = 0;
    struct Entry {
        u64 N;
        double max_ratio;
    };
    std::vector<Entry> entries;
    double max_ratio = 0;
};
// Max over 32 shifts of |S| / ((q/N)^kappa N^lambda) for each N (delta = 1).
BoundReport empirical_pair_check(const CompositeTraceSpec& spec, const xp::ExponentTriple& t,
                                 const std::vector<u64>& N_list, int shifts = 32);

// Mini-grammar: "addrat:f1=c0,c1,...;f2=d0,d1,...", "mult:r=<int>;f=c0,c1,...",
// "kloo:k=<int>"; composite: "q=p1*p2*...;p1=<spec>;p2=<spec>;...".
TraceSpec parse_trace_spec(const std::string& text);
CompositeTraceSpec parse_composite_spec(const std::string& text);

}  // namespace vdc::trace
