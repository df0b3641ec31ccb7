#include "vdc/xp_opt.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>

namespace vdc::opt {

Rat divisor_level(const xp::ExponentTriple& t) {
    return (2 - t.kappa - 3 * t.lambda) / (6 * (t.kappa + 1));
}

Rat subconvex_delta(const xp::ExponentTriple& t) {
    return Rat(1, 2) - (t.kappa + t.lambda) / 2;
}

Rat objective_value(ObjectiveKind kind, const Rat& kappa, const Rat& lambda) {
    switch (kind) {
        case ObjectiveKind::MinKappaPlusLambda: return kappa + lambda;
        case ObjectiveKind::MaxDivisorLevel: return (2 - kappa - 3 * lambda) / (6 * (kappa + 1));
        case ObjectiveKind::MaxSubconvexDelta: return Rat(1, 2) - (kappa + lambda) / 2;
    }
    throw std::logic_error("objective_value: bad kind");
}

bool objective_is_minimization(ObjectiveKind kind) {
    return kind == ObjectiveKind::MinKappaPlusLambda;
}

namespace {

// Homogeneous integer matrix acting on (kappa : lambda : 1).
struct Mat3 {
    std::array<Int, 9> m;

    static Mat3 identity() { return {{1, 0, 0, 0, 1, 0, 0, 0, 1}}; }
    // kappa' = k/(2k+2), lambda' = (k+l+1)/(2k+2)
    static Mat3 letter_A() { return {{1, 0, 0, 1, 1, 1, 2, 0, 2}}; }
    // kappa' = (2l-1)/2, lambda' = (2k+1)/2
    static Mat3 letter_B() { return {{0, 2, -1, 2, 0, 1, 0, 0, 2}}; }

    Mat3 operator*(const Mat3& r) const {
        Mat3 out;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                Int s = 0;
                for (int k = 0; k < 3; ++k) s += m[3 * i + k] * r.m[3 * k + j];
                out.m[3 * i + j] = s;
            }
        return out;
    }

    std::pair<Rat, Rat> apply(const Rat& k, const Rat& l) const {
        Rat den = m[6] * k + m[7] * l + m[8];
        return {(m[0] * k + m[1] * l + m[2]) / den, (m[3] * k + m[4] * l + m[5]) / den};
    }

    // divide by content so equal maps compare equal
    std::array<Int, 9> normalized_key() const {
        Int g = 0;
        for (const Int& v : m) g = boost::multiprecision::gcd(g, v);
        std::array<Int, 9> key;
        if (g == 0) g = 1;
        for (int i = 0; i < 9; ++i) key[i] = m[i] / g;
        return key;
    }
};

const std::array<std::pair<Rat, Rat>, 4>& box_corners() {
    static const std::array<std::pair<Rat, Rat>, 4> corners = {{
        {Rat(0), Rat(1, 2)},
        {Rat(0), Rat(1)},
        {Rat(1, 2), Rat(1, 2)},
        {Rat(1, 2), Rat(1)},
    }};
    return corners;
}

// Exact bound of the objective over the image of the box under M.
// Objective o M is a ratio of affine forms, hence monotone along every
// axis-parallel segment; extrema sit on corners.
Rat box_bound(ObjectiveKind obj, const Mat3& M) {
    bool minimize = objective_is_minimization(obj);
    bool first = true;
    Rat best;
    for (const auto& [k, l] : box_corners()) {
        auto [k2, l2] = M.apply(k, l);
        Rat v = objective_value(obj, k2, l2);
        if (first || (minimize ? v < best : v > best)) best = v;
        first = false;
    }
    return best;
}

Mat3 matrix_of_prefix(const std::string& letters) {
    Mat3 M = Mat3::identity();
    for (char ch : letters) M = M * (ch == 'A' ? Mat3::letter_A() : Mat3::letter_B());
    return M;
}

struct SearchState {
    ObjectiveKind obj;
    bool minimize;
    int depth_cap;
    double time_cap;
    std::chrono::steady_clock::time_point start;
    Rat best_value;
    std::string best_word;
    std::uint64_t nodes = 0;
    bool timed_out = false;
    std::map<std::array<Int, 9>, int> seen;  // normalized map -> remaining depth
    std::mt19937_64 rng;
    std::vector<PrunedSample> pruned;
    std::uint64_t pruned_seen = 0;

    bool better(const Rat& v) const { return minimize ? v < best_value : v > best_value; }
    bool cannot_beat(const Rat& bound) const {
        return minimize ? bound >= best_value : bound <= best_value;
    }

    void record_pruned(const std::string& word, const Rat& bound) {
        ++pruned_seen;
        constexpr size_t kKeep = 64;
        if (pruned.size() < kKeep) {
            pruned.push_back({word, bound, best_value});
        } else {
            std::uniform_int_distribution<std::uint64_t> pick(0, pruned_seen - 1);
            std::uint64_t j = pick(rng);
            if (j < kKeep) pruned[j] = {word, bound, best_value};
        }
    }
};

void dfs(SearchState& st, const Mat3& M, std::string& word, int depth) {
    if (st.timed_out) return;
    ++st.nodes;
    if ((st.nodes & 0x3ff) == 0) {
        double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - st.start).count();
        if (elapsed > st.time_cap) {
            st.timed_out = true;
            return;
        }
    }
    auto [k, l] = M.apply(Rat(1, 2), Rat(1, 2));
    Rat v = objective_value(st.obj, k, l);
    if (st.better(v)) {
        st.best_value = v;
        st.best_word = word;
    }
    if (depth >= st.depth_cap) return;

    struct Child {
        Rat bound;
        char letter;
        Mat3 M;
    };
    std::vector<Child> kids;
    for (char letter : {'A', 'B'}) {
        if (letter == 'B' && !word.empty() && word.back() == 'B') continue;
        Mat3 M2 = M * (letter == 'A' ? Mat3::letter_A() : Mat3::letter_B());
        Rat b = box_bound(st.obj, M2);
        if (st.cannot_beat(b)) {
            word.push_back(letter);
            st.record_pruned(word, b);
            word.pop_back();
            continue;
        }
        kids.push_back({b, letter, M2});
    }
    std::sort(kids.begin(), kids.end(), [&](const Child& a, const Child& b) {
        return st.minimize ? a.bound < b.bound : a.bound > b.bound;
    });
    for (auto& kid : kids) {
        if (st.cannot_beat(kid.bound)) {
            word.push_back(kid.letter);
            st.record_pruned(word, kid.bound);
            word.pop_back();
            continue;
        }
        int remaining = st.depth_cap - depth - 1;
        auto key = kid.M.normalized_key();
        auto it = st.seen.find(key);
        if (it != st.seen.end() && it->second >= remaining) continue;
        st.seen[key] = remaining;
        word.push_back(kid.letter);
        dfs(st, kid.M, word, depth + 1);
        word.pop_back();
        if (st.timed_out) return;
    }
}

}  // namespace

SearchReport optimize_word(ObjectiveKind obj, int depth_cap, double time_cap_seconds,
                           std::uint64_t pruned_sample_seed) {
    if (depth_cap < 0) throw std::domain_error("optimize_word: negative depth cap");
    SearchState st;
    st.obj = obj;
    st.minimize = objective_is_minimization(obj);
    st.depth_cap = depth_cap;
    st.time_cap = time_cap_seconds;
    st.start = std::chrono::steady_clock::now();
    st.rng.seed(pruned_sample_seed);
    st.best_value = objective_value(obj, Rat(1, 2), Rat(1, 2));
    st.best_word = "";

    std::string word;
    dfs(st, Mat3::identity(), word, 0);

    SearchReport rep;
    rep.best_word = xp::ProcessWord::from_letters(st.best_word);
    rep.best_value = st.best_value;
    rep.nodes_expanded = st.nodes;
    rep.depth_cap = depth_cap;
    rep.hit_time_cap = st.timed_out;
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - st.start).count();
    rep.pruned_samples = std::move(st.pruned);
    return rep;
}

Rat prefix_box_bound(ObjectiveKind obj, const std::string& prefix_letters) {
    return box_bound(obj, matrix_of_prefix(prefix_letters));
}

std::vector<Rat> prefix_child_bounds(ObjectiveKind obj, const std::string& prefix_letters) {
    std::vector<Rat> out;
    for (char letter : {'A', 'B'}) {
        if (letter == 'B' && !prefix_letters.empty() && prefix_letters.back() == 'B') continue;
        out.push_back(box_bound(obj, matrix_of_prefix(prefix_letters + letter)));
    }
    return out;
}

// ---- linear program ------------------------------------------------------

namespace {

struct Constraint {
    std::string name;
    Rat ca, cb, rhs;  // ca * alpha + cb * beta <= rhs
};

// Build the system; theta enters the right-hand sides only.
std::vector<Constraint> lp_constraints(const LevelProblem& p, bool with_family) {
    const Rat& th = p.theta;
    const Rat& k = p.pair.kappa;
    const Rat& l = p.pair.lambda;
    std::vector<Constraint> cs;
    cs.push_back({"alpha>=0", -1, 0, 0});
    cs.push_back({"beta>=0", 0, -1, 0});
    cs.push_back({"alpha+beta+theta<=3/2", 1, 1, Rat(3, 2) - th});
    cs.push_back({"alpha+theta<=1", 1, 0, 1 - th});
    Rat ca = k + 1, cb = 2 * (k + 1);
    if (p.variant == LpVariant::AsStated) ca += 1;
    cs.push_back({"bilinear", ca, cb, 2 - th * (l + 3) / 2});
    if (with_family) {
        if (p.family == xp::PairFamily::Ak)
            cs.push_back({"family", -(1 - 2 * k), -2 * (1 - 2 * k), -(l - Rat(1, 2)) * th});
        else
            cs.push_back({"family", -2 * (1 - l), -4 * (1 - l), -k * th});
    }
    return cs;
}

std::optional<LevelResult> solve_vertices(const std::vector<Constraint>& cs) {
    std::optional<LevelResult> best;
    for (size_t i = 0; i < cs.size(); ++i) {
        for (size_t j = i + 1; j < cs.size(); ++j) {
            Rat det = cs[i].ca * cs[j].cb - cs[j].ca * cs[i].cb;
            if (det == 0) continue;
            Rat a = (cs[i].rhs * cs[j].cb - cs[j].rhs * cs[i].cb) / det;
            Rat b = (cs[i].ca * cs[j].rhs - cs[j].ca * cs[i].rhs) / det;
            bool feasible = true;
            for (const auto& c : cs) {
                if (c.ca * a + c.cb * b > c.rhs) {
                    feasible = false;
                    break;
                }
            }
            if (!feasible) continue;
            Rat gamma = a + b;
            if (!best || gamma > best->gamma) {
                LevelResult r;
                r.gamma = gamma;
                r.alpha = a;
                r.beta = b;
                for (const auto& c : cs)
                    if (c.ca * a + c.cb * b == c.rhs) r.binding.push_back(c.name);
                best = r;
            }
        }
    }
    return best;
}

}  // namespace

std::optional<LevelResult> level_max_gamma(const LevelProblem& p) {
    if (p.pair == xp::seed_triple())
        throw std::domain_error("level_max_gamma: the seed pair is excluded");
    if (!(p.theta > 0 && p.theta < 1))
        throw std::domain_error("level_max_gamma: theta must lie in (0,1)");
    return solve_vertices(lp_constraints(p, true));
}

Rat validity_range(const xp::ExponentTriple& pair, LpVariant variant, xp::PairFamily family) {
    // Optimum of the LP without the family constraint, as a linear function
    // of theta. The coefficient matrix is theta-free, so solving the binding
    // 2x2 system with rhs = r0 + r1*theta gives alpha, beta linear in theta.
    LevelProblem probe{Rat(1, 2), pair, variant, family};
    auto base = solve_vertices(lp_constraints(probe, false));
    if (!base || base->binding.size() < 2)
        throw std::logic_error("validity_range: degenerate base optimum");

    auto rhs_linear = [&](const std::string& name, const Rat& k, const Rat& l) -> std::pair<Rat, Rat> {
        if (name == "alpha>=0" || name == "beta>=0") return {Rat(0), Rat(0)};
        if (name == "alpha+beta+theta<=3/2") return {Rat(3, 2), Rat(-1)};
        if (name == "alpha+theta<=1") return {Rat(1), Rat(-1)};
        if (name == "bilinear") return {Rat(2), -(l + 3) / 2};
        throw std::logic_error("validity_range: unexpected binding constraint " + name);
    };

    const Rat& k = pair.kappa;
    const Rat& l = pair.lambda;
    auto coeffs = [&](const std::string& name) -> std::pair<Rat, Rat> {
        if (name == "alpha>=0") return {Rat(-1), Rat(0)};
        if (name == "beta>=0") return {Rat(0), Rat(-1)};
        if (name == "alpha+beta+theta<=3/2") return {Rat(1), Rat(1)};
        if (name == "alpha+theta<=1") return {Rat(1), Rat(0)};
        if (name == "bilinear") {
            Rat ca = k + 1;
            if (variant == LpVariant::AsStated) ca += 1;
            return {ca, 2 * (k + 1)};
        }
        throw std::logic_error("validity_range: unexpected constraint " + name);
    };

    const std::string& n1 = base->binding[0];
    const std::string& n2 = base->binding[1];
    auto [a1, b1] = coeffs(n1);
    auto [a2, b2] = coeffs(n2);
    auto [r10, r11] = rhs_linear(n1, k, l);
    auto [r20, r21] = rhs_linear(n2, k, l);
    Rat det = a1 * b2 - a2 * b1;
    if (det == 0) throw std::logic_error("validity_range: singular binding system");
    // alpha(theta) = aa0 + aa1*theta, beta(theta) = bb0 + bb1*theta
    Rat aa0 = (r10 * b2 - r20 * b1) / det, aa1 = (r11 * b2 - r21 * b1) / det;
    Rat bb0 = (a1 * r20 - a2 * r10) / det, bb1 = (a1 * r21 - a2 * r11) / det;

    // family: fc * (alpha + 2 beta) >= fr * theta
    Rat fc = (family == xp::PairFamily::Ak) ? Rat(1 - 2 * k) : Rat(2 * (1 - l));
    Rat fr = (family == xp::PairFamily::Ak) ? Rat(l - Rat(1, 2)) : k;
    // fc*(aa0 + 2 bb0) + theta * (fc*(aa1 + 2 bb1) - fr) >= 0
    Rat c0 = fc * (aa0 + 2 * bb0);
    Rat c1 = fc * (aa1 + 2 * bb1) - fr;
    if (c1 == 0) throw std::logic_error("validity_range: family constraint independent of theta");
    Rat theta_star = -c0 / c1;

    // binding-set stability check at an interior point
    Rat mid = (Rat(1, 2) + theta_star) / 2;
    LevelProblem chk{mid, pair, variant, family};
    auto v = solve_vertices(lp_constraints(chk, false));
    if (!v || v->alpha != aa0 + aa1 * mid || v->beta != bb0 + bb1 * mid)
        throw std::logic_error("validity_range: binding set not stable on the range");
    return theta_star;
}

namespace {

const std::vector<std::pair<std::string, xp::ExponentTriple>>& gamma_pairs() {
    static const auto pairs = [] {
        std::vector<std::pair<std::string, xp::ExponentTriple>> v;
        auto seed = xp::seed_triple();
        v.push_back({"A", xp::apply_word(xp::ProcessWord("A"), seed)});
        v.push_back({"A2", xp::apply_word(xp::ProcessWord("A2"), seed)});
        v.push_back({"A3", xp::apply_word(xp::ProcessWord("A3"), seed)});
        return v;
    }();
    return pairs;
}

}  // namespace

Rat gamma_of_theta(const Rat& theta) {
    if (theta < Rat(1, 2) || theta >= Rat(16, 17))
        throw std::domain_error("gamma_of_theta: theta outside [1/2, 16/17)");
    std::optional<Rat> best;
    for (const auto& [name, pair] : gamma_pairs()) {
        Rat vr = validity_range(pair, LpVariant::Table2, xp::PairFamily::Ak);
        if (theta >= vr) continue;
        auto r = level_max_gamma({theta, pair, LpVariant::Table2, xp::PairFamily::Ak});
        if (r && (!best || r->gamma > *best)) best = r->gamma;
    }
    if (!best) throw std::logic_error("gamma_of_theta: no admissible pair");
    return *best;
}

Rat bt_constant(const Rat& theta) { return 2 / gamma_of_theta(theta); }

std::pair<double, double> optimal_split(double q, double N, const xp::ExponentTriple& t) {
    if (!(q > 0 && N > 0)) throw std::domain_error("optimal_split: q, N must be positive");
    double k = to_double(t.kappa), l = to_double(t.lambda);
    double q1 = std::pow(q, 1 / (k + 1)) * std::pow(N, (k - l) / (k + 1));
    return {q1, q / q1};
}

double bound_eval_AkB(const std::vector<double>& q_factors, double delta, double N,
                      double what_sup) {
    if (q_factors.empty()) throw std::domain_error("bound_eval_AkB: no factors");
    size_t J = q_factors.size();
    double q = 1;
    for (double v : q_factors) q *= v;
    double bracket = 0;
    if (N > q * delta) bracket += 1.0 / std::sqrt(q * delta);
    for (size_t j = 1; j + 1 <= J; ++j)
        bracket += std::pow(q_factors[J - j] / N, std::pow(2.0, -static_cast<double>(j)));
    bracket += std::pow(delta * delta * q_factors[0] / (N * N), std::pow(2.0, -static_cast<double>(J)));
    return N * what_sup * bracket;
}

double bound_eval_BAkB(const std::vector<double>& q_factors, double delta, double N,
                       double what_sup) {
    if (q_factors.empty()) throw std::domain_error("bound_eval_BAkB: no factors");
    size_t J = q_factors.size();
    double q = 1;
    for (double v : q_factors) q *= v;
    double bracket = 0;
    if (N > q * delta) bracket += N / (q * delta);
    for (size_t j = 1; j + 1 <= J; ++j)
        bracket += std::pow(N * q_factors[J - j] / (q * delta), std::pow(2.0, -static_cast<double>(j)));
    bracket += std::pow(N * N * q_factors[0] / (q * q), std::pow(2.0, -static_cast<double>(J)));
    return std::sqrt(q * delta) * what_sup * bracket;
}

}  // namespace vdc::opt
