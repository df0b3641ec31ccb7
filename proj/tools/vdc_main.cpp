#include <complex>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "vdc/complete_sums.hpp"
#include "vdc/quad_gauss.hpp"
#include "vdc/sieve_lin.hpp"
#include "vdc/trace_eval.hpp"
#include "vdc/verify.hpp"
#include "vdc/xp_core.hpp"
#include "vdc/xp_opt.hpp"

using json = nlohmann::json;
using namespace vdc;
using nt::u64;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

std::string fmt_decimal(const Rat& r) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", to_double(r));
    return buf;
}

json triple_json(const xp::ExponentTriple& t) {
    return json{{"kappa", rat_to_string(t.kappa)},
                {"lambda", rat_to_string(t.lambda)},
                {"nu", rat_to_string(t.nu)}};
}

json complex_json(const nt::cplx& z) { return json::array({z.real(), z.imag()}); }

void emit_triple(const xp::ExponentTriple& t, const std::string& format) {
    if (format == "json") {
        std::cout << triple_json(t).dump() << "\n";
    } else if (format == "csv") {
        std::cout << "kappa,kappa_dec,lambda,lambda_dec,nu,nu_dec\n"
                  << rat_to_string(t.kappa) << "," << fmt_decimal(t.kappa) << ","
                  << rat_to_string(t.lambda) << "," << fmt_decimal(t.lambda) << ","
                  << rat_to_string(t.nu) << "," << fmt_decimal(t.nu) << "\n";
    } else {
        std::cout << t.str() << "\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"arithmetic exponent-pair calculus and exponential-sum verification"};
    app.require_subcommand(1);

    std::string format = "json";
    app.add_option("--format", format, "output format")->check(CLI::IsMember({"json", "csv", "text"}));
    std::uint64_t seed = 0x5eed0001;
    app.add_option("--seed", seed, "master seed for randomized suites");
    double time_cap = 60.0;
    app.add_option("--time-cap", time_cap, "optimizer time cap in seconds");

    // pair
    auto* pair_cmd = app.add_subcommand("pair", "exponent triples under A/B-processes");
    pair_cmd->require_subcommand(1);
    auto* pair_word = pair_cmd->add_subcommand("word", "apply a process word to the seed");
    std::string word_text;
    pair_word->add_option("word", word_text, "word over {A,B}, run-length digits allowed")->required();

    auto* pair_opt = pair_cmd->add_subcommand("optimize", "branch-and-bound over words");
    std::string objective = "rankin";
    int depth = 20;
    pair_opt->add_option("--objective", objective, "rankin | divisor | subconvex")
        ->check(CLI::IsMember({"rankin", "divisor", "subconvex"}));
    pair_opt->add_option("--depth", depth, "maximum word length");

    // level
    auto* level_cmd = app.add_subcommand("level", "sieve-level linear program");
    std::string theta_text = "1/2";
    std::string variant_text = "table2";
    std::string level_pair_word;
    level_cmd->add_option("--theta", theta_text, "rational theta, e.g. 1/2")->required();
    level_cmd->add_option("--variant", variant_text, "as-stated | table2")
        ->check(CLI::IsMember({"as-stated", "table2"}));
    level_cmd->add_option("--pair", level_pair_word, "restrict to one pair word (default A, A2, A3)");

    // gamma-curve
    auto* curve_cmd = app.add_subcommand("gamma-curve", "gamma(theta) samples");
    std::string from_text = "1/2", to_text = "16/17", step_text = "1/200";
    curve_cmd->add_option("--from", from_text, "start theta");
    curve_cmd->add_option("--to", to_text, "end theta (exclusive)");
    curve_cmd->add_option("--step", step_text, "rational step");

    // csum
    auto* csum_cmd = app.add_subcommand("csum", "complete rational exponential sums");
    std::string f1_text, f2_text = "1";
    std::uint64_t modulus = 0;
    std::string method = "direct";
    csum_cmd->add_option("--f1", f1_text, "numerator coefficients c0,c1,...")->required();
    csum_cmd->add_option("--f2", f2_text, "denominator coefficients");
    csum_cmd->add_option("--modulus", modulus, "modulus c")->required();
    csum_cmd->add_option("--method", method, "direct | crt | stationary")
        ->check(CLI::IsMember({"direct", "crt", "stationary"}));

    // trace
    auto* trace_cmd = app.add_subcommand("trace", "trace-function evaluation");
    trace_cmd->require_subcommand(1);
    auto* trace_eval_cmd = trace_cmd->add_subcommand("eval", "evaluate a per-prime spec");
    std::string spec_text;
    std::uint64_t prime_p = 0, point_x = 0;
    trace_eval_cmd->add_option("--spec", spec_text, "addrat:... | mult:... | kloo:...")->required();
    trace_eval_cmd->add_option("--p", prime_p, "prime")->required();
    trace_eval_cmd->add_option("--x", point_x, "evaluation point")->required();
    auto* trace_sum_cmd = trace_cmd->add_subcommand("sum", "incomplete sum of a composite spec");
    std::string comp_text;
    std::int64_t sum_from = 0;
    std::uint64_t sum_len = 0;
    trace_sum_cmd->add_option("--spec", comp_text, "q=p1*p2;p1=...;p2=...")->required();
    trace_sum_cmd->add_option("--from", sum_from, "sum over from < n <= from+length");
    trace_sum_cmd->add_option("--length", sum_len, "length")->required();

    // quad
    auto* quad_cmd = app.add_subcommand("quad", "quadratic congruence a^2+1 = 0 mod ell");
    quad_cmd->require_subcommand(1);
    auto* quad_roots = quad_cmd->add_subcommand("roots", "roots of -1");
    auto* quad_reps = quad_cmd->add_subcommand("reps", "proper two-square representations");
    auto* quad_weyl = quad_cmd->add_subcommand("weyl", "Weyl sum rho_n(ell)");
    auto* quad_verify = quad_cmd->add_subcommand("verify", "correspondence scan");
    std::uint64_t ell = 0, weyl_ell = 0, quad_max = 1000;
    std::int64_t weyl_n = 0;
    quad_roots->add_option("--ell", ell, "modulus")->required();
    quad_reps->add_option("--ell", ell, "modulus")->required();
    quad_weyl->add_option("--n", weyl_n, "frequency")->required();
    quad_weyl->add_option("--ell", weyl_ell, "modulus")->required();
    quad_verify->add_option("--max", quad_max, "scan bound");

    // sieve
    auto* sieve_cmd = app.add_subcommand("sieve", "linear sieve functions");
    sieve_cmd->require_subcommand(1);
    auto* sieve_F = sieve_cmd->add_subcommand("F", "upper function");
    auto* sieve_f = sieve_cmd->add_subcommand("f", "lower function");
    auto* sieve_table = sieve_cmd->add_subcommand("table", "grid dump");
    double s_point = 2.0, smax = 12.0;
    sieve_F->add_option("--s", s_point, "argument")->required();
    sieve_f->add_option("--s", s_point, "argument")->required();
    sieve_table->add_option("--smax", smax, "table end");

    // bt
    auto* bt_cmd = app.add_subcommand("bt", "Brun-Titchmarsh constant 2/gamma(theta)");
    std::string bt_theta = "1/2";
    bt_cmd->add_option("--theta", bt_theta, "rational theta")->required();

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "acceptance suites");
    std::string suite = "all";
    verify_cmd->add_option("--suite", suite, "all or a name fragment");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (pair_word->parsed()) {
            auto t = xp::apply_word(xp::ProcessWord(word_text), xp::seed_triple());
            emit_triple(t, format);
            return kExitOk;
        }
        if (pair_opt->parsed()) {
            opt::ObjectiveKind kind = objective == "rankin" ? opt::ObjectiveKind::MinKappaPlusLambda
                                      : objective == "divisor" ? opt::ObjectiveKind::MaxDivisorLevel
                                                               : opt::ObjectiveKind::MaxSubconvexDelta;
            auto rep = opt::optimize_word(kind, depth, time_cap, seed);
            auto t = xp::apply_word(rep.best_word, xp::seed_triple());
            if (format == "json") {
                json j{{"objective", objective},
                       {"best_word", rep.best_word.str()},
                       {"best_value", rat_to_string(rep.best_value)},
                       {"best_value_dec", to_double(rep.best_value)},
                       {"triple", triple_json(t)},
                       {"nodes_expanded", rep.nodes_expanded},
                       {"depth_cap", rep.depth_cap},
                       {"hit_time_cap", rep.hit_time_cap},
                       {"seconds", rep.seconds}};
                std::cout << j.dump() << "\n";
            } else {
                std::cout << objective << " best " << rat_to_string(rep.best_value) << " ("
                          << to_double(rep.best_value) << ") via " << rep.best_word.str() << ", "
                          << rep.nodes_expanded << " nodes\n";
            }
            return kExitOk;
        }
        if (level_cmd->parsed()) {
            Rat theta = parse_rat(theta_text);
            opt::LpVariant variant =
                variant_text == "as-stated" ? opt::LpVariant::AsStated : opt::LpVariant::Table2;
            std::vector<std::string> words = {"A", "A2", "A3"};
            if (!level_pair_word.empty()) words = {level_pair_word};
            json out = json::array();
            for (const auto& w : words) {
                auto pair = xp::apply_word(xp::ProcessWord(w), xp::seed_triple());
                json row{{"pair", w},
                         {"kappa", rat_to_string(pair.kappa)},
                         {"lambda", rat_to_string(pair.lambda)}};
                auto r = opt::level_max_gamma({theta, pair, variant, xp::PairFamily::Ak});
                if (r) {
                    row["gamma"] = rat_to_string(r->gamma);
                    row["gamma_dec"] = to_double(r->gamma);
                    row["alpha"] = rat_to_string(r->alpha);
                    row["beta"] = rat_to_string(r->beta);
                    row["binding"] = r->binding;
                } else {
                    row["gamma"] = nullptr;
                }
                row["validity_range"] =
                    rat_to_string(opt::validity_range(pair, variant, xp::PairFamily::Ak));
                out.push_back(row);
            }
            if (variant == opt::LpVariant::Table2 && theta >= Rat(1, 2) && theta < Rat(16, 17)) {
                Rat g = opt::gamma_of_theta(theta);
                out.push_back(json{{"gamma_of_theta", rat_to_string(g)},
                                   {"gamma_of_theta_dec", to_double(g)}});
            }
            std::cout << out.dump() << "\n";
            return kExitOk;
        }
        if (curve_cmd->parsed()) {
            Rat from = parse_rat(from_text), to = parse_rat(to_text), step = parse_rat(step_text);
            if (step <= 0) throw std::domain_error("step must be positive");
            if (format == "csv") std::cout << "theta,theta_dec,gamma,gamma_dec\n";
            json rows = json::array();
            for (Rat th = from; th < to; th += step) {
                Rat g = opt::gamma_of_theta(th);
                if (format == "csv")
                    std::cout << rat_to_string(th) << "," << fmt_decimal(th) << ","
                              << rat_to_string(g) << "," << fmt_decimal(g) << "\n";
                else
                    rows.push_back(json{{"theta", rat_to_string(th)}, {"gamma", rat_to_string(g)}});
            }
            if (format != "csv") std::cout << rows.dump() << "\n";
            return kExitOk;
        }
        if (csum_cmd->parsed()) {
            auto coeffs = [](const std::string& s) {
                std::vector<nt::i64> c;
                std::stringstream ss(s);
                std::string item;
                while (std::getline(ss, item, ',')) c.push_back(std::stoll(item));
                return nt::PolyZ(std::move(c));
            };
            csum::RationalFunctionZ lam{coeffs(f1_text), coeffs(f2_text)};
            csum::SumValue v;
            if (method == "direct") {
                v = csum::sigma_direct(lam, modulus);
            } else if (method == "crt") {
                v = csum::sigma_crt(lam, nt::factorize(modulus));
            } else {
                // per prime power: stationary phase where it applies, direct otherwise
                auto fac = nt::factorize(modulus);
                v.modulus = modulus;
                nt::cplx prod = 1;
                u64 kept = 1;
                for (auto [p, e] : fac.pairs) {
                    u64 pe = 1;
                    for (int i = 0; i < e; ++i) pe *= p;
                    u64 twist = nt::invmod((modulus / pe) % pe, pe);
                    csum::SumValue factor = (p != 2 && e >= 2 && e <= 5)
                                                ? csum::sigma_prime_power(lam, p, e, twist)
                                                : csum::sigma_direct_twisted(lam, twist, pe);
                    prod *= factor.value;
                    kept *= pe - factor.excluded;
                    v.degenerate += factor.degenerate;
                }
                v.value = prod;
                v.excluded = modulus - kept;
            }
            json j{{"value", complex_json(v.value)},
                   {"abs", std::abs(v.value)},
                   {"modulus", v.modulus},
                   {"excluded", v.excluded},
                   {"method", method}};
            if (v.degenerate) j["degenerate_stationary_points"] = v.degenerate;
            std::cout << j.dump() << "\n";
            return kExitOk;
        }
        if (trace_eval_cmd->parsed()) {
            auto spec = trace::parse_trace_spec(spec_text);
            auto v = trace::eval_trace(spec, prime_p, point_x);
            std::cout << json{{"value", complex_json(v)}, {"abs", std::abs(v)}}.dump() << "\n";
            return kExitOk;
        }
        if (trace_sum_cmd->parsed()) {
            auto spec = trace::parse_composite_spec(comp_text);
            auto v = trace::incomplete_sum(spec, sum_from, sum_len);
            std::cout << json{{"value", complex_json(v)},
                              {"abs", std::abs(v)},
                              {"modulus", spec.modulus()},
                              {"length", sum_len}}
                             .dump()
                      << "\n";
            return kExitOk;
        }
        if (quad_roots->parsed()) {
            auto rs = quad::roots_minus_one(ell);
            std::cout << json{{"ell", ell}, {"rho", rs.roots.size()}, {"roots", rs.roots}}.dump()
                      << "\n";
            return kExitOk;
        }
        if (quad_reps->parsed()) {
            json arr = json::array();
            for (const auto& rep : quad::two_squares(ell))
                arr.push_back(json{{"r", rep.r}, {"s", rep.s}});
            std::cout << json{{"ell", ell}, {"representations", arr}}.dump() << "\n";
            return kExitOk;
        }
        if (quad_weyl->parsed()) {
            auto v = quad::weyl_rho(weyl_n, weyl_ell);
            std::cout << json{{"ell", weyl_ell},
                              {"n", weyl_n},
                              {"rho_n", complex_json(v)},
                              {"abs", std::abs(v)}}
                             .dump()
                      << "\n";
            return kExitOk;
        }
        if (quad_verify->parsed()) {
            u64 checked = 0;
            for (u64 l = 2; l <= quad_max; ++l) {
                if (quad::rho(l) == 0) continue;
                quad::correspondence(l);  // throws on failure
                ++checked;
            }
            std::cout << json{{"max", quad_max}, {"moduli_checked", checked}, {"ok", true}}.dump()
                      << "\n";
            return kExitOk;
        }
        if (sieve_F->parsed() || sieve_f->parsed()) {
            sieve::SieveTable t = sieve::build_table(std::max(12.0, s_point + 1.0), 1.0 / 1024);
            double v = sieve_F->parsed() ? t.F(s_point) : t.f(s_point);
            std::cout << json{{"s", s_point}, {sieve_F->parsed() ? "F" : "f", v}}.dump() << "\n";
            return kExitOk;
        }
        if (sieve_table->parsed()) {
            sieve::SieveTable t = sieve::build_table(smax, 1.0 / 1024);
            std::cout << "s,F,f\n";
            for (double s = 2.0; s <= smax + 1e-9; s += 1.0 / 16) {
                char buf[96];
                std::snprintf(buf, sizeof(buf), "%.6f,%.12g,%.12g\n", s, t.F(s), t.f(s));
                std::cout << buf;
            }
            return kExitOk;
        }
        if (bt_cmd->parsed()) {
            Rat theta = parse_rat(bt_theta);
            Rat v = opt::bt_constant(theta);
            std::cout << json{{"theta", rat_to_string(theta)},
                              {"bt_constant", rat_to_string(v)},
                              {"bt_constant_dec", to_double(v)}}
                             .dump()
                      << "\n";
            return kExitOk;
        }
        if (verify_cmd->parsed()) {
            verify::Options opts;
            opts.seed = seed;
            if (suite != "all") opts.filter = suite;
            auto results = verify::run_suites(opts);
            bool ok = verify::report(results, std::cout);
            return ok ? kExitOk : kExitFail;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFail;
    }
    std::cerr << "error: no subcommand executed\n";
    return kExitUsage;
}
