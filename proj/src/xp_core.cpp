#include "vdc/xp_core.hpp"

#include <cmath>
#include <stdexcept>

namespace vdc::xp {

bool ExponentTriple::in_box() const {
    return kappa >= 0 && kappa <= Rat(1, 2) && lambda >= Rat(1, 2) && lambda <= 1 &&
           kappa <= lambda;
}

std::string ExponentTriple::str() const {
    return "(" + rat_to_string(kappa) + ", " + rat_to_string(lambda) + ", " + rat_to_string(nu) + ")";
}

ExponentTriple seed_triple() { return {Rat(1, 2), Rat(1, 2), Rat(1, 2)}; }

namespace {

void require_box(const ExponentTriple& t, const char* who) {
    if (!t.in_box()) throw std::domain_error(std::string(who) + ": triple outside the invariant box");
}

}  // namespace

ExponentTriple apply_A(const ExponentTriple& t) {
    require_box(t, "apply_A");
    Rat den = 2 * (t.kappa + 1);
    ExponentTriple out{t.kappa / den, (t.kappa + t.lambda + 1) / den, t.nu / 2 + Rat(1, 4)};
    require_box(out, "apply_A(result)");
    return out;
}

ExponentTriple apply_B(const ExponentTriple& t) {
    require_box(t, "apply_B");
    ExponentTriple out{t.lambda - Rat(1, 2), t.kappa + Rat(1, 2),
                       t.nu + t.lambda - t.kappa - Rat(1, 2)};
    require_box(out, "apply_B(result)");
    return out;
}

ExponentTriple inverse_A(const ExponentTriple& t) {
    if (t.kappa == Rat(1, 2))
        throw std::domain_error("inverse_A: undefined at kappa = 1/2");
    Rat den = 1 - 2 * t.kappa;
    return {2 * t.kappa / den, (2 * t.lambda - 1) / den, 2 * t.nu - Rat(1, 2)};
}

ProcessWord::ProcessWord(std::string_view text) {
    std::string expanded;
    size_t i = 0;
    while (i < text.size()) {
        char ch = text[i];
        if (ch != 'A' && ch != 'B')
            throw std::invalid_argument("ProcessWord: unexpected character '" + std::string(1, ch) + "'");
        ++i;
        size_t count = 1;
        if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            count = 0;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
                count = count * 10 + static_cast<size_t>(text[i] - '0');
                if (count > 100000) throw std::invalid_argument("ProcessWord: run length too large");
                ++i;
            }
            if (count == 0) throw std::invalid_argument("ProcessWord: zero run length");
        }
        expanded.append(count, ch);
    }
    *this = from_letters(std::move(expanded));
}

ProcessWord ProcessWord::from_letters(std::string letters) {
    // cancel adjacent BB pairs until none remain
    std::string out;
    for (char ch : letters) {
        if (ch == 'B' && !out.empty() && out.back() == 'B')
            out.pop_back();
        else
            out.push_back(ch);
    }
    ProcessWord w;
    w.letters_ = std::move(out);
    return w;
}

std::string ProcessWord::str() const {
    if (letters_.empty()) return "";
    std::string out;
    size_t i = 0;
    while (i < letters_.size()) {
        size_t j = i;
        while (j < letters_.size() && letters_[j] == letters_[i]) ++j;
        out.push_back(letters_[i]);
        if (j - i > 1) out += std::to_string(j - i);
        i = j;
    }
    return out;
}

ExponentTriple apply_letter(char letter, const ExponentTriple& t) {
    switch (letter) {
        case 'A': return apply_A(t);
        case 'B': return apply_B(t);
        default: throw std::invalid_argument("apply_letter: unknown letter");
    }
}

ExponentTriple apply_word(const ProcessWord& w, const ExponentTriple& t) {
    ExponentTriple cur = t;
    const std::string& s = w.letters();
    for (auto it = s.rbegin(); it != s.rend(); ++it) cur = apply_letter(*it, cur);
    return cur;
}

ExponentSequence sequence_initial() { return {{seed_triple()}}; }

ExponentSequence sequence_apply_A(const ExponentSequence& s) {
    ExponentSequence out;
    out.entries.reserve(s.entries.size() + 1);
    out.entries.push_back({Rat(1, 2), Rat(1), Rat(0)});
    for (const auto& t : s.entries)
        out.entries.push_back({t.kappa / 2, (t.lambda + 1) / 2, t.nu});
    return out;
}

ExponentSequence sequence_AkB(int J) {
    if (J < 1) throw std::domain_error("sequence_AkB: J must be >= 1");
    ExponentSequence out;
    Rat pw(1, 2);
    for (int j = 1; j < J; ++j) {
        out.entries.push_back({pw, Rat(1), Rat(0)});
        pw /= 2;
    }
    out.entries.push_back({pw, 1 - pw, Rat(1, 2)});
    return out;
}

bool constraint_check(const ExponentTriple& t, PairFamily family, double q, double N, double Q) {
    if (t == seed_triple())
        throw std::domain_error("constraint_check: the seed pair is excluded");
    if (!(q > 0 && N > 0 && Q > 0))
        throw std::domain_error("constraint_check: q, N, Q must be positive");
    double k = to_double(t.kappa), l = to_double(t.lambda);
    double lhs = (family == PairFamily::Ak)
                     ? std::pow(q, 1 - 2 * k) * std::pow(N, 2 * k - 2 * l + 1)
                     : std::pow(q, 2 - 2 * l) * std::pow(N, 2 * l - 2 * k - 1);
    return lhs >= Q * (1 - 1e-12);
}

}  // namespace vdc::xp
