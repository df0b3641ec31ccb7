#pragma once

#include <string>
#include <vector>

#include "vdc/rational.hpp"

namespace vdc::xp {

// Exponent triple (kappa, lambda, nu) for incomplete-sum bounds of the
// shape (q/N)^kappa N^lambda delta^nu. The A- and B-process maps keep
// (kappa, lambda) inside the box [0,1/2] x [1/2,1] with kappa <= lambda.
struct ExponentTriple {
    Rat kappa, lambda, nu;

    bool operator==(const ExponentTriple&) const = default;
    bool in_box() const;
    std::string str() const;
};

ExponentTriple seed_triple();  // (1/2, 1/2, 1/2)

// A(k,l,n) = (k/(2(k+1)), (k+l+1)/(2(k+1)), n/2 + 1/4)
ExponentTriple apply_A(const ExponentTriple& t);
// B(k,l,n) = (l - 1/2, k + 1/2, n + l - k - 1/2); an involution
ExponentTriple apply_B(const ExponentTriple& t);
// Inverse of A; domain error at kappa = 1/2 (in particular at the seed).
ExponentTriple inverse_A(const ExponentTriple& t);

// Word over {A, B}, canonical form free of "BB" (B is an involution).
// Text syntax accepts run-length digits: "BA3" = "BAAA".
class ProcessWord {
public:
    ProcessWord() = default;
    explicit ProcessWord(std::string_view text);  // throws std::invalid_argument

    static ProcessWord from_letters(std::string letters);

    const std::string& letters() const { return letters_; }
    bool empty() const { return letters_.empty(); }
    size_t size() const { return letters_.size(); }
    std::string str() const;  // run-length form, e.g. "BA3BA2BABABA2"

private:
    std::string letters_;  // canonical, expanded, no "BB"
};

// Letters act right-to-left: the letter adjacent to the seed acts first,
// so "BA3" means three A-steps followed by one B-step.
ExponentTriple apply_word(const ProcessWord& w, const ExponentTriple& t);
ExponentTriple apply_letter(char letter, const ExponentTriple& t);

// Multi-factor exponent sequences; entry j pairs with modulus factor q_{J+1-j}.
struct ExponentSequence {
    std::vector<ExponentTriple> entries;

    bool operator==(const ExponentSequence&) const = default;
};

ExponentSequence sequence_initial();                      // [(1/2, 1/2, 1/2)]
ExponentSequence sequence_apply_A(const ExponentSequence& s);
ExponentSequence sequence_AkB(int J);                     // J >= 1

enum class PairFamily { Ak, BAk };

// Size constraint under which a pair applies when one factor of q has
// prescribed size Q: family Ak tests q^{1-2k} N^{2k-2l+1} >= Q, family
// BAk tests q^{2-2l} N^{2l-2k-1} >= Q. Domain error at the seed.
bool constraint_check(const ExponentTriple& t, PairFamily family, double q, double N, double Q);

}  // namespace vdc::xp
