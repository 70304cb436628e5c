#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "paraword/rational.hpp"

namespace paraword {

// One letter of a g-word: the multiplication operator M_g f = g f, or one of
// the two integral paraproducts S_g f = int_0^z f' g, T_g f = int_0^z f g'.
// The enum order M < S < T is the canonical print order.
enum class Letter : std::uint8_t { M = 0, S = 1, T = 2 };

char letter_char(Letter l);

struct LetterCounts {
    int m_count = 0;  // multiplications      (paper's ell)
    int s_count = 0;  // S-type paraproducts  (paper's m)
    int t_count = 0;  // T-type paraproducts  (paper's n)
};

// A finite composition of letters. letters[0] is the outermost operator
// (applied last); letters.back() is applied first. The empty word is the
// identity operator.
struct Word {
    std::vector<Letter> letters;

    Word() = default;
    explicit Word(std::vector<Letter> ls) : letters(std::move(ls)) {}

    LetterCounts counts() const;
    int length() const { return static_cast<int>(letters.size()); }
    bool empty() const { return letters.empty(); }
    bool all_of(Letter l) const;

    friend bool operator==(const Word& a, const Word& b) { return a.letters == b.letters; }
};

// S^a T^b as a word.
Word st_word(int s_power, int t_power);

// Key of one term of an OperatorExpr: a word, optionally right-composed with
// the projection Pi0 f = f - f(0). Ordered by (length, letters with M<S<T,
// Pi0-flagged after unflagged), which fixes the printing order.
struct TermKey {
    Word word;
    bool pi0 = false;

    friend bool operator<(const TermKey& a, const TermKey& b);
    friend bool operator==(const TermKey& a, const TermKey& b) {
        return a.pi0 == b.pi0 && a.word == b.word;
    }
};

class ParseError : public std::runtime_error {
  public:
    ParseError(std::size_t offset, const std::string& what)
        : std::runtime_error(what + " (at byte " + std::to_string(offset) + ")"), offset_(offset) {}
    std::size_t offset() const { return offset_; }

  private:
    std::size_t offset_;
};

class WordAlgebraError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Finite linear combination of (word, Pi0-flag) terms with exact rational
// coefficients. Kept normalized: no zero coefficients, Pi0 Pi0 collapsed,
// and a trailing Pi0 dropped whenever the word ends in S (S_g kills
// constants, so w Pi0 = w in that case).
struct OperatorExpr {
    std::map<TermKey, Rational> terms;

    OperatorExpr() = default;
    static OperatorExpr zero() { return {}; }
    static OperatorExpr identity();
    static OperatorExpr single(Word w, bool pi0 = false, Rational coeff = Rational(1));

    bool is_zero() const { return terms.empty(); }
    void add_term(TermKey key, const Rational& coeff);

    OperatorExpr& operator+=(const OperatorExpr& o);
    OperatorExpr& operator-=(const OperatorExpr& o);
    friend OperatorExpr operator+(OperatorExpr a, const OperatorExpr& b) { return a += b; }
    friend OperatorExpr operator-(OperatorExpr a, const OperatorExpr& b) { return a -= b; }
    friend OperatorExpr operator*(const Rational& s, const OperatorExpr& e);
    friend bool operator==(const OperatorExpr& a, const OperatorExpr& b) { return a.terms == b.terms; }

    std::string to_string() const;
};

// Composition a b in the algebra. Throws WordAlgebraError if a Pi0 would land
// directly in front of an M letter: that composition needs the evaluation
// functional delta_0, which the expression type deliberately does not carry.
OperatorExpr expr_mul(const OperatorExpr& a, const OperatorExpr& b);

// expr := term (('+'|'-') term)*; term := rational | [rational] factor+;
// factor := ('M'|'S'|'T'|'Pi0') ['^' nonneg-int]; rational := int ['/' pos-int].
// A bare rational term is a multiple of the identity operator.
OperatorExpr parse_expr(const std::string& text);

// Canonical ST-form of w valid on H0(D) (arguments vanishing at the origin):
// every M is expanded as S + T and every S is commuted left past T's with
// T^n S = S T^n - n T^{n+1}. Result is an integer combination of S^a T^b.
// Requires at least one S or T in w.
OperatorExpr st_form_h0(const Word& w);

// Same reduction applied termwise to an expression; Pi0 flags are dropped
// (Pi0 is the identity on H0) and all-M terms are expanded as well.
OperatorExpr st_form_h0(const OperatorExpr& e);

// Decomposition of a word into the canonical shape valid on all of H(D):
//   L = (1-delta) S^k T^n + delta S^k T^n Pi0
//       + sum_j a_j S^{k-j} T^{n+j} + sum_j b_j S^{k-j} T^{n+j} Pi0,
// with k = m_count + s_count, integer coefficients independent of g, and
// delta = 1 exactly when w ends in S_g M_g^i.
struct STForm {
    int s_power = 0;   // k of the leading block
    int t_power = 0;   // n of the leading block
    int delta = 0;     // 1 iff the leading block carries Pi0
    struct TailTerm {
        int drop = 0;  // j: the term S^{k-j} T^{n+j}
        long long coeff = 0;
        bool pi0 = false;
    };
    std::vector<TailTerm> tail;  // sorted by (drop, pi0)
    OperatorExpr expr;           // the same decomposition as an expression

    std::string to_string() const;
};

// Requires s_count + t_count >= 1. Pure-T words are returned as themselves
// with an empty tail. All-M words are rejected (they are M_{g^l}; no
// g-independent ST decomposition exists for them).
STForm st_form_full(const Word& w);

// Iterated commutator [a,b]_k with [a,b]_1 = ab - ba and
// [a,b]_{k+1} = [[a,b]_k, b], expanded in the free algebra.
OperatorExpr iterated_commutator(const OperatorExpr& a, const OperatorExpr& b, int k);

// Outcome of randomized exact identity checking.
struct Verdict {
    bool equal = true;
    int trials_run = 0;
    // First counterexample, printed as polynomial coefficient lists.
    std::string witness_symbol;
    std::string witness_argument;
};

// Draw `trials` random rational polynomial pairs (g ,f) of degree <= max_deg
// (f(0) = 0 when h0_only), apply both expressions through the exact series
// oracle and compare. Equality is exact; there is no tolerance.
Verdict verify_identity(const OperatorExpr& a, const OperatorExpr& b, int trials, int max_deg,
                        bool h0_only, std::uint64_t seed);

}  // namespace paraword
