#include "paraword/wordalg.hpp"

#include <algorithm>
#include <cctype>
#include <random>
#include <sstream>

#include "paraword/series.hpp"

namespace paraword {

char letter_char(Letter l) {
    switch (l) {
        case Letter::M: return 'M';
        case Letter::S: return 'S';
        case Letter::T: return 'T';
    }
    return '?';
}

LetterCounts Word::counts() const {
    LetterCounts c;
    for (Letter l : letters) {
        if (l == Letter::M) ++c.m_count;
        else if (l == Letter::S) ++c.s_count;
        else ++c.t_count;
    }
    return c;
}

bool Word::all_of(Letter l) const {
    return std::all_of(letters.begin(), letters.end(), [l](Letter x) { return x == l; });
}

Word st_word(int s_power, int t_power) {
    Word w;
    w.letters.assign(s_power, Letter::S);
    w.letters.insert(w.letters.end(), t_power, Letter::T);
    return w;
}

bool operator<(const TermKey& a, const TermKey& b) {
    if (a.word.letters.size() != b.word.letters.size())
        return a.word.letters.size() < b.word.letters.size();
    if (a.word.letters != b.word.letters) return a.word.letters < b.word.letters;
    return a.pi0 < b.pi0;
}

OperatorExpr OperatorExpr::identity() {
    OperatorExpr e;
    e.terms.emplace(TermKey{}, Rational(1));
    return e;
}

OperatorExpr OperatorExpr::single(Word w, bool pi0, Rational coeff) {
    OperatorExpr e;
    e.add_term(TermKey{std::move(w), pi0}, coeff);
    return e;
}

namespace {

// w Pi0 = w whenever w annihilates constants, i.e. when its innermost letter
// is S. (T maps constants to c*g_0 and M to c*g, so the flag stays there.)
void normalize_key(TermKey& key) {
    if (key.pi0 && !key.word.empty() && key.word.letters.back() == Letter::S) key.pi0 = false;
}

}  // namespace

void OperatorExpr::add_term(TermKey key, const Rational& coeff) {
    if (sgn(coeff) == 0) return;
    normalize_key(key);
    auto [it, inserted] = terms.emplace(std::move(key), coeff);
    if (!inserted) {
        it->second += coeff;
        if (sgn(it->second) == 0) terms.erase(it);
    }
}

OperatorExpr& OperatorExpr::operator+=(const OperatorExpr& o) {
    for (const auto& [k, c] : o.terms) add_term(k, c);
    return *this;
}

OperatorExpr& OperatorExpr::operator-=(const OperatorExpr& o) {
    for (const auto& [k, c] : o.terms) add_term(k, -c);
    return *this;
}

OperatorExpr operator*(const Rational& s, const OperatorExpr& e) {
    OperatorExpr r;
    if (sgn(s) == 0) return r;
    for (const auto& [k, c] : e.terms) r.terms.emplace(k, s * c);
    return r;
}

OperatorExpr expr_mul(const OperatorExpr& a, const OperatorExpr& b) {
    OperatorExpr r;
    for (const auto& [ka, ca] : a.terms) {
        for (const auto& [kb, cb] : b.terms) {
            TermKey k;
            if (ka.pi0 && !kb.word.empty()) {
                if (kb.word.letters.front() == Letter::M)
                    throw WordAlgebraError(
                        "composition places Pi0 in front of an M-leading word; this needs the "
                        "evaluation functional delta_0, which OperatorExpr does not represent");
                // Pi0 in front of an S/T-leading word is the identity.
                k.word = ka.word;
                k.word.letters.insert(k.word.letters.end(), kb.word.letters.begin(),
                                      kb.word.letters.end());
                k.pi0 = kb.pi0;
            } else {
                k.word = ka.word;
                k.word.letters.insert(k.word.letters.end(), kb.word.letters.begin(),
                                      kb.word.letters.end());
                k.pi0 = ka.pi0 || kb.pi0;
            }
            r.add_term(std::move(k), ca * cb);
        }
    }
    return r;
}

std::string OperatorExpr::to_string() const {
    if (terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [key, coeff] : terms) {
        Rational c = coeff;
        if (first) {
            if (sgn(c) < 0) {
                os << "-";
                c = -c;
            }
        } else {
            os << (sgn(c) < 0 ? " - " : " + ");
            if (sgn(c) < 0) c = -c;
        }
        first = false;
        const bool bare = key.word.empty() && !key.pi0;
        if (c != 1 || bare) {
            os << rational_to_string(c);
            if (!bare) os << " ";
        }
        // Print runs of equal letters as powers.
        std::size_t i = 0;
        bool first_factor = true;
        while (i < key.word.letters.size()) {
            std::size_t j = i;
            while (j < key.word.letters.size() && key.word.letters[j] == key.word.letters[i]) ++j;
            if (!first_factor) os << " ";
            first_factor = false;
            os << letter_char(key.word.letters[i]);
            if (j - i > 1) os << "^" << (j - i);
            i = j;
        }
        if (key.pi0) {
            if (!first_factor) os << " ";
            os << "Pi0";
        }
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

struct Parser {
    const std::string& s;
    std::size_t pos = 0;

    explicit Parser(const std::string& text) : s(text) {}

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool done() {
        skip_ws();
        return pos >= s.size();
    }
    char peek() { return s[pos]; }

    long parse_uint() {
        std::size_t start = pos;
        long v = 0;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            v = v * 10 + (s[pos] - '0');
            if (v > 1000000000L) throw ParseError(start, "integer literal too large");
            ++pos;
        }
        if (pos == start) throw ParseError(pos, "expected integer");
        return v;
    }

    Rational parse_rational(bool negative) {
        long num = parse_uint();
        long den = 1;
        skip_ws();
        if (pos < s.size() && s[pos] == '/') {
            ++pos;
            skip_ws();
            std::size_t at = pos;
            den = parse_uint();
            if (den == 0) throw ParseError(at, "zero denominator");
        }
        return make_rational(negative ? -num : num, den);
    }

    // Returns false at end of term. kind: 0 = M, 1 = S, 2 = T, 3 = Pi0.
    bool parse_factor(int& kind, int& power) {
        skip_ws();
        if (pos >= s.size()) return false;
        char c = s[pos];
        if (c == '+' || c == '-') return false;
        if (c == 'M' || c == 'S' || c == 'T') {
            kind = (c == 'M') ? 0 : (c == 'S') ? 1 : 2;
            ++pos;
        } else if (s.compare(pos, 3, "Pi0") == 0) {
            kind = 3;
            pos += 3;
        } else {
            throw ParseError(pos, std::string("unknown token '") + c + "'");
        }
        power = 1;
        skip_ws();
        if (pos < s.size() && s[pos] == '^') {
            ++pos;
            skip_ws();
            if (pos < s.size() && s[pos] == '-') throw ParseError(pos, "negative exponent");
            power = static_cast<int>(parse_uint());
        }
        return true;
    }
};

}  // namespace

OperatorExpr parse_expr(const std::string& text) {
    Parser p(text);
    if (p.done()) throw ParseError(0, "empty expression");
    OperatorExpr expr;
    bool first_term = true;
    while (!p.done()) {
        bool negative = false;
        p.skip_ws();
        if (!first_term) {
            char c = p.peek();
            if (c == '+') {
                ++p.pos;
            } else if (c == '-') {
                negative = true;
                ++p.pos;
            } else {
                throw ParseError(p.pos, "expected '+' or '-' between terms");
            }
            p.skip_ws();
        } else if (p.peek() == '-') {
            negative = true;
            ++p.pos;
        } else if (p.peek() == '+') {
            ++p.pos;
        }
        first_term = false;

        p.skip_ws();
        if (p.pos >= p.s.size()) throw ParseError(p.pos, "dangling sign");

        Rational coeff = make_rational(negative ? -1 : 1);
        bool have_rational = false;
        if (std::isdigit(static_cast<unsigned char>(p.peek()))) {
            coeff = p.parse_rational(negative);
            have_rational = true;
        }

        // Collect factors right-to-left into (word, pi0). A Pi0 acting on an
        // S/T-leading suffix is the identity on that suffix's range and is
        // dropped; a Pi0 directly in front of an M is not representable.
        std::vector<std::pair<int, int>> factors;  // (kind, power)
        int kind, power;
        std::size_t term_start = p.pos;
        while (p.parse_factor(kind, power)) factors.emplace_back(kind, power);
        if (factors.empty() && !have_rational)
            throw ParseError(term_start, "expected operator letters or a rational");

        Word w;
        bool pi0 = false;
        for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
            auto [k, pw] = *it;
            if (pw == 0) continue;
            if (k == 3) {
                if (w.empty()) {
                    pi0 = true;
                } else if (w.letters.front() == Letter::M) {
                    throw ParseError(term_start,
                                     "Pi0 in front of an M factor is not representable");
                }
                // otherwise the suffix starts with S or T: Pi0 is redundant
            } else {
                Letter l = (k == 0) ? Letter::M : (k == 1) ? Letter::S : Letter::T;
                std::vector<Letter> run(pw, l);
                w.letters.insert(w.letters.begin(), run.begin(), run.end());
            }
        }
        expr.add_term(TermKey{std::move(w), pi0}, coeff);
    }
    return expr;
}

// ---------------------------------------------------------------------------
// Rewriting

namespace detail {

// ST-reduction valid wherever the operand lies in H0: expand every M as S+T,
// then move S letters left past T's with T S = S T - T T (one adjacency at a
// time). Terminates because each step strictly decreases the number of (T,S)
// inversions.
OperatorExpr rewrite_h0_core(const Word& w, const Rational& coeff) {
    OperatorExpr out;
    std::vector<std::pair<Word, Rational>> work;
    work.emplace_back(w, coeff);
    while (!work.empty()) {
        auto [cur, c] = std::move(work.back());
        work.pop_back();

        // First M from the left, if any.
        auto mit = std::find(cur.letters.begin(), cur.letters.end(), Letter::M);
        if (mit != cur.letters.end()) {
            Word ws = cur, wt = cur;
            ws.letters[mit - cur.letters.begin()] = Letter::S;
            wt.letters[mit - cur.letters.begin()] = Letter::T;
            work.emplace_back(std::move(ws), c);
            work.emplace_back(std::move(wt), c);
            continue;
        }
        // Innermost T S adjacency first.
        bool rewritten = false;
        for (std::size_t i = cur.letters.size() - 1; i-- > 0;) {
            if (cur.letters[i] == Letter::T && cur.letters[i + 1] == Letter::S) {
                Word swapped = cur, doubled = cur;
                swapped.letters[i] = Letter::S;
                swapped.letters[i + 1] = Letter::T;
                doubled.letters[i + 1] = Letter::T;
                work.emplace_back(std::move(swapped), c);
                work.emplace_back(std::move(doubled), -c);
                rewritten = true;
                break;
            }
        }
        if (!rewritten) out.add_term(TermKey{std::move(cur), false}, c);
    }
    return out;
}

}  // namespace detail

OperatorExpr st_form_h0(const Word& w) {
    if (w.empty()) throw WordAlgebraError("cannot ST-reduce the empty word");
    const LetterCounts c = w.counts();
    if (c.s_count + c.t_count == 0)
        throw WordAlgebraError("all-M word: ST-reduction not applicable, keep M^l intact");
    return detail::rewrite_h0_core(w, Rational(1));
}

OperatorExpr st_form_h0(const OperatorExpr& e) {
    OperatorExpr out;
    for (const auto& [key, coeff] : e.terms) {
        if (key.word.empty()) {
            // Pi0 is the identity on H0; a bare identity term stays.
            out.add_term(TermKey{}, coeff);
            continue;
        }
        out += coeff * detail::rewrite_h0_core(key.word, Rational(1));
    }
    return out;
}

STForm st_form_full(const Word& w) {
    if (w.empty()) throw WordAlgebraError("cannot decompose the empty word");
    const LetterCounts c = w.counts();
    if (c.s_count + c.t_count == 0)
        throw WordAlgebraError("all-M word: no g-independent ST decomposition exists");

    STForm form;
    form.s_power = c.m_count + c.s_count;
    form.t_power = c.t_count;

    if (c.m_count + c.s_count == 0) {
        // Pure T^n: already canonical.
        form.delta = 0;
        form.expr = OperatorExpr::single(w);
        return form;
    }

    // Split off the trailing M-run: w = u E M^i with E in {S, T}.
    int i = 0;
    int last = w.length() - 1;
    while (last >= 0 && w.letters[last] == Letter::M) {
        ++i;
        --last;
    }
    const Letter ending = w.letters[last];
    Word u;
    u.letters.assign(w.letters.begin(), w.letters.begin() + last);

    OperatorExpr result;
    if (ending == Letter::T) {
        // T M^i = S^i T on all of H(D), then everything to the left of the
        // final T acts on its range, which lies in H0.
        form.delta = 0;
        Word prefix = u;
        prefix.letters.insert(prefix.letters.end(), i, Letter::S);
        if (prefix.empty()) {
            result = OperatorExpr::single(st_word(0, 1));
        } else {
            OperatorExpr reduced = detail::rewrite_h0_core(prefix, Rational(1));
            for (const auto& [key, coeff] : reduced.terms) {
                Word ext = key.word;
                ext.letters.push_back(Letter::T);
                result.add_term(TermKey{std::move(ext), false}, coeff);
            }
        }
    } else {
        // S M^i = i S^i T + S^{i+1} on all of H(D); the S-ending part equals
        // itself composed with Pi0, which legitimizes the H0 reduction.
        form.delta = 1;
        if (i >= 1) {
            Word prefix = u;
            prefix.letters.insert(prefix.letters.end(), i, Letter::S);
            OperatorExpr reduced = detail::rewrite_h0_core(prefix, Rational(1));
            for (const auto& [key, coeff] : reduced.terms) {
                Word ext = key.word;
                ext.letters.push_back(Letter::T);
                result.add_term(TermKey{std::move(ext), false}, make_rational(i) * coeff);
            }
        }
        Word spart = u;
        spart.letters.insert(spart.letters.end(), i + 1, Letter::S);
        OperatorExpr reduced = detail::rewrite_h0_core(spart, Rational(1));
        for (const auto& [key, coeff] : reduced.terms)
            result.add_term(TermKey{key.word, true}, coeff);
    }

    form.expr = result;

    // Read the tail off the expression.
    for (const auto& [key, coeff] : result.terms) {
        const LetterCounts tc = key.word.counts();
        if (tc.m_count != 0)
            throw WordAlgebraError("internal error: M letter left after decomposition");
        const int j = form.s_power - tc.s_count;
        bool flagged = key.pi0;
        if (j == 0 && tc.t_count == form.t_power) {
            // Leading block. A trailing Pi0 may have been normalized away
            // when t_power == 0; delta still records the word's ending.
            continue;
        }
        if (j < 1 || j > form.s_power || tc.t_count != form.t_power + j)
            throw WordAlgebraError("internal error: decomposition term outside the canonical tail shape");
        STForm::TailTerm t;
        t.drop = j;
        t.pi0 = flagged;
        if (!is_integer(coeff))
            throw WordAlgebraError("internal error: non-integer ST-form coefficient");
        t.coeff = static_cast<long long>(coeff.get_num().get_si());
        form.tail.push_back(t);
    }
    std::sort(form.tail.begin(), form.tail.end(), [](const auto& a, const auto& b) {
        return a.drop != b.drop ? a.drop < b.drop : a.pi0 < b.pi0;
    });
    return form;
}

std::string STForm::to_string() const {
    std::ostringstream os;
    os << expr.to_string() << "  [k=" << s_power << ", n=" << t_power << ", delta=" << delta
       << "]";
    return os.str();
}

OperatorExpr iterated_commutator(const OperatorExpr& a, const OperatorExpr& b, int k) {
    if (k < 1) throw WordAlgebraError("iterated commutator order must be >= 1");
    OperatorExpr acc = a;
    for (int i = 0; i < k; ++i) acc = expr_mul(acc, b) - expr_mul(b, acc);
    return acc;
}

// ---------------------------------------------------------------------------
// Randomized exact verification

namespace {

// Coefficients p/q with |p| <= 9, 1 <= q <= 9; degree uniform in [1, max_deg].
// Small numerators keep the exact arithmetic fast while hitting all paths.
PowerSeries random_poly(std::mt19937_64& rng, int max_deg, bool vanish_at_0) {
    auto draw = [&rng](long lo, long hi) {
        return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
    };
    const int deg = static_cast<int>(draw(1, max_deg));
    std::vector<GaussianRational> cs(deg + 1);
    for (int k = 0; k <= deg; ++k) {
        if (k == 0 && vanish_at_0) continue;
        cs[k] = GaussianRational(make_rational(draw(-9, 9), draw(1, 9)));
    }
    // Keep the polynomial nonzero and of full degree.
    if (cs[deg].is_zero()) cs[deg] = GaussianRational(1);
    return PowerSeries(std::move(cs));
}

}  // namespace

Verdict verify_identity(const OperatorExpr& a, const OperatorExpr& b, int trials, int max_deg,
                        bool h0_only, std::uint64_t seed) {
    if (trials < 1) throw WordAlgebraError("trials must be >= 1");
    if (max_deg < 1) throw WordAlgebraError("max_deg must be >= 1");
    std::mt19937_64 rng(seed);
    Verdict v;
    for (int t = 0; t < trials; ++t) {
        PowerSeries g = random_poly(rng, max_deg, false);
        PowerSeries f = random_poly(rng, max_deg, h0_only);
        ++v.trials_run;
        PowerSeries lhs = apply_expr(a, g, f);
        PowerSeries rhs = apply_expr(b, g, f);
        if (!(lhs == rhs)) {
            v.equal = false;
            v.witness_symbol = g.to_string();
            v.witness_argument = f.to_string();
            return v;
        }
    }
    return v;
}

}  // namespace paraword
