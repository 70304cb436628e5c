#include "doctest.h"

#include <random>

#include "paraword/series.hpp"
#include "paraword/wordalg.hpp"

using namespace paraword;

namespace {

Word make_word(const char* s) {
    Word w;
    for (const char* p = s; *p; ++p) {
        if (*p == 'M') w.letters.push_back(Letter::M);
        else if (*p == 'S') w.letters.push_back(Letter::S);
        else if (*p == 'T') w.letters.push_back(Letter::T);
    }
    return w;
}

PowerSeries oracle_g() {
    return PowerSeries({GaussianRational(make_rational(1, 2)), GaussianRational(2),
                        GaussianRational(make_rational(-1, 3)), GaussianRational(1, 1)});
}
PowerSeries oracle_f0() {
    return PowerSeries({GaussianRational(0), GaussianRational(make_rational(3, 4)),
                        GaussianRational(-1), GaussianRational(make_rational(2, 5))});
}

}  // namespace

TEST_CASE("parse: single word") {
    OperatorExpr e = parse_expr("S T T");
    REQUIRE(e.terms.size() == 1);
    const auto& [key, coeff] = *e.terms.begin();
    CHECK(key.word == make_word("STT"));
    CHECK_FALSE(key.pi0);
    CHECK(coeff == Rational(1));
}

TEST_CASE("parse: linear combination") {
    OperatorExpr e = parse_expr("2 S T - T^2");
    REQUIRE(e.terms.size() == 2);
    CHECK(e.terms.at(TermKey{make_word("ST"), false}) == Rational(2));
    CHECK(e.terms.at(TermKey{make_word("TT"), false}) == Rational(-1));
}

TEST_CASE("parse: Pi0 suffix flag") {
    OperatorExpr e = parse_expr("S T Pi0");
    REQUIRE(e.terms.size() == 1);
    const auto& [key, coeff] = *e.terms.begin();
    CHECK(key.word == make_word("ST"));
    CHECK(key.pi0);
}

TEST_CASE("parse: rational coefficients, identity terms, powers") {
    CHECK(parse_expr("1/3 T^3").terms.at(TermKey{make_word("TTT"), false}) == make_rational(1, 3));
    CHECK(parse_expr("2").terms.at(TermKey{}) == Rational(2));
    CHECK(parse_expr("T - T").is_zero());
    // Pi0 in front of an S/T-leading factor is the identity on its range.
    CHECK(parse_expr("S Pi0 T") == parse_expr("S T"));
    // Trailing Pi0 after S is dropped by normalization.
    CHECK(parse_expr("T S Pi0") == parse_expr("T S"));
}

TEST_CASE("parse: errors carry byte offsets") {
    CHECK_THROWS_AS(parse_expr(""), ParseError);
    CHECK_THROWS_AS(parse_expr("   "), ParseError);
    CHECK_THROWS_AS(parse_expr("S Q T"), ParseError);
    CHECK_THROWS_AS(parse_expr("T^-1"), ParseError);
    CHECK_THROWS_AS(parse_expr("2 +"), ParseError);
    CHECK_THROWS_AS(parse_expr("Pi0 M"), ParseError);
    try {
        parse_expr("S X");
    } catch (const ParseError& e) {
        CHECK(e.offset() == 2);
    }
}

TEST_CASE("print-parse round trip on normalized expressions") {
    for (const char* text : {"S T T", "2 S T - T^2", "S T Pi0", "1/3 T^3 - 2 M S", "1 + T"}) {
        OperatorExpr e = parse_expr(text);
        CHECK(parse_expr(e.to_string()) == e);
    }
}

TEST_CASE("st_form_h0: commutation examples") {
    CHECK(st_form_h0(make_word("TS")) == parse_expr("S T - T^2"));
    CHECK(st_form_h0(make_word("TSS")) == parse_expr("S^2 T - 2 S T^2 + 2 T^3"));
    CHECK(st_form_h0(make_word("STT")) == parse_expr("S T^2"));
}

TEST_CASE("st_form_h0: rejects all-M words, accepts mixed M words") {
    CHECK_THROWS_AS(st_form_h0(make_word("MM")), WordAlgebraError);
    CHECK(st_form_h0(make_word("MT")) == parse_expr("S T + T^2"));
}

TEST_CASE("st_form_h0: exact equality against the series oracle") {
    std::mt19937_64 rng(41);
    auto rand_word = [&rng](int len) {
        Word w;
        for (int i = 0; i < len; ++i) w.letters.push_back(static_cast<Letter>(rng() % 3));
        return w;
    };
    int checked = 0;
    while (checked < 60) {
        Word w = rand_word(1 + static_cast<int>(rng() % 6));
        const LetterCounts c = w.counts();
        if (c.s_count + c.t_count == 0) continue;
        ++checked;
        OperatorExpr form = st_form_h0(w);
        Verdict v = verify_identity(OperatorExpr::single(w), form, 4, 6, /*h0_only=*/true,
                                    1000 + checked);
        CHECK_MESSAGE(v.equal, OperatorExpr::single(w).to_string(), " vs ", form.to_string());
    }
}

TEST_CASE("st_form_h0: leading coefficient of S^{l+m} T^n is 1 when n >= 1") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        Word w;
        const int len = 1 + static_cast<int>(rng() % 6);
        for (int i = 0; i < len; ++i) w.letters.push_back(static_cast<Letter>(rng() % 3));
        const LetterCounts c = w.counts();
        if (c.t_count < 1) continue;
        OperatorExpr form = st_form_h0(w);
        const TermKey lead{st_word(c.m_count + c.s_count, c.t_count), false};
        REQUIRE(form.terms.count(lead) == 1);
        CHECK(form.terms.at(lead) == Rational(1));
        for (const auto& [key, coeff] : form.terms)
            CHECK(key.word.counts().t_count >= c.t_count);
    }
}

TEST_CASE("st_form_full: end-block examples") {
    STForm tm = st_form_full(make_word("TM"));
    CHECK(tm.expr == parse_expr("S T"));
    CHECK(tm.delta == 0);

    STForm sm = st_form_full(make_word("SM"));
    CHECK(sm.expr == parse_expr("S T + S^2"));
    CHECK(sm.delta == 1);

    STForm mt = st_form_full(make_word("MT"));
    CHECK(mt.expr == parse_expr("S T + T^2"));
    CHECK(mt.delta == 0);
}

TEST_CASE("st_form_full: pure-T words are fixed points; degenerate words rejected") {
    STForm t3 = st_form_full(make_word("TTT"));
    CHECK(t3.expr == parse_expr("T^3"));
    CHECK(t3.tail.empty());
    CHECK_THROWS_AS(st_form_full(make_word("MMM")), WordAlgebraError);
    CHECK_THROWS_AS(st_form_full(Word{}), WordAlgebraError);
}

TEST_CASE("st_form_full: exact on all of H(D), delta from the word ending") {
    std::mt19937_64 rng(99);
    int checked = 0;
    while (checked < 60) {
        Word w;
        const int len = 1 + static_cast<int>(rng() % 5);
        for (int i = 0; i < len; ++i) w.letters.push_back(static_cast<Letter>(rng() % 3));
        const LetterCounts c = w.counts();
        if (c.s_count + c.t_count == 0 || c.m_count + c.s_count == 0) continue;
        ++checked;
        STForm form = st_form_full(w);
        int i = w.length() - 1;
        while (i >= 0 && w.letters[i] == Letter::M) --i;
        CHECK(form.delta == (w.letters[i] == Letter::S ? 1 : 0));
        Verdict v = verify_identity(OperatorExpr::single(w), form.expr, 4, 6, /*h0_only=*/false,
                                    5000 + checked);
        CHECK_MESSAGE(v.equal, OperatorExpr::single(w).to_string(), " vs ",
                      form.expr.to_string());
    }
}

TEST_CASE("st_form_full: canonical decomposition shape and determinism") {
    Word w = make_word("MSTMS");
    STForm form = st_form_full(w);
    const LetterCounts c = w.counts();
    CHECK(form.s_power == c.m_count + c.s_count);
    CHECK(form.t_power == c.t_count);
    for (const auto& t : form.tail) {
        CHECK(t.drop >= 1);
        CHECK(t.drop <= form.s_power);
    }
    CHECK(st_form_full(w).expr == form.expr);
    CHECK(st_form_full(w).to_string() == form.to_string());
}

TEST_CASE("commutation rules as operator identities on H0") {
    // T^n S = S T^n - n T^{n+1}, n <= 6
    for (int n = 1; n <= 6; ++n) {
        Word lhs;
        lhs.letters.assign(n, Letter::T);
        lhs.letters.push_back(Letter::S);
        OperatorExpr rhs = OperatorExpr::single(st_word(1, n)) -
                           make_rational(n) * OperatorExpr::single(st_word(0, n + 1));
        Verdict v = verify_identity(OperatorExpr::single(lhs), rhs, 3, 6, true, 300 + n);
        CHECK(v.equal);
    }
    // T S^m = (S-T)^m T with (S-T)^m = sum_j (-1)^{m-j} m!/j! S^j T^{m-j}, m <= 5
    for (int m = 1; m <= 5; ++m) {
        Word lhs;
        lhs.letters.push_back(Letter::T);
        lhs.letters.insert(lhs.letters.end(), m, Letter::S);
        OperatorExpr rhs;
        long long fact_m = 1;
        for (int i = 2; i <= m; ++i) fact_m *= i;
        for (int j = 0; j <= m; ++j) {
            long long fact_j = 1;
            for (int i = 2; i <= j; ++i) fact_j *= i;
            Rational coeff = make_rational(((m - j) % 2 == 0 ? 1 : -1) * (fact_m / fact_j));
            Word term = st_word(j, m - j);
            term.letters.push_back(Letter::T);
            rhs += coeff * OperatorExpr::single(term);
        }
        Verdict v = verify_identity(OperatorExpr::single(lhs), rhs, 3, 6, true, 400 + m);
        CHECK(v.equal);
    }
}

TEST_CASE("iterated commutators collapse to pure T powers on H0") {
    OperatorExpr c1 = iterated_commutator(parse_expr("S T^2"), parse_expr("T"), 1);
    CHECK(st_form_h0(c1) == parse_expr("T^4"));
    OperatorExpr c2 = iterated_commutator(parse_expr("S^2 T"), parse_expr("T"), 2);
    CHECK(st_form_h0(c2) == parse_expr("2 T^5"));
    CHECK(iterated_commutator(parse_expr("T"), parse_expr("T"), 1).is_zero());
}

TEST_CASE("iterated commutator collapse: [S^m T^n, T]_m = m! T^{2m+n}, m,n <= 3") {
    for (int m = 1; m <= 3; ++m) {
        for (int n = 1; n <= 3; ++n) {
            OperatorExpr lhs = st_form_h0(
                iterated_commutator(OperatorExpr::single(st_word(m, n)), parse_expr("T"), m));
            long long fact = 1;
            for (int i = 2; i <= m; ++i) fact *= i;
            OperatorExpr rhs = make_rational(fact) * OperatorExpr::single(st_word(0, 2 * m + n));
            CHECK_MESSAGE(lhs == rhs, "m=", m, " n=", n, ": ", lhs.to_string());
        }
    }
}

TEST_CASE("verify_identity: equal and unequal verdicts") {
    Verdict eq = verify_identity(parse_expr("T S"), parse_expr("S T - T^2"), 10, 8, true, 7);
    CHECK(eq.equal);
    CHECK(eq.trials_run == 10);

    Verdict ne = verify_identity(parse_expr("T S"), parse_expr("S T"), 20, 6, true, 7);
    CHECK_FALSE(ne.equal);
    CHECK_FALSE(ne.witness_symbol.empty());
    CHECK_FALSE(ne.witness_argument.empty());

    CHECK_THROWS_AS(verify_identity(parse_expr("T"), parse_expr("T"), 0, 4, false, 1),
                    WordAlgebraError);
}

TEST_CASE("S^2 T applied to f equals (1/3) T_{g^3} f on H0") {
    PowerSeries g = oracle_g();
    PowerSeries f = oracle_f0();
    PowerSeries lhs = apply_expr(parse_expr("S^2 T"), g, f);
    PowerSeries rhs =
        ps_scale(GaussianRational(make_rational(1, 3)), apply_letter(Letter::T, ps_pow(g, 3), f));
    CHECK(lhs == rhs);
}

TEST_CASE("expr_mul: Pi0 bookkeeping") {
    OperatorExpr a = parse_expr("T Pi0");
    CHECK(expr_mul(a, parse_expr("S")) == parse_expr("T S"));
    CHECK_THROWS_AS(expr_mul(a, parse_expr("M")), WordAlgebraError);
    CHECK(expr_mul(parse_expr("Pi0"), parse_expr("Pi0")) == parse_expr("Pi0"));
}

TEST_CASE("long-word stress: exact ST-forms at lengths 7 and 8") {
    std::mt19937_64 rng(2024);
    int done = 0;
    while (done < 12) {
        Word w;
        const int len = 7 + static_cast<int>(rng() % 2);
        for (int i = 0; i < len; ++i) w.letters.push_back(static_cast<Letter>(rng() % 3));
        const LetterCounts c = w.counts();
        if (c.s_count + c.t_count == 0 || c.m_count + c.s_count == 0) continue;
        ++done;
        STForm full = st_form_full(w);
        Verdict vf = verify_identity(OperatorExpr::single(w), full.expr, 2, 5, false, 600 + done);
        CHECK_MESSAGE(vf.equal, OperatorExpr::single(w).to_string());
        OperatorExpr h0 = st_form_h0(w);
        Verdict vh = verify_identity(OperatorExpr::single(w), h0, 2, 5, true, 700 + done);
        CHECK_MESSAGE(vh.equal, OperatorExpr::single(w).to_string());
    }
}
