#include "doctest.h"

#include <random>

#include "paraword/series.hpp"
#include "paraword/wordalg.hpp"

using namespace paraword;

namespace {

PowerSeries rand_poly(std::mt19937_64& rng, int deg, bool vanish0 = false) {
    std::vector<GaussianRational> cs(deg + 1);
    for (int k = vanish0 ? 1 : 0; k <= deg; ++k)
        cs[k] = GaussianRational(
            make_rational(static_cast<long>(rng() % 19) - 9, 1 + static_cast<long>(rng() % 9)));
    if (cs[deg].is_zero()) cs[deg] = GaussianRational(1);
    return PowerSeries(std::move(cs));
}

long long factorial(int n) {
    long long f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

}  // namespace

TEST_CASE("basic paraproduct actions") {
    PowerSeries z = PowerSeries::monomial(1);
    PowerSeries one = PowerSeries::constant(GaussianRational(1));
    // T_z 1 = z
    CHECK(apply_letter(Letter::T, z, one) == z);
    // S_z z = z^2/2
    CHECK(apply_letter(Letter::S, z, z) ==
          PowerSeries::monomial(2, GaussianRational(make_rational(1, 2))));
    // M_z z = z^2
    CHECK(apply_letter(Letter::M, z, z) == PowerSeries::monomial(2));
}

TEST_CASE("T_g^2 1 = g_0^2 / 2 for random polynomial g") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 10; ++t) {
        PowerSeries g = rand_poly(rng, 1 + static_cast<int>(rng() % 6));
        PowerSeries one = PowerSeries::constant(GaussianRational(1));
        PowerSeries lhs = apply_letter(Letter::T, g, apply_letter(Letter::T, g, one));
        PowerSeries g0 = apply_pi0(g);
        PowerSeries rhs = ps_scale(GaussianRational(make_rational(1, 2)), ps_mul(g0, g0));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("T_g^n g_0^k = k!/(n+k)! g_0^{n+k} for n, k <= 5") {
    std::mt19937_64 rng(23);
    PowerSeries g = rand_poly(rng, 5);
    PowerSeries g0 = apply_pi0(g);
    for (int n = 0; n <= 5; ++n) {
        for (int k = 0; k <= 5; ++k) {
            PowerSeries lhs = ps_pow(g0, k);
            for (int i = 0; i < n; ++i) lhs = apply_letter(Letter::T, g, lhs);
            PowerSeries rhs = ps_scale(
                GaussianRational(make_rational(factorial(k), factorial(n + k))),
                ps_pow(g0, n + k));
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("S^m_g T_g = 1/(m+1) T_{g^{m+1}} for m <= 4") {
    std::mt19937_64 rng(31);
    for (int m = 0; m <= 4; ++m) {
        PowerSeries g = rand_poly(rng, 4);
        PowerSeries f = rand_poly(rng, 5);
        PowerSeries lhs = apply_letter(Letter::T, g, f);
        for (int i = 0; i < m; ++i) lhs = apply_letter(Letter::S, g, lhs);
        PowerSeries rhs = ps_scale(GaussianRational(make_rational(1, m + 1)),
                                   apply_letter(Letter::T, ps_pow(g, m + 1), f));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("fundamental identity M = T + S + g(0) eval_0") {
    std::mt19937_64 rng(37);
    for (int t = 0; t < 10; ++t) {
        PowerSeries g = rand_poly(rng, 6);
        PowerSeries f = rand_poly(rng, 6);
        PowerSeries lhs = apply_letter(Letter::M, g, f);
        PowerSeries rhs = ps_add(apply_letter(Letter::T, g, f), apply_letter(Letter::S, g, f));
        rhs = ps_add(rhs, PowerSeries::constant(g.value_at_origin() * f.value_at_origin()));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("range conditions at the origin") {
    std::mt19937_64 rng(43);
    PowerSeries g = rand_poly(rng, 5);
    PowerSeries f = rand_poly(rng, 5);
    CHECK(apply_letter(Letter::T, g, f).value_at_origin().is_zero());
    CHECK(apply_letter(Letter::S, g, f).value_at_origin().is_zero());
    PowerSeries f0 = apply_pi0(f);
    CHECK(apply_letter(Letter::M, g, f0).value_at_origin().is_zero());
}

TEST_CASE("ps_eval examples") {
    PowerSeries p({GaussianRational(1), GaussianRational(1)});
    CHECK(ps_eval(p, {0.0, 0.0}) == std::complex<double>(1.0, 0.0));
    PowerSeries z2 = PowerSeries::monomial(2);
    CHECK(ps_eval(z2, {0.0, 1.0}).real() == doctest::Approx(-1.0));
    CHECK(ps_eval(z2, {0.0, 1.0}).imag() == doctest::Approx(0.0));
}

TEST_CASE("truncation policy") {
    // operator application demands one common declared degree
    PowerSeries a({GaussianRational(1)}, 8);
    PowerSeries b({GaussianRational(1)}, 16);
    CHECK_THROWS_AS(apply_expr(parse_expr("T"), a, b), SeriesError);
    // exact + truncated adopts the truncation
    PowerSeries c = ps_mul(a, PowerSeries::monomial(1));
    CHECK(c.trunc == 8);
    // arithmetic tracks the smaller known window
    CHECK(ps_add(a, b).trunc == 8);
    // products past the window are cut
    PowerSeries zw = PowerSeries::monomial(5);
    zw.trunc = 8;
    CHECK(ps_mul(zw, zw).is_zero());
    // paraproducts on truncated series at a common degree work and track
    // the window through the internal derivative/antiderivative shifts
    PowerSeries g({GaussianRational(1), GaussianRational(1), GaussianRational(1)}, 8);
    PowerSeries f({GaussianRational(0), GaussianRational(2)}, 8);
    PowerSeries tf = apply_expr(parse_expr("T"), g, f);
    CHECK(tf.trunc >= 8);
    CHECK(tf.at(2) == GaussianRational(1));  // (f g')_1 / 2 = (2*1)/2
}

TEST_CASE("JSON coefficient serialization") {
    PowerSeries p({GaussianRational(make_rational(1, 2), make_rational(-2, 3))});
    CHECK(p.to_string() == "[[1,2,-2,3]]");
}

TEST_CASE("numeric series mirrors the exact operators") {
    std::mt19937_64 rng(53);
    PowerSeries g = rand_poly(rng, 5);
    PowerSeries f = rand_poly(rng, 5);
    OperatorExpr e = parse_expr("S T - 2 M^2 + 1/2 T Pi0");
    PowerSeries exact = apply_expr(e, g, f);
    SeriesD approx = sd_apply_expr(e, sd_from_exact(g, 40), sd_from_exact(f, 40));
    for (int k = 0; k <= exact.degree(); ++k) {
        CHECK(approx.coeffs[k].real() ==
              doctest::Approx(exact.at(k).to_complex().real()).epsilon(1e-12));
        CHECK(approx.coeffs[k].imag() ==
              doctest::Approx(exact.at(k).to_complex().imag()).epsilon(1e-12));
    }
}
