#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "paraword/rational.hpp"
#include "paraword/wordalg.hpp"

namespace paraword {

class SeriesError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Taylor series with exact Gaussian-rational coefficients, either an exact
// polynomial (trunc == kExact) or truncated at a fixed common degree.
// Exact polynomials are closed under T_g, S_g, M_g for polynomial g, which is
// what makes this the zero-tolerance oracle for the word algebra.
struct PowerSeries {
    static constexpr int kExact = -1;

    std::vector<GaussianRational> coeffs;  // coeffs[k] multiplies z^k
    int trunc = kExact;

    PowerSeries() = default;
    explicit PowerSeries(std::vector<GaussianRational> c, int truncation = kExact)
        : coeffs(std::move(c)), trunc(truncation) {
        trim();
    }

    static PowerSeries constant(GaussianRational c);
    static PowerSeries monomial(int k, GaussianRational c = GaussianRational(1));

    bool is_exact() const { return trunc == kExact; }
    bool is_zero() const { return coeffs.empty(); }
    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    GaussianRational at(int k) const {
        return (k >= 0 && k < static_cast<int>(coeffs.size())) ? coeffs[k] : GaussianRational();
    }
    GaussianRational value_at_origin() const { return at(0); }

    void trim();  // drop trailing zeros; enforce truncation window

    friend bool operator==(const PowerSeries& a, const PowerSeries& b) {
        return a.coeffs == b.coeffs;
    }

    std::string to_string() const;  // JSON [[re_num,re_den,im_num,im_den],...]
};

PowerSeries ps_add(const PowerSeries& a, const PowerSeries& b);
PowerSeries ps_sub(const PowerSeries& a, const PowerSeries& b);
PowerSeries ps_scale(const GaussianRational& s, const PowerSeries& a);
PowerSeries ps_mul(const PowerSeries& a, const PowerSeries& b);
PowerSeries ps_derivative(const PowerSeries& a);
// Antiderivative vanishing at 0: z^k -> z^{k+1}/(k+1).
PowerSeries ps_integrate(const PowerSeries& a);
PowerSeries ps_pow(const PowerSeries& a, int k);

// T_g f = integral of f g', S_g f = integral of f' g, M_g f = g f.
PowerSeries apply_letter(Letter l, const PowerSeries& g, const PowerSeries& f);
PowerSeries apply_pi0(PowerSeries f);
PowerSeries apply_word(const Word& w, bool pi0, const PowerSeries& g, const PowerSeries& f);
PowerSeries apply_expr(const OperatorExpr& e, const PowerSeries& g, const PowerSeries& f);

// Horner evaluation in double precision; the truncation tail is the caller's
// responsibility.
std::complex<double> ps_eval(const PowerSeries& f, std::complex<double> z);

// ----------------------------------------------------------------------------
// Numeric series: fixed-truncation Taylor coefficients in double precision.
// This is the vehicle for applying operator words to test functions whose
// symbols are transcendental; exactness is not claimed here.

struct SeriesD {
    std::vector<std::complex<double>> coeffs;

    SeriesD() = default;
    explicit SeriesD(int truncation) : coeffs(truncation + 1) {}
    explicit SeriesD(std::vector<std::complex<double>> c) : coeffs(std::move(c)) {}

    int truncation() const { return static_cast<int>(coeffs.size()) - 1; }
    std::complex<double> eval(std::complex<double> z) const;
};

SeriesD sd_mul(const SeriesD& a, const SeriesD& b, int truncation);
SeriesD sd_apply_letter(Letter l, const SeriesD& g, const SeriesD& f);
SeriesD sd_apply_expr(const OperatorExpr& e, const SeriesD& g, const SeriesD& f);
SeriesD sd_from_exact(const PowerSeries& p, int truncation);

}  // namespace paraword
