#pragma once

#include <complex>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "paraword/rational.hpp"
#include "paraword/series.hpp"

namespace paraword {

class SymbolError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Catalogue of analytic symbols g with pointwise evaluation of g and g'.
// Everything here is floating point; exact symbols for the word-algebra
// oracle are plain PowerSeries polynomials instead.
class SymbolSpec {
  public:
    enum class Kind { Polynomial, LogE, PowOfLogE, Blaschke, Dilated, Power, Composed };

    static SymbolSpec polynomial(std::vector<GaussianRational> coeffs);
    static SymbolSpec polynomial_d(const std::vector<std::complex<double>>& coeffs);
    // log(e/(1-z)) with the principal branch; zero-free on the disc.
    static SymbolSpec log_e();
    // (log(e/(1-z)))^beta, principal branch.
    static SymbolSpec pow_of_log_e(double beta);
    static SymbolSpec blaschke(std::vector<std::complex<double>> zeros);
    // The default Blaschke product used by the non-vector-space demos:
    // positive zeros z_k = 1 - 2^{-k}, k = 1..12.
    static SymbolSpec blaschke_default();
    // inner(z)^exponent; rejects inner symbols that are not zero-free on the
    // disc (checked on a probe grid).
    static SymbolSpec power(SymbolSpec inner, double exponent);
    // g o phi_b; used by the conformal-invariance checks. No Taylor expansion.
    static SymbolSpec compose_moebius(SymbolSpec inner, std::complex<double> b);

    Kind kind() const { return kind_; }
    double dilation_radius() const { return dilation_; }
    double exponent() const { return beta_; }
    const std::vector<std::complex<double>>& zeros() const { return zeros_; }

    // (g(z), g'(z)).
    std::pair<std::complex<double>, std::complex<double>> eval(std::complex<double> z) const;
    std::complex<double> value(std::complex<double> z) const { return eval(z).first; }

    // First n+1 Taylor coefficients, in double precision.
    SeriesD taylor(int n) const;

    // True when g extends continuously to the closed disc, so circle grids
    // may sit at radius 1 (polynomials, Blaschke products, dilations).
    bool continuous_on_closure() const;

    std::string describe() const;

    friend SymbolSpec dilate(SymbolSpec g, double r);

  private:
    SymbolSpec() = default;

    Kind kind_ = Kind::LogE;
    std::vector<GaussianRational> coeffs_;               // Polynomial (exact)
    std::vector<std::complex<double>> coeffs_d_;         // Polynomial (cached doubles)
    double beta_ = 1.0;                                  // PowOfLogE / Power exponent
    std::vector<std::complex<double>> zeros_;            // Blaschke
    std::shared_ptr<const SymbolSpec> inner_;            // Dilated / Power / Composed
    double dilation_ = 1.0;                              // Dilated radius
    std::complex<double> center_ = 0.0;                  // Composed Moebius center
};

// g_r(z) = g(rz), 0 < r < 1. Composing dilations multiplies the radii.
SymbolSpec dilate(SymbolSpec g, double r);

// |grad |g|^q|(z) = q |g|^{q-1} |g'|, the gradient modulus of |g|^q.
double grad_abs_pow(const SymbolSpec& g, double q, std::complex<double> z);

}  // namespace paraword
