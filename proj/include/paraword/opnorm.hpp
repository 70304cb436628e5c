#pragma once

#include <complex>
#include <string>
#include <vector>

#include "paraword/geometry.hpp"
#include "paraword/norms.hpp"
#include "paraword/series.hpp"
#include "paraword/symbols.hpp"
#include "paraword/wordalg.hpp"

namespace paraword {

class TruncationError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Test functions used to probe operator norms from below. Members are
// normalized to unit A^p_alpha norm on the working grid before application.
struct TestFamily {
    int monomial_start = 0;
    int monomial_max = -1;                          // inclusive; -1 = none
    std::vector<std::complex<double>> kernel_points;  // Bergman kernel probes

    static TestFamily monomials(int max_k) { return {0, max_k, {}}; }
    // Members vanishing at the origin, for the restricted norms over A^p_alpha(0).
    static TestFamily restricted_monomials(int max_k) { return {1, max_k, {}}; }
    // f_a(z) = (1-|a|^2)^{(alpha+2)/p} (1 - conj(a) z)^{-2(alpha+2)/p}.
    static TestFamily bergman_kernels(std::vector<std::complex<double>> pts) {
        return {0, -1, std::move(pts)};
    }
    static TestFamily monomials_and_kernels(int max_k, std::vector<std::complex<double>> pts) {
        return {0, max_k, std::move(pts)};
    }

    int size() const {
        const int m = monomial_max >= monomial_start ? monomial_max - monomial_start + 1 : 0;
        return m + static_cast<int>(kernel_points.size());
    }
};

// |f| sampled at every node of the grid (index-aligned with grid.nodes), and
// on the circle rule. Fast path uses a folded FFT over each ring.
std::vector<double> sample_abs(const SeriesD& f, const DiscGrid& grid);
std::vector<double> sample_abs_circle(const SeriesD& f, const DiscGrid& grid);

// ||f||_{alpha,p} of a numeric series over the grid (circle rule when
// alpha = -1).
double series_norm(const SeriesD& f, double p, double alpha, const DiscGrid& grid);

// Relative mass of the last coefficients of f evaluated at radius rho; the
// guard that detects an insufficient truncation degree.
double tail_mass(const SeriesD& f, double rho);

// Truncation degree that makes geometric tails of ratio decay*eval_radius
// negligible; clamped to [256, 16384].
int suggest_truncation(double decay, double eval_radius);

// Coefficient decay rate of the symbol's Taylor series (0 for polynomials,
// the dilation radius for dilated symbols, max |zero| for Blaschke products).
double symbol_decay(const SymbolSpec& g);

// Lower bound for ||L||_{alpha,p} (restricted = false) or for the restricted
// norm over A^p_alpha(0) (restricted = true): the max of ||L f||_{alpha,p}
// over the normalized family. n_trunc = 0 picks a degree automatically; a
// tail-coefficient mass above 1e-8 of the result raises TruncationError.
NormReport op_lower_bound(const OperatorExpr& e, const SymbolSpec& g, double p, double alpha,
                          const TestFamily& family, int n_trunc, bool restricted,
                          const DiscGrid& grid, int threads = 0);

// Same for the fractional operator Q^{tau,l}_g f = |g|^{tau l} T^l_g f, whose
// output is a non-analytic grid field; its norm is taken directly on the grid.
NormReport q_op_lower_bound(double tau, int l, const SymbolSpec& g, double p, double alpha,
                            const TestFamily& family, int n_trunc, bool restricted,
                            const DiscGrid& grid, int threads = 0);

// One row per dilation radius: operator-norm lower bound for g_r against the
// matching symbol seminorm power.
struct ScanTable {
    struct Row {
        double r = 0.0;
        double opnorm_lb = 0.0;
        double seminorm_pow = 0.0;  // ||g_r||_{B^s_alpha}^N
        double ratio = 0.0;
    };
    std::vector<Row> rows;
    std::string word_text;
    std::string symbol;
    double p = 2.0;
    double alpha = 0.0;
    double s = 0.0;  // (l+m)/n + 1
    int n_letters = 0;

    std::string to_csv() const;
    std::string to_json() const;
};

// Norm-equivalence scan of a word with n >= 1 T-letters across
// dilations g_r. alpha > -1 compares against the Bloch^s seminorm; alpha = -1
// against the bold (BMOA^s) seminorm.
ScanTable equivalence_scan(const Word& w, const SymbolSpec& g, double p, double alpha,
                           const std::vector<double>& r_list, int n_trunc, const DiscGrid& op_grid,
                           const DiscGrid& sem_grid, int threads = 0);

// Default probe family for scans: low monomials plus kernels pointed at the
// symbol's boundary singularity direction (the positive real axis for the
// log-type symbols).
TestFamily scan_family(double p, double alpha);

// value(r = back) < 1.5 * value(r = next-to-back): the mechanical plateau
// detector used by scan verdicts.
bool plateaus(const std::vector<double>& values);

// value(back) / value(front): the growth witness over a whole radius sweep;
// a column "grows" when this exceeds 2.
double growth_factor(const std::vector<double>& values);

}  // namespace paraword
