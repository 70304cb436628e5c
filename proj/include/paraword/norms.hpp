#pragma once

#include <complex>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "paraword/geometry.hpp"
#include "paraword/symbols.hpp"

namespace paraword {

class NormError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Result of one functional evaluation. Sup-type functionals carry the grid
// point where the supremum was attained; every grid sup is a lower bound of
// the true supremum over the disc.
struct NormReport {
    std::string functional;
    std::string symbol;
    std::map<std::string, double> params;  // p, q, alpha, ... as applicable
    double value = 0.0;
    std::optional<std::complex<double>> argmax;
    int n_r = 0, n_theta = 0;
    double r_max = 0.0;
    std::string note;  // e.g. thin Carleson boxes skipped on this grid

    std::string to_json() const;
};

// Nonnegative density against dA on the nodes of a grid; represents measures
// nu_{g,q} = |grad|g|^q|^2 dA and mu^alpha_{g,q} = (1-|z|^2)^{alpha+2} nu.
struct MeasureField {
    const DiscGrid* grid = nullptr;
    std::vector<double> density;  // one value per grid node

    double total() const;
};

MeasureField measure_nu(const SymbolSpec& g, double q, const DiscGrid& grid);
MeasureField measure_mu_alpha(const SymbolSpec& g, double q, double alpha, const DiscGrid& grid);

using Evaluable = std::function<std::complex<double>(std::complex<double>)>;

// ||f||_{alpha,p} = ((alpha+1) integral |f|^p (1-|z|^2)^alpha dA)^{1/p} for
// alpha > -1; the Hardy case alpha = -1 integrates |f|^p over the grid's
// circle rule. circle_radius > 0 overrides the grid's circle radius (radius 1
// is legal for functions continuous up to the boundary; ||f_r||_{H^p}
// increases to ||f||_{H^p}, so truncated radii stay lower bounds).
double apalpha_norm(const Evaluable& f, double p, double alpha, const DiscGrid& grid,
                    double circle_radius = -1.0);

// Default Moebius-equidistributed probe points for sup_{a in D} functionals.
std::vector<std::complex<double>> default_a_grid();

// ||g||_{B^q} via sup over grid nodes of (1-|z|^2) q|g|^{q-1}|g'|, then the
// 1/q-th root. For q < 1 this functional is infinite for symbols with zeros;
// rejected unless allow_subunit is set (used to demonstrate the divergence).
NormReport bloch_q_seminorm(const SymbolSpec& g, double q, const DiscGrid& grid,
                            bool allow_subunit = false);

// Garsia-type seminorm sup_a (||g o phi_a||_{alpha,2q}^{2q} - |g(a)|^{2q})^{1/2q};
// negative radicands from quadrature noise are clamped to zero.
NormReport garsia_seminorm(const SymbolSpec& g, double alpha, double q,
                           const std::vector<std::complex<double>>& a_grid,
                           const DiscGrid& inner);

// sup_a integral (1-|phi_a|^2)^{alpha+2} |grad|g|^q|^2 dA, 1/(2q)-th root.
// At alpha = -1 this is the BMOA^q functional.
NormReport bold_seminorm(const SymbolSpec& g, double alpha, double q,
                         const std::vector<std::complex<double>>& a_grid, const DiscGrid& grid);

enum class CarlesonMode { Box, Berezin };

// Carleson norm of mu: box mode sup_a mu(S(a))/(1-|a|^2)^{alpha+2}; Berezin
// mode sup_lambda integral B_alpha(z,lambda) dmu.
NormReport carleson_norm(const MeasureField& mu, double alpha, CarlesonMode mode,
                         const std::vector<std::complex<double>>& a_grid);

// Tent-space norm ||psi||_{T^p_{alpha,q}(nu)}: outer integral over vertices
// (circle for alpha = -1, disc otherwise) of the Stolz-restricted q-integral.
// psi and nu_density are given on the nodes of the grid; an empty nu_density
// means dnu = dA.
double tent_norm(const std::vector<double>& psi_abs, double p, double q, double alpha,
                 const std::vector<double>& nu_density, const DiscGrid& grid);

// Square area function (S |h|^q)(zeta) = (int_{Gamma(zeta)} |grad|h|^q|^2 dA)^{1/2}.
double square_area_fn(const SymbolSpec& h, double q, std::complex<double> zeta,
                      const DiscGrid& grid);

// Non-tangential maximal function sup_{z in Gamma(zeta)} |psi(z)| over grid nodes.
double nt_maximal(const std::vector<double>& psi_abs, std::complex<double> zeta,
                  const DiscGrid& grid);

// Relative defect of the Hardy-Stein identity
// ||g||_{H^{2q}}^{2q} - |g(0)|^{2q} = int |grad|g|^q|^2 log(1/|z|^2) dA.
double hardy_stein_residual(const SymbolSpec& g, double q, const DiscGrid& grid);

// w_alpha(x) = (alpha+1) int_{x^2}^1 (1-u)^alpha log(u/x^2) du and the ratio
// psi_alpha(x) whose sup over (0,1) is < 1; returns (w_alpha, psi_alpha).
std::pair<double, double> weight_w_alpha(double x, double alpha);

}  // namespace paraword
