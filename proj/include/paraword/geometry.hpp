#pragma once

#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace paraword {

class GeometryError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// phi_a(z) = (a - z) / (1 - conj(a) z), the disc automorphism swapping a and 0.
std::complex<double> moebius(std::complex<double> a, std::complex<double> z);

// beta(w,z) = (1/2) log((1+|phi_w(z)|)/(1-|phi_w(z)|)), hyperbolic distance.
double hyperbolic_dist(std::complex<double> w, std::complex<double> z);

// Carleson box S(rho e^{i theta}) = {r e^{it}: rho <= r < 1, |t-theta| <= pi(1-rho)}.
bool in_carleson_box(std::complex<double> a, std::complex<double> z);

// Stolz region with vertex zeta: {|z - zeta| < 2(1-|z|)} for |zeta| = 1, and
// the scaled copy {|z - zeta| < 2(|zeta| - |z|)} for interior vertices.
bool in_stolz(std::complex<double> zeta, std::complex<double> z);

// Quadrature on the disc |z| < r_max for the measures dA_alpha, plus a circle
// rule for the Hardy case alpha = -1. Radial rule: Gauss-Legendre in t = r^2
// (optionally dyadically refined toward t = 0, which integrates log(1/t)
// weights to full accuracy); angular rule: trapezoid.
struct DiscGrid {
    struct Node {
        std::complex<double> z;
        double w_area;  // weight for normalized area measure dA
    };

    std::vector<Node> nodes;        // disc nodes; includes z = 0 with weight 0
    // Ring structure: nodes[1 + i*n_theta + j] = ring_radii[i] * e^{i theta_j},
    // each with area weight ring_weight[i].
    std::vector<double> ring_radii;
    std::vector<double> ring_weight;
    std::vector<double> thetas;     // circle angles (weight 1/n_theta each)
    double circle_radius = 1.0;     // radius of the circle rule
    int n_r = 0;
    int n_theta = 0;
    double r_max = 0.0;
    std::vector<double> alphas;     // alphas the grid was requested for
    std::string scheme = "gl";

    // (alpha+1)(1-|z|^2)^alpha * w_area evaluated at a node.
    static double weight_alpha(const Node& nd, double alpha) {
        const double t = std::norm(nd.z);
        double w = nd.w_area;
        if (alpha != 0.0) w *= std::pow(1.0 - t, alpha);
        return (alpha + 1.0) * w;
    }

    std::complex<double> circle_point(int j) const {
        return std::polar(circle_radius, thetas[j]);
    }
};

// scheme "gl": plain Gauss-Legendre in r^2; "gl-log0": dyadic composite
// toward the origin (for integrands carrying log(1/|z|^2)).
DiscGrid build_disc_grid(int n_r, int n_theta, double r_max, std::vector<double> alphas,
                         const std::string& scheme = "gl", double circle_radius = -1.0);

// Nodes and weights of the n-point Gauss-Legendre rule on [0, 1].
void gauss_legendre_01(int n, std::vector<double>& x, std::vector<double>& w);

// Adaptive Simpson quadrature of f on [a, b].
double integrate_1d(const std::function<double(double)>& f, double a, double b,
                    double tol = 1e-12);

}  // namespace paraword
