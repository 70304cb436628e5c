#include "paraword/geometry.hpp"

#include <cmath>
#include <functional>

namespace paraword {

std::complex<double> moebius(std::complex<double> a, std::complex<double> z) {
    const std::complex<double> den = 1.0 - std::conj(a) * z;
    if (std::abs(den) == 0.0) throw GeometryError("moebius pole at z = 1/conj(a)");
    return (a - z) / den;
}

double hyperbolic_dist(std::complex<double> w, std::complex<double> z) {
    const double r = std::abs(moebius(w, z));
    return 0.5 * std::log((1.0 + r) / (1.0 - r));
}

bool in_carleson_box(std::complex<double> a, std::complex<double> z) {
    const double rho = std::abs(a);
    const double r = std::abs(z);
    if (r < rho || r >= 1.0) return false;
    if (rho == 0.0) return true;
    double dt = std::arg(z) - std::arg(a);
    while (dt > M_PI) dt -= 2.0 * M_PI;
    while (dt < -M_PI) dt += 2.0 * M_PI;
    return std::abs(dt) <= M_PI * (1.0 - rho);
}

bool in_stolz(std::complex<double> zeta, std::complex<double> z) {
    const double azeta = std::abs(zeta);
    if (azeta >= 1.0 - 1e-14) {
        return std::abs(z - zeta / azeta) < 2.0 * (1.0 - std::abs(z));
    }
    if (azeta == 0.0) return false;
    return std::abs(z - zeta) < 2.0 * (azeta - std::abs(z));
}

void gauss_legendre_01(int n, std::vector<double>& x, std::vector<double>& w) {
    // Newton iteration on P_n over [-1,1], then map to [0,1].
    x.assign(n, 0.0);
    w.assign(n, 0.0);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double xi = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * xi * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (xi * p0 - p1) / (xi * xi - 1.0);
            const double dx = p0 / pp;
            xi -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        const double weight = 2.0 / ((1.0 - xi * xi) * pp * pp);
        x[i] = 0.5 * (1.0 - xi);
        w[i] = 0.5 * weight;
        x[n - 1 - i] = 0.5 * (1.0 + xi);
        w[n - 1 - i] = 0.5 * weight;
    }
}

DiscGrid build_disc_grid(int n_r, int n_theta, double r_max, std::vector<double> alphas,
                         const std::string& scheme, double circle_radius) {
    if (n_r < 4 || n_theta < 4) throw GeometryError("grid needs n_r, n_theta >= 4");
    if (!(r_max > 0.0 && r_max < 1.0)) throw GeometryError("r_max must lie in (0,1)");

    DiscGrid g;
    g.n_r = n_r;
    g.n_theta = n_theta;
    g.r_max = r_max;
    g.alphas = std::move(alphas);
    g.scheme = scheme;
    g.circle_radius = circle_radius > 0.0 ? circle_radius : r_max;

    // Radial nodes/weights in t = r^2 on [0, R2]; dA = dt dtheta / (2 pi).
    const double R2 = r_max * r_max;
    std::vector<double> t_nodes, t_weights;
    if (scheme == "gl") {
        std::vector<double> x, w;
        gauss_legendre_01(n_r, x, w);
        for (int i = 0; i < n_r; ++i) {
            t_nodes.push_back(R2 * x[i]);
            t_weights.push_back(R2 * w[i]);
        }
    } else if (scheme == "gl-log0") {
        // Dyadic panels [R2 2^{-k-1}, R2 2^{-k}] with a fixed-order rule per
        // panel; the innermost panel keeps its left endpoint at ~1e-14 R2.
        const int per_panel = 12;
        int panels = std::max(2, n_r / per_panel);
        std::vector<double> x, w;
        gauss_legendre_01(per_panel, x, w);
        double hi = R2;
        for (int k = 0; k < panels; ++k) {
            const bool last = (k == panels - 1);
            double lo = last ? 0.0 : hi * 0.5;
            if (last) lo = hi * 1e-14;
            for (int i = 0; i < per_panel; ++i) {
                t_nodes.push_back(lo + (hi - lo) * x[i]);
                t_weights.push_back((hi - lo) * w[i]);
            }
            hi = lo;
        }
    } else {
        throw GeometryError("unknown radial scheme: " + scheme);
    }

    g.nodes.reserve(t_nodes.size() * n_theta + 1);
    g.nodes.push_back({0.0, 0.0});  // origin, weight 0: participates in sups only
    for (std::size_t i = 0; i < t_nodes.size(); ++i) {
        const double r = std::sqrt(t_nodes[i]);
        const double w = t_weights[i] / n_theta;
        g.ring_radii.push_back(r);
        g.ring_weight.push_back(w);
        for (int j = 0; j < n_theta; ++j) {
            const double th = 2.0 * M_PI * j / n_theta;
            g.nodes.push_back({std::polar(r, th), w});
        }
    }
    g.thetas.reserve(n_theta);
    for (int j = 0; j < n_theta; ++j) g.thetas.push_back(2.0 * M_PI * j / n_theta);
    return g;
}

namespace {

double simpson(double a, double fa, double fm, double b, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive(const std::function<double(double)>& f, double a, double fa, double m, double fm,
                double b, double fb, double whole, double tol, int depth) {
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson(a, fa, flm, m, fm);
    const double right = simpson(m, fm, frm, b, fb);
    if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive(f, a, fa, lm, flm, m, fm, left, tol * 0.5, depth - 1) +
           adaptive(f, m, fm, rm, frm, b, fb, right, tol * 0.5, depth - 1);
}

}  // namespace

double integrate_1d(const std::function<double(double)>& f, double a, double b, double tol) {
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = simpson(a, fa, fm, b, fb);
    return adaptive(f, a, fa, m, fm, b, fb, whole, tol, 40);
}

}  // namespace paraword
