#include "paraword/opnorm.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <thread>

namespace paraword {

using cdouble = std::complex<double>;

namespace {

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

// In-place radix-2 transform X_j = sum_m x_m e^{+2 pi i j m / n}.
void fft_plus(std::vector<cdouble>& a) {
    const int n = static_cast<int>(a.size());
    for (int i = 1, j = 0; i < n; ++i) {
        int bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (int len = 2; len <= n; len <<= 1) {
        const double ang = 2.0 * M_PI / len;
        const cdouble wl(std::cos(ang), std::sin(ang));
        for (int i = 0; i < n; i += len) {
            cdouble w = 1.0;
            for (int j = 0; j < len / 2; ++j) {
                const cdouble u = a[i + j];
                const cdouble v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= wl;
            }
        }
    }
}

// Values of f on one ring of n_theta equispaced angles at radius r.
// Coefficients are folded modulo n_theta so one FFT serves the whole ring.
void ring_values(const SeriesD& f, double r, int n_theta, std::vector<cdouble>& out) {
    out.assign(n_theta, 0.0);
    double p = 1.0;
    for (std::size_t k = 0; k < f.coeffs.size(); ++k) {
        out[k % n_theta] += f.coeffs[k] * p;
        p *= r;
    }
    if (is_pow2(n_theta)) {
        fft_plus(out);
    } else {
        std::vector<cdouble> folded = out;
        for (int j = 0; j < n_theta; ++j) {
            cdouble acc = 0.0;
            for (int m = 0; m < n_theta; ++m)
                acc += folded[m] * std::polar(1.0, 2.0 * M_PI * j * m / n_theta);
            out[j] = acc;
        }
    }
}

void parallel_for(int n, int threads, const std::function<void(int)>& body) {
    if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
    threads = std::max(1, std::min(threads, n));
    if (threads == 1) {
        for (int i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) body(i);
        });
    for (auto& th : pool) th.join();
}

}  // namespace

std::vector<double> sample_abs(const SeriesD& f, const DiscGrid& grid) {
    std::vector<double> out(grid.nodes.size());
    out[0] = f.coeffs.empty() ? 0.0 : std::abs(f.coeffs[0]);
    std::vector<cdouble> ring;
    for (std::size_t i = 0; i < grid.ring_radii.size(); ++i) {
        ring_values(f, grid.ring_radii[i], grid.n_theta, ring);
        for (int j = 0; j < grid.n_theta; ++j)
            out[1 + i * grid.n_theta + j] = std::abs(ring[j]);
    }
    return out;
}

std::vector<double> sample_abs_circle(const SeriesD& f, const DiscGrid& grid) {
    std::vector<cdouble> ring;
    ring_values(f, grid.circle_radius, static_cast<int>(grid.thetas.size()), ring);
    std::vector<double> out(grid.thetas.size());
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = std::abs(ring[j]);
    return out;
}

double series_norm(const SeriesD& f, double p, double alpha, const DiscGrid& grid) {
    double acc = 0.0;
    if (alpha <= -1.0) {
        const std::vector<double> vals = sample_abs_circle(f, grid);
        for (double v : vals) acc += std::pow(v, p);
        acc /= static_cast<double>(vals.size());
    } else {
        const std::vector<double> vals = sample_abs(f, grid);
        for (std::size_t i = 0; i < grid.nodes.size(); ++i) {
            if (grid.nodes[i].w_area == 0.0) continue;
            acc += std::pow(vals[i], p) * DiscGrid::weight_alpha(grid.nodes[i], alpha);
        }
    }
    return std::pow(acc, 1.0 / p);
}

double tail_mass(const SeriesD& f, double rho) {
    const int n = static_cast<int>(f.coeffs.size());
    if (n == 0) return 0.0;
    const int window = std::max(8, n / 16);
    double total = 0.0, tail = 0.0;
    double p = 1.0;
    for (int k = 0; k < n; ++k) {
        const double m = std::abs(f.coeffs[k]) * p;
        total += m;
        if (k >= n - window) tail += m;
        p *= rho;
    }
    if (total <= 1e-300) return 0.0;
    return tail / total;
}

namespace {

// Smallest n with n^kappa * rho^n below ~1e-10, by fixed-point iteration.
double solve_decay(double rho, double kappa) {
    if (rho <= 0.0) return 0.0;
    if (rho >= 1.0) return 1e9;
    const double lead = -std::log(1e-10);
    const double rate = -std::log(rho);
    double n = lead / rate;
    for (int it = 0; it < 4; ++it) n = (lead + kappa * std::log(std::max(n, 2.0))) / rate;
    return n;
}

}  // namespace

int suggest_truncation(double decay, double eval_radius) {
    const double n = solve_decay(decay * eval_radius, 3.0);
    return std::clamp(static_cast<int>(std::ceil(n)), 256, 16384);
}

double symbol_decay(const SymbolSpec& g) {
    switch (g.kind()) {
        case SymbolSpec::Kind::Polynomial:
            return 0.0;
        case SymbolSpec::Kind::LogE:
        case SymbolSpec::Kind::PowOfLogE:
            return 1.0;
        case SymbolSpec::Kind::Blaschke: {
            double m = 0.0;
            for (auto a : g.zeros()) m = std::max(m, std::abs(a));
            return m;
        }
        case SymbolSpec::Kind::Dilated:
        case SymbolSpec::Kind::Power:
        case SymbolSpec::Kind::Composed:
            break;
    }
    // Dilated/Power: probe through describe-free accessors.
    if (g.kind() == SymbolSpec::Kind::Dilated) return g.dilation_radius();
    return 1.0;
}

namespace {

struct Member {
    SeriesD series;
    std::string name;
};

std::vector<Member> family_members(const TestFamily& fam, double p, double alpha, int n_trunc,
                                   bool restricted) {
    std::vector<Member> ms;
    const int start = restricted ? std::max(1, fam.monomial_start) : fam.monomial_start;
    for (int k = start; k <= fam.monomial_max; ++k) {
        SeriesD s(n_trunc);
        if (k <= n_trunc) s.coeffs[k] = 1.0;
        ms.push_back({std::move(s), "z^" + std::to_string(k)});
    }
    const double expo = 2.0 * (alpha + 2.0) / p;
    for (auto a : fam.kernel_points) {
        SeriesD s(n_trunc);
        const cdouble ac = std::conj(a);
        const double lead = std::pow(1.0 - std::norm(a), expo / 2.0);
        double bk = 1.0;  // binom(k + expo - 1, k) via recurrence
        cdouble apow = 1.0;
        for (int k = 0; k <= n_trunc; ++k) {
            s.coeffs[k] = lead * bk * apow;
            apow *= ac;
            bk *= (double(k) + expo) / (double(k) + 1.0);
        }
        if (restricted) s.coeffs[0] = 0.0;
        std::ostringstream nm;
        nm << "kernel(" << a.real() << (a.imag() < 0 ? "" : "+") << a.imag() << "i)";
        ms.push_back({std::move(s), nm.str()});
    }
    return ms;
}

// Each coefficient stream decays like k^kappa * d^k: the symbol's Taylor
// series (with a small polynomial factor from repeated products) and each
// kernel member with its binomial order 2(alpha+2)/p - 1. The truncation must
// silence the slowest stream at the grid's outer radius.
int effective_truncation(const SymbolSpec& g, const TestFamily& fam, double p, double alpha,
                         int n_trunc, const DiscGrid& grid) {
    if (n_trunc > 0) return n_trunc;
    const double radius = std::max(grid.r_max, grid.circle_radius);
    double need = solve_decay(symbol_decay(g) * radius, 3.0);
    const double kernel_kappa = 2.0 * (alpha + 2.0) / p + 2.0;
    for (auto a : fam.kernel_points)
        need = std::max(need, solve_decay(std::abs(a) * radius, kernel_kappa));
    return std::clamp(static_cast<int>(std::ceil(need)), 256, 16384);
}

bool single_all_m_term(const OperatorExpr& e, int& power, Rational& coeff) {
    if (e.terms.size() != 1) return false;
    const auto& [key, c] = *e.terms.begin();
    if (key.pi0 || key.word.empty() || !key.word.all_of(Letter::M)) return false;
    power = key.word.length();
    coeff = c;
    return true;
}

}  // namespace

NormReport op_lower_bound(const OperatorExpr& e, const SymbolSpec& g, double p, double alpha,
                          const TestFamily& family, int n_trunc, bool restricted,
                          const DiscGrid& grid, int threads) {
    NormReport rep;
    rep.functional = restricted ? "opnorm_restricted_lb" : "opnorm_lb";
    rep.symbol = g.describe();
    rep.params["p"] = p;
    rep.params["alpha"] = alpha;
    rep.n_r = grid.n_r;
    rep.n_theta = grid.n_theta;
    rep.r_max = grid.r_max;

    // M^l alone is multiplication by g^l; its norm is ||g||_inf^l, estimated
    // as a grid sup. The series route would need the full boundary behaviour.
    int mpow = 0;
    Rational mcoeff;
    if (single_all_m_term(e, mpow, mcoeff)) {
        double best = 0.0;
        cdouble best_z = 0.0;
        for (const auto& nd : grid.nodes) {
            const double v = std::abs(g.value(nd.z));
            if (v > best) {
                best = v;
                best_z = nd.z;
            }
        }
        for (double th : grid.thetas) {
            const cdouble z = std::polar(grid.circle_radius, th);
            const double v = std::abs(g.value(z));
            if (v > best) {
                best = v;
                best_z = z;
            }
        }
        rep.value = std::abs(to_double(mcoeff)) * std::pow(best, mpow);
        rep.argmax = best_z;
        return rep;
    }

    const int n = effective_truncation(g, family, p, alpha, n_trunc, grid);
    const SeriesD gser = g.taylor(n);
    const std::vector<Member> members = family_members(family, p, alpha, n, restricted);
    if (members.empty()) throw NormError("empty test family");

    const double rho = std::max(grid.r_max, grid.circle_radius);
    std::vector<double> vals(members.size(), 0.0);
    std::vector<std::string> errs(members.size());
    parallel_for(static_cast<int>(members.size()), threads, [&](int i) {
        try {
            const double fnorm = series_norm(members[i].series, p, alpha, grid);
            if (fnorm <= 0.0) {
                vals[i] = 0.0;
                return;
            }
            SeriesD fhat = members[i].series;
            for (auto& c : fhat.coeffs) c /= fnorm;
            const SeriesD out = sd_apply_expr(e, gser, fhat);
            const double tm = tail_mass(out, rho);
            if (tm > 1e-8)
                throw TruncationError("tail-coefficient mass " + std::to_string(tm) +
                                      " exceeds 1e-8; raise n_trunc above " + std::to_string(n));
            vals[i] = series_norm(out, p, alpha, grid);
        } catch (const std::exception& ex) {
            errs[i] = ex.what();
        }
    });
    for (const auto& m : errs)
        if (!m.empty()) throw TruncationError(m);

    std::size_t best = 0;
    for (std::size_t i = 1; i < vals.size(); ++i)
        if (vals[i] > vals[best]) best = i;
    rep.value = vals[best];
    rep.functional += " @" + members[best].name;
    return rep;
}

NormReport q_op_lower_bound(double tau, int l, const SymbolSpec& g, double p, double alpha,
                            const TestFamily& family, int n_trunc, bool restricted,
                            const DiscGrid& grid, int threads) {
    if (!(tau > 0.0) || l < 1) throw NormError("Q operator needs tau > 0 and l >= 1");
    NormReport rep;
    rep.functional = "q_opnorm_lb";
    rep.symbol = g.describe();
    rep.params["tau"] = tau;
    rep.params["ell"] = l;
    rep.params["p"] = p;
    rep.params["alpha"] = alpha;
    rep.n_r = grid.n_r;
    rep.n_theta = grid.n_theta;
    rep.r_max = grid.r_max;

    const int n = effective_truncation(g, family, p, alpha, n_trunc, grid);
    const SeriesD gser = g.taylor(n);
    const std::vector<Member> members = family_members(family, p, alpha, n, restricted);
    if (members.empty()) throw NormError("empty test family");

    // |g|^{tau l} on the grid, computed pointwise (the field is not analytic).
    const double te = tau * l;
    std::vector<double> gmod(grid.nodes.size());
    for (std::size_t i = 0; i < grid.nodes.size(); ++i)
        gmod[i] = std::pow(std::abs(g.value(grid.nodes[i].z)), te);
    std::vector<double> gmod_circle(grid.thetas.size());
    for (std::size_t j = 0; j < grid.thetas.size(); ++j)
        gmod_circle[j] =
            std::pow(std::abs(g.value(std::polar(grid.circle_radius, grid.thetas[j]))), te);

    const double rho = std::max(grid.r_max, grid.circle_radius);
    std::vector<double> vals(members.size(), 0.0);
    std::vector<std::string> errs(members.size());
    parallel_for(static_cast<int>(members.size()), threads, [&](int i) {
        try {
            const double fnorm = series_norm(members[i].series, p, alpha, grid);
            if (fnorm <= 0.0) return;
            SeriesD h = members[i].series;
            for (auto& c : h.coeffs) c /= fnorm;
            for (int rep_l = 0; rep_l < l; ++rep_l) h = sd_apply_letter(Letter::T, gser, h);
            const double tm = tail_mass(h, rho);
            if (tm > 1e-8)
                throw TruncationError("tail-coefficient mass " + std::to_string(tm) +
                                      " exceeds 1e-8; raise n_trunc above " + std::to_string(n));
            double acc = 0.0;
            if (alpha <= -1.0) {
                const std::vector<double> hv = sample_abs_circle(h, grid);
                for (std::size_t j = 0; j < hv.size(); ++j)
                    acc += std::pow(gmod_circle[j] * hv[j], p);
                acc /= static_cast<double>(hv.size());
            } else {
                const std::vector<double> hv = sample_abs(h, grid);
                for (std::size_t k = 0; k < grid.nodes.size(); ++k) {
                    if (grid.nodes[k].w_area == 0.0) continue;
                    acc += std::pow(gmod[k] * hv[k], p) *
                           DiscGrid::weight_alpha(grid.nodes[k], alpha);
                }
            }
            vals[i] = std::pow(acc, 1.0 / p);
        } catch (const std::exception& ex) {
            errs[i] = ex.what();
        }
    });
    for (const auto& m : errs)
        if (!m.empty()) throw TruncationError(m);

    std::size_t best = 0;
    for (std::size_t i = 1; i < vals.size(); ++i)
        if (vals[i] > vals[best]) best = i;
    rep.value = vals[best];
    rep.functional += " @" + members[best].name;
    return rep;
}

TestFamily scan_family(double p, double alpha) {
    (void)p;
    (void)alpha;
    std::vector<cdouble> kernels;
    // The catalogue symbols are singular along the positive real axis; probe
    // there and at two nearby angles.
    for (double r : {0.8, 0.9, 0.95, 0.99, 0.995}) {
        kernels.emplace_back(r, 0.0);
    }
    kernels.push_back(std::polar(0.99, 0.05));
    kernels.push_back(std::polar(0.99, -0.05));
    kernels.push_back(std::polar(0.9, 0.5));
    return TestFamily::monomials_and_kernels(8, std::move(kernels));
}

bool plateaus(const std::vector<double>& values) {
    const std::size_t n = values.size();
    if (n < 2) return true;
    return values[n - 1] < 1.5 * values[n - 2];
}

double growth_factor(const std::vector<double>& values) {
    if (values.empty() || values.front() <= 0.0) return 0.0;
    return values.back() / values.front();
}

ScanTable equivalence_scan(const Word& w, const SymbolSpec& g, double p, double alpha,
                           const std::vector<double>& r_list, int n_trunc,
                           const DiscGrid& op_grid, const DiscGrid& sem_grid, int threads) {
    const LetterCounts c = w.counts();
    if (c.t_count < 1) throw NormError("equivalence scan needs a word with at least one T letter");
    ScanTable table;
    table.word_text = OperatorExpr::single(w).to_string();
    table.symbol = g.describe();
    table.p = p;
    table.alpha = alpha;
    table.s = double(c.m_count + c.s_count) / double(c.t_count) + 1.0;
    table.n_letters = w.length();

    const OperatorExpr expr = OperatorExpr::single(w);
    const auto a_grid = default_a_grid();
    std::vector<double> radii = r_list;
    std::sort(radii.begin(), radii.end());
    for (double r : radii) {
        const SymbolSpec gr = dilate(g, r);
        const TestFamily fam = scan_family(p, alpha);
        const NormReport lb = op_lower_bound(expr, gr, p, alpha, fam, n_trunc, false, op_grid,
                                             threads);
        double sem;
        if (alpha <= -1.0) {
            sem = bold_seminorm(gr, -1.0, table.s, a_grid, sem_grid).value;
        } else {
            sem = bloch_q_seminorm(gr, table.s, sem_grid).value;
        }
        ScanTable::Row row;
        row.r = r;
        row.opnorm_lb = lb.value;
        row.seminorm_pow = std::pow(sem, table.n_letters);
        row.ratio = row.opnorm_lb / row.seminorm_pow;
        if (!(std::isfinite(row.opnorm_lb) && row.opnorm_lb > 0.0 &&
              std::isfinite(row.seminorm_pow) && row.seminorm_pow > 0.0))
            throw NormError("scan row at r = " + std::to_string(r) +
                            " is not finite and positive");
        table.rows.push_back(row);
    }
    return table;
}

std::string ScanTable::to_csv() const {
    std::ostringstream os;
    os.precision(12);
    os << "r,opnorm_lb,seminorm_pow_N,ratio\n";
    for (const auto& row : rows)
        os << row.r << "," << row.opnorm_lb << "," << row.seminorm_pow << "," << row.ratio
           << "\n";
    return os.str();
}

std::string ScanTable::to_json() const {
    std::ostringstream os;
    os.precision(15);
    os << "{\"word\":\"" << word_text << "\",\"symbol\":\"" << symbol << "\",\"p\":" << p
       << ",\"alpha\":" << alpha << ",\"s\":" << s << ",\"N\":" << n_letters << ",\"rows\":[";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i) os << ",";
        os << "{\"r\":" << rows[i].r << ",\"opnorm_lb\":" << rows[i].opnorm_lb
           << ",\"seminorm_pow_N\":" << rows[i].seminorm_pow << ",\"ratio\":" << rows[i].ratio
           << "}";
    }
    os << "]}";
    return os.str();
}

}  // namespace paraword
