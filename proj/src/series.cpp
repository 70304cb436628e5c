#include "paraword/series.hpp"

#include <algorithm>
#include <sstream>

namespace paraword {

std::string rational_to_string(const Rational& q) {
    std::ostringstream os;
    os << q.get_num().get_str();
    if (q.get_den() != 1) os << "/" << q.get_den().get_str();
    return os.str();
}

std::string to_string(const GaussianRational& z) {
    if (sgn(z.im) == 0) return rational_to_string(z.re);
    std::ostringstream os;
    os << "(" << rational_to_string(z.re) << (sgn(z.im) < 0 ? "" : "+") << rational_to_string(z.im)
       << "i)";
    return os.str();
}

PowerSeries PowerSeries::constant(GaussianRational c) {
    PowerSeries p;
    if (!c.is_zero()) p.coeffs.push_back(std::move(c));
    return p;
}

PowerSeries PowerSeries::monomial(int k, GaussianRational c) {
    PowerSeries p;
    if (!c.is_zero()) {
        p.coeffs.resize(k + 1);
        p.coeffs[k] = std::move(c);
    }
    return p;
}

void PowerSeries::trim() {
    if (trunc != kExact && static_cast<int>(coeffs.size()) > trunc + 1)
        coeffs.resize(trunc + 1);
    while (!coeffs.empty() && coeffs.back().is_zero()) coeffs.pop_back();
}

namespace {

// Coefficients are only known up to the smaller truncation window; exact
// polynomials are fully known and never limit the result.
int merged_trunc(const PowerSeries& a, const PowerSeries& b) {
    if (a.trunc == PowerSeries::kExact) return b.trunc;
    if (b.trunc == PowerSeries::kExact) return a.trunc;
    return std::min(a.trunc, b.trunc);
}

}  // namespace

PowerSeries ps_add(const PowerSeries& a, const PowerSeries& b) {
    PowerSeries r;
    r.trunc = merged_trunc(a, b);
    r.coeffs.resize(std::max(a.coeffs.size(), b.coeffs.size()));
    for (std::size_t k = 0; k < r.coeffs.size(); ++k)
        r.coeffs[k] = a.at(static_cast<int>(k)) + b.at(static_cast<int>(k));
    r.trim();
    return r;
}

PowerSeries ps_sub(const PowerSeries& a, const PowerSeries& b) {
    PowerSeries r;
    r.trunc = merged_trunc(a, b);
    r.coeffs.resize(std::max(a.coeffs.size(), b.coeffs.size()));
    for (std::size_t k = 0; k < r.coeffs.size(); ++k)
        r.coeffs[k] = a.at(static_cast<int>(k)) - b.at(static_cast<int>(k));
    r.trim();
    return r;
}

PowerSeries ps_scale(const GaussianRational& s, const PowerSeries& a) {
    PowerSeries r;
    r.trunc = a.trunc;
    if (s.is_zero()) return r;
    r.coeffs.reserve(a.coeffs.size());
    for (const auto& c : a.coeffs) r.coeffs.push_back(s * c);
    r.trim();
    return r;
}

PowerSeries ps_mul(const PowerSeries& a, const PowerSeries& b) {
    PowerSeries r;
    r.trunc = merged_trunc(a, b);
    if (a.is_zero() || b.is_zero()) return r;
    int out_deg = a.degree() + b.degree();
    if (r.trunc != PowerSeries::kExact) out_deg = std::min(out_deg, r.trunc);
    r.coeffs.assign(out_deg + 1, GaussianRational());
    for (int i = 0; i <= a.degree(); ++i) {
        if (a.coeffs[i].is_zero()) continue;
        const int jmax = std::min(b.degree(), out_deg - i);
        for (int j = 0; j <= jmax; ++j) r.coeffs[i + j] += a.coeffs[i] * b.coeffs[j];
    }
    r.trim();
    return r;
}

PowerSeries ps_derivative(const PowerSeries& a) {
    PowerSeries r;
    r.trunc = a.trunc == PowerSeries::kExact ? PowerSeries::kExact : a.trunc - 1;
    for (int k = 1; k <= a.degree(); ++k)
        r.coeffs.push_back(make_rational(k) * a.coeffs[k]);
    r.trim();
    return r;
}

PowerSeries ps_integrate(const PowerSeries& a) {
    PowerSeries r;
    r.trunc = a.trunc == PowerSeries::kExact ? PowerSeries::kExact : a.trunc + 1;
    if (a.is_zero()) return r;
    r.coeffs.resize(a.coeffs.size() + 1);
    for (int k = 0; k <= a.degree(); ++k)
        r.coeffs[k + 1] = make_rational(1, k + 1) * a.coeffs[k];
    r.trim();
    return r;
}

PowerSeries ps_pow(const PowerSeries& a, int k) {
    PowerSeries r = PowerSeries::constant(GaussianRational(1));
    r.trunc = a.trunc;
    for (int i = 0; i < k; ++i) r = ps_mul(r, a);
    return r;
}

PowerSeries apply_letter(Letter l, const PowerSeries& g, const PowerSeries& f) {
    switch (l) {
        case Letter::M:
            return ps_mul(g, f);
        case Letter::T:
            return ps_integrate(ps_mul(f, ps_derivative(g)));
        case Letter::S:
            return ps_integrate(ps_mul(ps_derivative(f), g));
    }
    throw SeriesError("bad letter");
}

PowerSeries apply_pi0(PowerSeries f) {
    if (!f.coeffs.empty()) f.coeffs[0] = GaussianRational();
    f.trim();
    return f;
}

PowerSeries apply_word(const Word& w, bool pi0, const PowerSeries& g, const PowerSeries& f) {
    PowerSeries h = pi0 ? apply_pi0(f) : f;
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
        h = apply_letter(*it, g, h);
    return h;
}

PowerSeries apply_expr(const OperatorExpr& e, const PowerSeries& g, const PowerSeries& f) {
    // Truncated inputs must share one declared degree; exact polynomials mix
    // freely with either.
    if (!g.is_exact() && !f.is_exact() && g.trunc != f.trunc)
        throw SeriesError("truncation degree mismatch: " + std::to_string(g.trunc) + " vs " +
                          std::to_string(f.trunc));
    PowerSeries acc;
    acc.trunc = f.trunc;
    for (const auto& [key, coeff] : e.terms) {
        PowerSeries t = apply_word(key.word, key.pi0, g, f);
        GaussianRational c{coeff};
        acc = ps_add(acc, ps_scale(c, t));
    }
    return acc;
}

std::complex<double> ps_eval(const PowerSeries& f, std::complex<double> z) {
    std::complex<double> acc = 0.0;
    for (auto it = f.coeffs.rbegin(); it != f.coeffs.rend(); ++it)
        acc = acc * z + it->to_complex();
    return acc;
}

std::string PowerSeries::to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        if (k) os << ",";
        const auto& c = coeffs[k];
        os << "[" << c.re.get_num().get_str() << "," << c.re.get_den().get_str() << ","
           << c.im.get_num().get_str() << "," << c.im.get_den().get_str() << "]";
    }
    os << "]";
    return os.str();
}

// ---------------------------------------------------------------------------

std::complex<double> SeriesD::eval(std::complex<double> z) const {
    std::complex<double> acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
    return acc;
}

SeriesD sd_mul(const SeriesD& a, const SeriesD& b, int truncation) {
    SeriesD r(truncation);
    const int na = static_cast<int>(a.coeffs.size());
    for (int i = 0; i < na && i <= truncation; ++i) {
        const std::complex<double> ai = a.coeffs[i];
        if (ai == std::complex<double>(0.0)) continue;
        const int jmax = std::min<int>(static_cast<int>(b.coeffs.size()) - 1, truncation - i);
        for (int j = 0; j <= jmax; ++j) r.coeffs[i + j] += ai * b.coeffs[j];
    }
    return r;
}

SeriesD sd_apply_letter(Letter l, const SeriesD& g, const SeriesD& f) {
    const int n = std::max(f.truncation(), g.truncation());
    SeriesD r(n);
    switch (l) {
        case Letter::M:
            return sd_mul(g, f, n);
        case Letter::T: {
            // (T_g f)_{k+1} = (sum_{i+j=k} f_i (j+1) g_{j+1}) / (k+1)
            for (int i = 0; i < static_cast<int>(f.coeffs.size()); ++i) {
                const std::complex<double> fi = f.coeffs[i];
                if (fi == std::complex<double>(0.0)) continue;
                const int jmax = std::min(g.truncation() - 1, n - 1 - i);
                for (int j = 0; j <= jmax; ++j)
                    r.coeffs[i + j + 1] += fi * (double(j + 1)) * g.coeffs[j + 1];
            }
            for (int k = 1; k <= n; ++k) r.coeffs[k] /= double(k);
            return r;
        }
        case Letter::S: {
            for (int i = 1; i < static_cast<int>(f.coeffs.size()); ++i) {
                const std::complex<double> fi = double(i) * f.coeffs[i];
                if (fi == std::complex<double>(0.0)) continue;
                const int jmax = std::min(g.truncation(), n - i);
                for (int j = 0; j <= jmax; ++j) r.coeffs[i - 1 + j + 1] += fi * g.coeffs[j];
            }
            for (int k = 1; k <= n; ++k) r.coeffs[k] /= double(k);
            return r;
        }
    }
    throw SeriesError("bad letter");
}

SeriesD sd_apply_expr(const OperatorExpr& e, const SeriesD& g, const SeriesD& f) {
    SeriesD acc(std::max(f.truncation(), g.truncation()));
    for (const auto& [key, coeff] : e.terms) {
        SeriesD t = f;
        if (key.pi0 && !t.coeffs.empty()) t.coeffs[0] = 0.0;
        for (auto it = key.word.letters.rbegin(); it != key.word.letters.rend(); ++it)
            t = sd_apply_letter(*it, g, t);
        const double c = to_double(coeff);
        for (std::size_t k = 0; k < t.coeffs.size() && k < acc.coeffs.size(); ++k)
            acc.coeffs[k] += c * t.coeffs[k];
    }
    return acc;
}

SeriesD sd_from_exact(const PowerSeries& p, int truncation) {
    SeriesD r(truncation);
    const int kmax = std::min(p.degree(), truncation);
    for (int k = 0; k <= kmax; ++k) r.coeffs[k] = p.coeffs[k].to_complex();
    return r;
}

}  // namespace paraword
