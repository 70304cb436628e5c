#include "paraword/symbols.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace paraword {

using cdouble = std::complex<double>;

SymbolSpec SymbolSpec::polynomial(std::vector<GaussianRational> coeffs) {
    SymbolSpec s;
    s.kind_ = Kind::Polynomial;
    s.coeffs_ = std::move(coeffs);
    while (!s.coeffs_.empty() && s.coeffs_.back().is_zero()) s.coeffs_.pop_back();
    s.coeffs_d_.reserve(s.coeffs_.size());
    for (const auto& c : s.coeffs_) s.coeffs_d_.push_back(c.to_complex());
    return s;
}

SymbolSpec SymbolSpec::polynomial_d(const std::vector<cdouble>& coeffs) {
    // Lossless only for dyadic inputs; good enough for CLI-supplied symbols.
    std::vector<GaussianRational> cs;
    cs.reserve(coeffs.size());
    for (auto c : coeffs) {
        GaussianRational g;
        g.re = Rational(c.real());
        g.im = Rational(c.imag());
        cs.push_back(std::move(g));
    }
    return polynomial(std::move(cs));
}

SymbolSpec SymbolSpec::log_e() {
    SymbolSpec s;
    s.kind_ = Kind::LogE;
    return s;
}

SymbolSpec SymbolSpec::pow_of_log_e(double beta) {
    SymbolSpec s;
    s.kind_ = Kind::PowOfLogE;
    s.beta_ = beta;
    return s;
}

SymbolSpec SymbolSpec::blaschke(std::vector<cdouble> zeros) {
    for (auto a : zeros)
        if (std::abs(a) >= 1.0) throw SymbolError("Blaschke zeros must lie inside the disc");
    SymbolSpec s;
    s.kind_ = Kind::Blaschke;
    s.zeros_ = std::move(zeros);
    return s;
}

SymbolSpec SymbolSpec::blaschke_default() {
    std::vector<cdouble> zeros;
    double gap = 0.5;
    for (int k = 1; k <= 12; ++k) {
        zeros.emplace_back(1.0 - gap, 0.0);
        gap *= 0.5;
    }
    return blaschke(std::move(zeros));
}

SymbolSpec SymbolSpec::power(SymbolSpec inner, double exponent) {
    if (inner.kind_ == Kind::Blaschke)
        throw SymbolError("fractional powers of Blaschke products are not single-valued");
    // Probe for zeros; the branch policy only admits zero-free bases.
    for (int ir = 0; ir <= 24; ++ir) {
        double r = ir / 24.0 * 0.999;
        for (int it = 0; it < 48; ++it) {
            double th = 2.0 * M_PI * it / 48.0;
            cdouble v = inner.value(std::polar(r, th));
            if (std::abs(v) < 1e-9)
                throw SymbolError("power() requires a zero-free base symbol on the disc");
        }
    }
    SymbolSpec s;
    s.kind_ = Kind::Power;
    s.beta_ = exponent;
    s.inner_ = std::make_shared<SymbolSpec>(std::move(inner));
    return s;
}

SymbolSpec SymbolSpec::compose_moebius(SymbolSpec inner, cdouble b) {
    if (std::abs(b) >= 1.0) throw SymbolError("Moebius center must lie inside the disc");
    SymbolSpec s;
    s.kind_ = Kind::Composed;
    s.center_ = b;
    s.inner_ = std::make_shared<SymbolSpec>(std::move(inner));
    return s;
}

SymbolSpec dilate(SymbolSpec g, double r) {
    if (!(r > 0.0 && r < 1.0)) throw SymbolError("dilation radius must lie in (0,1)");
    if (g.kind_ == SymbolSpec::Kind::Dilated) {
        SymbolSpec s;
        s.kind_ = SymbolSpec::Kind::Dilated;
        s.dilation_ = g.dilation_ * r;
        s.inner_ = g.inner_;
        return s;
    }
    SymbolSpec s;
    s.kind_ = SymbolSpec::Kind::Dilated;
    s.dilation_ = r;
    s.inner_ = std::make_shared<SymbolSpec>(std::move(g));
    return s;
}

namespace {

// log(e/(1-z)) = 1 - log(1-z), derivative 1/(1-z).
std::pair<cdouble, cdouble> eval_log_e(cdouble z) {
    const cdouble w = 1.0 - z;
    return {1.0 - std::log(w), 1.0 / w};
}

}  // namespace

std::pair<cdouble, cdouble> SymbolSpec::eval(cdouble z) const {
    switch (kind_) {
        case Kind::Polynomial: {
            cdouble v = 0.0, d = 0.0;
            for (auto it = coeffs_d_.rbegin(); it != coeffs_d_.rend(); ++it) {
                d = d * z + v;
                v = v * z + *it;
            }
            return {v, d};
        }
        case Kind::LogE:
            return eval_log_e(z);
        case Kind::PowOfLogE: {
            auto [h, hp] = eval_log_e(z);
            // h maps the disc into the right half-plane, so the principal
            // power is single-valued.
            const cdouble v = std::pow(h, beta_);
            return {v, beta_ * std::pow(h, beta_ - 1.0) * hp};
        }
        case Kind::Blaschke: {
            cdouble v = 1.0, d = 0.0;
            for (auto a : zeros_) {
                cdouble bv, bd;
                if (std::abs(a) == 0.0) {
                    bv = z;
                    bd = 1.0;
                } else {
                    const cdouble rot = std::abs(a) / a;
                    const cdouble den = 1.0 - std::conj(a) * z;
                    bv = rot * (a - z) / den;
                    bd = rot * (std::abs(a) * std::abs(a) - 1.0) / (den * den);
                }
                d = d * bv + v * bd;
                v = v * bv;
            }
            return {v, d};
        }
        case Kind::Dilated: {
            auto [v, d] = inner_->eval(dilation_ * z);
            return {v, dilation_ * d};
        }
        case Kind::Power: {
            auto [v, d] = inner_->eval(z);
            return {std::pow(v, beta_), beta_ * std::pow(v, beta_ - 1.0) * d};
        }
        case Kind::Composed: {
            const cdouble den = 1.0 - std::conj(center_) * z;
            const cdouble w = (center_ - z) / den;
            auto [v, d] = inner_->eval(w);
            const cdouble dphi = (std::norm(center_) - 1.0) / (den * den);
            return {v, d * dphi};
        }
    }
    throw SymbolError("bad symbol kind");
}

namespace {

// Taylor coefficients of f^beta from those of f, f(0) != 0 (Miller's
// recurrence from f u' = beta u f').
std::vector<cdouble> power_series_of(const std::vector<cdouble>& f, double beta, int n) {
    std::vector<cdouble> u(n + 1);
    if (f.empty() || f[0] == cdouble(0.0))
        throw SymbolError("power-series power needs nonzero constant term");
    u[0] = std::pow(f[0], beta);
    for (int m = 1; m <= n; ++m) {
        cdouble acc = 0.0;
        const int jmax = std::min<int>(m, static_cast<int>(f.size()) - 1);
        for (int j = 1; j <= jmax; ++j)
            acc += ((beta + 1.0) * double(j) - double(m)) * f[j] * u[m - j];
        u[m] = acc / (double(m) * f[0]);
    }
    return u;
}

}  // namespace

SeriesD SymbolSpec::taylor(int n) const {
    switch (kind_) {
        case Kind::Polynomial: {
            SeriesD s(n);
            for (int k = 0; k <= n && k < static_cast<int>(coeffs_d_.size()); ++k)
                s.coeffs[k] = coeffs_d_[k];
            return s;
        }
        case Kind::LogE: {
            SeriesD s(n);
            s.coeffs[0] = 1.0;
            for (int k = 1; k <= n; ++k) s.coeffs[k] = 1.0 / double(k);
            return s;
        }
        case Kind::PowOfLogE: {
            SeriesD h = log_e().taylor(n);
            return SeriesD(power_series_of(h.coeffs, beta_, n));
        }
        case Kind::Blaschke: {
            SeriesD acc(n);
            acc.coeffs[0] = 1.0;
            for (auto a : zeros_) {
                SeriesD fac(n);
                if (std::abs(a) == 0.0) {
                    if (n >= 1) fac.coeffs[1] = 1.0;
                } else {
                    // (|a|/a)(a - z) sum_k (conj(a) z)^k
                    const cdouble rot = std::abs(a) / a;
                    const cdouble ac = std::conj(a);
                    fac.coeffs[0] = std::abs(a);
                    cdouble p = 1.0;  // ac^{k-1}
                    for (int k = 1; k <= n; ++k) {
                        fac.coeffs[k] = rot * p * (std::abs(a) * std::abs(a) - 1.0);
                        p *= ac;
                    }
                }
                acc = sd_mul(acc, fac, n);
            }
            return acc;
        }
        case Kind::Dilated: {
            SeriesD s = inner_->taylor(n);
            double p = 1.0;
            for (int k = 0; k <= n; ++k) {
                s.coeffs[k] *= p;
                p *= dilation_;
            }
            return s;
        }
        case Kind::Power: {
            SeriesD f = inner_->taylor(n);
            return SeriesD(power_series_of(f.coeffs, beta_, n));
        }
        case Kind::Composed:
            throw SymbolError("Moebius-composed symbols have no Taylor path");
    }
    throw SymbolError("bad symbol kind");
}

bool SymbolSpec::continuous_on_closure() const {
    switch (kind_) {
        case Kind::Polynomial:
        case Kind::Blaschke:
        case Kind::Dilated:
            return true;
        case Kind::LogE:
        case Kind::PowOfLogE:
            return false;
        case Kind::Power:
        case Kind::Composed:
            return inner_->continuous_on_closure();
    }
    return false;
}

std::string SymbolSpec::describe() const {
    std::ostringstream os;
    switch (kind_) {
        case Kind::Polynomial:
            os << "poly[";
            for (std::size_t k = 0; k < coeffs_d_.size(); ++k) {
                if (k) os << ",";
                os << coeffs_d_[k].real();
                if (coeffs_d_[k].imag() != 0.0) os << (coeffs_d_[k].imag() < 0 ? "" : "+")
                                                  << coeffs_d_[k].imag() << "i";
            }
            os << "]";
            break;
        case Kind::LogE:
            os << "loge";
            break;
        case Kind::PowOfLogE:
            os << "powlog(" << beta_ << ")";
            break;
        case Kind::Blaschke:
            os << "blaschke(" << zeros_.size() << " zeros)";
            break;
        case Kind::Dilated:
            os << "dilate(" << inner_->describe() << "," << dilation_ << ")";
            break;
        case Kind::Power:
            os << "pow(" << inner_->describe() << "," << beta_ << ")";
            break;
        case Kind::Composed:
            os << "comp(" << inner_->describe() << ",phi_(" << center_.real() << ","
               << center_.imag() << "))";
            break;
    }
    return os.str();
}

double grad_abs_pow(const SymbolSpec& g, double q, cdouble z) {
    auto [v, d] = g.eval(z);
    const double av = std::abs(v);
    if (av == 0.0 && q < 1.0) return std::numeric_limits<double>::infinity();
    return q * std::pow(av, q - 1.0) * std::abs(d);
}

}  // namespace paraword
