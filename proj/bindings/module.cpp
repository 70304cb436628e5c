#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "paraword/norms.hpp"
#include "paraword/opnorm.hpp"
#include "paraword/series.hpp"
#include "paraword/symbols.hpp"
#include "paraword/wordalg.hpp"

namespace py = pybind11;
using namespace paraword;

namespace {

Word word_from_text(const std::string& text) {
    OperatorExpr e = parse_expr(text);
    if (e.terms.size() != 1 || e.terms.begin()->second != Rational(1) ||
        e.terms.begin()->first.pi0)
        throw std::invalid_argument("expected a single plain word, got: " + text);
    return e.terms.begin()->first.word;
}

SymbolSpec make_symbol(const std::string& kind, double beta,
                       const std::vector<std::complex<double>>& coeffs, double dilation) {
    SymbolSpec g = SymbolSpec::log_e();
    if (kind == "loge") {
        g = SymbolSpec::log_e();
    } else if (kind == "powlog") {
        g = SymbolSpec::pow_of_log_e(beta);
    } else if (kind == "poly") {
        g = SymbolSpec::polynomial_d(coeffs);
    } else if (kind == "blaschke") {
        g = coeffs.empty() ? SymbolSpec::blaschke_default() : SymbolSpec::blaschke(coeffs);
    } else {
        throw std::invalid_argument("unknown symbol kind: " + kind);
    }
    if (dilation > 0.0) g = dilate(std::move(g), dilation);
    return g;
}

py::dict report_dict(const NormReport& r) {
    py::dict d;
    d["functional"] = r.functional;
    d["symbol"] = r.symbol;
    d["value"] = r.value;
    if (r.argmax) d["argmax"] = *r.argmax;
    return d;
}

}  // namespace

PYBIND11_MODULE(paraword, m) {
    m.doc() = "analytic paraproduct word algebra: exact ST-form rewriting and disc-norm "
              "estimation";

    py::register_exception<ParseError>(m, "ParseError");
    py::register_exception<WordAlgebraError>(m, "WordAlgebraError");

    m.def(
        "stform",
        [](const std::string& word, bool h0) {
            py::dict d;
            Word w = word_from_text(word);
            if (h0) {
                d["form"] = st_form_h0(w).to_string();
            } else {
                STForm f = st_form_full(w);
                d["form"] = f.expr.to_string();
                d["k"] = f.s_power;
                d["n"] = f.t_power;
                d["delta_L"] = f.delta;
                py::list tail;
                for (const auto& t : f.tail) {
                    py::dict e;
                    e["j"] = t.drop;
                    e["coeff"] = t.coeff;
                    e["pi0"] = t.pi0;
                    tail.append(e);
                }
                d["tail"] = tail;
            }
            return d;
        },
        py::arg("word"), py::arg("h0") = false,
        "Canonical ST-form of an operator word; h0=True reduces on H0 only.");

    m.def(
        "verify_identity",
        [](const std::string& a, const std::string& b, int trials, int max_deg, bool h0_only,
           std::uint64_t seed) {
            Verdict v = verify_identity(parse_expr(a), parse_expr(b), trials, max_deg, h0_only,
                                        seed);
            py::dict d;
            d["equal"] = v.equal;
            d["trials"] = v.trials_run;
            if (!v.equal) {
                d["witness_g"] = v.witness_symbol;
                d["witness_f"] = v.witness_argument;
            }
            return d;
        },
        py::arg("a"), py::arg("b"), py::arg("trials") = 20, py::arg("max_deg") = 8,
        py::arg("h0_only") = false, py::arg("seed") = 1,
        "Exact randomized equality of two operator expressions.");

    m.def(
        "normalize",
        [](const std::string& text) { return parse_expr(text).to_string(); },
        py::arg("expr"), "Parse and reprint an operator expression in canonical order.");

    m.def("moebius", &moebius, py::arg("a"), py::arg("z"));
    m.def("hyperbolic_dist", &hyperbolic_dist, py::arg("w"), py::arg("z"));

    m.def(
        "weight_w_alpha",
        [](double x, double alpha) {
            auto [w, psi] = weight_w_alpha(x, alpha);
            return py::make_tuple(w, psi);
        },
        py::arg("x"), py::arg("alpha"), "Returns (w_alpha(x), psi_alpha(x)).");

    m.def(
        "sym_eval",
        [](const std::string& kind, std::complex<double> z, double beta,
           const std::vector<std::complex<double>>& coeffs, double dilation) {
            auto [v, d] = make_symbol(kind, beta, coeffs, dilation).eval(z);
            return py::make_tuple(v, d);
        },
        py::arg("kind"), py::arg("z"), py::arg("beta") = 1.0,
        py::arg("coeffs") = std::vector<std::complex<double>>{}, py::arg("dilate") = 0.0,
        "Evaluate (g(z), g'(z)) for a catalogue symbol.");

    m.def(
        "seminorm",
        [](const std::string& functional, const std::string& kind, double q, double alpha,
           double beta, const std::vector<std::complex<double>>& coeffs, double dilation,
           int n_r, int n_theta, double r_max) {
            SymbolSpec g = make_symbol(kind, beta, coeffs, dilation);
            DiscGrid grid = build_disc_grid(n_r, n_theta, r_max, {alpha}, "gl",
                                            g.continuous_on_closure() ? 1.0 : r_max);
            NormReport rep;
            if (functional == "bloch") {
                rep = bloch_q_seminorm(g, q, grid);
            } else if (functional == "garsia") {
                rep = garsia_seminorm(g, alpha, q, default_a_grid(), grid);
            } else if (functional == "bold") {
                rep = bold_seminorm(g, alpha, q, default_a_grid(), grid);
            } else {
                throw std::invalid_argument("unknown functional: " + functional);
            }
            return report_dict(rep);
        },
        py::arg("functional"), py::arg("kind"), py::arg("q") = 1.0, py::arg("alpha") = 0.0,
        py::arg("beta") = 1.0, py::arg("coeffs") = std::vector<std::complex<double>>{},
        py::arg("dilate") = 0.0, py::arg("n_r") = 200, py::arg("n_theta") = 256,
        py::arg("r_max") = 0.9995, "Bloch/Garsia/bold seminorm of a catalogue symbol.");

    m.def(
        "op_lower_bound",
        [](const std::string& word, const std::string& kind, double p, double alpha, double beta,
           const std::vector<std::complex<double>>& coeffs, double dilation, bool restricted,
           int n_trunc, int n_r, int n_theta, double r_max, int threads) {
            SymbolSpec g = make_symbol(kind, beta, coeffs, dilation);
            DiscGrid grid = build_disc_grid(n_r, n_theta, r_max, {alpha});
            TestFamily fam = TestFamily::monomials_and_kernels(
                8, {std::complex<double>(0.9, 0.0), std::complex<double>(0.95, 0.0)});
            return report_dict(op_lower_bound(parse_expr(word), g, p, alpha, fam, n_trunc,
                                              restricted, grid, threads));
        },
        py::arg("word"), py::arg("kind"), py::arg("p") = 2.0, py::arg("alpha") = 0.0,
        py::arg("beta") = 1.0, py::arg("coeffs") = std::vector<std::complex<double>>{},
        py::arg("dilate") = 0.0, py::arg("restricted") = false, py::arg("n_trunc") = 0,
        py::arg("n_r") = 192, py::arg("n_theta") = 256, py::arg("r_max") = 0.995,
        py::arg("threads") = 0, "Operator-norm lower bound over the standard test family.");

    m.def(
        "equivalence_scan",
        [](const std::string& word, const std::string& kind, double p, double alpha, double beta,
           const std::vector<double>& r_list, int threads) {
            SymbolSpec g = make_symbol(kind, beta, {}, 0.0);
            DiscGrid op_grid = build_disc_grid(256, 256, 0.995, {alpha});
            DiscGrid sem_grid = build_disc_grid(256, 256, 0.9995, {alpha});
            ScanTable t = equivalence_scan(word_from_text(word), g, p, alpha, r_list, 0, op_grid,
                                           sem_grid, threads);
            py::list rows;
            for (const auto& row : t.rows) {
                py::dict d;
                d["r"] = row.r;
                d["opnorm_lb"] = row.opnorm_lb;
                d["seminorm_pow_N"] = row.seminorm_pow;
                d["ratio"] = row.ratio;
                rows.append(d);
            }
            py::dict out;
            out["s"] = t.s;
            out["N"] = t.n_letters;
            out["rows"] = rows;
            out["csv"] = t.to_csv();
            return out;
        },
        py::arg("word"), py::arg("kind"), py::arg("p") = 2.0, py::arg("alpha") = 0.0,
        py::arg("beta") = 1.0,
        py::arg("r_list") = std::vector<double>{0.9, 0.95, 0.99}, py::arg("threads") = 0,
        "Dilation scan of an operator word against the matching symbol seminorm power.");
}
