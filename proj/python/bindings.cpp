#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sturmian/config.hpp"
#include "sturmian/spectrum.hpp"

namespace py = pybind11;
using namespace sturmian;

namespace {

ContinuedFraction cf_from_terms(const std::vector<std::int64_t>& terms) {
    ContinuedFraction cf;
    cf.terms = terms;
    if (!cf.valid()) throw std::invalid_argument("continued-fraction terms must be >= 1");
    return cf;
}

Rational rational_from_str(const std::string& s) { return Rational::parse(s); }

std::vector<std::pair<std::int64_t, std::int64_t>> convergent_pairs(
    const std::vector<std::int64_t>& terms) {
    const ConvergentSequence seq = convergents(cf_from_terms(terms));
    std::vector<std::pair<std::int64_t, std::int64_t>> out;
    for (int k = 1; k <= seq.order(); ++k) out.emplace_back(seq.num(k), seq.den(k));
    return out;
}

std::vector<std::pair<double, double>> band_pairs(const BandList& bands) {
    std::vector<std::pair<double, double>> out;
    for (const Band& b : bands.intervals) out.emplace_back(b.lo, b.hi);
    return out;
}

} // namespace

PYBIND11_MODULE(_sturmian, m) {
    m.doc() = "Sturmian quasiperiodic waveguides: words, transfer matrices, band spectra";

    py::class_<Rational>(m, "Rational")
        .def(py::init<std::int64_t, std::int64_t>(), py::arg("num"), py::arg("den"))
        .def_static("parse", &rational_from_str)
        .def_readonly("num", &Rational::num)
        .def_readonly("den", &Rational::den)
        .def("value", &Rational::value)
        .def("__str__", &Rational::str)
        .def("__repr__", [](const Rational& r) { return "Rational(" + r.str() + ")"; })
        .def("__eq__", [](const Rational& a, const Rational& b) { return a == b; });

    m.def("continued_fraction",
          [](const std::string& alpha) { return continued_fraction(Rational::parse(alpha)).terms; },
          py::arg("alpha"), "continued-fraction terms [a1, ..., an] of \"p/q\"");
    m.def("to_rational",
          [](const std::vector<std::int64_t>& terms) { return to_rational(cf_from_terms(terms)); },
          py::arg("terms"));
    m.def("convergents", &convergent_pairs, py::arg("terms"),
          "list of (nu_k, delta_k) pairs for k = 1..n");
    m.def("best_rational_approx", &best_rational_approx, py::arg("x"), py::arg("max_den"));

    m.def("word",
          [](const std::string& alpha) {
              return sturmian_block(continued_fraction(Rational::parse(alpha))).symbols;
          },
          py::arg("alpha"), "Sturmian block of \"p/q\"");
    m.def("word_from_terms",
          [](const std::vector<std::int64_t>& terms) { return sturmian_block(cf_from_terms(terms)).symbols; },
          py::arg("terms"));
    m.def("cutting_sequence",
          [](const std::string& alpha, double tp, double tq) {
              return cutting_sequence(Rational::parse(alpha), tp, tq).symbols;
          },
          py::arg("alpha"), py::arg("theta_p"), py::arg("theta_q"),
          "independent tiling construction of the block (a rotation of word())");
    m.def("parameter_sum",
          [](const std::string& alpha, double tp, double tq) {
              return parameter_sum(sturmian_block(continued_fraction(Rational::parse(alpha))), tp, tq);
          },
          py::arg("alpha"), py::arg("theta_p"), py::arg("theta_q"));

    py::class_<ModelSpec>(m, "ModelSpec")
        .def(py::init([](const std::string& kind, const std::string& varied, double theta_p,
                         double theta_q, const py::kwargs& kwargs) {
                 ModelSpec spec;
                 spec.kind = model_kind_from_string(kind);
                 spec.varied = varied;
                 spec.theta_p = theta_p;
                 spec.theta_q = theta_q;
                 for (const auto& item : kwargs) {
                     const auto key = item.first.cast<std::string>();
                     const auto value = item.second.cast<double>();
                     if (key == "m") spec.chain.m = value;
                     else if (key == "K" && spec.kind == ModelKind::Chain) spec.chain.K = value;
                     else if (key == "K") spec.support_stiffness = value;
                     else if (key == "EA") spec.rod.EA = value;
                     else if (key == "rhoA" && spec.kind == ModelKind::Rod) spec.rod.rhoA = value;
                     else if (key == "l" && spec.kind == ModelKind::Rod) spec.rod.l = value;
                     else if (key == "EI") spec.beam.EI = value;
                     else if (key == "GA") spec.beam.GA = value;
                     else if (key == "rhoA") spec.beam.rhoA = value;
                     else if (key == "rhoI") spec.beam.rhoI = value;
                     else if (key == "l") spec.beam.l = value;
                     else throw std::invalid_argument("unknown model field \"" + key + "\"");
                 }
                 spec.validate();
                 return spec;
             }),
             py::arg("kind"), py::arg("varied"), py::arg("theta_p"), py::arg("theta_q"))
        .def_property_readonly("dim", &ModelSpec::dim)
        .def("__repr__", [](const ModelSpec& s) {
            return "ModelSpec(" + to_string(s.kind) + ", varied=" + s.varied + ")";
        });

    m.def("load_model_config", &load_model_config, py::arg("path"));

    m.def("half_trace",
          [](const ModelSpec& spec, const std::string& alpha, double omega) {
              if (spec.dim() != 2) throw std::invalid_argument("half_trace needs a 2x2 model");
              const ContinuedFraction cf = continued_fraction(Rational::parse(alpha));
              const auto [tp, tq] = element_tms_2(spec, omega);
              return cos_kl(supercell_tm(cf, tp, tq));
          },
          py::arg("spec"), py::arg("alpha"), py::arg("omega"),
          "cos(kappa L) of the supercell at one frequency");
    m.def("branch_values",
          [](const ModelSpec& spec, const std::string& alpha, double omega) {
              if (spec.dim() != 4) throw std::invalid_argument("branch_values needs a 4x4 model");
              const ContinuedFraction cf = continued_fraction(Rational::parse(alpha));
              const auto [tp, tq] = element_tms_4(spec, omega);
              const BranchPair b = cos_kl_branches(supercell_tm(cf, tp, tq));
              return std::make_pair(b.plus, b.minus);
          },
          py::arg("spec"), py::arg("alpha"), py::arg("omega"));

    m.def("passbands",
          [](const ModelSpec& spec, const std::string& alpha, double omega_min, double omega_max,
             std::int64_t coarse_steps, double refine_tol, const std::string& method) {
              BandMethod bm = BandMethod::Auto;
              if (method == "sampled") bm = BandMethod::Sampled;
              else if (method == "chain_eigen") bm = BandMethod::ChainEigen;
              else if (method != "auto") throw std::invalid_argument("unknown method \"" + method + "\"");
              return band_pairs(passbands(spec, Rational::parse(alpha), {omega_min, omega_max},
                                          coarse_steps, refine_tol, bm));
          },
          py::arg("spec"), py::arg("alpha"), py::arg("omega_min"), py::arg("omega_max"),
          py::arg("coarse_steps") = 0, py::arg("refine_tol") = 1e-9, py::arg("method") = "auto");

    m.def("bulk_spectrum",
          [](const ModelSpec& spec, std::int64_t M, double omega_min, double omega_max,
             std::int64_t omega_steps, int workers) {
              const BulkGrid grid = bulk_spectrum(spec, M, {omega_min, omega_max}, omega_steps, workers);
              std::vector<std::string> alphas;
              for (const Rational& a : grid.alphas) alphas.push_back(a.str());
              std::vector<std::vector<bool>> rows(grid.alphas.size());
              for (std::size_t i = 0; i < grid.alphas.size(); ++i) {
                  rows[i].resize(grid.omegas.size());
                  for (std::size_t j = 0; j < grid.omegas.size(); ++j) rows[i][j] = grid.at(i, j);
              }
              return py::make_tuple(alphas, grid.omegas, rows);
          },
          py::arg("spec"), py::arg("M"), py::arg("omega_min"), py::arg("omega_max"),
          py::arg("omega_steps"), py::arg("workers") = 1,
          "returns (alpha labels, omega axis, boolean rows)");

    m.def("selfsim",
          [](const ModelSpec& spec, const std::vector<std::int64_t>& prefix, std::int64_t r_max,
             double omega_min, double omega_max) {
              const SelfSimReport rep =
                  selfsim_sequence(cf_from_terms(prefix), r_max, spec, {omega_min, omega_max});
              py::list rows;
              for (const SelfSimRow& row : rep.rows) {
                  py::dict d;
                  d["r"] = row.r;
                  d["alpha"] = row.alpha.str();
                  d["zeta"] = row.zeta;
                  d["N"] = row.n_elements;
                  d["band_count"] = row.bands.band_count();
                  d["inside_fraction"] = row.inside_fraction;
                  rows.append(d);
              }
              return rows;
          },
          py::arg("spec"), py::arg("prefix"), py::arg("r_max"), py::arg("omega_min"),
          py::arg("omega_max"));

    m.def("rod_half_trace_closed", &rod_half_trace_closed, py::arg("lambda_"), py::arg("r"),
          py::arg("omega"), py::arg("l") = 1.0, py::arg("c_q") = 1.0);
    m.def("rod_surrogate_Z", &rod_surrogate_Z, py::arg("lambda_"), py::arg("alpha"), py::arg("omega"),
          py::arg("l") = 1.0, py::arg("c_q") = 1.0);
}
