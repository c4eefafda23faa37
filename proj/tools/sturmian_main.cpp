#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "sturmian/config.hpp"
#include "sturmian/csvio.hpp"
#include "sturmian/spectrum.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr double kPi = 3.14159265358979323846;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::ofstream open_output(const std::string& path, bool binary = false) {
    std::ofstream os(path, binary ? std::ios::binary : std::ios::out);
    if (!os) throw IoError("cannot open output file \"" + path + "\"");
    return os;
}

// accepts "p/q" or a decimal approximated by the best rational below max_den
sturmian::Rational parse_alpha(const std::string& arg, std::int64_t max_den) {
    if (arg.find('/') != std::string::npos) return sturmian::Rational::parse(arg);
    std::size_t pos = 0;
    double x = 0.0;
    try {
        x = std::stod(arg, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("cannot parse \"" + arg + "\" as a rational or decimal");
    }
    if (pos != arg.size()) throw std::invalid_argument("trailing characters in \"" + arg + "\"");
    return sturmian::best_rational_approx(x, max_den);
}

void run_cf(const std::string& arg, std::int64_t max_den, std::ostream& os) {
    using namespace sturmian;
    const Rational alpha = parse_alpha(arg, max_den);
    const ContinuedFraction cf = continued_fraction(alpha);
    const ConvergentSequence seq = convergents(cf);
    const BlockHistory hist = block_history(cf);
    os << "alpha," << alpha.str() << '\n';
    os << "cf," << cf.str() << '\n';
    os << "k,a_k,nu_k,delta_k,N_k\n";
    for (std::size_t k = 1; k <= cf.terms.size(); ++k) {
        const int kk = static_cast<int>(k);
        os << k << ',' << cf.terms[k - 1] << ',' << seq.num(kk) << ',' << seq.den(kk) << ','
           << hist.length(kk) << '\n';
    }
}

void run_word(const std::string& arg, std::int64_t max_den, std::ostream& os) {
    using namespace sturmian;
    const Rational alpha = parse_alpha(arg, max_den);
    const ContinuedFraction cf = continued_fraction(alpha);
    const SturmianWord word = sturmian_block(cf);
    const BlockHistory hist = block_history(cf);
    os << "alpha,word,n_p,n_q,N,lengths\n";
    os << alpha.str() << ',' << word.symbols << ',' << word.p_count() << ',' << word.q_count() << ','
       << word.size() << ',';
    if (cf.empty()) {
        os << 1;
    } else {
        for (std::size_t k = 1; k <= cf.terms.size(); ++k) {
            if (k > 1) os << ';';
            os << hist.length(static_cast<int>(k));
        }
    }
    os << '\n';
}

void run_dispersion(const sturmian::ModelSpec& spec, const sturmian::Rational& alpha, double wmin,
                    double wmax, std::int64_t steps, const std::string& bands_path,
                    std::ostream& os) {
    using namespace sturmian;
    const ContinuedFraction cf = continued_fraction(alpha);
    if (!bands_path.empty()) {
        const BandList bands = passbands(spec, alpha, {wmin, wmax});
        auto bs = open_output(bands_path);
        write_bands_csv(bs, bands);
        if (!bs) throw IoError("failed writing \"" + bands_path + "\"");
    }
    if (spec.dim() == 2) {
        os << "omega,cos_kl,kl\n";
        for (std::int64_t j = 0; j <= steps; ++j) {
            const double w = wmin + (wmax - wmin) * static_cast<double>(j) / static_cast<double>(steps);
            const auto [tp, tq] = element_tms_2(spec, w);
            const double z = cos_kl(supercell_tm(cf, tp, tq));
            os << format_real(w) << ',' << format_real(z) << ',';
            if (std::abs(z) <= 1.0 + kAdmitTol) os << format_real(std::acos(std::clamp(z, -1.0, 1.0)));
            os << '\n';
        }
        return;
    }
    os << "omega,cos_kl_1,kl_1,cos_kl_2,kl_2\n";
    for (std::int64_t j = 0; j <= steps; ++j) {
        const double w = wmin + (wmax - wmin) * static_cast<double>(j) / static_cast<double>(steps);
        const auto [tp, tq] = element_tms_4(spec, w);
        const TMat4 T = supercell_tm(cf, tp, tq);
        os << format_real(w);
        if (!T.m.finite() || T.m.max_abs() > 1e6) {
            os << ",,,,\n";
            continue;
        }
        const BranchPair b = cos_kl_branches(T);
        auto emit = [&](const std::complex<double>& v, bool real) {
            os << ',';
            if (real) os << format_real(v.real());
            os << ',';
            if (real && std::abs(v.real()) <= 1.0 + kAdmitTol)
                os << format_real(std::acos(std::clamp(v.real(), -1.0, 1.0)));
        };
        emit(b.plus, b.plus_real());
        emit(b.minus, b.minus_real());
        os << '\n';
    }
}

void run_bulk(const sturmian::ModelSpec& spec, std::int64_t M, double wmin, double wmax,
              std::int64_t wsteps, int workers, const std::string& out_base) {
    using namespace sturmian;
    const auto t0 = std::chrono::steady_clock::now();
    const BulkGrid grid = bulk_spectrum(spec, M, {wmin, wmax}, wsteps, workers);
    const auto t1 = std::chrono::steady_clock::now();
    {
        auto os = open_output(out_base + ".csv");
        write_grid_csv(os, grid);
        if (!os) throw IoError("failed writing \"" + out_base + ".csv\"");
    }
    {
        auto os = open_output(out_base + ".sbsg", true);
        write_grid_raster(os, grid);
        if (!os) throw IoError("failed writing \"" + out_base + ".sbsg\"");
    }
    const double secs = std::chrono::duration<double>(t1 - t0).count();
    std::cout << "columns," << grid.alphas.size() << "\nomega_samples," << grid.omegas.size()
              << "\nseconds," << format_real(secs) << "\ncolumns_per_second,"
              << format_real(static_cast<double>(grid.alphas.size()) / std::max(secs, 1e-9)) << '\n';
}

void run_selfsim(const sturmian::ModelSpec& spec, const std::string& prefix_str, std::int64_t rmax,
                 double wmin, double wmax, std::int64_t steps, std::ostream& os) {
    using namespace sturmian;
    const ContinuedFraction prefix = ContinuedFraction::parse(prefix_str);
    if (prefix.empty()) throw std::invalid_argument("selfsim: prefix must have at least one term");
    const SelfSimReport report = selfsim_sequence(prefix, rmax, spec, {wmin, wmax}, steps);
    write_selfsim_csv(os, report);
}

void run_zmap(double lambda, double l, double cq, std::int64_t alpha_steps, std::int64_t wsteps,
              std::optional<double> wmax_opt, const std::string& out_base) {
    using namespace sturmian;
    const double wmax = wmax_opt.value_or(kPi * lambda * cq / (2.0 * l));
    auto zs = open_output(out_base + ".csv");
    auto ms = open_output(out_base + ".mask.csv");
    zs << "alpha";
    ms << "alpha";
    for (std::int64_t j = 0; j <= wsteps; ++j) {
        const double w = wmax * static_cast<double>(j) / static_cast<double>(wsteps);
        zs << ',' << format_real(w);
        ms << ',' << format_real(w);
    }
    zs << '\n';
    ms << '\n';
    for (std::int64_t i = 1; i <= alpha_steps; ++i) {
        const Rational alpha(i, alpha_steps);
        zs << alpha.str();
        ms << alpha.str();
        for (std::int64_t j = 0; j <= wsteps; ++j) {
            const double w = wmax * static_cast<double>(j) / static_cast<double>(wsteps);
            const double Z = rod_surrogate_Z(lambda, alpha.value(), w, l, cq);
            zs << ',' << format_real(Z);
            ms << ',' << (std::abs(Z) <= 1.0 + kAdmitTol ? '1' : '0');
        }
        zs << '\n';
        ms << '\n';
    }
    if (!zs || !ms) throw IoError("failed writing zmap output");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sturmian quasiperiodic waveguide spectra (transfer-matrix method)"};
    app.require_subcommand(1);

    std::string arg, config_path, alpha_str, prefix_str, out_path;
    std::int64_t max_den = 1000000;
    double wmin = 0.0, wmax = 3.0;
    std::int64_t steps = 1000, M = 1000, wsteps = 2000, alpha_steps = 200, rmax = 10;
    int workers = 1;
    double lambda = 2.0, elem_l = 1.0, cq = 1.0;
    std::optional<double> zmap_wmax;

    auto* cmd_cf = app.add_subcommand("cf", "continued fraction and convergents of alpha");
    cmd_cf->add_option("alpha", arg, "\"p/q\" or a decimal in [0,1]")->required();
    cmd_cf->add_option("--max-den", max_den, "denominator bound for decimal input");

    auto* cmd_word = app.add_subcommand("word", "Sturmian block of alpha");
    cmd_word->add_option("alpha", arg, "\"p/q\" or a decimal in [0,1]")->required();
    cmd_word->add_option("--max-den", max_den, "denominator bound for decimal input");

    std::string bands_path;
    auto* cmd_disp = app.add_subcommand("dispersion", "cos(kL) over a frequency grid for one alpha");
    cmd_disp->add_option("--config", config_path, "model config file")->required();
    cmd_disp->add_option("--alpha", alpha_str, "generator parameter \"p/q\"")->required();
    cmd_disp->add_option("--omega-min", wmin);
    cmd_disp->add_option("--omega-max", wmax);
    cmd_disp->add_option("--steps", steps, "number of grid intervals");
    cmd_disp->add_option("--bands", bands_path, "also write the passband list CSV here");
    cmd_disp->add_option("-o,--output", out_path, "output CSV (default stdout)");

    auto* cmd_bulk = app.add_subcommand("bulk", "dense (alpha, omega) admissibility grid");
    cmd_bulk->add_option("--config", config_path)->required();
    cmd_bulk->add_option("-M,--alpha-steps", M, "alpha grid: i/M, i = 0..M");
    cmd_bulk->add_option("--omega-min", wmin);
    cmd_bulk->add_option("--omega-max", wmax);
    cmd_bulk->add_option("--omega-steps", wsteps);
    cmd_bulk->add_option("--workers", workers, "worker threads (output is identical for any count)");
    cmd_bulk->add_option("-o,--output", out_path, "output base path (.csv and .sbsg)")->required();

    auto* cmd_selfsim = app.add_subcommand("selfsim", "band lists along alpha_r = [0;a1,...,an+r]");
    cmd_selfsim->add_option("--config", config_path)->required();
    cmd_selfsim->add_option("--prefix", prefix_str, "continued fraction \"[0;a1,...,an]\"")->required();
    cmd_selfsim->add_option("--rmax", rmax);
    cmd_selfsim->add_option("--omega-min", wmin);
    cmd_selfsim->add_option("--omega-max", wmax);
    cmd_selfsim->add_option("--steps", steps, "coarse scan steps (0 = default heuristic)")->default_val(0);
    cmd_selfsim->add_option("-o,--output", out_path, "output CSV (default stdout)");

    auto* cmd_zmap = app.add_subcommand("zmap", "analytical rod surrogate Z(alpha, omega)");
    cmd_zmap->add_option("--lambda", lambda, "stiffness ratio sqrt(EA_p/EA_q)")->required();
    cmd_zmap->add_option("--l", elem_l, "element length");
    cmd_zmap->add_option("--cq", cq, "q-element wave speed");
    cmd_zmap->add_option("--alpha-steps", alpha_steps);
    cmd_zmap->add_option("--omega-steps", wsteps)->default_val(500);
    cmd_zmap->add_option("--omega-max", zmap_wmax, "default: half vertical period pi*lambda*cq/(2l)");
    cmd_zmap->add_option("-o,--output", out_path, "output base path (.csv and .mask.csv)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        std::ofstream file_out;
        std::ostream* os = &std::cout;
        if (!out_path.empty() && !cmd_bulk->parsed() && !cmd_zmap->parsed()) {
            file_out = open_output(out_path);
            os = &file_out;
        }

        if (cmd_cf->parsed()) {
            run_cf(arg, max_den, *os);
        } else if (cmd_word->parsed()) {
            run_word(arg, max_den, *os);
        } else if (cmd_disp->parsed()) {
            const auto spec = sturmian::load_model_config(config_path);
            run_dispersion(spec, sturmian::Rational::parse(alpha_str), wmin, wmax, steps, bands_path,
                           *os);
        } else if (cmd_bulk->parsed()) {
            const auto spec = sturmian::load_model_config(config_path);
            run_bulk(spec, M, wmin, wmax, wsteps, workers, out_path);
        } else if (cmd_selfsim->parsed()) {
            const auto spec = sturmian::load_model_config(config_path);
            run_selfsim(spec, prefix_str, rmax, wmin, wmax, steps, *os);
        } else if (cmd_zmap->parsed()) {
            run_zmap(lambda, elem_l, cq, alpha_steps, wsteps, zmap_wmax, out_path);
        }

        if (os == &file_out && !file_out) throw IoError("failed writing \"" + out_path + "\"");
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return 0;
}
