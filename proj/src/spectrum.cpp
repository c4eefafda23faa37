#include "sturmian/spectrum.hpp"

#include <atomic>
#include <mutex>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <thread>

namespace sturmian {

namespace {

// Above this entry magnitude a |cos(kL)| <= 1 verdict would come out of
// cancellation noise; such samples sit deep in a stopband.
constexpr double kOverflowGuard = 1e6;

// |cos(kL)| - 1 - guard for a 2x2 model; +inf when the product overflowed.
struct Dispersion2 {
    const ModelSpec& spec;
    const ContinuedFraction& cf;

    double z(double omega) const {
        const auto [tp, tq] = element_tms_2(spec, omega);
        return cos_kl(supercell_tm(cf, tp, tq));
    }
};

struct Dispersion4 {
    const ModelSpec& spec;
    const ContinuedFraction& cf;

    // smallest |cos(kL)| over the real branches; +inf when none is real
    double branch_measure(double omega) const {
        const auto [tp, tq] = element_tms_4(spec, omega);
        const TMat4 T = supercell_tm(cf, tp, tq);
        if (!T.m.finite() || T.m.max_abs() > kOverflowGuard)
            return std::numeric_limits<double>::infinity();
        const BranchPair b = cos_kl_branches(T);
        double best = std::numeric_limits<double>::infinity();
        if (b.plus_real()) best = std::min(best, std::abs(b.plus.real()));
        if (b.minus_real()) best = std::min(best, std::abs(b.minus.real()));
        return best;
    }
};

double bisect_sign_change(const std::function<double(double)>& f, double a, double b, double fa,
                          double tol) {
    // keeps the invariant sign(f(a)) = sign(fa) != sign(f(b))
    for (int it = 0; it < 200 && std::abs(b - a) > tol; ++it) {
        const double mid = 0.5 * (a + b);
        if (mid == a || mid == b) break;
        const double fm = f(mid);
        if ((fm < 0.0) == (fa < 0.0)) {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    return 0.5 * (a + b);
}

// largest |z| between two points; |z| is unimodal between consecutive zeros
// of a Hill-type discriminant
double ternary_max_abs(const std::function<double(double)>& z, double a, double b) {
    for (int it = 0; it < 300 && (b - a) > 1e-14 * std::max(1.0, std::abs(b)); ++it) {
        const double m1 = a + (b - a) / 3.0;
        const double m2 = b - (b - a) / 3.0;
        if (std::abs(z(m1)) < std::abs(z(m2)))
            a = m1;
        else
            b = m2;
    }
    return 0.5 * (a + b);
}

std::vector<Band> merge_bands(std::vector<Band> bands, double tol) {
    std::sort(bands.begin(), bands.end(), [](const Band& x, const Band& y) { return x.lo < y.lo; });
    std::vector<Band> out;
    for (const Band& b : bands) {
        if (!out.empty() && b.lo - out.back().hi < tol)
            out.back().hi = std::max(out.back().hi, b.hi);
        else
            out.push_back(b);
    }
    return out;
}

// Sampled band detection for 2x2 models. Every band of a Hill discriminant
// carries exactly one zero of z, so zeros located by sign changes anchor the
// assembly; gaps are found as the unique |z| maximum between zeros.
std::vector<Band> sampled_bands_2(const std::function<double(double)>& z, const SweepRange& range,
                                  std::int64_t steps, double refine_tol) {
    const double wmin = range.omega_min, wmax = range.omega_max;
    const double h = (wmax - wmin) / static_cast<double>(steps);
    std::vector<double> ws(static_cast<std::size_t>(steps) + 1), zs(ws.size());
    for (std::size_t j = 0; j < ws.size(); ++j) {
        ws[j] = wmin + h * static_cast<double>(j);
        zs[j] = z(ws[j]);
    }

    auto admitted = [](double v) { return std::abs(v) <= 1.0 + kAdmitTol; };
    auto g = [&](double w) { return std::abs(z(w)) - 1.0 - kAdmitTol; };

    std::vector<double> zeros;
    for (std::size_t j = 0; j + 1 < ws.size(); ++j) {
        if (!std::isfinite(zs[j]) || !std::isfinite(zs[j + 1])) continue;
        if (zs[j] == 0.0)
            zeros.push_back(ws[j]);
        else if ((zs[j] < 0.0) != (zs[j + 1] < 0.0))
            zeros.push_back(bisect_sign_change(z, ws[j], ws[j + 1], zs[j], 1e-15 * std::max(1.0, wmax)));
    }
    if (std::isfinite(zs.back()) && zs.back() == 0.0) zeros.push_back(ws.back());

    std::vector<Band> bands;
    if (zeros.empty()) {
        const bool a0 = admitted(zs.front()), a1 = admitted(zs.back());
        if (a0 && a1) {
            const double wm = ternary_max_abs(z, wmin, wmax);
            if (std::abs(z(wm)) > 1.0 + kAdmitTol) {
                bands.push_back({wmin, bisect_sign_change(g, wmin, wm, -1.0, refine_tol)});
                bands.push_back({bisect_sign_change(g, wmax, wm, -1.0, refine_tol), wmax});
            } else {
                bands.push_back({wmin, wmax});
            }
        } else if (a0) {
            bands.push_back({wmin, bisect_sign_change(g, wmin, wmax, -1.0, refine_tol)});
        } else if (a1) {
            bands.push_back({bisect_sign_change(g, wmax, wmin, -1.0, refine_tol), wmax});
        }
        return merge_bands(std::move(bands), refine_tol);
    }

    double cur_lo;
    if (admitted(zs.front())) {
        cur_lo = wmin;
        // a gap may hide between omega_min and the first zero (partial band)
        const double wm = ternary_max_abs(z, wmin, zeros.front());
        if (std::abs(z(wm)) > 1.0 + kAdmitTol) {
            bands.push_back({wmin, bisect_sign_change(g, wmin, wm, -1.0, refine_tol)});
            cur_lo = bisect_sign_change(g, zeros.front(), wm, -1.0, refine_tol);
        }
    } else {
        cur_lo = bisect_sign_change(g, zeros.front(), wmin, -1.0, refine_tol);
    }
    for (std::size_t k = 0; k + 1 < zeros.size(); ++k) {
        const double wm = ternary_max_abs(z, zeros[k], zeros[k + 1]);
        if (std::abs(z(wm)) > 1.0 + kAdmitTol) {
            bands.push_back({cur_lo, bisect_sign_change(g, zeros[k], wm, -1.0, refine_tol)});
            cur_lo = bisect_sign_change(g, zeros[k + 1], wm, -1.0, refine_tol);
        }
    }
    if (admitted(zs.back())) {
        const double wm = ternary_max_abs(z, zeros.back(), wmax);
        if (std::abs(z(wm)) > 1.0 + kAdmitTol) {
            bands.push_back({cur_lo, bisect_sign_change(g, zeros.back(), wm, -1.0, refine_tol)});
            bands.push_back({bisect_sign_change(g, wmax, wm, -1.0, refine_tol), wmax});
        } else {
            bands.push_back({cur_lo, wmax});
        }
    } else {
        bands.push_back({cur_lo, bisect_sign_change(g, zeros.back(), wmax, -1.0, refine_tol)});
    }
    return merge_bands(std::move(bands), refine_tol);
}

// Sampled band detection for 4x4 models: admitted runs with boolean-bisected
// edges. Narrow structure below the grid step is reported via the warning flag.
std::vector<Band> sampled_bands_4(const std::function<double(double)>& measure,
                                  const SweepRange& range, std::int64_t steps, double refine_tol) {
    const double wmin = range.omega_min, wmax = range.omega_max;
    const double h = (wmax - wmin) / static_cast<double>(steps);
    std::vector<double> ws(static_cast<std::size_t>(steps) + 1);
    std::vector<char> adm(ws.size());
    for (std::size_t j = 0; j < ws.size(); ++j) {
        ws[j] = wmin + h * static_cast<double>(j);
        adm[j] = measure(ws[j]) <= 1.0 + kAdmitTol;
    }
    auto refine = [&](double inside, double outside) {
        for (int it = 0; it < 200 && std::abs(outside - inside) > refine_tol; ++it) {
            const double mid = 0.5 * (inside + outside);
            if (mid == inside || mid == outside) break;
            if (measure(mid) <= 1.0 + kAdmitTol)
                inside = mid;
            else
                outside = mid;
        }
        return 0.5 * (inside + outside);
    };
    std::vector<Band> bands;
    std::size_t i = 0;
    while (i < ws.size()) {
        if (!adm[i]) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j + 1 < ws.size() && adm[j + 1]) ++j;
        const double lo = (i == 0) ? wmin : refine(ws[i], ws[i - 1]);
        const double hi = (j + 1 == ws.size()) ? wmax : refine(ws[j], ws[j + 1]);
        bands.push_back({lo, hi});
        i = j + 1;
    }
    return merge_bands(std::move(bands), refine_tol);
}

// Exact chain band edges: eigenfrequencies of the supercell under periodic
// (cos kL = +1) and antiperiodic (cos kL = -1) Bloch conditions. Edges
// alternate (+ - - + + - - + ...), giving band k = [p_k, a_k] for even k and
// [a_k, p_k] for odd k.
std::vector<Band> chain_bands_exact(const ModelSpec& spec, const SturmianWord& word,
                                    double refine_tol) {
    const std::size_t n = word.size();
    std::vector<double> mass(n, spec.chain.m), stiff(n, spec.chain.K);
    for (std::size_t j = 0; j < n; ++j) {
        const double theta = (word.symbols[j] == 'p') ? spec.theta_p : spec.theta_q;
        if (spec.varied == "K")
            stiff[j] = theta;
        else
            mass[j] = theta;
    }

    auto edge_freqs = [&](double sigma) {
        std::vector<double> A(n * n, 0.0);
        for (std::size_t j = 0; j < n; ++j) {
            const double Kl = stiff[j];
            const double Kr = stiff[(j + 1) % n];
            const double sj = 1.0 / std::sqrt(mass[j]);
            A[j * n + j] = (Kl + Kr) * sj * sj;
            if (n == 1) {
                A[0] -= (Kl + Kr) * sigma * sj * sj;
                break;
            }
            const std::size_t jl = (j + n - 1) % n;
            const std::size_t jr = (j + 1) % n;
            A[j * n + jl] += -Kl * (j == 0 ? sigma : 1.0) * sj / std::sqrt(mass[jl]);
            A[j * n + jr] += -Kr * (j + 1 == n ? sigma : 1.0) * sj / std::sqrt(mass[jr]);
        }
        std::vector<double> ev = symmetric_eigenvalues(std::move(A), n);
        double scale = 0.0;
        for (double v : ev) scale = std::max(scale, std::abs(v));
        for (double& v : ev) {
            if (std::abs(v) < 1e-12 * scale) v = 0.0;   // rigid-body mode sits at exactly zero
            v = std::sqrt(std::max(v, 0.0));
        }
        return ev;
    };

    const std::vector<double> per = edge_freqs(+1.0);
    const std::vector<double> anti = edge_freqs(-1.0);
    std::vector<Band> bands;
    bands.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        const Band b = (k % 2 == 0) ? Band{per[k], anti[k]} : Band{anti[k], per[k]};
        bands.push_back({std::min(b.lo, b.hi), std::max(b.lo, b.hi)});
    }
    return merge_bands(std::move(bands), refine_tol);
}

std::vector<Band> clip_bands(const std::vector<Band>& bands, const SweepRange& range) {
    std::vector<Band> out;
    for (const Band& b : bands) {
        const double lo = std::max(b.lo, range.omega_min);
        const double hi = std::min(b.hi, range.omega_max);
        if (hi > lo) out.push_back({lo, hi});
    }
    return out;
}

} // namespace

std::vector<Band> scan_passbands(const std::function<double(double)>& half_trace,
                                 const SweepRange& range, std::int64_t coarse_steps,
                                 double refine_tol) {
    if (!(range.omega_min < range.omega_max))
        throw std::invalid_argument("scan_passbands: omega_min must be < omega_max");
    if (coarse_steps < 2) throw std::invalid_argument("scan_passbands: need at least 2 steps");
    return sampled_bands_2(half_trace, range, coarse_steps, refine_tol);
}

BandList passbands(const ModelSpec& spec, const Rational& alpha, const SweepRange& range,
                   std::int64_t coarse_steps, double refine_tol, BandMethod method) {
    if (!(range.omega_min < range.omega_max))
        throw std::invalid_argument("passbands: omega_min must be < omega_max");
    if (!(refine_tol > 0.0)) throw std::invalid_argument("passbands: refine_tol must be > 0");
    spec.validate();

    const ContinuedFraction cf = continued_fraction(alpha);
    const SturmianWord word = sturmian_block(cf);
    const auto n_elem = static_cast<std::int64_t>(word.size());
    if (coarse_steps <= 0) coarse_steps = std::max<std::int64_t>(40 * n_elem, 400);
    if (coarse_steps < 2) coarse_steps = 2;

    if (method == BandMethod::Auto)
        method = (spec.kind == ModelKind::Chain) ? BandMethod::ChainEigen : BandMethod::Sampled;
    if (method == BandMethod::ChainEigen && spec.kind != ModelKind::Chain)
        throw std::invalid_argument("passbands: ChainEigen method requires a chain model");

    BandList out;
    out.alpha = alpha;
    if (method == BandMethod::ChainEigen) {
        out.intervals = clip_bands(chain_bands_exact(spec, word, refine_tol), range);
        out.intervals = merge_bands(std::move(out.intervals), refine_tol);
    } else if (spec.dim() == 2) {
        Dispersion2 disp{spec, cf};
        out.intervals =
            sampled_bands_2([&](double w) { return disp.z(w); }, range, coarse_steps, refine_tol);
    } else {
        Dispersion4 disp{spec, cf};
        out.intervals = sampled_bands_4([&](double w) { return disp.branch_measure(w); }, range,
                                        coarse_steps, refine_tol);
    }

    const double step = (range.omega_max - range.omega_min) / static_cast<double>(coarse_steps);
    for (const Band& b : out.intervals)
        if (b.width() < 2.0 * step) out.narrow_warning = true;
    return out;
}

bool band_count_check(const BandList& bands, const Rational& alpha) {
    return static_cast<std::int64_t>(bands.band_count()) == element_count(alpha);
}

double bands_measure(const std::vector<Band>& bands) {
    double m = 0.0;
    for (const Band& b : bands) m += b.width();
    return m;
}

std::vector<Band> bands_intersection(const std::vector<Band>& a, const std::vector<Band>& b) {
    std::vector<Band> out;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        const double lo = std::max(a[i].lo, b[j].lo);
        const double hi = std::min(a[i].hi, b[j].hi);
        if (hi > lo) out.push_back({lo, hi});
        if (a[i].hi < b[j].hi)
            ++i;
        else
            ++j;
    }
    return out;
}

bool admitted_at(const ModelSpec& spec, const ContinuedFraction& cf, double omega) {
    if (spec.dim() == 2) {
        const auto [tp, tq] = element_tms_2(spec, omega);
        const double z = cos_kl(supercell_tm(cf, tp, tq));
        return std::abs(z) <= 1.0 + kAdmitTol;
    }
    Dispersion4 disp{spec, cf};
    return disp.branch_measure(omega) <= 1.0 + kAdmitTol;
}

BulkGrid bulk_spectrum(const ModelSpec& spec, std::int64_t M, const SweepRange& range,
                       std::int64_t omega_steps, int workers) {
    if (M < 1) throw std::invalid_argument("bulk_spectrum: M must be >= 1");
    if (omega_steps < 2) throw std::invalid_argument("bulk_spectrum: omega_steps must be >= 2");
    if (!(range.omega_min < range.omega_max))
        throw std::invalid_argument("bulk_spectrum: omega_min must be < omega_max");
    spec.validate();

    const std::size_t n_alpha = static_cast<std::size_t>(M) + 1;
    const std::size_t n_omega = static_cast<std::size_t>(omega_steps) + 1;
    if (n_alpha * n_omega > (std::size_t{1} << 31))
        throw std::invalid_argument("bulk_spectrum: grid exceeds 2^31 cells; run in chunks over alpha");

    BulkGrid grid;
    grid.alphas.reserve(n_alpha);
    for (std::int64_t i = 0; i <= M; ++i) grid.alphas.emplace_back(i, M);
    grid.omegas.resize(n_omega);
    for (std::size_t j = 0; j < n_omega; ++j)
        grid.omegas[j] = range.omega_min + (range.omega_max - range.omega_min) *
                                               static_cast<double>(j) / static_cast<double>(omega_steps);
    grid.admitted.assign(n_alpha * n_omega, 0);

    const int n_workers = std::max(1, workers);
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto column_job = [&]() {
        try {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n_alpha) return;
                const ContinuedFraction cf = continued_fraction(grid.alphas[i]);
                std::uint8_t* row = grid.admitted.data() + i * n_omega;
                if (spec.dim() == 2) {
                    for (std::size_t j = 0; j < n_omega; ++j) {
                        const auto [tp, tq] = element_tms_2(spec, grid.omegas[j]);
                        const double z = cos_kl(supercell_tm(cf, tp, tq));
                        row[j] = (std::abs(z) <= 1.0 + kAdmitTol) ? 1 : 0;
                    }
                } else {
                    Dispersion4 disp{spec, cf};
                    for (std::size_t j = 0; j < n_omega; ++j)
                        row[j] = (disp.branch_measure(grid.omegas[j]) <= 1.0 + kAdmitTol) ? 1 : 0;
                }
            }
        } catch (...) {
            const std::lock_guard<std::mutex> lock(error_mutex);
            if (!first_error) first_error = std::current_exception();
            next.store(n_alpha);   // stop the other workers
        }
    };

    if (n_workers == 1) {
        column_job();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(n_workers));
        for (int t = 0; t < n_workers; ++t) pool.emplace_back(column_job);
        for (auto& th : pool) th.join();
    }
    if (first_error) std::rethrow_exception(first_error);
    return grid;
}

SelfSimReport selfsim_sequence(const ContinuedFraction& prefix, std::int64_t r_max,
                               const ModelSpec& spec, const SweepRange& range,
                               std::int64_t coarse_steps, double refine_tol) {
    if (prefix.empty()) throw std::invalid_argument("selfsim_sequence: prefix needs at least one term");
    if (r_max < 1) throw std::invalid_argument("selfsim_sequence: r_max must be >= 1");

    SelfSimReport report;
    report.prefix = prefix;
    const AlphaRSequence seq0 = alpha_r(prefix, 0);
    report.a = seq0.a;
    report.b = seq0.b;
    report.b_bands = passbands(spec, report.b, range, coarse_steps, refine_tol);

    for (std::int64_t r = 0; r <= r_max; ++r) {
        const AlphaRSequence seq = alpha_r(prefix, r);
        SelfSimRow row;
        row.r = r;
        row.alpha = seq.alpha;
        row.zeta = zeta_r(prefix, r);
        row.n_elements = element_count(seq.alpha);
        row.bands = passbands(spec, seq.alpha, range, coarse_steps, refine_tol);
        const double total = bands_measure(row.bands.intervals);
        const double inside =
            bands_measure(bands_intersection(row.bands.intervals, report.b_bands.intervals));
        row.inside_fraction = (total > 0.0) ? inside / total : 1.0;
        report.rows.push_back(std::move(row));
    }
    return report;
}

} // namespace sturmian
