// Acceptance suite: one check per release criterion, one PASS/FAIL line each.
// Exit status is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "sturmian/csvio.hpp"
#include "sturmian/spectrum.hpp"

using namespace sturmian;

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool cond, const std::string& msg) {
    if (!cond) throw Failure(msg);
}

ContinuedFraction cf(std::initializer_list<std::int64_t> terms) {
    ContinuedFraction c;
    c.terms = terms;
    return c;
}

ModelSpec chain_spec(double Kp = 1.0, double Kq = 2.0, double m = 1.0) {
    ModelSpec spec;
    spec.kind = ModelKind::Chain;
    spec.chain = {m, 1.0};
    spec.varied = "K";
    spec.theta_p = Kp;
    spec.theta_q = Kq;
    return spec;
}

ModelSpec rod_spec(double lambda) {
    ModelSpec spec;
    spec.kind = ModelKind::Rod;
    spec.rod = {1.0, 1.0, 1.0};
    spec.varied = "EA";
    spec.theta_p = lambda * lambda;
    spec.theta_q = 1.0;
    return spec;
}

TMat2 random_unimodular2(std::mt19937& rng) {
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    Mat<2> m;
    for (;;) {
        for (double& v : m.a) v = dist(rng);
        const double d = det<2>(m);
        if (std::abs(d) < 0.05) continue;
        if (d < 0.0) {
            std::swap(m(0, 0), m(0, 1));
            std::swap(m(1, 0), m(1, 1));
        }
        return {m * (1.0 / std::sqrt(std::abs(det<2>(m)))), 1.0};
    }
}

// ---- criteria ----

void criterion_table1() {
    {
        const Rational alpha(3, 11);
        const ContinuedFraction c = continued_fraction(alpha);
        require(c == cf({3, 1, 2}), "cf(3/11) != [0;3,1,2]");
        const ConvergentSequence s = convergents(c);
        require(s.at(1) == Rational(1, 3) && s.at(2) == Rational(1, 4) && s.at(3) == Rational(3, 11),
                "convergents of 3/11 wrong");
        const BlockHistory h = block_history(c);
        require(h.block(1) == "pppq" && h.block(2) == "pppqp" && h.block(3) == "pppqppppqppppq",
                "blocks of 3/11 wrong");
        require(h.length(1) == 4 && h.length(2) == 5 && h.length(3) == 14, "lengths of 3/11 wrong");
        const SturmianWord w = sturmian_block(c);
        require(w.q_count() == 3 && w.p_count() == 11, "symbol counts of 3/11 wrong");
    }
    {
        // golden mean: the first five expansion terms of 1/phi are all ones
        const double x = (std::sqrt(5.0) - 1.0) / 2.0;
        double frac = x;
        for (int k = 0; k < 5; ++k) {
            const auto a = static_cast<std::int64_t>(std::floor(1.0 / frac));
            require(a == 1, "1/phi expansion term != 1");
            frac = 1.0 / frac - static_cast<double>(a);
        }
        const ContinuedFraction c = cf({1, 1, 1, 1, 1});
        const ConvergentSequence s = convergents(c);
        require(s.at(1) == Rational(1, 1) && s.at(2) == Rational(1, 2) && s.at(3) == Rational(2, 3) &&
                    s.at(4) == Rational(3, 5) && s.at(5) == Rational(5, 8),
                "golden convergents wrong");
        const BlockHistory h = block_history(c);
        require(h.block(1) == "pq" && h.block(2) == "pqp" && h.block(3) == "pqppq" &&
                    h.block(4) == "pqppqpqp" && h.block(5) == "pqppqpqppqppq",
                "golden blocks wrong");
        const std::int64_t expect[] = {2, 3, 5, 8, 13};
        for (int k = 1; k <= 5; ++k)
            require(h.length(k) == expect[k - 1], "golden block length wrong");
    }
}

void criterion_block_identity() {
    require(sturmian_block(continued_fraction(Rational(2, 7))).symbols == "pppqpppqp",
            "word(2/7) != pppqpppqp");
}

void criterion_chain_band_counts() {
    const ModelSpec spec = chain_spec();
    const SweepRange range{0.0, 3.0};
    const std::int64_t expect[][3] = {{2, 7, 9}, {1, 2, 3}, {7, 8, 15}};
    for (const auto& e : expect) {
        const Rational alpha(e[0], e[1]);
        const BandList eigen = passbands(spec, alpha, range);
        require(static_cast<std::int64_t>(eigen.band_count()) == e[2],
                "band count mismatch at alpha=" + alpha.str());
        const BandList sampled = passbands(spec, alpha, range, 0, 1e-9, BandMethod::Sampled);
        require(static_cast<std::int64_t>(sampled.band_count()) == e[2],
                "sampled band count mismatch at alpha=" + alpha.str());
    }
    for (std::int64_t q = 1; q <= 30; ++q) {
        for (std::int64_t p = 1; p <= q; ++p) {
            if (std::gcd(p, q) != 1) continue;
            const Rational alpha(p, q);
            if (!band_count_check(passbands(spec, alpha, range), alpha))
                throw Failure("band-count law fails at alpha=" + alpha.str());
        }
    }
}

void criterion_endpoint_dispersions() {
    const double Kp = 1.0, Kq = 2.0, m = 1.0;
    const ModelSpec spec = chain_spec(Kp, Kq, m);
    const ContinuedFraction zero = continued_fraction(Rational(0, 1));
    const ContinuedFraction one = continued_fraction(Rational(1, 1));
    for (int j = 0; j <= 1000; ++j) {
        const double w = 3.0 * j / 1000.0;
        const auto [tp, tq] = element_tms_2(spec, w);
        // all-p limit cell: the surviving element carries K_p
        const double z0 = cos_kl(supercell_tm(zero, tp, tq));
        const double quad = 1.0 - m * w * w / (2.0 * Kp);
        require(std::abs(z0 - quad) <= 1e-12, "single-element dispersion off at w=" + std::to_string(w));
        const double z1 = cos_kl(supercell_tm(one, tp, tq));
        const double quart =
            1.0 - m * (Kp + Kq) * w * w / (Kp * Kq) + m * m * w * w * w * w / (2.0 * Kp * Kq);
        require(std::abs(z1 - quart) <= 1e-12, "binary-cell dispersion off at w=" + std::to_string(w));
    }
}

void criterion_recursion_vs_direct() {
    std::mt19937 rng(421);
    std::uniform_int_distribution<int> n_terms(1, 5);
    std::uniform_int_distribution<std::int64_t> term(1, 5);
    std::uniform_real_distribution<double> K_d(0.5, 3.0), w_d(0.0, 3.0);
    int done = 0;
    while (done < 200) {
        ContinuedFraction c;
        const int n = n_terms(rng);
        for (int i = 0; i < n; ++i) c.terms.push_back(term(rng));
        const Rational alpha = to_rational(c);
        if (element_count(alpha) > 200) continue;
        const SturmianWord word = sturmian_block(c);
        const double Kp = K_d(rng);
        const double Kq = K_d(rng);
        const double w = w_d(rng);
        const ModelSpec spec = chain_spec(Kp, Kq);
        const auto [tp, tq] = element_tms_2(spec, w);
        const Mat<2> a = supercell_tm(c, tp, tq).m;
        const Mat<2> b = supercell_tm_direct(word, tp, tq).m;
        // two parenthesisations of the same product agree to the classical
        // bound  ~ N eps prod_i ||T_i||; that product is the relative scale
        const double log_scale =
            static_cast<double>(word.p_count()) * std::log(std::max(1.0, tp.m.max_abs())) +
            static_cast<double>(word.q_count()) * std::log(std::max(1.0, tq.m.max_abs()));
        const double scale = std::exp(std::min(log_scale, 600.0));
        for (int k = 0; k < 4; ++k)
            require(std::abs(a.a[k] - b.a[k]) <= 1e-9 * scale,
                    "recursion/direct mismatch for cf " + c.str());
        ++done;
    }
}

void criterion_chebyshev() {
    std::mt19937 rng(777);
    std::uniform_real_distribution<double> K_d(0.8, 2.5), m_d(0.8, 1.25), w_d(0.05, 2.8);
    std::uniform_int_distribution<int> n_terms(1, 3);
    std::uniform_int_distribution<std::int64_t> term(1, 3);
    int accepted = 0;
    while (accepted < 50) {
        ContinuedFraction prefix;
        const int n = n_terms(rng) + 1;   // at least two terms so b is itself a block
        for (int i = 0; i < n; ++i) prefix.terms.push_back(term(rng));
        ContinuedFraction parent = prefix;
        parent.terms.pop_back();
        const ModelSpec spec = chain_spec(K_d(rng), K_d(rng), m_d(rng));
        const double w = w_d(rng);
        const auto [tp, tq] = element_tms_2(spec, w);
        const Mat<2> Ta = supercell_tm(prefix, tp, tq).m;
        const Mat<2> Tb = supercell_tm(parent, tp, tq).m;
        const ChebSequenceState s{0.5 * Ta.trace(), 0.5 * (Ta * Tb).trace(), 0.5 * Tb.trace()};
        // sample inside the parent's passband, where the trace map stays
        // bounded; outside it the sequence grows like cosh(r kappa) and any
        // fixed relative tolerance only measures rounding noise
        if (std::abs(s.z_inf) > 1.0 || std::abs(s.z0) > 1e3 || std::abs(s.z1) > 1e3) continue;
        ++accepted;
        const std::vector<double> zs = cheb_z_iterate(s, 30);
        Mat<2> power = Mat<2>::identity();
        for (int r = 0; r <= 30; ++r) {
            const double direct = 0.5 * (Ta * power).trace();
            const double closed = cheb_z_closed(s, r);
            const double it = zs[static_cast<std::size_t>(r)];
            const double tol = 1e-9 * std::max({1.0, std::abs(direct), std::abs(it)});
            require(std::abs(it - direct) <= tol, "trace-map iterate vs product at r=" + std::to_string(r));
            require(std::abs(closed - direct) <= tol,
                    "trace-map closed form vs product at r=" + std::to_string(r));
            power = power * Tb;
        }
    }
}

void criterion_rod_closed_form() {
    for (const double lambda : {2.0, 4.0, 10.0}) {
        const RodElement q{1.0, 1.0, 1.0};
        const RodElement p{lambda * lambda, 1.0, 1.0};
        for (int j = 0; j <= 500; ++j) {
            const double w = 12.0 * j / 500.0;
            Mat<2> power = Mat<2>::identity();
            for (std::int64_t r = 0; r <= 20; ++r) {
                const double direct = 0.5 * (rod_tm(q, w).m * power).trace();
                const double closed = rod_half_trace_closed(lambda, r, w, 1.0, 1.0);
                require(std::abs(direct - closed) <= 1e-9 * std::max(1.0, std::abs(direct)),
                        "rod closed form off at lambda=" + std::to_string(lambda));
                power = power * rod_tm(p, w).m;
            }
        }
    }
    const BandList uniform = passbands(rod_spec(1.0), Rational(3, 7), {0.0, 25.0});
    require(uniform.band_count() == 1 && uniform.intervals[0].lo == 0.0 &&
                std::abs(uniform.intervals[0].hi - 25.0) < 1e-12,
            "lambda = 1 rod shows spurious stopbands");
}

void criterion_rod_periodicity() {
    const double dw = 2.0 * kPi;   // lambda = 2 -> period pi * lambda * c_q / l
    const std::int64_t half = 500;
    const BulkGrid grid = bulk_spectrum(rod_spec(2.0), 200, {0.0, 2.0 * dw}, 2 * half, 4);
    for (std::size_t i = 0; i < grid.alphas.size(); ++i)
        for (std::int64_t j = 0; j <= half; ++j)
            require(grid.at(i, static_cast<std::size_t>(j)) ==
                        grid.at(i, static_cast<std::size_t>(j + half)),
                    "period mismatch at alpha=" + grid.alphas[i].str() + " j=" + std::to_string(j));
}

void criterion_beam_palindromy() {
    struct Case {
        ModelSpec spec;
        const char* name;
    };
    std::vector<Case> cases;
    {
        ModelSpec a;
        a.kind = ModelKind::Beam;
        a.beam = {0.25, 3.0, 0.01, 8.33e-6, 1.0};
        a.varied = "EI";
        a.theta_p = 0.25;
        a.theta_q = 0.0083;
        cases.push_back({a, "a"});
        ModelSpec b;
        b.kind = ModelKind::Beam;
        b.beam = {0.0083, 3.0, 0.16, 8.33e-6, 1.0};
        b.varied = "rhoA";
        b.theta_p = 0.16;
        b.theta_q = 0.01;
        cases.push_back({b, "b"});
        ModelSpec c;
        c.kind = ModelKind::BeamOnSupports;
        c.beam = {8.33, 3.33e3, 0.01, 8.33e-6, 1.0};
        c.varied = "K";
        c.theta_p = 6.67e3;
        c.theta_q = 8.33;
        cases.push_back({c, "c"});
        ModelSpec d;
        d.kind = ModelKind::BeamOnSupports;
        d.beam = {8.33, 3.33e3, 0.01, 8.33e-6, 1.0};
        d.support_stiffness = 6.67e3;
        d.varied = "l";
        d.theta_p = 4.0;
        d.theta_q = 1.0;
        cases.push_back({d, "d"});
    }
    const ContinuedFraction word_cf = continued_fraction(Rational(2, 7));
    for (const Case& c : cases) {
        for (int j = 1; j <= 200; ++j) {
            const double w = 500.0 * j / 200.0;
            const auto [tp, tq] = element_tms_4(c.spec, w);
            for (const TMat4& T : {tp, tq, supercell_tm(word_cf, tp, tq)}) {
                const CharCoeffs coef = char_coeffs(T);
                const double scale = std::max(1.0, std::abs(coef.c1));
                require(std::abs(coef.c3 - coef.c1) < 1e-6 * scale,
                        std::string("palindromy c3!=c1 in case ") + c.name);
                require(std::abs(coef.c4 - 1.0) < 1e-6,
                        std::string("palindromy det!=1 in case ") + c.name);
                // branch pair against the reduced quadratic s^2 - c1 s + (c2 - 2) = 0
                const BranchPair br = cos_kl_branches(T);
                const std::complex<double> disc =
                    std::sqrt(std::complex<double>(coef.c1 * coef.c1 - 4.0 * (coef.c2 - 2.0), 0.0));
                std::complex<double> r1 = 0.25 * (coef.c1 + disc);
                std::complex<double> r2 = 0.25 * (coef.c1 - disc);
                require(std::abs(br.plus - r1) <= 1e-10 * scale && std::abs(br.minus - r2) <= 1e-10 * scale,
                        std::string("branch/quadratic mismatch in case ") + c.name);
            }
        }
    }
}

void criterion_expm_oracle() {
    std::mt19937 rng(97);
    std::uniform_real_distribution<double> d(0.2, 5.0);
    for (int i = 0; i < 100; ++i) {
        const RodElement r{d(rng), d(rng), d(rng)};
        const double w = d(rng);
        const Mat<2> closed = rod_tm(r, w).m;
        const Mat<2> viaExp = expm_oracle<2>(rod_state_matrix(r, w), r.l);
        const double scale = std::max(1.0, closed.max_abs());
        for (int k = 0; k < 4; ++k)
            require(std::abs(closed.a[k] - viaExp.a[k]) <= 1e-10 * scale, "rod expm mismatch");
    }
    const BeamElement beams[] = {{0.25, 3.0, 0.01, 8.33e-6, 1.0},
                                 {0.0083, 3.0, 0.16, 8.33e-6, 1.0},
                                 {8.33, 3.33e3, 0.01, 8.33e-6, 1.0},
                                 {8.33, 3.33e3, 0.01, 8.33e-6, 4.0}};
    for (const BeamElement& b : beams) {
        BeamElement half = b;
        half.l = 0.5 * b.l;
        for (double w : {2.0, 55.0, 310.0}) {
            const Mat<4> whole = beam_tm(b, w).m;
            const Mat<4> split = beam_tm(half, w).m * beam_tm(half, w).m;
            const double scale = std::max(1.0, whole.max_abs());
            for (int k = 0; k < 16; ++k)
                require(std::abs(whole.a[k] - split.a[k]) <= 1e-8 * scale, "beam semigroup mismatch");
        }
    }
}

void criterion_selfsim_nesting() {
    const ModelSpec spec = chain_spec();
    const SweepRange range{0.0, 3.0};
    const ContinuedFraction prefix = cf({1, 2, 2, 2});
    for (std::int64_t r = 0; r <= 20; ++r)
        require(element_count(alpha_r(prefix, r).alpha) == 29 + 12 * r, "element count identity");

    const BandList b_bands = passbands(spec, alpha_r(prefix, 0).b, range);
    double prev_outside = std::numeric_limits<double>::infinity();
    for (const std::int64_t r : {2, 5, 10, 20}) {
        const BandList bands = passbands(spec, alpha_r(prefix, r).alpha, range);
        const double total = bands_measure(bands.intervals);
        const double inside = bands_measure(bands_intersection(bands.intervals, b_bands.intervals));
        const double outside = total - inside;
        require(outside < prev_outside,
                "outside measure not decreasing at r=" + std::to_string(r));
        prev_outside = outside;
    }
}

void criterion_bulk_determinism() {
    const ModelSpec spec = chain_spec();
    const SweepRange range{0.0, 3.0};
    std::vector<std::uint8_t> first;
    for (const int workers : {1, 2, 8}) {
        const auto t0 = std::chrono::steady_clock::now();
        const BulkGrid grid = bulk_spectrum(spec, 1000, range, 2000, workers);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        require(secs < 120.0, "sweep exceeded 120 s with workers=" + std::to_string(workers));
        if (first.empty())
            first = grid.admitted;
        else
            require(grid.admitted == first,
                    "grid bytes differ with workers=" + std::to_string(workers));
    }
}

struct Criterion {
    int id;
    const char* label;
    double budget_seconds;
    std::function<void()> run;
};

} // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "Table-1 reproduction (3/11 and 1/phi)", 1e-3, criterion_table1},
        {2, "block identity word(2/7)", 1e-3, criterion_block_identity},
        {3, "chain band counts and p+q law (q <= 30)", 10.0, criterion_chain_band_counts},
        {4, "endpoint dispersions (quadratic / quartic)", 1.0, criterion_endpoint_dispersions},
        {5, "supercell recursion vs direct product (200 cases)", 5.0, criterion_recursion_vs_direct},
        {6, "trace-map iterate / closed form / products (r <= 30)", 5.0, criterion_chebyshev},
        {7, "rod two-cosine closed form and gapless lambda=1", 5.0, criterion_rod_closed_form},
        {8, "rod bulk-spectrum vertical periodicity (lambda=2)", 60.0, criterion_rod_periodicity},
        {9, "beam palindromy and branch/quadratic agreement", 10.0, criterion_beam_palindromy},
        {10, "matrix exponential oracle (rod closed form, beam semigroup)", 5.0, criterion_expm_oracle},
        {11, "self-similar nesting along [0;1,2,2,2+r]", 60.0, criterion_selfsim_nesting},
        {12, "bulk sweep scale and worker determinism (M=1000)", 120.0, criterion_bulk_determinism},
    };

    int failures = 0;
    for (const Criterion& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        std::string verdict = "PASS";
        std::string detail;
        try {
            c.run();
        } catch (const std::exception& e) {
            verdict = "FAIL";
            detail = e.what();
            ++failures;
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (verdict == "PASS" && secs > c.budget_seconds) {
            verdict = "FAIL";
            detail = "time budget exceeded (" + std::to_string(secs) + " s > " +
                     std::to_string(c.budget_seconds) + " s)";
            ++failures;
        }
        std::printf("%s  criterion %2d: %s (%.3f s)%s%s\n", verdict.c_str(), c.id, c.label, secs,
                    detail.empty() ? "" : " -- ", detail.c_str());
        std::fflush(stdout);
    }
    if (failures == 0)
        std::printf("all %zu criteria passed\n", criteria.size());
    else
        std::printf("%d criteria FAILED\n", failures);
    return failures;
}
