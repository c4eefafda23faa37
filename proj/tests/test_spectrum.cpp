#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <sstream>

#include "sturmian/csvio.hpp"
#include "sturmian/spectrum.hpp"

using namespace sturmian;

namespace {

constexpr double kPi = 3.14159265358979323846;

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

bool equal_intervals(const std::vector<Band>& a, const std::vector<Band>& b, double tol) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (std::abs(a[i].lo - b[i].lo) > tol || std::abs(a[i].hi - b[i].hi) > tol) return false;
    return true;
}

} // namespace

TEST_CASE("chain band lists for the reference parameters") {
    const SweepRange range{0.0, 3.0};
    const ModelSpec spec = chain_spec();

    SUBCASE("alpha = 1/2 has the three frozen bands") {
        for (BandMethod method : {BandMethod::ChainEigen, BandMethod::Sampled}) {
            const BandList bands = passbands(spec, Rational(1, 2), range, 0, 1e-9, method);
            REQUIRE(bands.band_count() == 3);
            CHECK(bands.intervals[0].lo == doctest::Approx(0.0).epsilon(1e-9));
            CHECK(bands.intervals[0].hi == doctest::Approx(1.0).epsilon(1e-9));
            CHECK(bands.intervals[1].lo == doctest::Approx(1.1993528201455856).epsilon(1e-8));
            CHECK(bands.intervals[1].hi == doctest::Approx(1.7320508075688772).epsilon(1e-8));
            CHECK(bands.intervals[2].lo == doctest::Approx(2.23606797749979).epsilon(1e-8));
            CHECK(bands.intervals[2].hi == doctest::Approx(2.358294471182263).epsilon(1e-8));
        }
    }
    SUBCASE("counts match the supercell size") {
        CHECK(passbands(spec, Rational(2, 7), range).band_count() == 9);
        CHECK(passbands(spec, Rational(7, 8), range).band_count() == 15);
        CHECK(passbands(spec, Rational(1, 1), range).band_count() == 2);
        CHECK(band_count_check(passbands(spec, Rational(2, 7), range), Rational(2, 7)));
    }
    SUBCASE("band-count law for moderate denominators") {
        for (std::int64_t q = 1; q <= 15; ++q) {
            for (std::int64_t p = 1; p <= q; ++p) {
                if (std::gcd(p, q) != 1) continue;
                const Rational a(p, q);
                CHECK(band_count_check(passbands(spec, a, range), a));
            }
        }
    }
    SUBCASE("narrow impurity bands are found and flagged") {
        const BandList bands = passbands(spec, Rational(1, 5), range, 0, 1e-9, BandMethod::Sampled);
        CHECK(bands.band_count() == 6);
        CHECK(bands.narrow_warning);
        const BandList exact = passbands(spec, Rational(1, 5), range, 0, 1e-9, BandMethod::ChainEigen);
        CHECK(equal_intervals(bands.intervals, exact.intervals, 1e-6));
    }
}

TEST_CASE("sampled scan equals the eigen route for small denominators") {
    // 6000 coarse samples resolve the impurity doublets (e.g. 2/11) whose
    // zero pairs sit closer than the default grid step
    const SweepRange range{0.0, 3.0};
    const ModelSpec spec = chain_spec();
    for (std::int64_t q = 1; q <= 12; ++q) {
        for (std::int64_t p = 1; p <= q; ++p) {
            if (std::gcd(p, q) != 1) continue;
            const Rational a(p, q);
            const BandList sampled = passbands(spec, a, range, 6000, 1e-9, BandMethod::Sampled);
            const BandList eigen = passbands(spec, a, range, 6000, 1e-9, BandMethod::ChainEigen);
            CHECK(equal_intervals(sampled.intervals, eigen.intervals, 1e-6));
        }
    }
}

TEST_CASE("recursion and direct-product dispersions give the same bands") {
    const ModelSpec spec = chain_spec();
    const SweepRange range{0.0, 3.0};
    for (std::int64_t q = 1; q <= 12; ++q) {
        for (std::int64_t p = 1; p <= q; ++p) {
            if (std::gcd(p, q) != 1) continue;
            const Rational a(p, q);
            const ContinuedFraction cf = continued_fraction(a);
            const SturmianWord word = sturmian_block(cf);
            auto z_rec = [&](double w) {
                const auto [tp, tq] = element_tms_2(spec, w);
                return cos_kl(supercell_tm(cf, tp, tq));
            };
            auto z_direct = [&](double w) {
                const auto [tp, tq] = element_tms_2(spec, w);
                return cos_kl(supercell_tm_direct(word, tp, tq));
            };
            const std::int64_t steps = 40 * static_cast<std::int64_t>(word.size()) + 400;
            const auto b1 = scan_passbands(z_rec, range, steps);
            const auto b2 = scan_passbands(z_direct, range, steps);
            CHECK(equal_intervals(b1, b2, 1e-8));
        }
    }
}

TEST_CASE("homogeneous systems have no stopbands") {
    SUBCASE("rod with lambda = 1") {
        const BandList bands = passbands(rod_spec(1.0), Rational(2, 7), {0.0, 20.0});
        REQUIRE(bands.band_count() == 1);
        CHECK(bands.intervals[0].lo == doctest::Approx(0.0));
        CHECK(bands.intervals[0].hi == doctest::Approx(20.0));
    }
    SUBCASE("chain with equal stiffness merges all touching bands") {
        const BandList bands = passbands(chain_spec(2.0, 2.0), Rational(1, 2), {0.0, 4.0});
        REQUIRE(bands.band_count() == 1);
        CHECK(bands.intervals[0].lo == doctest::Approx(0.0).epsilon(1e-9));
        // monoatomic edge at 2 sqrt(K/m)
        CHECK(bands.intervals[0].hi == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-8));
    }
}

TEST_CASE("rod bulk spectrum repeats with the vertical period") {
    const double dw = 2.0 * kPi;   // lambda = 2
    const std::int64_t steps = 250;
    const BulkGrid grid = bulk_spectrum(rod_spec(2.0), 40, {0.0, 2.0 * dw}, 2 * steps, 2);
    for (std::size_t i = 0; i < grid.alphas.size(); ++i)
        for (std::int64_t j = 0; j <= steps; ++j)
            CHECK(grid.at(i, static_cast<std::size_t>(j)) ==
                  grid.at(i, static_cast<std::size_t>(j + steps)));
}

TEST_CASE("bulk grid endpoints and determinism") {
    const ModelSpec spec = chain_spec();
    const BulkGrid g1 = bulk_spectrum(spec, 20, {0.0, 3.0}, 300, 1);
    const BulkGrid g2 = bulk_spectrum(spec, 20, {0.0, 3.0}, 300, 2);
    const BulkGrid g8 = bulk_spectrum(spec, 20, {0.0, 3.0}, 300, 8);
    CHECK(g1.admitted == g2.admitted);
    CHECK(g1.admitted == g8.admitted);

    // alpha = 0 column: single band ending at 2 sqrt(K_p/m)
    std::size_t runs0 = 0;
    for (std::size_t j = 0; j < g1.omegas.size(); ++j) {
        const bool a = g1.at(0, j);
        if (a && (j == 0 || !g1.at(0, j - 1))) ++runs0;
        if (a) CHECK(g1.omegas[j] <= 2.0 + 1e-6);
    }
    CHECK(runs0 == 1);

    // alpha = 1 column: acoustic + optical
    std::size_t runs1 = 0;
    for (std::size_t j = 0; j < g1.omegas.size(); ++j) {
        if (g1.at(20, j) && (j == 0 || !g1.at(20, j - 1))) ++runs1;
    }
    CHECK(runs1 == 2);

    // M = 1 grid: the two endpoint systems only
    const BulkGrid tiny = bulk_spectrum(spec, 1, {0.0, 3.0}, 100, 1);
    CHECK(tiny.alphas.size() == 2);
    CHECK(tiny.alphas[0] == Rational(0, 1));
    CHECK(tiny.alphas[1] == Rational(1, 1));

    // binary-cell band edges sit at the roots of the closed quartic:
    // acoustic [0, sqrt(2 Kp/m)], optical [sqrt(2 Kq/m), sqrt(2 (Kp+Kq)/m)]
    const BandList binary = passbands(spec, Rational(1, 1), {0.0, 3.0});
    REQUIRE(binary.band_count() == 2);
    CHECK(binary.intervals[0].lo == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(binary.intervals[0].hi == doctest::Approx(std::sqrt(2.0)).epsilon(1e-8));
    CHECK(binary.intervals[1].lo == doctest::Approx(2.0).epsilon(1e-8));
    CHECK(binary.intervals[1].hi == doctest::Approx(std::sqrt(6.0)).epsilon(1e-8));
}

TEST_CASE("self-similar families") {
    const ModelSpec spec = chain_spec();
    SUBCASE("prefix [2] walks down the harmonic fractions") {
        ContinuedFraction pre;
        pre.terms = {2};
        const SelfSimReport rep = selfsim_sequence(pre, 5, spec, {0.0, 3.0});
        REQUIRE(rep.rows.size() == 6);
        for (std::int64_t r = 0; r <= 5; ++r)
            CHECK(rep.rows[static_cast<std::size_t>(r)].alpha == Rational(1, 2 + r));
        CHECK(rep.b == Rational(0, 1));
    }
    SUBCASE("prefix [1,1] climbs toward one") {
        ContinuedFraction pre;
        pre.terms = {1, 1};
        const SelfSimReport rep = selfsim_sequence(pre, 4, spec, {0.0, 3.0});
        for (std::int64_t r = 0; r <= 4; ++r)
            CHECK(rep.rows[static_cast<std::size_t>(r)].alpha == Rational(1 + r, 2 + r));
        CHECK(rep.b == Rational(1, 1));
    }
    SUBCASE("prefix [1,2,2,2] grows by N(b) elements per step") {
        ContinuedFraction pre;
        pre.terms = {1, 2, 2, 2};
        const SelfSimReport rep = selfsim_sequence(pre, 4, spec, {0.0, 3.0});
        CHECK(rep.a == Rational(12, 17));
        CHECK(rep.b == Rational(5, 7));
        for (const SelfSimRow& row : rep.rows) {
            CHECK(row.n_elements == 29 + 12 * row.r);
            CHECK(static_cast<std::int64_t>(row.bands.band_count()) == row.n_elements);
            CHECK(row.inside_fraction > 0.0);
            CHECK(row.inside_fraction <= 1.0);
        }
        CHECK(rep.rows[4].inside_fraction > rep.rows[0].inside_fraction);
    }
}

TEST_CASE("beam band lists are resolution-stable") {
    // 4x4 sampled path: the band list must not change between two coarse
    // resolutions once refined
    ModelSpec spec;
    spec.kind = ModelKind::BeamOnSupports;
    spec.beam = {8.33, 3.33e3, 0.01, 8.33e-6, 1.0};
    spec.varied = "K";
    spec.theta_p = 6.67e3;
    spec.theta_q = 8.33;
    const SweepRange range{0.5, 120.0};
    const BandList coarse = passbands(spec, Rational(1, 2), range, 800);
    const BandList fine = passbands(spec, Rational(1, 2), range, 2400);
    REQUIRE(coarse.band_count() >= 1);
    CHECK(equal_intervals(coarse.intervals, fine.intervals, 1e-6));
    // every reported interval is genuinely admitted at its midpoint
    const ContinuedFraction cf = continued_fraction(Rational(1, 2));
    for (const Band& b : fine.intervals)
        CHECK(admitted_at(spec, cf, 0.5 * (b.lo + b.hi)));
}

TEST_CASE("oversized grids are rejected with advice") {
    const ModelSpec spec = chain_spec();
    CHECK_THROWS_WITH_AS(bulk_spectrum(spec, 100000, {0.0, 3.0}, 100000),
                         doctest::Contains("chunks"), std::invalid_argument);
}

TEST_CASE("interval utilities") {
    const std::vector<Band> a = {{0.0, 1.0}, {2.0, 3.0}};
    const std::vector<Band> b = {{0.5, 2.5}};
    const auto inter = bands_intersection(a, b);
    REQUIRE(inter.size() == 2);
    CHECK(inter[0].lo == doctest::Approx(0.5));
    CHECK(inter[0].hi == doctest::Approx(1.0));
    CHECK(inter[1].lo == doctest::Approx(2.0));
    CHECK(inter[1].hi == doctest::Approx(2.5));
    CHECK(bands_measure(inter) == doctest::Approx(1.0));
}

TEST_CASE("grid serialisation") {
    const BulkGrid grid = bulk_spectrum(chain_spec(), 2, {0.0, 1.0}, 9, 1);

    std::ostringstream csv;
    write_grid_csv(csv, grid);
    const std::string text = csv.str();
    CHECK(text.substr(0, 6) == "alpha,");
    CHECK(text.find("\r") == std::string::npos);
    std::size_t lines = 0;
    for (char c : text)
        if (c == '\n') ++lines;
    CHECK(lines == 4);   // header + three alpha rows
    CHECK(text.find("1/2") != std::string::npos);

    std::ostringstream bin(std::ios::binary);
    write_grid_raster(bin, grid);
    const std::string raw = bin.str();
    REQUIRE(raw.size() == 4 + 4 + 4 + 3 * 2);   // magic, dims, 3 rows of 2 bytes
    CHECK(raw.substr(0, 4) == "SBSG");
    CHECK(static_cast<unsigned char>(raw[4]) == 3);    // rows
    CHECK(static_cast<unsigned char>(raw[8]) == 10);   // cols
    // low-frequency samples all pass for the chain: bit 0 of each row set
    CHECK((static_cast<unsigned char>(raw[12]) & 1) == 1);
}

TEST_CASE("input validation") {
    const ModelSpec spec = chain_spec();
    CHECK_THROWS_AS(passbands(spec, Rational(1, 2), {3.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(passbands(spec, Rational(1, 2), {0.0, 3.0}, 0, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(bulk_spectrum(spec, 0, {0.0, 3.0}, 100), std::invalid_argument);
    CHECK_THROWS_AS(bulk_spectrum(spec, 5, {0.0, 3.0}, 1), std::invalid_argument);
    CHECK_THROWS_AS(passbands(rod_spec(2.0), Rational(1, 2), {0.0, 3.0}, 0, 1e-9,
                              BandMethod::ChainEigen),
                    std::invalid_argument);
    ContinuedFraction empty;
    CHECK_THROWS_AS(selfsim_sequence(empty, 3, spec, {0.0, 3.0}), std::invalid_argument);
}
