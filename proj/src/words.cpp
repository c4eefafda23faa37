#include "sturmian/words.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sturmian {

std::size_t SturmianWord::p_count() const {
    return static_cast<std::size_t>(std::count(symbols.begin(), symbols.end(), 'p'));
}

std::size_t SturmianWord::q_count() const {
    return static_cast<std::size_t>(std::count(symbols.begin(), symbols.end(), 'q'));
}

SturmianWord sturmian_block(const ContinuedFraction& cf) {
    if (!cf.valid()) throw std::invalid_argument("sturmian_block: continued-fraction terms must be >= 1");
    if (cf.empty()) return {"p", cf};
    std::string prev = "q", cur = "p";
    for (auto a : cf.terms) {
        std::string next;
        next.reserve(cur.size() * static_cast<std::size_t>(a) + prev.size());
        for (std::int64_t i = 0; i < a; ++i) next += cur;
        next += prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return {std::move(cur), cf};
}

BlockHistory block_history(const ContinuedFraction& cf) {
    if (!cf.valid()) throw std::invalid_argument("block_history: continued-fraction terms must be >= 1");
    BlockHistory h;
    h.blocks = {"q", "p"};
    h.lengths = {1, 1};
    for (auto a : cf.terms) {
        const auto& b1 = h.blocks[h.blocks.size() - 1];
        const auto& b2 = h.blocks[h.blocks.size() - 2];
        std::string next;
        next.reserve(b1.size() * static_cast<std::size_t>(a) + b2.size());
        for (std::int64_t i = 0; i < a; ++i) next += b1;
        next += b2;
        h.blocks.push_back(std::move(next));
        const auto n = h.lengths.size();
        h.lengths.push_back(a * h.lengths[n - 1] + h.lengths[n - 2]);
    }
    return h;
}

namespace {

// Solve i*v - j*u = m for integers, gcd(u, v) = 1.
void solve_lattice(std::int64_t v, std::int64_t u, std::int64_t m, std::int64_t& i, std::int64_t& j) {
    // extended Euclid: s*v + t*u = 1
    std::int64_t r0 = v, r1 = u, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
    while (r1 != 0) {
        const std::int64_t q = r0 / r1;
        std::int64_t tmp = r0 - q * r1; r0 = r1; r1 = tmp;
        tmp = s0 - q * s1; s0 = s1; s1 = tmp;
        tmp = t0 - q * t1; t0 = t1; t1 = tmp;
    }
    // r0 = gcd = 1 (by precondition), s0*v + t0*u = 1
    i = s0 * m;
    j = -t0 * m;
}

struct Crossing {
    long double y;       // extended precision keeps the gap self-check sharp
    std::int64_t i, j;   // lattice indices, kept for exact reduction
    char type;
};

} // namespace

SturmianWord cutting_sequence(const Rational& alpha, double theta_p, double theta_q) {
    if (!(theta_p > 0.0) || !(theta_q > 0.0))
        throw std::invalid_argument("cutting_sequence: parameter heights must be positive");
    if (alpha.num > alpha.den) throw std::invalid_argument("cutting_sequence: alpha must lie in [0,1]");

    const std::int64_t v = alpha.num;   // q-rectangle width
    const std::int64_t u = alpha.den;   // p-rectangle width
    const long double tp = theta_p, tq = theta_q;
    const long double period = static_cast<long double>(u) * tp + static_cast<long double>(v) * tq;

    // The vertical line sits at x0 = 1/2, never on a tile corner. A crossing
    // of the bottom edge of a translated rectangle exists when the integer
    // m = i*v - j*u falls in the width window behind x0; its ordinate is
    // i*theta_p + j*theta_q (+theta_p for the upper rectangle).
    std::vector<Crossing> crossings;
    crossings.reserve(static_cast<std::size_t>(u + v));
    auto add = [&](std::int64_t width, char type, long double y_off) {
        for (std::int64_t m = 1 - width; m <= 0; ++m) {
            std::int64_t i, j;
            solve_lattice(v, u, m, i, j);
            // shift along (u, v) until the ordinate lands in [0, period)
            long double y = static_cast<long double>(i) * tp + static_cast<long double>(j) * tq + y_off;
            const auto t = static_cast<std::int64_t>(std::floor(y / period));
            i -= t * u;
            j -= t * v;
            y = static_cast<long double>(i) * tp + static_cast<long double>(j) * tq + y_off;
            if (y >= period) {          // rounding at the seam
                i -= u;
                j -= v;
                y -= period;
            } else if (y < 0.0L) {
                i += u;
                j += v;
                y += period;
            }
            crossings.push_back({y, i, j, type});
        }
    };
    add(u, 'p', 0.0L);
    if (v > 0) add(v, 'q', tp);

    std::sort(crossings.begin(), crossings.end(),
              [](const Crossing& a, const Crossing& b) { return a.y < b.y; });

    // Each crossing is the floor of exactly one tile, so the gap above it must
    // equal that tile's height.
    const long double tol = 1e-9L * std::min(tp, tq);
    SturmianWord word;
    word.source = continued_fraction(alpha);
    for (std::size_t k = 0; k < crossings.size(); ++k) {
        const auto& c = crossings[k];
        const long double next =
            (k + 1 < crossings.size()) ? crossings[k + 1].y : crossings[0].y + period;
        const long double gap = next - c.y;
        const long double expect = (c.type == 'p') ? tp : tq;
        if (std::abs(gap - expect) > tol)
            throw std::logic_error("cutting_sequence: tiling gap mismatch");
        word.symbols += c.type;
    }
    return word;
}

ParameterTrack assign_parameters(const SturmianWord& word, double theta_p, double theta_q) {
    ParameterTrack track;
    track.values.reserve(word.size());
    for (char c : word.symbols) track.values.push_back(c == 'p' ? theta_p : theta_q);
    return track;
}

double parameter_sum(const SturmianWord& word, double theta_p, double theta_q) {
    double sum = 0.0;
    for (char c : word.symbols) sum += (c == 'p') ? theta_p : theta_q;
    return sum;
}

TilingGeometry g_vectors(const ContinuedFraction& cf, double theta_p, double theta_q) {
    if (!(theta_p > 0.0) || !(theta_q > 0.0))
        throw std::invalid_argument("g_vectors: parameter heights must be positive");
    const Rational alpha = to_rational(cf);
    TilingGeometry geo;
    geo.u = alpha.den;
    geo.v = alpha.num;
    geo.theta_p = theta_p;
    geo.theta_q = theta_q;
    geo.e = {geo.v, theta_p};
    geo.f = {-geo.u, theta_q};
    geo.g = {geo.f, geo.e};
    for (auto a : cf.terms) {
        const auto& g1 = geo.g[geo.g.size() - 1];
        const auto& g2 = geo.g[geo.g.size() - 2];
        geo.g.push_back({a * g1.x + g2.x, static_cast<double>(a) * g1.y + g2.y});
    }
    return geo;
}

bool cyclically_equal(const std::string& a, const std::string& b) {
    if (a.size() != b.size()) return false;
    if (a.empty()) return true;
    const std::string doubled = a + a;
    return doubled.find(b) != std::string::npos;
}

} // namespace sturmian
