#include "sturmian/rational.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace sturmian {

Rational::Rational(std::int64_t n, std::int64_t d) {
    if (d <= 0) throw std::invalid_argument("Rational: denominator must be positive");
    if (n < 0) throw std::invalid_argument("Rational: numerator must be non-negative");
    const std::int64_t g = std::gcd(n, d);
    num = n / g;
    den = d / g;
}

std::string Rational::str() const {
    return std::to_string(num) + "/" + std::to_string(den);
}

Rational Rational::parse(const std::string& s) {
    const auto slash = s.find('/');
    if (slash == std::string::npos) throw std::invalid_argument("Rational: expected \"p/q\", got \"" + s + "\"");
    std::size_t p1 = 0, p2 = 0;
    std::int64_t n = 0, d = 0;
    try {
        n = std::stoll(s.substr(0, slash), &p1);
        d = std::stoll(s.substr(slash + 1), &p2);
    } catch (const std::exception&) {
        throw std::invalid_argument("Rational: cannot parse \"" + s + "\"");
    }
    if (p1 != slash || p2 != s.size() - slash - 1)
        throw std::invalid_argument("Rational: trailing characters in \"" + s + "\"");
    return Rational(n, d);
}

bool ContinuedFraction::valid() const {
    for (auto a : terms)
        if (a < 1) return false;
    return true;
}

bool ContinuedFraction::canonical() const {
    if (!valid()) return false;
    if (terms.size() >= 2 && terms.back() < 2) return false;
    return true;
}

std::string ContinuedFraction::str() const {
    std::string out = "[0;";
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(terms[i]);
    }
    out += ']';
    return out;
}

ContinuedFraction ContinuedFraction::parse(const std::string& s) {
    if (s.size() < 4 || s.front() != '[' || s.back() != ']' || s[1] != '0' || s[2] != ';')
        throw std::invalid_argument("ContinuedFraction: expected \"[0;a1,...]\", got \"" + s + "\"");
    ContinuedFraction cf;
    std::string body = s.substr(3, s.size() - 4);
    if (body.empty()) return cf;
    std::stringstream ss(body);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        std::size_t pos = 0;
        std::int64_t a = 0;
        try {
            a = std::stoll(tok, &pos);
        } catch (const std::exception&) {
            throw std::invalid_argument("ContinuedFraction: bad term \"" + tok + "\"");
        }
        if (pos != tok.size() || a < 1)
            throw std::invalid_argument("ContinuedFraction: bad term \"" + tok + "\"");
        cf.terms.push_back(a);
    }
    return cf;
}

ContinuedFraction continued_fraction(const Rational& alpha) {
    if (alpha.num > alpha.den) throw std::invalid_argument("continued_fraction: alpha must lie in [0,1]");
    ContinuedFraction cf;
    if (alpha.num == 0) return cf;
    // Euclid on (den, num); produces the canonical expansion directly.
    std::int64_t a = alpha.den, b = alpha.num;
    while (b != 0) {
        cf.terms.push_back(a / b);
        const std::int64_t r = a % b;
        a = b;
        b = r;
    }
    return cf;
}

Rational to_rational(const ContinuedFraction& cf) {
    std::int64_t n = 0, d = 1;   // value accumulated back-to-front
    for (auto it = cf.terms.rbegin(); it != cf.terms.rend(); ++it) {
        // x -> 1/(a + x) with x = n/d
        const std::int64_t nn = d;
        const std::int64_t nd = *it * d + n;
        n = nn;
        d = nd;
    }
    return Rational(n, d);
}

ConvergentSequence convergents(const ContinuedFraction& cf) {
    ConvergentSequence seq;
    seq.nums = {1, 0};
    seq.dens = {0, 1};
    for (auto a : cf.terms) {
        const auto k = seq.nums.size();
        seq.nums.push_back(a * seq.nums[k - 1] + seq.nums[k - 2]);
        seq.dens.push_back(a * seq.dens[k - 1] + seq.dens[k - 2]);
    }
    return seq;
}

Rational best_rational_approx(double x, std::int64_t max_den) {
    if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("best_rational_approx: x must lie in [0,1]");
    if (max_den < 1) throw std::invalid_argument("best_rational_approx: max_den must be >= 1");

    // Walk the continued fraction of x, tracking convergents h/k.
    std::int64_t h2 = 1, k2 = 0;   // order -1
    std::int64_t h1 = 0, k1 = 1;   // order 0
    double frac = x;
    for (int iter = 0; iter < 64; ++iter) {
        if (frac < 1e-15) break;
        double inv = 1.0 / frac;
        auto a = static_cast<std::int64_t>(std::floor(inv));
        if (a < 1) a = 1;
        const std::int64_t k0 = a * k1 + k2;
        if (k0 > max_den) {
            // last admissible semiconvergent on this level
            const std::int64_t t = (max_den - k2) / k1;
            if (t >= 1) {
                const Rational semi(t * h1 + h2, t * k1 + k2);
                const Rational conv(h1, k1);
                if (std::abs(semi.value() - x) < std::abs(conv.value() - x)) return semi;
            }
            return Rational(h1, k1);
        }
        const std::int64_t h0 = a * h1 + h2;
        h2 = h1;
        k2 = k1;
        h1 = h0;
        k1 = k0;
        frac = inv - std::floor(inv);
    }
    return Rational(h1, k1);
}

} // namespace sturmian
