#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace sturmian {

// Exact non-negative rational in lowest terms. Generator parameters live in
// [0, 1]; general values are permitted for internal arithmetic.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n, std::int64_t d);

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const { return num * o.den < o.num * den; }

    std::string str() const;            // "p/q"
    static Rational parse(const std::string& s);
};

// Continued fraction [0; a_1, ..., a_n] of a value in [0, 1].
// Canonical form: every a_k >= 1 and, when n >= 2, a_n >= 2. The empty list
// is the value 0.
struct ContinuedFraction {
    std::vector<std::int64_t> terms;

    bool empty() const { return terms.empty(); }
    std::size_t order() const { return terms.size(); }
    bool valid() const;          // every term >= 1
    bool canonical() const;      // valid and no trailing 1 beyond a single term

    std::string str() const;            // "[0;a1,a2,...]"
    static ContinuedFraction parse(const std::string& s);

    bool operator==(const ContinuedFraction& o) const { return terms == o.terms; }
};

// Convergents nu_k/delta_k for k = -1 .. n, seeds nu_{-1}=1, nu_0=0,
// delta_{-1}=0, delta_0=1.
struct ConvergentSequence {
    std::vector<std::int64_t> nums;    // index k+1 holds order k
    std::vector<std::int64_t> dens;

    int order() const { return static_cast<int>(nums.size()) - 2; }
    std::int64_t num(int k) const { return nums.at(static_cast<std::size_t>(k + 1)); }
    std::int64_t den(int k) const { return dens.at(static_cast<std::size_t>(k + 1)); }
    Rational at(int k) const { return Rational(num(k), den(k)); }
    Rational last() const { return at(order()); }
};

ContinuedFraction continued_fraction(const Rational& alpha);
Rational to_rational(const ContinuedFraction& cf);
ConvergentSequence convergents(const ContinuedFraction& cf);

// Closest rational to x in [0,1] among all fractions with denominator
// <= max_den (continued-fraction convergents plus the final semiconvergent).
Rational best_rational_approx(double x, std::int64_t max_den);

} // namespace sturmian
