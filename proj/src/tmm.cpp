#include "sturmian/tmm.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace sturmian {

namespace {

// Rescale toward det = 1, but only when the drift is actually measurable:
// the floating-point determinant of a matrix with entries of size s carries
// O(s^2 eps) cancellation noise, and "correcting" by noise corrupts the
// product instead of stabilising it.
template <int N>
void renormalize_det(Mat<N>& m) {
    const double d = det<N>(m);
    if (!(d > 0.0)) return;
    const double drift = std::abs(d - 1.0);
    const double s = m.max_abs();
    const double noise = 16.0 * s * s * std::numeric_limits<double>::epsilon();
    if (drift > kDetDriftTol && drift > 10.0 * noise) m = m * std::pow(d, -1.0 / N);
}

} // namespace

template <int N>
Mat<N> unimodular_pow(const Mat<N>& A, std::int64_t p) {
    if (p < 0) throw std::invalid_argument("unimodular_pow: negative exponent");
    Mat<N> out = Mat<N>::identity();
    if (p <= 64) {
        for (std::int64_t i = 0; i < p; ++i) out = out * A;
    } else {
        Mat<N> base = A;
        while (p > 0) {
            if (p & 1) out = out * base;
            base = base * base;
            renormalize_det(base);
            p >>= 1;
        }
    }
    renormalize_det(out);
    return out;
}

template <int N>
TransferMatrix<N> supercell_tm(const ContinuedFraction& cf, const TransferMatrix<N>& T_p,
                               const TransferMatrix<N>& T_q) {
    if (T_p.omega != T_q.omega)
        throw std::invalid_argument("supercell_tm: element matrices evaluated at different frequencies");
    Mat<N> prev = T_q.m;   // T_{-1}
    Mat<N> cur = T_p.m;    // T_0
    for (auto a : cf.terms) {
        Mat<N> next = prev * unimodular_pow(cur, a);
        renormalize_det(next);
        prev = cur;
        cur = next;
    }
    return {cur, T_p.omega};
}

template <int N>
TransferMatrix<N> supercell_tm_direct(const SturmianWord& word, const TransferMatrix<N>& T_p,
                                      const TransferMatrix<N>& T_q) {
    if (T_p.omega != T_q.omega)
        throw std::invalid_argument("supercell_tm_direct: element matrices evaluated at different frequencies");
    Mat<N> out = Mat<N>::identity();
    for (char c : word.symbols) out = (c == 'p' ? T_p.m : T_q.m) * out;
    return {out, T_p.omega};
}

template Mat<2> unimodular_pow<2>(const Mat<2>&, std::int64_t);
template Mat<4> unimodular_pow<4>(const Mat<4>&, std::int64_t);
template TransferMatrix<2> supercell_tm<2>(const ContinuedFraction&, const TransferMatrix<2>&,
                                           const TransferMatrix<2>&);
template TransferMatrix<4> supercell_tm<4>(const ContinuedFraction&, const TransferMatrix<4>&,
                                           const TransferMatrix<4>&);
template TransferMatrix<2> supercell_tm_direct<2>(const SturmianWord&, const TransferMatrix<2>&,
                                                  const TransferMatrix<2>&);
template TransferMatrix<4> supercell_tm_direct<4>(const SturmianWord&, const TransferMatrix<4>&,
                                                  const TransferMatrix<4>&);

double cos_kl(const TMat2& T) { return 0.5 * T.m.trace(); }

CharCoeffs char_coeffs(const TMat4& T) {
    const double t1 = T.m.trace();
    const Mat<4> T2 = T.m * T.m;
    const double t2 = T2.trace();
    const double t3 = (T2 * T.m).trace();
    CharCoeffs c;
    c.c1 = t1;
    c.c2 = 0.5 * (t1 * t1 - t2);
    c.c3 = (t1 * t1 * t1 - 3.0 * t2 * t1 + 2.0 * t3) / 6.0;
    c.c4 = det<4>(T.m);
    return c;
}

BranchPair cos_kl_branches(const TMat4& T) {
    const CharCoeffs c = char_coeffs(T);
    const double scale = std::max(1.0, std::abs(c.c1));
    // the c3 trace formula cancels terms of size ~s^3 and the determinant
    // terms of ~s^4; below those noise floors a mismatch says nothing about
    // the model
    const double s = T.m.max_abs();
    const double eps = std::numeric_limits<double>::epsilon();
    const double noise3 = 32.0 * eps * s * s * s;
    const double noise4 = 64.0 * eps * s * s * s * s;
    if (std::abs(c.c3 - c.c1) > std::max(kPalindromyTol * scale, 10.0 * noise3) ||
        std::abs(c.c4 - 1.0) > std::max(kPalindromyTol, 10.0 * noise4))
        throw std::domain_error("cos_kl_branches: characteristic polynomial is not palindromic");
    const double t2 = (T.m * T.m).trace();
    const double disc = 2.0 * t2 - c.c1 * c.c1 + 8.0;
    const std::complex<double> root = std::sqrt(std::complex<double>(disc, 0.0));
    return {0.25 * (c.c1 + root), 0.25 * (c.c1 - root)};
}

double chebyshev_u(int r, double x) {
    if (r < -1) throw std::invalid_argument("chebyshev_u: order must be >= -1");
    if (r == -1) return 0.0;
    double um1 = 0.0, u = 1.0;
    for (int k = 0; k < r; ++k) {
        const double next = 2.0 * x * u - um1;
        um1 = u;
        u = next;
    }
    return u;
}

std::vector<double> cheb_z_iterate(const ChebSequenceState& s, int r_max) {
    if (r_max < 1) throw std::invalid_argument("cheb_z_iterate: r_max must be >= 1");
    std::vector<double> z;
    z.reserve(static_cast<std::size_t>(r_max) + 1);
    z.push_back(s.z0);
    z.push_back(s.z1);
    for (int r = 1; r < r_max; ++r) z.push_back(2.0 * s.z_inf * z[r] - z[r - 1]);
    return z;
}

double cheb_z_closed(const ChebSequenceState& s, int r) {
    if (r < 0) throw std::invalid_argument("cheb_z_closed: r must be >= 0");
    if (r == 0) return s.z0;
    return chebyshev_u(r - 1, s.z_inf) * s.z1 - chebyshev_u(r - 2, s.z_inf) * s.z0;
}

AlphaRSequence alpha_r(const ContinuedFraction& prefix, std::int64_t r) {
    if (prefix.empty()) throw std::invalid_argument("alpha_r: prefix needs at least one term");
    if (r < 0) throw std::invalid_argument("alpha_r: r must be >= 0");
    const ConvergentSequence seq = convergents(prefix);
    const int n = seq.order();
    AlphaRSequence out;
    out.prefix = prefix;
    out.r = r;
    out.a = seq.at(n);
    out.b = seq.at(n - 1);
    out.alpha = Rational(seq.num(n) + r * seq.num(n - 1), seq.den(n) + r * seq.den(n - 1));
    return out;
}

double zeta_r(const ContinuedFraction& prefix, std::int64_t r) {
    if (prefix.empty()) throw std::invalid_argument("zeta_r: prefix needs at least one term");
    if (r < 0) throw std::invalid_argument("zeta_r: r must be >= 0");
    const ConvergentSequence seq = convergents(prefix);
    const int n = seq.order();
    const auto dn = static_cast<double>(seq.den(n));
    const auto dn1 = static_cast<double>(seq.den(n - 1));
    return dn / (dn + static_cast<double>(r) * dn1);
}

std::int64_t element_count(const Rational& alpha) { return alpha.num + alpha.den; }

} // namespace sturmian
