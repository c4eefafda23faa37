#pragma once

#include <complex>
#include <vector>

#include "sturmian/matrix.hpp"
#include "sturmian/rational.hpp"
#include "sturmian/words.hpp"

namespace sturmian {

// Frequency-tagged transfer matrix. Lossless 1-D elements give det = 1.
template <int N>
struct TransferMatrix {
    Mat<N> m;
    double omega = 0.0;
};

using TMat2 = TransferMatrix<2>;
using TMat4 = TransferMatrix<4>;

inline constexpr double kDetDriftTol = 1e-12;

// A^p by repeated multiplication (binary exponentiation above 64), with
// unimodularity renormalisation to stop det drift in long products.
template <int N>
Mat<N> unimodular_pow(const Mat<N>& A, std::int64_t p);

// Supercell matrix from the block recursion  T_k = T_{k-2} T_{k-1}^{a_k},
// seeds T_{-1} = T_q, T_0 = T_p.  Both inputs must share omega.
template <int N>
TransferMatrix<N> supercell_tm(const ContinuedFraction& cf, const TransferMatrix<N>& T_p,
                               const TransferMatrix<N>& T_q);

// Brute-force product over the word, first symbol applied first:
// T(w) = T_{w_N} ... T_{w_1}. Oracle for supercell_tm.
template <int N>
TransferMatrix<N> supercell_tm_direct(const SturmianWord& word, const TransferMatrix<N>& T_p,
                                      const TransferMatrix<N>& T_q);

// 2x2 dispersion: cos(kappa L) = tr(T)/2; admitted when the value lies in [-1, 1].
double cos_kl(const TMat2& T);

struct CharCoeffs {
    double c1, c2, c3, c4;
};

// Coefficients of det(T - lambda I) = l^4 - c1 l^3 + c2 l^2 - c3 l + c4
// via the trace formulas.
CharCoeffs char_coeffs(const TMat4& T);

struct BranchPair {
    std::complex<double> plus, minus;

    bool plus_real(double tol = 1e-9) const { return std::abs(plus.imag()) <= tol; }
    bool minus_real(double tol = 1e-9) const { return std::abs(minus.imag()) <= tol; }
};

inline constexpr double kPalindromyTol = 1e-6;

// Both cos(kappa L) branches of the reduced quadratic for a palindromic 4x4
// transfer matrix. Violations of c3 = c1 or c4 = 1 beyond kPalindromyTol
// (relative) indicate a broken model and throw.
BranchPair cos_kl_branches(const TMat4& T);

// Chebyshev polynomial of the second kind, forward recursion (valid for all x).
double chebyshev_u(int r, double x);

// Half-traces driving the trace map z_{r+1} = 2 z_inf z_r - z_{r-1}:
// z0 = tr[T(a)]/2, z1 = tr[T(a) T(b)]/2, z_inf = tr[T(b)]/2.
struct ChebSequenceState {
    double z0, z1, z_inf;
};

std::vector<double> cheb_z_iterate(const ChebSequenceState& s, int r_max);

// z_r via the closed form z_{r+1} = U_r(z_inf) z_1 - U_{r-1}(z_inf) z_0.
double cheb_z_closed(const ChebSequenceState& s, int r);

// The interpolating family alpha_r = [0; a_1, ..., a_n + r] between
// a = nu_n/delta_n and b = nu_{n-1}/delta_{n-1}.
struct AlphaRSequence {
    ContinuedFraction prefix;
    std::int64_t r = 0;
    Rational alpha;      // (nu_n + r nu_{n-1}) / (delta_n + r delta_{n-1})
    Rational a, b;
};

AlphaRSequence alpha_r(const ContinuedFraction& prefix, std::int64_t r);

// Normalised distance zeta_r = (alpha_r - b)/(a - b) = delta_n/(delta_n + r delta_{n-1}).
double zeta_r(const ContinuedFraction& prefix, std::int64_t r);

// Element count N(alpha) = nu + delta of the supercell.
std::int64_t element_count(const Rational& alpha);

} // namespace sturmian
