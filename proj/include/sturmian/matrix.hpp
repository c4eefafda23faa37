#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace sturmian {

// Dense fixed-size square matrix, row-major. Only N = 2 and N = 4 are used.
template <int N>
struct Mat {
    std::array<double, N * N> a{};

    double& operator()(int i, int j) { return a[i * N + j]; }
    double operator()(int i, int j) const { return a[i * N + j]; }

    static Mat identity() {
        Mat m;
        for (int i = 0; i < N; ++i) m(i, i) = 1.0;
        return m;
    }

    Mat operator*(const Mat& rhs) const {
        Mat out;
        for (int i = 0; i < N; ++i)
            for (int k = 0; k < N; ++k) {
                const double v = (*this)(i, k);
                if (v == 0.0) continue;
                for (int j = 0; j < N; ++j) out(i, j) += v * rhs(k, j);
            }
        return out;
    }

    Mat operator+(const Mat& rhs) const {
        Mat out;
        for (int i = 0; i < N * N; ++i) out.a[i] = a[i] + rhs.a[i];
        return out;
    }

    Mat operator-(const Mat& rhs) const {
        Mat out;
        for (int i = 0; i < N * N; ++i) out.a[i] = a[i] - rhs.a[i];
        return out;
    }

    Mat operator*(double s) const {
        Mat out;
        for (int i = 0; i < N * N; ++i) out.a[i] = a[i] * s;
        return out;
    }

    double trace() const {
        double t = 0.0;
        for (int i = 0; i < N; ++i) t += (*this)(i, i);
        return t;
    }

    double norm1() const {
        double best = 0.0;
        for (int j = 0; j < N; ++j) {
            double col = 0.0;
            for (int i = 0; i < N; ++i) col += std::abs((*this)(i, j));
            if (col > best) best = col;
        }
        return best;
    }

    double max_abs() const {
        double best = 0.0;
        for (double v : a) best = std::max(best, std::abs(v));
        return best;
    }

    bool finite() const {
        for (double v : a)
            if (!std::isfinite(v)) return false;
        return true;
    }
};

template <int N>
inline Mat<N> operator*(double s, const Mat<N>& m) {
    return m * s;
}

namespace detail {

// Gaussian elimination with partial pivoting; solves A X = B in place.
template <int N>
Mat<N> solve(Mat<N> A, Mat<N> B) {
    for (int c = 0; c < N; ++c) {
        int piv = c;
        for (int r = c + 1; r < N; ++r)
            if (std::abs(A(r, c)) > std::abs(A(piv, c))) piv = r;
        if (A(piv, c) == 0.0) throw std::runtime_error("singular matrix in solve()");
        if (piv != c)
            for (int j = 0; j < N; ++j) {
                std::swap(A(c, j), A(piv, j));
                std::swap(B(c, j), B(piv, j));
            }
        const double d = A(c, c);
        for (int j = 0; j < N; ++j) {
            A(c, j) /= d;
            B(c, j) /= d;
        }
        for (int r = 0; r < N; ++r) {
            if (r == c) continue;
            const double f = A(r, c);
            if (f == 0.0) continue;
            for (int j = 0; j < N; ++j) {
                A(r, j) -= f * A(c, j);
                B(r, j) -= f * B(c, j);
            }
        }
    }
    return B;
}

} // namespace detail

template <int N>
double det(const Mat<N>& m);

template <>
inline double det<2>(const Mat<2>& m) {
    return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
}

template <>
inline double det<4>(const Mat<4>& m) {
    // LU with partial pivoting
    Mat<4> a = m;
    double d = 1.0;
    for (int c = 0; c < 4; ++c) {
        int piv = c;
        for (int r = c + 1; r < 4; ++r)
            if (std::abs(a(r, c)) > std::abs(a(piv, c))) piv = r;
        if (piv != c) {
            for (int j = 0; j < 4; ++j) std::swap(a(c, j), a(piv, j));
            d = -d;
        }
        if (a(c, c) == 0.0) return 0.0;
        d *= a(c, c);
        for (int r = c + 1; r < 4; ++r) {
            const double f = a(r, c) / a(c, c);
            for (int j = c; j < 4; ++j) a(r, j) -= f * a(c, j);
        }
    }
    return d;
}

template <int N>
Mat<N> inverse(const Mat<N>& m) {
    return detail::solve(m, Mat<N>::identity());
}

// Matrix exponential expm(A) by scaling-and-squaring with a [13/13] Pade core.
// Accurate to ~1e-14 relative for the modest norms that arise here.
template <int N>
Mat<N> expm(const Mat<N>& A) {
    if (!A.finite()) throw std::invalid_argument("expm: non-finite matrix entry");
    static constexpr double theta13 = 5.371920351148152;
    static constexpr double b[14] = {
        64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
        1187353796428800.0,  129060195264000.0,   10559470521600.0,
        670442572800.0,      33522128640.0,       1323241920.0,
        40840800.0,          960960.0,            16380.0,
        182.0,               1.0};

    int s = 0;
    const double nrm = A.norm1();
    if (nrm > theta13) s = static_cast<int>(std::ceil(std::log2(nrm / theta13)));
    const Mat<N> As = A * std::ldexp(1.0, -s);

    const Mat<N> I = Mat<N>::identity();
    const Mat<N> A2 = As * As;
    const Mat<N> A4 = A2 * A2;
    const Mat<N> A6 = A4 * A2;

    const Mat<N> U =
        As * (A6 * (A6 * b[13] + A4 * b[11] + A2 * b[9]) + A6 * b[7] + A4 * b[5] + A2 * b[3] + I * b[1]);
    const Mat<N> V =
        A6 * (A6 * b[12] + A4 * b[10] + A2 * b[8]) + A6 * b[6] + A4 * b[4] + A2 * b[2] + I * b[0];

    Mat<N> F = detail::solve<N>(V - U, V + U);
    for (int k = 0; k < s; ++k) F = F * F;
    return F;
}

// All eigenvalues of a dense symmetric n-by-n matrix (row-major), ascending.
// Cyclic Jacobi; plenty for the small Bloch edge problems this library builds.
std::vector<double> symmetric_eigenvalues(std::vector<double> a, std::size_t n);

} // namespace sturmian
