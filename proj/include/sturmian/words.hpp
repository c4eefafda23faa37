#pragma once

#include <string>
#include <vector>

#include "sturmian/rational.hpp"

namespace sturmian {

// A Sturmian block: symbols over {p, q} plus the continued fraction that
// generated it. length = nu + delta, with nu q's and delta p's.
struct SturmianWord {
    std::string symbols;
    ContinuedFraction source;

    std::size_t size() const { return symbols.size(); }
    std::size_t p_count() const;
    std::size_t q_count() const;
};

// Every intermediate block B_{-1} .. B_n of the recursion together with the
// symbol counts N_k.
struct BlockHistory {
    std::vector<std::string> blocks;        // index k+1 holds B_k, starting at B_{-1}
    std::vector<std::int64_t> lengths;      // N_k, same indexing

    const std::string& block(int k) const { return blocks.at(static_cast<std::size_t>(k + 1)); }
    std::int64_t length(int k) const { return lengths.at(static_cast<std::size_t>(k + 1)); }
    int order() const { return static_cast<int>(blocks.size()) - 2; }
};

// Rectangle-tiling data for the geometric construction: basis vectors
// e = (v, theta_p), f = (-u, theta_q) and the recursive fan g_k.
struct TilingGeometry {
    std::int64_t u = 1, v = 0;
    double theta_p = 1.0, theta_q = 1.0;
    struct Vec {
        std::int64_t x;      // horizontal components stay integer-exact
        double y;
    };
    Vec e{}, f{};
    std::vector<Vec> g;      // index k+1 holds g_k, starting at g_{-1}

    const Vec& gk(int k) const { return g.at(static_cast<std::size_t>(k + 1)); }
    int order() const { return static_cast<int>(g.size()) - 2; }
};

// Per-element parameter values Theta(j) in {theta_p, theta_q}.
struct ParameterTrack {
    std::vector<double> values;
};

// B_n from the block recursion B_k = B_{k-1}^{a_k} B_{k-2}, seeds q, p.
// The empty fraction (alpha = 0) yields the one-element cell "p"; [1] yields "pq".
SturmianWord sturmian_block(const ContinuedFraction& cf);

BlockHistory block_history(const ContinuedFraction& cf);

// Independent geometric construction: the gap pattern cut by a vertical line
// out of the two-rectangle tiling spanned by e and f. Agrees with
// sturmian_block up to cyclic rotation.
SturmianWord cutting_sequence(const Rational& alpha, double theta_p, double theta_q);

ParameterTrack assign_parameters(const SturmianWord& word, double theta_p, double theta_q);

// Sum of Theta(j) over the block; equals delta*theta_p + nu*theta_q and
// N (theta_p + alpha theta_q) / (1 + alpha).
double parameter_sum(const SturmianWord& word, double theta_p, double theta_q);

TilingGeometry g_vectors(const ContinuedFraction& cf, double theta_p, double theta_q);

// True when a is a cyclic rotation of b.
bool cyclically_equal(const std::string& a, const std::string& b);

} // namespace sturmian
