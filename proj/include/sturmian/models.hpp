#pragma once

#include <string>
#include <utility>

#include "sturmian/tmm.hpp"

namespace sturmian {

// Spring-mass chain element: one linear spring followed by one lumped mass.
struct ChainElement {
    double m = 1.0;   // kg
    double K = 1.0;   // N/m
};

// Straight rod element carrying compressional waves.
struct RodElement {
    double EA = 1.0;     // N
    double rhoA = 1.0;   // kg/m
    double l = 1.0;      // m

    double wave_speed() const;            // sqrt(EA/rhoA)
    double mu(double omega) const;        // omega * l / c
};

// Timoshenko beam element (bending + shear + rotational inertia).
struct BeamElement {
    double EI = 1.0;     // N m^2
    double GA = 1.0;     // N
    double rhoA = 1.0;   // kg/m
    double rhoI = 1.0;   // kg m
    double l = 1.0;      // m

    double kappa_b(double omega) const;   // omega sqrt(rhoI/EI)
    double kappa_s(double omega) const;   // omega sqrt(rhoA/GA)
};

// Translational point support under a beam node.
struct SpringSupport {
    double K = 0.0;   // N/m, 0 = no support
};

TMat2 chain_tm(const ChainElement& e, double omega);
TMat2 rod_tm(const RodElement& e, double omega);

// State (W, phi, V, M); always evaluated through the matrix exponential.
TMat4 beam_tm(const BeamElement& e, double omega);

// Closed-form element matrix kept as a cross-check only; two
// of its entries disagree with exp(W l) (see beam_closed_form_check).
TMat4 beam_tm_closed_form(const BeamElement& e, double omega);

struct ClosedFormCheck {
    double max_rel_err = 0.0;
    int worst_row = -1, worst_col = -1;
    bool degenerate = false;    // kappa_b ~ kappa_s: closed form skipped
};

// Entrywise relative discrepancy of the closed form against exp(W l).
ClosedFormCheck beam_closed_form_check(const BeamElement& e, double omega);

TMat4 spring_tm(const SpringSupport& s);

// exp(W * l); the authoritative evaluator for all element matrices here.
template <int N>
Mat<N> expm_oracle(const Mat<N>& W, double l) {
    return expm<N>(W * l);
}

Mat<2> rod_state_matrix(const RodElement& e, double omega);
Mat<4> beam_state_matrix(const BeamElement& e, double omega);

// Half trace of T_q T_p^r for the rod family in the two-cosine closed form;
// lambda = sqrt(EA_p/EA_q), phase argument omega*l/c_q.
double rod_half_trace_closed(double lambda, std::int64_t r, double omega, double l, double c_q);

// Analytical surrogate Z(alpha, omega): the closed form with r replaced by
// 1/alpha. Reproduces only the gross stopband pattern over half a period.
double rod_surrogate_Z(double lambda, double alpha, double omega, double l, double c_q);

enum class ModelKind { Chain, Rod, Beam, BeamOnSupports };

ModelKind model_kind_from_string(const std::string& s);
std::string to_string(ModelKind k);

// A waveguide description: one base element, the name of the single field
// that follows the binary Sturmian pattern, and its two values.
struct ModelSpec {
    ModelKind kind = ModelKind::Chain;
    ChainElement chain;
    RodElement rod;
    BeamElement beam;
    double support_stiffness = 0.0;   // beam-on-supports only
    std::string varied;               // field name taking theta_p / theta_q
    double theta_p = 1.0;
    double theta_q = 1.0;

    int dim() const { return (kind == ModelKind::Chain || kind == ModelKind::Rod) ? 2 : 4; }
    void validate() const;            // throws std::invalid_argument with the offending field
};

// Element transfer matrices with the varied field set to theta_p / theta_q.
std::pair<TMat2, TMat2> element_tms_2(const ModelSpec& spec, double omega);
std::pair<TMat4, TMat4> element_tms_4(const ModelSpec& spec, double omega);

} // namespace sturmian
