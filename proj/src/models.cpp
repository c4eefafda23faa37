#include "sturmian/models.hpp"

#include <cmath>
#include <stdexcept>

namespace sturmian {

double RodElement::wave_speed() const { return std::sqrt(EA / rhoA); }
double RodElement::mu(double omega) const { return omega * l * std::sqrt(rhoA / EA); }

double BeamElement::kappa_b(double omega) const { return omega * std::sqrt(rhoI / EI); }
double BeamElement::kappa_s(double omega) const { return omega * std::sqrt(rhoA / GA); }

TMat2 chain_tm(const ChainElement& e, double omega) {
    if (!(e.m > 0.0) || !(e.K > 0.0)) throw std::invalid_argument("chain_tm: m and K must be positive");
    if (omega < 0.0) throw std::invalid_argument("chain_tm: omega must be >= 0");
    const double mw2 = e.m * omega * omega;
    TMat2 T;
    T.omega = omega;
    T.m(0, 0) = 1.0;
    T.m(0, 1) = 1.0 / e.K;
    T.m(1, 0) = -mw2;
    T.m(1, 1) = 1.0 - mw2 / e.K;
    return T;
}

namespace {

double sinc(double x) {
    if (std::abs(x) < 1e-4) {
        const double x2 = x * x;
        return 1.0 - x2 / 6.0 * (1.0 - x2 / 20.0);
    }
    return std::sin(x) / x;
}

} // namespace

TMat2 rod_tm(const RodElement& e, double omega) {
    if (!(e.EA > 0.0) || !(e.rhoA > 0.0) || !(e.l > 0.0))
        throw std::invalid_argument("rod_tm: EA, rhoA and l must be positive");
    if (omega < 0.0) throw std::invalid_argument("rod_tm: omega must be >= 0");
    const double mu = e.mu(omega);
    TMat2 T;
    T.omega = omega;
    T.m(0, 0) = std::cos(mu);
    T.m(0, 1) = e.l / e.EA * sinc(mu);            // analytic limit l/EA at omega = 0
    T.m(1, 0) = -e.EA / e.l * mu * std::sin(mu);
    T.m(1, 1) = std::cos(mu);
    return T;
}

Mat<2> rod_state_matrix(const RodElement& e, double omega) {
    Mat<2> W;
    W(0, 1) = 1.0 / e.EA;
    W(1, 0) = -omega * omega * e.rhoA;
    return W;
}

Mat<4> beam_state_matrix(const BeamElement& e, double omega) {
    Mat<4> W;
    W(0, 1) = 1.0;
    W(0, 2) = 1.0 / e.GA;
    W(1, 3) = 1.0 / e.EI;
    W(2, 0) = -e.rhoA * omega * omega;
    W(3, 1) = -e.rhoI * omega * omega;
    return W;
}

TMat4 beam_tm(const BeamElement& e, double omega) {
    if (!(e.EI > 0.0) || !(e.GA > 0.0) || !(e.rhoA > 0.0) || !(e.rhoI > 0.0) || !(e.l > 0.0))
        throw std::invalid_argument("beam_tm: all beam properties must be positive");
    if (omega < 0.0) throw std::invalid_argument("beam_tm: omega must be >= 0");
    return {expm_oracle<4>(beam_state_matrix(e, omega), e.l), omega};
}

TMat4 beam_tm_closed_form(const BeamElement& e, double omega) {
    const double kb = e.kappa_b(omega);
    const double ks = e.kappa_s(omega);
    const double d = kb * kb - ks * ks;
    if (omega <= 0.0) throw std::invalid_argument("beam_tm_closed_form: omega must be > 0");
    if (std::abs(d) <= 1e-9 * std::max(kb * kb, ks * ks))
        throw std::domain_error("beam_tm_closed_form: kappa_b = kappa_s is a removable singularity the closed form does not treat");
    const double l = e.l;
    const double cb = std::cos(kb * l), sb = std::sin(kb * l);
    const double cs = std::cos(ks * l), ss = std::sin(ks * l);
    const double w2 = omega * omega;
    TMat4 T;
    T.omega = omega;
    T.m(0, 0) = cs;
    T.m(0, 1) = (kb * sb - ks * ss) / d;
    T.m(0, 2) = ks * ss / (e.rhoA * w2);
    T.m(0, 3) = kb * kb * (cs - cb) / (e.rhoI * w2 * d);
    T.m(1, 1) = cb;
    T.m(1, 3) = kb * sb / (e.rhoI * w2);
    T.m(2, 0) = -e.rhoA * w2 * ss / ks;
    T.m(2, 1) = -e.rhoI * w2 * (cs - cb) / (kb * kb * d);
    T.m(2, 2) = cs;
    T.m(2, 3) = (kb * e.rhoA) / (ks * e.rhoI) * (kb * sb - ks * ss) / d;
    T.m(3, 1) = -e.rhoI * w2 * sb / kb;
    T.m(3, 3) = cb;
    return T;
}

ClosedFormCheck beam_closed_form_check(const BeamElement& e, double omega) {
    ClosedFormCheck check;
    const double kb = e.kappa_b(omega);
    const double ks = e.kappa_s(omega);
    if (omega <= 0.0 || std::abs(kb * kb - ks * ks) <= 1e-9 * std::max(kb * kb, ks * ks)) {
        check.degenerate = true;
        return check;
    }
    const TMat4 exact = beam_tm(e, omega);
    const TMat4 closed = beam_tm_closed_form(e, omega);
    const double scale = std::max(exact.m.max_abs(), 1e-300);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            const double denom = std::max(std::abs(exact.m(i, j)), 1e-3 * scale);
            const double rel = std::abs(exact.m(i, j) - closed.m(i, j)) / denom;
            if (rel > check.max_rel_err) {
                check.max_rel_err = rel;
                check.worst_row = i;
                check.worst_col = j;
            }
        }
    return check;
}

TMat4 spring_tm(const SpringSupport& s) {
    if (s.K < 0.0) throw std::invalid_argument("spring_tm: K must be >= 0");
    TMat4 T;
    T.m = Mat<4>::identity();
    T.m(2, 0) = -s.K;
    return T;
}

double rod_half_trace_closed(double lambda, std::int64_t r, double omega, double l, double c_q) {
    if (!(lambda > 0.0)) throw std::invalid_argument("rod_half_trace_closed: lambda must be positive");
    if (r < 0) throw std::invalid_argument("rod_half_trace_closed: r must be >= 0");
    const double phi = omega * l / c_q;
    const double rr = static_cast<double>(r);
    return (1.0 + lambda) * (1.0 + lambda) / (4.0 * lambda) * std::cos((lambda + rr) / lambda * phi) -
           (1.0 - lambda) * (1.0 - lambda) / (4.0 * lambda) * std::cos((lambda - rr) / lambda * phi);
}

double rod_surrogate_Z(double lambda, double alpha, double omega, double l, double c_q) {
    if (!(lambda > 0.0)) throw std::invalid_argument("rod_surrogate_Z: lambda must be positive");
    if (!(alpha > 0.0)) throw std::invalid_argument("rod_surrogate_Z: alpha must be positive");
    const double phi = omega * l / c_q;
    const double al = alpha * lambda;
    return (1.0 + lambda) * (1.0 + lambda) / (4.0 * lambda) * std::cos((al + 1.0) / al * phi) -
           (1.0 - lambda) * (1.0 - lambda) / (4.0 * lambda) * std::cos((al - 1.0) / al * phi);
}

ModelKind model_kind_from_string(const std::string& s) {
    if (s == "chain") return ModelKind::Chain;
    if (s == "rod") return ModelKind::Rod;
    if (s == "beam") return ModelKind::Beam;
    if (s == "beam_on_supports") return ModelKind::BeamOnSupports;
    throw std::invalid_argument("unknown model kind \"" + s + "\"");
}

std::string to_string(ModelKind k) {
    switch (k) {
        case ModelKind::Chain: return "chain";
        case ModelKind::Rod: return "rod";
        case ModelKind::Beam: return "beam";
        case ModelKind::BeamOnSupports: return "beam_on_supports";
    }
    return "?";
}

namespace {

bool varied_allowed(ModelKind kind, const std::string& f) {
    switch (kind) {
        case ModelKind::Chain: return f == "K" || f == "m";
        case ModelKind::Rod: return f == "EA" || f == "rhoA" || f == "l";
        case ModelKind::Beam: return f == "EI" || f == "GA" || f == "rhoA" || f == "rhoI" || f == "l";
        case ModelKind::BeamOnSupports:
            return f == "K" || f == "l" || f == "EI" || f == "GA" || f == "rhoA" || f == "rhoI";
    }
    return false;
}

} // namespace

void ModelSpec::validate() const {
    if (varied.empty()) throw std::invalid_argument("model spec: missing \"varied\" field");
    if (!varied_allowed(kind, varied))
        throw std::invalid_argument("model spec: field \"" + varied + "\" cannot vary for model " + to_string(kind));
    if (!(theta_p > 0.0) && !(kind == ModelKind::BeamOnSupports && varied == "K" && theta_p >= 0.0))
        throw std::invalid_argument("model spec: theta_p must be positive");
    if (!(theta_q > 0.0) && !(kind == ModelKind::BeamOnSupports && varied == "K" && theta_q >= 0.0))
        throw std::invalid_argument("model spec: theta_q must be positive");
    switch (kind) {
        case ModelKind::Chain:
            if (!(chain.m > 0.0)) throw std::invalid_argument("model spec: m must be positive");
            if (varied != "K" && !(chain.K > 0.0)) throw std::invalid_argument("model spec: K must be positive");
            break;
        case ModelKind::Rod:
            if (varied != "EA" && !(rod.EA > 0.0)) throw std::invalid_argument("model spec: EA must be positive");
            if (varied != "rhoA" && !(rod.rhoA > 0.0)) throw std::invalid_argument("model spec: rhoA must be positive");
            if (varied != "l" && !(rod.l > 0.0)) throw std::invalid_argument("model spec: l must be positive");
            break;
        case ModelKind::Beam:
        case ModelKind::BeamOnSupports:
            if (varied != "EI" && !(beam.EI > 0.0)) throw std::invalid_argument("model spec: EI must be positive");
            if (varied != "GA" && !(beam.GA > 0.0)) throw std::invalid_argument("model spec: GA must be positive");
            if (varied != "rhoA" && !(beam.rhoA > 0.0)) throw std::invalid_argument("model spec: rhoA must be positive");
            if (varied != "rhoI" && !(beam.rhoI > 0.0)) throw std::invalid_argument("model spec: rhoI must be positive");
            if (varied != "l" && !(beam.l > 0.0)) throw std::invalid_argument("model spec: l must be positive");
            if (kind == ModelKind::BeamOnSupports && varied != "K" && support_stiffness < 0.0)
                throw std::invalid_argument("model spec: K must be >= 0");
            break;
    }
}

std::pair<TMat2, TMat2> element_tms_2(const ModelSpec& spec, double omega) {
    if (spec.dim() != 2) throw std::invalid_argument("element_tms_2: model has 4x4 transfer matrices");
    spec.validate();
    if (spec.kind == ModelKind::Chain) {
        ChainElement ep = spec.chain, eq = spec.chain;
        if (spec.varied == "K") {
            ep.K = spec.theta_p;
            eq.K = spec.theta_q;
        } else {
            ep.m = spec.theta_p;
            eq.m = spec.theta_q;
        }
        return {chain_tm(ep, omega), chain_tm(eq, omega)};
    }
    RodElement ep = spec.rod, eq = spec.rod;
    if (spec.varied == "EA") {
        ep.EA = spec.theta_p;
        eq.EA = spec.theta_q;
    } else if (spec.varied == "rhoA") {
        ep.rhoA = spec.theta_p;
        eq.rhoA = spec.theta_q;
    } else {
        ep.l = spec.theta_p;
        eq.l = spec.theta_q;
    }
    return {rod_tm(ep, omega), rod_tm(eq, omega)};
}

std::pair<TMat4, TMat4> element_tms_4(const ModelSpec& spec, double omega) {
    if (spec.dim() != 4) throw std::invalid_argument("element_tms_4: model has 2x2 transfer matrices");
    spec.validate();
    BeamElement ep = spec.beam, eq = spec.beam;
    double Kp = spec.support_stiffness, Kq = spec.support_stiffness;
    if (spec.varied == "EI") {
        ep.EI = spec.theta_p;
        eq.EI = spec.theta_q;
    } else if (spec.varied == "GA") {
        ep.GA = spec.theta_p;
        eq.GA = spec.theta_q;
    } else if (spec.varied == "rhoA") {
        ep.rhoA = spec.theta_p;
        eq.rhoA = spec.theta_q;
    } else if (spec.varied == "rhoI") {
        ep.rhoI = spec.theta_p;
        eq.rhoI = spec.theta_q;
    } else if (spec.varied == "l") {
        ep.l = spec.theta_p;
        eq.l = spec.theta_q;
    } else {   // "K", beam-on-supports
        Kp = spec.theta_p;
        Kq = spec.theta_q;
    }
    TMat4 Tp = beam_tm(ep, omega);
    TMat4 Tq = beam_tm(eq, omega);
    if (spec.kind == ModelKind::BeamOnSupports) {
        // support applied at the element's upstream node: span TM times spring TM
        Tp.m = Tp.m * spring_tm(SpringSupport{Kp}).m;
        Tq.m = Tq.m * spring_tm(SpringSupport{Kq}).m;
    }
    return {Tp, Tq};
}

} // namespace sturmian
