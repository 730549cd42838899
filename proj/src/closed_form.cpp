#include "ampcoh/closed_form.hpp"

#include <algorithm>
#include <cmath>

namespace ampcoh {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

double wrap_2pi(double angle) {
    double r = std::fmod(angle, kTwoPi);
    return r < 0.0 ? r + kTwoPi : r;
}

Complex eta_at(const PureState& eta, std::size_t i) { return eta[i]; }

}  // namespace

const char* to_string(ClosedFormAssumption a) {
    switch (a) {
        case ClosedFormAssumption::EtaComponentZero: return "eta component zero";
        case ClosedFormAssumption::MarkedWeightZero: return "W_k ~ 0";
        case ClosedFormAssumption::UnmarkedWeightZero: return "W_l ~ 0";
        case ClosedFormAssumption::GammaBoundary: return "gamma mod 2pi ~ 0";
        case ClosedFormAssumption::DegenerateEigenvalues: return "degenerate eigenvalues";
        case ClosedFormAssumption::BetaBoundary: return "b ~ 0 guard";
    }
    return "unknown";
}

ClosedFormUnavailable::ClosedFormUnavailable(ClosedFormAssumption assumption,
                                             const std::string& detail)
    : Error(std::string("closed form unavailable (") + to_string(assumption) + "): " + detail),
      assumption_(assumption) {}

BlockAmplitudes rescale_amplitudes(const PureState& initial, const PureState& eta,
                                   const MarkedSet& m) {
    if (initial.dim() != m.dim() || eta.dim() != m.dim()) {
        throw DomainError("rescale_amplitudes: dimension mismatch");
    }
    for (std::size_t z = 0; z < eta.dim(); ++z) {
        if (std::abs(eta[z]) <= 1e-12) {
            throw ClosedFormUnavailable(ClosedFormAssumption::EtaComponentZero,
                                        "|eta_" + std::to_string(z) + "| <= 1e-12");
        }
    }
    BlockAmplitudes out{CVector(static_cast<Eigen::Index>(m.count())),
                        CVector(static_cast<Eigen::Index>(m.unmarked_count()))};
    for (std::size_t i = 0; i < m.count(); ++i) {
        const auto x = m.marked()[i];
        out.marked(static_cast<Eigen::Index>(i)) = initial[x] / eta_at(eta, x);
    }
    for (std::size_t i = 0; i < m.unmarked_count(); ++i) {
        const auto y = m.unmarked()[i];
        out.unmarked(static_cast<Eigen::Index>(i)) = initial[y] / eta_at(eta, y);
    }
    return out;
}

ClosedFormSolution solve(const GroverConfig& cfg) {
    cfg.validate();
    const MarkedSet& m = cfg.marked;
    const BlockAmplitudes rescaled = rescale_amplitudes(cfg.initial, cfg.eta, m);

    RVector wk_items(static_cast<Eigen::Index>(m.count()));
    RVector wl_items(static_cast<Eigen::Index>(m.unmarked_count()));
    for (std::size_t i = 0; i < m.count(); ++i) {
        wk_items(static_cast<Eigen::Index>(i)) = std::norm(cfg.eta[m.marked()[i]]);
    }
    for (std::size_t i = 0; i < m.unmarked_count(); ++i) {
        wl_items(static_cast<Eigen::Index>(i)) = std::norm(cfg.eta[m.unmarked()[i]]);
    }
    const double wk = wk_items.sum();
    const double wl = wl_items.sum();
    if (wk <= 1e-12) {
        throw ClosedFormUnavailable(ClosedFormAssumption::MarkedWeightZero, "W_k = " + std::to_string(wk));
    }
    if (wl <= 1e-12) {
        throw ClosedFormUnavailable(ClosedFormAssumption::UnmarkedWeightZero, "W_l = " + std::to_string(wl));
    }
    const double g = wrap_2pi(cfg.gamma);
    if (g <= 1e-9 || g >= kTwoPi - 1e-9) {
        throw ClosedFormUnavailable(ClosedFormAssumption::GammaBoundary,
                                    "gamma = " + std::to_string(cfg.gamma) + " is 0 mod 2pi");
    }

    const Complex reflect = Complex(1.0, 0.0) - std::polar(1.0, cfg.beta);
    const Complex e_gamma = std::polar(1.0, cfg.gamma);
    const Complex a = reflect * e_gamma * wk - e_gamma;
    const Complex b = reflect * wl;
    if (std::abs(reflect) <= 1e-9) {
        throw ClosedFormUnavailable(ClosedFormAssumption::BetaBoundary,
                                    "beta = " + std::to_string(cfg.beta) + " is 0 mod 2pi, b = 0");
    }

    const double half_sum = 0.5 * (cfg.beta + cfg.gamma);
    const double half_diff = 0.5 * (cfg.beta - cfg.gamma);
    const double cos_omega = std::clamp(wk * std::cos(half_sum) + wl * std::cos(half_diff), -1.0, 1.0);
    const double omega = std::acos(cos_omega);
    const double omega_plus = M_PI + half_sum + omega;
    const double omega_minus = M_PI + half_sum - omega;
    const Complex lambda_plus = std::polar(1.0, omega_plus);
    const Complex lambda_minus = std::polar(1.0, omega_minus);
    if (std::abs(lambda_plus - lambda_minus) <= 1e-9) {
        throw ClosedFormUnavailable(ClosedFormAssumption::DegenerateEigenvalues,
                                    "|lambda+ - lambda-| <= 1e-9 (omega = " + std::to_string(omega) + ")");
    }

    const Complex kbar0 = wk_items.cast<Complex>().dot(rescaled.marked) / wk;
    const Complex lbar0 = wl_items.cast<Complex>().dot(rescaled.unmarked) / wl;
    const Complex denom = lambda_minus - lambda_plus;
    const Complex xi1 = ((lambda_minus - a) * kbar0 - b * lbar0) / denom;
    const Complex xi2 = ((lambda_plus - a) * kbar0 - b * lbar0) / denom;
    const Complex xi3 = (lambda_plus - a) / b * xi1;
    const Complex xi4 = (lambda_minus - a) / b * xi2;

    CVector delta_k = rescaled.marked.array() - kbar0;
    CVector delta_l = rescaled.unmarked.array() - lbar0;

    return ClosedFormSolution{m,
                              cfg.eta,
                              cfg.beta,
                              cfg.gamma,
                              omega,
                              omega_plus,
                              omega_minus,
                              lambda_plus,
                              lambda_minus,
                              a,
                              b,
                              xi1,
                              xi2,
                              xi3,
                              xi4,
                              wk,
                              wl,
                              kbar0,
                              lbar0,
                              std::move(delta_k),
                              std::move(delta_l)};
}

BlockAmplitudes rescaled_amplitudes_at(const ClosedFormSolution& sol, std::size_t t) {
    const double tt = static_cast<double>(t);
    const Complex ep = std::polar(1.0, wrap_2pi(sol.omega_plus) * tt);
    const Complex em = std::polar(1.0, wrap_2pi(sol.omega_minus) * tt);
    const Complex kbar = sol.xi1 * ep - sol.xi2 * em;
    const Complex lbar = sol.xi3 * ep - sol.xi4 * em;
    const double sign = (t % 2 == 0) ? 1.0 : -1.0;
    const Complex marked_factor = sign * std::polar(1.0, wrap_2pi(sol.gamma) * tt);

    BlockAmplitudes out{CVector(sol.delta_k.size()), CVector(sol.delta_l.size())};
    out.marked = (marked_factor * sol.delta_k).array() + kbar;
    out.unmarked = (sign * sol.delta_l).array() + lbar;
    return out;
}

BlockAmplitudes amplitudes_at(const ClosedFormSolution& sol, std::size_t t) {
    BlockAmplitudes out = rescaled_amplitudes_at(sol, t);
    const auto& m = sol.marked;
    for (std::size_t i = 0; i < m.count(); ++i) {
        out.marked(static_cast<Eigen::Index>(i)) *= sol.eta[m.marked()[i]];
    }
    for (std::size_t i = 0; i < m.unmarked_count(); ++i) {
        out.unmarked(static_cast<Eigen::Index>(i)) *= sol.eta[m.unmarked()[i]];
    }
    return out;
}

CVector state_vector_at(const ClosedFormSolution& sol, std::size_t t) {
    const BlockAmplitudes blocks = amplitudes_at(sol, t);
    const auto& m = sol.marked;
    CVector psi(static_cast<Eigen::Index>(m.dim()));
    for (std::size_t i = 0; i < m.count(); ++i) {
        psi(static_cast<Eigen::Index>(m.marked()[i])) = blocks.marked(static_cast<Eigen::Index>(i));
    }
    for (std::size_t i = 0; i < m.unmarked_count(); ++i) {
        psi(static_cast<Eigen::Index>(m.unmarked()[i])) = blocks.unmarked(static_cast<Eigen::Index>(i));
    }
    return psi;
}

double success_probability_at(const ClosedFormSolution& sol, std::size_t t) {
    return amplitudes_at(sol, t).marked.squaredNorm();
}

}  // namespace ampcoh
