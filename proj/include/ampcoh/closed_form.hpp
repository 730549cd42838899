#pragma once

#include <cstddef>
#include <string>

#include "ampcoh/grover_engine.hpp"
#include "ampcoh/state_core.hpp"

namespace ampcoh {

/// Which diagonalizability assumption of the analytic solution failed.
enum class ClosedFormAssumption {
    EtaComponentZero,      ///< some |eta_z| <= 1e-12, rescaling impossible
    MarkedWeightZero,      ///< W_k <= 1e-12
    UnmarkedWeightZero,    ///< W_l <= 1e-12
    GammaBoundary,         ///< gamma mod 2 pi too close to 0
    DegenerateEigenvalues, ///< |lambda+ - lambda-| <= 1e-9
    BetaBoundary,          ///< b ~ 0 (beta mod 2 pi ~ 0)
};

const char* to_string(ClosedFormAssumption a);

/// Raised when the analytic solution does not apply. The failing assumption
/// is carried so callers can fall back to the direct engine.
class ClosedFormUnavailable : public Error {
public:
    ClosedFormUnavailable(ClosedFormAssumption assumption, const std::string& detail);
    ClosedFormAssumption assumption() const { return assumption_; }

private:
    ClosedFormAssumption assumption_;
};

/// Amplitudes split into the marked block (aligned with MarkedSet::marked())
/// and the unmarked block (aligned with MarkedSet::unmarked()).
struct BlockAmplitudes {
    CVector marked;
    CVector unmarked;
};

/// Spectral data of the 2x2 recursion for the weighted averages K'(t), L'(t)
/// of the rescaled amplitudes k'_x = k_x / eta_x, l'_y = l_y / eta_y.
struct ClosedFormSolution {
    MarkedSet marked;
    PureState eta;
    double beta = 0.0;
    double gamma = 0.0;

    double omega = 0.0;  ///< in [0, pi]
    double omega_plus = 0.0;
    double omega_minus = 0.0;
    Complex lambda_plus;
    Complex lambda_minus;
    Complex a;
    Complex b;
    Complex xi1, xi2, xi3, xi4;
    double wk = 0.0;
    double wl = 0.0;
    Complex kbar0;
    Complex lbar0;
    CVector delta_k;  ///< k'_x(0) - K'(0), aligned with marked()
    CVector delta_l;  ///< l'_y(0) - L'(0), aligned with unmarked()
};

/// k'_x(0) = k_x(0)/eta_x and l'_y(0) = l_y(0)/eta_y.
BlockAmplitudes rescale_amplitudes(const PureState& initial, const PureState& eta,
                                   const MarkedSet& m);

/// Throws ClosedFormUnavailable naming the violated assumption.
ClosedFormSolution solve(const GroverConfig& cfg);

/// Rescaled block amplitudes at step t.
BlockAmplitudes rescaled_amplitudes_at(const ClosedFormSolution& sol, std::size_t t);

/// Physical amplitudes k_x(t), l_y(t).
BlockAmplitudes amplitudes_at(const ClosedFormSolution& sol, std::size_t t);

/// Full state vector at step t, assembled in basis order.
CVector state_vector_at(const ClosedFormSolution& sol, std::size_t t);

double success_probability_at(const ClosedFormSolution& sol, std::size_t t);

}  // namespace ampcoh
