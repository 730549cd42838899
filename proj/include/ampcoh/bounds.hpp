#pragma once

#include <cstddef>
#include <optional>

#include "ampcoh/coherence.hpp"
#include "ampcoh/state_core.hpp"

namespace ampcoh {

enum class Quantity { Cg, C1, Cl1 };
enum class OmegaBranch { Marked, Unmarked };

const char* to_string(Quantity q);
const char* to_string(OmegaBranch b);

/// A two-sided estimate value in [lower, upper] with signed slacks
/// (value - lower, upper - value). Negative slack means a violation.
struct BoundReport {
    Quantity quantity = Quantity::C1;
    double value = 0.0;
    double lower = 0.0;
    double upper = 0.0;
    /// Cg only: whether P^2 + (1-P)^2 <= tr(rho^2), i.e. the lower bound is non-trivial.
    bool lower_active = false;
    /// C1 only: branch used for Omega.
    OmegaBranch omega_branch = OmegaBranch::Marked;
    /// C1 only: the two lower variants, h(P) - S and -ln(Omega) - S.
    double lower_binary = 0.0;
    double lower_omega = 0.0;
    double slack_lower = 0.0;
    double slack_upper = 0.0;
};

/// Lower side of the geometric-coherence estimate in terms of P_suc and tr(rho^2).
/// Returns the value unclamped; it is trivial (<= 0) when the activity
/// condition fails.
double cg_lower_from_success(double p_suc, double purity, std::size_t n);
/// 1 - P_suc / M.
double cg_upper_from_success(double p_suc, std::size_t m);

/// P ln(M/P) + (1-P) ln((N-M)/(1-P)) - S with 0 ln(.) = 0.
double c1_upper_from_success(double p_suc, double entropy, std::size_t m, std::size_t n);
/// h(P) - S.
double c1_lower_binary(double p_suc, double entropy);
/// -ln(Omega) - S.
double c1_lower_omega(double omega, double entropy);

/// Omega branch: marked if any maximizer of p(x) is marked (ties within 1e-12).
OmegaBranch omega_branch(const RVector& p, const MarkedSet& m);

/// Two-sided estimate of the geometric coherence. `cg` may carry a
/// precomputed value; otherwise the analytic pure-state formula is used for
/// rank-one inputs and the optimizer otherwise.
BoundReport prop1_bounds(const DensityMatrix& rho, const MarkedSet& m,
                         std::optional<double> cg = std::nullopt);
BoundReport prop1_bounds(const PureState& psi, const MarkedSet& m);

struct FidelityBoundCheck {
    bool holds = false;
    double slack = 0.0;         ///< M * max F - P_suc
    double max_fidelity = 0.0;  ///< max over incoherent states
};

/// Checks P_suc <= M * max_{delta} F(delta, rho).
FidelityBoundCheck fidelity_success_bound(const DensityMatrix& rho, const MarkedSet& m,
                                          std::optional<double> max_fidelity = std::nullopt);
FidelityBoundCheck fidelity_success_bound(const PureState& psi, const MarkedSet& m);

/// Two-sided estimate of the relative entropy of coherence; lower is the
/// larger of the binary-entropy and Omega variants.
BoundReport prop2_bounds(const DensityMatrix& rho, const MarkedSet& m);
BoundReport prop2_bounds(const PureState& psi, const MarkedSet& m);

/// l1 coherence of a boxcar pure state: (sqrt(M P) + sqrt((N-M)(1-P)))^2 - 1.
double l1_boxcar(double p_suc, std::size_t m, std::size_t n);

/// Companion of the boxcar formula: C_l1 + N P_suc against N.
struct BoxcarDiagnostic {
    double lhs = 0.0;  ///< C_l1 + N P
    double rhs = 0.0;  ///< N
    double relative_gap() const { return (lhs - rhs) / rhs; }
};
BoxcarDiagnostic l1_boxcar_diagnostic(double p_suc, std::size_t m, std::size_t n);

/// True if |c_x| is constant over M and over its complement (within tol).
bool is_boxcar(const PureState& psi, const MarkedSet& m, double tol = 1e-10);

}  // namespace ampcoh
