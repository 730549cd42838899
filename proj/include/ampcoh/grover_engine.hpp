#pragma once

#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

#include "ampcoh/coherence.hpp"
#include "ampcoh/state_core.hpp"

namespace ampcoh {

/// Everything that defines an amplification process: the marked set, the
/// two phases and |eta> = U|s>, plus the initial register state.
struct GroverConfig {
    MarkedSet marked;
    double beta = 0.0;
    double gamma = 0.0;
    PureState eta;
    PureState initial;

    std::size_t dim() const { return marked.dim(); }
    /// Throws DomainError if dimensions disagree or a phase is not finite.
    void validate() const;

    /// beta = gamma = pi, eta and the initial state uniform.
    static GroverConfig original(std::size_t n_dim, const MarkedSet& marked);
};

/// Selects which coherence quantifiers a trajectory records.
struct ObservableFlags {
    bool c1 = true;
    bool cl1 = true;
    /// Analytic for pure states; for density matrices this runs the
    /// optimizer and is off unless requested.
    bool cg = false;
    GeometricOptions cg_options{};

    static ObservableFlags all() { return {true, true, true, {}}; }
    static ObservableFlags none() { return {false, false, false, {}}; }
};

struct TrajectoryPoint {
    std::size_t t = 0;
    std::variant<PureState, DensityMatrix> state;
    double p_suc = 0.0;
    std::optional<double> c1;
    std::optional<double> cg;
    std::optional<double> cl1;
};

/// J_f(gamma): e^{i gamma} on marked indices, 1 elsewhere.
CMatrix oracle_phase_operator(const MarkedSet& m, double gamma);

/// (1 - e^{i beta}) |eta><eta| - I, i.e. -U J_s(beta) U^dagger.
CMatrix eta_reflection_operator(const PureState& eta, double beta);

/// G = eta_reflection_operator(eta, beta) * oracle_phase_operator(M, gamma).
CMatrix grover_iteration(const GroverConfig& cfg);

/// Applies G to state vectors. Stored densely up to kDenseLimit, above that
/// as its diagonal and rank-one factors.
class GroverOperator {
public:
    static constexpr std::size_t kDenseLimit = 1024;

    explicit GroverOperator(const GroverConfig& cfg);

    std::size_t dim() const { return static_cast<std::size_t>(phases_.size()); }
    bool dense() const { return dense_.has_value(); }

    CVector apply(const CVector& psi) const;
    /// G rho G^dagger.
    CMatrix conjugate(const CMatrix& rho) const;

private:
    CVector phases_;  // diagonal of J_f(gamma)
    CVector eta_;
    Complex reflect_ = 0.0;  // 1 - e^{i beta}
    std::optional<CMatrix> dense_;
};

/// G^t |initial> and its observables for t = 0..t_max.
std::vector<TrajectoryPoint> run_pure(const GroverConfig& cfg, std::size_t t_max,
                                      const ObservableFlags& flags = ObservableFlags::all());

/// G^t rho0 (G^dagger)^t for t = 0..t_max.
std::vector<TrajectoryPoint> run_density(const DensityMatrix& rho0, const GroverConfig& cfg,
                                         std::size_t t_max,
                                         const ObservableFlags& flags = {});

}  // namespace ampcoh
