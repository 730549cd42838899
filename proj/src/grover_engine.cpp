#include "ampcoh/grover_engine.hpp"

#include <cmath>
#include <string>

namespace ampcoh {

namespace {

Complex reflection_factor(double beta) { return Complex(1.0, 0.0) - std::polar(1.0, beta); }

template <typename State>
void fill_observables(TrajectoryPoint& point, const State& state, const ObservableFlags& flags) {
    if (flags.c1) point.c1 = relative_entropy_of_coherence(state);
    if (flags.cl1) point.cl1 = l1_coherence(state);
    if (flags.cg) {
        if constexpr (std::is_same_v<State, PureState>) {
            point.cg = geometric_coherence_pure(state);
        } else {
            point.cg = geometric_coherence_mixed(state, flags.cg_options).value;
        }
    }
}

}  // namespace

void GroverConfig::validate() const {
    const auto n = marked.dim();
    if (eta.dim() != n || initial.dim() != n) {
        throw DomainError("GroverConfig: dimensions disagree (marked set " + std::to_string(n) +
                          ", eta " + std::to_string(eta.dim()) + ", initial " +
                          std::to_string(initial.dim()) + ")");
    }
    if (!std::isfinite(beta) || !std::isfinite(gamma)) {
        throw DomainError("GroverConfig: phases must be finite");
    }
}

GroverConfig GroverConfig::original(std::size_t n_dim, const MarkedSet& marked) {
    return GroverConfig{marked, M_PI, M_PI, PureState::uniform(n_dim), PureState::uniform(n_dim)};
}

CMatrix oracle_phase_operator(const MarkedSet& m, double gamma) {
    if (!std::isfinite(gamma)) throw DomainError("oracle_phase_operator: gamma must be finite");
    const auto n = static_cast<Eigen::Index>(m.dim());
    CMatrix j = CMatrix::Identity(n, n);
    const Complex phase = std::polar(1.0, gamma);
    for (auto x : m.marked()) j(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(x)) = phase;
    return j;
}

CMatrix eta_reflection_operator(const PureState& eta, double beta) {
    if (!std::isfinite(beta)) throw DomainError("eta_reflection_operator: beta must be finite");
    const auto n = static_cast<Eigen::Index>(eta.dim());
    const CVector& v = eta.amplitudes();
    return reflection_factor(beta) * (v * v.adjoint()) - CMatrix::Identity(n, n);
}

CMatrix grover_iteration(const GroverConfig& cfg) {
    cfg.validate();
    // Right-multiplying by a diagonal matrix scales the columns.
    CMatrix g = eta_reflection_operator(cfg.eta, cfg.beta);
    const Complex phase = std::polar(1.0, cfg.gamma);
    for (auto x : cfg.marked.marked()) g.col(static_cast<Eigen::Index>(x)) *= phase;
    return g;
}

// ---------- GroverOperator ----------

GroverOperator::GroverOperator(const GroverConfig& cfg)
    : phases_(CVector::Ones(static_cast<Eigen::Index>(cfg.dim()))),
      eta_(cfg.eta.amplitudes()),
      reflect_(reflection_factor(cfg.beta)) {
    cfg.validate();
    const Complex phase = std::polar(1.0, cfg.gamma);
    for (auto x : cfg.marked.marked()) phases_(static_cast<Eigen::Index>(x)) = phase;
    if (cfg.dim() <= kDenseLimit) dense_ = grover_iteration(cfg);
}

CVector GroverOperator::apply(const CVector& psi) const {
    if (dense_) return *dense_ * psi;
    const CVector jpsi = phases_.cwiseProduct(psi);
    return reflect_ * eta_.dot(jpsi) * eta_ - jpsi;
}

CMatrix GroverOperator::conjugate(const CMatrix& rho) const {
    if (dense_) return *dense_ * rho * dense_->adjoint();
    CMatrix left(rho.rows(), rho.cols());
    for (Eigen::Index c = 0; c < rho.cols(); ++c) left.col(c) = apply(rho.col(c));
    // (G L^dagger)^dagger = L G^dagger.
    CMatrix right(rho.rows(), rho.cols());
    const CMatrix left_adj = left.adjoint();
    for (Eigen::Index c = 0; c < rho.cols(); ++c) right.col(c) = apply(left_adj.col(c));
    return right.adjoint();
}

// ---------- trajectories ----------

std::vector<TrajectoryPoint> run_pure(const GroverConfig& cfg, std::size_t t_max,
                                      const ObservableFlags& flags) {
    const GroverOperator op(cfg);
    std::vector<TrajectoryPoint> out;
    out.reserve(t_max + 1);
    CVector psi = cfg.initial.amplitudes();
    for (std::size_t t = 0; t <= t_max; ++t) {
        if (t > 0) psi = op.apply(psi);
        PureState state(psi);
        TrajectoryPoint point{t, state, success_probability(state, cfg.marked), {}, {}, {}};
        fill_observables(point, state, flags);
        out.push_back(std::move(point));
    }
    return out;
}

std::vector<TrajectoryPoint> run_density(const DensityMatrix& rho0, const GroverConfig& cfg,
                                         std::size_t t_max, const ObservableFlags& flags) {
    if (rho0.dim() != cfg.dim()) {
        throw DomainError("run_density: state dimension " + std::to_string(rho0.dim()) +
                          " does not match config dimension " + std::to_string(cfg.dim()));
    }
    const GroverOperator op(cfg);
    std::vector<TrajectoryPoint> out;
    out.reserve(t_max + 1);
    CMatrix rho = rho0.matrix();
    for (std::size_t t = 0; t <= t_max; ++t) {
        if (t > 0) rho = op.conjugate(rho);
        DensityMatrix state(rho);
        TrajectoryPoint point{t, state, success_probability(state, cfg.marked), {}, {}, {}};
        fill_observables(point, state, flags);
        out.push_back(std::move(point));
    }
    return out;
}

}  // namespace ampcoh
