#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ampcoh/bounds.hpp"
#include "ampcoh/grover_engine.hpp"
#include "ampcoh/state_core.hpp"

namespace ampcoh {

enum class ScenarioKind { Original, Consistent, Inconsistent, MixedFixedPoint };

const char* to_string(ScenarioKind k);
/// Accepts "original", "consistent", "inconsistent", "mixed" / "mixed-fixed-point".
ScenarioKind scenario_kind_from_string(const std::string& s);

/// Parameters of one analytic scenario family. The marked set is always
/// {0, ..., m-1}.
struct ScenarioSpec {
    ScenarioKind kind = ScenarioKind::Original;
    std::size_t n = 16;
    std::size_t m = 2;
    double m_eta = 0.0;  ///< Consistent only
    double alpha = 0.0;  ///< Inconsistent only, in [0, 1)
    double theta = 0.0;  ///< MixedFixedPoint only, in [0, 1]
    std::size_t t_max = 40;

    /// Throws InvalidScenario naming the violated invariant.
    void validate() const;
    MarkedSet marked_set() const { return MarkedSet::first(n, m); }
};

/// Both integers of floor/ceil((pi - omega) / (2 omega_eta)) and whichever
/// gives the larger success probability.
struct OptimalTimes {
    std::size_t floor_time = 0;
    std::size_t ceil_time = 0;
    std::size_t best = 0;
    double continuous = 0.0;
};

/// Analytic time series of a scenario, one entry per t = 0..t_max.
struct ScenarioCurve {
    std::vector<std::size_t> t;
    std::vector<double> p_suc;
    std::vector<double> c1;
    std::vector<double> c1_lower;
    std::vector<double> c1_upper;
    std::vector<double> cg;
    std::vector<double> cg_lower;
    std::vector<double> cg_upper;
    std::vector<OmegaBranch> omega_branch;
    std::optional<OptimalTimes> optimal_times;
    /// MixedFixedPoint: max over incoherent delta of ||sqrt(rho) sqrt(delta)||_1 at t = 0.
    std::optional<double> max_incoherent_overlap;

    std::size_t size() const { return t.size(); }
};

ScenarioCurve original_curve(const ScenarioSpec& spec);
ScenarioCurve consistent_curve(const ScenarioSpec& spec);
ScenarioCurve inconsistent_curve(const ScenarioSpec& spec);
/// rho(theta) evolved under the original iteration. Constant in t only for
/// theta = 1/2; otherwise P_suc(t) = theta cos^2(omega t) + (1 - theta) sin^2(omega t).
ScenarioCurve mixed_fixed_point(const ScenarioSpec& spec);
/// Dispatches on spec.kind.
ScenarioCurve scenario_curve(const ScenarioSpec& spec);

/// The GroverConfig whose direct simulation the curve describes (pure kinds),
/// or the original G0 configuration for MixedFixedPoint.
GroverConfig scenario_config(const ScenarioSpec& spec);

/// |eta> of the consistent family: sqrt(M_eta/(M N)) on marked items,
/// sqrt((N - M_eta)/((N - M) N)) elsewhere.
PureState consistent_eta(std::size_t n, std::size_t m, double m_eta);
/// |eta> of the inconsistent family: sqrt((1 + alpha)/N) on the lower-index
/// half of each of M and its complement, sqrt((1 - alpha)/N) on the rest.
PureState inconsistent_eta(std::size_t n, std::size_t m, double alpha);
/// (1 - theta)|nu><nu| + theta|mu><mu| with |mu>, |nu> the uniform
/// superpositions over M and its complement.
DensityMatrix fixed_point_state(std::size_t n, std::size_t m, double theta);

/// floor/ceil((pi - omega)/(2 omega_eta)) with sin^2(omega/2) = M/N and
/// sin^2(omega_eta/2) = M_eta/N.
OptimalTimes consistent_optimal_times(std::size_t n, std::size_t m, double m_eta);

}  // namespace ampcoh
