#include "ampcoh/scenarios.hpp"

#include <algorithm>
#include <cmath>

namespace ampcoh {

namespace {

// -p ln(p / count), zero at p = 0.
double block_entropy(double p, double count) {
    return p > kEigenFloor ? -p * std::log(p / count) : 0.0;
}

double half_angle(std::size_t n, double weight) {
    return 2.0 * std::asin(std::sqrt(weight / static_cast<double>(n)));
}

void push_bounds(ScenarioCurve& c, std::size_t n, std::size_t m, double p, double purity,
                 double entropy, OmegaBranch branch) {
    const double omega = branch == OmegaBranch::Marked ? p : 1.0 - p;
    c.c1_lower.push_back(std::max(c1_lower_binary(p, entropy), c1_lower_omega(omega, entropy)));
    c.c1_upper.push_back(c1_upper_from_success(p, entropy, m, n));
    c.cg_lower.push_back(cg_lower_from_success(p, purity, n));
    c.cg_upper.push_back(cg_upper_from_success(p, m));
    c.omega_branch.push_back(branch);
}

// Pure boxcar state with P on M and 1 - P on the complement, as in the
// original and consistent families.
void push_balanced_point(ScenarioCurve& c, std::size_t t, std::size_t n, std::size_t m, double p) {
    const double md = static_cast<double>(m);
    const double rest = static_cast<double>(n - m);
    const double per_marked = p / md;
    const double per_unmarked = (1.0 - p) / rest;
    const bool marked_dominates = per_marked >= per_unmarked - 1e-12;
    c.t.push_back(t);
    c.p_suc.push_back(p);
    c.c1.push_back(block_entropy(p, md) + block_entropy(1.0 - p, rest));
    c.cg.push_back(marked_dominates ? 1.0 - p / md : 1.0 - (1.0 - p) / rest);
    push_bounds(c, n, m, p, 1.0, 0.0, marked_dominates ? OmegaBranch::Marked : OmegaBranch::Unmarked);
}

void require_kind(const ScenarioSpec& spec, ScenarioKind kind) {
    spec.validate();
    if (spec.kind != kind) {
        throw InvalidScenario(std::string("expected scenario kind ") + to_string(kind) + ", got " +
                              to_string(spec.kind));
    }
}

}  // namespace

const char* to_string(ScenarioKind k) {
    switch (k) {
        case ScenarioKind::Original: return "original";
        case ScenarioKind::Consistent: return "consistent";
        case ScenarioKind::Inconsistent: return "inconsistent";
        case ScenarioKind::MixedFixedPoint: return "mixed";
    }
    return "?";
}

ScenarioKind scenario_kind_from_string(const std::string& s) {
    if (s == "original") return ScenarioKind::Original;
    if (s == "consistent") return ScenarioKind::Consistent;
    if (s == "inconsistent") return ScenarioKind::Inconsistent;
    if (s == "mixed" || s == "mixed-fixed-point") return ScenarioKind::MixedFixedPoint;
    throw InvalidScenario("unknown scenario kind '" + s + "'");
}

void ScenarioSpec::validate() const {
    if (n < 2) throw InvalidScenario("N must be at least 2");
    if (m < 1 || m >= n) throw InvalidScenario("M must satisfy 1 <= M < N");
    switch (kind) {
        case ScenarioKind::Original: break;
        case ScenarioKind::Consistent:
            if (!(m_eta > 0.0 && m_eta < static_cast<double>(n))) {
                throw InvalidScenario("consistent scenario requires 0 < M_eta < N");
            }
            break;
        case ScenarioKind::Inconsistent:
            if (!(alpha >= 0.0 && alpha < 1.0)) {
                throw InvalidScenario("inconsistent scenario requires alpha in [0, 1)");
            }
            if (m % 2 != 0) throw InvalidScenario("inconsistent scenario requires even M");
            if ((n - m) % 2 != 0) throw InvalidScenario("inconsistent scenario requires even N - M");
            break;
        case ScenarioKind::MixedFixedPoint:
            if (!(theta >= 0.0 && theta <= 1.0)) {
                throw InvalidScenario("mixed fixed-point scenario requires theta in [0, 1]");
            }
            break;
    }
}

OptimalTimes consistent_optimal_times(std::size_t n, std::size_t m, double m_eta) {
    const double omega = half_angle(n, static_cast<double>(m));
    const double omega_eta = half_angle(n, m_eta);
    const double tc = (M_PI - omega) / (2.0 * omega_eta);
    OptimalTimes out;
    out.continuous = tc;
    out.floor_time = static_cast<std::size_t>(std::floor(tc));
    out.ceil_time = static_cast<std::size_t>(std::ceil(tc));
    auto p_at = [&](std::size_t t) {
        const double s = std::sin(omega_eta * static_cast<double>(t) + 0.5 * omega);
        return s * s;
    };
    out.best = p_at(out.ceil_time) > p_at(out.floor_time) ? out.ceil_time : out.floor_time;
    return out;
}

ScenarioCurve original_curve(const ScenarioSpec& spec) {
    require_kind(spec, ScenarioKind::Original);
    const double omega = half_angle(spec.n, static_cast<double>(spec.m));
    ScenarioCurve c;
    for (std::size_t t = 0; t <= spec.t_max; ++t) {
        const double s = std::sin(omega * (static_cast<double>(t) + 0.5));
        push_balanced_point(c, t, spec.n, spec.m, s * s);
    }
    c.optimal_times = consistent_optimal_times(spec.n, spec.m, static_cast<double>(spec.m));
    return c;
}

ScenarioCurve consistent_curve(const ScenarioSpec& spec) {
    require_kind(spec, ScenarioKind::Consistent);
    const double omega = half_angle(spec.n, static_cast<double>(spec.m));
    const double omega_eta = half_angle(spec.n, spec.m_eta);
    ScenarioCurve c;
    for (std::size_t t = 0; t <= spec.t_max; ++t) {
        const double s = std::sin(omega_eta * static_cast<double>(t) + 0.5 * omega);
        push_balanced_point(c, t, spec.n, spec.m, s * s);
    }
    c.optimal_times = consistent_optimal_times(spec.n, spec.m, spec.m_eta);
    return c;
}

ScenarioCurve inconsistent_curve(const ScenarioSpec& spec) {
    require_kind(spec, ScenarioKind::Inconsistent);
    const double omega = half_angle(spec.n, static_cast<double>(spec.m));
    const double half_m = 0.5 * static_cast<double>(spec.m);
    const double half_rest = 0.5 * static_cast<double>(spec.n - spec.m);
    const double root = std::sqrt(1.0 - spec.alpha * spec.alpha);
    ScenarioCurve c;
    for (std::size_t t = 0; t <= spec.t_max; ++t) {
        const double td = static_cast<double>(t);
        const double sa = std::sin(omega * td / 2.0);
        const double ca = std::cos(omega * td / 2.0);
        const double sb = std::sin(omega * (td + 1.0) / 2.0);
        const double cb = std::cos(omega * (td + 1.0) / 2.0);
        double p_blocks[2];
        double q_blocks[2];
        for (int e = 0; e < 2; ++e) {
            const double factor = 1.0 + (e == 0 ? spec.alpha : -spec.alpha) + root;
            const double pe = std::sin(omega / 2.0) + factor * sa * cb;
            const double qe = std::cos(omega / 2.0) - factor * (t % 2 == 0 ? sa * sb : ca * cb);
            p_blocks[e] = 0.5 * pe * pe;
            q_blocks[e] = 0.5 * qe * qe;
        }
        const double p = p_blocks[0] + p_blocks[1];
        const double max_marked = std::max(p_blocks[0], p_blocks[1]) / half_m;
        const double max_unmarked = std::max(q_blocks[0], q_blocks[1]) / half_rest;
        c.t.push_back(t);
        c.p_suc.push_back(p);
        c.c1.push_back(block_entropy(p_blocks[0], half_m) + block_entropy(p_blocks[1], half_m) +
                       block_entropy(q_blocks[0], half_rest) + block_entropy(q_blocks[1], half_rest));
        c.cg.push_back(1.0 - std::max(max_marked, max_unmarked));
        push_bounds(c, spec.n, spec.m, p, 1.0, 0.0,
                    max_marked >= max_unmarked - 1e-12 ? OmegaBranch::Marked : OmegaBranch::Unmarked);
    }
    return c;
}

ScenarioCurve mixed_fixed_point(const ScenarioSpec& spec) {
    require_kind(spec, ScenarioKind::MixedFixedPoint);
    const double md = static_cast<double>(spec.m);
    const double rest = static_cast<double>(spec.n - spec.m);
    const double theta = spec.theta;
    const double omega = std::acos((static_cast<double>(spec.n) - 2.0 * md) / static_cast<double>(spec.n));
    const double entropy = binary_entropy(theta);
    const double purity = theta * theta + (1.0 - theta) * (1.0 - theta);
    // G0 rotates span{|mu>, |nu>} by omega, so rho(theta) is stationary only
    // at theta = 1/2. The state stays block-uniform, hence the optimal
    // incoherent state does too and the fidelity reduces to a 2x2 problem:
    // max_w a w + b (1-w) + 2 k sqrt(w (1-w)).
    const double k2 = theta * (1.0 - theta) / (md * rest);

    ScenarioCurve c;
    for (std::size_t t = 0; t <= spec.t_max; ++t) {
        const double ct = std::cos(omega * static_cast<double>(t));
        const double p = theta * ct * ct + (1.0 - theta) * (1.0 - ct * ct);
        const double a = p / md;
        const double b = (1.0 - p) / rest;
        const double max_f = 0.5 * (a + b) + std::sqrt(0.25 * (a - b) * (a - b) + k2);
        const OmegaBranch branch = a >= b - 1e-12 ? OmegaBranch::Marked : OmegaBranch::Unmarked;
        c.t.push_back(t);
        c.p_suc.push_back(p);
        c.c1.push_back(std::max(block_entropy(p, md) + block_entropy(1.0 - p, rest) - entropy, 0.0));
        c.cg.push_back(1.0 - max_f);
        push_bounds(c, spec.n, spec.m, p, purity, entropy, branch);
        if (t == 0) c.max_incoherent_overlap = std::sqrt(max_f);
    }
    return c;
}

ScenarioCurve scenario_curve(const ScenarioSpec& spec) {
    switch (spec.kind) {
        case ScenarioKind::Original: return original_curve(spec);
        case ScenarioKind::Consistent: return consistent_curve(spec);
        case ScenarioKind::Inconsistent: return inconsistent_curve(spec);
        case ScenarioKind::MixedFixedPoint: return mixed_fixed_point(spec);
    }
    throw InvalidScenario("unknown scenario kind");
}

PureState consistent_eta(std::size_t n, std::size_t m, double m_eta) {
    const double nd = static_cast<double>(n);
    const double md = static_cast<double>(m);
    CVector v(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
        v(static_cast<Eigen::Index>(i)) =
            i < m ? std::sqrt(m_eta / (md * nd)) : std::sqrt((nd - m_eta) / ((nd - md) * nd));
    }
    return PureState(std::move(v));
}

PureState inconsistent_eta(std::size_t n, std::size_t m, double alpha) {
    const double nd = static_cast<double>(n);
    const double plus = std::sqrt((1.0 + alpha) / nd);
    const double minus = std::sqrt((1.0 - alpha) / nd);
    const std::size_t half_rest = (n - m) / 2;
    CVector v(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
        const bool upper = i < m ? i < m / 2 : (i - m) < half_rest;
        v(static_cast<Eigen::Index>(i)) = upper ? plus : minus;
    }
    return PureState(std::move(v));
}

DensityMatrix fixed_point_state(std::size_t n, std::size_t m, double theta) {
    if (m < 1 || m >= n) throw DomainError("fixed_point_state: need 1 <= M < N");
    const auto nn = static_cast<Eigen::Index>(n);
    const auto mm = static_cast<Eigen::Index>(m);
    CVector mu = CVector::Zero(nn);
    CVector nu = CVector::Zero(nn);
    mu.head(mm).setConstant(1.0 / std::sqrt(static_cast<double>(m)));
    nu.tail(nn - mm).setConstant(1.0 / std::sqrt(static_cast<double>(n - m)));
    return DensityMatrix((1.0 - theta) * nu * nu.adjoint() + theta * mu * mu.adjoint());
}

GroverConfig scenario_config(const ScenarioSpec& spec) {
    spec.validate();
    const MarkedSet marked = spec.marked_set();
    GroverConfig cfg = GroverConfig::original(spec.n, marked);
    if (spec.kind == ScenarioKind::Consistent) {
        cfg.eta = consistent_eta(spec.n, spec.m, spec.m_eta);
    } else if (spec.kind == ScenarioKind::Inconsistent) {
        cfg.eta = inconsistent_eta(spec.n, spec.m, spec.alpha);
    }
    return cfg;
}

}  // namespace ampcoh
