#include <algorithm>
#include <cmath>

#include <gtest/gtest.h>

#include "ampcoh/ampcoh.hpp"

using namespace ampcoh;

namespace {

ScenarioSpec spec_of(ScenarioKind kind, std::size_t n, std::size_t m, std::size_t t_max = 40) {
    ScenarioSpec s;
    s.kind = kind;
    s.n = n;
    s.m = m;
    s.t_max = t_max;
    return s;
}

// Compares a curve against a direct simulation of its configuration. The
// coherence columns of the oracle come from the coherence module applied to
// the simulated state, not from any scenario formula.
void expect_matches_engine(const ScenarioCurve& curve, const GroverConfig& cfg, double tol) {
    const auto traj = run_pure(cfg, curve.size() - 1, ObservableFlags::all());
    ASSERT_EQ(traj.size(), curve.size());
    for (std::size_t t = 0; t < curve.size(); ++t) {
        EXPECT_NEAR(curve.p_suc[t], traj[t].p_suc, tol) << "t=" << t;
        EXPECT_NEAR(curve.c1[t], *traj[t].c1, 1e-9) << "t=" << t;
        EXPECT_NEAR(curve.cg[t], *traj[t].cg, 1e-9) << "t=" << t;
    }
}

void expect_sandwiched(const ScenarioCurve& c, double tol) {
    for (std::size_t t = 0; t < c.size(); ++t) {
        EXPECT_GE(c.c1[t] - c.c1_lower[t], -tol) << "t=" << t;
        EXPECT_GE(c.c1_upper[t] - c.c1[t], -tol) << "t=" << t;
        EXPECT_GE(c.cg[t] - c.cg_lower[t], -tol) << "t=" << t;
        EXPECT_GE(c.cg_upper[t] - c.cg[t], -tol) << "t=" << t;
    }
}

std::size_t first_peak(const std::vector<double>& p) {
    std::size_t t = 0;
    while (t + 1 < p.size() && p[t + 1] >= p[t]) ++t;
    return t;
}

}  // namespace

TEST(ScenarioSpec, Validation) {
    auto s = spec_of(ScenarioKind::Inconsistent, 16, 3);
    EXPECT_THROW(s.validate(), InvalidScenario);  // odd M
    s = spec_of(ScenarioKind::Inconsistent, 15, 2);
    EXPECT_THROW(s.validate(), InvalidScenario);  // odd N - M
    s = spec_of(ScenarioKind::Inconsistent, 16, 2);
    s.alpha = 1.5;
    EXPECT_THROW(s.validate(), InvalidScenario);
    s = spec_of(ScenarioKind::Consistent, 16, 2);
    s.m_eta = 16;
    EXPECT_THROW(s.validate(), InvalidScenario);
    s = spec_of(ScenarioKind::MixedFixedPoint, 16, 2);
    s.theta = -0.1;
    EXPECT_THROW(s.validate(), InvalidScenario);
    EXPECT_EQ(scenario_kind_from_string("mixed"), ScenarioKind::MixedFixedPoint);
    EXPECT_THROW(scenario_kind_from_string("nope"), InvalidScenario);
}

TEST(OriginalCurve, Examples) {
    const auto small = original_curve(spec_of(ScenarioKind::Original, 4, 1, 4));
    EXPECT_NEAR(small.p_suc[1], 1.0, 1e-12);
    EXPECT_NEAR(small.c1[1], 0.0, 1e-12);
    EXPECT_NEAR(small.cg[1], 0.0, 1e-12);

    const auto fig = original_curve(spec_of(ScenarioKind::Original, 16, 2));
    EXPECT_NEAR(fig.p_suc[0], 0.125, 1e-15);
    expect_matches_engine(fig, GroverConfig::original(16, MarkedSet::first(16, 2)), 1e-10);
}

TEST(OriginalCurve, SaturatesEntropyUpperBound) {
    for (std::size_t n : {4u, 16u, 64u}) {
        for (std::size_t m : {1u, 2u}) {
            const auto c = original_curve(spec_of(ScenarioKind::Original, n, m));
            expect_sandwiched(c, 1e-9);
            for (std::size_t t = 0; t < c.size(); ++t) EXPECT_NEAR(c.c1_upper[t], c.c1[t], 1e-9);
        }
    }
}

TEST(ConsistentCurve, ReducesToOriginalWhenEtaIsUniform) {
    auto s = spec_of(ScenarioKind::Consistent, 16, 2);
    s.m_eta = 2.0;
    const auto c = consistent_curve(s);
    const auto o = original_curve(spec_of(ScenarioKind::Original, 16, 2));
    for (std::size_t t = 0; t < c.size(); ++t) {
        EXPECT_NEAR(c.p_suc[t], o.p_suc[t], 1e-12);
        EXPECT_NEAR(c.c1[t], o.c1[t], 1e-12);
    }
}

TEST(ConsistentCurve, MatchesEngineAndSaturates) {
    for (double factor : {0.5, 2.0, 4.0}) {
        for (std::size_t m : {1u, 2u}) {
            auto s = spec_of(ScenarioKind::Consistent, 64, m);
            s.m_eta = factor * static_cast<double>(m);
            const auto c = consistent_curve(s);
            expect_matches_engine(c, scenario_config(s), 1e-10);
            expect_sandwiched(c, 1e-9);
            for (std::size_t t = 0; t < c.size(); ++t) EXPECT_NEAR(c.c1_upper[t], c.c1[t], 1e-9);
        }
    }
}

TEST(ConsistentCurve, OptimalTimesBracketArgmaxAndScale) {
    const auto one = consistent_optimal_times(256, 1, 1.0);
    const auto four = consistent_optimal_times(256, 1, 4.0);
    EXPECT_NEAR(four.continuous / one.continuous, 0.5, 0.05);

    for (double m_eta : {1.0, 2.0, 4.0, 8.0, 16.0}) {
        auto s = spec_of(ScenarioKind::Consistent, 1024, 1, 60);
        s.m_eta = m_eta;
        const auto c = consistent_curve(s);
        ASSERT_TRUE(c.optimal_times);
        const auto& ot = *c.optimal_times;
        EXPECT_EQ(ot.ceil_time, ot.floor_time + (ot.continuous > static_cast<double>(ot.floor_time) ? 1u : 0u));
        const std::size_t argmax = first_peak(c.p_suc);
        EXPECT_GE(argmax, ot.floor_time);
        EXPECT_LE(argmax, ot.ceil_time);
        EXPECT_EQ(ot.best, argmax);
    }
}

TEST(InconsistentCurve, CollapsesToOriginalAtZeroAlpha) {
    auto s = spec_of(ScenarioKind::Inconsistent, 16, 2);
    s.alpha = 0.0;
    const auto c = inconsistent_curve(s);
    const auto o = original_curve(spec_of(ScenarioKind::Original, 16, 2));
    for (std::size_t t = 0; t < c.size(); ++t) {
        EXPECT_NEAR(c.p_suc[t], o.p_suc[t], 1e-12);
        EXPECT_NEAR(c.c1[t], o.c1[t], 1e-12);
    }
}

TEST(InconsistentCurve, MatchesEngineForFigureParameters) {
    auto s = spec_of(ScenarioKind::Inconsistent, 16, 2);
    s.alpha = 0.72;
    const auto c = inconsistent_curve(s);
    ASSERT_EQ(c.size(), 41u);
    expect_matches_engine(c, scenario_config(s), 1e-10);
    expect_sandwiched(c, 1e-9);

    s.alpha = 0.0;
    const auto base = inconsistent_curve(s);
    EXPECT_LT(*std::max_element(c.p_suc.begin(), c.p_suc.end()),
              *std::max_element(base.p_suc.begin(), base.p_suc.end()));
    EXPECT_EQ(first_peak(c.p_suc), first_peak(base.p_suc));

    double max_slack = 0.0;
    for (std::size_t t = 0; t <= 20; ++t) max_slack = std::max(max_slack, c.c1_upper[t] - c.c1[t]);
    EXPECT_GE(max_slack, 1e-3);
}

TEST(InconsistentCurve, OtherParametersMatchEngine) {
    for (std::size_t m : {2u, 4u}) {
        for (double alpha : {0.3, 0.9}) {
            auto s = spec_of(ScenarioKind::Inconsistent, 32, m, 30);
            s.alpha = alpha;
            expect_matches_engine(inconsistent_curve(s), scenario_config(s), 1e-10);
        }
    }
}

TEST(MixedFixedPoint, Examples) {
    auto s = spec_of(ScenarioKind::MixedFixedPoint, 16, 2, 5);
    s.theta = 0.5;
    const auto c = mixed_fixed_point(s);
    ASSERT_EQ(c.size(), 6u);
    for (std::size_t t = 0; t < c.size(); ++t) {
        EXPECT_NEAR(c.p_suc[t], 0.5, 1e-15);
        EXPECT_NEAR(c.cg[t], 0.714285714286, 1e-9);
    }
    ASSERT_TRUE(c.max_incoherent_overlap);
    EXPECT_NEAR(*c.max_incoherent_overlap, std::sqrt(0.25 + 0.5 / 14), 1e-12);
    EXPECT_NEAR(c.c1[0], relative_entropy_of_coherence(fixed_point_state(16, 2, 0.5)), 1e-10);

    s.theta = 1.0;
    EXPECT_NEAR(mixed_fixed_point(s).cg[0], 0.5, 1e-12);
}

TEST(MixedFixedPoint, OptimizerAgreesWithClosedForm) {
    for (double theta : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        auto s = spec_of(ScenarioKind::MixedFixedPoint, 16, 2, 0);
        s.theta = theta;
        const auto c = mixed_fixed_point(s);
        EXPECT_NEAR(geometric_coherence_mixed(fixed_point_state(16, 2, theta)).value, c.cg[0], 1e-5)
            << "theta=" << theta;
    }
}

TEST(MixedFixedPoint, MatchesDensityEvolution) {
    const auto cfg = GroverConfig::original(16, MarkedSet::first(16, 2));
    for (double theta : {0.0, 0.25, 0.75, 1.0}) {
        auto s = spec_of(ScenarioKind::MixedFixedPoint, 16, 2, 8);
        s.theta = theta;
        const auto c = mixed_fixed_point(s);
        const auto traj = run_density(fixed_point_state(16, 2, theta), cfg, 8, ObservableFlags::all());
        for (std::size_t t = 0; t < c.size(); ++t) {
            EXPECT_NEAR(c.p_suc[t], traj[t].p_suc, 1e-12) << theta << " " << t;
            EXPECT_NEAR(c.c1[t], *traj[t].c1, 1e-9) << theta << " " << t;
            EXPECT_NEAR(c.cg[t], *traj[t].cg, 1e-5) << theta << " " << t;
        }
        expect_sandwiched(c, 1e-9);
    }
}

TEST(ScenarioCurve, DispatchesOnKind) {
    auto s = spec_of(ScenarioKind::Original, 8, 1, 3);
    EXPECT_EQ(scenario_curve(s).size(), 4u);
    s.kind = ScenarioKind::Inconsistent;
    s.m = 1;
    EXPECT_THROW(scenario_curve(s), InvalidScenario);
}
