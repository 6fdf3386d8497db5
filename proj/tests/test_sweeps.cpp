#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "ptchain/analysis.hpp"
#include "ptchain/models.hpp"
#include "ptchain/sweeps.hpp"

using namespace ptchain;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("sweep validation") {
    SweepSpec spec;
    spec.base = ModelSpec{KitaevParams{10, 1.0, 1.0, 0.5}, {}};
    spec.axis = SweepAxis::Theta;
    spec.range = AxisRange{0.0, 1.0, 5};
    CHECK_THROWS_AS(run_sweep(spec), std::invalid_argument);

    spec.axis = SweepAxis::Mu;
    spec.range = AxisRange{1.0, 1.0, 5};
    CHECK_THROWS_AS(run_sweep(spec), std::invalid_argument);

    spec.range = AxisRange{0.0, 1.0, 1};
    CHECK_THROWS_AS(run_sweep(spec), std::invalid_argument);

    spec.axis = SweepAxis::Gamma;                  // potential is None
    spec.range = AxisRange{0.0, 1.0, 5};
    CHECK_THROWS_AS(run_sweep(spec), std::invalid_argument);

    spec.base.potential = GainLoss{PotentialKind::EndCaps, 0.0};
    spec.range = AxisRange{-0.5, 1.0, 5};          // negative gamma
    CHECK_THROWS_AS(run_sweep(spec), std::invalid_argument);
}

TEST_CASE("hermitian theta sweep has no non-real rows") {
    SweepSpec spec;
    spec.base = ModelSpec{SshParams{30, 1.0, 0.3, 0.0}, {}};
    spec.axis = SweepAxis::Theta;
    spec.range = AxisRange{-kPi, kPi, 21};
    const SweepResult result = run_sweep(spec, 2);
    REQUIRE(result.rows.size() == 21);
    for (std::size_t k = 0; k < result.rows.size(); ++k) {
        const SweepRow& row = result.rows[k];
        CHECK(row.axis_value == spec.range.value(k));
        CHECK(row.eigenvalues.size() == 30);
        CHECK(row.non_real_count == 0);
    }
    CHECK(result.rows.front().axis_value == -kPi);
    CHECK(result.rows.back().axis_value == kPi);
}

TEST_CASE("PT transition of the SSH chain under end caps") {
    SweepSpec spec;
    spec.base = ModelSpec{SshParams{200, 1.0, 0.3, 0.0}, GainLoss{PotentialKind::EndCaps, 1e-5}};
    spec.axis = SweepAxis::Theta;
    spec.range = AxisRange{-kPi, kPi, 25};
    const SweepResult result = run_sweep(spec, 4);
    for (const SweepRow& row : result.rows) {
        const double frac = std::abs(row.axis_value) / kPi;
        // the breaking region ends a little inside |theta| = pi/2 at this
        // gamma: the edge pair only goes complex once gamma exceeds its
        // finite-size splitting
        if (frac < 0.43) CHECK(row.non_real_count == 2);
        if (frac >= 0.5) CHECK(row.non_real_count == 0);
    }
}

TEST_CASE("Kitaev mu sweep with staggered potential breaks only near mu = 0") {
    SweepSpec spec;
    spec.base = ModelSpec{KitaevParams{100, 1.0, 1.0, 0.0}, GainLoss{PotentialKind::Staggered, 1e-5}};
    spec.axis = SweepAxis::Mu;
    spec.range = AxisRange{0.0, 4.0, 21};
    const SweepResult result = run_sweep(spec, 4);
    CHECK(result.rows.front().non_real_count > 0);
    for (const SweepRow& row : result.rows)
        if (row.axis_value >= 0.2) CHECK(row.non_real_count == 0);
}

TEST_CASE("gamma = 0 sweep row reproduces the isolated classification") {
    SweepSpec spec;
    spec.base = ModelSpec{SshParams{24, 1.0, 0.4, 0.2}, GainLoss{PotentialKind::Staggered, 0.0}};
    spec.axis = SweepAxis::Gamma;
    spec.range = AxisRange{0.0, 0.8, 5};
    const SweepResult result = run_sweep(spec);

    const ModelSpec isolated{SshParams{24, 1.0, 0.4, 0.2}, {}};
    const auto d = eigen_decompose(build_matrix(isolated));
    const auto cls = classify_states(d, ModelKind::Ssh);
    CHECK(result.rows[0].eigenvalues == d.values);
    CHECK(result.rows[0].non_real_count == cls.phase.non_real_count);
    CHECK(result.rows[0].zero_mode_count == count_zero_modes(d));
}

TEST_CASE("sweep result is bit-identical across worker counts") {
    SweepSpec spec;
    spec.base = ModelSpec{KitaevParams{16, 1.0, 0.8, 0.6}, GainLoss{PotentialKind::Staggered, 0.0}};
    spec.axis = SweepAxis::Gamma;
    spec.range = AxisRange{0.0, 1.5, 12};
    const SweepResult a = run_sweep(spec, 1);
    const SweepResult b = run_sweep(spec, 4);
    REQUIRE(a.rows.size() == b.rows.size());
    for (std::size_t k = 0; k < a.rows.size(); ++k) {
        CHECK(a.rows[k].eigenvalues == b.rows[k].eigenvalues);
        CHECK(a.rows[k].edge_flags == b.rows[k].edge_flags);
        CHECK(a.rows[k].real_flags == b.rows[k].real_flags);
        CHECK(a.rows[k].zero_mode_count == b.rows[k].zero_mode_count);
    }
}

TEST_CASE("zero-mode map on a coarse grid") {
    // gamma stops short of t + delta_pair: at that strength the mu = 0 end-cap
    // zero modes coalesce at an exceptional point and stop counting as zeros
    const ModelSpec base{KitaevParams{40, 1.0, 1.0, 0.0}, GainLoss{PotentialKind::EndCaps, 0.0}};
    const PhaseMap map = zero_mode_map(base, AxisRange{0.0, 4.0, 5}, AxisRange{0.0, 1.5, 3},
                                       1e-8, kDefaultResidualTolerance, 4);
    REQUIRE(map.mu_axis.size() == 5);
    REQUIRE(map.gamma_axis.size() == 3);
    for (std::size_t j = 0; j < 3; ++j) {
        CHECK(map.counts[0][j] == 2);  // mu = 0
        CHECK(map.counts[1][j] == 2);  // mu = 1
        CHECK(map.counts[2][j] == 0);  // mu = 2
        CHECK(map.counts[3][j] == 0);  // mu = 3
        CHECK(map.counts[4][j] == 0);  // mu = 4
    }
    // isolated-model cross-check for the gamma = 0 column
    for (std::size_t i = 0; i < 5; ++i) {
        ModelSpec point = base;
        point.potential = GainLoss{};
        point.kitaev().mu = map.mu_axis[i];
        const auto d = eigen_decompose(build_matrix(point));
        CHECK(map.counts[i][0] == static_cast<int>(count_zero_modes(d)));
    }
    CHECK(containment_violations(map).empty());
}

TEST_CASE("zero-mode map validation") {
    const ModelSpec ssh{SshParams{10, 1.0, 0.3, 0.0}, GainLoss{PotentialKind::EndCaps, 0.0}};
    CHECK_THROWS_AS(zero_mode_map(ssh, AxisRange{0, 1, 3}, AxisRange{0, 1, 3}),
                    std::invalid_argument);
    const ModelSpec none{KitaevParams{10, 1.0, 1.0, 0.0}, {}};
    CHECK_THROWS_AS(zero_mode_map(none, AxisRange{0, 1, 3}, AxisRange{0, 1, 3}),
                    std::invalid_argument);
}

TEST_CASE("containment violations are reported") {
    PhaseMap map;
    map.mu_axis = {0.0, 1.0};
    map.gamma_axis = {0.0, 0.5, 1.0};
    map.counts = {{2, 0, 2}, {2, 2, 0}};
    const auto violations = containment_violations(map);
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].mu_index == 0);
    CHECK(violations[0].gamma_low == 1);
    CHECK(violations[0].gamma_high == 2);
}

TEST_CASE("critical gamma of the PT dimer") {
    const ModelSpec dimer{SshParams{2, 1.0, 0.3, 0.0}, GainLoss{PotentialKind::EndCaps, 0.0}};
    const CriticalGammaResult res = critical_gamma(dimer, 2.0, 0.05, 1e-6);
    REQUIRE(res.found);
    CHECK(std::abs(*res.gamma_c - 0.7) <= 1e-6);
    CHECK(res.bracket_hi - res.bracket_lo <= 1e-6);
    CHECK(!res.scan.empty());
    CHECK(res.scan.front().first == 0.0);
    CHECK(res.scan.front().second == 2);

    // consistency at the bracket ends
    CHECK(detail::real_count_at(dimer, *res.gamma_c - 1e-6, {}) > 0);
    CHECK(detail::real_count_at(dimer, *res.gamma_c + 1e-6, {}) == 0);
}

TEST_CASE("critical gamma not found when real eigenvalues persist") {
    const ModelSpec spec{SshParams{20, 1.0, 0.3, 0.1 * kPi}, GainLoss{PotentialKind::EndCaps, 0.0}};
    const CriticalGammaResult res = critical_gamma(spec, 1.0, 0.1, 1e-6);
    CHECK(!res.found);
    CHECK(!res.gamma_c.has_value());
    for (const auto& [gamma, real_count] : res.scan) CHECK(real_count > 0);
}

TEST_CASE("critical gamma validation") {
    const ModelSpec spec{SshParams{4, 1.0, 0.3, 0.0}, GainLoss{PotentialKind::EndCaps, 0.0}};
    CHECK_THROWS_AS(critical_gamma(spec, 0.0, 0.1, 1e-6), std::invalid_argument);
    CHECK_THROWS_AS(critical_gamma(spec, 1.0, 0.0, 1e-6), std::invalid_argument);
    CHECK_THROWS_AS(critical_gamma(spec, 1.0, 0.1, 0.0), std::invalid_argument);
    const ModelSpec none{SshParams{4, 1.0, 0.3, 0.0}, {}};
    CHECK_THROWS_AS(critical_gamma(none, 1.0, 0.1, 1e-6), std::invalid_argument);
}
