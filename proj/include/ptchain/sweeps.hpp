#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "ptchain/analysis.hpp"
#include "ptchain/eigensolver.hpp"
#include "ptchain/models.hpp"

namespace ptchain {

enum class SweepAxis { Theta, Mu, Gamma };

/// Inclusive uniform grid: steps values from start to stop.
struct AxisRange {
    double start = 0.0;
    double stop = 0.0;
    std::size_t steps = 0;

    double value(std::size_t k) const {
        return start + (stop - start) * static_cast<double>(k) / static_cast<double>(steps - 1);
    }
    void validate() const {
        if (steps < 2) throw std::invalid_argument("axis range needs at least 2 steps");
        if (!(start < stop)) throw std::invalid_argument("axis range requires start < stop");
    }
};

struct SweepSpec {
    ModelSpec base;
    SweepAxis axis = SweepAxis::Gamma;
    AxisRange range;
    ClassificationTolerances tolerances;
};

struct SweepRow {
    double axis_value = 0.0;
    std::vector<Complex> eigenvalues;  // sorted by (re, im)
    std::size_t non_real_count = 0;
    std::size_t zero_mode_count = 0;
    std::vector<bool> edge_flags;
    std::vector<bool> real_flags;
};

struct SweepResult {
    SweepSpec spec;
    std::vector<SweepRow> rows;
};

struct PhaseMap {
    std::vector<double> mu_axis;
    std::vector<double> gamma_axis;
    std::vector<std::vector<int>> counts;  // counts[mu_index][gamma_index]
};

struct CriticalGammaResult {
    bool found = false;
    std::optional<double> gamma_c;
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
    double scan_step = 0.0;
    std::vector<std::pair<double, std::size_t>> scan;  // (gamma, real_count) trace
};

namespace detail {

/// Run fn(0..count-1) on up to `workers` threads. Cells are claimed from an
/// atomic counter; results must be written into per-index slots so the output
/// does not depend on scheduling. The lowest-index exception wins.
template <typename Fn>
void parallel_for_index(std::size_t count, unsigned workers, Fn&& fn) {
    if (count == 0) return;
    const unsigned n_threads =
        std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(count)));
    if (n_threads == 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::exception_ptr> errors(count);
    std::atomic<std::size_t> next{0};
    auto body = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                fn(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(body);
    for (std::thread& t : pool) t.join();
    for (const std::exception_ptr& e : errors)
        if (e) std::rethrow_exception(e);
}

inline ModelSpec with_axis_value(const ModelSpec& base, SweepAxis axis, double value) {
    ModelSpec spec = base;
    switch (axis) {
        case SweepAxis::Theta: spec.ssh().theta = value; break;
        case SweepAxis::Mu: spec.kitaev().mu = value; break;
        case SweepAxis::Gamma: spec.potential.gamma = value; break;
    }
    return spec;
}

inline void validate_sweep(const SweepSpec& spec) {
    spec.range.validate();
    validate(spec.base);
    switch (spec.axis) {
        case SweepAxis::Theta:
            if (spec.base.kind() != ModelKind::Ssh)
                throw std::invalid_argument("theta axis applies to the SSH model only");
            break;
        case SweepAxis::Mu:
            if (spec.base.kind() != ModelKind::Kitaev)
                throw std::invalid_argument("mu axis applies to the Kitaev model only");
            break;
        case SweepAxis::Gamma:
            if (spec.base.potential.kind == PotentialKind::None)
                throw std::invalid_argument("gamma axis requires an end-cap or staggered potential");
            if (spec.range.start < 0.0)
                throw std::invalid_argument("gamma axis requires start >= 0");
            break;
    }
}

inline std::size_t real_count_at(const ModelSpec& base, double gamma,
                                 const ClassificationTolerances& tol) {
    ModelSpec spec = base;
    spec.potential.gamma = gamma;
    return count_real(eigen_decompose(build_matrix(spec), tol.residual_tolerance),
                      tol.reality_tol);
}

}  // namespace detail

/// Diagonalize and classify the model at every grid point of the axis.
inline SweepResult run_sweep(const SweepSpec& spec, unsigned workers = 1) {
    detail::validate_sweep(spec);
    SweepResult result;
    result.spec = spec;
    result.rows.resize(spec.range.steps);
    detail::parallel_for_index(spec.range.steps, workers, [&](std::size_t k) {
        const double value = spec.range.value(k);
        try {
            const ModelSpec point = detail::with_axis_value(spec.base, spec.axis, value);
            const EigenDecomposition decomp =
                eigen_decompose(build_matrix(point), spec.tolerances.residual_tolerance);
            const SpectrumClassification cls =
                classify_states(decomp, point.kind(), spec.tolerances);
            SweepRow& row = result.rows[k];
            row.axis_value = value;
            row.eigenvalues = decomp.values;
            row.non_real_count = cls.phase.non_real_count;
            row.zero_mode_count = count_zero_modes(decomp, spec.tolerances.zero_tol);
            row.edge_flags.reserve(cls.states.size());
            row.real_flags.reserve(cls.states.size());
            for (const StateClassification& st : cls.states) {
                row.edge_flags.push_back(st.is_edge);
                row.real_flags.push_back(st.is_real);
            }
        } catch (const SolverError& e) {
            throw SolverError("at axis value " + std::to_string(value) + ": " + e.what());
        }
    });
    return result;
}

/// Zero-mode count over a (mu, gamma) grid for the Kitaev model.
inline PhaseMap zero_mode_map(const ModelSpec& base, const AxisRange& mu_range,
                              const AxisRange& gamma_range, double zero_tol = 1e-8,
                              double residual_tolerance = kDefaultResidualTolerance,
                              unsigned workers = 1) {
    if (base.kind() != ModelKind::Kitaev)
        throw std::invalid_argument("zero_mode_map applies to the Kitaev model only");
    if (base.potential.kind == PotentialKind::None)
        throw std::invalid_argument("zero_mode_map requires an end-cap or staggered potential");
    mu_range.validate();
    gamma_range.validate();
    if (gamma_range.start < 0.0)
        throw std::invalid_argument("zero_mode_map requires gamma >= 0");

    PhaseMap map;
    for (std::size_t i = 0; i < mu_range.steps; ++i) map.mu_axis.push_back(mu_range.value(i));
    for (std::size_t j = 0; j < gamma_range.steps; ++j)
        map.gamma_axis.push_back(gamma_range.value(j));
    map.counts.assign(mu_range.steps, std::vector<int>(gamma_range.steps, 0));

    detail::parallel_for_index(mu_range.steps * gamma_range.steps, workers, [&](std::size_t cell) {
        const std::size_t i = cell / gamma_range.steps;
        const std::size_t j = cell % gamma_range.steps;
        try {
            ModelSpec point = base;
            point.kitaev().mu = map.mu_axis[i];
            point.potential.gamma = map.gamma_axis[j];
            const EigenDecomposition decomp =
                eigen_decompose(build_matrix(point), residual_tolerance);
            map.counts[i][j] = static_cast<int>(count_zero_modes(decomp, zero_tol));
        } catch (const SolverError& e) {
            throw SolverError("at mu=" + std::to_string(map.mu_axis[i]) +
                              ", gamma=" + std::to_string(map.gamma_axis[j]) + ": " + e.what());
        }
    });
    return map;
}

struct ContainmentViolation {
    std::size_t mu_index = 0;
    std::size_t gamma_low = 0;   // cell without two zero modes ...
    std::size_t gamma_high = 0;  // ... below a cell that has them
};

/// Cells that break the expected monotone-in-gamma structure: two zero modes
/// at a larger gamma but not at a smaller one, at fixed mu.
inline std::vector<ContainmentViolation> containment_violations(const PhaseMap& map) {
    std::vector<ContainmentViolation> out;
    for (std::size_t i = 0; i < map.counts.size(); ++i) {
        const auto& row = map.counts[i];
        std::size_t last_two = row.size();
        for (std::size_t j = row.size(); j-- > 0;)
            if (row[j] == 2) { last_two = j; break; }
        if (last_two == row.size()) continue;
        for (std::size_t j = 0; j < last_two; ++j)
            if (row[j] != 2) out.push_back({i, j, last_two});
    }
    return out;
}

/// Scan real_count over gamma in [0, gamma_hi], then bisect the first
/// interval where it reaches zero down to refine_tol. found=false when some
/// eigenvalue stays real across the whole scan.
inline CriticalGammaResult critical_gamma(const ModelSpec& base, double gamma_hi,
                                          double scan_step, double refine_tol,
                                          const ClassificationTolerances& tol = {},
                                          unsigned workers = 1) {
    if (!(gamma_hi > 0.0)) throw std::invalid_argument("critical_gamma: gamma_hi must be > 0");
    if (!(scan_step > 0.0)) throw std::invalid_argument("critical_gamma: scan_step must be > 0");
    if (!(refine_tol > 0.0)) throw std::invalid_argument("critical_gamma: refine_tol must be > 0");
    validate(base);
    if (base.potential.kind == PotentialKind::None)
        throw std::invalid_argument("critical_gamma requires an end-cap or staggered potential");

    std::vector<double> gammas;
    for (std::size_t k = 0;; ++k) {
        const double g = static_cast<double>(k) * scan_step;
        if (g >= gamma_hi) break;
        gammas.push_back(g);
    }
    gammas.push_back(gamma_hi);

    CriticalGammaResult result;
    result.scan_step = scan_step;
    result.scan.resize(gammas.size());
    detail::parallel_for_index(gammas.size(), workers, [&](std::size_t k) {
        try {
            result.scan[k] = {gammas[k], detail::real_count_at(base, gammas[k], tol)};
        } catch (const SolverError& e) {
            throw SolverError("at gamma=" + std::to_string(gammas[k]) + ": " + e.what());
        }
    });

    std::size_t onset = 0;
    for (std::size_t k = 1; k < result.scan.size(); ++k) {
        if (result.scan[k].second == 0 && result.scan[k - 1].second > 0) {
            onset = k;
            break;
        }
    }
    if (onset == 0) {
        result.found = false;
        result.bracket_lo = 0.0;
        result.bracket_hi = gamma_hi;
        return result;
    }

    double lo = result.scan[onset - 1].first;
    double hi = result.scan[onset].first;
    while (hi - lo > refine_tol) {
        const double mid = 0.5 * (lo + hi);
        if (detail::real_count_at(base, mid, tol) == 0)
            hi = mid;
        else
            lo = mid;
    }
    result.found = true;
    result.bracket_lo = lo;
    result.bracket_hi = hi;
    result.gamma_c = 0.5 * (lo + hi);
    return result;
}

}  // namespace ptchain
