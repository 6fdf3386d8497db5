#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ptchain/eigensolver.hpp"
#include "ptchain/models.hpp"

namespace ptchain {

/// Every threshold that enters a classification, bundled so sweeps and the
/// CLI can record them in one place.
struct ClassificationTolerances {
    double reality_tol = 1e-9;       // |Im E| below this counts as real
    double pairing_tol = 1e-8;       // conjugate-pair matching distance
    double edge_fraction = 0.05;     // fraction of sites per chain end
    double edge_threshold = 0.5;     // edge weight above this marks an edge state
    double zero_tol = 1e-8;          // numerical-zero rule for zero modes
    double residual_tolerance = 1e-10;
};

/// Thrown when a non-real eigenvalue has no conjugate partner within
/// pairing_tol; that signals solver noise or a non-PT-symmetric matrix.
class ClassificationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Site-resolved occupation of one normalized eigenstate. For SSH only
/// `electron` is filled; for Kitaev `electron` holds |u_i|^2 and `hole`
/// holds |v_i|^2 of the Nambu vector (u, v).
struct OccupationProfile {
    ModelKind model_kind;
    std::vector<double> electron;
    std::vector<double> hole;
};

struct StateClassification {
    std::size_t index = 0;
    Complex energy;
    bool is_real = false;
    std::optional<std::size_t> conjugate_partner;
    double edge_weight = 0.0;
    bool is_edge = false;
    std::optional<double> phs_deviation;  // Kitaev only: max_i | <n_e,i> - <n_h,i> |
};

enum class PtStatus { Unbroken, Broken };

struct PtPhase {
    PtStatus status = PtStatus::Unbroken;
    std::size_t non_real_count = 0;
    std::size_t real_count = 0;
};

struct SpectrumClassification {
    std::vector<StateClassification> states;
    PtPhase phase;
};

inline OccupationProfile occupation_profile(const std::vector<Complex>& vec, ModelKind kind) {
    OccupationProfile prof;
    prof.model_kind = kind;
    if (kind == ModelKind::Ssh) {
        prof.electron.reserve(vec.size());
        for (const Complex& z : vec) prof.electron.push_back(std::norm(z));
    } else {
        if (vec.size() % 2 != 0)
            throw std::invalid_argument("occupation_profile: Kitaev vector length must be 2N");
        const std::size_t n = vec.size() / 2;
        prof.electron.reserve(n);
        prof.hole.reserve(n);
        for (std::size_t i = 0; i < n; ++i) prof.electron.push_back(std::norm(vec[i]));
        for (std::size_t i = 0; i < n; ++i) prof.hole.push_back(std::norm(vec[n + i]));
    }
    return prof;
}

namespace detail {

inline double edge_weight_of(const OccupationProfile& prof, double edge_fraction) {
    const std::size_t n = prof.electron.size();
    const auto m = static_cast<std::size_t>(std::ceil(edge_fraction * static_cast<double>(n)));
    double w = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (i < m || i >= n - m) {
            w += prof.electron[i];
            if (!prof.hole.empty()) w += prof.hole[i];
        }
    }
    return w;
}

}  // namespace detail

/// Classify every eigenstate: reality, conjugate partner, edge character,
/// particle-hole deviation; aggregate the PT phase.
inline SpectrumClassification classify_states(const EigenDecomposition& decomp, ModelKind kind,
                                              const ClassificationTolerances& tol = {}) {
    if (!(tol.edge_fraction > 0.0 && tol.edge_fraction <= 0.5))
        throw std::invalid_argument("classify_states: edge_fraction must be in (0, 0.5]");

    const std::size_t dim = decomp.values.size();
    SpectrumClassification out;
    out.states.resize(dim);

    for (std::size_t k = 0; k < dim; ++k) {
        StateClassification& st = out.states[k];
        st.index = k;
        st.energy = decomp.values[k];
        st.is_real = std::abs(st.energy.imag()) < tol.reality_tol;
        const OccupationProfile prof = occupation_profile(decomp.vectors[k], kind);
        st.edge_weight = detail::edge_weight_of(prof, tol.edge_fraction);
        st.is_edge = st.edge_weight > tol.edge_threshold;
        if (kind == ModelKind::Kitaev) {
            double dev = 0.0;
            for (std::size_t i = 0; i < prof.electron.size(); ++i)
                dev = std::max(dev, std::abs(prof.electron[i] - prof.hole[i]));
            st.phs_deviation = dev;
        }
    }

    // Greedy conjugate pairing among the non-real states, nearest first.
    std::vector<std::size_t> open;
    for (std::size_t k = 0; k < dim; ++k)
        if (!out.states[k].is_real) open.push_back(k);
    std::vector<bool> paired(dim, false);
    for (std::size_t a : open) {
        if (paired[a]) continue;
        const Complex target = std::conj(out.states[a].energy);
        double best = std::numeric_limits<double>::infinity();
        std::size_t best_j = 0;
        for (std::size_t b : open) {
            if (b == a || paired[b]) continue;
            const double dist = std::abs(out.states[b].energy - target);
            if (dist < best) { best = dist; best_j = b; }
        }
        if (!(best <= tol.pairing_tol))
            throw ClassificationError(
                "classify_states: non-real eigenvalue (" + std::to_string(out.states[a].energy.real()) +
                ", " + std::to_string(out.states[a].energy.imag()) +
                ") has no conjugate partner within pairing_tol");
        paired[a] = paired[best_j] = true;
        out.states[a].conjugate_partner = best_j;
        out.states[best_j].conjugate_partner = a;
    }

    out.phase.non_real_count = open.size();
    out.phase.real_count = dim - open.size();
    out.phase.status = open.empty() ? PtStatus::Unbroken : PtStatus::Broken;
    return out;
}

/// Number of eigenvalues that are numerically zero in both parts.
inline std::size_t count_zero_modes(const EigenDecomposition& decomp, double zero_tol = 1e-8) {
    if (!(zero_tol > 0.0)) throw std::invalid_argument("count_zero_modes: zero_tol must be > 0");
    std::size_t count = 0;
    for (const Complex& e : decomp.values)
        if (std::abs(e.real()) < zero_tol && std::abs(e.imag()) < zero_tol) ++count;
    return count;
}

/// Number of eigenvalues with |Im E| < reality_tol.
inline std::size_t count_real(const EigenDecomposition& decomp, double reality_tol = 1e-9) {
    std::size_t count = 0;
    for (const Complex& e : decomp.values)
        if (std::abs(e.imag()) < reality_tol) ++count;
    return count;
}

}  // namespace ptchain
