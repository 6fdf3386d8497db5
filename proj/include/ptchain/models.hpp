#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "ptchain/matrix.hpp"

namespace ptchain {

enum class ModelKind { Ssh, Kitaev };
enum class PotentialKind { None, EndCaps, Staggered };

/// Imaginary on-site gain/loss potential of strength gamma >= 0.
/// EndCaps: +i*gamma at site 1, -i*gamma at site N. Staggered: i*gamma*(-1)^n
/// with 1-based site index, so site 1 carries the loss.
struct GainLoss {
    PotentialKind kind = PotentialKind::None;
    double gamma = 0.0;
};

/// Dimerized chain with alternating hoppings t(1 -+ delta*cos(theta)),
/// bond 1-2 carrying the minus branch. Energies in units of t.
struct SshParams {
    std::size_t n_sites = 0;
    double t = 1.0;
    double delta = 0.0;
    double theta = 0.0;
};

/// Spinless p-wave chain: chemical potential mu, hopping t, pairing delta_pair.
struct KitaevParams {
    std::size_t n_sites = 0;
    double t = 1.0;
    double delta_pair = 0.0;
    double mu = 0.0;
};

struct ModelSpec {
    std::variant<SshParams, KitaevParams> model;
    GainLoss potential;

    ModelKind kind() const {
        return std::holds_alternative<SshParams>(model) ? ModelKind::Ssh : ModelKind::Kitaev;
    }
    const SshParams& ssh() const { return std::get<SshParams>(model); }
    const KitaevParams& kitaev() const { return std::get<KitaevParams>(model); }
    SshParams& ssh() { return std::get<SshParams>(model); }
    KitaevParams& kitaev() { return std::get<KitaevParams>(model); }

    std::size_t n_sites() const {
        return kind() == ModelKind::Ssh ? ssh().n_sites : kitaev().n_sites;
    }
    /// Matrix dimension: N for SSH, 2N for the Kitaev BdG doubling.
    std::size_t matrix_dim() const {
        return kind() == ModelKind::Ssh ? n_sites() : 2 * n_sites();
    }
};

inline void validate_gain_loss(const GainLoss& g, std::size_t n_sites) {
    if (!(g.gamma >= 0.0)) throw std::invalid_argument("gain/loss strength gamma must be >= 0");
    if (g.kind == PotentialKind::None && g.gamma != 0.0)
        throw std::invalid_argument("potential 'none' requires gamma = 0");
    if (g.kind == PotentialKind::EndCaps && n_sites < 2)
        throw std::invalid_argument("end-cap potential requires at least 2 sites");
    if (g.kind == PotentialKind::Staggered && n_sites % 2 != 0)
        throw std::invalid_argument(
            "staggered potential requires an even number of sites; an odd chain has unbalanced "
            "gain and loss and is not PT symmetric");
}

inline void validate(const SshParams& p) {
    if (p.n_sites < 2 || p.n_sites % 2 != 0)
        throw std::invalid_argument("SSH chain requires an even number of sites >= 2 "
                                    "(the hopping pattern needs complete dimers)");
    if (!(p.t > 0.0)) throw std::invalid_argument("SSH hopping t must be > 0");
    if (!(std::abs(p.delta) < 1.0))
        throw std::invalid_argument("SSH dimerization |delta| must be < 1 to keep both hoppings positive");
}

inline void validate(const KitaevParams& p) {
    if (p.n_sites < 1) throw std::invalid_argument("Kitaev chain requires at least 1 site");
    if (!(p.t > 0.0)) throw std::invalid_argument("Kitaev hopping t must be > 0");
}

inline void validate(const ModelSpec& spec) {
    if (spec.kind() == ModelKind::Ssh) validate(spec.ssh()); else validate(spec.kitaev());
    validate_gain_loss(spec.potential, spec.n_sites());
}

/// On-site potential entries, length n_sites, 1-based site convention.
inline std::vector<Complex> potential_diagonal(PotentialKind kind, double gamma,
                                               std::size_t n_sites) {
    validate_gain_loss(GainLoss{kind, gamma}, n_sites);
    std::vector<Complex> d(n_sites, Complex{0.0, 0.0});
    switch (kind) {
        case PotentialKind::None:
            break;
        case PotentialKind::EndCaps:
            d.front() = Complex{0.0, gamma};
            d.back() = Complex{0.0, -gamma};
            break;
        case PotentialKind::Staggered:
            for (std::size_t n = 1; n <= n_sites; ++n)
                d[n - 1] = Complex{0.0, (n % 2 == 0) ? gamma : -gamma};
            break;
    }
    return d;
}

/// N x N SSH matrix under open boundary conditions. Bonds alternate
/// t_minus, t_plus, t_minus, ... starting between sites 1 and 2; the gain/loss
/// potential sits on the diagonal.
inline ComplexMatrix build_ssh(const ModelSpec& spec) {
    const SshParams& p = spec.ssh();
    validate(p);
    validate_gain_loss(spec.potential, p.n_sites);

    const double dimer = p.delta * std::cos(p.theta);
    const double t_plus = p.t * (1.0 + dimer);
    const double t_minus = p.t * (1.0 - dimer);

    ComplexMatrix m(p.n_sites);
    const auto d = potential_diagonal(spec.potential.kind, spec.potential.gamma, p.n_sites);
    for (std::size_t i = 0; i < p.n_sites; ++i) m(i, i) = d[i];
    for (std::size_t i = 0; i + 1 < p.n_sites; ++i) {
        const double hop = (i % 2 == 0) ? t_minus : t_plus;  // bond (i+1, i+2), 1-based
        m(i, i + 1) = hop;
        m(i + 1, i) = hop;
    }
    return m;
}

/// 2N x 2N Kitaev Bogoliubov-de Gennes matrix in the (particles, holes) basis.
///
/// Particle block: diagonal mu + d_n, hopping +t. Hole block: exact negative
/// of the particle block, so a gain for an electron is the equal loss for a
/// hole. Pairing couples the blocks with -i*delta above and +i*delta below
/// the diagonal, identically in both off-diagonal blocks; this makes the
/// matrix anticommute with J = [[0, I], [-I, 0]].
inline ComplexMatrix build_kitaev_bdg(const ModelSpec& spec) {
    const KitaevParams& p = spec.kitaev();
    validate(p);
    validate_gain_loss(spec.potential, p.n_sites);

    const std::size_t n = p.n_sites;
    ComplexMatrix m(2 * n);
    const auto d = potential_diagonal(spec.potential.kind, spec.potential.gamma, n);

    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = p.mu + d[i];
        m(n + i, n + i) = -p.mu - d[i];
    }
    const Complex pair_up{0.0, -p.delta_pair};
    const Complex pair_dn{0.0, p.delta_pair};
    for (std::size_t i = 0; i + 1 < n; ++i) {
        m(i, i + 1) = p.t;
        m(i + 1, i) = p.t;
        m(n + i, n + i + 1) = -p.t;
        m(n + i + 1, n + i) = -p.t;
        m(i, n + i + 1) = pair_up;      // particle-hole block
        m(i + 1, n + i) = pair_dn;
        m(n + i, i + 1) = pair_up;      // hole-particle block
        m(n + i + 1, i) = pair_dn;
    }
    return m;
}

inline ComplexMatrix build_matrix(const ModelSpec& spec) {
    return spec.kind() == ModelKind::Ssh ? build_ssh(spec) : build_kitaev_bdg(spec);
}

}  // namespace ptchain
