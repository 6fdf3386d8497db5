// Command-line front end: spectra, edge-state profiles, parameter sweeps,
// zero-mode phase maps and the critical gain/loss strength, emitted as
// CSV/JSON (and optional SVG charts) together with a run manifest.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "ptchain/analysis.hpp"
#include "ptchain/io.hpp"
#include "ptchain/models.hpp"
#include "ptchain/sweeps.hpp"
#include "ptchain/version.hpp"

using json = nlohmann::json;
using namespace ptchain;

namespace {

struct NoEdgeStateError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Parse a real number, allowing literal multiples of pi: "0.1pi", "-pi",
/// "2pi". The prefix is widened to long double before the multiplication so
/// the result is the correctly rounded double of r*pi.
double parse_real(const std::string& text) {
    std::string s = text;
    s.erase(0, s.find_first_not_of(" \t"));
    s.erase(s.find_last_not_of(" \t") + 1);
    bool with_pi = false;
    if (s.size() >= 2 && s.substr(s.size() - 2) == "pi") {
        with_pi = true;
        s = s.substr(0, s.size() - 2);
        if (s.empty() || s == "-" || s == "+") s += "1";
    }
    const char* begin = s.c_str();
    char* end = nullptr;
    errno = 0;
    const long double v = std::strtold(begin, &end);
    if (end != begin + s.size() || errno != 0)
        throw std::invalid_argument("cannot parse number '" + text + "'");
    return with_pi ? static_cast<double>(v * std::numbers::pi_v<long double>)
                   : static_cast<double>(v);
}

/// "start:stop:steps" with inclusive endpoints; start/stop may use pi syntax.
AxisRange parse_range(const std::string& text) {
    const auto c1 = text.find(':');
    const auto c2 = text.find(':', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
        throw std::invalid_argument("range '" + text + "' must be start:stop:steps");
    AxisRange r;
    r.start = parse_real(text.substr(0, c1));
    r.stop = parse_real(text.substr(c1 + 1, c2 - c1 - 1));
    const long steps = std::stol(text.substr(c2 + 1));
    if (steps < 2) throw std::invalid_argument("range '" + text + "' needs at least 2 steps");
    r.steps = static_cast<std::size_t>(steps);
    r.validate();
    return r;
}

unsigned default_workers() {
    if (const char* env = std::getenv("PTCHAIN_WORKERS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1) return static_cast<unsigned>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

struct CommonOptions {
    std::string model = "ssh";
    std::size_t n_sites = 200;
    double t = 1.0;
    double delta = 0.3;
    std::string theta = "0";
    double delta_pair = 1.0;
    double mu = 0.0;
    std::string potential = "none";
    double gamma = 0.0;
    std::string out_dir = ".";
    unsigned workers = default_workers();
    ClassificationTolerances tol;
};

void add_common_options(CLI::App* cmd, CommonOptions& o, bool scalar_mu_gamma = true) {
    cmd->add_option("--model", o.model, "Chain model: ssh or kitaev")
        ->check(CLI::IsMember({"ssh", "kitaev"}))
        ->required();
    cmd->add_option("--n", o.n_sites, "Number of lattice sites");
    cmd->add_option("--t", o.t, "Hopping amplitude (energy unit)");
    cmd->add_option("--delta", o.delta, "SSH dimerization amplitude");
    cmd->add_option("--theta", o.theta, "SSH angle in radians; accepts pi syntax, e.g. 0.1pi");
    cmd->add_option("--delta-pair", o.delta_pair, "Kitaev p-wave pairing amplitude");
    cmd->add_option("--potential", o.potential, "Gain/loss shape: none, u1 (end caps), u2 (staggered)")
        ->check(CLI::IsMember({"none", "u1", "u2"}));
    if (scalar_mu_gamma) {
        cmd->add_option("--mu", o.mu, "Kitaev chemical potential");
        cmd->add_option("--gamma", o.gamma, "Gain/loss strength");
    }
    cmd->add_option("--out", o.out_dir, "Output directory");
    cmd->add_option("--workers", o.workers, "Worker threads (default: PTCHAIN_WORKERS or hardware)");
    cmd->add_option("--zero-tol", o.tol.zero_tol, "Numerical-zero threshold for zero modes");
    cmd->add_option("--reality-tol", o.tol.reality_tol, "|Im E| below this counts as real");
    cmd->add_option("--pairing-tol", o.tol.pairing_tol, "Conjugate-pair matching distance");
    cmd->add_option("--edge-fraction", o.tol.edge_fraction, "Fraction of sites per end for edge weight");
    cmd->add_option("--edge-threshold", o.tol.edge_threshold, "Edge weight above this marks an edge state");
    cmd->add_option("--residual-tol", o.tol.residual_tolerance, "Eigensolver residual tolerance");
}

PotentialKind potential_kind(const std::string& name) {
    if (name == "u1") return PotentialKind::EndCaps;
    if (name == "u2") return PotentialKind::Staggered;
    return PotentialKind::None;
}

ModelSpec make_spec(const CommonOptions& o) {
    ModelSpec spec;
    if (o.model == "ssh")
        spec.model = SshParams{o.n_sites, o.t, o.delta, parse_real(o.theta)};
    else
        spec.model = KitaevParams{o.n_sites, o.t, o.delta_pair, o.mu};
    spec.potential = GainLoss{potential_kind(o.potential), o.gamma};
    validate(spec);
    return spec;
}

json model_json(const ModelSpec& spec) {
    json m;
    if (spec.kind() == ModelKind::Ssh) {
        const SshParams& p = spec.ssh();
        m = {{"kind", "ssh"}, {"n_sites", p.n_sites}, {"t", p.t}, {"delta", p.delta},
             {"theta", p.theta}};
    } else {
        const KitaevParams& p = spec.kitaev();
        m = {{"kind", "kitaev"}, {"n_sites", p.n_sites}, {"t", p.t},
             {"delta_pair", p.delta_pair}, {"mu", p.mu}};
    }
    return m;
}

json manifest_json(const std::string& command, const ModelSpec& spec, const CommonOptions& o,
                   const json& grid, double seconds) {
    const char* pot = spec.potential.kind == PotentialKind::EndCaps ? "u1"
                      : spec.potential.kind == PotentialKind::Staggered ? "u2" : "none";
    json man{{"version", kVersion},
             {"command", command},
             {"model", model_json(spec)},
             {"potential", {{"kind", pot}, {"gamma", spec.potential.gamma}}},
             {"tolerances",
              {{"zero_tol", o.tol.zero_tol},
               {"reality_tol", o.tol.reality_tol},
               {"pairing_tol", o.tol.pairing_tol},
               {"edge_fraction", o.tol.edge_fraction},
               {"edge_threshold", o.tol.edge_threshold},
               {"residual_tolerance", o.tol.residual_tolerance}}},
             {"workers", o.workers},
             {"duration_seconds", seconds},
             {"conventions",
              {{"staggered_site1", "loss"},
               {"expectation_values", "normalized right eigenvectors"}}}};
    if (!grid.is_null()) man["grid"] = grid;
    return man;
}

void write_outputs(const std::filesystem::path& dir,
                   const std::vector<std::pair<std::string, std::string>>& files) {
    std::filesystem::create_directories(dir);
    for (const auto& [name, content] : files) write_text_atomic(dir / name, content);
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

int run_spectrum(const CommonOptions& o) {
    Timer timer;
    const ModelSpec spec = make_spec(o);
    const EigenDecomposition decomp =
        eigen_decompose(build_matrix(spec), o.tol.residual_tolerance);
    const SpectrumClassification cls = classify_states(decomp, spec.kind(), o.tol);
    write_outputs(o.out_dir,
                  {{"spectrum.csv", spectrum_csv(cls)},
                   {"manifest.json",
                    manifest_json("spectrum", spec, o, json{}, timer.seconds()).dump(2) + "\n"}});
    return 0;
}

int run_edge_state(const CommonOptions& o) {
    Timer timer;
    const ModelSpec spec = make_spec(o);
    const EigenDecomposition decomp =
        eigen_decompose(build_matrix(spec), o.tol.residual_tolerance);
    const SpectrumClassification cls = classify_states(decomp, spec.kind(), o.tol);

    std::optional<std::size_t> pick;
    for (const StateClassification& st : cls.states) {
        if (!st.is_edge) continue;
        if (!pick || std::abs(st.energy) < std::abs(cls.states[*pick].energy)) pick = st.index;
    }
    if (!pick) {
        std::size_t nearest = 0;
        for (const StateClassification& st : cls.states)
            if (std::abs(st.energy) < std::abs(cls.states[nearest].energy)) nearest = st.index;
        throw NoEdgeStateError("no edge state detected: smallest-|E| state has edge_weight " +
                               format_double(cls.states[nearest].edge_weight) +
                               " (threshold " + format_double(o.tol.edge_threshold) + ")");
    }
    const OccupationProfile prof = occupation_profile(decomp.vectors[*pick], spec.kind());
    write_outputs(o.out_dir,
                  {{"profile.csv", profile_csv(prof)},
                   {"manifest.json",
                    manifest_json("edge-state", spec, o, json{}, timer.seconds()).dump(2) + "\n"}});
    return 0;
}

int run_sweep_cmd(const CommonOptions& o, const std::string& axis, const std::string& from,
                  const std::string& to, std::size_t steps, bool plot) {
    Timer timer;
    SweepSpec spec;
    spec.base = make_spec(o);
    spec.axis = axis == "theta" ? SweepAxis::Theta
                : axis == "mu" ? SweepAxis::Mu
                               : SweepAxis::Gamma;
    spec.range = AxisRange{parse_real(from), parse_real(to), steps};
    spec.tolerances = o.tol;
    const SweepResult result = run_sweep(spec, o.workers);

    const json grid{{"axis", axis}, {"from", spec.range.start}, {"to", spec.range.stop},
                    {"steps", steps}};
    std::vector<std::pair<std::string, std::string>> files{
        {"sweep.csv", sweep_csv(result)},
        {"manifest.json",
         manifest_json("sweep", spec.base, o, grid, timer.seconds()).dump(2) + "\n"}};
    if (plot) files.emplace_back("sweep.svg", svg_sweep_chart(result, axis));
    write_outputs(o.out_dir, files);
    return 0;
}

int run_phase_map(const CommonOptions& o, const std::string& mu_range,
                  const std::string& gamma_range, bool plot) {
    Timer timer;
    const AxisRange mu = parse_range(mu_range);
    const AxisRange gamma = parse_range(gamma_range);
    CommonOptions base_opts = o;
    base_opts.mu = mu.start;
    base_opts.gamma = gamma.start;
    const ModelSpec base = make_spec(base_opts);
    if (base.kind() != ModelKind::Kitaev)
        throw std::invalid_argument("phase-map applies to the Kitaev model only");

    const PhaseMap map =
        zero_mode_map(base, mu, gamma, o.tol.zero_tol, o.tol.residual_tolerance, o.workers);
    for (const ContainmentViolation& v : containment_violations(map))
        std::cerr << "warning: zero-mode region not monotone in gamma at mu="
                  << format_double(map.mu_axis[v.mu_index]) << ": count "
                  << map.counts[v.mu_index][v.gamma_low] << " at gamma="
                  << format_double(map.gamma_axis[v.gamma_low]) << " but 2 at gamma="
                  << format_double(map.gamma_axis[v.gamma_high]) << "\n";

    const json grid{{"mu", {{"from", mu.start}, {"to", mu.stop}, {"steps", mu.steps}}},
                    {"gamma", {{"from", gamma.start}, {"to", gamma.stop}, {"steps", gamma.steps}}}};
    std::vector<std::pair<std::string, std::string>> files{
        {"phasemap.csv", phasemap_csv(map)},
        {"manifest.json",
         manifest_json("phase-map", base, o, grid, timer.seconds()).dump(2) + "\n"}};
    if (plot) files.emplace_back("phasemap.svg", svg_phase_map(map));
    write_outputs(o.out_dir, files);
    return 0;
}

int run_critical_gamma(const CommonOptions& o, double gamma_hi, double scan_step,
                       double refine_tol) {
    Timer timer;
    const ModelSpec base = make_spec(o);
    const CriticalGammaResult result =
        critical_gamma(base, gamma_hi, scan_step, refine_tol, o.tol, o.workers);

    json scan = json::array();
    for (const auto& [g, real_count] : result.scan) scan.push_back({g, real_count});
    json res{{"found", result.found},
             {"gamma_c", result.found ? json(*result.gamma_c) : json(nullptr)},
             {"bracket", {result.bracket_lo, result.bracket_hi}},
             {"scan_step", result.scan_step},
             {"scan", scan}};
    const json grid{{"gamma_hi", gamma_hi}, {"scan_step", scan_step}, {"refine_tol", refine_tol}};
    write_outputs(o.out_dir,
                  {{"critical_gamma.json", res.dump(2) + "\n"},
                   {"manifest.json",
                    manifest_json("critical-gamma", base, o, grid, timer.seconds()).dump(2) + "\n"}});
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"PT-symmetric SSH and Kitaev chain simulator"};
    app.require_subcommand(1);

    CommonOptions spectrum_opt, edge_opt, sweep_opt, map_opt, crit_opt;
    map_opt.n_sites = 100;  // fast-suite default for the grid scan
    map_opt.model = "kitaev";

    CLI::App* spectrum = app.add_subcommand("spectrum", "Eigenvalues with classification");
    add_common_options(spectrum, spectrum_opt);

    CLI::App* edge = app.add_subcommand("edge-state", "Occupation profile of the lowest-|E| edge state");
    add_common_options(edge, edge_opt);

    std::string axis = "gamma", from = "0", to = "1";
    std::size_t steps = 101;
    bool sweep_plot = false;
    CLI::App* sweep = app.add_subcommand("sweep", "Classified spectra along a parameter axis");
    add_common_options(sweep, sweep_opt);
    sweep->add_option("--axis", axis, "Sweep axis: theta, mu or gamma")
        ->check(CLI::IsMember({"theta", "mu", "gamma"}))
        ->required();
    sweep->add_option("--from", from, "Axis start (pi syntax allowed)")->required();
    sweep->add_option("--to", to, "Axis stop (pi syntax allowed)")->required();
    sweep->add_option("--steps", steps, "Number of grid points (inclusive endpoints)");
    sweep->add_flag("--plot", sweep_plot, "Also write sweep.svg");

    std::string mu_range = "0:4:81", gamma_range = "0:2:81";
    bool map_plot = false;
    CLI::App* map = app.add_subcommand("phase-map", "Zero-mode count over the (mu, gamma) grid");
    add_common_options(map, map_opt, /*scalar_mu_gamma=*/false);
    map->add_option("--mu", mu_range, "mu grid as start:stop:steps");
    map->add_option("--gamma", gamma_range, "gamma grid as start:stop:steps");
    map->add_flag("--plot", map_plot, "Also write phasemap.svg");

    double gamma_hi = 2.0, scan_step = 0.05, refine_tol = 1e-6;
    CLI::App* crit = app.add_subcommand("critical-gamma",
                                        "First gamma with no purely real eigenvalue left");
    add_common_options(crit, crit_opt);
    crit->add_option("--gamma-hi", gamma_hi, "Upper end of the coarse scan");
    crit->add_option("--scan-step", scan_step, "Coarse scan step");
    crit->add_option("--refine-tol", refine_tol, "Bisection bracket width");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (app.got_subcommand(spectrum)) return run_spectrum(spectrum_opt);
        if (app.got_subcommand(edge)) return run_edge_state(edge_opt);
        if (app.got_subcommand(sweep))
            return run_sweep_cmd(sweep_opt, axis, from, to, steps, sweep_plot);
        if (app.got_subcommand(map)) return run_phase_map(map_opt, mu_range, gamma_range, map_plot);
        if (app.got_subcommand(crit))
            return run_critical_gamma(crit_opt, gamma_hi, scan_step, refine_tol);
    } catch (const NoEdgeStateError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const SolverError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const ClassificationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
