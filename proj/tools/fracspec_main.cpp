// fracspec: batch front-end for the hypercube spectral toolkit.
//
// Subcommands: spectrum, count, sum, bounds-scan, riesz, heat,
// semiclassical, coherent, verify-all.  Exit codes: 0 success, 1
// verification/compute failure, 2 argument errors.  All output is
// deterministic for a fixed configuration, seed and thread count.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fracspec/fracspec.hpp"

namespace {

// Numeric literals may carry a pi factor: "pi", "2pi", "0.5pi", "3.1".
double parse_real(const std::string& text) {
    std::string t = text;
    t.erase(std::remove_if(t.begin(), t.end(), [](char c) { return c == ' ' || c == '*'; }),
            t.end());
    double mult = 1.0;
    std::size_t pos = t.size();
    if (t.size() >= 2 && t.compare(t.size() - 2, 2, "pi") == 0) {
        pos = t.size() - 2;
        if (pos == 0) return std::numbers::pi;
        mult = std::numbers::pi;
    }
    std::size_t used = 0;
    const double value = std::stod(t.substr(0, pos), &used);
    if (used != pos) throw std::domain_error("malformed numeric literal: " + text);
    return value * mult;
}

std::vector<double> parse_real_list(const std::string& text) {
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const std::string tok = text.substr(start, comma == std::string::npos
                                                       ? std::string::npos
                                                       : comma - start);
        if (!tok.empty()) out.push_back(parse_real(tok));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

std::vector<double> log_grid(double lo, double hi, int points) {
    if (points < 1 || !(lo > 0.0) || !(hi >= lo)) {
        throw std::domain_error("grid requires 0 < min <= max and points >= 1");
    }
    std::vector<double> g;
    if (points == 1) {
        g.push_back(hi);
        return g;
    }
    for (int i = 0; i < points; ++i) {
        g.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (points - 1)));
    }
    return g;
}

unsigned default_threads() {
    if (const char* env = std::getenv("FRACSPEC_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    return 0; // resolved to hardware concurrency
}

struct OutputSink {
    std::optional<std::ofstream> file;
    std::ostream& stream() { return file ? *file : std::cout; }
    void open(const std::string& path) {
        if (path.empty()) return;
        file.emplace(path);
        if (!*file) throw std::runtime_error("cannot open output file: " + path);
    }
};

} // namespace

int main(int argc, char** argv) {
    using namespace fracspec;

    CLI::App app{"Exact and asymptotic spectral toolkit for the Dirichlet operator "
                 "sum_i (-d_i^2)^s on hypercubes"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Read options from a key=value file");

    unsigned threads = default_threads();
    app.add_option("--threads", threads, "Worker count (0 = hardware concurrency)")
        ->capture_default_str();

    // Common spectral parameters, reused by most subcommands.
    int d = 2;
    std::string s_text = "1";
    std::string L_text = "pi";
    bool zeros = false;
    std::string out_path;
    std::string format = "csv";

    auto add_params = [&](CLI::App* cmd, bool with_format = false) {
        cmd->add_option("--d", d, "dimension (1..10)");
        cmd->add_option("--s", s_text, "order s in (0,1]");
        cmd->add_option("--L", L_text, "cube side length (pi literals allowed)");
        cmd->add_flag("--zeros", zeros, "include indices with vanishing components");
        cmd->add_option("--out", out_path, "output path (default stdout)");
        if (with_format) cmd->add_option("--format", format, "csv or json")->check(
            CLI::IsMember({"csv", "json"}));
    };
    auto make_params = [&]() {
        SpectralParams p;
        p.d = d;
        p.s = parse_real(s_text);
        p.L = parse_real(L_text);
        p.include_zero_indices = zeros;
        p.validate();
        return p;
    };

    // spectrum
    auto* cmd_spectrum = app.add_subcommand("spectrum", "enumerate the exact spectrum");
    std::uint64_t spec_k = 0;
    std::string spec_E_text;
    bool strict_boundary = false;
    add_params(cmd_spectrum, true);
    cmd_spectrum->add_option("--k", spec_k, "number of smallest eigenvalues");
    cmd_spectrum->add_option("--E", spec_E_text, "energy cutoff (alternative to --k)");
    cmd_spectrum->add_flag("--strict-boundary", strict_boundary,
                           "exclude eigenvalues exactly at the cutoff");

    // count
    auto* cmd_count = app.add_subcommand("count", "exact counting function N(E)");
    std::string count_E_text = "10";
    add_params(cmd_count);
    cmd_count->add_option("--E", count_E_text, "energy cutoff");
    cmd_count->add_flag("--strict", strict_boundary, "strict boundary comparison");

    // sum
    auto* cmd_sum = app.add_subcommand("sum", "sum of the N smallest eigenvalues");
    std::uint64_t sum_N = 1;
    add_params(cmd_sum);
    cmd_sum->add_option("--N", sum_N, "number of eigenvalues to sum")->required();

    // bounds-scan
    auto* cmd_bounds = app.add_subcommand("bounds-scan",
                                          "violation scan of the closed-form bounds");
    std::uint64_t scan_n_max = 1000;
    std::string e_min_text = "1", e_max_text = "100";
    int e_points = 16;
    add_params(cmd_bounds);
    cmd_bounds->add_option("--n-max", scan_n_max, "eigenvalue count for Polya/BLY scans");
    cmd_bounds->add_option("--e-min", e_min_text, "low end of the energy grid");
    cmd_bounds->add_option("--e-max", e_max_text, "high end of the energy grid");
    cmd_bounds->add_option("--e-points", e_points, "log-grid size");

    // riesz
    auto* cmd_riesz = app.add_subcommand("riesz", "Riesz means vs asymptote and bound");
    std::string rho_text = "1";
    std::string riesz_E_text = "50";
    int riesz_points = 1;
    add_params(cmd_riesz);
    cmd_riesz->add_option("--rho", rho_text, "Riesz order rho >= 0");
    cmd_riesz->add_option("--E", riesz_E_text, "largest energy");
    cmd_riesz->add_option("--grid-points", riesz_points, "log grid ending at --E");

    // heat
    auto* cmd_heat = app.add_subcommand("heat", "partition function vs asymptote and bound");
    std::string t_min_text = "0.1", t_max_text = "1";
    int t_points = 8;
    double tail_tol = 1e-10;
    add_params(cmd_heat);
    cmd_heat->add_option("--t-min", t_min_text, "smallest t");
    cmd_heat->add_option("--t-max", t_max_text, "largest t");
    cmd_heat->add_option("--t-points", t_points, "log-grid size");
    cmd_heat->add_option("--tail-tol", tail_tol, "certified truncation budget");

    // semiclassical
    auto* cmd_semi = app.add_subcommand("semiclassical",
                                        "phase-space constants, moment sums, identities");
    std::string gamma_text = "1";
    std::string R_text = "1";
    std::string well_name;
    std::string depth_text = "1";
    std::string width_text = "1";
    std::string grid_file;
    std::uint64_t mc_samples = 0;
    std::uint64_t mc_seed = 0;
    add_params(cmd_semi);
    cmd_semi->add_option("--gamma", gamma_text, "moment exponent gamma >= 0");
    cmd_semi->add_option("--R", R_text, "deformed-sphere radius");
    cmd_semi->add_option("--well", well_name, "potential family: box, gaussian or bump")
        ->check(CLI::IsMember({"box", "gaussian", "bump"}));
    cmd_semi->add_option("--depth", depth_text, "well depth V0");
    cmd_semi->add_option("--width", width_text, "well half-width (all axes)");
    cmd_semi->add_option("--grid-file", grid_file, "sampled potential grid (CSV)");
    auto* mc_opt = cmd_semi->add_option("--mc-samples", mc_samples,
                                        "Monte Carlo cross-check of the phase-space volume");
    cmd_semi->add_option("--seed", mc_seed, "seed for the Monte Carlo path")->needs(mc_opt);
    mc_opt->needs("--seed");

    // coherent
    auto* cmd_coherent = app.add_subcommand("coherent",
                                            "kinetic expectation along an hbar grid");
    std::string k_text = "1";
    std::string hbar_text = "0.5,0.2,0.1,0.05,0.02";
    double gap_tol = 0.05;
    add_params(cmd_coherent);
    cmd_coherent->add_option("--k", k_text, "momentum k (p = 2 pi k), comma list for d=2");
    cmd_coherent->add_option("--hbar-grid", hbar_text, "decreasing hbar values");
    cmd_coherent->add_option("--gap-tol", gap_tol, "final relative gap tolerance");

    // verify-all
    auto* cmd_verify = app.add_subcommand("verify-all", "run the acceptance suite");
    std::string profile_name = "full";
    cmd_verify->add_option("--profile", profile_name, "quick or full")
        ->check(CLI::IsMember({"quick", "full"}));

    for (CLI::App* sub : app.get_subcommands({})) {
        sub->fallthrough();   // global flags (--threads, --config) after the subcommand
        sub->configurable();  // allow [subcommand] sections in config files
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    OutputSink sink;
    try {
        sink.open(out_path);
        std::ostream& os = sink.stream();
        const Boundary boundary = strict_boundary ? Boundary::strict : Boundary::inclusive;

        if (*cmd_spectrum) {
            SpectralParams p = make_params();
            if ((spec_k == 0) == spec_E_text.empty()) {
                throw std::domain_error("spectrum: exactly one of --k or --E is required");
            }
            SpectrumSlice slice = spec_k > 0
                ? enumerate_smallest(p, spec_k)
                : enumerate_up_to(p, parse_real(spec_E_text), boundary, {}, threads);
            if (format == "json") {
                io::write_spectrum_json(os, slice);
            } else {
                io::write_spectrum_csv(os, slice);
            }
        } else if (*cmd_count) {
            SpectralParams p = make_params();
            os << counting_function(p, parse_real(count_E_text), boundary, threads) << "\n";
        } else if (*cmd_sum) {
            SpectralParams p = make_params();
            os << io::format_double(eigenvalue_sum(p, sum_N, {}, threads)) << "\n";
        } else if (*cmd_bounds) {
            SpectralParams p = make_params();
            const auto grid = log_grid(parse_real(e_min_text), parse_real(e_max_text), e_points);
            const auto reports = scan_bounds(p, scan_n_max, grid, threads);
            io::write_bound_reports_csv(os, reports);
            for (const auto& rep : reports) {
                if (!rep.satisfied) {
                    std::cerr << "bound violation: " << rep.quantity << " at "
                              << rep.param_point << "\n";
                    return 1;
                }
            }
        } else if (*cmd_riesz) {
            SpectralParams p = make_params();
            const double rho = parse_real(rho_text);
            if (rho < 0.0) throw std::domain_error("riesz: precondition rho >= 0 violated");
            const DomainSpec dom = DomainSpec::hypercube(p);
            const double E_hi = parse_real(riesz_E_text);
            std::vector<io::RieszRow> rows;
            for (double E : log_grid(riesz_points == 1 ? E_hi : E_hi / 100.0, E_hi,
                                     riesz_points)) {
                RieszQuery q{rho, E};
                io::RieszRow row;
                row.E = E;
                row.rho = rho;
                row.R_exact = riesz_mean_auto(p, q, threads);
                row.R_asymptote = riesz_asymptote(dom, p.s, q);
                row.R_bound = rho > 1.0 ? riesz_upper_bound(dom, p.s, q)
                                        : std::numeric_limits<double>::quiet_NaN();
                rows.push_back(row);
            }
            io::write_riesz_csv(os, rows);
        } else if (*cmd_heat) {
            SpectralParams p = make_params();
            const DomainSpec dom = DomainSpec::hypercube(p);
            std::vector<io::HeatRow> rows;
            for (double t : log_grid(parse_real(t_min_text), parse_real(t_max_text), t_points)) {
                HeatQuery q{t, tail_tol};
                io::HeatRow row;
                row.t = t;
                row.Z_exact = partition_function_auto(p, q, threads).value;
                row.Z_asymptote = heat_asymptote(dom, p.s, t);
                row.Z_bound = heat_upper_bound(dom, p.s, t);
                rows.push_back(row);
            }
            io::write_heat_csv(os, rows);
        } else if (*cmd_semi) {
            SpectralParams p = make_params();
            const double gamma = parse_real(gamma_text);
            const double R = parse_real(R_text);
            const DomainSpec dom = DomainSpec::hypercube(p);
            os << "# " << io::kCsvSchemaVersion << " semiclassical\n";
            os << "quantity,value\n";
            auto row = [&](const char* name, double value) {
                os << name << "," << io::format_double(value) << "\n";
            };
            row("ball_volume", ball_volume(p.d, p.s));
            row("sphere_volume", sphere_volume(p.d, p.s));
            row("riesz_classical_constant_rho1", riesz_classical_constant(1.0, p.d, p.s));
            row("lieb_thirring_classical_constant", lieb_thirring_classical_constant(gamma, p.d, p.s));
            const auto scale = polya_weyl_scale_factor(p.d, p.s);
            row("polya_weyl_lambda", scale.lambda);
            row("polya_weyl_sum_ratio", scale.sum_ratio);
            row("radial_moment_integral", radial_moment_integral(p.d, p.s, gamma));
            row("radial_moment_quadrature", radial_moment_quadrature(p.d, p.s, gamma));
            row("classical_free_sum_N1000", classical_free_sum(dom, p.s, 1000));
            row("asymptotic_sum_N1000", asymptotic_sum(dom, p.s, 1000));
            row("deformed_sphere_volume", deformed_sphere_volume(p.d, p.s, R));
            row("deformed_sphere_R^d_ball", std::pow(R, p.d) * ball_volume(p.d, p.s));
            if (p.d == 2) {
                row("deformed_sphere_jacobian_2d", deformed_sphere_volume_jacobian_2d(p.s, R));
            }
            const auto variants = well_sum_gamma1_coefficients(p.d, p.s);
            row("well_sum_gamma1_moment_theorem", variants.moment_theorem);
            row("well_sum_gamma1_as_printed", variants.as_printed);
            if (!well_name.empty() || !grid_file.empty()) {
                PotentialSpec well;
                well.d = p.d;
                well.s = p.s;
                well.gamma = gamma;
                if (!grid_file.empty()) {
                    std::ifstream in(grid_file);
                    if (!in) throw std::runtime_error("cannot open grid file: " + grid_file);
                    well.profile = io::read_potential_grid_csv(in);
                } else {
                    const WellFamily family = well_name == "box" ? WellFamily::box
                                            : well_name == "bump" ? WellFamily::bump
                                                                  : WellFamily::gaussian;
                    AnalyticWell w;
                    w.family = family;
                    w.depth = parse_real(depth_text);
                    w.width.assign(p.d, parse_real(width_text));
                    w.center.assign(p.d, 0.0);
                    well.profile = w;
                }
                row("bound_state_moment_sum", bound_state_moment_sum(well));
                if (p.d == 1) {
                    row("bound_state_moment_quadrature", bound_state_moment_quadrature_1d(well));
                }
            }
            if (mc_samples > 0) {
                const auto mc = reference::mc_phase_space_volume(dom.volume, p.d, p.s, 1.0,
                                                                 mc_samples, mc_seed);
                row("phase_space_volume_E1", phase_space_volume({dom, p.s, 1.0}));
                row("phase_space_volume_mc", mc.value);
                row("phase_space_volume_mc_stderr", mc.std_error);
            }
        } else if (*cmd_coherent) {
            SpectralParams p = make_params();
            CoherentParams base;
            base.d = p.d;
            base.s = p.s;
            const auto ks = parse_real_list(k_text);
            if (ks.empty() || static_cast<int>(ks.size()) > base.d) {
                throw std::domain_error("coherent: --k needs one value per dimension");
            }
            for (std::size_t i = 0; i < ks.size(); ++i) base.k[i] = ks[i];
            const auto grid = parse_real_list(hbar_text);
            const auto report = semiclassical_limit_check(base, grid, gap_tol, threads);
            io::write_convergence_csv(os, report.rows);
            if (!report.converged) {
                std::cerr << "semiclassical limit not converged: final gap "
                          << io::format_double(report.final_relative_gap) << "\n";
            }
        } else if (*cmd_verify) {
            const auto profile = profile_name == "quick" ? verify::Profile::quick
                                                         : verify::Profile::full;
            const auto results = verify::run_all(profile, threads, &os);
            for (const auto& res : results) {
                if (!res.passed) return 1;
            }
        }
    } catch (const std::domain_error& e) {
        std::cerr << "argument error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "argument error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
