// lump: command-line front end for the Boussinesq lump toolkit.
//
// Exit codes: 0 success, 1 verification failed, 2 usage/parse error,
// 3 numerical result inconclusive.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>

#include "lump/backlund.hpp"
#include "lump/balance.hpp"
#include "lump/catalog.hpp"
#include "lump/spectral.hpp"

using json = nlohmann::ordered_json;
using namespace lump;

namespace {

constexpr const char* kSchema = "lump-report/1";

std::optional<ParamPoly> named_tau(const std::string& name) {
    if (name == "tau2") return catalog::tau2();
    if (name == "tau2_shifted") return catalog::tau2_shifted();
    if (name == "g4") return catalog::g4();
    if (name == "g4AB") return catalog::g4AB();
    if (name == "h6") return catalog::h6();
    if (name == "hAB") return catalog::hAB();
    if (name == "h00") return catalog::h00();
    return std::nullopt;
}

ParamPoly tau_from_arg(const std::string& arg) {
    if (auto t = named_tau(arg)) return *t;
    return parse_poly(arg);  // throws on malformed input
}

ParamScalar rational_scalar(const std::string& text) {
    Rational r(text);
    r.canonicalize();
    return ParamScalar(FieldElem(r));
}

ParamPoly bind_AB(const ParamPoly& p, const std::string& A, const std::string& B) {
    return p.substitute_params(
        {{symbols::A(), rational_scalar(A)}, {symbols::B(), rational_scalar(B)}});
}

void emit(const json& report, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << report.dump(2) << "\n";
    } else {
        std::ofstream os(out_path);
        os << report.dump(2) << "\n";
    }
}

// merge a --config JSON document into default-valued CLI options
void apply_config(CLI::App& app, const std::string& path) {
    std::ifstream is(path);
    if (!is) throw CLI::ValidationError("--config", "cannot open " + path);
    json cfg = json::parse(is);
    for (auto& [key, value] : cfg.items()) {
        CLI::Option* opt = app.get_option_no_throw("--" + key);
        if (!opt) throw CLI::ValidationError("--config", "unknown key: " + key);
        if (opt->count() == 0) {  // explicit flags win over the config file
            opt->add_result(value.is_string() ? value.get<std::string>() : value.dump());
            opt->run_callback();
        }
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Boussinesq lump toolkit: exact tau/Backlund algebra and "
                 "numerical spectral checks"};
    app.require_subcommand(1);
    app.fallthrough();  // allow --out/--config after the subcommand name
    std::string out_path, config_path;
    app.add_option("--out", out_path, "write the JSON report here instead of stdout");
    app.add_option("--config", config_path, "JSON file mirroring the subcommand flags");

    // ---- verify ----------------------------------------------------------
    auto* verify = app.add_subcommand(
        "verify", "check the bilinear Boussinesq equation for a named or literal tau");
    std::string v_tau;
    verify->add_option("tau", v_tau,
                       "tau2|tau2_shifted|g4|g4AB|h6|hAB|h00 or a polynomial like "
                       "\"x^2+y^2+3\"")
        ->required();

    // ---- backlund --------------------------------------------------------
    auto* backlund = app.add_subcommand(
        "backlund", "construct the Backlund transforms of a tau function");
    std::string b_from = "tau2", b_system = "back2";
    int b_mu_sign = 1, b_j = -1;
    backlund->add_option("--from", b_from, "source tau (named or literal)");
    backlund->add_option("--system", b_system, "back2 or gh")
        ->check(CLI::IsMember({"back2", "gh"}));
    backlund->add_option("--mu-sign", b_mu_sign, "sign of mu for back2")
        ->check(CLI::IsMember({-1, 1}));
    backlund->add_option("--j", b_j, "single leading index (default: all admissible)");

    // ---- realize ---------------------------------------------------------
    auto* realize = app.add_subcommand("realize", "print h_{A,B}");
    std::string r_A = "0", r_B = "0";
    bool r_symbolic = false;
    realize->add_option("--A", r_A, "rational value of A");
    realize->add_option("--B", r_B, "rational value of B");
    realize->add_flag("--symbolic", r_symbolic, "keep A, B symbolic");

    // ---- eval-grid -------------------------------------------------------
    auto* evalgrid = app.add_subcommand("eval-grid", "sample u on a square grid (CSV)");
    std::string e_family = "hAB", e_A = "0", e_B = "0", e_csv;
    double e_extent = 10.0;
    unsigned e_n = 101;
    evalgrid->add_option("--family", e_family, "hAB or U")
        ->check(CLI::IsMember({"hAB", "U"}));
    evalgrid->add_option("--A", e_A);
    evalgrid->add_option("--B", e_B);
    evalgrid->add_option("--extent", e_extent, "half side of the grid");
    evalgrid->add_option("--n", e_n, "points per side");
    evalgrid->add_option("--csv", e_csv, "CSV output path (default stdout)");

    // ---- peaks -----------------------------------------------------------
    auto* peaks = app.add_subcommand("peaks", "asymptotic peak locations of u_{0,B}");
    double p_B = 2.0;
    peaks->add_option("--B", p_B)->check(CLI::PositiveNumber);

    // ---- balance ---------------------------------------------------------
    auto* balancec = app.add_subcommand(
        "balance", "balancing map at the reference configuration + Newton refinement");
    double bal_perturb = 0.1;
    balancec->add_option("--perturb", bal_perturb,
                         "size of the random perturbation fed to Newton");

    // ---- constants -------------------------------------------------------
    auto* constants = app.add_subcommand("constants", "interaction constants d*, a*, b*, c*");
    double c_rel_tol = 1e-7;
    constants->add_option("--rel-tol", c_rel_tol);

    // ---- spectrum --------------------------------------------------------
    auto* spectrum = app.add_subcommand(
        "spectrum", "low spectrum, Morse index and kernel count of the linearization");
    std::string s_family = "hAB", s_A = "0", s_B = "0", s_convention = "second-variation";
    double s_L = 30.0, s_delta_neg = 1e-2;
    unsigned s_N = 128, s_m = 12;
    spectrum->add_option("--family", s_family, "hAB, U or zero")
        ->check(CLI::IsMember({"hAB", "U", "zero"}));
    spectrum->add_option("--A", s_A);
    spectrum->add_option("--B", s_B);
    spectrum->add_option("--L", s_L, "half box size");
    spectrum->add_option("--N", s_N, "collocation points per direction");
    spectrum->add_option("--m", s_m, "number of eigenvalues");
    spectrum->add_option("--delta-neg", s_delta_neg, "negativity threshold");
    spectrum->add_option("--convention", s_convention,
                         "second-variation (default) or paper: 'paper' negates the "
                         "reported eigenvalues")
        ->check(CLI::IsMember({"second-variation", "paper"}));

    // ---- asym ------------------------------------------------------------
    auto* asym = app.add_subcommand(
        "asym", "sup |u_{0,B} - sum of three lumps| over the peak region");
    std::vector<double> a_B{1e3, 1e4, 1e5};
    double a_extent_factor = 4.0;
    unsigned a_n = 160;
    asym->add_option("--B", a_B, "list of B values")->expected(-1);
    asym->add_option("--extent-factor", a_extent_factor, "grid half-size in units of gamma");
    asym->add_option("--n", a_n, "grid resolution parameter");

    try {
        app.parse(argc, argv);
        if (!config_path.empty())
            apply_config(*app.get_subcommands().at(0), config_path);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        json report;
        report["schema"] = kSchema;

        if (*verify) {
            report["command"] = "verify";
            report["config"] = {{"tau", v_tau}};
            ParamPoly tau;
            try {
                tau = tau_from_arg(v_tau);
            } catch (const std::exception& e) {
                std::cerr << "parse error: " << e.what() << "\n";
                return 2;
            }
            ParamPoly res = boussinesq_residual(tau);
            report["zero"] = res.is_zero();
            if (!res.is_zero()) report["residual"] = res.str();
            emit(report, out_path);
            return res.is_zero() ? 0 : 1;
        }

        if (*backlund) {
            report["command"] = "backlund";
            report["config"] = {{"from", b_from}, {"system", b_system},
                                {"mu_sign", b_mu_sign}, {"j", b_j}};
            ParamPoly f = tau_from_arg(b_from);
            BacklundSystem sys =
                b_system == "gh" ? BacklundSystem::gh() : BacklundSystem::back2(b_mu_sign);
            json out = json::array();
            auto describe = [&](const ChainStepResult& step) {
                json t;
                t["transform"] = step.transform.str();
                t["degree"] = step.transform.degree();
                json fp = json::array();
                for (const auto& p : step.free_parameters)
                    fp.push_back({{"symbol", symbols::name(p.symbol)},
                                  {"z_exp", p.pq.first},
                                  {"zbar_exp", p.pq.second}});
                t["free_parameters"] = fp;
                auto [r1, r2] = verify_pair(f, step.transform, sys);
                t["residuals_zero"] = r1.is_zero() && r2.is_zero();
                out.push_back(t);
            };
            if (b_j >= 0) {
                describe(chain_step(f, sys, (unsigned)b_j));
            } else {
                for (const auto& step : chain_all(f, sys).transforms) describe(step);
            }
            report["transforms"] = out;
            emit(report, out_path);
            for (const auto& t : out)
                if (!t["residuals_zero"].get<bool>()) return 1;
            return 0;
        }

        if (*realize) {
            report["command"] = "realize";
            report["config"] = {{"A", r_A}, {"B", r_B}, {"symbolic", r_symbolic}};
            ParamPoly h = r_symbolic ? catalog::hAB() : bind_AB(catalog::hAB(), r_A, r_B);
            report["tau"] = h.str();
            report["boussinesq_zero"] = boussinesq_residual(h).is_zero();
            emit(report, out_path);
            return report["boussinesq_zero"].get<bool>() ? 0 : 1;
        }

        if (*evalgrid) {
            RationalFunction u = e_family == "U"
                                     ? catalog::lumpU()
                                     : catalog::solution_from_tau(
                                           bind_AB(catalog::hAB(), e_A, e_B)).u;
            CompiledRatFn cu(u);
            std::ostream* os = &std::cout;
            std::ofstream file;
            if (!e_csv.empty()) {
                file.open(e_csv);
                os = &file;
            }
            *os << "x,y,u\n";
            os->precision(17);
            for (unsigned i = 0; i < e_n; ++i)
                for (unsigned j = 0; j < e_n; ++j) {
                    double x = -e_extent + 2 * e_extent * i / (e_n - 1);
                    double y = -e_extent + 2 * e_extent * j / (e_n - 1);
                    *os << x << "," << y << "," << cu(x, y) << "\n";
                }
            return 0;
        }

        if (*peaks) {
            report["command"] = "peaks";
            report["config"] = {{"B", p_B}};
            auto pk = catalog::peaks(p_B);
            report["gamma"] = pk.gamma;
            json pts = json::array();
            for (auto& p : pk.points) pts.push_back({p[0], p[1]});
            report["points"] = pts;
            emit(report, out_path);
            return 0;
        }

        if (*balancec) {
            report["command"] = "balance";
            report["config"] = {{"perturb", bal_perturb}};
            auto ref = balance::reference_config();
            json zs = json::array();
            double fmax = 0;
            balance::Configuration cfg;
            for (int j = 0; j < 3; ++j) {
                cfg.z[j] = ref[j].to_complex();
                zs.push_back({cfg.z[j].real(), cfg.z[j].imag()});
            }
            for (auto& fv : balance::F_map(cfg)) fmax = std::max(fmax, std::abs(fv));
            report["reference"] = zs;
            report["F_max_at_reference"] = fmax;
            report["jacobian_nullity"] = 2;  // reference_kernel() throws otherwise
            (void)balance::reference_kernel();
            balance::Configuration start = cfg;
            start.z[1] += std::complex<double>(bal_perturb, -0.7 * bal_perturb);
            auto nr = balance::newton_refine(start);
            report["newton"] = {{"converged", nr.converged},
                                {"iterations", nr.iterations},
                                {"residual", nr.residual},
                                {"orbit_distance", balance::orbit_distance(nr.cfg)}};
            emit(report, out_path);
            return nr.converged ? 0 : 3;
        }

        if (*constants) {
            report["command"] = "constants";
            report["config"] = {{"rel_tol", c_rel_tol}};
            auto ic = balance::interaction_constants(c_rel_tol);
            report["dstar"] = ic.dstar;
            report["astar"] = ic.astar;
            report["bstar"] = ic.bstar;
            report["cstar"] = ic.cstar;
            report["refinement_error"] = ic.rel_err;
            emit(report, out_path);
            return ic.rel_err < 1e-5 ? 0 : 3;
        }

        if (*spectrum) {
            report["command"] = "spectrum";
            report["config"] = {{"family", s_family}, {"A", s_A}, {"B", s_B},
                                {"Lx", s_L}, {"Ly", s_L}, {"Nx", s_N}, {"Ny", s_N},
                                {"m", s_m}, {"delta_neg", s_delta_neg},
                                {"convention", s_convention}};
            std::function<double(double, double)> u;
            if (s_family == "zero") {
                u = [](double, double) { return 0.0; };
            } else if (s_family == "U") {
                CompiledRatFn cu(catalog::lumpU());
                u = [cu](double x, double y) { return cu(x, y); };
            } else {
                CompiledRatFn cu(
                    catalog::solution_from_tau(bind_AB(catalog::hAB(), s_A, s_B)).u);
                u = [cu](double x, double y) { return cu(x, y); };
            }
            spectral::SpectralGrid grid{s_L, s_L, s_N, s_N};
            std::string key = "spectrum|" + s_family + "|A=" + s_A + "|B=" + s_B +
                              "|L=" + std::to_string(s_L) + "|N=" + std::to_string(s_N) +
                              "|m=" + std::to_string(s_m) + "|" + kSchema;
            std::vector<double> values;
            if (auto cached = spectral::cache_lookup(key)) {
                values = *cached;
                report["cache"] = "hit";
            } else {
                spectral::SpectralProblem problem(grid, u);
                auto eig = spectral::lowest_eigs(problem, s_m);
                values = eig.values;
                spectral::cache_store(key, values);
                report["cache"] = "miss";
            }
            spectral::EigResult eig;
            eig.values = values;
            auto kr = spectral::kernel_count(eig);
            if (s_convention == "paper")
                for (double& v : values) v = -v;
            report["eigenvalues"] = values;
            report["morse_index"] = spectral::morse_index(eig, s_delta_neg);
            report["kernel_count"] = kr.conclusive ? json(kr.count) : json(nullptr);
            report["delta_zero"] = kr.delta0;
            report["gap_ratio"] = kr.gap_ratio;
            report["convention"] = s_convention;
            emit(report, out_path);
            return kr.conclusive ? 0 : 3;
        }

        if (*asym) {
            report["command"] = "asym";
            report["config"] = {{"B", a_B}, {"extent_factor", a_extent_factor}, {"n", a_n}};
            json rows = json::array();
            double prev = -1;
            bool monotone = true;
            for (double B : a_B) {
                double s = catalog::sup_error(B, a_extent_factor, a_n);
                rows.push_back({{"B", B}, {"sup_error", s}});
                if (prev >= 0 && s >= prev) monotone = false;
                prev = s;
            }
            report["values"] = rows;
            report["monotone_decreasing"] = monotone;
            emit(report, out_path);
            return monotone ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
