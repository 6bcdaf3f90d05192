#include "radef/cli.hpp"

#include "radef/errors.hpp"
#include "radef/expansion.hpp"
#include "radef/io.hpp"
#include "radef/monogenics.hpp"
#include "radef/transform.hpp"
#include "radef/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

namespace radef {

void RunConfig::validate() const {
    const DeformParams p(m, c);
    KernelParams{p, omega, trunc}.validate();
    quad.validate();
    if (samples < 1) throw std::invalid_argument("samples must be >= 1, got " + std::to_string(samples));
}

void load_config_json(const std::string& text, RunConfig& cfg) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
    try {
        if (j.contains("m")) cfg.m = j.at("m").get<int>();
        if (j.contains("c")) cfg.c = j.at("c").get<double>();
        if (j.contains("omega")) {
            const auto& o = j.at("omega");
            cfg.omega = cplx(o.value("re", cfg.omega.real()), o.value("im", cfg.omega.imag()));
        }
        if (j.contains("truncation")) {
            const auto& t = j.at("truncation");
            cfg.trunc.tol = t.value("tol", cfg.trunc.tol);
            cfg.trunc.k_max = t.value("k_max", cfg.trunc.k_max);
            cfg.trunc.streak = t.value("streak", cfg.trunc.streak);
        }
        if (j.contains("quadrature")) {
            const auto& q = j.at("quadrature");
            cfg.quad.n_r = q.value("n_r", cfg.quad.n_r);
            cfg.quad.R_max = q.value("R_max", cfg.quad.R_max);
            cfg.quad.r_min = q.value("r_min", cfg.quad.r_min);
            cfg.quad.n_theta = q.value("n_theta", cfg.quad.n_theta);
            cfg.quad.n_phi = q.value("n_phi", cfg.quad.n_phi);
        }
        if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("samples")) cfg.samples = j.at("samples").get<int>();
        if (j.contains("output_path")) cfg.output_path = j.at("output_path").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("config has a field of the wrong type: ") + e.what());
    }
}

namespace {

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> v;
    for (int i = 0; i < n; ++i) v.push_back(n == 1 ? lo : lo + (hi - lo) * i / (n - 1));
    return v;
}

// Writes to the configured file, or to `out` when no path is set.
void emit(const RunConfig& cfg, std::ostream& out, const std::string& text) {
    if (cfg.output_path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(cfg.output_path, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot open output file " + cfg.output_path);
    f << text;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Radially deformed Fourier transform: kernels, spectra, transforms and identity checks"};
    app.require_subcommand(1);
    app.fallthrough();

    RunConfig cfg;
    std::string config_path;
    app.add_option("--config", config_path, "JSON configuration file");
    auto* o_m = app.add_option("--m", cfg.m, "dimension m >= 3");
    auto* o_c = app.add_option("--c", cfg.c, "deformation parameter c > -1");
    double ore = 0.0, oim = 0.0, tol = 0.0;
    int kmax = 0, samples = 0;
    std::uint64_t seed = 0;
    std::string out_path;
    auto* o_re = app.add_option("--omega-re", ore, "Re omega >= 0");
    auto* o_im = app.add_option("--omega-im", oim, "Im omega in [-pi, pi]");
    auto* o_tol = app.add_option("--tol", tol, "series truncation tolerance");
    auto* o_kmax = app.add_option("--kmax", kmax, "maximal number of series terms");
    auto* o_seed = app.add_option("--seed", seed, "random seed");
    auto* o_samples = app.add_option("--samples", samples, "random samples per identity");
    auto* o_out = app.add_option("--out", out_path, "output file (default: standard output)");

    auto* kern = app.add_subcommand("kernel", "kernel values on a (z, w) grid as CSV");
    double z_min = 0.0, z_max = 5.0, w_min = -1.0, w_max = 1.0;
    int nz = 11, nw = 5;
    kern->add_option("--z-min", z_min);
    kern->add_option("--z-max", z_max);
    kern->add_option("--nz", nz, "number of z values (0 gives an empty grid)");
    kern->add_option("--w-min", w_min);
    kern->add_option("--w-max", w_max);
    kern->add_option("--nw", nw, "number of w values");

    auto* ver = app.add_subcommand("verify", "run identity suites and write a JSON report");
    std::vector<std::string> suites;
    ver->add_option("--suite", suites, "suite to run (repeatable); default all");

    auto* spec = app.add_subcommand("spectrum", "eigenvalues of the oscillator and the transform");
    int t_max = 5, ell_max = 3;
    spec->add_option("--t-max", t_max);
    spec->add_option("--ell-max", ell_max);

    auto* tr = app.add_subcommand("transform", "transform of a basis function at random points as CSV");
    int n = 0, ell = 0, idx = 0, points = 10;
    double r_max = 3.0;
    tr->add_option("--n", n);
    tr->add_option("--ell", ell);
    tr->add_option("--idx", idx);
    tr->add_option("--points", points);
    tr->add_option("--r-max", r_max);

    auto* bas = app.add_subcommand("basis", "monogenic basis of one degree as JSON");
    int b_ell = 0;
    bas->add_option("--ell", b_ell);

    auto* prof = app.add_subcommand("profile", "radial profiles of a basis function as CSV");
    int p_n = 0, p_ell = 0, p_points = 101;
    double p_rmax = 5.0;
    prof->add_option("--n", p_n);
    prof->add_option("--ell", p_ell);
    prof->add_option("--points", p_points);
    prof->add_option("--r-max", p_rmax);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? exit_ok : exit_config;
    }

    // configuration: defaults, then the file, then explicit flags
    try {
        const int m_flag = cfg.m;
        const double c_flag = cfg.c;
        if (!config_path.empty()) {
            std::ifstream f(config_path);
            if (!f) throw std::invalid_argument("cannot read config file " + config_path);
            std::stringstream ss;
            ss << f.rdbuf();
            RunConfig fromfile;
            load_config_json(ss.str(), fromfile);
            cfg = fromfile;
        }
        if (o_m->count()) cfg.m = m_flag;
        if (o_c->count()) cfg.c = c_flag;
        if (o_re->count()) cfg.omega.real(ore);
        if (o_im->count()) cfg.omega.imag(oim);
        if (o_tol->count()) cfg.trunc.tol = tol;
        if (o_kmax->count()) cfg.trunc.k_max = kmax;
        if (o_seed->count()) cfg.seed = seed;
        if (o_samples->count()) cfg.samples = samples;
        if (o_out->count()) cfg.output_path = out_path;
        cfg.validate();
        if (nz < 0 || nw < 0) throw std::invalid_argument("grid sizes must be >= 0");
        if (t_max < 0 || ell_max < 0) throw std::invalid_argument("t-max and ell-max must be >= 0");
        if (points < 0 || p_points < 0) throw std::invalid_argument("point counts must be >= 0");
        for (const auto& s : suites)
            if (std::find(suite_names().begin(), suite_names().end(), s) == suite_names().end())
                throw std::invalid_argument("unknown suite '" + s + "'");
    } catch (const std::invalid_argument& e) {
        err << "configuration error: " << e.what() << '\n';
        return exit_config;
    }

    const DeformParams P(cfg.m, cfg.c);
    const KernelParams kp{P, cfg.omega, cfg.trunc};
    std::ostringstream text;
    text.imbue(std::locale::classic());

    try {
        if (*kern) {
            KernelGrid grid{linspace(z_min, z_max, nz), linspace(w_min, w_max, nw)};
            write_kernel_csv(text, kp, grid);
            emit(cfg, out, text.str());
            return exit_ok;
        }
        if (*ver) {
            VerifyConfig vc;
            vc.params = P;
            vc.omega = cfg.omega;
            vc.trunc = cfg.trunc;
            vc.quad = cfg.quad;
            vc.seed = cfg.seed;
            vc.samples = cfg.samples;
            const std::vector<std::string> run = suites.empty() ? suite_names() : suites;
            std::vector<CheckResult> all;
            for (const auto& name : run) {
                std::vector<CheckResult> r;
                try {
                    r = run_suite(name, vc);
                } catch (const NumericalError& e) {
                    r.push_back({name, "suite aborted", e.what(), vc.describe(), 0.0, 0.0, false});
                }
                for (const auto& c : r) {
                    err << (c.pass ? "PASS " : "FAIL ") << c.suite << ": " << c.test
                        << "  residual=" << format_number(c.residual) << " tol=" << format_number(c.tol);
                    if (!c.pass) err << "  [" << c.anchor << "]";
                    err << '\n';
                }
                all.insert(all.end(), r.begin(), r.end());
            }
            text << verify_report_json(all) << '\n';
            emit(cfg, out, text.str());
            const bool ok = std::all_of(all.begin(), all.end(), [](const CheckResult& c) { return c.pass; });
            return ok ? exit_ok : exit_failure;
        }
        if (*spec) {
            text << "t,ell,L_eigenvalue,re_F,im_F\n";
            for (int t = 0; t <= t_max; ++t)
                for (int l = 0; l <= ell_max; ++l) {
                    const cplx f = transform_eigenvalue(t, l, cfg.omega, P);
                    text << t << ',' << l << ',' << format_number(hamiltonian_eigenvalue(t, l, P)) << ','
                         << format_number(f.real()) << ',' << format_number(f.imag()) << '\n';
                }
            emit(cfg, out, text.str());
            return exit_ok;
        }
        if (*tr) {
            if (n < 0 || ell < 0 || idx < 0 || idx >= static_cast<int>(monogenic_dimension(ell, P.m)))
                throw std::invalid_argument("basis index out of range");
            const SectionSum f(phi(n, ell, idx, P));
            std::mt19937_64 rng(cfg.seed);
            std::normal_distribution<double> g;
            std::uniform_real_distribution<double> u(0.0, r_max);
            std::vector<std::vector<double>> pts;
            std::vector<Multivector> vals;
            for (int i = 0; i < points; ++i) {
                std::vector<double> y(P.m);
                double n2 = 0.0;
                for (auto& v : y) {
                    v = g(rng);
                    n2 += v * v;
                }
                const double r = u(rng) / std::sqrt(n2);
                for (auto& v : y) v *= r;
                vals.push_back(apply_transform(f, y, kp, cfg.quad));
                pts.push_back(std::move(y));
            }
            write_transform_csv(text, P.m, pts, vals);
            emit(cfg, out, text.str());
            return exit_ok;
        }
        if (*bas) {
            if (b_ell < 0) throw std::invalid_argument("degree must be >= 0");
            text << monogenic_basis_json(b_ell, P.m) << '\n';
            emit(cfg, out, text.str());
            return exit_ok;
        }
        if (*prof) {
            if (p_n < 0 || p_ell < 0) throw std::invalid_argument("basis index out of range");
            write_profile_csv(text, phi(p_n, p_ell, 0, P), 1e-3, p_rmax, p_points);
            emit(cfg, out, text.str());
            return exit_ok;
        }
    } catch (const std::invalid_argument& e) {
        err << "configuration error: " << e.what() << '\n';
        return exit_config;
    } catch (const std::domain_error& e) {
        err << "configuration error: " << e.what() << '\n';
        return exit_config;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << '\n';
        return exit_failure;
    }
    return exit_config;
}

}  // namespace radef
