#include "cli_commands.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <random>
#include <set>
#include <sstream>

#include "fracflow/adaptive.hpp"
#include "fracflow/caputo.hpp"
#include "fracflow/estimate.hpp"
#include "fracflow/quadform.hpp"
#include "fracflow/special.hpp"

namespace fracflow::cli {

namespace {

using nlohmann::json;

struct ConfigError {
    std::string message;
};

[[noreturn]] void bad_config(const std::string& msg) { throw ConfigError{msg}; }

void check_keys(const json& obj, const std::string& where, const std::set<std::string>& allowed) {
    for (const auto& [key, value] : obj.items()) {
        if (!allowed.count(key)) {
            bad_config("unknown key \"" + key + "\" in " + where);
        }
    }
}

double get_num(const json& obj, const std::string& key, std::optional<double> fallback = {}) {
    if (!obj.contains(key)) {
        if (fallback) return *fallback;
        bad_config("missing numeric key \"" + key + "\"");
    }
    if (!obj[key].is_number()) bad_config("key \"" + key + "\" must be a number");
    return obj[key].get<double>();
}

std::string fmt6(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.5e", x);
    return buf;
}

Eigen::VectorXd parse_state(const json& v, const std::string& what) {
    if (v.is_number()) return Eigen::VectorXd::Constant(1, v.get<double>());
    if (v.is_array()) {
        Eigen::VectorXd out(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (!v[i].is_number()) bad_config(what + " must contain numbers");
            out[static_cast<Eigen::Index>(i)] = v[i].get<double>();
        }
        return out;
    }
    bad_config(what + " must be a number or an array");
}

Energy parse_energy(const json& cfg) {
    if (!cfg.contains("energy") || !cfg["energy"].is_object()) {
        bad_config("missing \"energy\" object");
    }
    const json& e = cfg["energy"];
    check_keys(e, "energy", {"kind", "lambda", "p", "matrix", "dim"});
    const std::string kind = e.value("kind", "");
    if (kind == "quadratic") return Energy::quadratic(get_num(e, "lambda"));
    if (kind == "power_p") return Energy::power_p(get_num(e, "lambda"), get_num(e, "p"));
    if (kind == "entropy") return Energy::entropy(get_num(e, "lambda"));
    if (kind == "circle") return Energy::circle(get_num(e, "lambda"));
    if (kind == "quadratic_form") {
        if (!e.contains("matrix") || !e["matrix"].is_array()) {
            bad_config("quadratic_form needs \"matrix\" (dense row-major array)");
        }
        const int d = static_cast<int>(get_num(e, "dim"));
        if (d < 1 || e["matrix"].size() != static_cast<std::size_t>(d) * d) {
            bad_config("matrix must hold dim*dim numbers");
        }
        Eigen::MatrixXd A(d, d);
        for (int i = 0; i < d; ++i) {
            for (int j = 0; j < d; ++j) {
                A(i, j) = e["matrix"][static_cast<std::size_t>(i) * d + j].get<double>();
            }
        }
        return Energy::quadratic_form(A);
    }
    bad_config("energy.kind must be one of quadratic, quadratic_form, power_p, entropy, circle");
}

std::optional<Perturbation> parse_perturbation(const json& cfg) {
    if (!cfg.contains("perturbation")) return std::nullopt;
    const json& p = cfg["perturbation"];
    check_keys(p, "perturbation", {"kind", "coeff"});
    const std::string kind = p.value("kind", "");
    if (kind == "none") return std::nullopt;
    if (kind == "scale") {
        const double coeff = get_num(p, "coeff");
        Perturbation psi;
        psi.psi = [coeff](double, const Eigen::VectorXd& w) { return (coeff * w).eval(); };
        psi.lipschitz = std::fabs(coeff);
        psi.time_dependent = false;
        return psi;
    }
    bad_config("perturbation.kind must be \"scale\" or \"none\"");
}

Forcing parse_forcing(const json& cfg, Eigen::Index dim) {
    if (!cfg.contains("forcing")) return Forcing::zero();
    const json& f = cfg["forcing"];
    check_keys(f, "forcing", {"kind", "value", "coeffs"});
    const std::string kind = f.value("kind", "zero");
    if (kind == "zero") return Forcing::zero();
    if (kind == "constant") {
        if (!f.contains("value")) bad_config("constant forcing needs \"value\"");
        Eigen::VectorXd v = parse_state(f["value"], "forcing.value");
        if (v.size() == 1 && dim > 1) v = Eigen::VectorXd::Constant(dim, v[0]);
        if (v.size() != dim) bad_config("forcing dimension mismatch");
        return Forcing::function([v](double) { return v; });
    }
    if (kind == "polynomial") {
        if (!f.contains("coeffs") || !f["coeffs"].is_array() || f["coeffs"].empty()) {
            bad_config("polynomial forcing needs a non-empty \"coeffs\" array");
        }
        std::vector<double> coeffs;
        for (const auto& c : f["coeffs"]) {
            if (!c.is_number()) bad_config("forcing.coeffs must hold numbers");
            coeffs.push_back(c.get<double>());
        }
        return Forcing::function([coeffs, dim](double t) {
            double acc = 0.0;
            for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * t + coeffs[k];
            return Eigen::VectorXd::Constant(dim, acc).eval();
        });
    }
    bad_config("forcing.kind must be zero, constant, or polynomial");
}

ProxConfig parse_prox(const json& cfg) {
    ProxConfig out;
    if (!cfg.contains("prox")) return out;
    const json& p = cfg["prox"];
    check_keys(p, "prox", {"tol", "max_iter", "init_floor"});
    if (p.contains("tol")) out.tol = get_num(p, "tol");
    if (p.contains("max_iter")) out.max_iter = static_cast<int>(get_num(p, "max_iter"));
    if (p.contains("init_floor")) out.init_floor = get_num(p, "init_floor");
    return out;
}

struct LadderSpec {
    std::vector<double> taus;  // decreasing
    std::vector<std::size_t> ns;
};

LadderSpec parse_ladder(const json& part, double T) {
    check_keys(part, "partition", {"kind", "n", "nodes", "base_tau", "k_min", "k_max"});
    if (part.value("kind", "") != "ladder") {
        bad_config("convergence needs partition.kind == \"ladder\"");
    }
    const double base = get_num(part, "base_tau");
    const int k_min = static_cast<int>(get_num(part, "k_min", 0.0));
    const int k_max = static_cast<int>(get_num(part, "k_max"));
    if (!(base > 0.0) || k_max < k_min) bad_config("invalid ladder spec");
    if (k_max - k_min + 1 < 3) bad_config("ladder needs at least 3 levels");
    LadderSpec spec;
    for (int k = k_min; k <= k_max; ++k) {
        const double tau = base * std::pow(2.0, -k);
        const double n_real = T / tau;
        const auto n = static_cast<std::size_t>(std::llround(n_real));
        if (n == 0 || std::fabs(n_real - static_cast<double>(n)) > 1e-9 * n_real) {
            bad_config("ladder step does not divide T evenly");
        }
        spec.taus.push_back(tau);
        spec.ns.push_back(n);
    }
    return spec;
}

Partition parse_partition(const json& cfg, double T) {
    if (!cfg.contains("partition") || !cfg["partition"].is_object()) {
        bad_config("missing \"partition\" object");
    }
    const json& part = cfg["partition"];
    check_keys(part, "partition", {"kind", "n", "nodes", "base_tau", "k_min", "k_max"});
    const std::string kind = part.value("kind", "");
    if (kind == "uniform") {
        const auto n = static_cast<std::size_t>(get_num(part, "n"));
        return uniform_partition(T, n);
    }
    if (kind == "explicit") {
        if (!part.contains("nodes") || !part["nodes"].is_array()) {
            bad_config("explicit partition needs \"nodes\"");
        }
        std::vector<double> nodes;
        for (const auto& v : part["nodes"]) nodes.push_back(v.get<double>());
        return make_partition(std::move(nodes));
    }
    bad_config("partition.kind must be uniform or explicit for this command");
}

const std::set<std::string> kTopKeys = {
    "command", "alpha",   "T",       "energy",   "perturbation", "forcing", "u0",
    "partition", "epsilon", "tau_init", "tau_min", "tau_max",      "growth",  "shrink",
    "slack",     "max_steps", "m",     "q",        "seed",         "out",     "prox",
    "properties"};

FlowProblem build_problem(const json& cfg) {
    FlowProblem p;
    p.alpha = get_num(cfg, "alpha");
    p.energy = parse_energy(cfg);
    if (!cfg.contains("u0")) bad_config("missing \"u0\"");
    p.u0 = parse_state(cfg["u0"], "u0");
    p.perturbation = parse_perturbation(cfg);
    p.forcing = parse_forcing(cfg, p.u0.size());
    p.quadrature_points = static_cast<int>(get_num(cfg, "q", 4.0));
    return p;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) bad_config("cannot open output file " + path);
    out << content;
}

std::optional<std::function<Eigen::VectorXd(double)>> exact_reference(const FlowProblem& p) {
    // scalar linear problem with f = 0: u(t) = u0 E_alpha(-lambda t^alpha)
    if (p.energy.kind() == EnergyKind::Quadratic && p.u0.size() == 1 &&
        p.forcing.kind == Forcing::Kind::Zero && !p.perturbation) {
        const double lam = p.energy.lambda();
        const double alpha = p.alpha;
        const double u0 = p.u0[0];
        return [lam, alpha, u0](double t) {
            return Eigen::VectorXd::Constant(
                1, u0 * mittag_leffler(alpha, -lam * std::pow(t, alpha)));
        };
    }
    return std::nullopt;
}

int cmd_solve(const json& cfg, const std::string& out_path) {
    const FlowProblem problem = build_problem(cfg);
    const double T = get_num(cfg, "T", 1.0);
    const Partition part = parse_partition(cfg, T);
    const FlowResult res = solve_flow(problem, part, parse_prox(cfg));
    const auto tilde = estimator_tilde(res);

    std::ostringstream csv;
    const Eigen::Index d = res.U0.size();
    csv << "t";
    for (Eigen::Index i = 0; i < d; ++i) csv << ",u" << i;
    for (Eigen::Index i = 0; i < d; ++i) csv << ",v" << i;
    csv << ",tilde,residual\n";
    for (std::size_t n = 1; n <= part.N; ++n) {
        csv << fmt6(part.nodes[n]);
        for (Eigen::Index i = 0; i < d; ++i) csv << "," << fmt6(res.U[n - 1][i]);
        for (Eigen::Index i = 0; i < d; ++i) csv << "," << fmt6(res.V[n - 1][i]);
        csv << "," << fmt6(tilde[n - 1]) << "," << fmt6(res.prox_residuals[n - 1]) << "\n";
    }
    if (!out_path.empty()) write_file(out_path, csv.str());

    double max_res = 0.0;
    for (double r : res.prox_residuals) max_res = std::max(max_res, r);
    std::cout << "solve: N=" << part.N << " T=" << fmt6(T) << " phi(U_N)=" << fmt6(res.phi_trace.back())
              << " max_residual=" << fmt6(max_res) << "\n";
    std::cout << "  U_N =";
    for (Eigen::Index i = 0; i < d; ++i) std::cout << " " << fmt6(res.U.back()[i]);
    std::cout << "\n";
    if (out_path.empty()) std::cout << csv.str();
    return 0;
}

int cmd_convergence(const json& cfg, const std::string& out_path) {
    const FlowProblem problem = build_problem(cfg);
    const double T = get_num(cfg, "T", 1.0);
    if (!cfg.contains("partition") || !cfg["partition"].is_object()) {
        bad_config("missing \"partition\" object");
    }
    const LadderSpec ladder = parse_ladder(cfg["partition"], T);
    const ProxConfig prox_cfg = parse_prox(cfg);

    struct Row {
        double tau;
        std::optional<double> err;
        std::optional<double> rate;
    };
    std::vector<Row> rows;

    if (problem.energy.kind() == EnergyKind::QuadraticForm) {
        QuadFormProblem qp{problem.energy.matrix(), problem.u0, problem.forcing, T};
        const auto report = run_quadform_rate(qp, problem.alpha, ladder.ns, 4, prox_cfg);
        for (std::size_t k = 0; k < report.rows.size(); ++k) {
            Row row{report.rows[k].tau, report.rows[k].e_h, std::nullopt};
            if (k > 0) row.rate = report.rows[k].rate;
            rows.push_back(row);
        }
    } else {
        std::vector<std::future<FlowResult>> runs;
        for (std::size_t N : ladder.ns) {
            runs.push_back(std::async(std::launch::async, [&, N] {
                return solve_flow(problem, uniform_partition(T, N), prox_cfg);
            }));
        }
        std::vector<double> terminal;
        for (auto& r : runs) terminal.push_back(r.get().U.back()[0]);

        const auto ref = exact_reference(problem);
        if (ref) {
            const double exact = (*ref)(T)[0];
            std::vector<double> errs;
            for (double u : terminal) errs.push_back(std::fabs(exact - u));
            for (std::size_t k = 0; k < errs.size(); ++k) {
                Row row{ladder.taus[k], errs[k], std::nullopt};
                if (k > 0) row.rate = std::log2(errs[k - 1] / errs[k]);
                rows.push_back(row);
            }
        } else {
            for (std::size_t k = 0; k < terminal.size(); ++k) {
                Row row{ladder.taus[k], std::nullopt, std::nullopt};
                if (k > 0) row.err = std::fabs(terminal[k] - terminal[k - 1]);
                if (k > 1) {
                    row.rate = std::log2(std::fabs(terminal[k - 1] - terminal[k - 2]) /
                                         std::fabs(terminal[k] - terminal[k - 1]));
                }
                rows.push_back(row);
            }
        }
    }

    std::ostringstream csv;
    csv << "tau,err,rate\n";
    for (const auto& row : rows) {
        csv << fmt6(row.tau) << "," << (row.err ? fmt6(*row.err) : "") << ","
            << (row.rate ? fmt6(*row.rate) : "") << "\n";
    }
    if (!out_path.empty()) write_file(out_path, csv.str());

    std::cout << "tau          err          rate\n";
    for (const auto& row : rows) {
        std::cout << fmt6(row.tau) << "  " << (row.err ? fmt6(*row.err) : "---         ") << "  "
                  << (row.rate ? fmt6(*row.rate) : "---") << "\n";
    }
    return 0;
}

int cmd_adaptive(const json& cfg, const std::string& out_path) {
    const FlowProblem problem = build_problem(cfg);
    const double T = get_num(cfg, "T", 1.0);
    AdaptiveConfig acfg;
    acfg.epsilon = get_num(cfg, "epsilon");
    acfg.tau_init = get_num(cfg, "tau_init", 1e-2);
    acfg.tau_min = get_num(cfg, "tau_min", 1e-12);
    acfg.tau_max = get_num(cfg, "tau_max", 0.0);
    acfg.growth = get_num(cfg, "growth", 2.0);
    acfg.shrink = get_num(cfg, "shrink", 0.5);
    acfg.slack = get_num(cfg, "slack", 0.25);
    acfg.max_steps = static_cast<std::size_t>(get_num(cfg, "max_steps", 1e7));

    const auto [res, report] = adaptive_solve(problem, T, acfg, parse_prox(cfg));

    std::ostringstream csv;
    csv << "t,tau,estimator,rejections\n";
    for (const auto& s : report.steps) {
        csv << fmt6(s.t) << "," << fmt6(s.tau) << "," << fmt6(s.tilde) << "," << s.rejections
            << "\n";
    }
    if (!out_path.empty()) write_file(out_path, csv.str());

    double min_tau = 1e300, max_tau = 0.0;
    for (const auto& s : report.steps) {
        min_tau = std::min(min_tau, s.tau);
        max_tau = std::max(max_tau, s.tau);
    }
    std::cout << "adaptive: accepted=" << report.steps.size()
              << " rejections=" << report.total_rejections << " min_tau=" << fmt6(min_tau)
              << " max_tau=" << fmt6(max_tau) << "\n";
    if (const auto ref = exact_reference(problem)) {
        const auto err = error_vs_reference(res, *ref, 1, false);
        std::cout << "  E_H vs reference = " << fmt6(err.e_h) << "\n";
    }
    return 0;
}

int cmd_properties(const json& cfg, const std::string& out_path) {
    const auto seed = static_cast<unsigned>(get_num(cfg, "seed", 12345.0));
    json props = cfg.contains("properties") ? cfg["properties"] : json::object();
    check_keys(props, "properties", {"partitions", "max_n", "alphas", "corrupt", "samples"});
    const int partitions = static_cast<int>(props.value("partitions", 100));
    const auto max_n = static_cast<std::size_t>(props.value("max_n", 64));
    const int samples = static_cast<int>(props.value("samples", 10000));
    const bool corrupt = props.value("corrupt", false);
    std::vector<double> alphas{0.1, 0.3, 0.5, 0.7, 0.9};
    if (props.contains("alphas")) {
        alphas.clear();
        for (const auto& a : props["alphas"]) alphas.push_back(a.get<double>());
    }

    struct SuiteResult {
        std::string name;
        long cases = 0;
        long violations = 0;
        std::vector<std::string> details;
    };

    auto run_alpha = [&](double alpha, unsigned alpha_seed) {
        SuiteResult kernel_suite;
        kernel_suite.name = "kernel_alpha_" + fmt6(alpha);
        SuiteResult basis_suite;
        basis_suite.name = "basis_alpha_" + fmt6(alpha);
        std::mt19937 rng(alpha_seed);
        std::uniform_int_distribution<std::size_t> nd(1, max_n);
        std::uniform_real_distribution<double> ud(0.05, 1.0);
        std::uniform_real_distribution<double> td(1e-9, 1.0);
        const int per_alpha_samples = std::max(1, samples / (partitions * static_cast<int>(alphas.size())));
        for (int trial = 0; trial < partitions; ++trial) {
            const std::size_t n = nd(rng);
            std::vector<double> gaps(n);
            double total = 0.0;
            for (auto& g : gaps) {
                g = ud(rng);
                total += g;
            }
            std::vector<double> nodes{0.0};
            double acc = 0.0;
            for (std::size_t k = 0; k < n; ++k) {
                acc += gaps[k];
                nodes.push_back(acc / total);
            }
            nodes.back() = 1.0;
            CaputoKernel kern(make_partition(std::move(nodes)), alpha);
            kern.invert();
            if (corrupt && trial == 0 && kern.size() >= 2) {
                kern.override_kinv_entry(kern.size(), 1, 1.0);
            }
            ++kernel_suite.cases;
            const auto diag = check_kernel_properties(kern);
            if (!diag.ok()) {
                ++kernel_suite.violations;
                for (const auto& v : diag.violations) {
                    if (kernel_suite.details.size() < 5) kernel_suite.details.push_back(v);
                }
            }
            for (int s = 0; s < per_alpha_samples; ++s) {
                const double t = td(rng) * kern.partition().T;
                double pu = 0.0;
                bool nonneg = true;
                for (std::size_t i = 0; i <= kern.size(); ++i) {
                    const double phi = basis_eval(kern, i, t);
                    if (phi < -1e-12) nonneg = false;
                    pu += phi;
                }
                ++basis_suite.cases;
                if (!nonneg || std::fabs(pu - 1.0) > 1e-12) {
                    ++basis_suite.violations;
                    if (basis_suite.details.size() < 5) {
                        basis_suite.details.push_back("basis failure at alpha=" + fmt6(alpha) +
                                                      " t=" + fmt6(t));
                    }
                }
            }
        }
        return std::vector<SuiteResult>{kernel_suite, basis_suite};
    };

    std::vector<std::future<std::vector<SuiteResult>>> futures;
    for (std::size_t a = 0; a < alphas.size(); ++a) {
        futures.push_back(std::async(std::launch::async, run_alpha, alphas[a],
                                     seed + static_cast<unsigned>(a)));
    }
    std::vector<SuiteResult> results;
    for (auto& f : futures) {
        for (auto& s : f.get()) results.push_back(std::move(s));
    }

    // estimator sign suite on a seeded linear run
    {
        SuiteResult est;
        est.name = "estimator_signs";
        std::mt19937 rng(seed + 1000);
        FlowProblem p;
        p.alpha = 0.5;
        p.energy = Energy::quadratic(1.0);
        p.u0 = Eigen::VectorXd::Constant(1, 1.0);
        const auto res = solve_flow(p, uniform_partition(1.0, 64));
        for (double e : estimator_tilde(res)) {
            ++est.cases;
            if (e < -1e-12) ++est.violations;
        }
        std::uniform_real_distribution<double> td(1e-9, 1.0);
        for (int s = 0; s < 1000; ++s) {
            ++est.cases;
            if (estimator_pointwise(res, td(rng)) < -1e-12) ++est.violations;
        }
        results.push_back(std::move(est));
    }

    std::ostringstream csv;
    csv << "suite,cases,violations\n";
    long total_violations = 0;
    for (const auto& s : results) {
        csv << s.name << "," << s.cases << "," << s.violations << "\n";
        total_violations += s.violations;
    }
    if (!out_path.empty()) write_file(out_path, csv.str());

    for (const auto& s : results) {
        std::cout << (s.violations == 0 ? "pass " : "FAIL ") << s.name << ": " << s.cases
                  << " cases, " << s.violations << " violations\n";
        for (const auto& d : s.details) std::cout << "    " << d << "\n";
    }
    return total_violations == 0 ? 0 : 4;
}

void apply_override(json& cfg, const std::string& spec) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos) bad_config("override must look like key=value");
    const std::string path = spec.substr(0, eq);
    const std::string raw = spec.substr(eq + 1);
    json value;
    try {
        value = json::parse(raw);
    } catch (const json::exception&) {
        value = raw;  // plain string
    }
    json* node = &cfg;
    std::size_t start = 0;
    while (true) {
        const auto dot = path.find('.', start);
        const std::string key = path.substr(start, dot - start);
        if (key.empty()) bad_config("bad override path " + path);
        if (dot == std::string::npos) {
            (*node)[key] = value;
            break;
        }
        node = &(*node)[key];
        start = dot + 1;
    }
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"fracflow: solver and experiment runner for time-fractional gradient flows"};
    app.require_subcommand(1);

    std::string config_path, out_path;
    std::vector<std::string> overrides;
    std::string command;
    for (const char* name : {"solve", "convergence", "adaptive", "properties"}) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "JSON config file")->required();
        sub->add_option("--out", out_path, "output CSV path");
        sub->add_option("--override", overrides, "key=value config overrides");
        sub->callback([&command, name] { command = name; });
    }

    std::vector<const char*> argv;
    argv.push_back("fracflow");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    json cfg;
    try {
        std::ifstream in(config_path);
        if (!in) bad_config("cannot open config file " + config_path);
        try {
            in >> cfg;
        } catch (const json::exception& e) {
            bad_config(std::string("JSON parse failure: ") + e.what());
        }
        if (!cfg.is_object()) bad_config("config root must be an object");
        for (const auto& o : overrides) apply_override(cfg, o);
        check_keys(cfg, "config", kTopKeys);
        if (cfg.contains("command") && cfg["command"].get<std::string>() != command) {
            bad_config("config \"command\" does not match the subcommand");
        }
        if (out_path.empty() && cfg.contains("out")) out_path = cfg["out"].get<std::string>();

        if (command == "solve") return cmd_solve(cfg, out_path);
        if (command == "convergence") return cmd_convergence(cfg, out_path);
        if (command == "adaptive") return cmd_adaptive(cfg, out_path);
        if (command == "properties") return cmd_properties(cfg, out_path);
        bad_config("unknown command");
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.message << "\n";
        return 2;
    } catch (const FlowError& e) {
        if (e.code() == ErrorCode::ConfigError) {
            std::cerr << "config error: " << e.what() << "\n";
            return 2;
        }
        std::cerr << "solver error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}

}  // namespace fracflow::cli
