#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "dihyper/acceptance.hpp"
#include "dihyper/diffusion_operator.hpp"
#include "dihyper/generator.hpp"
#include "dihyper/quadratic.hpp"
#include "dihyper/spectral.hpp"
#include "dihyper/sssl.hpp"
#include "dihyper/trajectory.hpp"

namespace {

using nlohmann::json;
using namespace dihyper;

constexpr int kExitUsage = 1;
constexpr int kExitInput = 2;
constexpr int kExitVerification = 3;

void emit(const std::string& output, const std::string& text) {
    if (output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream os(output);
    if (!os) throw std::invalid_argument("cannot open output file: " + output);
    os << text;
}

// Optional "f0" array in the input JSON; falls back to a seeded gaussian.
DensityVector initial_density(const std::string& input_path, const DirectedHypergraph& h,
                              uint64_t seed) {
    std::ifstream in(input_path);
    std::ostringstream ss;
    ss << in.rdbuf();
    json j = json::parse(ss.str());
    if (j.contains("f0")) {
        auto f = j.at("f0").get<std::vector<double>>();
        if (f.size() != static_cast<size_t>(h.n))
            throw std::invalid_argument("f0 length must equal the vertex count");
        return f;
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    DensityVector f(h.n);
    for (double& x : f) x = gauss(rng);
    return f;
}

std::map<int, double> load_labels(const std::string& path, const DirectedHypergraph& h) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open labels file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    json j = json::parse(ss.str());
    std::map<int, double> labels;
    for (const auto& [key, val] : j.at("labels").items()) {
        int u = -1;
        for (size_t i = 0; i < h.names.size(); ++i)
            if (h.names[i] == key) u = static_cast<int>(i);
        if (u < 0) u = std::stoi(key);
        labels[u] = val.get<double>();
    }
    return labels;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

int print_table(const std::vector<CriterionResult>& results, const std::string& output) {
    bool all_pass = true;
    for (const auto& r : results) {
        std::printf("[%s] %2d %-28s %s\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(),
                    r.detail.c_str());
        all_pass = all_pass && r.pass;
    }
    std::printf("%s\n", all_pass ? "all criteria passed" : "verification FAILED");
    if (!output.empty()) {
        json summary;
        summary["all_pass"] = all_pass;
        json rows = json::array();
        for (const auto& r : results)
            rows.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
        summary["criteria"] = std::move(rows);
        emit(output, dump(summary));
    }
    return all_pass ? 0 : kExitVerification;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Diffusion operator on edge-weighted directed hypergraphs: "
                 "expansion estimation and semi-supervised optimization"};
    app.require_subcommand(1);
    app.fallthrough(); // --seed/--threads may follow the subcommand

    std::string input, output, labels_path, densities_path;
    uint64_t seed = 1;
    int threads = 1;
    double step_size = 0, max_time = 10, grad_tol = 0;
    int restarts = 8, order = 2;
    bool exact = false;
    std::string mode = "diffusion";

    app.add_option("--seed", seed, "RNG seed shared by all randomized stages");
    app.add_option("--threads", threads, "parallel restarts/trials (reserved)");

    auto add_io = [&](CLI::App* cmd, bool need_input) {
        auto* opt = cmd->add_option("--input", input, "hypergraph JSON file");
        if (need_input) opt->required();
        cmd->add_option("--output", output, "output file (default stdout)");
    };

    CLI::App* cmd_exp = app.add_subcommand("expansion", "directed hyperedge expansion phi_H");
    add_io(cmd_exp, true);
    cmd_exp->add_flag("--exact", exact, "exhaustive enumeration (n <= 20)");

    CLI::App* cmd_diffuse = app.add_subcommand("diffuse", "integrate df/dt = -L f, emit CSV");
    add_io(cmd_diffuse, true);
    cmd_diffuse->add_option("--step", step_size, "step size h (default normalized 1e-3)");
    cmd_diffuse->add_option("--max-time", max_time, "time horizon");
    cmd_diffuse->add_option("--grad-tol", grad_tol, "stop when ||L f|| drops below");
    cmd_diffuse->add_option("--densities", densities_path, "also dump per-vertex densities (JSONL)");

    CLI::App* cmd_spectral = app.add_subcommand("spectral", "estimate gamma2 and a sweep cut");
    add_io(cmd_spectral, true);
    cmd_spectral->add_option("--restarts", restarts, "diffusion restarts");
    cmd_spectral->add_option("--max-time", max_time, "per-restart horizon");

    CLI::App* cmd_sssl = app.add_subcommand("sssl", "semi-supervised label prediction");
    add_io(cmd_sssl, true);
    cmd_sssl->add_option("--labels", labels_path, "labels JSON file")->required();
    cmd_sssl->add_option("--mode", mode, "diffusion | subgradient");
    cmd_sssl->add_option("--step", step_size, "step size");
    cmd_sssl->add_option("--max-time", max_time, "diffusion horizon");
    cmd_sssl->add_option("--grad-tol", grad_tol, "gradient stopping tolerance");

    CLI::App* cmd_verify = app.add_subcommand(
        "verify", "run the verification battery (or instance checks with --input)");
    add_io(cmd_verify, false);

    CLI::App* cmd_deriv = app.add_subcommand("derivatives", "derivative tower dump");
    add_io(cmd_deriv, true);
    cmd_deriv->add_option("--order", order, "max derivative order k");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (cmd_exp->parsed()) {
            DirectedHypergraph h = load_hypergraph(input);
            json out;
            if (exact || h.n <= 16) {
                ExpansionResult res = brute_force_phi_H(h);
                out["phi_H"] = res.phi_H;
                out["S"] = res.argmin;
                out["exact"] = true;
            } else {
                IntegratorConfig cfg;
                cfg.max_time = max_time > 0 ? max_time : 40;
                SpectralResult est = estimate_gamma2(h, restarts, cfg, seed, threads);
                out["phi_upper_bound"] = est.sweep.phi;
                out["S"] = est.sweep.S;
                out["exact"] = false;
            }
            emit(output, dump(out));
        } else if (cmd_diffuse->parsed()) {
            DirectedHypergraph h = load_hypergraph(input);
            IntegratorConfig cfg;
            cfg.h = step_size;
            cfg.max_time = max_time;
            cfg.stop_grad_tol = grad_tol;
            auto recs = run(h, initial_density(input, h, seed), cfg);
            std::ostringstream csv;
            write_trajectory_csv(csv, recs);
            emit(output, csv.str());
            if (!densities_path.empty()) {
                std::ofstream ds(densities_path);
                write_density_jsonl(ds, recs);
            }
        } else if (cmd_spectral->parsed()) {
            DirectedHypergraph h = load_hypergraph(input);
            IntegratorConfig cfg;
            cfg.max_time = max_time > 0 ? max_time : 40;
            SpectralResult res = estimate_gamma2(h, restarts, cfg, seed, threads);
            json out;
            out["gamma2"] = res.gamma2;
            out["residual"] = res.residual;
            out["phi_sweep"] = res.sweep.phi;
            out["S"] = res.sweep.S;
            emit(output, dump(out));
        } else if (cmd_sssl->parsed()) {
            DirectedHypergraph h = load_hypergraph(input);
            auto labels = load_labels(labels_path, h);
            LabelProblem prob = make_label_problem(std::move(h), labels);
            SolveParams params;
            params.h = step_size;
            if (grad_tol > 0) params.grad_tol = grad_tol;
            if (max_time > 0) params.max_time = max_time;
            SolveMode m = mode == "subgradient" ? SolveMode::Subgradient : SolveMode::Diffusion;
            SolveReport rep = solve(prob, m, params);
            json out;
            out["f"] = rep.f_star;
            out["Q"] = rep.Q_star;
            out["iterations"] = rep.iterations;
            out["grad_norm"] = rep.grad_norm_final;
            emit(output, dump(out));
        } else if (cmd_verify->parsed()) {
            std::vector<CriterionResult> results;
            if (input.empty()) {
                results = run_acceptance(seed);
            } else {
                DirectedHypergraph h = load_hypergraph(input);
                results = run_instance_checks(h, seed);
            }
            return print_table(results, output);
        } else if (cmd_deriv->parsed()) {
            DirectedHypergraph h = load_hypergraph(input);
            DensityVector f0 = initial_density(input, h, seed);
            DerivativeTower tower = derivative_tower(h, f0, order);
            json out;
            out["k"] = tower.k;
            json levels = json::array();
            for (const auto& lvl : tower.levels) {
                json jl;
                jl["f"] = lvl.f;
                jl["classes"] = lvl.sigma.classes;
                json st = json::array(), dl = json::array();
                for (size_t e = 0; e < lvl.status.size(); ++e) {
                    st.push_back(lvl.status[e] == EdgeStatus::Active
                                     ? "active"
                                     : (lvl.status[e] == EdgeStatus::Inactive ? "inactive"
                                                                              : "ambiguous"));
                    dl.push_back(lvl.delta[e]);
                }
                jl["edge_status"] = st;
                jl["delta"] = dl;
                levels.push_back(std::move(jl));
            }
            out["levels"] = std::move(levels);
            emit(output, dump(out));
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitVerification;
    }
    return 0;
}
