// Adversarial election simulator CLI: estimate detection probabilities for a
// single configuration, or sweep a grid and emit the fixed-column CSV.

#include "e2ev/sim.hpp"
#include "e2ev/workspace.hpp"

#include <CLI11.hpp>

#include <cstdio>

namespace {

e2ev::SimConfig config_from_json(const nlohmann::json& j) {
    e2ev::SimConfig cfg;
    cfg.n_voters = j.value("n_voters", cfg.n_voters);
    cfg.candidates = j.value("candidates", cfg.candidates);
    cfg.challenge_q = j.value("q", cfg.challenge_q);
    cfg.receipt_rho = j.value("rho", cfg.receipt_rho);
    cfg.cheat_f = j.value("f", cfg.cheat_f);
    cfg.drop_d = j.value("d", cfg.drop_d);
    cfg.trials = j.value("trials", cfg.trials);
    cfg.seed = j.value("seed", cfg.seed);
    cfg.group = e2ev::group_by_name(j.value("group", std::string("toy")));
    return cfg;
}

void print_estimate(const e2ev::SimConfig& cfg, const e2ev::DetectionEstimate& est) {
    std::printf("voters %llu, candidates %zu, q %.4f, rho %.4f, f %.4f, d %.4f, trials %llu\n",
                (unsigned long long)cfg.n_voters, cfg.candidates, cfg.challenge_q,
                cfg.receipt_rho, cfg.cheat_f, cfg.drop_d, (unsigned long long)est.trials);
    std::printf("detected %llu/%llu = %.6f  (95%% CI %.6f..%.6f)\n",
                (unsigned long long)est.detected, (unsigned long long)est.trials, est.empirical,
                est.ci_low, est.ci_high);
    std::printf("analytic %.6f, deviation %.6f\n", est.analytic, est.deviation);
    std::printf("challenge channel: empirical %.6f vs analytic %.6f\n", est.empirical_challenge,
                est.analytic_challenge);
    std::printf("receipt channel:   empirical %.6f vs analytic %.6f\n", est.empirical_receipt,
                est.analytic_receipt);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"adversarial election simulator"};
    app.require_subcommand(1);
    std::string config_path, out_path;

    CLI::App* run = app.add_subcommand("run", "estimate detection for one configuration");
    run->add_option("--config", config_path, "simulation config json")->required();
    run->add_option("--out", out_path, "also write a one-row csv here");

    CLI::App* sweep = app.add_subcommand("sweep", "run a config grid and emit csv");
    sweep->add_option("--config", config_path, "grid config json: {\"rows\":[...]}")->required();
    sweep->add_option("--out", out_path, "csv output path (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        nlohmann::json j = e2ev::jsonu::parse(e2ev::read_file(config_path));
        if (run->parsed()) {
            e2ev::SimConfig cfg = config_from_json(j);
            e2ev::DetectionEstimate est = e2ev::estimate_detection(cfg);
            print_estimate(cfg, est);
            if (!out_path.empty()) e2ev::write_file(out_path, e2ev::sweep_csv({cfg}));
        } else {
            std::vector<e2ev::SimConfig> grid;
            for (const auto& row : e2ev::jsonu::get_array(j, "rows")) {
                grid.push_back(config_from_json(row));
            }
            if (grid.empty()) throw std::invalid_argument("sweep: empty grid");
            std::string csv = e2ev::sweep_csv(grid);
            if (out_path.empty()) {
                std::fputs(csv.c_str(), stdout);
            } else {
                e2ev::write_file(out_path, csv);
                std::printf("wrote %zu rows to %s\n", grid.size(), out_path.c_str());
            }
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
