// Election orchestration CLI. Every command is a thin wrapper over the runtime
// library and operates on a workspace directory: manifest.json, board.ndjson,
// keys/ (secret), receipts/, reports/, claims/. Verification is delegated to
// the separately built e2ev-verify binary, on purpose: the verifier must not
// share a process, or a code path, with the machinery it audits.

#include "e2ev/http_board.hpp"
#include "e2ev/sim.hpp"
#include "e2ev/tally.hpp"
#include "e2ev/workspace.hpp"

#include <CLI11.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <atomic>
#include <csignal>
#include <cstdio>
#include <filesystem>

namespace {

using namespace e2ev;

size_t parse_selection(const ElectionManifest& manifest, const std::string& arg) {
    for (size_t i = 0; i < manifest.candidates.size(); i++) {
        if (manifest.candidates[i] == arg) return i;
    }
    try {
        size_t pos = 0;
        unsigned long v = std::stoul(arg, &pos);
        if (pos == arg.size() && v < manifest.candidates.size()) return v;
    } catch (const std::exception&) {
    }
    throw std::invalid_argument("unknown candidate: " + arg);
}

std::string own_binary_dir() {
    char buf[4096];
    ssize_t n = ::readlink("/proc/self/exe", buf, sizeof(buf) - 1);
    if (n <= 0) return "";
    buf[n] = '\0';
    return std::filesystem::path(buf).parent_path().string();
}

int run_verifier(const std::vector<std::string>& args) {
    std::string dir = own_binary_dir();
    std::string bin = dir.empty() ? "e2ev-verify" : dir + "/e2ev-verify";
    std::vector<char*> argv;
    argv.push_back(const_cast<char*>(bin.c_str()));
    for (const std::string& a : args) argv.push_back(const_cast<char*>(a.c_str()));
    argv.push_back(nullptr);
    pid_t pid = ::fork();
    if (pid < 0) throw std::runtime_error("fork failed");
    if (pid == 0) {
        ::execvp(bin.c_str(), argv.data());
        std::perror("execvp e2ev-verify");
        _exit(127);
    }
    int status = 0;
    ::waitpid(pid, &status, 0);
    if (WIFEXITED(status)) return WEXITSTATUS(status);
    return 2;
}

uint64_t fresh_seed() {
    SystemRng rng;
    return rng.u64();
}

DeviceConfig device_config_from_flags(double cheat, double drop, double bad_sig,
                                      std::optional<uint64_t> seed) {
    DeviceConfig cfg;
    cfg.cheat_rate = cheat;
    cfg.drop_rate = drop;
    cfg.bad_signature_rate = bad_sig;
    cfg.seed = seed ? *seed : fresh_seed();
    return cfg;
}

std::atomic<bool> g_stop{false};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"end-to-end verifiable election toolkit"};
    app.require_subcommand(1);

    std::string workspace_dir, config_path;
    app.add_option("--workspace", workspace_dir, "election workspace directory");

    // setup
    CLI::App* setup = app.add_subcommand("setup", "generate keys, manifest, and board");
    std::string candidates_csv, group_name, election_id;
    uint32_t trustees = 0;
    std::optional<uint64_t> seed;
    setup->add_option("--config", config_path, "setup config json");
    setup->add_option("--candidates", candidates_csv, "comma-separated candidate labels");
    setup->add_option("--trustees", trustees, "trustee count");
    setup->add_option("--group", group_name, "test | toy | production");
    setup->add_option("--election-id", election_id, "election identifier");
    setup->add_option("--seed", seed, "deterministic key generation seed");

    // vote / challenge share flags
    std::string selection_arg;
    double cheat = 0.0, drop = 0.0, bad_sig = 0.0;
    std::optional<uint64_t> device_seed;
    CLI::App* vote = app.add_subcommand("vote", "encrypt, commit, and cast one ballot");
    CLI::App* challenge =
        app.add_subcommand("challenge", "encrypt, commit, and audit one ballot");
    for (CLI::App* cmd : {vote, challenge}) {
        cmd->add_option("--selection", selection_arg, "candidate label or index")->required();
        cmd->add_option("--cheat", cheat, "device cheat rate (experiments)");
        cmd->add_option("--drop", drop, "device drop rate (experiments)");
        cmd->add_option("--bad-signature", bad_sig, "device bad signature rate (experiments)");
        cmd->add_option("--device-seed", device_seed, "device rng seed");
    }

    CLI::App* tally = app.add_subcommand("tally", "aggregate, decrypt, publish, and close");
    std::optional<uint64_t> tally_seed;
    tally->add_option("--seed", tally_seed, "proof randomness seed");

    CLI::App* verify = app.add_subcommand("verify", "run the independent verifier");
    std::string receipt_path;
    verify->add_option("--receipt", receipt_path, "also check this receipt");

    CLI::App* adjudicate_cmd = app.add_subcommand("adjudicate", "decide a dispute claim");
    std::string claim_path;
    adjudicate_cmd->add_option("--claim", claim_path, "claim json file")->required();

    CLI::App* simulate = app.add_subcommand("simulate", "estimate misbehavior detection");
    std::string sim_out;
    simulate->add_option("--config", config_path, "simulation config json")->required();
    simulate->add_option("--out", sim_out, "write a one-row csv here");

    CLI::App* serve = app.add_subcommand("board-serve", "serve the board over http");
    std::string host = "127.0.0.1";
    int port = 0;
    serve->add_option("--host", host, "bind address");
    serve->add_option("--port", port, "port (0 = ephemeral)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (simulate->parsed()) {
            nlohmann::json j = jsonu::parse(read_file(config_path));
            SimConfig cfg;
            cfg.n_voters = j.value("n_voters", cfg.n_voters);
            cfg.candidates = j.value("candidates", cfg.candidates);
            cfg.challenge_q = j.value("q", cfg.challenge_q);
            cfg.receipt_rho = j.value("rho", cfg.receipt_rho);
            cfg.cheat_f = j.value("f", cfg.cheat_f);
            cfg.drop_d = j.value("d", cfg.drop_d);
            cfg.trials = j.value("trials", cfg.trials);
            cfg.seed = j.value("seed", cfg.seed);
            cfg.group = group_by_name(j.value("group", std::string("toy")));
            DetectionEstimate est = estimate_detection(cfg);
            std::printf("detected %llu/%llu = %.6f (analytic %.6f, deviation %.6f)\n",
                        (unsigned long long)est.detected, (unsigned long long)est.trials,
                        est.empirical, est.analytic, est.deviation);
            if (!sim_out.empty()) write_file(sim_out, sweep_csv({cfg}));
            return 0;
        }

        if (workspace_dir.empty()) throw std::invalid_argument("--workspace is required");
        Workspace ws(workspace_dir);

        if (setup->parsed()) {
            SetupParams params;
            if (!config_path.empty()) {
                nlohmann::json j = jsonu::parse(read_file(config_path));
                params.election_id = j.value("election_id", params.election_id);
                params.trustees = j.value("trustees", params.trustees);
                params.group_name = j.value("group", params.group_name);
                if (j.contains("candidates")) {
                    for (const auto& c : jsonu::get_array(j, "candidates")) {
                        params.candidates.push_back(c.get<std::string>());
                    }
                }
                if (j.contains("seed")) params.seed = jsonu::get_u64(j, "seed");
            }
            if (!candidates_csv.empty()) {
                params.candidates.clear();
                std::stringstream ss(candidates_csv);
                std::string label;
                while (std::getline(ss, label, ',')) params.candidates.push_back(label);
            }
            if (trustees > 0) params.trustees = trustees;
            if (!group_name.empty()) params.group_name = group_name;
            if (!election_id.empty()) params.election_id = election_id;
            if (seed) params.seed = seed;
            ws = Workspace::setup(workspace_dir, params);
            ElectionManifest m = ws.load_manifest();
            std::printf("workspace %s ready\n", ws.dir().c_str());
            std::printf("manifest hash %s\n", digest_hex(m.manifest_hash).c_str());
            std::printf("candidates %zu, trustees %u, group %s\n", m.candidates.size(),
                        params.trustees, params.group_name.c_str());
            return 0;
        }

        if (vote->parsed() || challenge->parsed()) {
            BoardLock lock(ws.lock_path());
            Board board = Board::open_file(ws.board_path());
            ElectionManifest manifest = board.manifest();
            size_t selection = parse_selection(manifest, selection_arg);
            Device device(device_config_from_flags(cheat, drop, bad_sig, device_seed), manifest,
                          ws.device_sign_sk(), ws.code_key());
            DeviceSession session = device.begin(selection);
            std::printf("commitment %s\n", digest_hex(session.commitment()).c_str());
            if (vote->parsed()) {
                Receipt receipt = device.finalize_cast(session, board);
                write_file(ws.receipt_path(receipt.ballot_hash),
                           receipt_canonical(manifest.group, receipt) + "\n");
                bool posted =
                    board.lookup(receipt.ballot_hash).kind == Board::LookupKind::CastFound;
                std::printf("cast %s, return code %s\n", posted ? "posted" : "NOT POSTED",
                            receipt.return_code.c_str());
                std::printf("receipt %s\n", ws.receipt_path(receipt.ballot_hash).c_str());
            } else {
                ChallengeRecord rec = device.finalize_challenge(session, board);
                BallotCheck opened =
                    open_ballot(manifest, rec.ballot, rec.randomness, rec.claimed_selection);
                std::printf("challenge posted, opening %s\n",
                            opened.ok ? "consistent" : ("INCONSISTENT: " + opened.reason).c_str());
                return opened.ok ? 0 : 1;
            }
            return 0;
        }

        if (tally->parsed()) {
            BoardLock lock(ws.lock_path());
            Board board = Board::open_file(ws.board_path());
            std::unique_ptr<RandomSource> rng;
            if (tally_seed) {
                rng = std::make_unique<DeterministicRng>(*tally_seed);
            } else {
                rng = std::make_unique<SystemRng>();
            }
            TallyArtifact artifact = run_tally(board, ws.all_trustees(), *rng);
            board.append_close(ws.code_key(), ws.authority_sk(), *rng);
            std::printf("cast %llu\n", (unsigned long long)artifact.cast_count);
            ElectionManifest manifest = board.manifest();
            for (size_t i = 0; i < artifact.counts.size(); i++) {
                std::printf("%s %llu\n", manifest.candidates[i].c_str(),
                            (unsigned long long)artifact.counts[i]);
            }
            std::printf("board closed at %llu entries\n", (unsigned long long)board.size());
            return 0;
        }

        if (verify->parsed()) {
            std::vector<std::string> args = {"--manifest", ws.manifest_path(), "--board",
                                             ws.board_path(), "--report",
                                             ws.reports_dir() + "/verify.json"};
            if (!receipt_path.empty()) {
                args.push_back("--receipt");
                args.push_back(receipt_path);
            }
            return run_verifier(args);
        }

        if (adjudicate_cmd->parsed()) {
            Board board = Board::open_file(ws.board_path());
            DisputeClaim claim = parse_claim(board.manifest().group, read_file(claim_path));
            std::string filed = ws.claim_path(claim.receipt.ballot_hash);
            if (std::filesystem::exists(filed)) {
                throw std::runtime_error("claim already filed for this receipt: " + filed);
            }
            write_file(filed, claim_canonical(board.manifest().group, claim) + "\n");
            AdjudicationResult result = adjudicate(claim, board);
            std::string report = adjudication_report(claim, result);
            write_file(ws.reports_dir() + "/adjudication-" +
                           digest_hex(claim.receipt.ballot_hash) + ".txt",
                       report);
            std::fputs(report.c_str(), stdout);
            return 0;
        }

        if (serve->parsed()) {
            BoardLock lock(ws.lock_path());
            Board board = Board::open_file(ws.board_path());
            BoardServer server(board);
            int bound = server.start(host, port);
            std::printf("serving board on %s:%d (%llu entries)\n", host.c_str(), bound,
                        (unsigned long long)board.size());
            std::fflush(stdout);
            std::signal(SIGINT, [](int) { g_stop = true; });
            std::signal(SIGTERM, [](int) { g_stop = true; });
            while (!g_stop) usleep(100000);
            server.stop();
            return 0;
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
