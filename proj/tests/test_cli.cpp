// Command-line tests: every assertion here drives the real binaries the way
// an election operator would, through a shell, against workspace directories
// on disk. E2EV_BIN_DIR points at the built executables.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "e2ev/verify.hpp"
#include "e2ev/workspace.hpp"

#include <httplib.h>

#include <fcntl.h>
#include <sys/wait.h>
#include <unistd.h>

#include <csignal>
#include <filesystem>
#include <random>

using namespace e2ev;
namespace fs = std::filesystem;

namespace {

std::string bin(const char* name) { return std::string(E2EV_BIN_DIR) + "/" + name; }

std::string temp_root() {
    static std::string root = [] {
        std::string r = "/tmp/e2ev-cli-" + std::to_string(::getpid());
        fs::create_directories(r);
        return r;
    }();
    return root;
}

struct CmdResult {
    int status = -1;
    std::string out;
};

CmdResult run_cmd(const std::string& cmdline) {
    static int counter = 0;
    std::string out_file = temp_root() + "/cmd-" + std::to_string(counter++) + ".out";
    int rc = std::system((cmdline + " >" + out_file + " 2>&1").c_str());
    CmdResult r;
    r.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    r.out = read_file(out_file);
    return r;
}

std::string ws_flag(const std::string& dir) { return " --workspace " + dir + " "; }

CmdResult e2ev_cmd(const std::string& dir, const std::string& rest) {
    return run_cmd(bin("e2ev") + ws_flag(dir) + rest);
}

std::string fresh_ws(const char* name) { return temp_root() + "/" + name; }

// "receipt /path/to/file.json" -> the path
std::string receipt_path_from(const std::string& vote_output) {
    size_t pos = vote_output.find("receipt ");
    REQUIRE(pos != std::string::npos);
    size_t end = vote_output.find('\n', pos);
    return vote_output.substr(pos + 8, end - pos - 8);
}

pid_t spawn(const std::vector<std::string>& args, const std::string& out_path) {
    pid_t pid = ::fork();
    REQUIRE(pid >= 0);
    if (pid == 0) {
        int fd = ::open(out_path.c_str(), O_CREAT | O_WRONLY | O_TRUNC, 0644);
        ::dup2(fd, 1);
        ::dup2(fd, 2);
        std::vector<char*> argv;
        for (const std::string& a : args) argv.push_back(const_cast<char*>(a.c_str()));
        argv.push_back(nullptr);
        ::execv(argv[0], argv.data());
        _exit(127);
    }
    return pid;
}

}  // namespace

TEST_CASE("guided lifecycle: setup, three votes, one challenge, tally, verify") {
    std::string dir = fresh_ws("basic");
    CmdResult setup = e2ev_cmd(dir, "setup --candidates A,B,C --group toy --seed 100");
    REQUIRE(setup.status == 0);
    CHECK(setup.out.find("manifest hash ") != std::string::npos);
    CHECK(fs::exists(dir + "/manifest.json"));
    CHECK(fs::exists(dir + "/board.ndjson"));
    CHECK(fs::exists(dir + "/keys/device.json"));

    CmdResult v1 = e2ev_cmd(dir, "vote --selection A --device-seed 1");
    REQUIRE(v1.status == 0);
    CHECK(v1.out.find("commitment ") != std::string::npos);
    CHECK(v1.out.find("cast posted, return code ") != std::string::npos);
    CmdResult v2 = e2ev_cmd(dir, "vote --selection A --device-seed 2");
    REQUIRE(v2.status == 0);
    CmdResult v3 = e2ev_cmd(dir, "vote --selection B --device-seed 3");
    REQUIRE(v3.status == 0);

    CmdResult ch = e2ev_cmd(dir, "challenge --selection C --device-seed 4");
    REQUIRE(ch.status == 0);
    CHECK(ch.out.find("opening consistent") != std::string::npos);

    CmdResult tally = e2ev_cmd(dir, "tally --seed 5");
    REQUIRE(tally.status == 0);
    CHECK(tally.out.find("cast 3\n") != std::string::npos);
    CHECK(tally.out.find("A 2\n") != std::string::npos);
    CHECK(tally.out.find("B 1\n") != std::string::npos);
    CHECK(tally.out.find("C 0\n") != std::string::npos);
    CHECK(tally.out.find("board closed at 7 entries") != std::string::npos);

    CmdResult verify = e2ev_cmd(dir, "verify");
    REQUIRE(verify.status == 0);
    CHECK(verify.out.find("verdict: PASS") != std::string::npos);
    CHECK(verify.out.find("counts: 2 1 0") != std::string::npos);
    std::string report_text = read_file(dir + "/reports/verify.json");
    CHECK(report_text.find("\"verdict\":\"PASS\"") != std::string::npos);

    // the saved receipt checks out; a mangled copy does not
    std::string rp = receipt_path_from(v1.out);
    CmdResult rcheck = e2ev_cmd(dir, "verify --receipt " + rp);
    CHECK(rcheck.status == 0);
    CHECK(rcheck.out.find("receipt: Included") != std::string::npos);

    std::string forged_path = dir + "/forged-receipt.json";
    std::string receipt_text = read_file(rp);
    size_t hpos = receipt_text.find("\"ballot_hash\":\"") + 15;
    receipt_text[hpos] = receipt_text[hpos] == '0' ? '1' : '0';
    write_file(forged_path, receipt_text);
    CmdResult fcheck = e2ev_cmd(dir, "verify --receipt " + forged_path);
    CHECK(fcheck.status == 1);
    CHECK(fcheck.out.find("receipt: SignatureInvalid") != std::string::npos);
}

TEST_CASE("selections accept labels and indices and reject strangers") {
    std::string dir = fresh_ws("selections");
    REQUIRE(e2ev_cmd(dir, "setup --candidates X,Y --group toy --seed 200").status == 0);
    CHECK(e2ev_cmd(dir, "vote --selection 1 --device-seed 10").status == 0);
    CHECK(e2ev_cmd(dir, "vote --selection Y --device-seed 11").status == 0);
    CmdResult bad = e2ev_cmd(dir, "vote --selection Z --device-seed 12");
    CHECK(bad.status == 1);
    CHECK(bad.out.find("unknown candidate: Z") != std::string::npos);
    CmdResult oob = e2ev_cmd(dir, "vote --selection 2 --device-seed 13");
    CHECK(oob.status == 1);
}

TEST_CASE("setup refuses to overwrite an existing election") {
    std::string dir = fresh_ws("no-clobber");
    REQUIRE(e2ev_cmd(dir, "setup --candidates A,B --group toy --seed 300").status == 0);
    REQUIRE(e2ev_cmd(dir, "vote --selection A --device-seed 1").status == 0);
    CmdResult again = e2ev_cmd(dir, "setup --candidates A,B --group toy --seed 301");
    CHECK(again.status == 1);
    CHECK(again.out.find("already initialized") != std::string::npos);
    // the original board survived
    Board board = Board::open_file(dir + "/board.ndjson");
    CHECK(board.size() == 2);
}

TEST_CASE("the board lock serializes writers") {
    std::string dir = fresh_ws("locking");
    REQUIRE(e2ev_cmd(dir, "setup --candidates A,B --group toy --seed 400").status == 0);
    write_file(dir + "/board.lock", "");
    CmdResult blocked = e2ev_cmd(dir, "vote --selection A --device-seed 1");
    CHECK(blocked.status == 1);
    CHECK(blocked.out.find("board lock held") != std::string::npos);
    fs::remove(dir + "/board.lock");
    CHECK(e2ev_cmd(dir, "vote --selection A --device-seed 1").status == 0);
}

TEST_CASE("verifier exit codes separate tampering from garbage") {
    std::string dir = fresh_ws("exit-codes");
    REQUIRE(e2ev_cmd(dir, "setup --candidates A,B --group toy --seed 500").status == 0);
    REQUIRE(e2ev_cmd(dir, "vote --selection B --device-seed 1").status == 0);
    REQUIRE(e2ev_cmd(dir, "tally --seed 2").status == 0);
    std::string manifest = dir + "/manifest.json";
    std::string board = dir + "/board.ndjson";

    CHECK(run_cmd(bin("e2ev-verify") + " --manifest " + manifest + " --board " + board).status ==
          0);
    // unreadable input
    CHECK(run_cmd(bin("e2ev-verify") + " --manifest " + dir + "/nope.json --board " + board)
              .status == 2);

    // garbage line: undecodable evidence
    std::string garbage = dir + "/garbage.ndjson";
    write_file(garbage, read_file(board) + "zzz\n");
    CmdResult g = run_cmd(bin("e2ev-verify") + " --manifest " + manifest + " --board " + garbage);
    CHECK(g.status == 2);
    CHECK(g.out.find("check decode: FAIL") != std::string::npos);

    // truncated board: decodes but the close entry is gone
    std::string bytes = read_file(board);
    size_t last_line = bytes.rfind('\n', bytes.size() - 2);
    std::string truncated = dir + "/truncated.ndjson";
    write_file(truncated, bytes.substr(0, last_line + 1));
    CmdResult t =
        run_cmd(bin("e2ev-verify") + " --manifest " + manifest + " --board " + truncated);
    CHECK(t.status == 1);
    CHECK(t.out.find("verdict: FAIL") != std::string::npos);

    // tampered payload byte: the chain pins the entry
    std::string tampered = bytes;
    size_t pay = tampered.find("\"payload\":\"");
    REQUIRE(pay != std::string::npos);
    size_t ch = pay + 11;
    tampered[ch] = tampered[ch] == 'a' ? 'b' : 'a';
    std::string tampered_path = dir + "/tampered.ndjson";
    write_file(tampered_path, tampered);
    CmdResult tm =
        run_cmd(bin("e2ev-verify") + " --manifest " + manifest + " --board " + tampered_path);
    CHECK(tm.status != 0);  // either the chain (1) or the line decode (2) rejects it

    // report file is written and carries the same verdict
    std::string report = dir + "/fail-report.json";
    run_cmd(bin("e2ev-verify") + " --manifest " + manifest + " --board " + truncated +
            " --report " + report);
    CHECK(read_file(report).find("\"verdict\":\"FAIL\"") != std::string::npos);
}

TEST_CASE("disputes are filed and decided from the shell") {
    std::string dir = fresh_ws("dispute");
    REQUIRE(e2ev_cmd(dir, "setup --candidates A,B --group toy --seed 600").status == 0);
    CmdResult dropped = e2ev_cmd(dir, "vote --selection A --drop 1 --device-seed 1");
    REQUIRE(dropped.status == 0);
    CHECK(dropped.out.find("NOT POSTED") != std::string::npos);
    std::string rp = receipt_path_from(dropped.out);
    REQUIRE(e2ev_cmd(dir, "vote --selection B --device-seed 2").status == 0);
    REQUIRE(e2ev_cmd(dir, "tally --seed 3").status == 0);

    std::string receipt_text = read_file(rp);
    while (!receipt_text.empty() && receipt_text.back() == '\n') receipt_text.pop_back();
    std::string claim_path = dir + "/claim.json";
    write_file(claim_path, "{\"receipt\":" + receipt_text +
                               ",\"kind\":\"NotIncluded\",\"observed_issuance\":false}");
    CmdResult adj = e2ev_cmd(dir, "adjudicate --claim " + claim_path);
    REQUIRE(adj.status == 0);
    CHECK(adj.out.find("Upheld") != std::string::npos);

    // the claim is on file and cannot be filed twice
    size_t hpos = receipt_text.find("\"ballot_hash\":\"") + 15;
    std::string hash_hex = receipt_text.substr(hpos, 64);
    CHECK(fs::exists(dir + "/claims/" + hash_hex + ".json"));
    CHECK(fs::exists(dir + "/reports/adjudication-" + hash_hex + ".txt"));
    CmdResult again = e2ev_cmd(dir, "adjudicate --claim " + claim_path);
    CHECK(again.status == 1);
    CHECK(again.out.find("already filed") != std::string::npos);
}

TEST_CASE("simulator commands emit the csv contract") {
    std::string cfg_path = temp_root() + "/sim-cfg.json";
    write_file(cfg_path,
               "{\"n_voters\":6,\"candidates\":2,\"q\":0.5,\"f\":0.5,\"trials\":12,"
               "\"seed\":9,\"group\":\"toy\"}");
    std::string csv_path = temp_root() + "/sim-out.csv";

    CmdResult run = run_cmd(bin("e2ev-sim") + " run --config " + cfg_path + " --out " + csv_path);
    REQUIRE(run.status == 0);
    CHECK(run.out.find("detected ") != std::string::npos);
    CHECK(run.out.find("analytic ") != std::string::npos);
    std::string csv = read_file(csv_path);
    CHECK(csv.substr(0, 2) == "N,");
    CHECK(csv.find("\n6,0.500000,") != std::string::npos);

    std::string grid_path = temp_root() + "/sim-grid.json";
    write_file(grid_path,
               "{\"rows\":[{\"n_voters\":5,\"q\":1.0,\"f\":1.0,\"trials\":4,\"seed\":1},"
               "{\"n_voters\":5,\"rho\":1.0,\"d\":1.0,\"trials\":4,\"seed\":2}]}");
    CmdResult sweep = run_cmd(bin("e2ev-sim") + " sweep --config " + grid_path);
    REQUIRE(sweep.status == 0);
    size_t lines = 0;
    for (char c : sweep.out) lines += c == '\n' ? 1 : 0;
    CHECK(lines == 3);  // header + 2 rows

    // the orchestrator front-end reaches the same simulator
    CmdResult via_e2ev = run_cmd(bin("e2ev") + " simulate --config " + cfg_path);
    CHECK(via_e2ev.status == 0);
    CHECK(via_e2ev.out.find("detected ") != std::string::npos);
}

TEST_CASE("randomized elections driven end to end through the shell") {
    std::mt19937_64 rng(20260822);
    for (int round = 0; round < 15; round++) {
        std::string dir = fresh_ws(("rand-" + std::to_string(round)).c_str());
        REQUIRE(e2ev_cmd(dir, "setup --candidates A,B,C --group toy --seed " +
                                  std::to_string(7000 + round))
                    .status == 0);
        std::vector<uint64_t> truth(3, 0);
        uint64_t votes = 0, challenges = 0;
        size_t actions = 3 + rng() % 10;
        for (size_t a = 0; a < actions; a++) {
            size_t sel = rng() % 3;
            std::string seed_flag = " --device-seed " + std::to_string(rng() % 100000);
            if (rng() % 4 == 0) {
                CmdResult ch = e2ev_cmd(dir, "challenge --selection " + std::to_string(sel) +
                                                 seed_flag);
                REQUIRE(ch.status == 0);
                challenges++;
            } else {
                CmdResult v =
                    e2ev_cmd(dir, "vote --selection " + std::to_string(sel) + seed_flag);
                REQUIRE(v.status == 0);
                truth[sel]++;
                votes++;
            }
        }
        CmdResult tally = e2ev_cmd(dir, "tally --seed " + std::to_string(8000 + round));
        REQUIRE(tally.status == 0);
        CHECK(tally.out.find("board closed at " + std::to_string(1 + votes + challenges + 2) +
                             " entries") != std::string::npos);

        CmdResult verify = e2ev_cmd(dir, "verify");
        REQUIRE(verify.status == 0);
        std::string expect = "counts: " + std::to_string(truth[0]) + " " +
                             std::to_string(truth[1]) + " " + std::to_string(truth[2]);
        CHECK(verify.out.find("verdict: PASS") != std::string::npos);
        CHECK(verify.out.find(expect) != std::string::npos);
    }
}

TEST_CASE("the board can be served and read back over http") {
    std::string dir = fresh_ws("serve");
    REQUIRE(e2ev_cmd(dir, "setup --candidates A,B --group toy --seed 800").status == 0);
    REQUIRE(e2ev_cmd(dir, "vote --selection A --device-seed 1").status == 0);

    int port = 38000 + static_cast<int>(::getpid() % 2000);
    std::string serve_out = temp_root() + "/serve.out";
    pid_t pid = spawn({bin("e2ev"), "--workspace", dir, "board-serve", "--port",
                       std::to_string(port)},
                      serve_out);

    httplib::Client cli("127.0.0.1", port);
    cli.set_read_timeout(5, 0);
    httplib::Result res;
    for (int i = 0; i < 100; i++) {
        res = cli.Get("/snapshot");
        if (res) break;
        ::usleep(100000);
    }
    REQUIRE(res);
    CHECK(res->status == 200);
    CHECK(res->body == read_file(dir + "/board.ndjson"));

    ::usleep(200000);  // let the serve loop finish installing its signal handlers
    ::kill(pid, SIGTERM);
    int status = 0;
    ::waitpid(pid, &status, 0);
    CHECK(WIFEXITED(status));
    CHECK(WEXITSTATUS(status) == 0);
    CHECK(read_file(serve_out).find("serving board on 127.0.0.1:" + std::to_string(port)) !=
          std::string::npos);

    // the lock was released on shutdown; the workspace still works
    CHECK(e2ev_cmd(dir, "vote --selection B --device-seed 2").status == 0);
}
