// Adversarial simulator tests: single-trial semantics, reproducibility,
// detection channels, and the agreement between measured detection rates and
// the closed-form model 1 - ((1-qf)(1-rho*d))^N.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "e2ev/sim.hpp"

#include <cmath>

using namespace e2ev;

namespace {

SimConfig base_config() {
    SimConfig c;
    c.n_voters = 40;
    c.candidates = 2;
    c.trials = 1;
    c.seed = 5000;
    return c;
}

}  // namespace

TEST_CASE("an honest run detects nothing and counts every vote") {
    SimConfig c = base_config();
    c.challenge_q = 0.3;
    c.receipt_rho = 0.5;
    TrialOutcome o = run_election(c, 1);
    CHECK_FALSE(o.detected);
    CHECK(o.channel.empty());
    CHECK(o.tally_error == 0);
    CHECK(o.verifier_pass);
    CHECK(o.counts == o.ground_truth);
    uint64_t total = 0;
    for (uint64_t x : o.counts) total += x;
    CHECK(total == c.n_voters);
}

TEST_CASE("a certain cheat is always caught when every voter challenges") {
    SimConfig c = base_config();
    c.cheat_f = 1.0;
    c.challenge_q = 1.0;
    for (uint64_t t = 0; t < 5; t++) {
        TrialOutcome o = run_election(c, t);
        CHECK(o.detected);
        CHECK(o.channel == "challenge-mismatch");
        CHECK(o.challenge_mismatch);
    }
}

TEST_CASE("a certain drop is always caught when every voter checks the board") {
    SimConfig c = base_config();
    c.drop_d = 1.0;
    c.receipt_rho = 1.0;
    for (uint64_t t = 0; t < 5; t++) {
        TrialOutcome o = run_election(c, t);
        CHECK(o.detected);
        CHECK(o.channel == "receipt-missing");
        CHECK(o.receipt_missing);
    }
}

TEST_CASE("channel priority puts challenge evidence first") {
    SimConfig c = base_config();
    c.cheat_f = 1.0;
    c.drop_d = 1.0;
    c.challenge_q = 0.5;
    c.receipt_rho = 1.0;
    bool saw_challenge = false;
    for (uint64_t t = 0; t < 10; t++) {
        TrialOutcome o = run_election(c, t);
        CHECK(o.detected);
        if (o.challenge_mismatch) {
            CHECK(o.channel == "challenge-mismatch");
            saw_challenge = true;
        } else {
            CHECK(o.channel == "receipt-missing");
        }
    }
    CHECK(saw_challenge);  // q = 0.5 over 40 voters: misses have odds 2^-40
}

TEST_CASE("no challenges means the challenge channel stays silent") {
    SimConfig c = base_config();
    c.cheat_f = 0.5;
    c.challenge_q = 0.0;
    c.trials = 20;
    DetectionEstimate e = estimate_detection(c);
    CHECK(e.challenge_detected == 0);
    CHECK(e.analytic_challenge == 0.0);
}

TEST_CASE("an undetected cheat shifts the certified tally by its size") {
    SimConfig c = base_config();
    c.cheat_f = 1.0;  // every encryption flipped, nobody looks
    TrialOutcome o = run_election(c, 3);
    CHECK_FALSE(o.detected);
    CHECK(o.verifier_pass);  // the board is internally consistent
    CHECK(o.tally_error == c.n_voters);
    CHECK(o.counts != o.ground_truth);
    uint64_t moved = 0;
    for (size_t i = 0; i < o.counts.size(); i++) {
        uint64_t a = o.counts[i], b = o.ground_truth[i];
        moved += a > b ? a - b : b - a;
    }
    CHECK(moved > 0);
}

TEST_CASE("trials replay byte-identically from their seed") {
    SimConfig c = base_config();
    c.cheat_f = 0.2;
    c.challenge_q = 0.3;
    c.receipt_rho = 0.4;
    c.drop_d = 0.1;
    TrialOutcome a = run_election(c, 42);
    TrialOutcome b = run_election(c, 42);
    CHECK(outcome_canonical(a) == outcome_canonical(b));
    TrialOutcome other = run_election(c, 43);
    // a different trial seed gives a genuinely different election
    CHECK(outcome_canonical(a) != outcome_canonical(other));
}

TEST_CASE("outcome serialization is a single canonical line") {
    SimConfig c = base_config();
    c.n_voters = 3;
    TrialOutcome o = run_election(c, 7);
    std::string line = outcome_canonical(o);
    CHECK(line.find('\n') == std::string::npos);
    CHECK(line.front() == '{');
    CHECK(line.back() == '}');
    CHECK(line.find("\"detected\":") != std::string::npos);
    CHECK(line.find("\"channel\":") != std::string::npos);
    CHECK(line.find("\"counts\":") != std::string::npos);
}

TEST_CASE("closed-form detection rates match their definitions") {
    SimConfig c;
    c.n_voters = 100;
    c.challenge_q = 0.2;
    c.cheat_f = 0.1;
    c.receipt_rho = 0.25;
    c.drop_d = 0.02;
    CHECK(analytic_challenge_detection(c) ==
          doctest::Approx(1.0 - std::pow(1.0 - 0.02, 100)).epsilon(1e-12));
    CHECK(analytic_receipt_detection(c) ==
          doctest::Approx(1.0 - std::pow(1.0 - 0.005, 100)).epsilon(1e-12));
    CHECK(analytic_detection(c) ==
          doctest::Approx(1.0 - std::pow((1.0 - 0.02) * (1.0 - 0.005), 100)).epsilon(1e-12));

    // the combined rate dominates each channel and is monotone in each dial
    for (double f : {0.01, 0.05, 0.1}) {
        SimConfig lo = c;
        lo.cheat_f = f;
        CHECK(analytic_detection(lo) >= analytic_challenge_detection(lo));
        CHECK(analytic_detection(lo) >= analytic_receipt_detection(lo));
        SimConfig hi = lo;
        hi.challenge_q = lo.challenge_q + 0.1;
        CHECK(analytic_detection(hi) > analytic_detection(lo));
    }
}

TEST_CASE("measured detection tracks the model within three sigma") {
    struct GridPoint {
        double q, rho, f, d;
    };
    // moderate rates so the binomial sigma is wide enough to be meaningful
    for (const GridPoint& g : {GridPoint{0.15, 0.0, 0.1, 0.0},
                               GridPoint{0.0, 0.3, 0.0, 0.05},
                               GridPoint{0.1, 0.2, 0.08, 0.03}}) {
        SimConfig c;
        c.n_voters = 30;
        c.candidates = 2;
        c.challenge_q = g.q;
        c.receipt_rho = g.rho;
        c.cheat_f = g.f;
        c.drop_d = g.d;
        c.trials = 400;
        c.seed = 6000 + static_cast<uint64_t>(g.q * 100 + g.rho * 10);
        DetectionEstimate e = estimate_detection(c);
        double p = e.analytic;
        double sigma = std::sqrt(p * (1.0 - p) / static_cast<double>(c.trials));
        INFO("q=", g.q, " rho=", g.rho, " f=", g.f, " d=", g.d, " empirical=", e.empirical,
             " analytic=", p);
        CHECK(e.deviation <= 3.0 * sigma);
        CHECK(e.ci_low <= e.empirical);
        CHECK(e.empirical <= e.ci_high);
        bool channels_cover_total =
            e.detected >= std::max(e.challenge_detected, e.receipt_detected) &&
            e.detected <= e.challenge_detected + e.receipt_detected;
        CHECK(channels_cover_total);
    }
}

TEST_CASE("per-channel tallies count each channel independently") {
    SimConfig c = base_config();
    c.n_voters = 25;
    c.cheat_f = 0.3;
    c.drop_d = 0.3;
    c.challenge_q = 0.4;
    c.receipt_rho = 0.4;
    c.trials = 100;
    DetectionEstimate e = estimate_detection(c);
    // with these rates both channels fire often; each is counted even when
    // the other also fired in the same trial
    CHECK(e.challenge_detected > 0);
    CHECK(e.receipt_detected > 0);
    CHECK(e.detected <= e.challenge_detected + e.receipt_detected);
    CHECK(e.detected >= e.challenge_detected);
    CHECK(e.detected >= e.receipt_detected);
    CHECK(e.empirical == doctest::Approx(static_cast<double>(e.detected) / 100.0));
}

TEST_CASE("sweep output is a stable csv") {
    SimConfig a = base_config();
    a.n_voters = 10;
    a.challenge_q = 0.5;
    a.cheat_f = 0.2;
    a.trials = 50;
    SimConfig b = a;
    b.receipt_rho = 0.25;
    b.drop_d = 0.1;
    std::string csv = sweep_csv({a, b});

    size_t first_nl = csv.find('\n');
    CHECK(csv.substr(0, first_nl + 1) ==
          "N,q,rho,f,d,trials,analytic_challenge,empirical_challenge,analytic_receipt,"
          "empirical_receipt\n");
    // one data row per config, newline-terminated
    size_t rows = 0;
    for (char ch : csv) rows += ch == '\n' ? 1 : 0;
    CHECK(rows == 3);
    CHECK(csv.back() == '\n');
    CHECK(csv.find("10,0.500000,0.000000,0.200000,0.000000,50,") != std::string::npos);
    // byte-stable across calls
    CHECK(sweep_csv({a, b}) == csv);
}

TEST_CASE("detection scales with the number of voters as the model predicts") {
    // same dials, growing N: empirical detection is nondecreasing in the
    // analytic model, and the measured values follow within noise
    double prev_analytic = -1.0;
    for (uint64_t n : {10, 40, 160}) {
        SimConfig c;
        c.n_voters = n;
        c.challenge_q = 0.1;
        c.cheat_f = 0.1;
        c.trials = 200;
        c.seed = 7100 + n;
        DetectionEstimate e = estimate_detection(c);
        CHECK(e.analytic > prev_analytic);
        prev_analytic = e.analytic;
        double sigma = std::sqrt(e.analytic * (1.0 - e.analytic) /
                                 static_cast<double>(c.trials));
        CHECK(std::abs(e.empirical - e.analytic) <= 3.0 * sigma);
    }
}
