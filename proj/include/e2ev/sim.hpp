#pragma once

#include "e2ev/device.hpp"
#include "e2ev/dispute.hpp"
#include "e2ev/tally.hpp"

namespace e2ev {

/**
 * Monte Carlo harness quantifying how fast misbehaving equipment gets caught.
 * Each trial runs a complete election against a device with the configured
 * cheat and drop rates; each voter independently audits one encryption with
 * probability q before casting, and checks their receipt with probability
 * rho afterwards. Detection events are recorded per channel so the two
 * misbehavior modes stay separately measurable, and every trial retains the
 * ground-truth selections so undetected damage can be counted exactly.
 *
 * The closed-form predictions are 1-(1-qf)^N for encryption cheating and
 * 1-(1-rho*d)^N for drops; the harness exists to show the empirical rates
 * landing on them.
 */
struct SimConfig {
    uint64_t n_voters = 100;
    size_t candidates = 2;
    double challenge_q = 0.0;
    double receipt_rho = 0.0;
    double cheat_f = 0.0;
    double drop_d = 0.0;
    uint64_t trials = 1;
    uint64_t seed = 0;
    GroupParams group = toy_group();
};

struct TrialOutcome {
    bool detected = false;
    std::string channel;  // first channel in priority order; empty if undetected
    bool challenge_mismatch = false;
    bool receipt_missing = false;
    bool verifier_fail = false;
    uint64_t tally_error = 0;  // votes shifted: posted wrong encryptions + dropped ballots
    bool verifier_pass = false;
    std::vector<uint64_t> counts;
    std::vector<uint64_t> ground_truth;  // intended selections of cast sessions
};

/** One full election under the config, deterministic in the trial seed. */
TrialOutcome run_election(const SimConfig& config, uint64_t trial_seed);

/** Single-line serialization; byte-identical across identical-seed runs. */
std::string outcome_canonical(const TrialOutcome& o);

struct DetectionEstimate {
    uint64_t trials = 0;
    uint64_t detected = 0;
    uint64_t challenge_detected = 0;
    uint64_t receipt_detected = 0;
    double empirical = 0.0;
    double empirical_challenge = 0.0;
    double empirical_receipt = 0.0;
    double analytic = 0.0;  // combined independence model
    double analytic_challenge = 0.0;
    double analytic_receipt = 0.0;
    double deviation = 0.0;  // |empirical - analytic|
    double ci_low = 0.0;     // 95% binomial interval on the overall rate
    double ci_high = 0.0;
};

double analytic_challenge_detection(const SimConfig& config);
double analytic_receipt_detection(const SimConfig& config);
double analytic_detection(const SimConfig& config);

DetectionEstimate estimate_detection(const SimConfig& config);

/** Fixed-column CSV over a config grid; deterministic given the seeds. */
std::string sweep_csv(const std::vector<SimConfig>& grid);

}  // namespace e2ev
