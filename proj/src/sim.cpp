#include "e2ev/sim.hpp"

#include <cmath>
#include <cstdio>

namespace e2ev {

namespace {

std::vector<std::string> candidate_labels(size_t n) {
    std::vector<std::string> labels;
    for (size_t i = 0; i < n; i++) labels.push_back("C" + std::to_string(i));
    return labels;
}

std::string fmt6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

}  // namespace

TrialOutcome run_election(const SimConfig& config, uint64_t trial_seed) {
    const GroupParams& grp = config.group;
    DeterministicRng keys_rng(derive_seed(trial_seed, 0, "keys"));
    DeterministicRng voter_rng(derive_seed(trial_seed, 1, "voters"));
    DeterministicRng tally_rng(derive_seed(trial_seed, 3, "tally"));
    DeterministicRng close_rng(derive_seed(trial_seed, 4, "close"));

    ElectionKey key = keygen(grp, 1, keys_rng);
    Bigint authority_sk = keys_rng.uniform_scalar(grp.q);
    Bigint device_sk = keys_rng.uniform_scalar(grp.q);
    Bytes code_key = keys_rng.bytes(32);
    ElectionManifest manifest = build_manifest(
        "sim-" + std::to_string(trial_seed), candidate_labels(config.candidates), grp, key.pk,
        modexp(grp.g, device_sk, grp.p), modexp(grp.g, authority_sk, grp.p));

    Board board = Board::create(manifest);
    Device device({config.cheat_f, config.drop_d, 0.0, derive_seed(trial_seed, 2, "device")},
                  manifest, device_sk, code_key);

    TrialOutcome out;
    out.ground_truth.assign(config.candidates, 0);
    struct PendingCheck {
        Digest ballot_hash;
        schnorr::Signature signature;
    };
    std::vector<PendingCheck> receipt_checks;
    uint64_t flips_posted = 0;
    uint64_t drops = 0;

    for (uint64_t v = 0; v < config.n_voters; v++) {
        size_t selection = static_cast<size_t>(voter_rng.below(config.candidates));
        bool audit = voter_rng.bernoulli(config.challenge_q);
        bool check_later = voter_rng.bernoulli(config.receipt_rho);
        if (audit) {
            DeviceSession session = device.begin(selection);
            ChallengeRecord rec = device.finalize_challenge(session, board);
            if (!open_ballot(manifest, rec.ballot, rec.randomness, rec.claimed_selection).ok) {
                out.challenge_mismatch = true;  // caught at the machine
            }
        }
        DeviceSession session = device.begin(selection);
        Receipt receipt = device.finalize_cast(session, board);
        out.ground_truth[selection]++;
        bool posted = board.lookup(receipt.ballot_hash).kind != Board::LookupKind::Absent;
        if (!posted) {
            drops++;
        } else if (session.actual_selection() != session.chosen_selection()) {
            flips_posted++;
        }
        if (check_later) receipt_checks.push_back({receipt.ballot_hash, receipt.signature});
    }

    TallyArtifact tally = run_tally(board, key.shares, tally_rng);
    board.append_close(code_key, authority_sk, close_rng);
    out.counts = tally.counts;
    out.tally_error = flips_posted + drops;

    // Receipt checks happen against the final board, like voters at home.
    for (const PendingCheck& pc : receipt_checks) {
        Bytes msg(pc.ballot_hash.begin(), pc.ballot_hash.end());
        if (!schnorr::verify(grp, manifest.manifest_hash, manifest.device_pk, msg,
                             pc.signature)) {
            continue;  // not a Missing event; the sim device never corrupts signatures
        }
        if (board.lookup(pc.ballot_hash).kind != Board::LookupKind::CastFound) {
            out.receipt_missing = true;
        }
    }

    VerificationReport report = verify_election(manifest.canonical, board.snapshot());
    out.verifier_pass = report.verdict == "PASS";
    out.verifier_fail = !out.verifier_pass;

    out.detected = out.challenge_mismatch || out.receipt_missing || out.verifier_fail;
    if (out.challenge_mismatch) {
        out.channel = "challenge-mismatch";
    } else if (out.receipt_missing) {
        out.channel = "receipt-missing";
    } else if (out.verifier_fail) {
        out.channel = "verifier-fail";
    }
    return out;
}

std::string outcome_canonical(const TrialOutcome& o) {
    std::string s = "{\"detected\":";
    s += o.detected ? "true" : "false";
    s += ",\"channel\":\"" + o.channel + "\",\"tally_error\":" + std::to_string(o.tally_error);
    s += ",\"verifier_pass\":";
    s += o.verifier_pass ? "true" : "false";
    s += ",\"counts\":[";
    for (size_t i = 0; i < o.counts.size(); i++) {
        if (i > 0) s += ',';
        s += std::to_string(o.counts[i]);
    }
    s += "],\"ground_truth\":[";
    for (size_t i = 0; i < o.ground_truth.size(); i++) {
        if (i > 0) s += ',';
        s += std::to_string(o.ground_truth[i]);
    }
    s += "]}";
    return s;
}

double analytic_challenge_detection(const SimConfig& c) {
    return 1.0 - std::pow(1.0 - c.challenge_q * c.cheat_f, static_cast<double>(c.n_voters));
}

double analytic_receipt_detection(const SimConfig& c) {
    return 1.0 - std::pow(1.0 - c.receipt_rho * c.drop_d, static_cast<double>(c.n_voters));
}

double analytic_detection(const SimConfig& c) {
    double miss = (1.0 - c.challenge_q * c.cheat_f) * (1.0 - c.receipt_rho * c.drop_d);
    return 1.0 - std::pow(miss, static_cast<double>(c.n_voters));
}

DetectionEstimate estimate_detection(const SimConfig& config) {
    DetectionEstimate est;
    est.trials = config.trials;
    for (uint64_t t = 0; t < config.trials; t++) {
        TrialOutcome o = run_election(config, derive_seed(config.seed, t, "trial"));
        if (o.detected) est.detected++;
        if (o.challenge_mismatch) est.challenge_detected++;
        if (o.receipt_missing) est.receipt_detected++;
    }
    double n = static_cast<double>(config.trials);
    est.empirical = est.detected / n;
    est.empirical_challenge = est.challenge_detected / n;
    est.empirical_receipt = est.receipt_detected / n;
    est.analytic = analytic_detection(config);
    est.analytic_challenge = analytic_challenge_detection(config);
    est.analytic_receipt = analytic_receipt_detection(config);
    est.deviation = std::fabs(est.empirical - est.analytic);
    double half = 1.96 * std::sqrt(est.empirical * (1.0 - est.empirical) / n);
    est.ci_low = std::max(0.0, est.empirical - half);
    est.ci_high = std::min(1.0, est.empirical + half);
    return est;
}

std::string sweep_csv(const std::vector<SimConfig>& grid) {
    std::string csv =
        "N,q,rho,f,d,trials,analytic_challenge,empirical_challenge,analytic_receipt,"
        "empirical_receipt\n";
    for (const SimConfig& cfg : grid) {
        DetectionEstimate est = estimate_detection(cfg);
        csv += std::to_string(cfg.n_voters) + "," + fmt6(cfg.challenge_q) + "," +
               fmt6(cfg.receipt_rho) + "," + fmt6(cfg.cheat_f) + "," + fmt6(cfg.drop_d) + "," +
               std::to_string(cfg.trials) + "," + fmt6(est.analytic_challenge) + "," +
               fmt6(est.empirical_challenge) + "," + fmt6(est.analytic_receipt) + "," +
               fmt6(est.empirical_receipt) + "\n";
    }
    return csv;
}

}  // namespace e2ev
