#include "e2ev/dispute.hpp"

#include "e2ev/json_util.hpp"

namespace e2ev {

const char* outcome_name(Outcome o) {
    switch (o) {
        case Outcome::Upheld: return "Upheld";
        case Outcome::Rejected: return "Rejected";
        case Outcome::Inconclusive: return "Inconclusive";
    }
    return "Inconclusive";
}

std::optional<Bytes> revealed_code_key(const Board& board) {
    if (!board.closed()) return std::nullopt;
    std::vector<BoardEntry> entries = board.entries();
    for (auto it = entries.rbegin(); it != entries.rend(); ++it) {
        if (it->kind == EntryKind::close) {
            return parse_close(board.manifest().group, it->payload).code_key;
        }
    }
    return std::nullopt;
}

namespace {

AdjudicationResult at_seq(Outcome o, std::string rationale, uint64_t seq) {
    AdjudicationResult r;
    r.outcome = o;
    r.rationale = std::move(rationale);
    r.has_seq = true;
    r.seq = seq;
    return r;
}

AdjudicationResult plain(Outcome o, std::string rationale) {
    AdjudicationResult r;
    r.outcome = o;
    r.rationale = std::move(rationale);
    return r;
}

AdjudicationResult adjudicate_not_included(const DisputeClaim& claim, const Board& board,
                                           bool signature_valid) {
    Board::LookupResult loc = board.lookup(claim.receipt.ballot_hash);
    if (signature_valid) {
        switch (loc.kind) {
            case Board::LookupKind::Absent:
                return plain(Outcome::Upheld,
                             "valid device signature on a receipt whose ballot is absent from "
                             "the board: the ballot was lost after casting");
            case Board::LookupKind::CastFound:
                return at_seq(Outcome::Rejected,
                              "ballot is published as cast at seq " + std::to_string(loc.seq) +
                                  ": no grievance",
                              loc.seq);
            case Board::LookupKind::ChallengedFound:
                return at_seq(Outcome::Upheld,
                              "device issued a cast receipt but the ballot appears as "
                              "challenged at seq " +
                                  std::to_string(loc.seq),
                              loc.seq);
        }
    }
    if (claim.observed_issuance) {
        return plain(Outcome::Upheld,
                     "signature invalid but an independent observer attests the device issued "
                     "this receipt: device misbehavior");
    }
    return plain(Outcome::Inconclusive,
                 "signature invalid and issuance unobserved: indistinguishable from a "
                 "fabricated receipt");
}

AdjudicationResult adjudicate_wrong_code(const DisputeClaim& claim, const Board& board,
                                         bool signature_valid) {
    Board::LookupResult loc = board.lookup(claim.receipt.ballot_hash);
    if (loc.kind != Board::LookupKind::CastFound) {
        return plain(Outcome::Inconclusive,
                     "no cast ballot with this hash: nothing to compare the code against");
    }
    std::optional<Bytes> key = revealed_code_key(board);
    if (!key) {
        return plain(Outcome::Inconclusive, "code key not yet revealed: board is not closed");
    }
    std::string official = issue_return_code(*key, claim.receipt.ballot_hash);
    if (claim.receipt.return_code == official) {
        // Holding the correct code before the key reveal is evidence the
        // device really issued this receipt; the grievance stands. This is
        // also the only door open to defamers: a blind guess lands here once
        // in 676 tries.
        return at_seq(Outcome::Upheld,
                      "claimed code matches the keyed derivation for the ballot cast at seq " +
                          std::to_string(loc.seq) +
                          ": the claimant held the genuine code before the key reveal",
                      loc.seq);
    }
    if (claim.observed_issuance) {
        return at_seq(Outcome::Upheld,
                      "observer attests the device printed this mismatched code for the ballot "
                      "at seq " +
                          std::to_string(loc.seq),
                      loc.seq);
    }
    (void)signature_valid;
    return plain(Outcome::Inconclusive,
                 "claimed code does not match the derivation and issuance was unobserved: "
                 "indistinguishable from an invented code");
}

}  // namespace

AdjudicationResult adjudicate(const DisputeClaim& claim, const Board& board) {
    ElectionManifest m = board.manifest();
    Bytes msg(claim.receipt.ballot_hash.begin(), claim.receipt.ballot_hash.end());
    bool signature_valid = schnorr::verify(m.group, m.manifest_hash, m.device_pk, msg,
                                           claim.receipt.signature);
    if (claim.kind == ClaimKind::NotIncluded) {
        return adjudicate_not_included(claim, board, signature_valid);
    }
    return adjudicate_wrong_code(claim, board, signature_valid);
}

std::string adjudication_report(const DisputeClaim& claim, const AdjudicationResult& result) {
    std::string kind = claim_kind_name(claim.kind);
    std::string text;
    text += "claim: " + kind + " for ballot " + digest_hex(claim.receipt.ballot_hash) + "\n";
    text += "observed issuance: " + std::string(claim.observed_issuance ? "yes" : "no") + "\n";
    text += "outcome: " + std::string(outcome_name(result.outcome)) + "\n";
    text += "rationale: " + result.rationale + "\n";
    text += "{\"outcome\":\"" + std::string(outcome_name(result.outcome)) + "\",\"kind\":\"" +
            kind + "\",\"ballot_hash\":\"" + digest_hex(claim.receipt.ballot_hash) + "\"";
    if (result.has_seq) text += ",\"seq\":" + std::to_string(result.seq);
    text += "}\n";
    return text;
}

const char* claim_kind_name(ClaimKind k) {
    return k == ClaimKind::NotIncluded ? "NotIncluded" : "WrongCode";
}

std::string claim_canonical(const GroupParams& grp, const DisputeClaim& claim) {
    return "{\"receipt\":" + receipt_canonical(grp, claim.receipt) + ",\"kind\":\"" +
           claim_kind_name(claim.kind) + "\",\"observed_issuance\":" +
           (claim.observed_issuance ? "true" : "false") + "}";
}

DisputeClaim parse_claim(const GroupParams& grp, const std::string& text) {
    nlohmann::json j = jsonu::parse(text);
    jsonu::expect_keys(j, {"receipt", "kind", "observed_issuance"}, "claim");
    DisputeClaim claim;
    claim.receipt = parse_receipt(grp, jsonu::get_object(j, "receipt").dump());
    std::string kind = jsonu::get_string(j, "kind");
    if (kind == "NotIncluded") {
        claim.kind = ClaimKind::NotIncluded;
    } else if (kind == "WrongCode") {
        claim.kind = ClaimKind::WrongCode;
    } else {
        throw std::invalid_argument("claim: unknown kind");
    }
    claim.observed_issuance = jsonu::get_bool(j, "observed_issuance");
    return claim;
}

double expected_defamation_successes(uint64_t n_claims) {
    return static_cast<double>(n_claims) / 676.0;
}

bool ClaimRegistry::file(const DisputeClaim& claim) {
    return filed_.insert(digest_hex(claim.receipt.ballot_hash)).second;
}

DummyAuditReport dummy_vote_audit(const Board& board,
                                  const std::vector<DummyScriptEntry>& script) {
    DummyAuditReport report;
    report.total = script.size();
    ElectionManifest m = board.manifest();
    std::vector<BoardEntry> entries = board.entries();
    for (const DummyScriptEntry& d : script) {
        Board::LookupResult loc = board.lookup(d.ballot_hash);
        if (loc.kind == Board::LookupKind::CastFound) {
            report.inconsistencies.push_back(
                {d.ballot_hash, "dummy ballot appears in the cast list at seq " +
                                    std::to_string(loc.seq)});
            continue;
        }
        if (loc.kind == Board::LookupKind::Absent) {
            report.inconsistencies.push_back({d.ballot_hash, "dummy ballot not on the board"});
            continue;
        }
        ChallengeRecord rec = parse_challenge(m.group, entries[loc.seq].payload);
        if (rec.claimed_selection != d.scripted_selection) {
            report.inconsistencies.push_back(
                {d.ballot_hash,
                 "claimed selection " + std::to_string(rec.claimed_selection) +
                     " differs from scripted selection " + std::to_string(d.scripted_selection)});
            continue;
        }
        BallotCheck bc = open_ballot(m, rec.ballot, rec.randomness, rec.claimed_selection);
        if (!bc.ok) {
            report.inconsistencies.push_back(
                {d.ballot_hash, "challenge opening inconsistent: " + bc.reason});
        }
    }
    return report;
}

}  // namespace e2ev
