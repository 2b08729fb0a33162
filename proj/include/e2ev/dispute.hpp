#pragma once

#include "e2ev/board.hpp"
#include "e2ev/verify.hpp"

#include <optional>
#include <set>

namespace e2ev {

/**
 * Evidence-based adjudication of claims that the system erred. The design
 * goal is asymmetry: every genuine grievance (a valid receipt whose ballot
 * never appeared) is upheld, while fabricated claims can do no better than
 * guessing a two-letter return code. Claims are filed before the code key is
 * revealed at close; adjudication runs afterwards, when codes are checkable.
 *
 * Outcomes are evidence labels, not verdicts with legal force: Upheld means
 * cryptographic or observed proof of misbehavior, Rejected means the evidence
 * affirmatively clears the system, Inconclusive means neither.
 */
enum class ClaimKind { NotIncluded, WrongCode };

struct DisputeClaim {
    Receipt receipt;
    ClaimKind kind = ClaimKind::NotIncluded;
    bool observed_issuance = false;  // set only by an independent poll-site observer
};

enum class Outcome { Upheld, Rejected, Inconclusive };
const char* outcome_name(Outcome o);

struct AdjudicationResult {
    Outcome outcome = Outcome::Inconclusive;
    std::string rationale;  // names the board seq or the signature status
    bool has_seq = false;
    uint64_t seq = 0;
};

/**
 * Decide one claim against the published record. The code key is taken from
 * the board's close entry; a board without a close cannot adjudicate WrongCode
 * claims (codes are unverifiable until the key reveal).
 */
/** The keyed code secret, once the close entry has published it. */
std::optional<Bytes> revealed_code_key(const Board& board);

AdjudicationResult adjudicate(const DisputeClaim& claim, const Board& board);

/** Plain-text report with a trailing machine-readable locator block. */
std::string adjudication_report(const DisputeClaim& claim, const AdjudicationResult& result);

const char* claim_kind_name(ClaimKind k);
std::string claim_canonical(const GroupParams& grp, const DisputeClaim& claim);
DisputeClaim parse_claim(const GroupParams& grp, const std::string& text);

/** Mean number of lucky two-letter guesses among n fabricated code claims. */
double expected_defamation_successes(uint64_t n_claims);

/** One claim per receipt: filing a second claim for the same ballot hash fails. */
class ClaimRegistry {
  public:
    bool file(const DisputeClaim& claim);  // false = already filed
    size_t size() const { return filed_.size(); }

  private:
    std::set<std::string> filed_;  // ballot hash hex
};

/**
 * Public dummy-vote audit: scripted selections are voted on real equipment
 * and always challenged, never cast. The audit replays the script against the
 * board and reports every inconsistency.
 */
struct DummyScriptEntry {
    Digest ballot_hash{};
    uint64_t scripted_selection = 0;
};

struct DummyAuditReport {
    uint64_t total = 0;
    struct Problem {
        Digest ballot_hash{};
        std::string what;
    };
    std::vector<Problem> inconsistencies;
};

DummyAuditReport dummy_vote_audit(const Board& board,
                                  const std::vector<DummyScriptEntry>& script);

}  // namespace e2ev
