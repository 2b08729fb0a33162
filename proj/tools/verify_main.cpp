// Standalone election verifier. Reads two published files, trusts neither,
// and exits 0 (verified), 1 (verification failed), or 2 (inputs undecodable).
// Links only the crypto and format library so it can be built, and audited,
// without the rest of the toolkit.

#include "e2ev/verify.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

namespace {

std::optional<std::string> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void print_report(const e2ev::VerificationReport& report) {
    for (const e2ev::CheckResult& c : report.checks) {
        if (c.ok) {
            std::printf("check %s: ok\n", c.name.c_str());
        } else {
            const e2ev::Locator& l = c.locator;
            std::printf("check %s: FAIL", c.name.c_str());
            if (l.has_seq) std::printf(" at seq %llu", (unsigned long long)l.seq);
            std::printf(" [%s] expected %s, found %s\n", l.field.c_str(), l.expected.c_str(),
                        l.found.c_str());
        }
    }
    if (!report.counts.empty()) {
        std::printf("counts:");
        for (uint64_t c : report.counts) std::printf(" %llu", (unsigned long long)c);
        std::printf("\n");
    }
    std::printf("entries %llu, cast %llu, challenged %llu\n",
                (unsigned long long)report.entry_count, (unsigned long long)report.cast_count,
                (unsigned long long)report.challenged_count);
    std::printf("verdict: %s\n", report.verdict.c_str());
}

e2ev::VerificationReport unreadable(const std::string& which, const std::string& path) {
    e2ev::VerificationReport report;
    report.decode_error = true;
    report.checks.push_back(
        {"decode", false, e2ev::Locator{false, 0, which, "readable file", path}});
    return report;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"independent election verifier"};
    std::string manifest_path, board_path, receipt_path, report_path;
    app.add_option("--manifest", manifest_path, "manifest.json")->required();
    app.add_option("--board", board_path, "board.ndjson")->required();
    app.add_option("--receipt", receipt_path, "receipt.json to check against the board");
    app.add_option("--report", report_path, "write the canonical report here");
    CLI11_PARSE(app, argc, argv);

    auto manifest_bytes = read_file(manifest_path);
    auto board_bytes = read_file(board_path);
    e2ev::VerificationReport report;
    if (!manifest_bytes) {
        report = unreadable("manifest", manifest_path);
    } else if (!board_bytes) {
        report = unreadable("board", board_path);
    } else {
        report = e2ev::verify_election(*manifest_bytes, *board_bytes);
    }
    print_report(report);
    if (!report_path.empty()) {
        std::ofstream out(report_path, std::ios::trunc | std::ios::binary);
        out << e2ev::report_canonical(report) << "\n";
        if (!out) {
            std::fprintf(stderr, "cannot write %s\n", report_path.c_str());
            return 2;
        }
    }

    int code = e2ev::report_exit_code(report);
    if (!receipt_path.empty() && manifest_bytes && board_bytes) {
        auto receipt_bytes = read_file(receipt_path);
        e2ev::ReceiptStatus status =
            receipt_bytes ? e2ev::check_receipt(*manifest_bytes, *board_bytes, *receipt_bytes)
                          : e2ev::ReceiptStatus::SignatureInvalid;
        std::printf("receipt: %s\n", e2ev::receipt_status_name(status));
        if (status != e2ev::ReceiptStatus::Included && code == 0) code = 1;
    }
    return code;
}
