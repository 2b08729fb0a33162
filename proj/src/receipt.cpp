#include "e2ev/receipt.hpp"

#include "e2ev/json_util.hpp"
#include "e2ev/transcript.hpp"

namespace e2ev {

std::string issue_return_code(const Bytes& code_key, const Digest& ballot_hash) {
    if (code_key.size() != 32) throw std::invalid_argument("return code: key must be 32 bytes");
    Transcript t;
    t.append(code_key);
    t.append(ballot_hash);
    Digest d = transcript_digest(kTagCode, t);
    // 26^2 codes; uniform enough that a blind guess wins 1 in 676 times.
    unsigned v = static_cast<unsigned>(from_bytes(Bytes(d.begin(), d.end())) % 676);
    std::string code;
    code += static_cast<char>('A' + v / 26);
    code += static_cast<char>('A' + v % 26);
    return code;
}

std::string receipt_canonical(const GroupParams& grp, const Receipt& r) {
    auto e = [&](const Bigint& v) { return to_fixed_hex(v, grp.element_width); };
    return "{\"ballot_hash\":\"" + digest_hex(r.ballot_hash) + "\",\"signature\":{\"e\":\"" +
           e(r.signature.e) + "\",\"s\":\"" + e(r.signature.s) + "\"},\"return_code\":\"" +
           r.return_code + "\"}";
}

Receipt parse_receipt(const GroupParams& grp, const std::string& text) {
    nlohmann::json j = jsonu::parse(text);
    jsonu::expect_keys(j, {"ballot_hash", "signature", "return_code"}, "receipt");
    Receipt r;
    r.ballot_hash = digest_from_hex(jsonu::get_string(j, "ballot_hash"));
    const auto& sj = jsonu::get_object(j, "signature");
    jsonu::expect_keys(sj, {"e", "s"}, "receipt.signature");
    r.signature.e = parse_scalar(grp, jsonu::get_string(sj, "e"));
    r.signature.s = parse_scalar(grp, jsonu::get_string(sj, "s"));
    r.return_code = jsonu::get_string(j, "return_code");
    if (r.return_code.size() != 2 || r.return_code[0] < 'A' || r.return_code[0] > 'Z' ||
        r.return_code[1] < 'A' || r.return_code[1] > 'Z') {
        throw std::invalid_argument("receipt: malformed return_code");
    }
    return r;
}

}  // namespace e2ev
