#include "e2ev/workspace.hpp"

#include "e2ev/json_util.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace e2ev {

GroupParams group_by_name(const std::string& name) {
    if (name == "test") return test_group();
    if (name == "toy") return toy_group();
    if (name == "production") return production_group();
    throw std::invalid_argument("workspace: unknown group " + name);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::trunc | std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << bytes;
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + path);
}

Workspace::Workspace(std::string dir) : dir_(std::move(dir)) {}

Workspace Workspace::setup(const std::string& dir, const SetupParams& params) {
    Workspace ws(dir);
    if (std::filesystem::exists(ws.board_path())) {
        throw std::runtime_error("workspace already initialized: " + ws.board_path() +
                                 " exists, refusing to overwrite an election");
    }
    std::filesystem::create_directories(dir);
    std::filesystem::create_directories(ws.keys_dir());
    std::filesystem::create_directories(ws.receipts_dir());
    std::filesystem::create_directories(ws.reports_dir());
    std::filesystem::create_directories(ws.claims_dir());

    GroupParams grp = group_by_name(params.group_name);
    std::unique_ptr<RandomSource> rng;
    if (params.seed) {
        rng = std::make_unique<DeterministicRng>(*params.seed);
    } else {
        rng = std::make_unique<SystemRng>();
    }

    ElectionKey key = keygen(grp, params.trustees, *rng);
    Bigint authority_sk = rng->uniform_scalar(grp.q);
    Bigint device_sk = rng->uniform_scalar(grp.q);
    Bytes code_key = rng->bytes(32);

    ElectionManifest manifest =
        build_manifest(params.election_id, params.candidates, grp, key.pk,
                       modexp(grp.g, device_sk, grp.p), modexp(grp.g, authority_sk, grp.p));
    write_file(ws.manifest_path(), manifest.canonical);
    Board::create(manifest, ws.board_path());

    auto scalar_hex = [&](const Bigint& v) { return to_fixed_hex(v, grp.element_width); };
    write_file(ws.keys_dir() + "/authority.json",
               "{\"sk\":\"" + scalar_hex(authority_sk) + "\"}\n");
    write_file(ws.keys_dir() + "/device.json", "{\"sign_sk\":\"" + scalar_hex(device_sk) +
                                                   "\",\"code_key\":\"" + to_hex(code_key) +
                                                   "\"}\n");
    write_file(ws.keys_dir() + "/trustees.json",
               "{\"count\":" + std::to_string(params.trustees) + "}\n");
    for (const TrusteeShare& share : key.shares) {
        write_file(ws.keys_dir() + "/trustee_" + std::to_string(share.index) + ".json",
                   "{\"index\":" + std::to_string(share.index) + ",\"sk\":\"" +
                       scalar_hex(share.sk) + "\"}\n");
    }
    return ws;
}

ElectionManifest Workspace::load_manifest() const {
    return parse_manifest(read_file(manifest_path()));
}

Bigint Workspace::authority_sk() const {
    GroupParams grp = load_manifest().group;
    nlohmann::json j = jsonu::parse(read_file(keys_dir() + "/authority.json"));
    return parse_scalar(grp, jsonu::get_string(j, "sk"));
}

Bigint Workspace::device_sign_sk() const {
    GroupParams grp = load_manifest().group;
    nlohmann::json j = jsonu::parse(read_file(keys_dir() + "/device.json"));
    return parse_scalar(grp, jsonu::get_string(j, "sign_sk"));
}

Bytes Workspace::code_key() const {
    nlohmann::json j = jsonu::parse(read_file(keys_dir() + "/device.json"));
    return from_hex(jsonu::get_string(j, "code_key"));
}

uint32_t Workspace::trustee_count() const {
    nlohmann::json j = jsonu::parse(read_file(keys_dir() + "/trustees.json"));
    return static_cast<uint32_t>(jsonu::get_u64(j, "count"));
}

TrusteeShare Workspace::trustee(uint32_t index) const {
    GroupParams grp = load_manifest().group;
    nlohmann::json j =
        jsonu::parse(read_file(keys_dir() + "/trustee_" + std::to_string(index) + ".json"));
    TrusteeShare share;
    share.index = static_cast<uint32_t>(jsonu::get_u64(j, "index"));
    share.sk = parse_scalar(grp, jsonu::get_string(j, "sk"));
    if (share.index != index) throw std::runtime_error("workspace: trustee file index mismatch");
    return share;
}

std::vector<TrusteeShare> Workspace::all_trustees() const {
    std::vector<TrusteeShare> shares;
    uint32_t count = trustee_count();
    for (uint32_t i = 1; i <= count; i++) shares.push_back(trustee(i));
    return shares;
}

std::string Workspace::receipt_path(const Digest& ballot_hash) const {
    return receipts_dir() + "/" + digest_hex(ballot_hash) + ".json";
}

std::string Workspace::claim_path(const Digest& ballot_hash) const {
    return claims_dir() + "/" + digest_hex(ballot_hash) + ".json";
}

BoardLock::BoardLock(const std::string& path) : path_(path) {
    int fd = ::open(path.c_str(), O_CREAT | O_EXCL | O_WRONLY, 0644);
    if (fd < 0) {
        throw std::runtime_error("board lock held (remove " + path + " if stale)");
    }
    ::close(fd);
}

BoardLock::~BoardLock() { ::unlink(path_.c_str()); }

}  // namespace e2ev
