#include "e2ev/http_board.hpp"

#include "e2ev/json_util.hpp"

#include <httplib.h>

namespace e2ev {

struct BoardServer::Impl {
    httplib::Server server;
};

namespace {

std::string error_body(const std::string& message) {
    return "{\"error\":\"" + jsonu::escape(message) + "\"}";
}

}  // namespace

BoardServer::BoardServer(Board& board) : board_(board), impl_(std::make_unique<Impl>()) {
    httplib::Server& svr = impl_->server;

    svr.Post("/entries", [this](const httplib::Request& req, httplib::Response& res) {
        try {
            nlohmann::json j = jsonu::parse(req.body);
            jsonu::expect_keys(j, {"kind", "payload"}, "request");
            EntryKind kind;
            if (!kind_from_name(jsonu::get_string(j, "kind"), kind)) {
                throw std::invalid_argument("request: unknown kind");
            }
            Board::AppendResult r = board_.append_payload(kind, jsonu::get_string(j, "payload"));
            res.set_content("{\"seq\":" + std::to_string(r.seq) + ",\"entry_hash\":\"" +
                                digest_hex(r.entry_hash) + "\"}",
                            "application/json");
        } catch (const std::exception& e) {
            res.status = 400;
            res.set_content(error_body(e.what()), "application/json");
        }
    });

    svr.Get("/entries", [this](const httplib::Request& req, httplib::Response& res) {
        uint64_t from = 0;
        if (req.has_param("from")) {
            try {
                from = std::stoull(req.get_param_value("from"));
            } catch (const std::exception&) {
                res.status = 400;
                res.set_content(error_body("bad from parameter"), "application/json");
                return;
            }
        }
        std::vector<BoardEntry> entries = board_.entries();
        std::string body = "{\"entries\":[";
        bool first = true;
        for (const BoardEntry& e : entries) {
            if (e.seq < from) continue;
            if (!first) body += ',';
            body += entry_line(e);
            first = false;
        }
        body += "]}";
        res.set_content(body, "application/json");
    });

    svr.Get("/ballots/([0-9a-f]{64})", [this](const httplib::Request& req,
                                              httplib::Response& res) {
        Digest hash = digest_from_hex(req.matches[1]);
        Board::LookupResult loc = board_.lookup(hash);
        if (loc.kind == Board::LookupKind::Absent) {
            res.status = 404;
            res.set_content(error_body("not found"), "application/json");
            return;
        }
        const char* kind = loc.kind == Board::LookupKind::CastFound
                               ? kind_name(EntryKind::cast_ballot)
                               : kind_name(EntryKind::challenged_ballot);
        res.set_content("{\"seq\":" + std::to_string(loc.seq) + ",\"kind\":\"" + kind + "\"}",
                        "application/json");
    });

    svr.Get("/snapshot", [this](const httplib::Request&, httplib::Response& res) {
        res.set_content(board_.snapshot(), "application/x-ndjson");
    });
}

BoardServer::~BoardServer() { stop(); }

int BoardServer::start(const std::string& host, int port) {
    httplib::Server& svr = impl_->server;
    if (port == 0) {
        port_ = svr.bind_to_any_port(host);
    } else {
        if (!svr.bind_to_port(host, port)) {
            throw std::runtime_error("board server: cannot bind " + host + ":" +
                                     std::to_string(port));
        }
        port_ = port;
    }
    thread_ = std::thread([&svr]() { svr.listen_after_bind(); });
    svr.wait_until_ready();
    return port_;
}

void BoardServer::stop() {
    if (thread_.joinable()) {
        impl_->server.stop();
        thread_.join();
    }
}

}  // namespace e2ev
