#pragma once

#include "e2ev/board.hpp"

#include <memory>
#include <thread>

namespace e2ev {

/**
 * Minimal wire service in front of a Board. One writer process owns the Board;
 * remote devices and auditors append and read over HTTP. Appends go through
 * the same policy gate as local ones, so a rejected payload gets a 400 with
 * the rejection reason rather than a seat on the chain.
 *
 *   POST /entries          {"kind":"cast_ballot","payload":"..."} -> {"seq","entry_hash"}
 *   GET  /entries?from=N   {"entries":[...]}
 *   GET  /ballots/{hash}   {"seq","kind"} or 404
 *   GET  /snapshot         the exact publishable board file bytes
 */
class BoardServer {
  public:
    explicit BoardServer(Board& board);
    ~BoardServer();

    /** Bind and serve on a background thread; port 0 picks a free port. */
    int start(const std::string& host = "127.0.0.1", int port = 0);
    void stop();
    int port() const { return port_; }

  private:
    struct Impl;
    Board& board_;
    std::unique_ptr<Impl> impl_;
    std::thread thread_;
    int port_ = 0;
};

}  // namespace e2ev
