#pragma once

#include "gqlharvest/recorder/store.hpp"

#include <atomic>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <filesystem>
#include <memory>
#include <mutex>
#include <string>
#include <thread>

namespace httplib {
class Server;
struct Request;
struct Response;
}

namespace gqlharvest::recorder {

// Counter snapshot exposed on the metrics endpoint. unique_queries mirrors
// the store size; the other three are monotonically increasing totals.
struct ProxyMetrics {
    std::uint64_t requests_total = 0;
    std::uint64_t graphql_requests_total = 0;
    std::uint64_t parse_failures_total = 0;
    std::uint64_t unique_queries = 0;
};

// Reverse proxy that forwards every request to one upstream unchanged and
// harvests GraphQL requests on the configured path into a QueryStore.
// Harvesting (JSON + GraphQL parsing, canonicalization, journal write) runs
// on a single writer thread fed by a fire-and-forget queue, so it never sits
// on the request path. GET /-/metrics answers locally with the counters.
class RecordingProxy {
public:
    struct Config {
        std::string listen_host = "127.0.0.1";
        int listen_port = 0;  // 0 picks an ephemeral port
        std::string upstream;  // e.g. "http://127.0.0.1:9000"
        std::string graphql_path = "/graphql/";
        std::filesystem::path store_dir;
        int upstream_timeout_ms = 30000;
    };

    // Opens (or creates) the store; throws StorageError when that fails.
    explicit RecordingProxy(Config config);
    ~RecordingProxy();

    RecordingProxy(const RecordingProxy&) = delete;
    RecordingProxy& operator=(const RecordingProxy&) = delete;

    // Binds and starts serving; returns once the listener is accepting.
    // Throws Error when the address cannot be bound.
    void start();

    // Stops accepting, drains the capture queue, compacts the store. Safe to
    // call more than once.
    void stop();

    // Blocks until stop() is called from another thread (used by the CLI).
    void wait();

    int port() const { return port_; }
    ProxyMetrics metrics() const;
    QueryStore& store() { return store_; }

private:
    struct Capture {
        bool from_get = false;
        std::string body;            // POST body, verbatim
        std::string query_param;     // GET ?query=
        std::string variables_param; // GET ?variables=
        std::int64_t ts = 0;
    };

    void handle(const httplib::Request& request, httplib::Response& response);
    void enqueue(Capture capture);
    void writer_loop();
    void harvest(Capture& capture);

    Config config_;
    QueryStore store_;
    std::unique_ptr<httplib::Server> server_;
    std::thread server_thread_;
    std::thread writer_thread_;
    int port_ = 0;

    std::atomic<std::uint64_t> requests_total_{0};
    std::atomic<std::uint64_t> graphql_requests_total_{0};
    std::atomic<std::uint64_t> parse_failures_total_{0};

    std::mutex queue_mutex_;
    std::condition_variable queue_cv_;
    std::deque<Capture> queue_;
    bool draining_ = false;

    std::atomic<bool> stopping_{false};
    std::atomic<bool> finished_{false};
    std::mutex stop_mutex_;
    std::condition_variable stop_cv_;
};

}  // namespace gqlharvest::recorder
