#include "gqlharvest/recorder/proxy.hpp"

#include "gqlharvest/query/parser.hpp"

#include <doctest.h>
#include <httplib.h>

#include <atomic>
#include <chrono>
#include <filesystem>
#include <random>
#include <string>
#include <thread>
#include <vector>

using namespace gqlharvest;

namespace {

namespace fs = std::filesystem;

struct TempDir {
    fs::path path;

    TempDir() {
        path = fs::temp_directory_path() /
               ("gqlharvest-proxy-" + std::to_string(std::random_device{}()));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
};

// Minimal upstream that echoes distinctive values so transparency is
// observable.
class UpstreamStub {
public:
    UpstreamStub() {
        server_.Post("/graphql/", [](const httplib::Request& req, httplib::Response& res) {
            res.status = 203;
            res.set_header("X-Upstream", "stub");
            res.set_content("{\"data\":{\"echo\":" + std::to_string(req.body.size()) + "}}",
                            "application/json");
        });
        server_.Get("/graphql/", [](const httplib::Request&, httplib::Response& res) {
            res.set_content("{\"data\":{}}", "application/json");
        });
        server_.Get("/plain", [](const httplib::Request&, httplib::Response& res) {
            res.set_content("not graphql at all", "text/plain");
        });
        port_ = server_.bind_to_any_port("127.0.0.1");
        thread_ = std::thread([this] { server_.listen_after_bind(); });
        server_.wait_until_ready();
    }
    ~UpstreamStub() {
        server_.stop();
        if (thread_.joinable()) thread_.join();
    }

    int port() const { return port_; }

private:
    httplib::Server server_;
    int port_ = 0;
    std::thread thread_;
};

recorder::RecordingProxy::Config proxy_config(const fs::path& store_dir, int upstream_port) {
    recorder::RecordingProxy::Config config;
    config.upstream = "http://127.0.0.1:" + std::to_string(upstream_port);
    config.store_dir = store_dir;
    return config;
}

const std::string kTeasersBody =
    "{\"query\":\"query GetTeasers { teasers(first: 2) { title } }\","
    "\"operationName\":\"GetTeasers\"}";

}  // namespace

TEST_CASE("forwarding is transparent and only the GraphQL path is harvested") {
    UpstreamStub upstream;
    TempDir dir;
    recorder::RecordingProxy proxy(proxy_config(dir.path, upstream.port()));
    proxy.start();

    httplib::Client client("127.0.0.1", proxy.port());
    auto graphql = client.Post("/graphql/", kTeasersBody, "application/json");
    REQUIRE(graphql);
    CHECK(graphql->status == 203);
    CHECK(graphql->get_header_value("X-Upstream") == "stub");
    CHECK(graphql->get_header_value("Content-Type") == "application/json");
    CHECK(graphql->body ==
          "{\"data\":{\"echo\":" + std::to_string(kTeasersBody.size()) + "}}");

    auto plain = client.Get("/plain");
    REQUIRE(plain);
    CHECK(plain->status == 200);
    CHECK(plain->body == "not graphql at all");

    auto missing = client.Get("/nowhere");
    REQUIRE(missing);
    CHECK(missing->status == 404);

    proxy.stop();
    const recorder::ProxyMetrics metrics = proxy.metrics();
    CHECK(metrics.requests_total == 3);
    CHECK(metrics.graphql_requests_total == 1);
    CHECK(metrics.parse_failures_total == 0);
    CHECK(metrics.unique_queries == 1);
    REQUIRE(proxy.store().size() == 1);
    const auto records = proxy.store().export_records();
    CHECK(records[0].operation_name == "GetTeasers");
    CHECK(records[0].times_called == 1);
}

TEST_CASE("GET queries with query parameters are harvested too") {
    UpstreamStub upstream;
    TempDir dir;
    recorder::RecordingProxy proxy(proxy_config(dir.path, upstream.port()));
    proxy.start();

    httplib::Client client("127.0.0.1", proxy.port());
    httplib::Params params{{"query", "{ teasers(first: 1) { url } }"},
                           {"variables", "{}"}};
    auto res = client.Get("/graphql/", params, httplib::Headers{});
    REQUIRE(res);
    CHECK(res->status == 200);

    proxy.stop();
    CHECK(proxy.metrics().graphql_requests_total == 1);
    CHECK(proxy.store().size() == 1);
}

TEST_CASE("unparseable GraphQL is forwarded unmodified and counted, not stored") {
    UpstreamStub upstream;
    TempDir dir;
    recorder::RecordingProxy proxy(proxy_config(dir.path, upstream.port()));
    proxy.start();

    httplib::Client client("127.0.0.1", proxy.port());
    const std::string broken = "{\"query\":\"query { teasers( } }\"}";
    auto res = client.Post("/graphql/", broken, "application/json");
    REQUIRE(res);
    CHECK(res->status == 203);  // upstream answered normally

    // A body without a "query" member is not GraphQL traffic at all.
    auto not_graphql = client.Post("/graphql/", "{\"ping\":true}", "application/json");
    REQUIRE(not_graphql);

    proxy.stop();
    const recorder::ProxyMetrics metrics = proxy.metrics();
    CHECK(metrics.requests_total == 2);
    CHECK(metrics.graphql_requests_total == 1);
    CHECK(metrics.parse_failures_total == 1);
    CHECK(proxy.store().size() == 0);
}

TEST_CASE("unreachable upstream turns into 502") {
    TempDir dir;
    const int dead_port = 1;  // reserved, never listening
    recorder::RecordingProxy proxy(proxy_config(dir.path, dead_port));
    proxy.start();

    httplib::Client client("127.0.0.1", proxy.port());
    auto res = client.Post("/graphql/", kTeasersBody, "application/json");
    REQUIRE(res);
    CHECK(res->status == 502);

    proxy.stop();
    CHECK(proxy.store().size() == 0);
}

TEST_CASE("the metrics endpoint answers locally in plain text") {
    UpstreamStub upstream;
    TempDir dir;
    recorder::RecordingProxy proxy(proxy_config(dir.path, upstream.port()));
    proxy.start();

    httplib::Client client("127.0.0.1", proxy.port());
    client.Post("/graphql/", kTeasersBody, "application/json");

    // Harvesting is asynchronous; poll until the counters catch up.
    std::string body;
    const auto deadline = std::chrono::steady_clock::now() + std::chrono::seconds(3);
    while (std::chrono::steady_clock::now() < deadline) {
        auto res = client.Get("/-/metrics");
        REQUIRE(res);
        body = res->body;
        if (body.find("unique_queries 1") != std::string::npos) break;
        std::this_thread::sleep_for(std::chrono::milliseconds(20));
    }
    CHECK(body.find("requests_total 1") != std::string::npos);
    CHECK(body.find("graphql_requests_total 1") != std::string::npos);
    CHECK(body.find("parse_failures_total 0") != std::string::npos);
    CHECK(body.find("unique_queries 1") != std::string::npos);
    proxy.stop();
}

TEST_CASE("concurrent duplicate traffic folds into exact counts") {
    UpstreamStub upstream;
    TempDir dir;
    recorder::RecordingProxy proxy(proxy_config(dir.path, upstream.port()));
    proxy.start();

    const std::vector<std::string> queries = {
        "{\"query\":\"query A { teasers(first: 1) { title } }\"}",
        "{\"query\":\"query B { teasers(first: 2) { url } }\"}",
        "{\"query\":\"query C { video(id: \\\"v\\\") { id } }\"}",
    };
    constexpr int kThreads = 8;
    constexpr int kPerThread = 25;
    std::atomic<int> delivered{0};
    std::vector<std::thread> workers;
    for (int t = 0; t < kThreads; ++t) {
        workers.emplace_back([&, t] {
            httplib::Client client("127.0.0.1", proxy.port());
            for (int i = 0; i < kPerThread; ++i) {
                const std::string& body = queries[(t + i) % queries.size()];
                auto res = client.Post("/graphql/", body, "application/json");
                if (res && res->status == 203) delivered.fetch_add(1);
            }
        });
    }
    for (std::thread& worker : workers) worker.join();
    REQUIRE(delivered.load() == kThreads * kPerThread);

    proxy.stop();
    REQUIRE(proxy.store().size() == queries.size());
    std::uint64_t total = 0;
    for (const auto& record : proxy.store().export_records()) {
        total += record.times_called;
    }
    CHECK(total == static_cast<std::uint64_t>(kThreads * kPerThread));
    CHECK(proxy.metrics().graphql_requests_total ==
          static_cast<std::uint64_t>(kThreads * kPerThread));

    // The compacted store reopens to the same state.
    recorder::QueryStore reopened(dir.path);
    CHECK(reopened.export_records() == proxy.store().export_records());
}
