#include "gqlharvest/recorder/proxy.hpp"

#include "gqlharvest/errors.hpp"
#include "gqlharvest/query/parser.hpp"
#include "gqlharvest/util/timeutil.hpp"

#include <httplib.h>

#include <chrono>
#include <cctype>
#include <iostream>

namespace gqlharvest::recorder {
namespace {

bool iequals(std::string_view a, std::string_view b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (std::tolower(static_cast<unsigned char>(a[i])) !=
            std::tolower(static_cast<unsigned char>(b[i]))) {
            return false;
        }
    }
    return true;
}

// Hop-by-hop headers (RFC 9110 §7.6.1) never cross the proxy; the *_ADDR /
// *_PORT entries are pseudo-headers the embedded server synthesizes.
bool crosses_proxy(const std::string& name) {
    for (const char* blocked :
         {"Connection", "Keep-Alive", "Proxy-Authenticate", "Proxy-Authorization", "TE",
          "Trailer", "Transfer-Encoding", "Upgrade", "Host", "Content-Length", "REMOTE_ADDR",
          "REMOTE_PORT", "LOCAL_ADDR", "LOCAL_PORT"}) {
        if (iequals(name, blocked)) return false;
    }
    return true;
}

}  // namespace

RecordingProxy::RecordingProxy(Config config)
    : config_(std::move(config)), store_(config_.store_dir) {}

RecordingProxy::~RecordingProxy() { stop(); }

void RecordingProxy::start() {
    server_ = std::make_unique<httplib::Server>();
    server_->new_task_queue = [] { return new httplib::ThreadPool(16); };

    server_->Get("/-/metrics", [this](const httplib::Request&, httplib::Response& res) {
        ProxyMetrics m = metrics();
        std::string text;
        text += "requests_total " + std::to_string(m.requests_total) + "\n";
        text += "graphql_requests_total " + std::to_string(m.graphql_requests_total) + "\n";
        text += "parse_failures_total " + std::to_string(m.parse_failures_total) + "\n";
        text += "unique_queries " + std::to_string(m.unique_queries) + "\n";
        res.set_content(text, "text/plain");
    });

    auto forward = [this](const httplib::Request& req, httplib::Response& res) {
        handle(req, res);
    };
    server_->Get(".*", forward);
    server_->Post(".*", forward);
    server_->Put(".*", forward);
    server_->Patch(".*", forward);
    server_->Delete(".*", forward);
    server_->Options(".*", forward);

    if (config_.listen_port == 0) {
        port_ = server_->bind_to_any_port(config_.listen_host);
        if (port_ <= 0) {
            throw Error("cannot bind to " + config_.listen_host);
        }
    } else {
        if (!server_->bind_to_port(config_.listen_host, config_.listen_port)) {
            throw Error("cannot bind to " + config_.listen_host + ":" +
                        std::to_string(config_.listen_port));
        }
        port_ = config_.listen_port;
    }

    writer_thread_ = std::thread([this] { writer_loop(); });
    server_thread_ = std::thread([this] { server_->listen_after_bind(); });
    while (!server_->is_running()) {
        std::this_thread::sleep_for(std::chrono::milliseconds(1));
    }
}

void RecordingProxy::stop() {
    if (stopping_.exchange(true)) {
        wait();  // another caller is already shutting down
        return;
    }
    if (server_) server_->stop();
    if (server_thread_.joinable()) server_thread_.join();
    {
        std::lock_guard<std::mutex> lock(queue_mutex_);
        draining_ = true;
    }
    queue_cv_.notify_all();
    if (writer_thread_.joinable()) writer_thread_.join();
    store_.compact();
    {
        std::lock_guard<std::mutex> lock(stop_mutex_);
        finished_.store(true);
    }
    stop_cv_.notify_all();
}

void RecordingProxy::wait() {
    std::unique_lock<std::mutex> lock(stop_mutex_);
    stop_cv_.wait(lock, [this] { return finished_.load(); });
}

ProxyMetrics RecordingProxy::metrics() const {
    ProxyMetrics m;
    m.requests_total = requests_total_.load();
    m.graphql_requests_total = graphql_requests_total_.load();
    m.parse_failures_total = parse_failures_total_.load();
    m.unique_queries = store_.size();
    return m;
}

void RecordingProxy::handle(const httplib::Request& req, httplib::Response& res) {
    requests_total_.fetch_add(1, std::memory_order_relaxed);

    httplib::Request upstream_req;
    upstream_req.method = req.method;
    upstream_req.path = req.target.empty() ? req.path : req.target;
    upstream_req.body = req.body;
    for (const auto& [name, value] : req.headers) {
        if (crosses_proxy(name)) upstream_req.headers.emplace(name, value);
    }

    httplib::Client client(config_.upstream);
    client.set_connection_timeout(0, config_.upstream_timeout_ms * 1000LL);
    client.set_read_timeout(config_.upstream_timeout_ms / 1000,
                            (config_.upstream_timeout_ms % 1000) * 1000LL);
    client.set_keep_alive(false);

    httplib::Result result = client.send(upstream_req);
    if (!result) {
        res.status = 502;
        res.set_content("upstream unreachable\n", "text/plain");
        return;
    }

    res.status = result->status;
    for (const auto& [name, value] : result->headers) {
        if (crosses_proxy(name)) res.set_header(name, value);
    }
    res.body = result->body;

    // Response is fully formed; hand the raw request to the writer.
    if (req.path == config_.graphql_path) {
        Capture capture;
        capture.ts = util::now_utc();
        if (req.method == "POST") {
            capture.body = req.body;
        } else if (req.method == "GET" && req.has_param("query")) {
            capture.from_get = true;
            capture.query_param = req.get_param_value("query");
            if (req.has_param("variables")) {
                capture.variables_param = req.get_param_value("variables");
            }
        } else {
            return;
        }
        enqueue(std::move(capture));
    }
}

void RecordingProxy::enqueue(Capture capture) {
    {
        std::lock_guard<std::mutex> lock(queue_mutex_);
        queue_.push_back(std::move(capture));
    }
    queue_cv_.notify_one();
}

void RecordingProxy::writer_loop() {
    for (;;) {
        Capture capture;
        {
            std::unique_lock<std::mutex> lock(queue_mutex_);
            queue_cv_.wait(lock, [this] { return !queue_.empty() || draining_; });
            if (queue_.empty()) {
                if (draining_) return;
                continue;
            }
            capture = std::move(queue_.front());
            queue_.pop_front();
        }
        harvest(capture);
    }
}

void RecordingProxy::harvest(Capture& capture) {
    std::string query_text;
    Json variables = Json::object();

    if (capture.from_get) {
        query_text = capture.query_param;
        if (!capture.variables_param.empty()) {
            Json parsed =
                Json::parse(capture.variables_param, nullptr, /*allow_exceptions=*/false);
            if (parsed.is_object()) variables = std::move(parsed);
        }
    } else {
        Json body = Json::parse(capture.body, nullptr, /*allow_exceptions=*/false);
        if (!body.is_object() || !body.contains("query") || !body.at("query").is_string()) {
            return;  // not a GraphQL request; nothing to count
        }
        query_text = body.at("query").get<std::string>();
        if (body.contains("variables") && body.at("variables").is_object()) {
            variables = body.at("variables");
        }
    }

    graphql_requests_total_.fetch_add(1, std::memory_order_relaxed);
    try {
        query::QueryDocument doc = query::parse_query(query_text);
        query::CanonicalKey key = query::canonicalize(doc, variables);
        store_.record(key, query_text, variables, doc.operation_name, doc.operation_kind,
                      capture.ts);
    } catch (const StorageError& e) {
        std::cerr << "store write failed: " << e.what() << "\n";
    } catch (const Error&) {
        parse_failures_total_.fetch_add(1, std::memory_order_relaxed);
    }
}

}  // namespace gqlharvest::recorder
