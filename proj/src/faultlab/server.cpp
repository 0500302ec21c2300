#include "gqlharvest/faultlab/server.hpp"

#include "gqlharvest/errors.hpp"
#include "gqlharvest/faultlab/datagen.hpp"
#include "gqlharvest/query/parser.hpp"
#include "gqlharvest/schema/introspection.hpp"

#include <httplib.h>

#include <chrono>

namespace gqlharvest::faultlab {
namespace {

void answer_json(httplib::Response& res, int status, const Json& body) {
    res.status = status;
    res.set_content(body.dump(), "application/json");
}

void answer_errors(httplib::Response& res, int status, const std::string& message) {
    Json body = Json::object();
    body["errors"] = Json::array({Json{{"message", message}}});
    answer_json(res, status, body);
}

}  // namespace

FaultServer::FaultServer(Config config) : config_(std::move(config)) {}

FaultServer::~FaultServer() { stop(); }

void FaultServer::start() {
    server_ = std::make_unique<httplib::Server>();
    server_->new_task_queue = [] { return new httplib::ThreadPool(8); };

    auto handler = [this](const httplib::Request& req, httplib::Response& res) {
        handle(req, res);
    };
    server_->Post(config_.graphql_path, handler);
    server_->Get(config_.graphql_path, handler);

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
    server_thread_ = std::thread([this] { server_->listen_after_bind(); });
    while (!server_->is_running()) {
        std::this_thread::sleep_for(std::chrono::milliseconds(1));
    }
}

void FaultServer::stop() {
    if (stopped_.exchange(true)) return;
    if (server_) server_->stop();
    if (server_thread_.joinable()) server_thread_.join();
}

void FaultServer::wait() {
    if (server_thread_.joinable()) server_thread_.join();
}

void FaultServer::handle(const httplib::Request& req, httplib::Response& res) {
    std::string query_text;
    Json variables = Json::object();

    if (req.method == "GET") {
        if (!req.has_param("query")) {
            answer_errors(res, 400, "missing query parameter");
            return;
        }
        query_text = req.get_param_value("query");
        if (req.has_param("variables")) {
            Json parsed = Json::parse(req.get_param_value("variables"), nullptr,
                                      /*allow_exceptions=*/false);
            if (parsed.is_object()) variables = std::move(parsed);
        }
    } else {
        Json body = Json::parse(req.body, nullptr, /*allow_exceptions=*/false);
        if (!body.is_object() || !body.contains("query") || !body.at("query").is_string()) {
            answer_errors(res, 400, "request body must carry a \"query\" member");
            return;
        }
        query_text = body.at("query").get<std::string>();
        if (body.contains("variables") && body.at("variables").is_object()) {
            variables = body.at("variables");
        }
    }

    // The standard introspection query selects meta fields our synthetic
    // resolver does not model; answer it from the schema directly.
    if (query_text.find("__schema") != std::string::npos) {
        answer_json(res, 200, schema::render_introspection(config_.schema));
        return;
    }

    try {
        query::QueryDocument doc = query::parse_query(query_text);
        SyntheticResponse reply =
            faulted_response(config_.schema, doc, config_.seed, config_.faults, variables);
        answer_json(res, reply.status, reply.body);
    } catch (const Error& e) {
        answer_errors(res, 200, e.what());
    }
}

}  // namespace gqlharvest::faultlab
