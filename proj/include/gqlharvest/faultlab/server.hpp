#pragma once

#include "gqlharvest/faultlab/fault.hpp"
#include "gqlharvest/schema/model.hpp"

#include <atomic>
#include <cstdint>
#include <memory>
#include <string>
#include <thread>
#include <vector>

namespace httplib {
class Server;
struct Request;
struct Response;
}

namespace gqlharvest::faultlab {

// Mock GraphQL endpoint: answers POST (and GET) requests on the configured
// path with deterministic seeded synthetic data for the fixture schema,
// applies the enabled faults at their targets, and serves standard
// introspection (any request whose query selects __schema). Fixture state
// is immutable while serving; changing faults means restarting.
class FaultServer {
public:
    struct Config {
        schema::SchemaModel schema;
        std::uint64_t seed = 0;
        std::vector<FaultSpec> faults;
        std::string listen_host = "127.0.0.1";
        int listen_port = 0;  // 0 picks an ephemeral port
        std::string graphql_path = "/graphql/";
    };

    explicit FaultServer(Config config);
    ~FaultServer();

    FaultServer(const FaultServer&) = delete;
    FaultServer& operator=(const FaultServer&) = delete;

    // Binds and serves; returns once the listener is accepting. Throws
    // Error when the address cannot be bound.
    void start();
    void stop();
    void wait();

    int port() const { return port_; }

private:
    void handle(const httplib::Request& request, httplib::Response& response);

    Config config_;
    std::unique_ptr<httplib::Server> server_;
    std::thread server_thread_;
    int port_ = 0;
    std::atomic<bool> stopped_{false};
};

}  // namespace gqlharvest::faultlab
