// gqlharvest — record GraphQL traffic, generate a conformance suite from it,
// run the suite, and measure schema coverage.

#include "gqlharvest/coverage/coverage.hpp"
#include "gqlharvest/errors.hpp"
#include "gqlharvest/faultlab/fault.hpp"
#include "gqlharvest/faultlab/server.hpp"
#include "gqlharvest/json.hpp"
#include "gqlharvest/query/canonical.hpp"
#include "gqlharvest/query/parser.hpp"
#include "gqlharvest/recorder/proxy.hpp"
#include "gqlharvest/recorder/store.hpp"
#include "gqlharvest/report/summary.hpp"
#include "gqlharvest/schema/introspection.hpp"
#include "gqlharvest/schema/model.hpp"
#include "gqlharvest/schema/sdl.hpp"
#include "gqlharvest/suite/runner.hpp"
#include "gqlharvest/suite/testcase.hpp"
#include "gqlharvest/util/timeutil.hpp"

#include <CLI11.hpp>
#include <httplib.h>

#include <atomic>
#include <chrono>
#include <csignal>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace {

using gqlharvest::Error;
using gqlharvest::Json;

std::atomic<bool> g_interrupted{false};

void handle_signal(int) { g_interrupted.store(true); }

void install_signal_handlers() {
    std::signal(SIGINT, handle_signal);
    std::signal(SIGTERM, handle_signal);
}

void wait_for_signal() {
    while (!g_interrupted.load()) {
        std::this_thread::sleep_for(std::chrono::milliseconds(50));
    }
}

// "127.0.0.1:8080" -> {"127.0.0.1", 8080}; "8080" -> {"127.0.0.1", 8080};
// ":0" -> {"127.0.0.1", 0}.
std::pair<std::string, int> parse_listen(const std::string& addr) {
    std::string host = "127.0.0.1";
    std::string port_text = addr;
    const std::size_t colon = addr.rfind(':');
    if (colon != std::string::npos) {
        if (colon > 0) host = addr.substr(0, colon);
        port_text = addr.substr(colon + 1);
    }
    if (port_text.empty()) return {host, 0};
    try {
        std::size_t used = 0;
        const int port = std::stoi(port_text, &used);
        if (used != port_text.size() || port < 0 || port > 65535) {
            throw Error("invalid listen address: " + addr);
        }
        return {host, port};
    } catch (const std::logic_error&) {
        throw Error("invalid listen address: " + addr);
    }
}

// "http://host:port/some/path" -> {"http://host:port", "/some/path"}.
std::pair<std::string, std::string> split_endpoint(const std::string& endpoint) {
    const std::size_t scheme = endpoint.find("://");
    const std::size_t path_start =
        endpoint.find('/', scheme == std::string::npos ? 0 : scheme + 3);
    if (path_start == std::string::npos) {
        return {endpoint, "/"};
    }
    return {endpoint.substr(0, path_start), endpoint.substr(path_start)};
}

std::string read_file(const std::filesystem::path& path, const std::string& hint) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot open " + path.string() + (hint.empty() ? "" : " (" + hint + ")"));
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error("cannot write " + path.string());
    }
    out << content;
    if (!out) {
        throw Error("cannot write " + path.string());
    }
}

gqlharvest::schema::SchemaModel fetch_schema_from_endpoint(const std::string& endpoint) {
    const auto [base, path] = split_endpoint(endpoint);
    httplib::Client client(base);
    client.set_connection_timeout(10, 0);
    client.set_read_timeout(30, 0);
    Json body = Json::object();
    body["query"] = gqlharvest::schema::kIntrospectionQuery;
    httplib::Result result = client.Post(path, body.dump(), "application/json");
    if (!result) {
        throw Error("cannot fetch schema from " + endpoint + ": " +
                    httplib::to_string(result.error()));
    }
    if (result->status != 200) {
        throw Error("cannot fetch schema from " + endpoint + ": HTTP " +
                    std::to_string(result->status));
    }
    Json doc = Json::parse(result->body, nullptr, false);
    if (doc.is_discarded()) {
        throw Error("cannot fetch schema from " + endpoint + ": response is not JSON");
    }
    return gqlharvest::schema::ingest_introspection(doc);
}

// Accepts an SDL file, an introspection JSON file, or an http(s) endpoint
// answering the standard introspection query.
gqlharvest::schema::SchemaModel load_schema(const std::string& source) {
    if (source.rfind("http://", 0) == 0 || source.rfind("https://", 0) == 0) {
        return fetch_schema_from_endpoint(source);
    }
    const std::string text = read_file(source, "schema source");
    const std::size_t first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        Json doc = Json::parse(text, nullptr, false);
        if (doc.is_discarded()) {
            throw Error("schema file " + source + " looks like JSON but does not parse");
        }
        return gqlharvest::schema::ingest_introspection(doc);
    }
    return gqlharvest::schema::parse_sdl(text);
}

std::optional<std::int64_t> parse_time_flag(const std::string& text, const std::string& flag) {
    if (text.empty()) return std::nullopt;
    const std::optional<std::int64_t> parsed = gqlharvest::util::parse_utc(text);
    if (!parsed) {
        throw Error(flag + " expects \"YYYY-MM-DD HH:MM:SS\" (UTC), got \"" + text + "\"");
    }
    return parsed;
}

// ---------------------------------------------------------------------------
// record

struct RecordArgs {
    std::string listen;
    std::string upstream;
    std::string path = "/graphql/";
    std::string store_dir;
};

int cmd_record(const RecordArgs& args) {
    const auto [host, port] = parse_listen(args.listen);
    gqlharvest::recorder::RecordingProxy::Config config;
    config.listen_host = host;
    config.listen_port = port;
    config.upstream = args.upstream;
    config.graphql_path = args.path;
    config.store_dir = args.store_dir;
    gqlharvest::recorder::RecordingProxy proxy(std::move(config));

    install_signal_handlers();
    proxy.start();
    std::cout << "listening on http://" << host << ":" << proxy.port() << " -> "
              << args.upstream << " (store: " << args.store_dir << ", metrics: /-/metrics)"
              << std::endl;

    wait_for_signal();
    proxy.stop();

    const gqlharvest::recorder::ProxyMetrics metrics = proxy.metrics();
    std::cout << "stopped: " << metrics.requests_total << " request(s), "
              << metrics.graphql_requests_total << " GraphQL, " << metrics.unique_queries
              << " unique, " << metrics.parse_failures_total << " parse failure(s)"
              << std::endl;
    return 0;
}

// ---------------------------------------------------------------------------
// generate

struct GenerateArgs {
    std::string store_dir;
    std::string schema_source;
    std::string out;
    std::uint64_t min_calls = 0;
    std::string since;
    std::string until;
};

int cmd_generate(const GenerateArgs& args) {
    const gqlharvest::schema::SchemaModel schema = load_schema(args.schema_source);

    gqlharvest::recorder::QueryStore store(args.store_dir);
    gqlharvest::recorder::FilterSpec filter;
    if (args.min_calls > 0) filter.min_times_called = args.min_calls;
    filter.since = parse_time_flag(args.since, "--since");
    filter.until = parse_time_flag(args.until, "--until");
    const std::vector<gqlharvest::recorder::QueryRecord> records = store.export_records(filter);

    const gqlharvest::suite::GenerationResult generated =
        gqlharvest::suite::generate(records, schema);
    gqlharvest::suite::export_manifest(generated.cases, args.out);

    for (const gqlharvest::suite::GenerationIssue& issue : generated.skipped) {
        std::cerr << "skipped " << issue.key << " ("
                  << issue.operation_name.value_or("anonymous") << "): " << issue.reason
                  << "\n";
    }
    std::cout << "generated " << generated.cases.size() << " case(s) from " << records.size()
              << " record(s) into " << args.out;
    if (!generated.skipped.empty()) {
        std::cout << " (" << generated.skipped.size() << " skipped)";
    }
    std::cout << std::endl;
    return 0;
}

// ---------------------------------------------------------------------------
// run

struct RunArgs {
    std::string manifest;
    std::string endpoint;
    int parallelism = 4;
    double timeout_seconds = 30.0;
    std::string pre_hook;
    std::vector<std::string> headers;
    std::string report_out;
};

int cmd_run(const RunArgs& args) {
    const std::vector<gqlharvest::suite::TestCase> cases =
        gqlharvest::suite::import_manifest(args.manifest);

    gqlharvest::suite::RunConfig config;
    config.endpoint = args.endpoint;
    config.parallelism = args.parallelism;
    config.timeout_seconds = args.timeout_seconds;
    config.pre_hook = args.pre_hook;
    for (const std::string& header : args.headers) {
        const std::size_t colon = header.find(':');
        if (colon == std::string::npos) {
            throw Error("--header expects \"Name: value\", got \"" + header + "\"");
        }
        std::string value = header.substr(colon + 1);
        const std::size_t start = value.find_first_not_of(' ');
        value = start == std::string::npos ? "" : value.substr(start);
        config.headers.emplace_back(header.substr(0, colon), value);
    }

    const gqlharvest::suite::SuiteResult result = gqlharvest::suite::run_suite(cases, config);
    if (!args.report_out.empty()) {
        write_file(args.report_out,
                   gqlharvest::canonical_dump(gqlharvest::suite::suite_result_to_json(result)) +
                       "\n");
    }

    std::cout << result.tests << " test(s): " << result.passing << " passing, "
              << result.failing << " failing, " << result.assertions_evaluated
              << " assertion(s) in " << result.wall_time_seconds << "s" << std::endl;
    return result.failing > 0 ? 1 : 0;
}

// ---------------------------------------------------------------------------
// coverage

struct CoverageArgs {
    std::string schema_source;
    std::string manifest;
    std::string against;
    std::string out;
    bool include_mutation_entry_points = false;
};

int cmd_coverage(const CoverageArgs& args) {
    const gqlharvest::schema::SchemaModel schema = load_schema(args.schema_source);
    const std::vector<gqlharvest::suite::TestCase> cases =
        gqlharvest::suite::import_manifest(args.manifest);

    std::vector<gqlharvest::query::QueryDocument> docs;
    docs.reserve(cases.size());
    for (const gqlharvest::suite::TestCase& test_case : cases) {
        docs.push_back(gqlharvest::query::parse_query(test_case.query_text));
    }

    gqlharvest::coverage::CoverageOptions options;
    options.include_mutation_entry_points = args.include_mutation_entry_points;
    const gqlharvest::coverage::CoverageReport report =
        gqlharvest::coverage::coverage_of(docs, schema, options);

    Json doc = gqlharvest::coverage::coverage_report_to_json(report);
    if (!args.against.empty()) {
        Json against_doc = Json::parse(read_file(args.against, "tuple set for --against"),
                                       nullptr, false);
        if (against_doc.is_discarded()) {
            throw Error("--against file " + args.against + " is not valid JSON");
        }
        const std::set<gqlharvest::schema::SchemaTuple> against =
            gqlharvest::coverage::tuple_set_from_json(against_doc);
        const gqlharvest::coverage::SuiteDiff diff = gqlharvest::coverage::diff(
            report.covered, against, gqlharvest::coverage::universe_of(schema, options));
        doc["diff"] = gqlharvest::coverage::suite_diff_to_json(diff);
    }
    write_file(args.out, gqlharvest::canonical_dump(doc) + "\n");

    std::cout << "schema coverage " << report.percent() << " (" << report.covered.size() << "/"
              << report.schema_tuples << " tuples, " << report.entry_points_covered << "/"
              << report.entry_points_total << " entry points) -> " << args.out << std::endl;
    return 0;
}

// ---------------------------------------------------------------------------
// report

struct ReportArgs {
    std::string store_dir;
    std::string manifest;
    std::string suite_report;
    std::string schema_source;
    std::string out;
};

int cmd_report(const ReportArgs& args) {
    const gqlharvest::schema::SchemaModel schema = load_schema(args.schema_source);

    if (!std::filesystem::exists(args.store_dir)) {
        throw Error("store directory " + args.store_dir +
                    " does not exist (run `gqlharvest record` first)");
    }
    gqlharvest::recorder::QueryStore store(args.store_dir);

    std::vector<gqlharvest::suite::TestCase> manifest;
    try {
        manifest = gqlharvest::suite::import_manifest(args.manifest);
    } catch (const Error& e) {
        throw Error(std::string(e.what()) + " (run `gqlharvest generate` first)");
    }

    gqlharvest::suite::SuiteResult result;
    try {
        Json doc = Json::parse(read_file(args.suite_report, "suite report"), nullptr, false);
        if (doc.is_discarded()) {
            throw Error("suite report " + args.suite_report + " is not valid JSON");
        }
        result = gqlharvest::suite::suite_result_from_json(doc);
    } catch (const Error& e) {
        throw Error(std::string(e.what()) + " (run `gqlharvest run --report` first)");
    }

    const gqlharvest::report::RunSummary summary =
        gqlharvest::report::build_summary(schema, manifest, result, store.size());

    std::cout << gqlharvest::report::render_table(summary);
    if (!args.out.empty()) {
        write_file(args.out,
                   gqlharvest::canonical_dump(gqlharvest::report::summary_to_json(summary)) +
                       "\n");
    }
    return summary.failing > 0 ? 1 : 0;
}

// ---------------------------------------------------------------------------
// faultlab

struct FaultlabArgs {
    std::string schema_source;
    std::uint64_t seed = 0;
    std::vector<std::string> fault_files;
    std::string listen;
    std::string path = "/graphql/";
};

int cmd_faultlab(const FaultlabArgs& args) {
    const auto [host, port] = parse_listen(args.listen);

    std::vector<gqlharvest::faultlab::FaultSpec> faults;
    for (const std::string& file : args.fault_files) {
        Json doc = Json::parse(read_file(file, "fault spec"), nullptr, false);
        if (doc.is_discarded()) {
            throw Error("fault spec " + file + " is not valid JSON");
        }
        if (doc.is_array()) {
            for (const Json& entry : doc) {
                faults.push_back(gqlharvest::faultlab::fault_spec_from_json(entry));
            }
        } else {
            faults.push_back(gqlharvest::faultlab::fault_spec_from_json(doc));
        }
    }

    gqlharvest::faultlab::FaultServer::Config config{
        load_schema(args.schema_source), args.seed, std::move(faults), host, port, args.path};

    gqlharvest::faultlab::FaultServer server(std::move(config));
    install_signal_handlers();
    server.start();
    std::cout << "faultlab serving on http://" << host << ":" << server.port() << args.path
              << " (seed " << args.seed << ", " << args.fault_files.size()
              << " fault file(s))" << std::endl;

    wait_for_signal();
    server.stop();
    std::cout << "stopped" << std::endl;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"harvest GraphQL traffic and test servers against their schema"};
    app.require_subcommand(1);

    RecordArgs record_args;
    CLI::App* record = app.add_subcommand(
        "record", "reverse proxy that captures GraphQL queries into a store");
    record->add_option("--listen", record_args.listen, "host:port to listen on")->required();
    record->add_option("--upstream", record_args.upstream, "upstream base URL to forward to")
        ->required();
    record->add_option("--path", record_args.path, "GraphQL endpoint path")
        ->capture_default_str();
    record->add_option("--store", record_args.store_dir, "query store directory")->required();

    GenerateArgs generate_args;
    CLI::App* generate = app.add_subcommand(
        "generate", "derive a test suite manifest from recorded queries");
    generate->add_option("--store", generate_args.store_dir, "query store directory")
        ->required();
    generate
        ->add_option("--schema", generate_args.schema_source,
                     "SDL file, introspection JSON file, or endpoint URL")
        ->required();
    generate->add_option("--out", generate_args.out, "manifest output file (JSON Lines)")
        ->required();
    generate->add_option("--min-calls", generate_args.min_calls,
                         "only records called at least N times");
    generate->add_option("--since", generate_args.since,
                         "only records updated at or after this UTC time");
    generate->add_option("--until", generate_args.until,
                         "only records updated at or before this UTC time");

    RunArgs run_args;
    CLI::App* run = app.add_subcommand("run", "run a manifest against an endpoint");
    run->add_option("--manifest", run_args.manifest, "manifest file")->required();
    run->add_option("--endpoint", run_args.endpoint, "GraphQL endpoint URL")->required();
    run->add_option("--parallelism", run_args.parallelism, "concurrent requests")
        ->capture_default_str();
    run->add_option("--timeout", run_args.timeout_seconds, "per-request timeout in seconds")
        ->capture_default_str();
    run->add_option("--pre-hook", run_args.pre_hook,
                    "shell command run once before the suite (e.g. reset a staging DB)");
    run->add_option("--header", run_args.headers,
                    "extra request header \"Name: value\" (repeatable)");
    run->add_option("--report", run_args.report_out, "write the run report JSON here");

    CoverageArgs coverage_args;
    CLI::App* coverage = app.add_subcommand(
        "coverage", "schema coverage of a manifest, optionally diffed against another set");
    coverage
        ->add_option("--schema", coverage_args.schema_source,
                     "SDL file, introspection JSON file, or endpoint URL")
        ->required();
    coverage->add_option("--manifest", coverage_args.manifest, "manifest file")->required();
    coverage->add_option("--against", coverage_args.against,
                         "tuple-set JSON file to diff against");
    coverage->add_option("--out", coverage_args.out, "coverage output JSON file")->required();
    coverage->add_flag("--include-mutation-entry-points",
                       coverage_args.include_mutation_entry_points,
                       "count mutation fields in the tuple universe");

    ReportArgs report_args;
    CLI::App* report = app.add_subcommand(
        "report", "summarize one pipeline run as a metric table");
    report->add_option("--store", report_args.store_dir, "query store directory")->required();
    report->add_option("--manifest", report_args.manifest, "manifest file")->required();
    report->add_option("--suite-report", report_args.suite_report,
                       "report JSON written by `run --report`")
        ->required();
    report
        ->add_option("--schema", report_args.schema_source,
                     "SDL file, introspection JSON file, or endpoint URL")
        ->required();
    report->add_option("--out", report_args.out, "also write the summary JSON here");

    FaultlabArgs faultlab_args;
    CLI::App* faultlab = app.add_subcommand(
        "faultlab", "mock GraphQL server with deterministic data and injected faults");
    faultlab
        ->add_option("--schema", faultlab_args.schema_source,
                     "SDL file or introspection JSON file")
        ->required();
    faultlab->add_option("--seed", faultlab_args.seed, "data generation seed")
        ->capture_default_str();
    faultlab->add_option("--fault", faultlab_args.fault_files,
                         "fault spec JSON file (repeatable; file may hold one spec or an array)");
    faultlab->add_option("--listen", faultlab_args.listen, "host:port to listen on")
        ->required();
    faultlab->add_option("--path", faultlab_args.path, "GraphQL endpoint path")
        ->capture_default_str();

    int rc = 0;
    record->callback([&] { rc = cmd_record(record_args); });
    generate->callback([&] { rc = cmd_generate(generate_args); });
    run->callback([&] { rc = cmd_run(run_args); });
    coverage->callback([&] { rc = cmd_coverage(coverage_args); });
    report->callback([&] { rc = cmd_report(report_args); });
    faultlab->callback([&] { rc = cmd_faultlab(faultlab_args); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 2;
    }
    return rc;
}
