#include "gqlharvest/suite/runner.hpp"

#include "gqlharvest/errors.hpp"

#include <httplib.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <thread>

namespace gqlharvest::suite {
namespace {

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

oracle::ValidationReport transport_failure(const std::string& reason) {
    oracle::ValidationReport report;
    report.outcomes.push_back(
        {"", {oracle::CheckKind::Transport, {}}, oracle::Verdict::Fail, reason});
    report.assertions_evaluated = 1;
    report.passed = false;
    return report;
}

}  // namespace

SuiteResult run_suite(const std::vector<TestCase>& cases, const RunConfig& config) {
    if (!config.pre_hook.empty()) {
        const int rc = std::system(config.pre_hook.c_str());
        if (rc != 0) {
            throw Error("pre-hook command failed with status " + std::to_string(rc));
        }
    }

    const auto [base, path] = split_endpoint(config.endpoint);
    const auto timeout_us =
        static_cast<std::int64_t>(std::max(0.0, config.timeout_seconds) * 1e6);

    const auto started = std::chrono::steady_clock::now();
    std::vector<CaseResult> results(cases.size());
    std::atomic<std::size_t> next{0};
    const int workers = std::max(1, std::min<int>(config.parallelism,
                                                  static_cast<int>(std::max<std::size_t>(
                                                      cases.size(), 1))));

    auto work = [&] {
        httplib::Client client(base);
        client.set_connection_timeout(timeout_us / 1000000, timeout_us % 1000000);
        client.set_read_timeout(timeout_us / 1000000, timeout_us % 1000000);
        client.set_keep_alive(true);
        httplib::Headers headers;
        for (const auto& [name, value] : config.headers) headers.emplace(name, value);

        for (;;) {
            const std::size_t index = next.fetch_add(1);
            if (index >= cases.size()) return;
            const TestCase& test_case = cases[index];

            Json body = Json::object();
            body["query"] = test_case.query_text;
            body["variables"] = test_case.variables;
            body["operationName"] =
                test_case.operation_name ? Json(*test_case.operation_name) : Json(nullptr);

            httplib::Result result = client.Post(path, headers, body.dump(), "application/json");
            CaseResult& slot = results[index];
            slot.id = test_case.id;
            if (!result) {
                slot.report = transport_failure(httplib::to_string(result.error()));
            } else {
                slot.report = oracle::validate(test_case.oracle, result->status, result->body);
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int i = 0; i < workers; ++i) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();

    std::sort(results.begin(), results.end(),
              [](const CaseResult& a, const CaseResult& b) { return a.id < b.id; });

    SuiteResult suite;
    suite.cases = std::move(results);
    suite.tests = suite.cases.size();
    for (const CaseResult& r : suite.cases) {
        if (r.report.passed) {
            suite.passing += 1;
        } else {
            suite.failing += 1;
        }
        suite.assertions_evaluated += static_cast<std::uint64_t>(r.report.assertions_evaluated);
    }
    suite.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return suite;
}

Json suite_result_to_json(const SuiteResult& result) {
    Json totals = Json::object();
    totals["tests"] = result.tests;
    totals["passing"] = result.passing;
    totals["failing"] = result.failing;
    totals["assertions_evaluated"] = result.assertions_evaluated;

    Json cases = Json::array();
    for (const CaseResult& r : result.cases) {
        Json entry = Json::object();
        entry["id"] = r.id;
        entry["report"] = oracle::report_to_json(r.report);
        cases.push_back(std::move(entry));
    }

    Json out = Json::object();
    out["totals"] = totals;
    out["wall_time_seconds"] = result.wall_time_seconds;
    out["cases"] = std::move(cases);
    return out;
}

SuiteResult suite_result_from_json(const Json& doc) {
    if (!doc.is_object() || !doc.contains("totals") || !doc.contains("cases") ||
        !doc.at("totals").is_object() || !doc.at("cases").is_array()) {
        throw FormatError("suite result must carry totals and cases");
    }
    SuiteResult out;
    const Json& totals = doc.at("totals");
    for (const char* member : {"tests", "passing", "failing", "assertions_evaluated"}) {
        if (!totals.contains(member) || !totals.at(member).is_number_unsigned()) {
            throw FormatError(std::string("suite totals are missing \"") + member + "\"");
        }
    }
    out.tests = totals.at("tests").get<std::uint64_t>();
    out.passing = totals.at("passing").get<std::uint64_t>();
    out.failing = totals.at("failing").get<std::uint64_t>();
    out.assertions_evaluated = totals.at("assertions_evaluated").get<std::uint64_t>();
    if (doc.contains("wall_time_seconds") && doc.at("wall_time_seconds").is_number()) {
        out.wall_time_seconds = doc.at("wall_time_seconds").get<double>();
    }
    for (const Json& entry : doc.at("cases")) {
        if (!entry.is_object() || !entry.contains("id") || !entry.at("id").is_string() ||
            !entry.contains("report")) {
            throw FormatError("suite case entry must carry id and report");
        }
        out.cases.push_back(
            {entry.at("id").get<std::string>(), oracle::report_from_json(entry.at("report"))});
    }
    return out;
}

}  // namespace gqlharvest::suite
