#include "gqlharvest/faultlab/datagen.hpp"
#include "gqlharvest/faultlab/fault.hpp"
#include "gqlharvest/faultlab/server.hpp"

#include "gqlharvest/errors.hpp"
#include "gqlharvest/oracle/tree.hpp"
#include "gqlharvest/oracle/validate.hpp"
#include "gqlharvest/query/parser.hpp"
#include "gqlharvest/schema/introspection.hpp"
#include "gqlharvest/schema/sdl.hpp"
#include "support/fixtures.hpp"
#include "support/reference.hpp"

#include <doctest.h>
#include <httplib.h>

#include <algorithm>
#include <string>
#include <vector>

using namespace gqlharvest;

namespace {

schema::SchemaModel videos_schema() {
    return schema::parse_sdl(testsupport::read_fixture("videos.graphql"));
}

const std::string kTeasersQuery =
    "query GetTeasers { teasers(first: 2) { title subTitle url __typename } }";

oracle::ValidationReport validate_body(const schema::SchemaModel& schema,
                                       const query::QueryDocument& doc,
                                       const faultlab::SyntheticResponse& response) {
    const oracle::OracleTree tree = oracle::derive_oracles(schema, doc);
    return oracle::validate(tree, response.status, response.body.dump());
}

bool has_fail(const oracle::ValidationReport& report, oracle::CheckKind kind,
              const std::string& path_prefix) {
    return std::any_of(report.outcomes.begin(), report.outcomes.end(),
                       [&](const oracle::CheckOutcome& outcome) {
                           return outcome.verdict == oracle::Verdict::Fail &&
                                  outcome.check.kind == kind &&
                                  outcome.path.rfind(path_prefix, 0) == 0;
                       });
}

faultlab::FaultSpec fault(faultlab::FaultKind kind, std::string object, std::string field) {
    faultlab::FaultSpec spec;
    spec.id = "f";
    spec.kind = kind;
    spec.object_name = std::move(object);
    spec.field_name = std::move(field);
    return spec;
}

// The fixture generator rolls nulls for nullable positions, so tests that
// need a materialized value scan for the first seed that provides one.
std::uint64_t seed_with(const schema::SchemaModel& schema, const query::QueryDocument& doc,
                        const std::string& pointer) {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const Json body = faultlab::conformant_response(schema, doc, seed);
        const Json::json_pointer ptr(pointer);
        if (body.contains(ptr) && !body.at(ptr).is_null()) return seed;
    }
    FAIL(("no seed under 200 materializes " + pointer));
    return 0;
}

}  // namespace

TEST_CASE("fault specs round-trip through JSON") {
    faultlab::FaultSpec spec = fault(faultlab::FaultKind::WrongScalarType, "Teaser", "title");
    spec.id = "listing-4";
    SUBCASE("without trigger") {}
    SUBCASE("with an argument trigger") {
        spec.trigger = faultlab::FaultTrigger{"", "first", Json(2)};
    }
    SUBCASE("with a field trigger") {
        spec.trigger = faultlab::FaultTrigger{"title", "", Json("t-1")};
    }
    const Json doc = fault_spec_to_json(spec);
    CHECK(doc["target"]["object"] == "Teaser");
    CHECK(faultlab::fault_spec_from_json(doc) == spec);
}

TEST_CASE("malformed fault specs are rejected") {
    Json doc = fault_spec_to_json(fault(faultlab::FaultKind::Http5xx, "Query", "teasers"));
    SUBCASE("unknown kind") { doc["kind"] = "EXPLODES"; }
    SUBCASE("missing target") { doc.erase("target"); }
    SUBCASE("trigger with both field and arg") {
        doc["trigger"] = Json{{"field", "a"}, {"arg", "b"}, {"equals", 1}};
    }
    SUBCASE("trigger with neither") { doc["trigger"] = Json{{"equals", 1}}; }
    SUBCASE("trigger without equals") { doc["trigger"] = Json{{"field", "a"}}; }
    CHECK_THROWS_AS(faultlab::fault_spec_from_json(doc), FormatError);
}

TEST_CASE("every fault kind has a name that round-trips") {
    using faultlab::FaultKind;
    for (FaultKind kind : {FaultKind::NullNonnullField, FaultKind::WrongScalarType,
                           FaultKind::MissingField, FaultKind::NonMemberEnum,
                           FaultKind::ListAsScalar, FaultKind::ErrorsMember,
                           FaultKind::Http5xx}) {
        CHECK(faultlab::fault_kind_from_string(faultlab::to_string(kind)) == kind);
    }
    CHECK(faultlab::to_string(FaultKind::NullNonnullField) == "NULL_NONNULL_FIELD");
    CHECK(faultlab::to_string(FaultKind::Http5xx) == "HTTP_5XX");
    CHECK_THROWS_AS(faultlab::fault_kind_from_string("NOPE"), FormatError);
}

TEST_CASE("conformant responses are deterministic in the seed") {
    const schema::SchemaModel schema = videos_schema();
    const query::QueryDocument doc = query::parse_query(kTeasersQuery);

    CHECK(faultlab::conformant_response(schema, doc, 7) ==
          faultlab::conformant_response(schema, doc, 7));

    // Different seeds produce different data somewhere in a small window.
    bool any_difference = false;
    const Json base = faultlab::conformant_response(schema, doc, 0);
    for (std::uint64_t seed = 1; seed < 6 && !any_difference; ++seed) {
        any_difference = faultlab::conformant_response(schema, doc, seed) != base;
    }
    CHECK(any_difference);
}

TEST_CASE("conformant responses satisfy their own oracles across seeds") {
    const schema::SchemaModel schema = videos_schema();
    const query::QueryDocument doc = query::parse_query(kTeasersQuery);
    const oracle::OracleTree tree = oracle::derive_oracles(schema, doc);

    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        const Json body = faultlab::conformant_response(schema, doc, seed);
        const oracle::ValidationReport report = oracle::validate(tree, 200, body.dump());
        CAPTURE(seed);
        CHECK(report.passed);
        CHECK(report.assertions_evaluated ==
              testsupport::naive_assertion_count(schema, doc, body));
        CHECK(report.assertions_evaluated == oracle::count_planned_assertions(tree, body));
    }
}

TEST_CASE("each value fault corrupts exactly its target and the oracles catch it") {
    const schema::SchemaModel schema = videos_schema();
    const query::QueryDocument teasers = query::parse_query(kTeasersQuery);
    const std::uint64_t seed = seed_with(schema, teasers, "/data/teasers/0/url");

    SUBCASE("NULL_NONNULL_FIELD nulls the field") {
        const auto response = faultlab::faulted_response(
            schema, teasers, seed,
            {fault(faultlab::FaultKind::NullNonnullField, "Teaser", "url")}, Json::object());
        CHECK(response.status == 200);
        CHECK(response.body.at(Json::json_pointer("/data/teasers/0/url")).is_null());
        const auto report = validate_body(schema, teasers, response);
        CHECK(!report.passed);
        CHECK(has_fail(report, oracle::CheckKind::NotNull, "data.teasers["));
    }
    SUBCASE("WRONG_SCALAR_TYPE swaps the value's JSON kind") {
        const auto response = faultlab::faulted_response(
            schema, teasers, seed,
            {fault(faultlab::FaultKind::WrongScalarType, "Teaser", "title")}, Json::object());
        CHECK(response.body.at(Json::json_pointer("/data/teasers/0/title")).is_number());
        const auto report = validate_body(schema, teasers, response);
        CHECK(!report.passed);
        CHECK(has_fail(report, oracle::CheckKind::IsString, "data.teasers["));
    }
    SUBCASE("MISSING_FIELD removes the member") {
        const auto response = faultlab::faulted_response(
            schema, teasers, seed,
            {fault(faultlab::FaultKind::MissingField, "Teaser", "title")}, Json::object());
        CHECK(!response.body.at(Json::json_pointer("/data/teasers/0")).contains("title"));
        const auto report = validate_body(schema, teasers, response);
        CHECK(!report.passed);
        CHECK(has_fail(report, oracle::CheckKind::Present, "data.teasers["));
    }
    SUBCASE("LIST_AS_SCALAR replaces the list") {
        const auto response = faultlab::faulted_response(
            schema, teasers, seed,
            {fault(faultlab::FaultKind::ListAsScalar, "Query", "teasers")}, Json::object());
        CHECK(response.body.at(Json::json_pointer("/data/teasers")).is_string());
        const auto report = validate_body(schema, teasers, response);
        CHECK(!report.passed);
        CHECK(has_fail(report, oracle::CheckKind::IsList, "data.teasers"));
    }
}

TEST_CASE("NON_MEMBER_ENUM produces a value outside the declared members") {
    const schema::SchemaModel schema = videos_schema();
    const query::QueryDocument doc =
        query::parse_query("query V { video(id: \"x\") { id videoType } }");
    const std::uint64_t seed = seed_with(schema, doc, "/data/video/videoType");

    const auto response = faultlab::faulted_response(
        schema, doc, seed, {fault(faultlab::FaultKind::NonMemberEnum, "Video", "videoType")},
        Json::object());
    CHECK(response.body.at(Json::json_pointer("/data/video/videoType")) == "NOT_A_MEMBER");
    const auto report = validate_body(schema, doc, response);
    CHECK(!report.passed);
    CHECK(has_fail(report, oracle::CheckKind::EnumMember, "data.video.videoType"));
}

TEST_CASE("envelope faults fire when the entry point is reached") {
    const schema::SchemaModel schema = videos_schema();
    const query::QueryDocument teasers = query::parse_query(kTeasersQuery);
    const query::QueryDocument video =
        query::parse_query("query V { video(id: \"x\") { id } }");

    SUBCASE("ERRORS_MEMBER adds errors to an otherwise fine body") {
        const auto faulted = faultlab::faulted_response(
            schema, teasers, 1, {fault(faultlab::FaultKind::ErrorsMember, "Query", "teasers")},
            Json::object());
        CHECK(faulted.status == 200);
        CHECK(faulted.body.contains("errors"));
        const auto report = validate_body(schema, teasers, faulted);
        CHECK(!report.passed);
        CHECK(has_fail(report, oracle::CheckKind::NoErrorsMember, ""));

        // A document that never touches the entry point stays clean.
        const auto clean = faultlab::faulted_response(
            schema, video, 1, {fault(faultlab::FaultKind::ErrorsMember, "Query", "teasers")},
            Json::object());
        CHECK(!clean.body.contains("errors"));
    }
    SUBCASE("HTTP_5XX turns the whole response into a 500") {
        const auto faulted = faultlab::faulted_response(
            schema, teasers, 1, {fault(faultlab::FaultKind::Http5xx, "Query", "teasers")},
            Json::object());
        CHECK(faulted.status == 500);
        const auto report = validate_body(schema, teasers, faulted);
        CHECK(!report.passed);
        CHECK(has_fail(report, oracle::CheckKind::StatusIs200, ""));
        CHECK(report.assertions_evaluated == 1);  // short-circuits everything else

        const auto clean = faultlab::faulted_response(
            schema, video, 1, {fault(faultlab::FaultKind::Http5xx, "Query", "teasers")},
            Json::object());
        CHECK(clean.status == 200);
    }
}

TEST_CASE("argument triggers gate the fault on the request") {
    const schema::SchemaModel schema = videos_schema();
    faultlab::FaultSpec spec = fault(faultlab::FaultKind::ListAsScalar, "Query", "teasers");
    spec.trigger = faultlab::FaultTrigger{"", "first", Json(2)};

    const query::QueryDocument two = query::parse_query("{ teasers(first: 2) { title } }");
    const query::QueryDocument one = query::parse_query("{ teasers(first: 1) { title } }");

    const auto hit = faultlab::faulted_response(schema, two, 1, {spec}, Json::object());
    CHECK(hit.body.at(Json::json_pointer("/data/teasers")).is_string());
    const auto miss = faultlab::faulted_response(schema, one, 1, {spec}, Json::object());
    CHECK(!miss.body.at(Json::json_pointer("/data/teasers")).is_string());

    SUBCASE("variables resolve before the comparison") {
        const query::QueryDocument via_var =
            query::parse_query("query T($n: Int!) { teasers(first: $n) { title } }");
        const auto with_var =
            faultlab::faulted_response(schema, via_var, 1, {spec}, Json{{"n", 2}});
        CHECK(with_var.body.at(Json::json_pointer("/data/teasers")).is_string());
    }
}

TEST_CASE("field triggers gate the fault on a sibling value") {
    const schema::SchemaModel schema = videos_schema();
    const query::QueryDocument doc = query::parse_query(kTeasersQuery);
    const std::uint64_t seed = seed_with(schema, doc, "/data/teasers/0/url");

    const Json clean = faultlab::conformant_response(schema, doc, seed);
    const Json& first_title = clean.at(Json::json_pointer("/data/teasers/0/title"));

    faultlab::FaultSpec spec = fault(faultlab::FaultKind::NullNonnullField, "Teaser", "url");
    spec.trigger = faultlab::FaultTrigger{"title", "", first_title};

    const auto response = faultlab::faulted_response(schema, doc, seed, {spec}, Json::object());
    CHECK(response.body.at(Json::json_pointer("/data/teasers/0/url")).is_null());

    // Any element with a different title keeps its url.
    const Json& elements = response.body.at(Json::json_pointer("/data/teasers"));
    for (std::size_t i = 1; i < elements.size(); ++i) {
        if (elements[i].is_null() || elements[i]["title"] == first_title) continue;
        CHECK(elements[i]["url"] ==
              clean.at(Json::json_pointer("/data/teasers"))[i]["url"]);
    }
}

TEST_CASE("the fault server speaks GraphQL over HTTP") {
    faultlab::FaultServer server({videos_schema(), 1, {}, "127.0.0.1", 0, "/graphql/"});
    server.start();
    httplib::Client client("127.0.0.1", server.port());

    SUBCASE("POST queries answer with generated data") {
        const Json request{{"query", kTeasersQuery}};
        auto res = client.Post("/graphql/", request.dump(), "application/json");
        REQUIRE(res);
        CHECK(res->status == 200);
        const Json body = Json::parse(res->body);
        CHECK(body.contains("data"));
        CHECK(body ==
              faultlab::conformant_response(videos_schema(),
                                            query::parse_query(kTeasersQuery), 1));
    }
    SUBCASE("GET queries work through the query parameter") {
        auto res = client.Get("/graphql/?query=%7B%20teasers(first%3A%201)%20%7B%20title%20%7D%20%7D");
        REQUIRE(res);
        CHECK(res->status == 200);
        CHECK(Json::parse(res->body).contains("data"));
    }
    SUBCASE("introspection reproduces the schema") {
        const Json request{{"query", schema::kIntrospectionQuery}};
        auto res = client.Post("/graphql/", request.dump(), "application/json");
        REQUIRE(res);
        CHECK(res->status == 200);
        const schema::SchemaModel round_trip =
            schema::ingest_introspection(Json::parse(res->body));
        CHECK(schema::canonical_equal(round_trip, videos_schema()));
    }
    SUBCASE("a broken query answers with an errors member") {
        const Json request{{"query", "query { nope }"}};
        auto res = client.Post("/graphql/", request.dump(), "application/json");
        REQUIRE(res);
        CHECK(res->status == 200);
        CHECK(Json::parse(res->body).contains("errors"));
    }
    SUBCASE("a request without a query is a 400") {
        auto res = client.Post("/graphql/", "{}", "application/json");
        REQUIRE(res);
        CHECK(res->status == 400);
    }
    server.stop();
}
