#include "gqlharvest/oracle/tree.hpp"

#include "gqlharvest/errors.hpp"
#include "gqlharvest/oracle/validate.hpp"
#include "gqlharvest/query/parser.hpp"
#include "gqlharvest/schema/sdl.hpp"
#include "support/fixtures.hpp"

#include <doctest.h>

#include <algorithm>

using namespace gqlharvest;
using oracle::Check;
using oracle::CheckKind;
using oracle::FieldOracle;
using oracle::OracleTree;
using oracle::ValidationReport;
using oracle::Verdict;

namespace {

schema::SchemaModel videos_schema() {
    return schema::parse_sdl(testsupport::read_fixture("videos.graphql"));
}

OracleTree teasers_tree() {
    return oracle::derive_oracles(videos_schema(),
                                  query::parse_query(testsupport::read_fixture("get_teasers.graphql")));
}

Json teasers_response() { return Json::parse(testsupport::read_fixture("teasers_response.json")); }

std::vector<CheckKind> kinds_of(const std::vector<Check>& checks) {
    std::vector<CheckKind> out;
    for (const Check& c : checks) out.push_back(c.kind);
    return out;
}

ValidationReport validate_body(const OracleTree& tree, const Json& body) {
    return oracle::validate(tree, 200, body.dump());
}

const oracle::CheckOutcome* find_failure(const ValidationReport& report) {
    for (const auto& outcome : report.outcomes) {
        if (outcome.verdict == Verdict::Fail) return &outcome;
    }
    return nullptr;
}

}  // namespace

TEST_CASE("teaser list query derives the expected oracle tree") {
    OracleTree tree = teasers_tree();
    CHECK(tree.operation_name == "GetTeasers");
    CHECK(tree.root_type == "Query");
    REQUIRE(tree.roots.size() == 1);

    const FieldOracle& teasers = tree.roots[0];
    CHECK(teasers.response_key == "teasers");
    CHECK(teasers.parent_type == "Query");
    CHECK(teasers.declared_type == "[Teaser]");
    CHECK(kinds_of(teasers.checks) == std::vector<CheckKind>{CheckKind::Present, CheckKind::IsList});
    // One list level; object elements carry no per-element kind check.
    REQUIRE(teasers.element_checks.size() == 1);
    CHECK(teasers.element_checks[0].empty());

    REQUIRE(teasers.children.size() == 4);
    CHECK(kinds_of(teasers.children[0].checks) ==
          std::vector<CheckKind>{CheckKind::Present, CheckKind::NotNull, CheckKind::IsString});
    CHECK(teasers.children[1].response_key == "subTitle");
    CHECK(kinds_of(teasers.children[1].checks) ==
          std::vector<CheckKind>{CheckKind::Present, CheckKind::IsString});
    CHECK(teasers.children[2].declared_type == "String!");
    CHECK(kinds_of(teasers.children[2].checks) ==
          std::vector<CheckKind>{CheckKind::Present, CheckKind::NotNull, CheckKind::IsString});
    const FieldOracle& typename_oracle = teasers.children[3];
    CHECK(typename_oracle.field_name == "__typename");
    REQUIRE(typename_oracle.checks.size() == 1);
    CHECK(typename_oracle.checks[0] == Check{CheckKind::TypenameEquals, {"Teaser"}});
}

TEST_CASE("a conformant teaser response evaluates 22 assertions and passes") {
    OracleTree tree = teasers_tree();
    ValidationReport report = oracle::validate(tree, 200, testsupport::read_fixture("teasers_response.json"));
    CHECK(report.passed);
    CHECK(report.assertions_evaluated == 22);
    CHECK(static_cast<int>(report.outcomes.size()) == 22);
    CHECK(oracle::count_planned_assertions(tree, teasers_response()) == 22);

    // The format triple leads, with empty paths.
    REQUIRE(report.outcomes.size() >= 3);
    CHECK(report.outcomes[0].check.kind == CheckKind::StatusIs200);
    CHECK(report.outcomes[1].check.kind == CheckKind::BodyIsValidJsonObject);
    CHECK(report.outcomes[2].check.kind == CheckKind::NoErrorsMember);
    CHECK(report.outcomes[0].path.empty());

    // A field outcome uses the dotted data path with list indices.
    bool found = false;
    for (const auto& outcome : report.outcomes) {
        if (outcome.path == "data.teasers[1].url" && outcome.check.kind == CheckKind::NotNull) {
            found = true;
            CHECK(outcome.verdict == Verdict::Pass);
        }
    }
    CHECK(found);
}

TEST_CASE("format failures short-circuit everything below them") {
    OracleTree tree = teasers_tree();

    ValidationReport on_500 = oracle::validate(tree, 500, "whatever");
    CHECK_FALSE(on_500.passed);
    CHECK(on_500.assertions_evaluated == 1);
    CHECK(on_500.outcomes[0].check.kind == CheckKind::StatusIs200);
    CHECK(on_500.outcomes[0].verdict == Verdict::Fail);

    ValidationReport on_garbage = oracle::validate(tree, 200, "<html>oops</html>");
    CHECK_FALSE(on_garbage.passed);
    CHECK(on_garbage.assertions_evaluated == 2);
    CHECK(on_garbage.outcomes[1].check.kind == CheckKind::BodyIsValidJsonObject);

    Json with_errors = teasers_response();
    with_errors["errors"] = Json::array({Json{{"message", "boom"}}});
    ValidationReport on_errors = validate_body(tree, with_errors);
    CHECK_FALSE(on_errors.passed);
    CHECK(on_errors.assertions_evaluated == 3);
    CHECK(on_errors.outcomes[2].check.kind == CheckKind::NoErrorsMember);
    CHECK(on_errors.outcomes[2].verdict == Verdict::Fail);
}

TEST_CASE("a null in a non-null position is pinpointed by path") {
    OracleTree tree = teasers_tree();
    Json body = teasers_response();
    body["data"]["teasers"][1]["url"] = nullptr;

    ValidationReport report = validate_body(tree, body);
    CHECK_FALSE(report.passed);
    const auto* failure = find_failure(report);
    REQUIRE(failure != nullptr);
    CHECK(failure->path == "data.teasers[1].url");
    CHECK(failure->check.kind == CheckKind::NotNull);
    CHECK(failure->observed == "null");
    // url loses its IS_STRING check; everything else still runs.
    CHECK(report.assertions_evaluated == 21);
    CHECK(oracle::count_planned_assertions(tree, body) == 21);
}

TEST_CASE("a missing key fails PRESENT and skips the subtree") {
    OracleTree tree = teasers_tree();
    Json body = teasers_response();
    body["data"]["teasers"][0].erase("title");

    ValidationReport report = validate_body(tree, body);
    CHECK_FALSE(report.passed);
    const auto* failure = find_failure(report);
    REQUIRE(failure != nullptr);
    CHECK(failure->path == "data.teasers[0].title");
    CHECK(failure->check.kind == CheckKind::Present);
    CHECK(failure->observed == "absent");
    CHECK(report.assertions_evaluated == 20);
    CHECK(oracle::count_planned_assertions(tree, body) == 20);
}

TEST_CASE("wrong scalar kinds and wrong typenames fail their checks") {
    OracleTree tree = teasers_tree();

    Json wrong_kind = teasers_response();
    wrong_kind["data"]["teasers"][0]["title"] = 42;
    ValidationReport report = validate_body(tree, wrong_kind);
    CHECK_FALSE(report.passed);
    const auto* failure = find_failure(report);
    REQUIRE(failure != nullptr);
    CHECK(failure->path == "data.teasers[0].title");
    CHECK(failure->check.kind == CheckKind::IsString);
    CHECK(report.assertions_evaluated == 22);

    Json wrong_typename = teasers_response();
    wrong_typename["data"]["teasers"][1]["__typename"] = "Photo";
    report = validate_body(tree, wrong_typename);
    CHECK_FALSE(report.passed);
    failure = find_failure(report);
    REQUIRE(failure != nullptr);
    CHECK(failure->path == "data.teasers[1].__typename");
    CHECK(failure->check == Check{CheckKind::TypenameEquals, {"Teaser"}});
}

TEST_CASE("a scalar where a list belongs stops the descent") {
    OracleTree tree = teasers_tree();
    Json body = Json::parse(R"({"data":{"teasers":"oops"}})");
    ValidationReport report = validate_body(tree, body);
    CHECK_FALSE(report.passed);
    const auto* failure = find_failure(report);
    REQUIRE(failure != nullptr);
    CHECK(failure->path == "data.teasers");
    CHECK(failure->check.kind == CheckKind::IsList);
    // 3 format + PRESENT + IS_LIST, nothing below the broken list.
    CHECK(report.assertions_evaluated == 5);
    CHECK(oracle::count_planned_assertions(tree, body) == 5);
}

TEST_CASE("enum members are verified against the declared values") {
    schema::SchemaModel model = videos_schema();
    query::QueryDocument doc = query::parse_query("query V($id: ID!) { video(id: $id) { videoType } }");
    OracleTree tree = oracle::derive_oracles(model, doc);

    REQUIRE(tree.roots.size() == 1);
    CHECK(kinds_of(tree.roots[0].checks) ==
          std::vector<CheckKind>{CheckKind::Present, CheckKind::IsMap});
    REQUIRE(tree.roots[0].children.size() == 1);
    CHECK(tree.roots[0].children[0].checks ==
          std::vector<Check>{{CheckKind::Present, {}},
                             {CheckKind::EnumMember, {"INTERVIEW", "WEBCAST", "EVENT"}}});

    CHECK(validate_body(tree, Json::parse(R"({"data":{"video":{"videoType":"INTERVIEW"}}})")).passed);
    // Null is fine for a nullable enum; a non-member string is not.
    CHECK(validate_body(tree, Json::parse(R"({"data":{"video":{"videoType":null}}})")).passed);
    ValidationReport bad = validate_body(tree, Json::parse(R"({"data":{"video":{"videoType":"BOGUS"}}})"));
    CHECK_FALSE(bad.passed);
    const auto* failure = find_failure(bad);
    REQUIRE(failure != nullptr);
    CHECK(failure->path == "data.video.videoType");
    CHECK(failure->check.kind == CheckKind::EnumMember);
}

TEST_CASE("integer checks accept int-valued floats and reject the rest") {
    schema::SchemaModel model = schema::parse_sdl("type Query { n: Int! f: Float! }");
    OracleTree tree =
        oracle::derive_oracles(model, query::parse_query("{ n f }"));

    auto verdict_for = [&](const std::string& body) {
        return oracle::validate(tree, 200, body).passed;
    };
    CHECK(verdict_for(R"({"data":{"n":7,"f":1.5}})"));
    CHECK(verdict_for(R"({"data":{"n":3.0,"f":2}})"));  // 3.0 has no fractional part
    CHECK_FALSE(verdict_for(R"({"data":{"n":3.5,"f":1.5}})"));
    CHECK_FALSE(verdict_for(R"({"data":{"n":2147483648,"f":1.5}})"));  // beyond int32
    CHECK_FALSE(verdict_for(R"({"data":{"n":"7","f":1.5}})"));
    CHECK_FALSE(verdict_for(R"({"data":{"n":7,"f":"fast"}})"));
}

TEST_CASE("nullability wrappers give twelve distinct verdicts") {
    schema::SchemaModel model = schema::parse_sdl(
        "type Query { a: [String] b: [String]! c: [String!] d: [String!]! }");

    struct Case {
        const char* field;
        const char* body;
        bool expect_pass;
    };
    const Case cases[] = {
        {"a", R"({"data":{"a":null}})", true},
        {"a", R"({"data":{"a":["x",null]}})", true},
        {"a", R"({"data":{"a":["x","y"]}})", true},
        {"b", R"({"data":{"b":null}})", false},
        {"b", R"({"data":{"b":["x",null]}})", true},
        {"b", R"({"data":{"b":["x","y"]}})", true},
        {"c", R"({"data":{"c":null}})", true},
        {"c", R"({"data":{"c":["x",null]}})", false},
        {"c", R"({"data":{"c":["x","y"]}})", true},
        {"d", R"({"data":{"d":null}})", false},
        {"d", R"({"data":{"d":["x",null]}})", false},
        {"d", R"({"data":{"d":["x","y"]}})", true},
    };
    for (const Case& c : cases) {
        CAPTURE(c.field);
        CAPTURE(c.body);
        OracleTree tree =
            oracle::derive_oracles(model, query::parse_query(std::string("{ ") + c.field + " }"));
        ValidationReport report = oracle::validate(tree, 200, c.body);
        CHECK(report.passed == c.expect_pass);
        if (!c.expect_pass) {
            const auto* failure = find_failure(report);
            REQUIRE(failure != nullptr);
            CHECK(failure->check.kind == CheckKind::NotNull);
        }
    }
}

TEST_CASE("nested list types check every level") {
    schema::SchemaModel model = schema::parse_sdl("type Query { grid: [[Int!]!]! }");
    OracleTree tree = oracle::derive_oracles(model, query::parse_query("{ grid }"));
    REQUIRE(tree.roots.size() == 1);
    CHECK(kinds_of(tree.roots[0].checks) ==
          std::vector<CheckKind>{CheckKind::Present, CheckKind::NotNull, CheckKind::IsList});
    REQUIRE(tree.roots[0].element_checks.size() == 2);
    CHECK(kinds_of(tree.roots[0].element_checks[0]) ==
          std::vector<CheckKind>{CheckKind::NotNull, CheckKind::IsList});
    CHECK(kinds_of(tree.roots[0].element_checks[1]) ==
          std::vector<CheckKind>{CheckKind::NotNull, CheckKind::IsInt});

    CHECK(oracle::validate(tree, 200, R"({"data":{"grid":[[1,2],[3]]}})").passed);
    ValidationReport inner_null = oracle::validate(tree, 200, R"({"data":{"grid":[[1,null]]}})");
    CHECK_FALSE(inner_null.passed);
    const auto* failure = find_failure(inner_null);
    REQUIRE(failure != nullptr);
    CHECK(failure->path == "data.grid[0][1]");
    ValidationReport row_scalar = oracle::validate(tree, 200, R"({"data":{"grid":[7]}})");
    CHECK_FALSE(row_scalar.passed);
    failure = find_failure(row_scalar);
    REQUIRE(failure != nullptr);
    CHECK(failure->path == "data.grid[0]");
    CHECK(failure->check.kind == CheckKind::IsList);
}

TEST_CASE("custom scalars are opaque beyond nullability") {
    schema::SchemaModel model =
        schema::parse_sdl("scalar DateTime type Query { at: DateTime! maybe: DateTime }");
    OracleTree tree = oracle::derive_oracles(model, query::parse_query("{ at maybe }"));
    CHECK(kinds_of(tree.roots[0].checks) ==
          std::vector<CheckKind>{CheckKind::Present, CheckKind::NotNull});
    CHECK(kinds_of(tree.roots[1].checks) == std::vector<CheckKind>{CheckKind::Present});
    // Any JSON value satisfies a custom scalar.
    CHECK(oracle::validate(tree, 200, R"({"data":{"at":"2021-01-01","maybe":{"tz":"UTC"}}})").passed);
    CHECK(oracle::validate(tree, 200, R"({"data":{"at":17,"maybe":null}})").passed);
    CHECK_FALSE(oracle::validate(tree, 200, R"({"data":{"at":null,"maybe":null}})").passed);
}

TEST_CASE("a bare __typename query checks the root type name") {
    OracleTree tree = oracle::derive_oracles(videos_schema(), query::parse_query("{ __typename }"));
    REQUIRE(tree.roots.size() == 1);
    CHECK(tree.roots[0].checks == std::vector<Check>{{CheckKind::TypenameEquals, {"Query"}}});

    ValidationReport good = oracle::validate(tree, 200, R"({"data":{"__typename":"Query"}})");
    CHECK(good.passed);
    CHECK(good.assertions_evaluated == 4);
    ValidationReport missing = oracle::validate(tree, 200, R"({"data":{}})");
    CHECK_FALSE(missing.passed);  // no separate PRESENT check; the typename check itself fails
    CHECK(missing.assertions_evaluated == 4);
}

TEST_CASE("fragments on abstract types become conditional blocks") {
    schema::SchemaModel model = schema::parse_sdl(R"(
        interface Node { id: ID! }
        type Video implements Node { id: ID! title: String! }
        type Photo implements Node { id: ID! width: Int! }
        type Query { node(id: ID!): Node }
    )");
    query::QueryDocument doc = query::parse_query(R"(
        query N($id: ID!) {
          node(id: $id) {
            id
            ... on Video { title }
            ... on Photo { width }
          }
        }
    )");
    OracleTree tree = oracle::derive_oracles(model, doc);

    REQUIRE(tree.roots.size() == 1);
    const FieldOracle& node = tree.roots[0];
    REQUIRE(node.children.size() == 1);  // only the unconditional id
    REQUIRE(node.conditionals.size() == 2);
    CHECK(node.conditionals[0].type_condition == "Video");
    CHECK(node.conditionals[0].applies_to == std::vector<std::string>{"Video"});
    REQUIRE(node.conditionals[0].children.size() == 1);
    CHECK(node.conditionals[0].children[0].field_name == "title");
    CHECK(node.conditionals[1].type_condition == "Photo");

    // The matching block is evaluated, the other contributes nothing.
    ValidationReport as_video = oracle::validate(
        tree, 200, R"({"data":{"node":{"id":"1","__typename":"Video","title":"T"}}})");
    CHECK(as_video.passed);
    CHECK(as_video.assertions_evaluated == 11);  // 3 + node 2 + id 3 + title 3
    CHECK(oracle::count_planned_assertions(
              tree, Json::parse(R"({"data":{"node":{"id":"1","__typename":"Video","title":"T"}}})")) == 11);

    // A missing title on a Video response is caught via the block.
    ValidationReport broken = oracle::validate(
        tree, 200, R"({"data":{"node":{"id":"1","__typename":"Video"}}})");
    CHECK_FALSE(broken.passed);
    const auto* failure = find_failure(broken);
    REQUIRE(failure != nullptr);
    CHECK(failure->path == "data.node.title");

    // Without __typename the blocks are skipped, not failed, and skipped
    // outcomes do not count as assertions.
    ValidationReport no_typename =
        oracle::validate(tree, 200, R"({"data":{"node":{"id":"1","title":"T"}}})");
    CHECK(no_typename.passed);
    CHECK(no_typename.assertions_evaluated == 8);
    int skipped = 0;
    for (const auto& outcome : no_typename.outcomes) {
        if (outcome.verdict == Verdict::Skipped) ++skipped;
    }
    CHECK(skipped == 2);
    CHECK(static_cast<int>(no_typename.outcomes.size()) == 10);
}

TEST_CASE("fragments on the parent's own type merge unconditionally") {
    schema::SchemaModel model = videos_schema();
    query::QueryDocument doc = query::parse_query(R"(
        query V($id: ID!) {
          video(id: $id) { ... on Video { title } ... on Node { id } }
        }
    )");
    OracleTree tree = oracle::derive_oracles(model, doc);
    const FieldOracle& video = tree.roots[0];
    CHECK(video.conditionals.empty());
    REQUIRE(video.children.size() == 2);
    CHECK(video.children[0].field_name == "title");
    CHECK(video.children[0].parent_type == "Video");
    CHECK(video.children[1].field_name == "id");
    CHECK(video.children[1].parent_type == "Node");
}

TEST_CASE("impossible or malformed fragment conditions are rejected") {
    schema::SchemaModel model = schema::parse_sdl(R"(
        interface Node { id: ID! }
        type Video implements Node { id: ID! title: String! }
        type Standalone { x: Int }
        enum Mood { UP DOWN }
        type Query { node(id: ID!): Node standalone: Standalone }
    )");
    auto derive = [&](const char* text) {
        return oracle::derive_oracles(model, query::parse_query(text));
    };
    CHECK_THROWS_AS(derive("{ standalone { ... on Video { title } } }"), ReferenceError);
    CHECK_THROWS_AS(derive("{ node(id: \"1\") { ... on Standalone { x } } }"), ReferenceError);
    CHECK_THROWS_AS(derive("{ node(id: \"1\") { ... on Mood { id } } }"), ReferenceError);
}

TEST_CASE("oracle derivation rejects mutations") {
    schema::SchemaModel model = schema::parse_sdl(R"(
        type Mutation { bump: Int }
        type Query { x: Int }
        schema { query: Query, mutation: Mutation }
    )");
    CHECK_THROWS_AS(oracle::derive_oracles(model, query::parse_query("mutation { bump }")),
                    UnsupportedOperationError);
}

TEST_CASE("oracle trees round-trip through JSON") {
    OracleTree tree = teasers_tree();
    Json doc = oracle::oracle_tree_to_json(tree);
    CHECK(oracle::oracle_tree_from_json(doc) == tree);
    CHECK(doc.dump().find("NOT_NULL") != std::string::npos);
    CHECK(doc.dump().find("TYPENAME_EQUALS") != std::string::npos);

    schema::SchemaModel node_model = schema::parse_sdl(R"(
        interface Node { id: ID! }
        type Video implements Node { id: ID! title: String! }
        type Query { node(id: ID!): Node }
    )");
    OracleTree with_blocks = oracle::derive_oracles(
        node_model, query::parse_query("{ node(id: \"1\") { id ... on Video { title } } }"));
    CHECK(oracle::oracle_tree_from_json(oracle::oracle_tree_to_json(with_blocks)) == with_blocks);

    CHECK_THROWS_AS(oracle::oracle_tree_from_json(Json::object()), FormatError);
    CHECK_THROWS_AS(oracle::oracle_tree_from_json(Json::parse(R"({"root_type":7,"roots":[]})")),
                    FormatError);
}

TEST_CASE("validation reports round-trip through JSON") {
    OracleTree tree = teasers_tree();
    Json body = teasers_response();
    body["data"]["teasers"][1]["url"] = nullptr;
    ValidationReport report = validate_body(tree, body);
    Json doc = oracle::report_to_json(report);
    CHECK(oracle::report_from_json(doc) == report);
    CHECK(doc["passed"] == false);
    CHECK(doc["assertions_evaluated"] == 21);
}
