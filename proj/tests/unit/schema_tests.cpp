#include "gqlharvest/schema/sdl.hpp"

#include "gqlharvest/errors.hpp"
#include "gqlharvest/schema/introspection.hpp"
#include "gqlharvest/schema/model.hpp"
#include "support/fixtures.hpp"

#include <doctest.h>

#include <algorithm>

using namespace gqlharvest;
using schema::SchemaModel;
using schema::SchemaTuple;
using schema::TypeKind;
using schema::TypeRef;

namespace {

SchemaModel videos_schema() { return schema::parse_sdl(testsupport::read_fixture("videos.graphql")); }

}  // namespace

TEST_CASE("TypeRef renders and parses all wrapper combinations") {
    for (const char* text : {"String", "String!", "[String]", "[String]!", "[String!]",
                             "[String!]!", "[[Int!]]!"}) {
        TypeRef ref = TypeRef::parse(text);
        CHECK(ref.to_string() == text);
    }
    CHECK(TypeRef::parse("[Teaser]").base_name() == "Teaser");
    CHECK(TypeRef::parse("[Teaser!]!").base_name() == "Teaser");
    CHECK(TypeRef::parse("String!").is_non_null());
    CHECK_FALSE(TypeRef::parse("[String!]").is_non_null());
}

TEST_CASE("video catalog schema parses with the expected shape") {
    SchemaModel model = videos_schema();
    CHECK(model.query_type_name() == "Query");
    CHECK_FALSE(model.mutation_type_name().has_value());
    CHECK(model.types().size() == 5);

    const schema::TypeDef& video = model.type("Video");
    CHECK(video.kind == TypeKind::Object);
    CHECK(video.implemented_interfaces == std::vector<std::string>{"Node"});
    REQUIRE(video.find_field("videoType") != nullptr);
    CHECK(video.find_field("videoType")->type.to_string() == "VideoTypeEnum");

    const schema::TypeDef& teasers_owner = model.query_type();
    const schema::FieldDef* teasers = teasers_owner.find_field("teasers");
    REQUIRE(teasers != nullptr);
    CHECK(teasers->type.to_string() == "[Teaser]");
    REQUIRE(teasers->arguments.size() == 1);
    CHECK(teasers->arguments[0].name == "first");
    CHECK(teasers->arguments[0].required);
}

TEST_CASE("tuple universe of the video catalog has exactly 13 tuples") {
    std::set<SchemaTuple> tuples = schema::tuple_universe(videos_schema());
    CHECK(tuples.size() == 13);

    std::set<SchemaTuple> expected{
        {"Node", "id"},           {"Video", "id"},        {"Video", "title"},
        {"Video", "url"},         {"Video", "videoType"}, {"Video", "teaser"},
        {"Teaser", "title"},      {"Teaser", "subTitle"}, {"Teaser", "url"},
        {"Teaser", "duration"},   {"Teaser", "publishedOnSite"},
        {"Query", "video"},       {"Query", "teasers"},
    };
    CHECK(tuples == expected);
}

TEST_CASE("enum and union types contribute no tuples") {
    SchemaModel model = schema::parse_sdl(R"(
        type A { x: Int }
        type B { y: Int }
        union AB = A | B
        enum E { ONE TWO }
        type Query { ab: AB, e: E }
    )");
    std::set<SchemaTuple> tuples = schema::tuple_universe(model);
    std::set<SchemaTuple> expected{{"A", "x"}, {"B", "y"}, {"Query", "ab"}, {"Query", "e"}};
    CHECK(tuples == expected);
}

TEST_CASE("schema invariants reject inconsistent models") {
    CHECK_THROWS_AS(schema::parse_sdl("type Query { a: Int } type Query { b: Int }"),
                    DuplicateTypeError);
    CHECK_THROWS_AS(schema::parse_sdl("type Query { a: Missing }"), ReferenceError);
    CHECK_THROWS_AS(schema::parse_sdl("type Query { }"), FormatError);
    CHECK_THROWS_AS(schema::parse_sdl("type Other { a: Int }"), ReferenceError);  // no Query
    CHECK_THROWS_AS(schema::parse_sdl(R"(
        union U = E
        enum E { X }
        type Query { u: U }
    )"),
                    ReferenceError);  // union member must be an object type
    CHECK_THROWS_AS(schema::parse_sdl(R"(
        interface I { x: Int! }
        type T implements I { y: Int }
        type Query { t: T }
    )"),
                    FormatError);  // missing interface field
}

TEST_CASE("resolve_field handles declared fields and __typename") {
    SchemaModel model = videos_schema();
    CHECK(schema::resolve_field(model, "Teaser", "url").type.to_string() == "String!");
    CHECK(schema::resolve_field(model, "Query", "__typename").type.to_string() == "String!");
    CHECK_THROWS_AS(schema::resolve_field(model, "Teaser", "missing"), UnknownFieldError);
    try {
        schema::resolve_field(model, "Teaser", "missing");
    } catch (const UnknownFieldError& e) {
        CHECK(e.path() == "Teaser.missing");
    }
}

TEST_CASE("possible_types lists implementers and union members") {
    SchemaModel model = videos_schema();
    CHECK(model.possible_types("Node") == std::vector<std::string>{"Video"});
    SchemaModel unions = schema::parse_sdl(R"(
        type A { x: Int }
        type B { y: Int }
        union AB = A | B
        type Query { ab: AB }
    )");
    CHECK(unions.possible_types("AB") == std::vector<std::string>{"A", "B"});
}

TEST_CASE("render_sdl round-trips to an equivalent model") {
    SchemaModel model = videos_schema();
    SchemaModel reparsed = schema::parse_sdl(schema::render_sdl(model));
    CHECK(schema::canonical_equal(model, reparsed));
    CHECK(schema::tuple_universe(reparsed).size() == 13);
}

TEST_CASE("introspection render and ingest round-trip") {
    SchemaModel model = videos_schema();
    Json document = schema::render_introspection(model);
    REQUIRE(document.contains("data"));
    SchemaModel ingested = schema::ingest_introspection(document);
    CHECK(schema::canonical_equal(model, ingested));
    CHECK(schema::tuple_universe(ingested) == schema::tuple_universe(model));

    // The bare __schema form is accepted too.
    SchemaModel bare = schema::ingest_introspection(document.at("data"));
    CHECK(schema::canonical_equal(model, bare));
}

TEST_CASE("ingest_introspection rejects documents without the schema envelope") {
    CHECK_THROWS_AS(schema::ingest_introspection(Json::object()), FormatError);
    CHECK_THROWS_AS(schema::ingest_introspection(Json::parse(R"({"data":{}})")), FormatError);
}

TEST_CASE("canonical_equal ignores declaration order") {
    SchemaModel a = schema::parse_sdl("type Query { a: Int b: String }");
    SchemaModel b = schema::parse_sdl("type Query { b: String a: Int }");
    SchemaModel c = schema::parse_sdl("type Query { a: Int b: Boolean }");
    CHECK(schema::canonical_equal(a, b));
    CHECK_FALSE(schema::canonical_equal(a, c));
}
