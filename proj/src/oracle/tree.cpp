#include "gqlharvest/oracle/tree.hpp"

#include "gqlharvest/errors.hpp"

namespace gqlharvest::oracle {
namespace {

Json check_to_json(const Check& check) {
    Json node = Json::object();
    node["kind"] = to_string(check.kind);
    if (!check.operands.empty()) node["operands"] = check.operands;
    return node;
}

Check check_from_json(const Json& node) {
    if (!node.is_object() || !node.contains("kind") || !node.at("kind").is_string()) {
        throw FormatError("check entry requires a \"kind\" string");
    }
    Check check;
    check.kind = check_kind_from_string(node.at("kind").get<std::string>());
    if (node.contains("operands")) {
        if (!node.at("operands").is_array()) {
            throw FormatError("check \"operands\" must be an array");
        }
        for (const Json& operand : node.at("operands")) {
            if (!operand.is_string()) throw FormatError("check operands must be strings");
            check.operands.push_back(operand.get<std::string>());
        }
    }
    return check;
}

Json field_to_json(const FieldOracle& field);

Json fields_to_json(const std::vector<FieldOracle>& fields) {
    Json arr = Json::array();
    for (const FieldOracle& field : fields) arr.push_back(field_to_json(field));
    return arr;
}

Json field_to_json(const FieldOracle& field) {
    Json node = Json::object();
    node["key"] = field.response_key;
    node["field"] = field.field_name;
    node["parent"] = field.parent_type;
    node["type"] = field.declared_type;
    Json checks = Json::array();
    for (const Check& check : field.checks) checks.push_back(check_to_json(check));
    node["checks"] = std::move(checks);
    if (!field.element_checks.empty()) {
        Json levels = Json::array();
        for (const std::vector<Check>& level : field.element_checks) {
            Json entry = Json::array();
            for (const Check& check : level) entry.push_back(check_to_json(check));
            levels.push_back(std::move(entry));
        }
        node["element_checks"] = std::move(levels);
    }
    if (!field.children.empty()) node["children"] = fields_to_json(field.children);
    if (!field.conditionals.empty()) {
        Json blocks = Json::array();
        for (const ConditionalBlock& block : field.conditionals) {
            Json entry = Json::object();
            entry["on"] = block.type_condition;
            entry["applies_to"] = block.applies_to;
            entry["children"] = fields_to_json(block.children);
            blocks.push_back(std::move(entry));
        }
        node["conditionals"] = std::move(blocks);
    }
    return node;
}

FieldOracle field_from_json(const Json& node);

std::vector<FieldOracle> fields_from_json(const Json& arr, const char* where) {
    if (!arr.is_array()) throw FormatError(std::string(where) + " must be an array");
    std::vector<FieldOracle> out;
    for (const Json& entry : arr) out.push_back(field_from_json(entry));
    return out;
}

std::string required_string(const Json& node, const char* key) {
    if (!node.contains(key) || !node.at(key).is_string()) {
        throw FormatError("oracle node requires a \"" + std::string(key) + "\" string");
    }
    return node.at(key).get<std::string>();
}

FieldOracle field_from_json(const Json& node) {
    if (!node.is_object()) throw FormatError("oracle node must be an object");
    FieldOracle field;
    field.response_key = required_string(node, "key");
    field.field_name = required_string(node, "field");
    field.parent_type = required_string(node, "parent");
    field.declared_type = required_string(node, "type");
    if (!node.contains("checks") || !node.at("checks").is_array()) {
        throw FormatError("oracle node requires a \"checks\" array");
    }
    for (const Json& check : node.at("checks")) field.checks.push_back(check_from_json(check));
    if (node.contains("element_checks")) {
        if (!node.at("element_checks").is_array()) {
            throw FormatError("\"element_checks\" must be an array of arrays");
        }
        for (const Json& level : node.at("element_checks")) {
            if (!level.is_array()) throw FormatError("\"element_checks\" must be an array of arrays");
            std::vector<Check> entry;
            for (const Json& check : level) entry.push_back(check_from_json(check));
            field.element_checks.push_back(std::move(entry));
        }
    }
    if (node.contains("children")) {
        field.children = fields_from_json(node.at("children"), "\"children\"");
    }
    if (node.contains("conditionals")) {
        if (!node.at("conditionals").is_array()) {
            throw FormatError("\"conditionals\" must be an array");
        }
        for (const Json& entry : node.at("conditionals")) {
            if (!entry.is_object()) throw FormatError("conditional block must be an object");
            ConditionalBlock block;
            block.type_condition = required_string(entry, "on");
            if (!entry.contains("applies_to") || !entry.at("applies_to").is_array()) {
                throw FormatError("conditional block requires an \"applies_to\" array");
            }
            for (const Json& name : entry.at("applies_to")) {
                if (!name.is_string()) throw FormatError("\"applies_to\" entries must be strings");
                block.applies_to.push_back(name.get<std::string>());
            }
            block.children = fields_from_json(entry.value("children", Json::array()), "\"children\"");
            field.conditionals.push_back(std::move(block));
        }
    }
    return field;
}

}  // namespace

Json oracle_tree_to_json(const OracleTree& tree) {
    Json node = Json::object();
    node["operation_name"] = tree.operation_name ? Json(*tree.operation_name) : Json(nullptr);
    node["root_type"] = tree.root_type;
    node["roots"] = fields_to_json(tree.roots);
    return node;
}

OracleTree oracle_tree_from_json(const Json& doc) {
    if (!doc.is_object()) throw FormatError("oracle tree must be a JSON object");
    OracleTree tree;
    if (doc.contains("operation_name") && doc.at("operation_name").is_string()) {
        tree.operation_name = doc.at("operation_name").get<std::string>();
    }
    tree.root_type = required_string(doc, "root_type");
    if (!doc.contains("roots")) throw FormatError("oracle tree requires a \"roots\" array");
    tree.roots = fields_from_json(doc.at("roots"), "\"roots\"");
    return tree;
}

}  // namespace gqlharvest::oracle
