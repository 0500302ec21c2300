#include "gqlharvest/oracle/validate.hpp"

#include "gqlharvest/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

namespace gqlharvest::oracle {
namespace {

std::string summarize(const Json* value) {
    if (!value) return "absent";
    if (value->is_null()) return "null";
    if (value->is_array()) return "array(" + std::to_string(value->size()) + ")";
    if (value->is_object()) return "object";
    std::string text = value->dump();
    if (text.size() > 48) text = text.substr(0, 45) + "...";
    return text;
}

bool is_int32(const Json& value) {
    if (value.is_number_unsigned()) {
        return value.get<std::uint64_t>() <= 2147483647ull;
    }
    if (value.is_number_integer()) {
        std::int64_t n = value.get<std::int64_t>();
        return n >= -2147483648ll && n <= 2147483647ll;
    }
    if (value.is_number_float()) {
        double d = value.get<double>();
        return std::trunc(d) == d && d >= -2147483648.0 && d <= 2147483647.0;
    }
    return false;
}

bool holds_operand(const Check& check, const std::string& text) {
    return std::find(check.operands.begin(), check.operands.end(), text) != check.operands.end();
}

bool eval_kind(const Check& check, const Json& value) {
    switch (check.kind) {
        case CheckKind::NotNull:
            return !value.is_null();
        case CheckKind::IsList:
            return value.is_array();
        case CheckKind::IsMap:
            return value.is_object();
        case CheckKind::IsString:
            return value.is_string();
        case CheckKind::IsBool:
            return value.is_boolean();
        case CheckKind::IsInt:
            return is_int32(value);
        case CheckKind::IsNumeric:
            return value.is_number();
        case CheckKind::EnumMember:
            return value.is_string() && holds_operand(check, value.get<std::string>());
        case CheckKind::TypenameEquals:
            return value.is_string() && !check.operands.empty() &&
                   value.get<std::string>() == check.operands.front();
        case CheckKind::TypenameIn:
            return value.is_string() && holds_operand(check, value.get<std::string>());
        default:
            return false;
    }
}

bool is_typename_check(const Check& check) {
    return check.kind == CheckKind::TypenameEquals || check.kind == CheckKind::TypenameIn;
}

class Evaluator {
public:
    ValidationReport run(const OracleTree& tree, int status, std::string_view body) {
        {
            bool ok = status == 200;
            emit("", {CheckKind::StatusIs200, {}}, ok, "status " + std::to_string(status));
            if (!ok) return finish();
        }
        Json parsed = Json::parse(body, nullptr, /*allow_exceptions=*/false);
        {
            bool ok = !parsed.is_discarded() && parsed.is_object();
            emit("", {CheckKind::BodyIsValidJsonObject, {}}, ok,
                 parsed.is_discarded() ? "unparseable body" : summarize(&parsed));
            if (!ok) return finish();
        }
        {
            bool ok = !parsed.contains("errors");
            emit("", {CheckKind::NoErrorsMember, {}}, ok,
                 ok ? "no errors member" : "errors: " + summarize(&parsed.at("errors")));
            if (!ok) return finish();
        }
        static const Json kEmptyObject = Json::object();
        const Json& data = parsed.contains("data") && parsed.at("data").is_object()
                               ? parsed.at("data")
                               : kEmptyObject;
        for (const FieldOracle& root : tree.roots) eval_field(root, data, "data");
        return finish();
    }

private:
    void emit(const std::string& path, const Check& check, bool ok, std::string observed) {
        outcomes_.push_back({path, check, ok ? Verdict::Pass : Verdict::Fail, std::move(observed)});
    }

    void eval_field(const FieldOracle& oracle, const Json& parent, const std::string& parent_path) {
        const std::string path = parent_path + "." + oracle.response_key;
        const Json* value = parent.is_object() && parent.contains(oracle.response_key)
                                ? &parent.at(oracle.response_key)
                                : nullptr;

        // __typename-style oracles carry exactly one TYPENAME_* check and no
        // presence check: a missing or non-string value fails that check.
        if (!oracle.checks.empty() && is_typename_check(oracle.checks.front())) {
            const Check& check = oracle.checks.front();
            bool ok = value && eval_kind(check, *value);
            emit(path, check, ok, summarize(value));
            return;
        }

        std::size_t i = 0;
        if (i < oracle.checks.size() && oracle.checks[i].kind == CheckKind::Present) {
            emit(path, oracle.checks[i], value != nullptr, summarize(value));
            ++i;
        }
        if (!value) return;  // missing key: subtree skipped

        if (value->is_null()) {
            // Null fails NOT_NULL when required; a nullable null passes by
            // omission (remaining checks are skipped, not evaluated).
            if (i < oracle.checks.size() && oracle.checks[i].kind == CheckKind::NotNull) {
                emit(path, oracle.checks[i], false, "null");
            }
            return;
        }
        for (; i < oracle.checks.size(); ++i) {
            bool ok = eval_kind(oracle.checks[i], *value);
            emit(path, oracle.checks[i], ok, summarize(value));
            if (!ok) return;  // shape mismatch: cannot descend
        }
        descend(oracle, *value, path);
    }

    void descend(const FieldOracle& oracle, const Json& value, const std::string& path) {
        if (!oracle.element_checks.empty()) {
            if (!value.is_array()) return;
            for (std::size_t i = 0; i < value.size(); ++i) {
                eval_element(oracle, value.at(i), 0, path + "[" + std::to_string(i) + "]");
            }
        } else if (!oracle.children.empty() || !oracle.conditionals.empty()) {
            if (!value.is_object()) return;
            eval_object(oracle, value, path);
        }
    }

    void eval_element(const FieldOracle& oracle, const Json& value, std::size_t depth,
                      const std::string& path) {
        const std::vector<Check>& level = oracle.element_checks[depth];
        if (value.is_null()) {
            if (!level.empty() && level.front().kind == CheckKind::NotNull) {
                emit(path, level.front(), false, "null");
            }
            return;
        }
        for (const Check& check : level) {
            bool ok = eval_kind(check, value);
            emit(path, check, ok, summarize(&value));
            if (!ok) return;
        }
        if (depth + 1 < oracle.element_checks.size()) {
            if (!value.is_array()) return;
            for (std::size_t i = 0; i < value.size(); ++i) {
                eval_element(oracle, value.at(i), depth + 1, path + "[" + std::to_string(i) + "]");
            }
            return;
        }
        if (!oracle.children.empty() || !oracle.conditionals.empty()) {
            if (value.is_object()) {
                eval_object(oracle, value, path);
            } else {
                // Elements of object-shaped lists carry no counted map check;
                // a non-object element still has to fail.
                emit(path, {CheckKind::IsMap, {}}, false, summarize(&value));
            }
        }
    }

    void eval_object(const FieldOracle& oracle, const Json& object, const std::string& path) {
        for (const FieldOracle& child : oracle.children) eval_field(child, object, path);
        if (oracle.conditionals.empty()) return;
        const Json* observed = object.contains("__typename") && object.at("__typename").is_string()
                                   ? &object.at("__typename")
                                   : nullptr;
        for (const ConditionalBlock& block : oracle.conditionals) {
            if (!observed) {
                outcomes_.push_back({path,
                                     {CheckKind::TypenameIn, block.applies_to},
                                     Verdict::Skipped,
                                     "conditional selection on '" + block.type_condition +
                                         "' skipped: __typename unavailable"});
                continue;
            }
            if (holds_operand({CheckKind::TypenameIn, block.applies_to},
                              observed->get<std::string>())) {
                for (const FieldOracle& child : block.children) eval_field(child, object, path);
            }
        }
    }

    ValidationReport finish() {
        ValidationReport report;
        report.outcomes = std::move(outcomes_);
        report.assertions_evaluated = 0;
        bool any_fail = false;
        for (const CheckOutcome& outcome : report.outcomes) {
            if (outcome.verdict != Verdict::Skipped) report.assertions_evaluated += 1;
            if (outcome.verdict == Verdict::Fail) any_fail = true;
        }
        report.passed = !any_fail;
        return report;
    }

    std::vector<CheckOutcome> outcomes_;
};

// The planned-count walk mirrors the evaluator under one structural fact
// about derived trees: the shape check (IS_LIST/IS_MAP/scalar kind) is
// always the last entry of its check list, so nothing countable follows a
// failed check.
int planned_object(const FieldOracle& oracle, const Json& object);
int planned_element(const FieldOracle& oracle, const Json& value, std::size_t depth);

int planned_field(const FieldOracle& oracle, const Json& parent) {
    if (!oracle.checks.empty() && is_typename_check(oracle.checks.front())) return 1;
    const Json* value = parent.is_object() && parent.contains(oracle.response_key)
                            ? &parent.at(oracle.response_key)
                            : nullptr;
    bool has_present = !oracle.checks.empty() && oracle.checks.front().kind == CheckKind::Present;
    int n = has_present ? 1 : 0;
    if (!value) return n;
    if (value->is_null()) {
        for (const Check& check : oracle.checks) {
            if (check.kind == CheckKind::NotNull) return n + 1;
        }
        return n;
    }
    n += static_cast<int>(oracle.checks.size()) - (has_present ? 1 : 0);
    if (!oracle.element_checks.empty()) {
        if (value->is_array()) {
            for (const Json& element : *value) {
                n += planned_element(oracle, element, 0);
            }
        }
    } else if ((!oracle.children.empty() || !oracle.conditionals.empty()) && value->is_object()) {
        n += planned_object(oracle, *value);
    }
    return n;
}

int planned_element(const FieldOracle& oracle, const Json& value, std::size_t depth) {
    const std::vector<Check>& level = oracle.element_checks[depth];
    if (value.is_null()) {
        return !level.empty() && level.front().kind == CheckKind::NotNull ? 1 : 0;
    }
    int n = static_cast<int>(level.size());
    if (depth + 1 < oracle.element_checks.size()) {
        if (value.is_array()) {
            for (const Json& element : value) n += planned_element(oracle, element, depth + 1);
        }
        return n;
    }
    if (!oracle.children.empty() || !oracle.conditionals.empty()) {
        if (value.is_object()) {
            n += planned_object(oracle, value);
        } else {
            n += 1;  // the synthesized map-check failure
        }
    }
    return n;
}

int planned_object(const FieldOracle& oracle, const Json& object) {
    int n = 0;
    for (const FieldOracle& child : oracle.children) n += planned_field(child, object);
    if (oracle.conditionals.empty()) return n;
    if (!object.contains("__typename") || !object.at("__typename").is_string()) return n;
    const std::string observed = object.at("__typename").get<std::string>();
    for (const ConditionalBlock& block : oracle.conditionals) {
        if (std::find(block.applies_to.begin(), block.applies_to.end(), observed) !=
            block.applies_to.end()) {
            for (const FieldOracle& child : block.children) n += planned_field(child, object);
        }
    }
    return n;
}

}  // namespace

std::string to_string(Verdict verdict) {
    switch (verdict) {
        case Verdict::Pass:
            return "PASS";
        case Verdict::Fail:
            return "FAIL";
        case Verdict::Skipped:
            return "SKIPPED";
    }
    return "FAIL";
}

Verdict verdict_from_string(std::string_view text) {
    if (text == "PASS") return Verdict::Pass;
    if (text == "FAIL") return Verdict::Fail;
    if (text == "SKIPPED") return Verdict::Skipped;
    throw FormatError("unknown verdict \"" + std::string(text) + "\"");
}

ValidationReport validate(const OracleTree& tree, int status_code, std::string_view body) {
    return Evaluator().run(tree, status_code, body);
}

int count_planned_assertions(const OracleTree& tree, const Json& body) {
    if (!body.is_object()) return 2;   // status + failed body check
    if (body.contains("errors")) return 3;
    static const Json kEmptyObject = Json::object();
    const Json& data =
        body.contains("data") && body.at("data").is_object() ? body.at("data") : kEmptyObject;
    int n = 3;
    for (const FieldOracle& root : tree.roots) n += planned_field(root, data);
    return n;
}

Json report_to_json(const ValidationReport& report) {
    Json doc = Json::object();
    doc["passed"] = report.passed;
    doc["assertions_evaluated"] = report.assertions_evaluated;
    Json outcomes = Json::array();
    for (const CheckOutcome& outcome : report.outcomes) {
        Json entry = Json::object();
        entry["path"] = outcome.path;
        entry["check"] = to_string(outcome.check.kind);
        if (!outcome.check.operands.empty()) entry["operands"] = outcome.check.operands;
        entry["verdict"] = to_string(outcome.verdict);
        entry["observed"] = outcome.observed;
        outcomes.push_back(std::move(entry));
    }
    doc["outcomes"] = std::move(outcomes);
    return doc;
}

ValidationReport report_from_json(const Json& doc) {
    if (!doc.is_object() || !doc.contains("outcomes") || !doc.at("outcomes").is_array()) {
        throw FormatError("validation report requires an \"outcomes\" array");
    }
    ValidationReport report;
    for (const Json& entry : doc.at("outcomes")) {
        if (!entry.is_object() || !entry.contains("check") || !entry.contains("verdict")) {
            throw FormatError("report outcome requires \"check\" and \"verdict\"");
        }
        CheckOutcome outcome;
        outcome.path = entry.value("path", std::string());
        outcome.check.kind = check_kind_from_string(entry.at("check").get<std::string>());
        if (entry.contains("operands")) {
            for (const Json& operand : entry.at("operands")) {
                outcome.check.operands.push_back(operand.get<std::string>());
            }
        }
        outcome.verdict = verdict_from_string(entry.at("verdict").get<std::string>());
        outcome.observed = entry.value("observed", std::string());
        report.outcomes.push_back(std::move(outcome));
    }
    report.assertions_evaluated =
        doc.value("assertions_evaluated", static_cast<int>(report.outcomes.size()));
    report.passed = doc.value("passed", false);
    return report;
}

}  // namespace gqlharvest::oracle
