#pragma once

#include "gqlharvest/json.hpp"
#include "gqlharvest/oracle/tree.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace gqlharvest::oracle {

enum class Verdict { Pass, Fail, Skipped };

std::string to_string(Verdict verdict);
Verdict verdict_from_string(std::string_view text);  // FormatError

// One evaluated (or skipped) assertion. path is "" for the format checks and
// a dotted data path like "data.teasers[1].url" for field checks.
struct CheckOutcome {
    std::string path;
    Check check;
    Verdict verdict = Verdict::Pass;
    std::string observed;  // compact value summary, or the reason a check was skipped

    bool operator==(const CheckOutcome&) const = default;
};

struct ValidationReport {
    std::vector<CheckOutcome> outcomes;
    int assertions_evaluated = 0;  // PASS and FAIL outcomes; SKIPPED excluded
    bool passed = false;           // no FAIL outcome

    bool operator==(const ValidationReport&) const = default;
};

// Evaluates the oracle tree against one HTTP response. Format checks run
// first and a format failure short-circuits everything below it. Field
// checks walk the data member in tree order; list fields evaluate their
// element checks once per element. Never throws: every anomaly is a FAIL
// outcome.
ValidationReport validate(const OracleTree& tree, int status_code, std::string_view body);

// The number of assertions validate would evaluate for a response shaped
// like body when every check passes; an independent (much simpler) walk used
// for reporting and as a cross-check on the evaluator.
int count_planned_assertions(const OracleTree& tree, const Json& body);

Json report_to_json(const ValidationReport& report);
ValidationReport report_from_json(const Json& doc);  // FormatError

}  // namespace gqlharvest::oracle
