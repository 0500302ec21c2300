#include "gqlharvest/json.hpp"

namespace gqlharvest {

std::string canonical_dump(const Json& value) {
    // nlohmann::json keeps object keys in sorted order, so converting the
    // ordered document and dumping it yields the canonical byte form.
    nlohmann::json sorted = value;
    return sorted.dump();
}

}  // namespace gqlharvest
