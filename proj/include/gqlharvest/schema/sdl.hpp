#pragma once

#include "gqlharvest/schema/model.hpp"

#include <string>
#include <string_view>

namespace gqlharvest::schema {

// Parses SDL text into a validated SchemaModel. Directives, extensions and
// subscription roots are accepted and ignored. Throws SyntaxError,
// ReferenceError or DuplicateTypeError.
SchemaModel parse_sdl(std::string_view sdl_text);

// Canonical SDL printer: declaration order preserved, no directives or
// descriptions. parse_sdl(render_sdl(m)) reproduces m.
std::string render_sdl(const SchemaModel& schema);

}  // namespace gqlharvest::schema
