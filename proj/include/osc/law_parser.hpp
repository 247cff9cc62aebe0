#pragma once

#include <memory>
#include <string_view>

#include "osc/law.hpp"

namespace osc {

// Parses law source text. Throws ParseError (with line/column) on syntax
// errors, unknown event kinds, duplicate rule labels, over-deep terms, and
// variables used without a binding occurrence.
Law parse_law(std::string_view source);

std::shared_ptr<const Law> load_law_file(const std::string& path);

}  // namespace osc
