#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "freecat/category.hpp"
#include "freecat/presheaf.hpp"
#include "freecat/sigma.hpp"

namespace freecat {

struct ParsedCategory {
  FiniteCategory category;
  // Composites filled in because their hom-set left no choice, as "g f = h".
  std::vector<std::string> closure;
};

// Sections: `objects:` names; `morphisms:` lines "name dom cod"; `compose:`
// lines "g f = h" meaning g∘f = h; optional `identity:` lines "object name".
// Identities are implicit (id_<object>) and come first in id order.
// Throws ParseError with a line number, or CategoryError from validation.
ParsedCategory parse_category(std::string_view text);
// Throws Io when the file cannot be read.
std::string read_file(const std::string& path);
ParsedCategory load_category(const std::string& path);
std::string format_category(const FiniteCategory& k);

// Sections: `sets:` lines "object size"; `action:` lines "morphism : images"
// listing F(h)(y) for each y in F(cod h). Identity actions are implicit;
// composite and forced actions may be omitted.
Presheaf parse_presheaf(const FiniteCategory& k, std::string_view text);
std::string format_presheaf(const FiniteCategory& k, const Presheaf& f);

// Comma-separated object names, optionally in brackets; "[]" is the empty family.
SigmaObject parse_sigma_object(const FiniteCategory& k, std::string_view text);

}  // namespace freecat
