#pragma once

#include <string_view>
#include <vector>

#include "freecat/category.hpp"
#include "freecat/report.hpp"

namespace freecat {

struct CheckOptions {
  int bound = 4;      // family size / presheaf size for Σ and presheaf quantifications
  int max_shape = 3;  // diagram shapes: objects and non-identity arrows
};

// Diagrams over shapes with ≤ max_shape objects and arrows all have multi-limits.
PropertyReport check_finitely_multi_complete(const FiniteCategory& k, int max_shape);
// Disjoint and universal coproducts in ΣK, checked on families at the bound.
PropertyReport check_sigma_extensive(const FiniteCategory& k, const CheckOptions& opts);
PropertyReport check_cartesian_multi_closed(const FiniteCategory& k);
PropertyReport check_locally_cartesian_multi_closed(const FiniteCategory& k);
PropertyReport check_multi_topos(const FiniteCategory& k, const CheckOptions& opts);
PropertyReport strict_initial_consistency(const FiniteCategory& k);
PropertyReport check_sigma_products(const FiniteCategory& k, const CheckOptions& opts);
PropertyReport check_sigma_cartesian_closed(const FiniteCategory& k, const CheckOptions& opts);
PropertyReport check_presheaf_topos(const FiniteCategory& k, const CheckOptions& opts);

// The K-side conditions paired with the ΣK and presheaf constructions they
// enable, in a fixed order.
std::vector<PropertyReport> theorem_crosscheck(const FiniteCategory& k, const CheckOptions& opts);

// Every check name accepted by run_check, in report order.
const std::vector<std::string_view>& check_names();
// Throws InvalidArgument for an unknown name.
PropertyReport run_check(std::string_view name, const FiniteCategory& k, const CheckOptions& opts);

// Validates a report against k: certificates are checked directly, witnesses
// are replayed to a failure. Reports whose claim is a bounded exhaustive
// verification are replayed by re-running it and comparing.
bool replay(const FiniteCategory& k, const PropertyReport& report, const CheckOptions& opts);

}  // namespace freecat
