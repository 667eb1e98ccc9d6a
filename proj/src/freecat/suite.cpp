#include "freecat/suite.hpp"

#include <algorithm>

#include "freecat/io.hpp"
#include "freecat/presheaf.hpp"
#include "freecat/sigma.hpp"

namespace freecat {

namespace {

Json names_of(const FiniteCategory& k, const SigmaObject& a) {
  Json j = Json::array();
  for (ObjectId x : a.family) j.push_back(k.object_name(x));
  return j;
}

Json sigma_exponential_extra(const FiniteCategory& k, const std::string& a_text, const std::string& b_text,
                             int bound) {
  const SigmaCompletion sc(k);
  const auto a = parse_sigma_object(k, a_text);
  const auto b = parse_sigma_object(k, b_text);
  Json j{{"base", names_of(k, a)}, {"target", names_of(k, b)}};
  const auto out = sc.exponential(a, b);
  if (const auto* no = std::get_if<NoExponential>(&out)) {
    j["exists"] = false;
    switch (no->kind) {
      case NoExponential::Kind::MissingProduct:
        j["kind"] = "missing-product";
        if (no->missing) j["pair"] = {k.object_name(no->missing->first), k.object_name(no->missing->second)};
        break;
      case NoExponential::Kind::NoFamily:
        j["kind"] = "no-family";
        j["pair"] = {k.object_name(a.family.at(no->l)), k.object_name(b.family.at(no->j))};
        if (no->family) {
          j["object"] = k.object_name(no->family->object);
          j["map"] = k.morphism_name(no->family->map);
        }
        break;
      case NoExponential::Kind::NoProduct:
        j["kind"] = "no-product";
        if (no->product) j["choice"] = no->product->choice;
        break;
    }
    return j;
  }
  const auto& e = std::get<SigmaExponential>(out);
  j["exists"] = true;
  j["object"] = names_of(k, e.object());
  j["evaluation"] = {{"index", e.evaluation.index}, {"components", Json::array()}};
  for (MorphismId c : e.evaluation.components) j["evaluation"]["components"].push_back(k.morphism_name(c));
  const auto tests = families_up_to(k, static_cast<std::size_t>(std::clamp(bound, 0, 3)));
  bool bijective = true;
  for (const auto& c : tests) bijective = bijective && sc.exponential_bijection(e, c);
  j["bijection_tests"] = tests.size();
  j["bijective"] = bijective;
  return j;
}

Json presheaf_extra(const FiniteCategory& k, const Presheaf& f) {
  Json sizes = Json::object();
  for (ObjectId a = 0; a < k.object_count(); ++a) sizes[k.object_name(a)] = f.sizes[a];
  const auto el = elements_category(k, f);
  const auto census = subobject_quotient_census(k, f);
  return Json{{"sizes", std::move(sizes)},
              {"subobjects", census.subobjects},
              {"quotients", census.quotients},
              {"pushouts_distinct", census.pushouts_distinct},
              {"elements", el.category.object_count()},
              {"weakly_initial", weakly_initial_set(el).size()},
              {"reconstructed", elements_reconstruction_holds(k, f)}};
}

std::vector<std::string_view> selected_checks(const std::vector<std::string>& requested) {
  const auto& names = check_names();
  std::vector<bool> on(names.size(), false);
  for (const auto& r : requested) {
    if (r == "all") {
      std::fill(on.begin(), on.end(), true);
      continue;
    }
    const auto it = std::find(names.begin(), names.end(), r);
    if (it == names.end()) throw Error(ErrorCode::InvalidArgument, "unknown check '" + r + "'");
    on[it - names.begin()] = true;
  }
  std::vector<std::string_view> out;
  for (std::size_t i = 0; i < names.size(); ++i)
    if (on[i]) out.push_back(names[i]);
  return out;
}

}  // namespace

ReportDocument run_suite(const std::string& category_text, const SuiteOptions& opts) {
  if (opts.bound < 0) throw Error(ErrorCode::InvalidArgument, "bound must be non-negative");
  if (opts.max_shape < 0) throw Error(ErrorCode::InvalidArgument, "max-shape must be non-negative");
  const auto checks = selected_checks(opts.checks);
  auto parsed = parse_category(category_text);
  const FiniteCategory k = opts.dual ? dual_category(parsed.category) : parsed.category;

  ReportDocument d;
  d.input_digest = digest(category_text);
  d.bound = opts.bound;
  d.max_shape = opts.max_shape;
  d.dual = opts.dual;
  d.closure = parsed.closure;
  d.category["objects"] = Json::array();
  for (ObjectId a = 0; a < k.object_count(); ++a) d.category["objects"].push_back(k.object_name(a));
  d.category["morphisms"] = Json::array();
  for (MorphismId f = 0; f < k.morphism_count(); ++f)
    d.category["morphisms"].push_back({k.morphism_name(f), k.object_name(k.dom(f)), k.object_name(k.cod(f))});

  if (opts.presheaf_omega) {
    const auto om = omega(k);
    Json sizes = Json::object();
    for (ObjectId a = 0; a < k.object_count(); ++a) sizes[k.object_name(a)] = om.object.sizes[a];
    d.extras["omega"] = std::move(sizes);
  }
  if (opts.sigma_exp)
    d.extras["sigma_exponential"] = sigma_exponential_extra(k, opts.sigma_exp->first, opts.sigma_exp->second, opts.bound);
  if (opts.presheaf_path) d.extras["presheaf"] = presheaf_extra(k, parse_presheaf(k, read_file(*opts.presheaf_path)));

  const CheckOptions co{opts.bound, opts.max_shape};
  for (auto name : checks) d.reports.push_back(run_check(name, k, co));
  return d;
}

ReportDocument run_suite_file(const std::string& path, const SuiteOptions& opts) {
  return run_suite(read_file(path), opts);
}

}  // namespace freecat
