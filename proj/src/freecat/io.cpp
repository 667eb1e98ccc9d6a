#include "freecat/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

namespace freecat {

namespace {

std::vector<std::string> words(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream in{std::string(line)};
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

std::string_view strip_comment(std::string_view line) {
  const auto hash = line.find('#');
  return hash == std::string_view::npos ? line : line.substr(0, hash);
}

[[noreturn]] void fail(int line, const std::string& message) {
  throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + message);
}

struct Line {
  int number;
  std::string section;
  std::vector<std::string> words;
};

// Splits into (section, words) records. A header may carry items on its own line.
std::vector<Line> sectioned(std::string_view text, const std::set<std::string>& sections) {
  std::vector<Line> out;
  std::string current;
  int number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = text.find('\n', start);
    std::string_view raw = text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
    ++number;
    auto w = words(strip_comment(raw));
    if (!w.empty()) {
      const std::string& first = w.front();
      if (first.back() == ':' && sections.count(first.substr(0, first.size() - 1))) {
        current = first.substr(0, first.size() - 1);
        w.erase(w.begin());
        if (!w.empty()) out.push_back({number, current, w});
      } else {
        if (current.empty()) fail(number, "expected a section header");
        out.push_back({number, current, w});
      }
    }
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return out;
}

}  // namespace

ParsedCategory parse_category(std::string_view text) {
  const auto lines = sectioned(text, {"objects", "morphisms", "compose", "identity"});
  std::vector<std::string> objects;
  std::map<std::string, int> object_id;
  for (const auto& l : lines) {
    if (l.section != "objects") continue;
    for (const auto& name : l.words) {
      if (!object_id.emplace(name, static_cast<int>(objects.size())).second)
        fail(l.number, "duplicate object '" + name + "'");
      objects.push_back(name);
    }
  }
  auto object = [&](const Line& l, const std::string& name) {
    auto it = object_id.find(name);
    if (it == object_id.end()) fail(l.number, "unknown object '" + name + "'");
    return it->second;
  };

  RawCategory raw;
  raw.object_count = static_cast<int>(objects.size());
  raw.object_names = objects;
  for (int a = 0; a < raw.object_count; ++a) {
    raw.morphisms.push_back({a, a});
    raw.identity.push_back(a);
    raw.morphism_names.push_back("id_" + objects[a]);
  }
  for (const auto& l : lines) {
    if (l.section != "identity") continue;
    if (l.words.size() != 2) fail(l.number, "expected 'object name'");
    raw.morphism_names[object(l, l.words[0])] = l.words[1];
  }
  for (const auto& l : lines) {
    if (l.section != "morphisms") continue;
    if (l.words.size() != 3) fail(l.number, "expected 'name dom cod'");
    raw.morphisms.push_back({object(l, l.words[1]), object(l, l.words[2])});
    raw.morphism_names.push_back(l.words[0]);
  }
  std::map<std::string, int> morphism_id;
  for (std::size_t i = 0; i < raw.morphism_names.size(); ++i)
    if (!morphism_id.emplace(raw.morphism_names[i], static_cast<int>(i)).second) {
      int where = 0;
      for (const auto& l : lines)
        if ((l.section == "morphisms" || l.section == "identity") &&
            std::find(l.words.begin(), l.words.end(), raw.morphism_names[i]) != l.words.end())
          where = l.number;
      fail(where, "duplicate morphism '" + raw.morphism_names[i] + "'");
    }
  auto morphism = [&](const Line& l, const std::string& name) {
    auto it = morphism_id.find(name);
    if (it == morphism_id.end()) fail(l.number, "unknown morphism '" + name + "'");
    return it->second;
  };

  const int m = static_cast<int>(raw.morphisms.size());
  std::vector<int> table(static_cast<std::size_t>(m) * m, -1);
  auto is_id = [&](int f) { return f < raw.object_count; };
  for (int f = 0; f < m; ++f) {
    table[static_cast<std::size_t>(raw.identity[raw.morphisms[f].cod]) * m + f] = f;
    table[static_cast<std::size_t>(f) * m + raw.identity[raw.morphisms[f].dom]] = f;
  }
  for (const auto& l : lines) {
    if (l.section != "compose") continue;
    if (l.words.size() != 4 || l.words[2] != "=") fail(l.number, "expected 'g f = h'");
    const int g = morphism(l, l.words[0]);
    const int f = morphism(l, l.words[1]);
    const int h = morphism(l, l.words[3]);
    if (raw.morphisms[f].cod != raw.morphisms[g].dom)
      fail(l.number, "'" + l.words[0] + "' and '" + l.words[1] + "' are not composable");
    if (raw.morphisms[h].dom != raw.morphisms[f].dom || raw.morphisms[h].cod != raw.morphisms[g].cod)
      fail(l.number, "'" + l.words[3] + "' does not have the type of the composite");
    int& slot = table[static_cast<std::size_t>(g) * m + f];
    if (slot >= 0 && slot != h) fail(l.number, "conflicting composite for '" + l.words[0] + " " + l.words[1] + "'");
    slot = h;
  }

  ParsedCategory out;
  for (int g = 0; g < m; ++g)
    for (int f = 0; f < m; ++f) {
      if (is_id(g) || is_id(f) || raw.morphisms[f].cod != raw.morphisms[g].dom) continue;
      int& slot = table[static_cast<std::size_t>(g) * m + f];
      if (slot >= 0) continue;
      std::optional<int> only;
      int count = 0;
      for (int h = 0; h < m; ++h)
        if (raw.morphisms[h].dom == raw.morphisms[f].dom && raw.morphisms[h].cod == raw.morphisms[g].cod) {
          only = h;
          ++count;
        }
      if (count == 1) {
        slot = *only;
        out.closure.push_back(raw.morphism_names[g] + " " + raw.morphism_names[f] + " = " + raw.morphism_names[slot]);
      }
    }
  for (int g = 0; g < m; ++g)
    for (int f = 0; f < m; ++f)
      if (raw.morphisms[f].cod == raw.morphisms[g].dom && table[static_cast<std::size_t>(g) * m + f] >= 0)
        raw.compose.push_back({g, f, table[static_cast<std::size_t>(g) * m + f]});
  out.category = FiniteCategory::validate(raw);
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

ParsedCategory load_category(const std::string& path) { return parse_category(read_file(path)); }

std::string format_category(const FiniteCategory& k) {
  std::ostringstream out;
  out << "objects:";
  for (int a = 0; a < k.object_count(); ++a) out << " " << k.object_name(a);
  out << "\nidentity:\n";
  for (int a = 0; a < k.object_count(); ++a) out << k.object_name(a) << " " << k.morphism_name(k.identity(a)) << "\n";
  out << "morphisms:\n";
  for (int f = 0; f < k.morphism_count(); ++f)
    if (!k.is_identity(f))
      out << k.morphism_name(f) << " " << k.object_name(k.dom(f)) << " " << k.object_name(k.cod(f)) << "\n";
  out << "compose:\n";
  for (int g = 0; g < k.morphism_count(); ++g)
    for (int f = 0; f < k.morphism_count(); ++f)
      if (!k.is_identity(g) && !k.is_identity(f) && k.composable(g, f))
        out << k.morphism_name(g) << " " << k.morphism_name(f) << " = " << k.morphism_name(k.compose(g, f)) << "\n";
  return out.str();
}

Presheaf parse_presheaf(const FiniteCategory& k, std::string_view text) {
  const auto lines = sectioned(text, {"sets", "action"});
  Presheaf p;
  p.sizes.assign(k.object_count(), -1);
  for (const auto& l : lines) {
    if (l.section != "sets") continue;
    if (l.words.size() != 2) fail(l.number, "expected 'object size'");
    auto a = k.find_object(l.words[0]);
    if (!a) fail(l.number, "unknown object '" + l.words[0] + "'");
    int n = 0;
    try {
      n = std::stoi(l.words[1]);
    } catch (const std::exception&) {
      fail(l.number, "size must be an integer");
    }
    if (n < 0) fail(l.number, "size must be nonnegative");
    if (p.sizes[*a] >= 0) fail(l.number, "duplicate size for '" + l.words[0] + "'");
    p.sizes[*a] = n;
  }
  for (int a = 0; a < k.object_count(); ++a)
    if (p.sizes[a] < 0) fail(0, "no size given for '" + k.object_name(a) + "'");
  std::vector<std::optional<std::vector<int>>> act(k.morphism_count());
  for (int a = 0; a < k.object_count(); ++a) {
    std::vector<int> id(p.sizes[a]);
    for (int e = 0; e < p.sizes[a]; ++e) id[e] = e;
    act[k.identity(a)] = id;
  }
  for (const auto& l : lines) {
    if (l.section != "action") continue;
    if (l.words.size() < 2 || l.words[1] != ":") fail(l.number, "expected 'morphism : images'");
    auto h = k.find_morphism(l.words[0]);
    if (!h) fail(l.number, "unknown morphism '" + l.words[0] + "'");
    if (k.is_identity(*h)) fail(l.number, "identity actions are implicit");
    if (act[*h]) fail(l.number, "duplicate action for '" + l.words[0] + "'");
    std::vector<int> images;
    for (std::size_t i = 2; i < l.words.size(); ++i) {
      int v = 0;
      try {
        v = std::stoi(l.words[i]);
      } catch (const std::exception&) {
        fail(l.number, "images must be integers");
      }
      if (v < 0 || v >= p.sizes[k.dom(*h)]) fail(l.number, "image " + l.words[i] + " out of range");
      images.push_back(v);
    }
    if (static_cast<int>(images.size()) != p.sizes[k.cod(*h)])
      fail(l.number, "'" + l.words[0] + "' needs " + std::to_string(p.sizes[k.cod(*h)]) + " images");
    act[*h] = images;
  }
  // Derive composites and forced actions until nothing changes.
  for (bool changed = true; changed;) {
    changed = false;
    for (int g = 0; g < k.morphism_count(); ++g)
      for (int f = 0; f < k.morphism_count(); ++f) {
        if (!k.composable(g, f)) continue;
        const MorphismId gf = k.compose(g, f);
        if (act[gf] || !act[g] || !act[f]) continue;
        std::vector<int> images;
        for (int y : *act[g]) images.push_back((*act[f])[y]);
        act[gf] = images;
        changed = true;
      }
    for (int h = 0; h < k.morphism_count(); ++h) {
      if (act[h]) continue;
      const int from = p.sizes[k.cod(h)];
      const int to = p.sizes[k.dom(h)];
      if (from == 0 || to == 1) {
        act[h] = std::vector<int>(from, 0);
        changed = true;
      }
    }
  }
  for (int h = 0; h < k.morphism_count(); ++h) {
    if (!act[h]) fail(0, "no action given for '" + k.morphism_name(h) + "'");
    p.action.push_back(*act[h]);
  }
  auto vs = presheaf_violations(k, p);
  if (!vs.empty()) throw Error(ErrorCode::ParseError, "not a presheaf: " + vs.front());
  return p;
}

std::string format_presheaf(const FiniteCategory& k, const Presheaf& f) {
  std::ostringstream out;
  out << "sets:\n";
  for (int a = 0; a < k.object_count(); ++a) out << k.object_name(a) << " " << f.sizes[a] << "\n";
  out << "action:\n";
  for (int h = 0; h < k.morphism_count(); ++h) {
    if (k.is_identity(h)) continue;
    out << k.morphism_name(h) << " :";
    for (int v : f.action[h]) out << " " << v;
    out << "\n";
  }
  return out.str();
}

SigmaObject parse_sigma_object(const FiniteCategory& k, std::string_view text) {
  std::string s(text);
  if (!s.empty() && s.front() == '[') {
    if (s.back() != ']') throw Error(ErrorCode::ParseError, "unbalanced brackets in '" + s + "'");
    s = s.substr(1, s.size() - 2);
  }
  SigmaObject out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) {
    auto w = words(item);
    if (w.empty()) continue;
    if (w.size() != 1) throw Error(ErrorCode::ParseError, "bad family member '" + item + "'");
    auto a = k.find_object(w.front());
    if (!a) throw Error(ErrorCode::UnknownObject, "unknown object '" + w.front() + "'");
    out.family.push_back(*a);
  }
  return out;
}

}  // namespace freecat
