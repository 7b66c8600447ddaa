#include "dtk/system.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

#include "dtk/errors.hpp"
#include "dtk/parser.hpp"

namespace dtk {
namespace {

struct Located {
  std::string text;
  std::size_t offset = 0;
};

class Source {
 public:
  explicit Source(std::string_view text) : text_(text) {}

  std::pair<std::size_t, std::size_t> line_column(std::size_t offset) const {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < offset && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    return {line, col};
  }

  [[noreturn]] void fail(const std::string& what, std::size_t offset) const {
    const auto [line, col] = line_column(offset);
    throw SyntaxError(what, offset, line, col);
  }

  RatPoly parse(const Located& e, const Ring& ring) const {
    try {
      return parse_poly(e.text, ring);
    } catch (const UnknownVariable& u) {
      const std::size_t at = e.offset + u.position();
      const auto [line, col] = line_column(at);
      throw UnknownVariable(u.name(), at, line, col);
    } catch (const SyntaxError& s) {
      std::string what = s.what();
      if (const auto cut = what.rfind(" at position "); cut != std::string::npos) what.resize(cut);
      fail(what, e.offset + s.position());
    }
  }

 private:
  std::string_view text_;
};

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

Located trim(std::string_view s, std::size_t offset) {
  std::size_t a = 0, b = s.size();
  while (a < b && is_space(s[a])) ++a;
  while (b > a && is_space(s[b - 1])) --b;
  return {std::string(s.substr(a, b - a)), offset + a};
}

// Splits on commas, keeping offsets.
std::vector<Located> split_list(const Located& l) {
  std::vector<Located> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= l.text.size(); ++i)
    if (i == l.text.size() || l.text[i] == ',') {
      out.push_back(trim(std::string_view(l.text).substr(start, i - start), l.offset + start));
      start = i + 1;
    }
  return out;
}

bool is_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

// Leading keyword and the rest of the statement.
std::pair<std::string, Located> keyword(const Located& st) {
  std::size_t i = 0;
  while (i < st.text.size() && (std::isalnum(static_cast<unsigned char>(st.text[i])) || st.text[i] == '_')) ++i;
  return {st.text.substr(0, i), trim(std::string_view(st.text).substr(i), st.offset + i)};
}

struct Parsed {
  SystemSpec spec;
  std::vector<Located> field;  // per var
  std::vector<Located> variety;
  std::vector<std::vector<Located>> ideals;
};

}  // namespace

SystemSpec parse_system(std::string_view text) {
  const Source src(text);
  // Statements: blank out comments (keeping offsets), split on ';'.
  std::string cleaned(text);
  for (std::size_t k = 0; k < cleaned.size(); ++k)
    if (cleaned[k] == '#')
      while (k < cleaned.size() && cleaned[k] != '\n') cleaned[k++] = ' ';
  std::vector<Located> statements;
  std::size_t start = 0;
  for (std::size_t i = 0; i < cleaned.size(); ++i)
    if (cleaned[i] == ';') {
      const Located st = trim(std::string_view(cleaned).substr(start, i - start), start);
      if (!st.text.empty()) statements.push_back(st);
      start = i + 1;
    }
  const Located tail = trim(std::string_view(cleaned).substr(start), start);
  if (!tail.text.empty()) src.fail("missing ';'", tail.offset + tail.text.size());

  Parsed p;
  SystemSpec& spec = p.spec;
  bool have_vars = false, in_field = false;
  std::map<std::string, Located> components;
  std::vector<std::pair<std::string, std::size_t>> component_order;
  for (const auto& st : statements) {
    auto [kw, rest] = keyword(st);
    const bool is_component = !rest.text.empty() && rest.text[0] == '\'';
    if (is_component || kw == "field") {
      Located assign = rest;
      if (kw == "field") {
        in_field = true;
        if (rest.text.empty()) src.fail("empty field statement", rest.offset);
        std::tie(kw, assign) = keyword(rest);
        if (assign.text.empty() || assign.text[0] != '\'') src.fail("expected <var>' = <expr>", rest.offset);
      } else if (!in_field) {
        src.fail("component outside a field statement", st.offset);
      }
      // assign = "' = expr"
      std::size_t k = 1;
      while (k < assign.text.size() && is_space(assign.text[k])) ++k;
      if (k >= assign.text.size() || assign.text[k] != '=') src.fail("expected '='", assign.offset + k);
      const Located expr = trim(std::string_view(assign.text).substr(k + 1), assign.offset + k + 1);
      if (expr.text.empty()) src.fail("missing expression", expr.offset);
      if (components.count(kw)) src.fail("duplicate field component for '" + kw + "'", st.offset);
      components[kw] = expr;
      component_order.emplace_back(kw, st.offset);
      continue;
    }
    in_field = false;
    if (kw == "name") {
      spec.name = rest.text;
    } else if (kw == "description") {
      spec.description = rest.text;
    } else if (kw == "vars" || kw == "params") {
      auto& target = kw == "vars" ? spec.vars : spec.params;
      if (kw == "vars" && have_vars) src.fail("duplicate vars statement", st.offset);
      if (kw == "params" && !spec.params.empty()) src.fail("duplicate params statement", st.offset);
      for (const auto& item : split_list(rest)) {
        if (!is_identifier(item.text)) src.fail("bad name '" + item.text + "'", item.offset);
        target.push_back(item.text);
      }
      if (kw == "vars") have_vars = true;
    } else if (kw == "variety") {
      if (!p.variety.empty()) src.fail("duplicate variety statement", st.offset);
      p.variety = split_list(rest);
    } else if (kw == "ideal") {
      const auto eq = rest.text.find('=');
      if (eq == std::string::npos) src.fail("expected ideal <name> = <generators>", rest.offset);
      const Located nm = trim(std::string_view(rest.text).substr(0, eq), rest.offset);
      if (!is_identifier(nm.text)) src.fail("bad ideal name '" + nm.text + "'", nm.offset);
      for (const auto& i : spec.ideals)
        if (i.name == nm.text) src.fail("duplicate ideal '" + nm.text + "'", nm.offset);
      spec.ideals.push_back({nm.text, {}});
      p.ideals.push_back(split_list(trim(std::string_view(rest.text).substr(eq + 1), rest.offset + eq + 1)));
    } else {
      src.fail("unknown statement '" + kw + "'", st.offset);
    }
  }

  const std::size_t end = text.size();
  if (!have_vars || spec.vars.empty()) src.fail("vars required", end);
  if (components.empty()) src.fail("field required", end);
  std::set<std::string> seen;
  for (const auto& v : spec.params)
    if (!seen.insert(v).second) throw InvalidArgument("duplicate name '" + v + "'");
  for (const auto& v : spec.vars)
    if (!seen.insert(v).second) throw InvalidArgument("duplicate name '" + v + "'");
  for (const auto& [name, at] : component_order)
    if (std::find(spec.vars.begin(), spec.vars.end(), name) == spec.vars.end()) {
      const auto [line, col] = src.line_column(at);
      throw UnknownVariable(name, at, line, col);
    }
  for (const auto& v : spec.vars) {
    const auto it = components.find(v);
    if (it == components.end())
      throw InvalidArgument("field has " + std::to_string(components.size()) + " components for " +
                            std::to_string(spec.vars.size()) + " variables; missing " + v + "'");
    p.field.push_back(it->second);
  }

  // Validate every expression against the joint ring.
  const Ring ring = system_ring(spec);
  for (const auto& e : p.field) {
    src.parse(e, ring);
    spec.field_exprs.push_back(e.text);
  }
  for (const auto& e : p.variety) {
    src.parse(e, ring);
    spec.variety_exprs.push_back(e.text);
  }
  for (std::size_t k = 0; k < p.ideals.size(); ++k)
    for (const auto& e : p.ideals[k]) {
      src.parse(e, ring);
      spec.ideals[k].generators.push_back(e.text);
    }
  return spec;
}

namespace {

std::string join(const std::vector<std::string>& xs, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + xs[i];
  return out;
}

std::vector<RatPoly> parse_all(const std::vector<std::string>& exprs, const Ring& ring) {
  std::vector<RatPoly> out;
  for (const auto& e : exprs) out.push_back(parse_poly(e, ring));
  return out;
}

}  // namespace

std::string serialize_system(const SystemSpec& spec) {
  std::string out;
  if (!spec.name.empty()) out += "name " + spec.name + ";\n";
  if (!spec.description.empty()) out += "description " + spec.description + ";\n";
  out += "vars " + join(spec.vars, ", ") + ";\n";
  if (!spec.params.empty()) out += "params " + join(spec.params, ", ") + ";\n";
  for (std::size_t i = 0; i < spec.vars.size(); ++i)
    out += std::string(i == 0 ? "field " : "      ") + spec.vars[i] + "' = " + spec.field_exprs[i] + ";\n";
  if (!spec.variety_exprs.empty()) out += "variety " + join(spec.variety_exprs, ", ") + ";\n";
  for (const auto& i : spec.ideals) out += "ideal " + i.name + " = " + join(i.generators, ", ") + ";\n";
  return out;
}

Ring system_ring(const SystemSpec& spec) {
  std::vector<std::string> names = spec.params;
  names.insert(names.end(), spec.vars.begin(), spec.vars.end());
  return Ring(names);
}

DVariety to_dvariety(const SystemSpec& spec) {
  const Ring ring = system_ring(spec);
  std::vector<RatPoly> field(spec.params.size(), RatPoly(ring));
  for (auto& c : parse_all(spec.field_exprs, ring)) field.push_back(std::move(c));
  return DVariety(ring, Ideal(ring, parse_all(spec.variety_exprs, ring)), std::move(field));
}

DFamily to_family(const SystemSpec& spec) {
  const Ring ring = system_ring(spec);
  return DFamily(ring, spec.params.size(), parse_all(spec.field_exprs, ring),
                 Ideal(ring, parse_all(spec.variety_exprs, ring)));
}

Ideal named_ideal(const SystemSpec& spec, const std::string& name) {
  const Ring ring = system_ring(spec);
  for (const auto& i : spec.ideals)
    if (i.name == name) return Ideal(ring, parse_all(i.generators, ring));
  throw InvalidArgument("no ideal named '" + name + "'");
}

SystemSpec system_from(const DVariety& x, const std::string& name) {
  SystemSpec s;
  s.name = name;
  s.vars = x.ring().names();
  for (const auto& c : x.field()) s.field_exprs.push_back(c.to_string());
  for (const auto& g : x.variety().generators()) s.variety_exprs.push_back(g.to_string());
  return s;
}

SystemSpec product_system(const SystemSpec& spec, int n) {
  if (!spec.params.empty()) throw InvalidArgument("product: specialize the parameters first");
  const std::string name = spec.name.empty() ? "" : spec.name + "^" + std::to_string(n);
  return system_from(product(to_dvariety(spec), n), name);
}

}  // namespace dtk
