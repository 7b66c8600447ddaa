#pragma once

// The .dsys text format for polynomial systems:
//
//   # comment
//   name rotation;
//   vars x, y;
//   params t;                       (optional, constants of the derivation)
//   field x' = -t*y; y' = t*x;
//   variety x^2 + y^2 - 1;          (optional, the ideal of X)
//   ideal circle = x^2 + y^2 - 1;   (named ideals to test)
//
// Statements end with ';'. The joint ring lists params first, then vars.

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dtk/dvariety.hpp"
#include "dtk/family.hpp"

namespace dtk {

struct NamedIdeal {
  std::string name;
  std::vector<std::string> generators;
};

struct SystemSpec {
  std::string name;
  std::string description;
  std::vector<std::string> vars;
  std::vector<std::string> params;
  std::vector<std::string> field_exprs;    // one per var, in var order
  std::vector<std::string> variety_exprs;  // empty for affine space
  std::vector<NamedIdeal> ideals;
};

/// Parses and validates: every expression must parse in the joint ring.
/// Errors carry 1-based line and column: SyntaxError (including "field
/// required"), UnknownVariable, InvalidArgument for arity or duplicate problems.
SystemSpec parse_system(std::string_view text);
std::string serialize_system(const SystemSpec& spec);

Ring system_ring(const SystemSpec& spec);
/// The total space; parameters get the zero field.
DVariety to_dvariety(const SystemSpec& spec);
DFamily to_family(const SystemSpec& spec);
/// Throws InvalidArgument when no ideal has that name.
Ideal named_ideal(const SystemSpec& spec, const std::string& name);

/// Canonical SystemSpec of a D-variety without parameters.
SystemSpec system_from(const DVariety& x, const std::string& name = "");
/// X^n; declared ideals are dropped. Throws InvalidArgument for a family.
SystemSpec product_system(const SystemSpec& spec, int n);

}  // namespace dtk
