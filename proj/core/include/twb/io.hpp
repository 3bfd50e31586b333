#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "twb/koszul.hpp"
#include "twb/linalg.hpp"
#include "twb/operad.hpp"

namespace twb {

// Parse failure carrying a JSON-pointer style location ("/levels/2/generators/0").
struct ParseError : std::runtime_error {
  std::string location;
  ParseError(std::string loc, const std::string& what)
      : std::runtime_error(loc.empty() ? what : loc + ": " + what), location(std::move(loc)) {}
};

enum class OperadKind { cyclic, dioperad };

struct OperadDocument {
  OperadKind kind = OperadKind::cyclic;
  CyclicOperadData cyclic;
  DioperadData dioperad;
};

// Throws ParseError. Structural checks only (shapes, Coxeter relations of the
// stored generators); run the validators for the operad axioms.
OperadDocument parse_operad_document(const std::string& text);
OperadDocument load_operad_document(const std::string& path);
// Canonical form: sparse matrices, sorted keys, two-space indentation.
std::string serialize_operad_document(const OperadDocument& doc);

OperadDocument make_document(const CyclicOperadData& c);
OperadDocument make_document(const DioperadData& d);

// "n" for unwalled levels, "p:q" for walled ones
std::string level_label(Level l, bool walled);

// Columns: external, internal, dimension, certified.
std::string homology_csv(const std::vector<HomologyTable>& tables, bool walled);
std::string homology_json(const std::vector<HomologyTable>& tables, bool walled, const std::string& command);

}  // namespace twb
