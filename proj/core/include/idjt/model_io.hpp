#pragma once

#include <string>
#include <string_view>

#include "idjt/model.hpp"

namespace idjt {

// Reads the line-oriented model format:
//
//   chance   <name> states <s1> <s2> ... stage <k>
//   decision <name> states <a1> <a2> ... index <k>
//   cpt <name> [given <p1> ... <pm>] : <v1> <v2> ...
//   utility <uname> over <v1> ... : <u1> <u2> ...
//
// `#` starts a comment. Tables are row-major over the listed variables (for a
// cpt, the parents followed by the variable itself) with the last one varying
// fastest. Statements may appear in any order.
//
// Throws SyntaxError (with line and column) for malformed text, duplicate
// names, undeclared references, and wrong value counts. No semantic
// validation happens here.
InfluenceDiagram parse_model(std::string_view text);

// Writes a diagram back in the same format. parse_model(write_model(d)) is
// structurally identical to d.
std::string write_model(const InfluenceDiagram& id);

}  // namespace idjt
