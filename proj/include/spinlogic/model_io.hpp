#pragma once

#include <string>
#include <string_view>
#include <variant>

#include "spinlogic/ising.hpp"
#include "spinlogic/transforms.hpp"

namespace spinlogic {

// Textual model format, one declaration per line:
//
//   var <name>
//   lin <name> <int>
//   quad <name> <name> <int>
//   offset <int>
//
// Blank lines and '#' comments are skipped. Duplicate declarations and
// references to undeclared variables are rejected. Serialization emits vars,
// then lin, then quad (all in canonical order), then a nonzero offset;
// the output round-trips byte-stably. QUBO files carry the header line
// `format qubo`; an optional `format ising` header is accepted on input.

std::string serialize(const IsingModel& model);
std::string serialize(const QuboModel& model);

IsingModel parse_ising(std::string_view text);
QuboModel parse_qubo(std::string_view text);

/// Parses either format, keyed on the `format` header (Ising when absent).
std::variant<IsingModel, QuboModel> parse_model(std::string_view text);

}  // namespace spinlogic
