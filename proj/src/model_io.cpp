#include "spinlogic/model_io.hpp"

#include <charconv>
#include <set>
#include <sstream>
#include <vector>

namespace spinlogic {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> tokens;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) {
    if (tok[0] == '#') break;
    tokens.push_back(tok);
  }
  return tokens;
}

Coef parse_int(const std::string& tok, int line_no) {
  std::string_view view = tok;
  if (!view.empty() && view[0] == '+') view.remove_prefix(1);
  Coef value = 0;
  auto [ptr, ec] = std::from_chars(view.data(), view.data() + view.size(), value);
  if (ec != std::errc() || ptr != view.data() + view.size() || view.empty())
    throw ParseError("expected an integer, got '" + tok + "'", line_no);
  return value;
}

// Shared parser body; ModelT is IsingModel or QuboModel.
template <class ModelT>
ModelT parse_body(std::string_view text, bool expect_qubo_header) {
  ModelT model;
  std::set<std::string> seen_lin;
  std::set<VarPair> seen_quad;
  bool seen_offset = false;
  bool allow_header = true;

  std::istringstream stream{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(stream, line)) {
    ++line_no;
    auto tokens = tokenize(line);
    if (tokens.empty()) continue;
    const std::string& kind = tokens[0];
    if (kind == "format") {
      if (!allow_header) throw ParseError("format header must be the first declaration", line_no);
      if (tokens.size() != 2) throw ParseError("format header expects one argument", line_no);
      const bool is_qubo = tokens[1] == "qubo";
      if (!is_qubo && tokens[1] != "ising")
        throw ParseError("unknown format '" + tokens[1] + "'", line_no);
      if (is_qubo != expect_qubo_header)
        throw ParseError(std::string("expected ") + (expect_qubo_header ? "qubo" : "ising") +
                             " model, file declares '" + tokens[1] + "'",
                         line_no);
      allow_header = false;
      continue;
    }
    allow_header = false;
    if (kind == "var") {
      if (tokens.size() != 2) throw ParseError("var expects one name", line_no);
      if (model.has_variable(tokens[1]))
        throw ParseError("duplicate variable '" + tokens[1] + "'", line_no);
      model.add_variable(tokens[1]);
    } else if (kind == "lin") {
      if (tokens.size() != 3) throw ParseError("lin expects a name and an integer", line_no);
      if (!model.has_variable(tokens[1]))
        throw ParseError("unknown variable '" + tokens[1] + "'", line_no);
      if (!seen_lin.insert(tokens[1]).second)
        throw ParseError("duplicate linear term for '" + tokens[1] + "'", line_no);
      model.add_linear(tokens[1], parse_int(tokens[2], line_no));
    } else if (kind == "quad") {
      if (tokens.size() != 4) throw ParseError("quad expects two names and an integer", line_no);
      if (!model.has_variable(tokens[1]))
        throw ParseError("unknown variable '" + tokens[1] + "'", line_no);
      if (!model.has_variable(tokens[2]))
        throw ParseError("unknown variable '" + tokens[2] + "'", line_no);
      if (tokens[1] == tokens[2])
        throw ParseError("quadratic term requires two distinct variables", line_no);
      if (!seen_quad.insert(make_pair_key(tokens[1], tokens[2])).second)
        throw ParseError("duplicate quadratic term for {" + tokens[1] + ", " + tokens[2] + "}",
                         line_no);
      model.add_quadratic(tokens[1], tokens[2], parse_int(tokens[3], line_no));
    } else if (kind == "offset") {
      if (tokens.size() != 2) throw ParseError("offset expects one integer", line_no);
      if (seen_offset) throw ParseError("duplicate offset declaration", line_no);
      seen_offset = true;
      model.add_offset(parse_int(tokens[1], line_no));
    } else {
      throw ParseError("unknown declaration '" + kind + "'", line_no);
    }
  }
  return model;
}

template <class ModelT>
std::string serialize_body(const ModelT& model, bool qubo) {
  std::ostringstream out;
  if (qubo) out << "format qubo\n";
  for (const auto& var : model.variables()) out << "var " << var << "\n";
  for (const auto& [var, w] : model.linear_terms()) out << "lin " << var << " " << w << "\n";
  for (const auto& [pair, w] : model.quadratic_terms())
    out << "quad " << pair.first << " " << pair.second << " " << w << "\n";
  if (model.offset() != 0) out << "offset " << model.offset() << "\n";
  return out.str();
}

bool has_qubo_header(std::string_view text) {
  std::istringstream stream{std::string(text)};
  std::string line;
  while (std::getline(stream, line)) {
    auto tokens = tokenize(line);
    if (tokens.empty()) continue;
    return tokens.size() == 2 && tokens[0] == "format" && tokens[1] == "qubo";
  }
  return false;
}

}  // namespace

std::string serialize(const IsingModel& model) { return serialize_body(model, false); }
std::string serialize(const QuboModel& model) { return serialize_body(model, true); }

IsingModel parse_ising(std::string_view text) { return parse_body<IsingModel>(text, false); }
QuboModel parse_qubo(std::string_view text) { return parse_body<QuboModel>(text, true); }

std::variant<IsingModel, QuboModel> parse_model(std::string_view text) {
  if (has_qubo_header(text)) return parse_qubo(text);
  return parse_ising(text);
}

}  // namespace spinlogic
