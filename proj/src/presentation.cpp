#include "assocvar/presentation.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "assocvar/error.hpp"

namespace assocvar {
namespace {

[[noreturn]] void syntax_error(int line, int col, const std::string& msg) {
  throw Error(ErrorCode::Syntax,
              "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + msg);
}

bool is_name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
}

struct Statement {
  std::string text;
  int line = 1;
  int col = 1;
};

// Splits on ';' and newlines, dropping '#' comments and blank statements.
std::vector<Statement> split_statements(std::string_view text) {
  std::vector<Statement> out;
  Statement cur;
  int line = 1, col = 1;
  bool in_comment = false;
  auto flush = [&] {
    auto first = cur.text.find_first_not_of(" \t\r");
    if (first != std::string::npos) {
      cur.col += static_cast<int>(first);
      cur.text = cur.text.substr(first);
      cur.text.erase(cur.text.find_last_not_of(" \t\r") + 1);
      out.push_back(cur);
    }
    cur = Statement{};
  };
  cur.line = line;
  cur.col = col;
  for (char c : text) {
    if (c == '\n') {
      in_comment = false;
      flush();
      ++line;
      col = 1;
      cur.line = line;
      cur.col = col;
      continue;
    }
    if (in_comment) {
      ++col;
      continue;
    }
    if (c == '#') {
      in_comment = true;
      ++col;
      continue;
    }
    if (c == ';') {
      flush();
      ++col;
      cur.line = line;
      cur.col = col;
      continue;
    }
    cur.text += c;
    ++col;
  }
  flush();
  return out;
}

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

class PolyParser {
 public:
  PolyParser(std::string_view text, const Field& field, const std::vector<std::string>& names,
             int line, int col)
      : text_(text), field_(field), names_(names), line_(line), col0_(col) {}

  NcPoly parse() {
    NcPoly result(field_, names_.size());
    skip_ws();
    if (pos_ >= text_.size()) fail("expected a polynomial");
    bool first = true;
    while (true) {
      skip_ws();
      bool negative = false;
      if (peek() == '+' || peek() == '-') {
        negative = peek() == '-';
        ++pos_;
        skip_ws();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      NcPoly term = parse_term();
      result += negative ? -term : term;
      first = false;
      skip_ws();
      if (pos_ >= text_.size()) break;
    }
    return result;
  }

 private:
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    syntax_error(line_, col0_ + static_cast<int>(pos_), msg);
  }

  NcPoly parse_term() {
    Scalar coeff(1);
    Word word;
    while (true) {
      skip_ws();
      char c = peek();
      if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
        coeff = field_.mul(coeff, parse_number());
      } else if (is_name_start(c)) {
        std::size_t start = pos_;
        while (pos_ < text_.size() && is_name_char(text_[pos_])) ++pos_;
        std::string name(text_.substr(start, pos_ - start));
        auto it = std::find(names_.begin(), names_.end(), name);
        if (it == names_.end())
          throw Error(ErrorCode::UnknownGenerator,
                      "line " + std::to_string(line_) + ", column " +
                          std::to_string(col0_ + static_cast<int>(start)) +
                          ": unknown generator '" + name + "'",
                      name);
        const auto letter = static_cast<Letter>(it - names_.begin());
        std::size_t times = 1;
        if (peek() == '^') {
          ++pos_;
          std::size_t start_exp = pos_;
          while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
          if (pos_ == start_exp || pos_ - start_exp > 3) fail("expected a small exponent after '^'");
          times = std::stoul(std::string(text_.substr(start_exp, pos_ - start_exp)));
          if (times == 0) fail("exponent must be positive");
        }
        word.insert(word.end(), times, letter);
      } else {
        fail("expected a coefficient or generator name");
      }
      skip_ws();
      if (peek() != '*') break;
      ++pos_;
    }
    return NcPoly::monomial(field_, names_.size(), word, coeff);
  }

  Scalar parse_number() {
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.' ||
            text_[pos_] == '/'))
      ++pos_;
    if (pos_ < text_.size() && is_name_char(text_[pos_]))
      fail("missing '*' between coefficient and name");
    Scalar v;
    if (!parse_scalar(std::string(text_.substr(start, pos_ - start)), v)) {
      pos_ = start;
      fail("malformed coefficient");
    }
    try {
      return field_.normalize(v);
    } catch (const Error&) {
      pos_ = start;
      fail("coefficient denominator vanishes in " + field_.name());
    }
  }

  std::string_view text_;
  const Field& field_;
  const std::vector<std::string>& names_;
  int line_;
  int col0_;
  std::size_t pos_ = 0;
};

Field parse_field(const std::string& tok, int line, int col) {
  if (tok == "Q") return Field::rational();
  if (tok == "R") return Field::real();
  if (tok.size() > 1 && tok[0] == 'F' &&
      std::all_of(tok.begin() + 1, tok.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    if (tok.size() > 12) throw Error(ErrorCode::NonPrimeModulus, "modulus too large: " + tok.substr(1));
    return Field::prime(std::stoull(tok.substr(1)));
  }
  syntax_error(line, col, "unknown field '" + tok + "' (expected Q, R or F<prime>)");
}

}  // namespace

bool is_valid_name(std::string_view name) {
  if (name.empty() || !is_name_start(name[0])) return false;
  return std::all_of(name.begin(), name.end(), is_name_char);
}

int Presentation::index_of(std::string_view name) const {
  auto it = std::find(gens.begin(), gens.end(), name);
  return it == gens.end() ? -1 : static_cast<int>(it - gens.begin());
}

void Presentation::validate() const {
  std::set<std::string> seen;
  for (const auto& g : gens) {
    if (!is_valid_name(g)) throw Error(ErrorCode::Syntax, "invalid generator name '" + g + "'");
    if (!seen.insert(g).second)
      throw Error(ErrorCode::DuplicateGenerator, "duplicate generator '" + g + "'", g);
  }
  if (bound < 1) throw Error(ErrorCode::InvalidArgument, "bound must be positive");
  for (const auto& r : rels) {
    if (!(r.field() == field) || r.num_gens() != gens.size())
      throw Error(ErrorCode::Mismatch, "relation does not live over the presentation");
    if (r.degree() > bound)
      throw Error(ErrorCode::InvalidArgument,
                  "bound " + std::to_string(bound) + " is below relation degree " +
                      std::to_string(r.degree()),
                  format_poly(r, gens));
  }
}

PresentationFile parse_presentation_file(std::string_view text) {
  PresentationFile file;
  Presentation& pres = file.pres;
  bool have_field = false, have_gens = false, have_bound = false;
  int bound_line = 0;
  ModuleBlock* module = nullptr;

  for (const auto& st : split_statements(text)) {
    auto toks = split_ws(st.text);
    const std::string& kw = toks.front();
    std::string rest = st.text.substr(kw.size());
    int rest_col = st.col + static_cast<int>(kw.size());

    if (kw == "field") {
      if (have_field) syntax_error(st.line, st.col, "field declared twice");
      if (toks.size() != 2) syntax_error(st.line, st.col, "expected: field Q | R | F<prime>");
      pres.field = parse_field(toks[1], st.line, rest_col + 1);
      have_field = true;
    } else if (kw == "gens") {
      if (!have_field) syntax_error(st.line, st.col, "gens before field");
      if (have_gens) syntax_error(st.line, st.col, "gens declared twice");
      if (toks.size() < 2) syntax_error(st.line, st.col, "gens needs at least one name");
      for (std::size_t i = 1; i < toks.size(); ++i) {
        if (!is_valid_name(toks[i]))
          syntax_error(st.line, st.col, "invalid generator name '" + toks[i] + "'");
        if (pres.index_of(toks[i]) >= 0)
          throw Error(ErrorCode::DuplicateGenerator,
                      "line " + std::to_string(st.line) + ": duplicate generator '" + toks[i] + "'",
                      toks[i]);
        pres.gens.push_back(toks[i]);
      }
      have_gens = true;
    } else if (kw == "rel") {
      if (!have_gens) syntax_error(st.line, st.col, "rel before gens");
      if (module) syntax_error(st.line, st.col, "rel inside a module block");
      NcPoly r = PolyParser(rest, pres.field, pres.gens, st.line, rest_col).parse();
      if (!r.is_zero()) pres.rels.push_back(std::move(r));
    } else if (kw == "bound") {
      if (toks.size() != 2 || !std::all_of(toks[1].begin(), toks[1].end(), [](char c) {
            return std::isdigit(static_cast<unsigned char>(c));
          }) || toks[1].size() > 6)
        syntax_error(st.line, st.col, "expected: bound <positive integer>");
      pres.bound = std::stoi(toks[1]);
      if (pres.bound < 1) syntax_error(st.line, st.col, "bound must be positive");
      have_bound = true;
      bound_line = st.line;
    } else if (kw == "module") {
      if (!have_gens) syntax_error(st.line, st.col, "module before gens");
      std::string spec = rest;
      spec.erase(std::remove_if(spec.begin(), spec.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); }), spec.end());
      if (spec.rfind("r=", 0) != 0 || spec.size() < 3 ||
          !std::all_of(spec.begin() + 2, spec.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }) ||
          spec.size() > 6)
        syntax_error(st.line, st.col, "expected: module r=<dimension>");
      ModuleBlock block;
      block.dim = std::stoi(spec.substr(2));
      block.line = st.line;
      if (block.dim < 1) syntax_error(st.line, st.col, "module dimension must be positive");
      file.modules.push_back(block);
      module = &file.modules.back();
    } else if (module && st.text.find('=') != std::string::npos) {
      auto eq = st.text.find('=');
      std::string name = st.text.substr(0, eq);
      name.erase(name.find_last_not_of(" \t") + 1);
      if (pres.index_of(name) < 0)
        throw Error(ErrorCode::UnknownGenerator,
                    "line " + std::to_string(st.line) + ": module assigns unknown generator '" +
                        name + "'",
                    name);
      module->assignments.emplace_back(name, st.text.substr(eq + 1));
    } else {
      syntax_error(st.line, st.col, "unknown statement '" + kw + "'");
    }
  }
  if (!have_field) syntax_error(1, 1, "missing field declaration");
  if (!have_gens) syntax_error(1, 1, "missing gens declaration");
  for (const auto& r : pres.rels)
    if (have_bound && r.degree() > pres.bound)
      syntax_error(bound_line, 1, "bound is below the degree of relation " + format_poly(r, pres.gens));
  if (!have_bound) {
    for (const auto& r : pres.rels) pres.bound = std::max(pres.bound, r.degree());
  }
  pres.validate();
  return file;
}

Presentation parse_presentation(std::string_view text) {
  return parse_presentation_file(text).pres;
}

NcPoly parse_poly(std::string_view text, const Field& field,
                  const std::vector<std::string>& names) {
  return PolyParser(text, field, names, 1, 1).parse();
}

NcPoly parse_poly(std::string_view text, const Presentation& pres) {
  return parse_poly(text, pres.field, pres.gens);
}

std::string format_poly(const NcPoly& p, const std::vector<std::string>& names) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [w, c] = *it;
    bool negative = sgn(c) < 0;
    Scalar mag = negative ? Scalar(-c) : c;
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    std::string word;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (i) word += "*";
      word += names.at(w[i]);
    }
    if (w.empty()) {
      out += to_string(mag);
    } else if (mag == 1) {
      out += word;
    } else {
      out += to_string(mag) + "*" + word;
    }
  }
  return out;
}

std::string print_presentation(const Presentation& pres) {
  std::string out = "field " + pres.field.name() + "\ngens";
  for (const auto& g : pres.gens) out += " " + g;
  out += "\n";
  for (const auto& r : pres.rels) out += "rel " + format_poly(r, pres.gens) + "\n";
  out += "bound " + std::to_string(pres.bound) + "\n";
  return out;
}

}  // namespace assocvar
