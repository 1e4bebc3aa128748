#pragma once

// Text and JSON formats for quivers, representations, differential
// projective modules and raw module data.
//
//   # comment
//   field F 5                      (or: field Q)
//   vertices 1 2 3;
//   arrows a: 1 -> 2, b: 2 -> 3;   (or: quiver "path/to/quiver.txt")
//   dims 1=1 2=1 3=1               representation / raw module
//   map a = [[1]]
//   top 1=2 2=1                    differential projective module
//   g 1 = [[0,0],[1,0]]
//   h a = [[1,0]]
//   endo 1 = [[0]]                 raw module only
//
// Omitted matrices are zero. Entries are integers or fractions n/d.

#include <cctype>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "kqj2/diffproj.hpp"
#include "kqj2/errors.hpp"
#include "kqj2/field.hpp"
#include "kqj2/quiver.hpp"
#include "kqj2/rep.hpp"

namespace kqj2 {

using json = nlohmann::json;

/// A matrix literal before it is interpreted in a field.
struct MatrixLiteral {
  std::vector<std::vector<std::string>> rows;
  std::size_t line = 0;
  std::size_t column = 0;
};

enum class DocumentKind { Quiver, Rep, DiffProj, RawModule };

inline const char* to_string(DocumentKind k) {
  switch (k) {
    case DocumentKind::Quiver: return "quiver";
    case DocumentKind::Rep: return "representation";
    case DocumentKind::DiffProj: return "differential projective module";
    case DocumentKind::RawModule: return "raw module";
  }
  return "?";
}

/// Parsed but field-agnostic contents of an input file.
struct Document {
  std::optional<FieldSpec> field;
  Quiver quiver;
  bool has_quiver = false;
  std::map<std::string, std::size_t> dims;  // `dims` statement
  std::map<std::string, std::size_t> tops;  // `top` statement
  bool has_dims = false;
  bool has_tops = false;
  std::map<std::string, MatrixLiteral> maps, g, h, endo;

  DocumentKind kind() const {
    if (!endo.empty()) return DocumentKind::RawModule;
    if (has_tops) return DocumentKind::DiffProj;
    if (has_dims) return DocumentKind::Rep;
    return DocumentKind::Quiver;
  }
};

namespace detail {

struct Token {
  enum Kind { Word, String, Punct, End } kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

inline bool is_word_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '*' || c == '\'' || c == '.';
}

inline std::vector<Token> tokenize(const std::string& text) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1, i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
    } else if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance(1);
    } else if (is_word_char(c)) {
      std::size_t start = i, l = line, cl = col;
      while (i < text.size() && is_word_char(text[i])) advance(1);
      out.push_back({Token::Word, text.substr(start, i - start), l, cl});
    } else if (c == '"') {
      std::size_t l = line, cl = col;
      advance(1);
      std::size_t start = i;
      while (i < text.size() && text[i] != '"' && text[i] != '\n') advance(1);
      if (i >= text.size() || text[i] != '"') throw ParseError(ParseErrorKind::Syntax, l, cl, "unterminated string");
      out.push_back({Token::String, text.substr(start, i - start), l, cl});
      advance(1);
    } else if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
      out.push_back({Token::Punct, "->", line, col});
      advance(2);
    } else if (std::string_view("[],;:=/-{}").find(c) != std::string_view::npos) {
      out.push_back({Token::Punct, std::string(1, c), line, col});
      advance(1);
    } else {
      throw ParseError(ParseErrorKind::Syntax, line, col, std::string("unexpected character '") + c + "'");
    }
  }
  out.push_back({Token::End, "", line, col});
  return out;
}

inline bool is_keyword(const std::string& w) {
  static const char* const keywords[] = {"field", "vertices", "arrows", "quiver", "dims",
                                         "top",   "map",      "g",      "h",      "endo"};
  for (const char* k : keywords) {
    if (w == k) return true;
  }
  return false;
}

class TextParser {
 public:
  TextParser(const std::string& text, std::filesystem::path base_dir)
      : tokens_(tokenize(text)), base_dir_(std::move(base_dir)) {}

  Document parse() {
    Document doc;
    bool vertices_seen = false;
    while (peek().kind != Token::End) {
      if (is_punct(";")) {
        next();
        continue;
      }
      const Token& t = expect_word("a statement keyword");
      if (t.text == "field") {
        parse_field(doc);
      } else if (t.text == "vertices") {
        if (vertices_seen || doc.has_quiver) fail(t, "quiver declared twice");
        parse_vertices(doc.quiver);
        vertices_seen = doc.has_quiver = true;
      } else if (t.text == "arrows") {
        if (!vertices_seen) fail(t, "'arrows' must follow 'vertices'");
        parse_arrows(doc.quiver);
      } else if (t.text == "quiver") {
        if (doc.has_quiver) fail(t, "quiver declared twice");
        parse_quiver_reference(doc);
      } else if (t.text == "dims") {
        parse_sizes(doc.dims);
        doc.has_dims = true;
      } else if (t.text == "top") {
        parse_sizes(doc.tops);
        doc.has_tops = true;
      } else if (t.text == "map" || t.text == "g" || t.text == "h" || t.text == "endo") {
        auto& target = t.text == "map" ? doc.maps : t.text == "g" ? doc.g : t.text == "h" ? doc.h : doc.endo;
        const Token& name = expect_word("a name");
        expect_punct("=");
        auto lit = parse_matrix();
        if (target.count(name.text)) fail(name, "'" + name.text + "' assigned twice");
        target.emplace(name.text, std::move(lit));
      } else {
        fail(t, "unknown statement '" + t.text + "'");
      }
    }
    return doc;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const { return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)]; }
  const Token& next() {
    const Token& t = tokens_[pos_];
    if (pos_ + 1 < tokens_.size()) ++pos_;
    return t;
  }
  bool is_punct(const char* p, std::size_t ahead = 0) const {
    return peek(ahead).kind == Token::Punct && peek(ahead).text == p;
  }
  [[noreturn]] static void fail(const Token& t, const std::string& what,
                                ParseErrorKind kind = ParseErrorKind::Syntax) {
    throw ParseError(kind, t.line, t.column, what);
  }
  const Token& expect_word(const std::string& what) {
    if (peek().kind != Token::Word) fail(peek(), "expected " + what + (peek().kind == Token::End ? ", got end of input" : ", got '" + peek().text + "'"));
    return next();
  }
  void expect_punct(const char* p) {
    if (!is_punct(p)) fail(peek(), std::string("expected '") + p + "'");
    next();
  }

  void parse_field(Document& doc) {
    const Token& t = expect_word("a field name");
    std::string name = t.text;
    if ((name == "F" || name == "f") && peek().kind == Token::Word &&
        peek().text.find_first_not_of("0123456789") == std::string::npos) {
      name += next().text;
    }
    try {
      doc.field = FieldSpec::parse(name);
    } catch (const DomainError& e) {
      fail(t, e.what());
    }
  }

  void parse_vertices(Quiver& q) {
    while (peek().kind == Token::Word && !is_keyword(peek().text)) {
      const Token& t = next();
      if (q.find_vertex(t.text)) fail(t, "duplicate vertex '" + t.text + "'", ParseErrorKind::DuplicateName);
      q.add_vertex(t.text);
    }
    if (is_punct(";")) next();
  }

  void parse_arrows(Quiver& q) {
    if (is_punct(";")) {
      next();
      return;
    }
    while (true) {
      const Token& name = expect_word("an arrow name");
      expect_punct(":");
      const Token& src = expect_word("a source vertex");
      expect_punct("->");
      const Token& tgt = expect_word("a target vertex");
      if (q.find_arrow(name.text)) fail(name, "duplicate arrow '" + name.text + "'", ParseErrorKind::DuplicateName);
      for (const Token* end : {&src, &tgt}) {
        if (!q.find_vertex(end->text)) {
          fail(*end, "arrow '" + name.text + "' uses undeclared vertex '" + end->text + "'", ParseErrorKind::UnknownVertex);
        }
      }
      q.add_arrow(name.text, src.text, tgt.text);
      if (!is_punct(",")) break;
      next();
    }
    if (is_punct(";")) next();
  }

  void parse_quiver_reference(Document& doc);

  void parse_sizes(std::map<std::string, std::size_t>& out) {
    while (peek().kind == Token::Word && is_punct("=", 1)) {
      const Token& name = next();
      next();
      const Token& value = expect_word("a dimension");
      if (value.text.find_first_not_of("0123456789") != std::string::npos || value.text.size() > 6) {
        fail(value, "expected a nonnegative integer, got '" + value.text + "'");
      }
      if (out.count(name.text)) fail(name, "'" + name.text + "' given twice");
      out[name.text] = std::stoul(value.text);
    }
  }

  std::string parse_scalar() {
    std::string s;
    if (is_punct("-")) {
      next();
      s = "-";
    }
    s += expect_word("a number").text;
    if (is_punct("/")) {
      next();
      s += "/" + expect_word("a denominator").text;
    }
    return s;
  }

  MatrixLiteral parse_matrix() {
    MatrixLiteral lit;
    lit.line = peek().line;
    lit.column = peek().column;
    expect_punct("[");
    if (is_punct("]")) {
      next();
      return lit;
    }
    while (true) {
      expect_punct("[");
      std::vector<std::string> row;
      if (!is_punct("]")) {
        row.push_back(parse_scalar());
        while (is_punct(",")) {
          next();
          row.push_back(parse_scalar());
        }
      }
      expect_punct("]");
      lit.rows.push_back(std::move(row));
      if (!is_punct(",")) break;
      next();
    }
    expect_punct("]");
    return lit;
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::filesystem::path base_dir_;
};

}  // namespace detail

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError(ErrorCode::InvalidArgument, "cannot open '" + path.string() + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline Document parse_document(const std::string& text, const std::filesystem::path& base_dir = ".");

inline void detail::TextParser::parse_quiver_reference(Document& doc) {
  const Token& t = peek();
  if (t.kind != Token::String && t.kind != Token::Word) fail(t, "expected a quiver file path");
  next();
  auto path = base_dir_ / t.text;
  std::string text;
  try {
    text = read_file(path);
  } catch (const DomainError& e) {
    fail(t, e.what());
  }
  Document sub = parse_document(text, path.parent_path());
  if (!sub.has_quiver) fail(t, "'" + t.text + "' does not declare a quiver");
  doc.quiver = std::move(sub.quiver);
  doc.has_quiver = true;
}

namespace detail {

inline std::string json_scalar(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  throw ParseError(ParseErrorKind::Syntax, 0, 0, "matrix entries must be integers or strings like \"-3/4\"");
}

inline MatrixLiteral json_matrix(const json& v) {
  if (!v.is_array()) throw ParseError(ParseErrorKind::Syntax, 0, 0, "matrix must be an array of rows");
  MatrixLiteral lit;
  for (const auto& row : v) {
    if (!row.is_array()) throw ParseError(ParseErrorKind::Syntax, 0, 0, "matrix row must be an array");
    std::vector<std::string> r;
    for (const auto& e : row) r.push_back(json_scalar(e));
    lit.rows.push_back(std::move(r));
  }
  return lit;
}

inline Quiver json_quiver(const json& v) {
  Quiver q;
  if (!v.is_object() || !v.contains("vertices")) {
    throw ParseError(ParseErrorKind::Syntax, 0, 0, "quiver object needs a 'vertices' array");
  }
  for (const auto& name : v.at("vertices")) {
    std::string s = name.is_string() ? name.get<std::string>() : name.dump();
    if (q.find_vertex(s)) throw ParseError(ParseErrorKind::DuplicateName, 0, 0, "duplicate vertex '" + s + "'");
    q.add_vertex(s);
  }
  if (v.contains("arrows")) {
    for (const auto& a : v.at("arrows")) {
      auto str = [&](const char* key) {
        if (!a.contains(key)) throw ParseError(ParseErrorKind::Syntax, 0, 0, std::string("arrow needs '") + key + "'");
        const auto& x = a.at(key);
        return x.is_string() ? x.get<std::string>() : x.dump();
      };
      std::string name = str("name"), src = str("src"), tgt = str("tgt");
      if (q.find_arrow(name)) throw ParseError(ParseErrorKind::DuplicateName, 0, 0, "duplicate arrow '" + name + "'");
      for (const auto& end : {src, tgt}) {
        if (!q.find_vertex(end)) {
          throw ParseError(ParseErrorKind::UnknownVertex, 0, 0, "arrow '" + name + "' uses undeclared vertex '" + end + "'");
        }
      }
      q.add_arrow(name, src, tgt);
    }
  }
  return q;
}

inline Document parse_json_document(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(ParseErrorKind::Syntax, 0, e.byte, e.what());
  }
  if (!root.is_object()) throw ParseError(ParseErrorKind::Syntax, 0, 0, "top-level JSON value must be an object");
  Document doc;
  try {
    if (root.contains("field")) doc.field = FieldSpec::parse(root.at("field").get<std::string>());
    // A bare quiver object is accepted as well as a wrapped one.
    if (root.contains("quiver")) {
      doc.quiver = json_quiver(root.at("quiver"));
      doc.has_quiver = true;
    } else if (root.contains("vertices")) {
      doc.quiver = json_quiver(root);
      doc.has_quiver = true;
    }
    auto sizes = [&](const char* key, std::map<std::string, std::size_t>& out, bool& flag) {
      if (!root.contains(key)) return;
      flag = true;
      for (const auto& [k, v] : root.at(key).items()) out[k] = v.get<std::size_t>();
    };
    sizes("dims", doc.dims, doc.has_dims);
    sizes("top", doc.tops, doc.has_tops);
    auto mats = [&](const char* key, std::map<std::string, MatrixLiteral>& out) {
      if (!root.contains(key)) return;
      for (const auto& [k, v] : root.at(key).items()) out[k] = json_matrix(v);
    };
    mats("maps", doc.maps);
    mats("g", doc.g);
    mats("h", doc.h);
    mats("endo", doc.endo);
  } catch (const json::exception& e) {
    throw ParseError(ParseErrorKind::Syntax, 0, 0, e.what());
  } catch (const DomainError& e) {
    throw ParseError(ParseErrorKind::Syntax, 0, 0, e.what());
  }
  return doc;
}

}  // namespace detail

/// Text or JSON (detected by a leading '{').
Document parse_document(const std::string& text, const std::filesystem::path& base_dir) {
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return detail::parse_json_document(text);
  return detail::TextParser(text, base_dir).parse();
}

inline Document load_document(const std::filesystem::path& path) {
  return parse_document(read_file(path), path.parent_path());
}

inline Quiver parse_quiver(const std::string& text) {
  auto doc = parse_document(text);
  if (!doc.has_quiver) throw ParseError(ParseErrorKind::Syntax, 1, 1, "no 'vertices' statement");
  return doc.quiver;
}

namespace detail {

template <class Field>
Matrix<Field> interpret(const Field& field, const MatrixLiteral& lit, std::size_t rows, std::size_t cols,
                        const std::string& what) {
  Matrix<Field> out(field, rows, cols);
  auto fail = [&](const std::string& msg) {
    throw ParseError(ParseErrorKind::Syntax, lit.line, lit.column, what + ": " + msg);
  };
  if (rows * cols == 0) {
    // Accept [] as well as [[],[]] for empty shapes.
    for (const auto& r : lit.rows) {
      if (!r.empty()) fail("expected an empty matrix");
    }
    if (!lit.rows.empty() && lit.rows.size() != rows) fail("expected " + std::to_string(rows) + " rows");
    return out;
  }
  if (lit.rows.size() != rows) {
    fail("expected " + std::to_string(rows) + " rows, got " + std::to_string(lit.rows.size()));
  }
  for (std::size_t i = 0; i < rows; ++i) {
    if (lit.rows[i].size() != cols) {
      fail("row " + std::to_string(i + 1) + " has " + std::to_string(lit.rows[i].size()) + " entries, expected " +
           std::to_string(cols));
    }
    for (std::size_t j = 0; j < cols; ++j) {
      try {
        out(i, j) = field.parse(lit.rows[i][j]);
      } catch (const DomainError& e) {
        fail(e.what());
      }
    }
  }
  return out;
}

inline std::vector<std::size_t> sizes_by_vertex(const Quiver& q, const std::map<std::string, std::size_t>& given,
                                                const char* what) {
  for (const auto& [name, _] : given) {
    if (!q.find_vertex(name)) throw ParseError(ParseErrorKind::UnknownVertex, 0, 0, std::string(what) + " names unknown vertex '" + name + "'");
  }
  std::vector<std::size_t> out;
  for (const auto& v : q.vertices()) {
    auto it = given.find(v);
    out.push_back(it == given.end() ? 0 : it->second);
  }
  return out;
}

inline void check_names(const std::map<std::string, MatrixLiteral>& mats, const Quiver& q, bool by_arrow,
                        const char* what) {
  for (const auto& [name, lit] : mats) {
    bool ok = by_arrow ? q.find_arrow(name).has_value() : q.find_vertex(name).has_value();
    if (!ok) {
      throw ParseError(ParseErrorKind::UnknownVertex, lit.line, lit.column,
                       std::string(what) + " names unknown " + (by_arrow ? "arrow" : "vertex") + " '" + name + "'");
    }
  }
}

inline void require_quiver(const Document& doc) {
  if (!doc.has_quiver) throw ParseError(ParseErrorKind::Syntax, 1, 1, "input does not declare a quiver");
}

}  // namespace detail

/// The field in the file unless `override_field` is given; rationals when neither.
inline FieldSpec resolve_field(const Document& doc, const std::optional<FieldSpec>& override_field) {
  if (override_field) return *override_field;
  return doc.field.value_or(FieldSpec::rationals());
}

template <class Field>
Rep<Field> rep_from_document(const Document& doc, const Field& field) {
  detail::require_quiver(doc);
  const Quiver& q = doc.quiver;
  auto dims = detail::sizes_by_vertex(q, doc.dims, "dims");
  detail::check_names(doc.maps, q, true, "map");
  std::vector<Matrix<Field>> maps;
  for (const auto& a : q.arrows()) {
    auto it = doc.maps.find(a.name);
    if (it == doc.maps.end()) {
      maps.emplace_back(field, dims[a.target], dims[a.source]);
    } else {
      maps.push_back(detail::interpret(field, it->second, dims[a.target], dims[a.source], "map " + a.name));
    }
  }
  return Rep<Field>(q, field, std::move(dims), std::move(maps));
}

template <class Field>
DiffProj<Field> diffproj_from_document(const Document& doc, const Field& field) {
  detail::require_quiver(doc);
  const Quiver& q = doc.quiver;
  auto tops = detail::sizes_by_vertex(q, doc.tops, "top");
  detail::check_names(doc.g, q, false, "g");
  detail::check_names(doc.h, q, true, "h");
  std::vector<Matrix<Field>> g, h;
  for (std::size_t v = 0; v < q.vertex_count(); ++v) {
    auto it = doc.g.find(q.vertex_name(v));
    g.push_back(it == doc.g.end() ? Matrix<Field>(field, tops[v], tops[v])
                                  : detail::interpret(field, it->second, tops[v], tops[v], "g " + q.vertex_name(v)));
  }
  for (const auto& a : q.arrows()) {
    auto it = doc.h.find(a.name);
    h.push_back(it == doc.h.end()
                    ? Matrix<Field>(field, tops[a.source], tops[a.target])
                    : detail::interpret(field, it->second, tops[a.source], tops[a.target], "h " + a.name));
  }
  return DiffProj<Field>(q, field, std::move(tops), std::move(g), std::move(h));
}

template <class Field>
RawModule<Field> raw_from_document(const Document& doc, const Field& field) {
  auto module = rep_from_document(doc, field);
  const Quiver& q = module.quiver();
  detail::check_names(doc.endo, q, false, "endo");
  std::vector<Matrix<Field>> endo;
  for (std::size_t v = 0; v < q.vertex_count(); ++v) {
    auto it = doc.endo.find(q.vertex_name(v));
    auto d = module.dim(v);
    endo.push_back(it == doc.endo.end() ? Matrix<Field>(field, d, d)
                                        : detail::interpret(field, it->second, d, d, "endo " + q.vertex_name(v)));
  }
  return {std::move(module), std::move(endo)};
}

// ---------------------------------------------------------------------------
// Emission

inline std::string to_text(const Quiver& q) {
  std::ostringstream os;
  os << "vertices";
  for (const auto& v : q.vertices()) os << ' ' << v;
  os << ";\n";
  if (q.arrow_count() > 0) {
    os << "arrows ";
    for (std::size_t a = 0; a < q.arrow_count(); ++a) {
      const auto& arrow = q.arrow(a);
      if (a) os << ", ";
      os << arrow.name << ": " << q.vertex_name(arrow.source) << " -> " << q.vertex_name(arrow.target);
    }
    os << ";\n";
  }
  return os.str();
}

inline json to_json(const Quiver& q) {
  json arrows = json::array();
  for (const auto& a : q.arrows()) {
    arrows.push_back({{"name", a.name}, {"src", q.vertex_name(a.source)}, {"tgt", q.vertex_name(a.target)}});
  }
  return {{"vertices", q.vertices()}, {"arrows", arrows}};
}

namespace detail {

template <class Field>
std::string matrix_text(const Matrix<Field>& m) {
  std::ostringstream os;
  if (m.rows() == 0) return "[]";
  os << m;
  return os.str();
}

template <class Field>
json matrix_json(const Matrix<Field>& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m.field().format(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <class Field>
std::string field_header(const Field& f) {
  if (f.characteristic() == 0) return "field Q\n";
  return "field F " + std::to_string(f.characteristic()) + "\n";
}

}  // namespace detail

template <class Field>
std::string to_text(const Rep<Field>& x) {
  const Quiver& q = x.quiver();
  std::ostringstream os;
  os << detail::field_header(x.field()) << to_text(q) << "dims";
  for (std::size_t v = 0; v < q.vertex_count(); ++v) os << ' ' << q.vertex_name(v) << '=' << x.dim(v);
  os << '\n';
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    os << "map " << q.arrow(a).name << " = " << detail::matrix_text(x.map(a)) << '\n';
  }
  return os.str();
}

template <class Field>
json to_json(const Rep<Field>& x) {
  const Quiver& q = x.quiver();
  json dims = json::object(), maps = json::object();
  for (std::size_t v = 0; v < q.vertex_count(); ++v) dims[q.vertex_name(v)] = x.dim(v);
  for (std::size_t a = 0; a < q.arrow_count(); ++a) maps[q.arrow(a).name] = detail::matrix_json(x.map(a));
  return {{"field", x.field().name()}, {"quiver", to_json(q)}, {"dims", dims}, {"maps", maps}};
}

/// Zero g and h blocks are omitted.
template <class Field>
std::string to_text(const DiffProj<Field>& m) {
  const Quiver& q = m.quiver();
  std::ostringstream os;
  os << detail::field_header(m.field()) << to_text(q) << "top";
  for (std::size_t v = 0; v < q.vertex_count(); ++v) os << ' ' << q.vertex_name(v) << '=' << m.top(v);
  os << '\n';
  for (std::size_t v = 0; v < q.vertex_count(); ++v) {
    if (!m.g(v).is_zero()) os << "g " << q.vertex_name(v) << " = " << detail::matrix_text(m.g(v)) << '\n';
  }
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    if (!m.h(a).is_zero()) os << "h " << q.arrow(a).name << " = " << detail::matrix_text(m.h(a)) << '\n';
  }
  return os.str();
}

template <class Field>
json to_json(const DiffProj<Field>& m) {
  const Quiver& q = m.quiver();
  json tops = json::object(), g = json::object(), h = json::object();
  for (std::size_t v = 0; v < q.vertex_count(); ++v) {
    tops[q.vertex_name(v)] = m.top(v);
    g[q.vertex_name(v)] = detail::matrix_json(m.g(v));
  }
  for (std::size_t a = 0; a < q.arrow_count(); ++a) h[q.arrow(a).name] = detail::matrix_json(m.h(a));
  return {{"field", m.field().name()}, {"quiver", to_json(q)}, {"top", tops}, {"g", g}, {"h", h}};
}

template <class Field>
std::string to_text(const RawModule<Field>& raw) {
  const Quiver& q = raw.module.quiver();
  std::ostringstream os;
  os << to_text(raw.module);
  for (std::size_t v = 0; v < q.vertex_count(); ++v) {
    os << "endo " << q.vertex_name(v) << " = " << detail::matrix_text(raw.endo[v]) << '\n';
  }
  return os.str();
}

template <class Field>
json to_json(const RawModule<Field>& raw) {
  json out = to_json(raw.module);
  json endo = json::object();
  const Quiver& q = raw.module.quiver();
  for (std::size_t v = 0; v < q.vertex_count(); ++v) endo[q.vertex_name(v)] = detail::matrix_json(raw.endo[v]);
  out["endo"] = endo;
  return out;
}

}  // namespace kqj2
