#include "velim/io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstring>
#include <map>

#include <json.hpp>

namespace velim::io {

namespace {

using nlohmann::ordered_json;

[[noreturn]] void parse_fail(int line, int col, const std::string& what) {
  throw Error(ErrorCode::ParseError,
              "line " + std::to_string(line) + ", column " + std::to_string(col) +
                  ": " + what);
}

// ------------------------------------------------------------------
// DOT subset
// ------------------------------------------------------------------

struct Token {
  enum Kind { Identifier, Quoted, Punct, ArrowDirected, ArrowUndirected, End };
  Kind kind = End;
  std::string text;
  int line = 1, col = 1;
};

class DotLexer {
 public:
  explicit DotLexer(std::string_view text) : text_(text) {}

  Token next() {
    skip_space_and_comments();
    Token tok;
    tok.line = line_;
    tok.col = col_;
    if (pos_ >= text_.size()) return tok;
    const char c = text_[pos_];
    if (c == '-' && pos_ + 1 < text_.size() &&
        (text_[pos_ + 1] == '>' || text_[pos_ + 1] == '-')) {
      tok.kind = text_[pos_ + 1] == '>' ? Token::ArrowDirected : Token::ArrowUndirected;
      tok.text = text_.substr(pos_, 2);
      advance(2);
      return tok;
    }
    if (std::strchr("{}[];,=", c)) {
      tok.kind = Token::Punct;
      tok.text = std::string(1, c);
      advance(1);
      return tok;
    }
    if (c == '"') {
      advance(1);
      std::string value;
      while (pos_ < text_.size() && text_[pos_] != '"') {
        if (text_[pos_] == '\\' && pos_ + 1 < text_.size()) advance(1);
        value += text_[pos_];
        advance(1);
      }
      if (pos_ >= text_.size()) parse_fail(tok.line, tok.col, "unterminated string");
      advance(1);
      tok.kind = Token::Quoted;
      tok.text = std::move(value);
      return tok;
    }
    if (is_id_char(c)) {
      std::string value;
      while (pos_ < text_.size() && is_id_char(text_[pos_])) {
        // a '-' only stays in the token when it does not open an arrow
        if (text_[pos_] == '-' && pos_ + 1 < text_.size() &&
            (text_[pos_ + 1] == '>' || text_[pos_ + 1] == '-'))
          break;
        value += text_[pos_];
        advance(1);
      }
      tok.kind = Token::Identifier;
      tok.text = std::move(value);
      return tok;
    }
    parse_fail(line_, col_, std::string("unexpected character '") + c + "'");
  }

 private:
  static bool is_id_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' ||
           c == '/' || c == '-' || c == '+';
  }

  void advance(std::size_t count) {
    for (std::size_t i = 0; i < count && pos_ < text_.size(); ++i, ++pos_) {
      if (text_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
    }
  }

  void skip_space_and_comments() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance(1);
      } else if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance(1);
      } else if (c == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '/') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance(1);
      } else if (c == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '*') {
        advance(2);
        while (pos_ + 1 < text_.size() && !(text_[pos_] == '*' && text_[pos_ + 1] == '/'))
          advance(1);
        advance(2);
      } else {
        break;
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1, col_ = 1;
};

struct DotStatement {
  bool is_edge = false;
  std::string a, b;  // node name, or tail/head
  std::vector<std::pair<std::string, std::string>> attrs;
  int line = 1, col = 1;
};

struct DotFile {
  bool directed = false;
  std::vector<DotStatement> statements;
};

DotFile parse_dot(std::string_view text) {
  DotLexer lexer(text);
  Token tok = lexer.next();
  DotFile file;
  if (tok.kind != Token::Identifier || (tok.text != "digraph" && tok.text != "graph"))
    parse_fail(tok.line, tok.col, "expected 'digraph' or 'graph'");
  file.directed = tok.text == "digraph";

  tok = lexer.next();
  if (tok.kind == Token::Identifier || tok.kind == Token::Quoted) tok = lexer.next();
  if (tok.kind != Token::Punct || tok.text != "{")
    parse_fail(tok.line, tok.col, "expected '{'");

  tok = lexer.next();
  while (!(tok.kind == Token::Punct && tok.text == "}")) {
    if (tok.kind == Token::End) parse_fail(tok.line, tok.col, "missing '}'");
    if (tok.kind != Token::Identifier && tok.kind != Token::Quoted)
      parse_fail(tok.line, tok.col, "expected a node or edge statement");

    DotStatement stmt;
    stmt.a = tok.text;
    stmt.line = tok.line;
    stmt.col = tok.col;
    tok = lexer.next();
    if (tok.kind == Token::ArrowDirected || tok.kind == Token::ArrowUndirected) {
      if ((tok.kind == Token::ArrowDirected) != file.directed)
        parse_fail(tok.line, tok.col,
                   file.directed ? "undirected edge in a digraph"
                                 : "directed edge in a graph");
      stmt.is_edge = true;
      tok = lexer.next();
      if (tok.kind != Token::Identifier && tok.kind != Token::Quoted)
        parse_fail(tok.line, tok.col, "expected an edge head");
      stmt.b = tok.text;
      tok = lexer.next();
    }
    if (tok.kind == Token::Punct && tok.text == "[") {
      tok = lexer.next();
      while (!(tok.kind == Token::Punct && tok.text == "]")) {
        if (tok.kind != Token::Identifier)
          parse_fail(tok.line, tok.col, "expected an attribute name");
        const std::string key = tok.text;
        tok = lexer.next();
        if (!(tok.kind == Token::Punct && tok.text == "="))
          parse_fail(tok.line, tok.col, "expected '=' after attribute name");
        tok = lexer.next();
        if (tok.kind != Token::Identifier && tok.kind != Token::Quoted)
          parse_fail(tok.line, tok.col, "expected an attribute value");
        stmt.attrs.emplace_back(key, tok.text);
        tok = lexer.next();
        if (tok.kind == Token::Punct && (tok.text == "," || tok.text == ";"))
          tok = lexer.next();
      }
      tok = lexer.next();
    }
    if (tok.kind == Token::Punct && tok.text == ";") tok = lexer.next();
    file.statements.push_back(std::move(stmt));
  }
  tok = lexer.next();
  if (tok.kind != Token::End) parse_fail(tok.line, tok.col, "trailing input after '}'");
  return file;
}

ParsedInstance dag_from_dot(const DotFile& file) {
  std::vector<VertexDecl> decls;
  std::map<std::string, VertexId> index;
  std::vector<ArcEnds> arcs;
  std::vector<Rational> weights;
  bool any_weight = false, any_plain = false;

  for (const auto& stmt : file.statements) {
    if (!stmt.is_edge) {
      if (index.count(stmt.a))
        throw Error(ErrorCode::ValidationError, "duplicate node statement '" + stmt.a + "'");
      VertexDecl decl;
      decl.name = stmt.a;
      bool have_kind = false;
      for (const auto& [key, value] : stmt.attrs) {
        if (key == "kind") {
          if (value == "terminal") decl.kind = VertexKind::Terminal;
          else if (value == "internal") decl.kind = VertexKind::Internal;
          else
            throw Error(ErrorCode::ValidationError,
                        "node '" + stmt.a + "': kind must be terminal or internal");
          have_kind = true;
        } else {
          parse_fail(stmt.line, stmt.col, "unknown node attribute '" + key + "'");
        }
      }
      if (!have_kind)
        throw Error(ErrorCode::ValidationError,
                    "node '" + stmt.a + "' is missing the kind attribute");
      index[stmt.a] = static_cast<VertexId>(decls.size());
      decls.push_back(std::move(decl));
    }
  }
  for (const auto& stmt : file.statements) {
    if (!stmt.is_edge) continue;
    auto tail = index.find(stmt.a);
    auto head = index.find(stmt.b);
    if (tail == index.end())
      throw Error(ErrorCode::ValidationError, "undeclared vertex '" + stmt.a + "'");
    if (head == index.end())
      throw Error(ErrorCode::ValidationError, "undeclared vertex '" + stmt.b + "'");
    std::optional<Rational> weight;
    for (const auto& [key, value] : stmt.attrs) {
      if (key == "w") weight = parse_rational(value);
      else parse_fail(stmt.line, stmt.col, "unknown edge attribute '" + key + "'");
    }
    arcs.push_back({tail->second, head->second});
    if (weight) {
      any_weight = true;
      weights.push_back(*weight);
    } else {
      any_plain = true;
    }
  }
  if (any_weight && any_plain)
    throw Error(ErrorCode::PartialWeights, "some arcs carry w, some do not");

  ParsedInstance parsed;
  parsed.dag = Dag::build(std::move(decls), arcs, any_weight ? weights : std::vector<Rational>{});
  return parsed;
}

// ------------------------------------------------------------------
// JSON
// ------------------------------------------------------------------

ordered_json parse_json_document(std::string_view text) {
  try {
    return ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

Metadata metadata_from_json(const ordered_json& doc) {
  Metadata meta;
  if (!doc.contains("metadata")) return meta;
  const auto& m = doc.at("metadata");
  if (!m.is_object()) throw Error(ErrorCode::ParseError, "metadata must be an object");
  for (const auto& [key, value] : m.items()) {
    if (key == "problem") {
      if (!value.is_string())
        throw Error(ErrorCode::ParseError, "metadata.problem must be a string");
      meta.problem = value.get<std::string>();
    } else if (key == "k") {
      if (!value.is_number_integer())
        throw Error(ErrorCode::ParseError, "metadata.k must be an integer");
      meta.k = value.get<std::int64_t>();
    } else {
      throw Error(ErrorCode::ParseError, "unknown metadata key '" + key + "'");
    }
  }
  return meta;
}

ParsedInstance dag_from_json(const ordered_json& doc) {
  if (!doc.is_object()) throw Error(ErrorCode::ParseError, "expected a JSON object");
  for (const auto& [key, value] : doc.items()) {
    (void)value;
    if (key != "vertices" && key != "arcs" && key != "metadata")
      throw Error(ErrorCode::ParseError, "unknown key '" + key + "'");
  }
  if (!doc.contains("vertices") || !doc.at("vertices").is_array())
    throw Error(ErrorCode::ParseError, "missing vertices array");

  std::vector<VertexDecl> decls;
  std::map<std::string, VertexId> index;
  for (const auto& entry : doc.at("vertices")) {
    if (!entry.is_object() || !entry.contains("id") || !entry.contains("kind"))
      throw Error(ErrorCode::ParseError, "vertex entries need id and kind");
    for (const auto& [key, value] : entry.items()) {
      (void)value;
      if (key != "id" && key != "kind")
        throw Error(ErrorCode::ParseError, "unknown vertex key '" + key + "'");
    }
    VertexDecl decl;
    decl.name = entry.at("id").get<std::string>();
    const auto kind = entry.at("kind").get<std::string>();
    if (kind == "terminal") decl.kind = VertexKind::Terminal;
    else if (kind == "internal") decl.kind = VertexKind::Internal;
    else
      throw Error(ErrorCode::ValidationError,
                  "vertex '" + decl.name + "': kind must be terminal or internal");
    if (index.count(decl.name))
      throw Error(ErrorCode::ValidationError, "duplicate vertex id '" + decl.name + "'");
    index[decl.name] = static_cast<VertexId>(decls.size());
    decls.push_back(std::move(decl));
  }

  std::vector<ArcEnds> arcs;
  std::vector<Rational> weights;
  bool any_weight = false, any_plain = false;
  if (doc.contains("arcs")) {
    if (!doc.at("arcs").is_array())
      throw Error(ErrorCode::ParseError, "arcs must be an array");
    for (const auto& entry : doc.at("arcs")) {
      if (!entry.is_array() || entry.size() < 2 || entry.size() > 3 ||
          !entry[0].is_string() || !entry[1].is_string())
        throw Error(ErrorCode::ParseError,
                    "arcs must be [tail, head] or [tail, head, weight]");
      auto tail = index.find(entry[0].get<std::string>());
      auto head = index.find(entry[1].get<std::string>());
      if (tail == index.end() || head == index.end())
        throw Error(ErrorCode::ValidationError,
                    "arc references undeclared vertex '" +
                        (tail == index.end() ? entry[0] : entry[1]).get<std::string>() +
                        "'");
      arcs.push_back({tail->second, head->second});
      if (entry.size() == 3) {
        if (!entry[2].is_string())
          throw Error(ErrorCode::ParseError, "arc weights are \"p/q\" strings");
        any_weight = true;
        weights.push_back(parse_rational(entry[2].get<std::string>()));
      } else {
        any_plain = true;
      }
    }
  }
  if (any_weight && any_plain)
    throw Error(ErrorCode::PartialWeights, "some arcs carry weights, some do not");

  ParsedInstance parsed;
  parsed.dag = Dag::build(std::move(decls), arcs, any_weight ? weights : std::vector<Rational>{});
  parsed.meta = metadata_from_json(doc);
  return parsed;
}

bool looks_like_json(std::string_view text) {
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    return c == '{';
  }
  return false;
}

ordered_json metadata_to_json(const Metadata& meta) {
  ordered_json m = ordered_json::object();
  if (!meta.problem.empty()) m["problem"] = meta.problem;
  if (meta.k) m["k"] = *meta.k;
  return m;
}

}  // namespace

ParsedInstance parse_instance(std::string_view text) {
  if (looks_like_json(text)) return dag_from_json(parse_json_document(text));
  const DotFile file = parse_dot(text);
  if (!file.directed)
    throw Error(ErrorCode::ValidationError, "expected a digraph, got an undirected graph");
  return dag_from_dot(file);
}

std::string serialize_instance(const Dag& d, const Metadata& meta) {
  ordered_json doc;
  doc["vertices"] = ordered_json::array();
  for (VertexId v : d.vertex_ids())
    doc["vertices"].push_back(
        {{"id", vertex_label(d, v)},
         {"kind", d.kind(v) == VertexKind::Terminal ? "terminal" : "internal"}});
  doc["arcs"] = ordered_json::array();
  for (VertexId v : d.vertex_ids())
    for (VertexId w : d.out_neighbors(v)) {
      ordered_json arc = ordered_json::array({vertex_label(d, v), vertex_label(d, w)});
      if (d.weighted()) arc.push_back(format_rational(d.weight(v, w)));
      doc["arcs"].push_back(std::move(arc));
    }
  if (!meta.empty()) doc["metadata"] = metadata_to_json(meta);
  return doc.dump();
}

ParsedUndirected parse_undirected(std::string_view text) {
  ParsedUndirected parsed;
  if (looks_like_json(text)) {
    const ordered_json doc = parse_json_document(text);
    if (!doc.is_object()) throw Error(ErrorCode::ParseError, "expected a JSON object");
    for (const auto& [key, value] : doc.items()) {
      (void)value;
      if (key != "vertices" && key != "edges" && key != "metadata")
        throw Error(ErrorCode::ParseError, "unknown key '" + key + "'");
    }
    if (!doc.contains("vertices") || !doc.at("vertices").is_array())
      throw Error(ErrorCode::ParseError, "missing vertices array");
    std::vector<std::string> names;
    std::map<std::string, int> index;
    for (const auto& entry : doc.at("vertices")) {
      if (!entry.is_string())
        throw Error(ErrorCode::ParseError, "undirected vertices are plain names");
      const auto name = entry.get<std::string>();
      if (index.count(name))
        throw Error(ErrorCode::ValidationError, "duplicate vertex '" + name + "'");
      index[name] = static_cast<int>(names.size());
      names.push_back(name);
    }
    std::vector<std::pair<int, int>> edges;
    if (doc.contains("edges")) {
      for (const auto& entry : doc.at("edges")) {
        if (!entry.is_array() || entry.size() != 2 || !entry[0].is_string() ||
            !entry[1].is_string())
          throw Error(ErrorCode::ParseError, "edges must be [a, b] name pairs");
        auto a = index.find(entry[0].get<std::string>());
        auto b = index.find(entry[1].get<std::string>());
        if (a == index.end() || b == index.end())
          throw Error(ErrorCode::ValidationError, "edge references undeclared vertex");
        edges.push_back({a->second, b->second});
      }
    }
    const int n = static_cast<int>(names.size());
    parsed.graph = reductions::UndirectedGraph::build(n, edges, std::move(names));
    parsed.meta = metadata_from_json(doc);
    return parsed;
  }

  const DotFile file = parse_dot(text);
  if (file.directed)
    throw Error(ErrorCode::ValidationError, "expected an undirected graph, got a digraph");
  std::vector<std::string> names;
  std::map<std::string, int> index;
  auto intern = [&](const std::string& name) {
    auto it = index.find(name);
    if (it != index.end()) return it->second;
    const int id = static_cast<int>(names.size());
    index[name] = id;
    names.push_back(name);
    return id;
  };
  std::vector<std::pair<int, int>> edges;
  for (const auto& stmt : file.statements) {
    if (!stmt.attrs.empty())
      parse_fail(stmt.line, stmt.col, "attributes are not part of the undirected subset");
    if (stmt.is_edge)
      edges.push_back({intern(stmt.a), intern(stmt.b)});
    else
      intern(stmt.a);
  }
  const int n = static_cast<int>(names.size());
  parsed.graph = reductions::UndirectedGraph::build(n, edges, std::move(names));
  return parsed;
}

std::string serialize_undirected(const reductions::UndirectedGraph& g,
                                 const Metadata& meta) {
  ordered_json doc;
  doc["vertices"] = ordered_json::array();
  for (int v = 0; v < g.vertex_count(); ++v) doc["vertices"].push_back(g.name(v));
  doc["edges"] = ordered_json::array();
  for (auto [u, v] : g.edges())
    doc["edges"].push_back(ordered_json::array({g.name(u), g.name(v)}));
  if (!meta.empty()) doc["metadata"] = metadata_to_json(meta);
  return doc.dump();
}

std::string instance_digest(const Dag& d) {
  const std::string payload = serialize_instance(d);
  std::uint64_t hash = 1469598103934665603ULL;
  for (unsigned char c : payload) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

std::string vertex_label(const Dag& d, VertexId v) {
  const std::string& name = d.name(v);
  return name.empty() ? "v" + std::to_string(v) : name;
}

VertexId vertex_by_name(const Dag& d, std::string_view name) {
  for (VertexId v : d.vertex_ids())
    if (vertex_label(d, v) == name) return v;
  throw Error(ErrorCode::UnknownVertex, "no vertex named '" + std::string(name) + "'");
}

}  // namespace velim::io
