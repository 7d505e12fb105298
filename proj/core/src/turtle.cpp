// Copyright 2026 The mtp2skill Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mtp2skill/turtle.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

#include "turtle_lexer.hpp"

namespace mtp2skill::rdf {

namespace detail {

namespace {

bool name_char(char c) {
  auto u = static_cast<unsigned char>(c);
  return std::isalnum(u) || c == '_' || c == '-' || c == '.' || u >= 0x80;
}

void append_utf8(std::string& out, unsigned long cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

}  // namespace

void Lexer::skip_space() {
  while (pos_ < text_.size()) {
    char c = text_[pos_];
    if (c == '\n') {
      ++line_;
      ++pos_;
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      ++pos_;
    } else if (c == '#') {
      while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
    } else {
      break;
    }
  }
}

Token Lexer::peek() {
  if (!hasPeek_) {
    peeked_ = lex();
    hasPeek_ = true;
  }
  return peeked_;
}

Token Lexer::next() {
  if (hasPeek_) {
    hasPeek_ = false;
    return std::move(peeked_);
  }
  return lex();
}

std::string Lexer::read_name() {
  std::string out;
  while (pos_ < text_.size() && name_char(text_[pos_])) out += text_[pos_++];
  // A trailing '.' terminates the statement rather than belonging to the name.
  while (!out.empty() && out.back() == '.') {
    out.pop_back();
    --pos_;
  }
  return out;
}

std::string Lexer::read_string(char quote) {
  bool longForm = text_.substr(pos_, 3) == std::string(3, quote);
  pos_ += longForm ? 3 : 1;
  std::string out;
  while (true) {
    if (pos_ >= text_.size()) fail("unterminated string literal");
    char c = text_[pos_];
    if (longForm ? text_.substr(pos_, 3) == std::string(3, quote) : c == quote) {
      pos_ += longForm ? 3 : 1;
      return out;
    }
    if (c == '\n') {
      if (!longForm) fail("newline in string literal");
      ++line_;
    }
    if (c != '\\') {
      out += c;
      ++pos_;
      continue;
    }
    if (++pos_ >= text_.size()) fail("dangling escape");
    char e = text_[pos_++];
    switch (e) {
      case 't': out += '\t'; break;
      case 'n': out += '\n'; break;
      case 'r': out += '\r'; break;
      case 'b': out += '\b'; break;
      case 'f': out += '\f'; break;
      case '"': out += '"'; break;
      case '\'': out += '\''; break;
      case '\\': out += '\\'; break;
      case 'u':
      case 'U': {
        std::size_t n = e == 'u' ? 4 : 8;
        if (pos_ + n > text_.size()) fail("truncated unicode escape");
        unsigned long cp = 0;
        for (std::size_t i = 0; i < n; ++i) {
          char h = text_[pos_ + i];
          if (!std::isxdigit(static_cast<unsigned char>(h))) fail("bad unicode escape");
          cp = cp * 16 + static_cast<unsigned long>(std::stoi(std::string(1, h), nullptr, 16));
        }
        pos_ += n;
        append_utf8(out, cp);
        break;
      }
      default: fail(std::string("unknown escape \\") + e);
    }
  }
}

Token Lexer::lex() {
  skip_space();
  Token t;
  t.line = line_;
  if (pos_ >= text_.size()) return t;
  char c = text_[pos_];

  if (c == '<') {
    auto end = text_.find('>', pos_);
    if (end == std::string_view::npos) fail("unterminated IRI");
    t.type = Token::Type::IriRef;
    t.text = std::string(text_.substr(pos_ + 1, end - pos_ - 1));
    pos_ = end + 1;
    return t;
  }
  if (c == '"' || c == '\'') {
    t.type = Token::Type::String;
    t.text = read_string(c);
    return t;
  }
  if (c == '^' && text_.substr(pos_, 2) == "^^") {
    pos_ += 2;
    t.type = Token::Type::Caret;
    return t;
  }
  if (c == '@') {
    ++pos_;
    std::string w = read_name();
    if (w == "prefix" || w == "base") {
      t.type = Token::Type::Word;
      t.text = "@" + w;
    } else {
      t.type = Token::Type::LangTag;
      t.text = w;
    }
    return t;
  }
  if (c == '_' && text_.substr(pos_, 2) == "_:") {
    pos_ += 2;
    t.type = Token::Type::BlankNode;
    t.text = read_name();
    if (t.text.empty()) fail("empty blank node label");
    return t;
  }
  if (c == '?' || c == '$') {
    ++pos_;
    t.type = Token::Type::Var;
    t.text = read_name();
    if (t.text.empty()) fail("empty variable name");
    return t;
  }
  if (std::isdigit(static_cast<unsigned char>(c)) ||
      ((c == '-' || c == '+') && pos_ + 1 < text_.size() &&
       std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])))) {
    std::size_t start = pos_++;
    while (pos_ < text_.size()) {
      char d = text_[pos_];
      bool dotDigit = d == '.' && pos_ + 1 < text_.size() &&
                      std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]));
      bool exp = (d == 'e' || d == 'E');
      bool sign = (d == '-' || d == '+') && (text_[pos_ - 1] == 'e' || text_[pos_ - 1] == 'E');
      if (std::isdigit(static_cast<unsigned char>(d)) || dotDigit || exp || sign)
        ++pos_;
      else
        break;
    }
    t.type = Token::Type::Number;
    t.text = std::string(text_.substr(start, pos_ - start));
    return t;
  }
  if (c == '.' || c == ';' || c == ',' || c == '[' || c == ']' || c == '(' || c == ')' ||
      c == '{' || c == '}') {
    ++pos_;
    t.type = Token::Type::Punct;
    t.text = std::string(1, c);
    return t;
  }
  if (std::isalpha(static_cast<unsigned char>(c)) || c == ':' || c == '_') {
    std::string head = read_name();
    if (pos_ < text_.size() && text_[pos_] == ':') {
      ++pos_;
      t.type = Token::Type::PName;
      t.prefix = head;
      t.text = read_name();
      return t;
    }
    t.type = Token::Type::Word;
    t.text = head;
    return t;
  }
  fail(std::string("unexpected character '") + c + "'");
}

std::string TermReader::expand(const Token& pname) const {
  auto it = prefixes_.find(pname.prefix);
  if (it == prefixes_.end()) lex_.fail("undefined prefix '" + pname.prefix + ":'");
  return it->second + pname.text;
}

Term TermReader::read(const Token& first) {
  switch (first.type) {
    case Token::Type::IriRef:
      if (!is_absolute_iri(first.text)) lex_.fail("relative IRI <" + first.text + ">");
      return Term::iri(first.text);
    case Token::Type::PName: {
      auto iri = expand(first);
      if (!is_absolute_iri(iri)) lex_.fail("prefixed name expands to relative IRI " + iri);
      return Term::iri(iri);
    }
    case Token::Type::BlankNode:
      return Term::blank(first.text);
    case Token::Type::String: {
      Token n = lex_.peek();
      if (n.type == Token::Type::Caret) {
        lex_.next();
        Token dt = lex_.next();
        if (dt.type == Token::Type::IriRef) return Term::literal(first.text, dt.text);
        if (dt.type == Token::Type::PName) return Term::literal(first.text, expand(dt));
        lex_.fail("expected datatype IRI after ^^");
      }
      if (n.type == Token::Type::LangTag) lex_.fail("language-tagged literals are not supported");
      return Term::literal(first.text);
    }
    case Token::Type::Number: {
      const auto& s = first.text;
      if (s.find_first_of("eE") != std::string::npos) return Term::literal(s, xsd::kDouble);
      if (s.find('.') != std::string::npos) return Term::literal(s, xsd::kDecimal);
      return Term::literal(s, xsd::kInteger);
    }
    case Token::Type::Word:
      if (first.text == "a") return Term::iri(std::string(ns::kRdf) + "type");
      if (first.text == "true" || first.text == "false") return Term::boolean(first.text == "true");
      lex_.fail("unexpected word '" + first.text + "'");
    default:
      break;
  }
  lex_.fail("expected a term, got '" + first.text + "'");
}

}  // namespace detail

namespace {

bool plain_local(std::string_view s) {
  if (s.empty() || s.front() == '-') return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
  });
}

class Writer {
 public:
  explicit Writer(const RdfGraph& g) {
    for (const auto& p : standard_prefixes()) order_.push_back(p);
    std::vector<std::pair<std::string, std::string>> extra;
    for (const auto& [label, iri] : g.prefixes()) {
      bool standard = std::any_of(order_.begin(), order_.end(),
                                  [&](const auto& p) { return p.first == label; });
      if (!standard) extra.emplace_back(label, iri);
    }
    order_.insert(order_.end(), extra.begin(), extra.end());
  }

  void header(std::string& out) const {
    for (const auto& [label, iri] : order_) out += "@prefix " + label + ": <" + iri + "> .\n";
  }

  std::string iri(const std::string& value) const {
    // Longest matching namespace wins.
    const std::pair<std::string, std::string>* best = nullptr;
    for (const auto& p : order_)
      if (value.size() > p.second.size() && value.compare(0, p.second.size(), p.second) == 0 &&
          plain_local(std::string_view(value).substr(p.second.size())) &&
          (!best || p.second.size() > best->second.size()))
        best = &p;
    if (best) return best->first + ":" + value.substr(best->second.size());
    return "<" + value + ">";
  }

  std::string term(const Term& t) const {
    switch (t.kind()) {
      case Term::Kind::Iri: return iri(t.value());
      case Term::Kind::BlankNode: return "_:" + t.value();
      case Term::Kind::Literal: {
        std::string out = "\"";
        for (char c : t.value()) {
          switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
          }
        }
        out += '"';
        if (t.datatype() != xsd::kString) out += "^^" + iri(t.datatype());
        return out;
      }
    }
    return {};
  }

  std::string predicate(const Term& p) const {
    if (p.value() == std::string(ns::kRdf) + "type") return "a";
    return iri(p.value());
  }

 private:
  std::vector<std::pair<std::string, std::string>> order_;
};

}  // namespace

std::string serialize_turtle(const RdfGraph& graph) {
  Writer w(graph);
  std::string out;
  w.header(out);
  // The SPO set is already ordered subject, predicate, object.
  const Term* subject = nullptr;
  const Term* predicate = nullptr;
  for (const Triple& t : graph.triples()) {
    if (!subject || t.subject != *subject) {
      if (subject) out += " .\n";
      out += "\n" + w.term(t.subject) + "\n    " + w.predicate(t.predicate) + " " + w.term(t.object);
      subject = &t.subject;
      predicate = &t.predicate;
    } else if (t.predicate != *predicate) {
      out += " ;\n    " + w.predicate(t.predicate) + " " + w.term(t.object);
      predicate = &t.predicate;
    } else {
      out += ", " + w.term(t.object);
    }
  }
  if (subject) out += " .\n";
  return out;
}

RdfGraph parse_turtle(std::string_view text) {
  using detail::Token;
  RdfGraph graph;
  std::map<std::string, std::string> prefixes;
  detail::Lexer lex(text);
  detail::TermReader reader(lex, prefixes);

  auto expect_punct = [&](std::string_view p) {
    Token t = lex.next();
    if (t.type != Token::Type::Punct || t.text != p)
      lex.fail("expected '" + std::string(p) + "', got '" + t.text + "'");
  };

  while (true) {
    Token t = lex.next();
    if (t.type == Token::Type::End) break;

    bool sparqlPrefix = t.type == Token::Type::Word && (t.text == "PREFIX" || t.text == "prefix");
    if ((t.type == Token::Type::Word && t.text == "@prefix") || sparqlPrefix) {
      Token label = lex.next();
      if (label.type != Token::Type::PName || !label.text.empty()) lex.fail("expected 'label:'");
      Token iri = lex.next();
      if (iri.type != Token::Type::IriRef || !is_absolute_iri(iri.text))
        lex.fail("expected absolute namespace IRI");
      prefixes[label.prefix] = iri.text;
      graph.set_prefix(label.prefix, iri.text);
      if (!sparqlPrefix) expect_punct(".");
      continue;
    }
    if (t.type == Token::Type::Word && t.text == "@base") lex.fail("@base is not supported");

    Term subject = reader.read(t);
    if (subject.is_literal()) lex.fail("literal in subject position");
    while (true) {
      Token pt = lex.next();
      Term predicate = reader.read(pt);
      if (!predicate.is_iri()) lex.fail("predicate must be an IRI");
      while (true) {
        Token ot = lex.next();
        if (ot.type == Token::Type::Punct) lex.fail("expected object, got '" + ot.text + "'");
        graph.add(Triple{subject, predicate, reader.read(ot)});
        Token sep = lex.peek();
        if (sep.type == Token::Type::Punct && sep.text == ",") {
          lex.next();
          continue;
        }
        break;
      }
      Token sep = lex.next();
      if (sep.type == Token::Type::Punct && sep.text == ";") {
        Token after = lex.peek();
        if (after.type == Token::Type::Punct && after.text == ".") {
          lex.next();
          break;
        }
        continue;
      }
      if (sep.type == Token::Type::Punct && sep.text == ".") break;
      lex.fail("expected ';' or '.', got '" + sep.text + "'");
    }
  }
  return graph;
}

}  // namespace mtp2skill::rdf
