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

#pragma once

#include <map>
#include <string>
#include <string_view>

#include "mtp2skill/error.hpp"
#include "mtp2skill/rdf_graph.hpp"

// Tokenizer shared by the Turtle reader and the BGP pattern parser.
namespace mtp2skill::rdf::detail {

struct Token {
  enum class Type { End, IriRef, PName, String, BlankNode, Var, Number, Word, Punct, LangTag, Caret };
  Type type = Type::End;
  std::string text;    // IRI, lexical form, label, variable name, word or punct
  std::string prefix;  // PName only
  std::size_t line = 0;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next();
  Token peek();
  std::size_t line() const noexcept { return line_; }

  [[noreturn]] void fail(const std::string& why) const {
    throw Error(ErrorCode::TurtleSyntax, "line " + std::to_string(line_) + ": " + why);
  }

 private:
  void skip_space();
  Token lex();
  std::string read_string(char quote);
  std::string read_name();

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  bool hasPeek_ = false;
  Token peeked_;
};

// Reads one term (after its first token has been consumed); shared
// handling of IRIs, prefixed names, literals, numbers, booleans and "a".
class TermReader {
 public:
  TermReader(Lexer& lex, const std::map<std::string, std::string>& prefixes)
      : lex_(lex), prefixes_(prefixes) {}

  Term read(const Token& first);
  std::string expand(const Token& pname) const;

 private:
  Lexer& lex_;
  const std::map<std::string, std::string>& prefixes_;
};

}  // namespace mtp2skill::rdf::detail
