#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace reprolint {

enum class TokenKind {
  Identifier,  // names, keywords and `backquoted` names
  String,      // value holds the decoded contents
  Number,
  Operator,    // "::", ":::", "<-", "=", "$", ...
  LParen,
  RParen,
  LBracket,  // "[" or "[["
  RBracket,
  LBrace,
  RBrace,
  Comma,
  Semicolon,
  Newline,
  Comment,
};

struct Token {
  TokenKind kind;
  std::string text;  // source text; decoded contents for strings
  int line = 1;      // 1-based, in the numbering of the input
  int column = 0;    // 0-based byte offset in the line

  bool is(TokenKind k, std::string_view t) const { return kind == k && text == t; }
};

/// A line of code with its line number in the original file.
struct CodeLine {
  std::string text;
  int number;

  bool operator==(const CodeLine&) const = default;
};

struct LexResult {
  std::vector<Token> tokens;
  bool unterminated_string = false;
};

/// Tokenizes R source. Line numbers come from `lines`; gaps in the
/// numbering (e.g. between R Markdown chunks) are preserved.
LexResult lex_r(const std::vector<CodeLine>& lines);

/// Convenience for a whole script whose lines are numbered from 1.
LexResult lex_r(std::string_view source);

std::vector<CodeLine> split_lines(std::string_view source);

}  // namespace reprolint
