#include "reprolint/lexer.hpp"

#include <array>
#include <cctype>

namespace reprolint {

namespace {

bool ident_start(unsigned char c) { return std::isalpha(c) || c == '.' || c == '_' || c >= 0x80; }
bool ident_char(unsigned char c) { return std::isalnum(c) || c == '.' || c == '_' || c >= 0x80; }

constexpr std::array<std::string_view, 15> kMultiCharOps{
    ":::", "<<-", "->>", "::", "<-", "->", "<=", ">=", "==", "!=", "&&", "||", "|>", "**", "=>"};

class Lexer {
 public:
  explicit Lexer(const std::vector<CodeLine>& lines) {
    for (std::size_t i = 0; i < lines.size(); ++i) {
      if (i) src_ += '\n';
      line_starts_.push_back(src_.size());
      src_ += lines[i].text;
      numbers_.push_back(lines[i].number);
    }
  }

  LexResult run() {
    LexResult out;
    while (pos_ < src_.size()) {
      const auto c = static_cast<unsigned char>(src_[pos_]);
      const std::size_t start = pos_;
      if (c == '\n') {
        emit(out, TokenKind::Newline, "\n", start);
        ++pos_;
        ++line_idx_;
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\f') {
        ++pos_;
      } else if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
        emit(out, TokenKind::Comment, src_.substr(start, pos_ - start), start);
      } else if ((c == 'r' || c == 'R') && pos_ + 1 < src_.size() &&
                 (src_[pos_ + 1] == '"' || src_[pos_ + 1] == '\'') && raw_string(out)) {
        // handled
      } else if (c == '"' || c == '\'') {
        quoted_string(out, static_cast<char>(c));
      } else if (c == '`') {
        backquoted(out);
      } else if (std::isdigit(c) ||
                 (c == '.' && pos_ + 1 < src_.size() &&
                  std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])))) {
        number(out);
      } else if (ident_start(c)) {
        while (pos_ < src_.size() && ident_char(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        emit(out, TokenKind::Identifier, src_.substr(start, pos_ - start), start);
      } else if (c == '(') {
        single(out, TokenKind::LParen);
      } else if (c == ')') {
        single(out, TokenKind::RParen);
      } else if (c == '[') {
        single(out, TokenKind::LBracket);
      } else if (c == ']') {
        single(out, TokenKind::RBracket);
      } else if (c == '{') {
        single(out, TokenKind::LBrace);
      } else if (c == '}') {
        single(out, TokenKind::RBrace);
      } else if (c == ',') {
        single(out, TokenKind::Comma);
      } else if (c == ';') {
        single(out, TokenKind::Semicolon);
      } else if (c == '%') {
        auto end = src_.find_first_of("%\n", pos_ + 1);
        if (end != std::string::npos && src_[end] == '%') {
          pos_ = end + 1;
        } else {
          ++pos_;
        }
        emit(out, TokenKind::Operator, src_.substr(start, pos_ - start), start);
      } else {
        operator_token(out);
      }
    }
    out.unterminated_string = unterminated_;
    return out;
  }

 private:
  void emit(LexResult& out, TokenKind kind, std::string text, std::size_t start) {
    out.tokens.push_back(Token{kind, std::move(text), numbers_.empty() ? 1 : numbers_[line_idx_],
                               static_cast<int>(start - line_starts_[line_idx_])});
  }

  void single(LexResult& out, TokenKind kind) {
    emit(out, kind, std::string(1, src_[pos_]), pos_);
    ++pos_;
  }

  void operator_token(LexResult& out) {
    const std::string_view rest = std::string_view(src_).substr(pos_);
    for (auto op : kMultiCharOps) {
      if (rest.starts_with(op)) {
        emit(out, TokenKind::Operator, std::string(op), pos_);
        pos_ += op.size();
        return;
      }
    }
    emit(out, TokenKind::Operator, std::string(1, src_[pos_]), pos_);
    ++pos_;
  }

  // Newlines inside a multi-line literal still advance the line index so
  // that later tokens keep their original numbers.
  void advance_over(std::size_t end) {
    for (; pos_ < end; ++pos_) {
      if (src_[pos_] == '\n') ++line_idx_;
    }
  }

  void quoted_string(LexResult& out, char quote) {
    const std::size_t start = pos_;
    const std::size_t start_line = line_idx_;
    std::string value;
    std::size_t i = pos_ + 1;
    bool closed = false;
    for (; i < src_.size(); ++i) {
      char ch = src_[i];
      if (ch == quote) {
        closed = true;
        break;
      }
      if (ch == '\\' && i + 1 < src_.size()) {
        char next = src_[++i];
        switch (next) {
          case 'n': value += '\n'; break;
          case 't': value += '\t'; break;
          case 'r': value += '\r'; break;
          case '0': value += '\0'; break;
          default: value += next; break;
        }
        continue;
      }
      value += ch;
    }
    if (!closed) unterminated_ = true;
    const std::size_t end = closed ? i + 1 : src_.size();
    // Token carries the line of its opening quote.
    std::size_t saved = line_idx_;
    line_idx_ = start_line;
    emit(out, TokenKind::String, std::move(value), start);
    line_idx_ = saved;
    advance_over(end);
  }

  bool raw_string(LexResult& out) {
    const std::size_t start = pos_;
    const char quote = src_[pos_ + 1];
    std::size_t i = pos_ + 2;
    std::size_t dashes = 0;
    while (i < src_.size() && src_[i] == '-') {
      ++dashes;
      ++i;
    }
    if (i >= src_.size()) return false;
    char open = src_[i];
    char close = open == '(' ? ')' : open == '[' ? ']' : open == '{' ? '}' : '\0';
    if (!close) return false;
    std::string terminator(1, close);
    terminator.append(dashes, '-');
    terminator += quote;
    const std::size_t body = i + 1;
    const std::size_t found = src_.find(terminator, body);
    const std::size_t start_line = line_idx_;
    std::string value;
    std::size_t end;
    if (found == std::string::npos) {
      unterminated_ = true;
      value = src_.substr(body);
      end = src_.size();
    } else {
      value = src_.substr(body, found - body);
      end = found + terminator.size();
    }
    std::size_t saved = line_idx_;
    line_idx_ = start_line;
    emit(out, TokenKind::String, std::move(value), start);
    line_idx_ = saved;
    advance_over(end);
    return true;
  }

  void backquoted(LexResult& out) {
    const std::size_t start = pos_;
    auto end = src_.find('`', pos_ + 1);
    if (end == std::string::npos) end = src_.size();
    emit(out, TokenKind::Identifier, src_.substr(pos_ + 1, end - pos_ - 1), start);
    advance_over(std::min(end + 1, src_.size()));
  }

  void number(LexResult& out) {
    const std::size_t start = pos_;
    if (src_.compare(pos_, 2, "0x") == 0 || src_.compare(pos_, 2, "0X") == 0) {
      pos_ += 2;
      while (pos_ < src_.size() && std::isxdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    } else {
      while (pos_ < src_.size()) {
        const auto ch = static_cast<unsigned char>(src_[pos_]);
        if (std::isdigit(ch) || ch == '.') {
          ++pos_;
        } else if ((ch == 'e' || ch == 'E') && pos_ + 1 < src_.size()) {
          ++pos_;
          if (src_[pos_] == '+' || src_[pos_] == '-') ++pos_;
        } else {
          break;
        }
      }
    }
    if (pos_ < src_.size() && (src_[pos_] == 'L' || src_[pos_] == 'i')) ++pos_;
    emit(out, TokenKind::Number, src_.substr(start, pos_ - start), start);
  }

  std::string src_;
  std::vector<std::size_t> line_starts_;
  std::vector<int> numbers_;
  std::size_t pos_ = 0;
  std::size_t line_idx_ = 0;
  bool unterminated_ = false;
};

}  // namespace

std::vector<CodeLine> split_lines(std::string_view source) {
  std::vector<CodeLine> lines;
  int number = 1;
  std::size_t start = 0;
  while (start <= source.size()) {
    auto nl = source.find('\n', start);
    if (nl == std::string_view::npos) {
      if (start < source.size()) lines.push_back({std::string(source.substr(start)), number});
      break;
    }
    std::string_view line = source.substr(start, nl - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back({std::string(line), number++});
    start = nl + 1;
  }
  for (auto& l : lines) {
    if (!l.text.empty() && l.text.back() == '\r') l.text.pop_back();
  }
  return lines;
}

LexResult lex_r(const std::vector<CodeLine>& lines) {
  return Lexer(lines).run();
}

LexResult lex_r(std::string_view source) {
  return lex_r(split_lines(source));
}

}  // namespace reprolint
