#include "reprolint/scanner.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <omp.h>

#include "reprolint/paths.hpp"

namespace reprolint {

namespace {

bool valid_utf8(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size()) {
    const auto c = static_cast<unsigned char>(s[i]);
    if (c == 0) return false;
    std::size_t extra;
    if (c < 0x80) {
      extra = 0;
    } else if ((c & 0xE0) == 0xC0 && c >= 0xC2) {
      extra = 1;
    } else if ((c & 0xF0) == 0xE0) {
      extra = 2;
    } else if ((c & 0xF8) == 0xF0 && c <= 0xF4) {
      extra = 3;
    } else {
      return false;
    }
    if (extra && i + extra >= s.size()) return false;
    for (std::size_t k = 1; k <= extra; ++k) {
      if ((static_cast<unsigned char>(s[i + k]) & 0xC0) != 0x80) return false;
    }
    i += extra + 1;
  }
  return true;
}

std::size_t code_points(std::string_view s) {
  return static_cast<std::size_t>(std::count_if(
      s.begin(), s.end(), [](char c) { return (static_cast<unsigned char>(c) & 0xC0) != 0x80; }));
}

std::size_t leading_backticks(std::string_view s) {
  std::size_t n = 0;
  while (n < s.size() && s[n] == '`') ++n;
  return n;
}

std::string_view ltrim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  return s;
}

bool blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](char c) { return c == ' ' || c == '\t' || c == '\r'; });
}

// ```{r}, ```{r label}, ```{R, echo=FALSE}
bool opens_r_chunk(std::string_view info) {
  info = ltrim(info);
  if (info.size() < 3 || info[0] != '{' || (info[1] != 'r' && info[1] != 'R')) return false;
  const char after = info[2];
  return after == '}' || after == ' ' || after == ',' || after == '\t';
}

bool valid_package_name(std::string_view s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s.front()))) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '.';
  });
}

bool is_trivia(const Token& t) {
  return t.kind == TokenKind::Newline || t.kind == TokenKind::Comment;
}

struct Argument {
  std::string name;    // empty for positional
  std::size_t begin;   // value token range [begin, end)
  std::size_t end;
};

// Splits the arguments of the call whose '(' is at `lparen`. Returns the
// index of the matching ')' (or tokens.size()) through `close`.
std::vector<Argument> split_arguments(const std::vector<Token>& toks, std::size_t lparen,
                                      std::size_t& close) {
  std::vector<Argument> args;
  int depth = 0;
  std::size_t arg_start = lparen + 1;
  auto finish = [&](std::size_t end) {
    if (end == arg_start) return;
    Argument a{{}, arg_start, end};
    if (end - arg_start >= 2 &&
        (toks[arg_start].kind == TokenKind::Identifier || toks[arg_start].kind == TokenKind::String) &&
        toks[arg_start + 1].is(TokenKind::Operator, "=")) {
      a.name = toks[arg_start].text;
      a.begin = arg_start + 2;
    }
    args.push_back(a);
  };
  std::size_t i = lparen + 1;
  for (; i < toks.size(); ++i) {
    const Token& t = toks[i];
    switch (t.kind) {
      case TokenKind::LParen:
      case TokenKind::LBracket:
      case TokenKind::LBrace: ++depth; break;
      case TokenKind::RBracket:
      case TokenKind::RBrace: --depth; break;
      case TokenKind::RParen:
        if (depth == 0) {
          finish(i);
          close = i;
          return args;
        }
        --depth;
        break;
      case TokenKind::Comma:
        if (depth == 0) {
          finish(i);
          arg_start = i + 1;
        }
        break;
      default: break;
    }
  }
  finish(i);
  close = toks.size();
  return args;
}

const Argument* path_argument(const std::vector<Argument>& args, const FunctionEntry& entry) {
  for (const auto& a : args) {
    if (!a.name.empty() && a.name == entry.path_argument) return &a;
  }
  if (entry.path_position <= 0) return nullptr;
  int seen = 0;
  for (const auto& a : args) {
    if (!a.name.empty()) continue;
    if (++seen == entry.path_position) return &a;
  }
  return nullptr;
}

std::string source_text(const std::vector<Token>& toks, std::size_t begin, std::size_t end) {
  std::string out;
  for (std::size_t i = begin; i < end; ++i) {
    if (!out.empty()) out += ' ';
    out += toks[i].kind == TokenKind::String ? "\"" + toks[i].text + "\"" : toks[i].text;
  }
  return out;
}

struct EvaluatedPath {
  std::string literal;
  bool root_anchored = false;
};

// A string literal, or here()/file.path() over string literals.
std::optional<EvaluatedPath> evaluate_path(const std::vector<Token>& toks, std::size_t begin,
                                           std::size_t end) {
  if (end == begin + 1 && toks[begin].kind == TokenKind::String) {
    return EvaluatedPath{toks[begin].text, false};
  }
  std::size_t call = begin;
  std::string fn;
  if (end - begin >= 4 && toks[begin].kind == TokenKind::Identifier &&
      toks[begin + 1].kind == TokenKind::Operator &&
      (toks[begin + 1].text == "::" || toks[begin + 1].text == ":::") &&
      toks[begin + 2].kind == TokenKind::Identifier) {
    if (toks[begin].text == "here" && toks[begin + 2].text == "here") fn = "here";
    if (toks[begin].text == "base" && toks[begin + 2].text == "file.path") fn = "file.path";
    call = begin + 3;
  } else if (end - begin >= 2 && toks[begin].kind == TokenKind::Identifier) {
    if (toks[begin].text == "here" || toks[begin].text == "file.path") fn = toks[begin].text;
    call = begin + 1;
  }
  if (fn.empty() || toks[call].kind != TokenKind::LParen) return std::nullopt;
  std::size_t close = 0;
  auto args = split_arguments(toks, call, close);
  if (close + 1 != end || args.empty()) return std::nullopt;
  EvaluatedPath out{{}, fn == "here"};
  for (const auto& a : args) {
    if (!a.name.empty() || a.end != a.begin + 1 || toks[a.begin].kind != TokenKind::String) {
      return std::nullopt;
    }
    if (!out.literal.empty()) out.literal += '/';
    out.literal += toks[a.begin].text;
  }
  return out;
}

class FactCollector {
 public:
  FactCollector(ScriptFacts& facts, const FunctionTable& table, std::vector<Token> toks)
      : facts_(facts), table_(table), toks_(std::move(toks)) {}

  void run() {
    for (std::size_t i = 0; i < toks_.size(); ++i) {
      if (toks_[i].kind != TokenKind::Identifier) continue;
      if (i > 0 && toks_[i - 1].kind == TokenKind::Operator) {
        const auto& prev = toks_[i - 1].text;
        if (prev == "$" || prev == "@" || prev == "::" || prev == ":::") continue;
      }
      if (i + 2 < toks_.size() && toks_[i + 1].kind == TokenKind::Operator &&
          (toks_[i + 1].text == "::" || toks_[i + 1].text == ":::") &&
          toks_[i + 2].kind == TokenKind::Identifier) {
        if (valid_package_name(toks_[i].text)) {
          add_package(toks_[i].text, LoadMechanism::NamespaceColon, toks_[i].line);
        }
        if (i + 3 < toks_.size() && toks_[i + 3].kind == TokenKind::LParen) {
          call(toks_[i].text, toks_[i + 2].text, i + 3, toks_[i].line);
        }
        continue;
      }
      if (i + 1 < toks_.size() && toks_[i + 1].kind == TokenKind::LParen) {
        call({}, toks_[i].text, i + 1, toks_[i].line);
      }
    }
  }

 private:
  void add_package(const std::string& name, LoadMechanism mechanism, int line) {
    auto key = std::make_pair(name, mechanism);
    if (seen_packages_.insert(key).second) facts_.packages.push_back({name, mechanism, line});
  }

  void call(const std::string& package, const std::string& name, std::size_t lparen, int line) {
    const FunctionEntry* entry = table_.match(package, name);
    if (!entry) return;
    switch (entry->cls) {
      case FunctionClass::Random: facts_.randomness_calls.push_back({entry->qualified(), line}); break;
      case FunctionClass::Seed: facts_.seed_calls.push_back(line); break;
      case FunctionClass::Chdir: facts_.chdir_calls.push_back(line); break;
      case FunctionClass::Load: load(*entry, lparen, line); break;
      case FunctionClass::Read:
      case FunctionClass::Write: io(*entry, lparen, line); break;
    }
  }

  void load(const FunctionEntry& entry, std::size_t lparen, int line) {
    std::size_t close = 0;
    auto args = split_arguments(toks_, lparen, close);
    bool character_only = false;
    const Argument* target = nullptr;
    for (const auto& a : args) {
      if (a.name == "character.only") {
        character_only = a.end == a.begin + 1 && (toks_[a.begin].text == "TRUE" || toks_[a.begin].text == "T");
      } else if (a.name == "package" || (a.name.empty() && !target)) {
        target = &a;
      }
    }
    if (!target || target->end != target->begin + 1) return;
    const Token& t = toks_[target->begin];
    if (t.kind == TokenKind::Identifier && character_only) return;
    if (t.kind != TokenKind::Identifier && t.kind != TokenKind::String) return;
    if (!valid_package_name(t.text)) return;
    add_package(t.text, entry.name == "require" ? LoadMechanism::Require : LoadMechanism::Library,
                line);
  }

  void io(const FunctionEntry& entry, std::size_t lparen, int line) {
    std::size_t close = 0;
    auto args = split_arguments(toks_, lparen, close);
    const Argument* arg = path_argument(args, entry);
    if (!arg || arg->begin == arg->end) return;
    const IoKind io = entry.cls == FunctionClass::Write ? IoKind::Write : IoKind::Read;
    if (auto value = evaluate_path(toks_, arg->begin, arg->end)) {
      if (value->literal.empty()) return;
      facts_.path_refs.push_back(
          PathRef{value->literal, entry.qualified(), line, io, {}, value->root_anchored});
    } else {
      facts_.path_refs.push_back(PathRef{{}, entry.qualified(), line, IoKind::Unknown,
                                         source_text(toks_, arg->begin, arg->end), false});
    }
  }

  ScriptFacts& facts_;
  const FunctionTable& table_;
  std::vector<Token> toks_;
  std::set<std::pair<std::string, LoadMechanism>> seen_packages_;
};

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<const FileRecord*> scannable(const ProjectDir& project) {
  std::vector<const FileRecord*> out;
  for (const auto& f : project.files) {
    if (script_kind(f.rel_path)) out.push_back(&f);
  }
  return out;
}

void scan_one(const ProjectDir& project, const FileRecord& file, const FunctionTable& table,
              std::optional<ScriptFacts>& facts, std::optional<ScriptScanError>& error) {
  try {
    facts = scan_script(file.rel_path, read_file(project.root / file.rel_path), table);
  } catch (const std::exception& e) {
    error = ScriptScanError{file.rel_path, e.what()};
  }
}

ProjectFacts collect(std::vector<std::optional<ScriptFacts>>& facts,
                     std::vector<std::optional<ScriptScanError>>& errors) {
  ProjectFacts out;
  for (std::size_t i = 0; i < facts.size(); ++i) {
    if (facts[i]) out.scripts.push_back(std::move(*facts[i]));
    if (errors[i]) out.errors.push_back(std::move(*errors[i]));
  }
  return out;
}

}  // namespace

std::optional<ScriptKind> script_kind(std::string_view rel_path) {
  const std::string ext = file_extension(rel_path);
  if (ext == "r") return ScriptKind::RScript;
  if (ext == "rmd") return ScriptKind::RMarkdown;
  return std::nullopt;
}

CodeExtraction extract_code(std::string_view source, ScriptKind kind) {
  CodeExtraction out;
  auto lines = split_lines(source);
  if (kind == ScriptKind::RScript) {
    out.lines = std::move(lines);
    return out;
  }

  enum class State { Text, OtherFence, Chunk } state = State::Text;
  std::size_t fence = 0;
  int chunk_start = 0;
  std::vector<CodeLine> chunk;
  for (auto& line : lines) {
    const std::string_view body = ltrim(line.text);
    const std::size_t ticks = leading_backticks(body);
    switch (state) {
      case State::Text:
        if (ticks >= 3) {
          fence = ticks;
          if (opens_r_chunk(body.substr(ticks))) {
            state = State::Chunk;
            chunk_start = line.number;
            chunk.clear();
          } else {
            state = State::OtherFence;
          }
        }
        break;
      case State::OtherFence:
        if (ticks >= fence && blank(body.substr(ticks))) state = State::Text;
        break;
      case State::Chunk:
        if (ticks >= fence && blank(body.substr(ticks))) {
          state = State::Text;
          for (auto& c : chunk) out.lines.push_back(std::move(c));
          chunk.clear();
        } else if (!body.starts_with("#|")) {
          chunk.push_back(std::move(line));
        }
        break;
    }
  }
  if (state == State::Chunk) {
    out.warnings.push_back("unterminated code chunk starting at line " +
                           std::to_string(chunk_start));
  }
  return out;
}

std::string_view to_string(LoadMechanism m) {
  switch (m) {
    case LoadMechanism::Library: return "library";
    case LoadMechanism::Require: return "require";
    case LoadMechanism::NamespaceColon: return "namespace-colon";
  }
  return "library";
}

std::string_view to_string(IoKind io) {
  switch (io) {
    case IoKind::Read: return "read";
    case IoKind::Write: return "write";
    case IoKind::Unknown: return "unknown";
  }
  return "unknown";
}

std::optional<LoadMechanism> parse_load_mechanism(std::string_view s) {
  for (auto m : {LoadMechanism::Library, LoadMechanism::Require, LoadMechanism::NamespaceColon}) {
    if (to_string(m) == s) return m;
  }
  return std::nullopt;
}

std::optional<IoKind> parse_io_kind(std::string_view s) {
  for (auto io : {IoKind::Read, IoKind::Write, IoKind::Unknown}) {
    if (to_string(io) == s) return io;
  }
  return std::nullopt;
}

std::vector<LintFinding> lint_code(const std::vector<CodeLine>& lines, const LexResult& lexed) {
  std::vector<LintFinding> out;
  std::map<int, const std::string*> text_of;
  for (const auto& l : lines) {
    text_of[l.number] = &l.text;
    if (code_points(l.text) > kMaxLineLength) out.push_back({std::string(kLintLineLength), l.number});
    if (!l.text.empty() && (l.text.back() == ' ' || l.text.back() == '\t')) {
      out.push_back({std::string(kLintTrailingWhitespace), l.number});
    }
  }

  int depth = 0;  // parentheses and brackets only; braces keep "top level"
  for (const auto& t : lexed.tokens) {
    switch (t.kind) {
      case TokenKind::LParen:
      case TokenKind::LBracket: ++depth; break;
      case TokenKind::RParen:
      case TokenKind::RBracket: depth = std::max(0, depth - 1); break;
      case TokenKind::Operator:
        if (t.text == "=" && depth == 0) out.push_back({std::string(kLintEqualsAssignment), t.line});
        break;
      case TokenKind::Comma: {
        auto it = text_of.find(t.line);
        if (it == text_of.end()) break;
        const std::string& text = *it->second;
        const auto next = static_cast<std::size_t>(t.column) + 1;
        if (next < text.size()) {
          const char c = text[next];
          if (c != ' ' && c != '\t' && c != ')' && c != ']' && c != ',') {
            out.push_back({std::string(kLintCommas), t.line});
          }
        }
        break;
      }
      default: break;
    }
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const LintFinding& a, const LintFinding& b) { return a.line < b.line; });
  return out;
}

ScriptFacts scan_script(std::string_view script, std::string_view content,
                        const FunctionTable& table) {
  if (!valid_utf8(content)) throw ScriptDecodeError();

  ScriptFacts facts;
  facts.script = std::string(script);
  const ScriptKind kind = script_kind(script).value_or(ScriptKind::RScript);
  CodeExtraction code = extract_code(content, kind);
  facts.warnings = std::move(code.warnings);

  LexResult lexed = lex_r(code.lines);
  if (lexed.unterminated_string) facts.warnings.push_back("unterminated string literal");
  facts.lint_findings = lint_code(code.lines, lexed);

  std::vector<Token> significant;
  significant.reserve(lexed.tokens.size());
  for (auto& t : lexed.tokens) {
    if (!is_trivia(t)) significant.push_back(std::move(t));
  }
  FactCollector(facts, table, std::move(significant)).run();
  return facts;
}

std::string reference_base(std::string_view script) {
  if (script_kind(script) != ScriptKind::RMarkdown) return {};
  auto slash = script.rfind('/');
  return slash == std::string_view::npos ? std::string() : std::string(script.substr(0, slash));
}

std::optional<std::string> resolve_ref(std::string_view script, const PathRef& ref) {
  if (!ref.resolved() || is_url(ref.literal)) return std::nullopt;
  if (path_kind(ref.literal) == PathKind::Absolute) return std::nullopt;
  return normalize_within(ref.literal, ref.root_anchored ? std::string() : reference_base(script));
}

ProjectFacts scan_scripts(const ProjectDir& project, const FunctionTable& table) {
  const auto files = scannable(project);
  const auto n = static_cast<std::ptrdiff_t>(files.size());
  std::vector<std::optional<ScriptFacts>> facts(files.size());
  std::vector<std::optional<ScriptScanError>> errors(files.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    scan_one(project, *files[static_cast<std::size_t>(i)], table, facts[static_cast<std::size_t>(i)],
             errors[static_cast<std::size_t>(i)]);
  }
  return collect(facts, errors);
}

ProjectFacts scan_scripts_serial(const ProjectDir& project, const FunctionTable& table) {
  const auto files = scannable(project);
  std::vector<std::optional<ScriptFacts>> facts(files.size());
  std::vector<std::optional<ScriptScanError>> errors(files.size());
  for (std::size_t i = 0; i < files.size(); ++i) {
    scan_one(project, *files[i], table, facts[i], errors[i]);
  }
  return collect(facts, errors);
}

}  // namespace reprolint
