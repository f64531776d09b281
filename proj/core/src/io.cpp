#include "smti/io.hpp"

#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

namespace smti {

namespace {

struct Token {
  std::string_view text;
  int column;  // 1-based
};

// Splits a comment-stripped line on whitespace; '(', ')' and ':' are
// tokens of their own.
std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    const char c = line[i];
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
    } else if (c == '(' || c == ')' || c == ':') {
      out.push_back({line.substr(i, 1), static_cast<int>(i) + 1});
      ++i;
    } else {
      std::size_t j = i;
      while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r' &&
             line[j] != '(' && line[j] != ')' && line[j] != ':') {
        ++j;
      }
      out.push_back({line.substr(i, j - i), static_cast<int>(i) + 1});
      i = j;
    }
  }
  return out;
}

struct Line {
  int number;
  std::vector<Token> tokens;
};

std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> out;
  int number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    std::string_view line = text.substr(pos, end - pos);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto tokens = tokenize(line);
    if (!tokens.empty()) out.push_back({number, std::move(tokens)});
    if (end == text.size()) break;
    pos = end + 1;
  }
  return out;
}

long parse_number(const Line& line, const Token& tok) {
  long value = 0;
  auto [ptr, ec] = std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(), value);
  if (ec != std::errc{} || ptr != tok.text.data() + tok.text.size()) {
    throw ParseError(line.number, tok.column, "expected a number, got '" + std::string(tok.text) + "'");
  }
  return value;
}

long parse_count(const Line& line, std::string_view keyword) {
  if (line.tokens.size() != 2 || line.tokens[0].text != keyword) {
    throw ParseError(line.number, line.tokens[0].column,
                     "expected '" + std::string(keyword) + " <n>'");
  }
  const long n = parse_number(line, line.tokens[1]);
  if (n < 0) throw ParseError(line.number, line.tokens[1].column, "count must be non-negative");
  return n;
}

int parse_id(const Line& line, const Token& tok, long limit, const char* what) {
  const long id = parse_number(line, tok);
  if (id < 1 || id > limit) {
    throw ParseError(line.number, tok.column,
                     std::string(what) + " id " + std::string(tok.text) + " out of range [1, " +
                         std::to_string(limit) + "]");
  }
  return static_cast<int>(id - 1);
}

// Parses the entries after "m <id>:" into tie groups of 0-based ids.
std::vector<std::vector<int>> parse_entries(const Line& line, std::size_t first, long limit,
                                            const char* what) {
  std::vector<std::vector<int>> groups;
  std::optional<std::vector<int>> open;
  int open_column = 0;
  std::vector<bool> seen(static_cast<std::size_t>(limit), false);
  for (std::size_t i = first; i < line.tokens.size(); ++i) {
    const Token& tok = line.tokens[i];
    if (tok.text == "(") {
      if (open) throw ParseError(line.number, tok.column, "nested '('");
      open.emplace();
      open_column = tok.column;
    } else if (tok.text == ")") {
      if (!open) throw ParseError(line.number, tok.column, "unmatched ')'");
      if (open->empty()) throw ParseError(line.number, tok.column, "empty tie group");
      groups.push_back(std::move(*open));
      open.reset();
    } else if (tok.text == ":") {
      throw ParseError(line.number, tok.column, "unexpected ':'");
    } else {
      const int id = parse_id(line, tok, limit, what);
      if (seen[id]) {
        throw ParseError(line.number, tok.column,
                         "duplicate entry " + std::string(tok.text) + " in list");
      }
      seen[id] = true;
      if (open) {
        open->push_back(id);
      } else {
        groups.push_back({id});
      }
    }
  }
  if (open) throw ParseError(line.number, open_column, "unterminated '('");
  return groups;
}

}  // namespace

ParseError::ParseError(int line, int column, const std::string& what)
    : InvalidInstance("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                      what),
      line_(line),
      column_(column) {}

Instance parse_instance(std::string_view text) {
  const auto lines = split_lines(text);
  if (lines.size() < 2) {
    throw ParseError(lines.empty() ? 1 : lines.back().number + 1, 1,
                     "expected 'men <n>' and 'women <m>' header lines");
  }
  const long n_men = parse_count(lines[0], "men");
  const long n_women = parse_count(lines[1], "women");

  std::optional<int> tie_cap;
  std::vector<std::optional<std::vector<std::vector<int>>>> men(n_men);
  std::vector<std::optional<std::vector<std::vector<int>>>> women(n_women);
  bool lists_started = false;

  for (std::size_t i = 2; i < lines.size(); ++i) {
    const Line& line = lines[i];
    const Token& head = line.tokens[0];
    if (head.text == "tiecap") {
      if (lists_started) throw ParseError(line.number, head.column, "'tiecap' must precede the lists");
      if (tie_cap) throw ParseError(line.number, head.column, "repeated 'tiecap'");
      if (line.tokens.size() != 2) throw ParseError(line.number, head.column, "expected 'tiecap <L>'");
      const long cap = parse_number(line, line.tokens[1]);
      if (cap < 1) throw ParseError(line.number, line.tokens[1].column, "tie cap must be at least 1");
      tie_cap = static_cast<int>(cap);
      continue;
    }
    const bool is_man = head.text == "m";
    if (!is_man && head.text != "w") {
      throw ParseError(line.number, head.column, "unexpected '" + std::string(head.text) + "'");
    }
    lists_started = true;
    if (line.tokens.size() < 3 || line.tokens[2].text != ":") {
      throw ParseError(line.number, head.column,
                       std::string("expected '") + (is_man ? "m" : "w") + " <id>: <entries>'");
    }
    const int id = parse_id(line, line.tokens[1], is_man ? n_men : n_women, is_man ? "man" : "woman");
    auto& slot = is_man ? men[id] : women[id];
    if (slot) {
      throw ParseError(line.number, line.tokens[1].column,
                       std::string("repeated list for ") + (is_man ? "man " : "woman ") +
                           std::string(line.tokens[1].text));
    }
    slot = parse_entries(line, 3, is_man ? n_women : n_men, is_man ? "woman" : "man");
  }

  const int end_line = lines.back().number + 1;
  std::vector<PrefList> men_lists;
  std::vector<PrefList> women_lists;
  men_lists.reserve(n_men);
  women_lists.reserve(n_women);
  for (long m = 0; m < n_men; ++m) {
    if (!men[m]) throw ParseError(end_line, 1, "missing list for man " + std::to_string(m + 1));
    men_lists.emplace_back(std::move(*men[m]));
  }
  for (long w = 0; w < n_women; ++w) {
    if (!women[w]) throw ParseError(end_line, 1, "missing list for woman " + std::to_string(w + 1));
    women_lists.emplace_back(std::move(*women[w]));
  }
  return Instance(std::move(men_lists), std::move(women_lists), tie_cap);
}

namespace {

void write_list(std::ostringstream& os, const PrefList& list) {
  for (const auto& g : list.groups()) {
    os << ' ';
    if (g.size() == 1) {
      os << g[0] + 1;
      continue;
    }
    os << '(';
    for (std::size_t i = 0; i < g.size(); ++i) os << (i ? " " : "") << g[i] + 1;
    os << ')';
  }
}

}  // namespace

std::string serialize_instance(const Instance& inst) {
  std::ostringstream os;
  os << "men " << inst.n_men() << "\nwomen " << inst.n_women() << '\n';
  if (inst.tie_cap() > std::max(1, inst.max_tie())) os << "tiecap " << inst.tie_cap() << '\n';
  for (int m = 0; m < inst.n_men(); ++m) {
    os << "m " << m + 1 << ':';
    write_list(os, inst.man(m));
    os << '\n';
  }
  for (int w = 0; w < inst.n_women(); ++w) {
    os << "w " << w + 1 << ':';
    write_list(os, inst.woman(w));
    os << '\n';
  }
  return os.str();
}

Matching parse_matching(std::string_view text, const Instance& inst) {
  Matching out(inst.n_men(), inst.n_women());
  for (const Line& line : split_lines(text)) {
    if (line.tokens.size() != 2) {
      throw ParseError(line.number, line.tokens[0].column, "expected '<man> <woman>'");
    }
    const int m = parse_id(line, line.tokens[0], inst.n_men(), "man");
    const int w = parse_id(line, line.tokens[1], inst.n_women(), "woman");
    out.add(m, w);
  }
  validate(inst, out);
  return out;
}

std::string serialize_matching(const Matching& m) {
  std::ostringstream os;
  for (auto [a, b] : m.pairs()) os << a + 1 << ' ' << b + 1 << '\n';
  return os.str();
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace smti
