#include "idjt/model_io.hpp"

#include <charconv>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

#include "idjt/error.hpp"

namespace idjt {
namespace {

struct Token {
  std::string_view text;
  std::size_t line;
  std::size_t column;
};

using Line = std::vector<Token>;

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    ++line_no;
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    if (auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    Line tokens;
    std::size_t i = 0;
    auto is_space = [](char c) {
      return c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v';
    };
    while (i < line.size()) {
      while (i < line.size() && is_space(line[i])) ++i;
      if (i >= line.size()) break;
      std::size_t start = i;
      if (line[i] == ':') {
        ++i;
      } else {
        while (i < line.size() && !is_space(line[i]) && line[i] != ':') ++i;
      }
      tokens.push_back({line.substr(start, i - start), line_no, start + 1});
    }
    if (!tokens.empty()) lines.push_back(std::move(tokens));
    if (end == text.size()) break;
    pos = end + 1;
  }
  return lines;
}

[[noreturn]] void fail(const Token& t, const std::string& what) {
  throw SyntaxError(t.line, t.column, what);
}

bool is_keyword(std::string_view s) {
  static const std::set<std::string_view> kw = {
      "chance", "decision", "cpt", "utility", "states",
      "stage",  "index",    "given", "over",  ":"};
  return kw.contains(s);
}

int parse_int(const Token& t) {
  int value = 0;
  auto [ptr, ec] =
      std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
  if (ec != std::errc() || ptr != t.text.data() + t.text.size()) {
    fail(t, "expected an integer, found '" + std::string(t.text) + "'");
  }
  return value;
}

double parse_double(const Token& t) {
  double value = 0.0;
  auto [ptr, ec] =
      std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
  if (ec != std::errc() || ptr != t.text.data() + t.text.size()) {
    fail(t, "expected a number, found '" + std::string(t.text) + "'");
  }
  return value;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : lines_(tokenize(text)) {}

  InfluenceDiagram run() {
    for (const auto& line : lines_) {
      const auto kw = line.front().text;
      if (kw == "chance" || kw == "decision") {
        declaration(line);
      } else if (kw != "cpt" && kw != "utility") {
        fail(line.front(), "unknown statement '" + std::string(kw) + "'");
      }
    }
    for (const auto& line : lines_) {
      const auto kw = line.front().text;
      if (kw == "cpt") {
        cpt(line);
      } else if (kw == "utility") {
        utility(line);
      }
    }
    for (const auto& v : spec_.variables) {
      if (v.kind == VarKind::chance && !cpt_seen_.contains(v.name)) {
        const Token& t = declared_at_.at(v.name);
        fail(t, "chance variable '" + v.name + "' has no cpt");
      }
    }
    try {
      return spec_.build();
    } catch (const ArgumentError& e) {
      // Everything build() checks has been checked above with positions.
      throw SyntaxError(1, 1, e.what());
    }
  }

 private:
  std::string name_token(const Token& t) {
    if (is_keyword(t.text)) {
      fail(t, "expected a name, found keyword '" + std::string(t.text) + "'");
    }
    return std::string(t.text);
  }

  const Token& at(const Line& line, std::size_t i, const char* expected) {
    if (i >= line.size()) {
      const Token& last = line.back();
      throw SyntaxError(last.line, last.column + last.text.size(),
                        std::string("expected ") + expected +
                            " before end of line");
    }
    return line[i];
  }

  void expect(const Line& line, std::size_t i, std::string_view word) {
    const Token& t = at(line, i, std::string(word).c_str());
    if (t.text != word) {
      fail(t, "expected '" + std::string(word) + "', found '" +
                  std::string(t.text) + "'");
    }
  }

  void declaration(const Line& line) {
    const bool is_chance = line.front().text == "chance";
    const Token& name_tok = at(line, 1, "a variable name");
    std::string name = name_token(name_tok);
    if (declared_at_.contains(name)) {
      fail(name_tok, "duplicate variable '" + name + "'");
    }
    expect(line, 2, "states");
    const char* closing = is_chance ? "stage" : "index";
    std::vector<std::string> states;
    std::set<std::string_view> labels;
    std::size_t i = 3;
    for (; i < line.size() && line[i].text != closing; ++i) {
      if (!labels.insert(line[i].text).second) {
        fail(line[i], "state '" + std::string(line[i].text) +
                          "' listed twice for '" + name + "'");
      }
      states.push_back(name_token(line[i]));
    }
    if (states.empty()) fail(at(line, 3, "a state label"), "no states given");
    expect(line, i, closing);
    const Token& k_tok = at(line, i + 1, "an integer");
    const int k = parse_int(k_tok);
    if (is_chance && k < 0) fail(k_tok, "stage must be >= 0");
    if (!is_chance && k < 1) fail(k_tok, "decision index must be >= 1");
    if (i + 2 < line.size()) {
      fail(line[i + 2], "unexpected '" + std::string(line[i + 2].text) + "'");
    }
    declared_at_.emplace(name, name_tok);
    if (is_chance) {
      spec_.chance(name, std::move(states), k);
    } else {
      spec_.decision(name, std::move(states), k);
    }
    cards_[name] = spec_.variables.back().states.size();
    kinds_[name] = spec_.variables.back().kind;
  }

  std::string reference(const Token& t) {
    std::string name = name_token(t);
    if (!declared_at_.contains(name)) {
      fail(t, "undeclared variable '" + name + "'");
    }
    return name;
  }

  // Reads `: v1 v2 ...` starting at `i` and checks the count.
  std::vector<double> values(const Line& line, std::size_t i,
                             std::size_t expected, const std::string& what) {
    expect(line, i, ":");
    std::vector<double> out;
    for (std::size_t j = i + 1; j < line.size(); ++j) {
      out.push_back(parse_double(line[j]));
    }
    if (out.size() != expected) {
      const Token& t = out.empty() ? line[i] : line[i + 1];
      fail(t, what + ": expected " + std::to_string(expected) +
                  " values, got " + std::to_string(out.size()));
    }
    return out;
  }

  void cpt(const Line& line) {
    const Token& child_tok = at(line, 1, "a variable name");
    std::string child = reference(child_tok);
    if (kinds_.at(child) == VarKind::decision) {
      fail(child_tok, "decision '" + child + "' cannot have a cpt");
    }
    if (!cpt_seen_.insert(child).second) {
      fail(child_tok, "second cpt for '" + child + "'");
    }
    std::vector<std::string> parents;
    std::size_t cells = cards_.at(child);
    std::size_t i = 2;
    if (i < line.size() && line[i].text == "given") {
      std::set<std::string> seen;
      for (++i; i < line.size() && line[i].text != ":"; ++i) {
        std::string p = reference(line[i]);
        if (p == child || !seen.insert(p).second) {
          fail(line[i], "variable '" + p + "' repeated in cpt of '" + child +
                            "'");
        }
        cells *= cards_.at(p);
        parents.push_back(std::move(p));
      }
      if (parents.empty()) fail(line[2], "'given' without parents");
    }
    auto vals = values(line, i, cells, "cpt " + child);
    spec_.cpt(child, std::move(parents), std::move(vals));
  }

  void utility(const Line& line) {
    const Token& name_tok = at(line, 1, "a utility name");
    std::string name = name_token(name_tok);
    expect(line, 2, "over");
    std::vector<std::string> over;
    std::set<std::string> seen;
    std::size_t cells = 1;
    std::size_t i = 3;
    for (; i < line.size() && line[i].text != ":"; ++i) {
      std::string v = reference(line[i]);
      if (!seen.insert(v).second) {
        fail(line[i], "variable '" + v + "' repeated in utility " + name);
      }
      cells *= cards_.at(v);
      over.push_back(std::move(v));
    }
    if (over.empty()) fail(at(line, 3, "a variable"), "utility over nothing");
    auto vals = values(line, i, cells, "utility " + name);
    spec_.utility(name, std::move(over), std::move(vals));
  }

  std::vector<Line> lines_;
  ModelSpec spec_;
  std::map<std::string, Token> declared_at_;
  std::map<std::string, std::size_t> cards_;
  std::map<std::string, VarKind> kinds_;
  std::set<std::string> cpt_seen_;
};

std::string format_exact(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

InfluenceDiagram parse_model(std::string_view text) {
  return Parser(text).run();
}

std::string write_model(const InfluenceDiagram& id) {
  std::ostringstream os;
  for (const auto& v : id.variables) {
    os << (v.kind == VarKind::chance ? "chance " : "decision ") << v.name
       << " states";
    for (const auto& s : v.states) os << ' ' << s;
    os << (v.kind == VarKind::chance ? " stage " : " index ") << v.stage
       << '\n';
  }
  for (VarId v = 0; v < id.size(); ++v) {
    if (!id.cpts[v]) continue;
    os << "cpt " << id.name(v);
    if (!id.parents[v].empty()) {
      os << " given";
      for (VarId p : id.parents[v]) os << ' ' << id.name(p);
    }
    os << " :";
    std::vector<VarId> order = id.parents[v];
    order.push_back(v);
    for (double x : id.cpts[v]->layout(order)) os << ' ' << format_exact(x);
    os << '\n';
  }
  for (const auto& u : id.utilities) {
    os << "utility " << u.name << " over";
    for (VarId v : u.table.domain().vars()) os << ' ' << id.name(v);
    os << " :";
    for (double x : u.table.values()) os << ' ' << format_exact(x);
    os << '\n';
  }
  return os.str();
}

}  // namespace idjt
