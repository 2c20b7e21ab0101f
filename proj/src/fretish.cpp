#include "fret2mtl/fretish.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <stdexcept>

#include "fret2mtl/formula_text.hpp"

namespace fret2mtl {

namespace {

enum class Tok { Word, Number, Sym, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

bool ieq(std::string_view a, std::string_view b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) ==
                  std::tolower(static_cast<unsigned char>(y));
         });
}

std::vector<Token> lex(std::string_view s) {
  static constexpr std::array<std::string_view, 11> kSymbols = {
      "<->", "->", "<=", ">=", "==", "!=", "<", ">", "=", "!", "&"};
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const unsigned char c = static_cast<unsigned char>(s[i]);
    if (std::isspace(c)) {
      ++i;
      continue;
    }
    if (std::isalpha(c) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      out.push_back({Tok::Word, std::string(s.substr(i, j - i)), i});
      i = j;
      continue;
    }
    if (std::isdigit(c)) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      // A decimal point only belongs to the number when a digit follows it.
      if (j + 1 < s.size() && s[j] == '.' && std::isdigit(static_cast<unsigned char>(s[j + 1]))) {
        ++j;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      }
      out.push_back({Tok::Number, std::string(s.substr(i, j - i)), i});
      i = j;
      continue;
    }
    bool matched = false;
    for (std::string_view sym : kSymbols) {
      if (s.substr(i).starts_with(sym)) {
        out.push_back({Tok::Sym, std::string(sym), i});
        i += sym.size();
        matched = true;
        break;
      }
    }
    if (matched) continue;
    if (c == '|' || c == '(' || c == ')' || c == ',' || c == '.') {
      out.push_back({Tok::Sym, std::string(1, s[i]), i});
      ++i;
      continue;
    }
    throw ParseError(std::string("unexpected character '") + s[i] + "'", i);
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

std::string comparison_name(std::string_view sym) {
  if (sym == "<=") return "le";
  if (sym == "<") return "lt";
  if (sym == ">=") return "ge";
  if (sym == ">") return "gt";
  if (sym == "=" || sym == "==") return "eq";
  return "ne";
}

bool is_comparison(const Token& t) {
  return t.kind == Tok::Sym && (t.text == "<=" || t.text == "<" || t.text == ">=" ||
                                t.text == ">" || t.text == "=" || t.text == "==" ||
                                t.text == "!=");
}

bool is_time_unit(std::string_view w) {
  static constexpr std::array<std::string_view, 22> kUnits = {
      "tick",    "ticks",   "second", "seconds", "sec",    "secs",  "s",      "millisecond",
      "milliseconds", "ms", "minute", "minutes", "min",    "mins",  "hour",   "hours",
      "day",     "days",    "unit",   "units",   "step",   "steps"};
  return std::any_of(kUnits.begin(), kUnits.end(), [&](std::string_view u) { return ieq(u, w); });
}

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(lex(text)) {}

  Requirement requirement() {
    Requirement r;
    r.scope = scope();
    skip_comma();
    r.condition = condition();
    skip_comma();
    if (kw("the") && toks_[i_ + 1].kind == Tok::Word && ieq(toks_[i_ + 2].text, "shall") &&
        toks_[i_ + 2].kind == Tok::Word) {
      ++i_;
    }
    const Token& comp = cur();
    if (comp.kind != Tok::Word || ieq(comp.text, "shall")) {
      throw ParseError("expected a component name", comp.pos);
    }
    r.component = comp.text;
    ++i_;
    if (!kw("shall")) throw ParseError("expected 'shall' after the component", cur().pos);
    ++i_;
    r.timing = timing();
    if (!kw("satisfy")) {
      throw ParseError("unknown keyword '" + cur().text + "'", cur().pos);
    }
    ++i_;
    if (at_end()) throw ParseError("empty response", cur().pos);
    r.response = expr();
    if (cur().kind == Tok::Sym && cur().text == ".") ++i_;
    if (cur().kind != Tok::End) {
      throw ParseError("unexpected '" + cur().text + "' after the response", cur().pos);
    }
    return r;
  }

 private:
  const Token& cur() const { return toks_[i_]; }
  bool kw(std::string_view w) const { return cur().kind == Tok::Word && ieq(cur().text, w); }
  bool sym(std::string_view s) const { return cur().kind == Tok::Sym && cur().text == s; }
  bool at_end() const { return cur().kind == Tok::End || sym("."); }
  void skip_comma() {
    if (sym(",")) ++i_;
  }

  Scope scope() {
    Scope s;
    const std::size_t start = cur().pos;
    if (kw("only")) {
      ++i_;
      if (kw("in")) {
        s.kind = ScopeKind::OnlyIn;
      } else if (kw("before")) {
        s.kind = ScopeKind::OnlyBefore;
      } else if (kw("after")) {
        s.kind = ScopeKind::OnlyAfter;
      } else {
        throw ParseError("dangling scope word 'only'", start);
      }
      ++i_;
    } else if (kw("not")) {
      ++i_;
      if (!kw("in")) throw ParseError("dangling scope word 'not'", start);
      s.kind = ScopeKind::NotIn;
      ++i_;
    } else if (kw("in")) {
      s.kind = ScopeKind::In;
      ++i_;
    } else if (kw("before")) {
      s.kind = ScopeKind::Before;
      ++i_;
    } else if (kw("after")) {
      s.kind = ScopeKind::After;
      ++i_;
    } else {
      return s;
    }
    const Token& mode = cur();
    if (mode.kind != Tok::Word || ieq(mode.text, "shall") || ieq(mode.text, "upon") ||
        ieq(mode.text, "when") || ieq(mode.text, "while")) {
      throw ParseError("dangling scope word: a mode name must follow", mode.pos);
    }
    check_atom_name(mode);
    s.mode = mode.text;
    ++i_;
    return s;
  }

  Condition condition() {
    Condition c;
    if (kw("upon")) {
      c.kind = ConditionKind::Trigger;
    } else if (kw("when") || kw("while")) {
      c.kind = ConditionKind::Continual;
    } else {
      return c;
    }
    ++i_;
    c.expr = expr();
    return c;
  }

  Timing timing() {
    Timing t;
    const Token& w = cur();
    if (kw("satisfy")) return t;  // Eventually by default
    if (kw("immediately")) {
      t.kind = TimingKind::Immediately;
    } else if (kw("eventually")) {
      t.kind = TimingKind::Eventually;
    } else if (kw("next")) {
      t.kind = TimingKind::Next;
    } else if (kw("always")) {
      t.kind = TimingKind::Always;
    } else if (kw("never")) {
      t.kind = TimingKind::Never;
    } else if (kw("at")) {
      for (std::string_view word : {"the", "next", "timepoint"}) {
        ++i_;
        if (!kw(word)) throw ParseError("expected 'at the next timepoint'", w.pos);
      }
      t.kind = TimingKind::Next;
    } else if (kw("within") || kw("for") || kw("after")) {
      t.kind = kw("within") ? TimingKind::Within : kw("for") ? TimingKind::For : TimingKind::After;
      ++i_;
      t.ticks = count();
      if (cur().kind == Tok::Word && !kw("satisfy")) {
        if (!is_time_unit(cur().text)) {
          throw ParseError("unknown time unit '" + cur().text + "'", cur().pos);
        }
        ++i_;
      }
      return t;
    } else if (kw("until") || kw("before")) {
      t.kind = kw("until") ? TimingKind::Until : TimingKind::Before;
      ++i_;
      if (kw("satisfy") || at_end()) throw ParseError("missing stop condition", cur().pos);
      t.stop = expr();
      return t;
    } else {
      throw ParseError("unknown keyword '" + w.text + "'", w.pos);
    }
    ++i_;
    return t;
  }

  std::uint32_t count() {
    const Token& n = cur();
    if (n.kind != Tok::Number) throw ParseError("expected a duration", n.pos);
    std::uint32_t value = 0;
    auto [ptr, ec] = std::from_chars(n.text.data(), n.text.data() + n.text.size(), value);
    if (ec != std::errc{} || ptr != n.text.data() + n.text.size()) {
      throw ParseError("invalid duration '" + n.text + "'", n.pos);
    }
    if (value == 0) throw ParseError("duration must be at least 1", n.pos);
    ++i_;
    return value;
  }

  void check_atom_name(const Token& t) const {
    if (!is_valid_identifier(t.text) || is_reserved_word(t.text)) {
      throw ParseError("'" + t.text + "' is reserved and cannot name a proposition", t.pos);
    }
  }

  Formula expr() {
    Formula lhs = implication();
    while (sym("<->")) {
      ++i_;
      lhs = iff(lhs, implication());
    }
    return lhs;
  }

  Formula implication() {
    Formula lhs = disjunction();
    if (sym("->")) {
      ++i_;
      return implies(lhs, implication());
    }
    return lhs;
  }

  Formula disjunction() {
    Formula lhs = conjunction();
    while (sym("|")) {
      ++i_;
      lhs = disj(lhs, conjunction());
    }
    return lhs;
  }

  Formula conjunction() {
    Formula lhs = unary();
    while (sym("&")) {
      ++i_;
      lhs = conj(lhs, unary());
    }
    return lhs;
  }

  Formula unary() {
    if (sym("!")) {
      ++i_;
      return neg(unary());
    }
    return primary();
  }

  Formula primary() {
    const Token t = cur();
    if (sym("(")) {
      ++i_;
      Formula inner = expr();
      if (!sym(")")) throw ParseError("expected ')'", cur().pos);
      ++i_;
      return inner;
    }
    if (t.kind != Tok::Word) {
      throw ParseError(t.kind == Tok::End ? "unexpected end of sentence"
                                          : "expected a proposition, found '" + t.text + "'",
                       t.pos);
    }
    ++i_;
    if (is_comparison(cur())) {
      const std::string op = comparison_name(cur().text);
      ++i_;
      const Token rhs = cur();
      if (rhs.kind != Tok::Word && rhs.kind != Tok::Number) {
        throw ParseError("incomplete comparison", rhs.pos);
      }
      ++i_;
      std::string name = t.text + "_" + op + "_" + rhs.text;
      std::replace(name.begin(), name.end(), '.', '_');
      return atom(name);
    }
    if (ieq(t.text, "true")) return top();
    if (ieq(t.text, "false")) return bottom();
    check_atom_name(t);
    return atom(t.text);
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
};

std::string render_timing(const Timing& t) {
  auto ticks = [](std::uint32_t n) {
    return std::to_string(n) + (n == 1 ? " tick" : " ticks");
  };
  switch (t.kind) {
    case TimingKind::Immediately: return "immediately";
    case TimingKind::Eventually: return "eventually";
    case TimingKind::Next: return "at the next timepoint";
    case TimingKind::Always: return "always";
    case TimingKind::Never: return "never";
    case TimingKind::Within: return "within " + ticks(t.ticks);
    case TimingKind::For: return "for " + ticks(t.ticks);
    case TimingKind::After: return "after " + ticks(t.ticks);
    case TimingKind::Until: return "until " + print_formula(t.stop.value_or(top()));
    case TimingKind::Before: return "before " + print_formula(t.stop.value_or(top()));
  }
  return {};
}

}  // namespace

std::string_view name_of(ScopeKind kind) noexcept {
  switch (kind) {
    case ScopeKind::Global: return "global";
    case ScopeKind::In: return "in";
    case ScopeKind::NotIn: return "not_in";
    case ScopeKind::OnlyIn: return "only_in";
    case ScopeKind::Before: return "before";
    case ScopeKind::OnlyBefore: return "only_before";
    case ScopeKind::After: return "after";
    case ScopeKind::OnlyAfter: return "only_after";
  }
  return {};
}

std::string_view name_of(ConditionKind kind) noexcept {
  switch (kind) {
    case ConditionKind::None: return "none";
    case ConditionKind::Trigger: return "trigger";
    case ConditionKind::Continual: return "continual";
  }
  return {};
}

std::string_view name_of(TimingKind kind) noexcept {
  switch (kind) {
    case TimingKind::Immediately: return "immediately";
    case TimingKind::Eventually: return "eventually";
    case TimingKind::Next: return "next";
    case TimingKind::Always: return "always";
    case TimingKind::Never: return "never";
    case TimingKind::Within: return "within";
    case TimingKind::For: return "for";
    case TimingKind::After: return "after";
    case TimingKind::Until: return "until";
    case TimingKind::Before: return "before";
  }
  return {};
}

bool is_only_scope(ScopeKind kind) noexcept {
  return kind == ScopeKind::OnlyIn || kind == ScopeKind::OnlyBefore ||
         kind == ScopeKind::OnlyAfter;
}

Requirement parse_requirement(std::string_view text) { return Parser(text).requirement(); }

std::string render_requirement(const Requirement& r) {
  std::string out;
  if (r.scope.kind != ScopeKind::Global) {
    std::string words(name_of(r.scope.kind));
    std::replace(words.begin(), words.end(), '_', ' ');
    out += words + " " + r.scope.mode + " ";
  }
  if (r.condition.kind != ConditionKind::None) {
    out += r.condition.kind == ConditionKind::Trigger ? "upon " : "when ";
    out += print_formula(r.condition.expr.value_or(top())) + " ";
  }
  out += r.component + " shall " + render_timing(r.timing) + " satisfy " +
         print_formula(r.response);
  return out;
}

std::vector<Requirement> enumerate_templates(std::uint32_t k, const std::string& stop_name) {
  if (k == 0) throw std::invalid_argument("k must be at least 1");
  std::vector<Requirement> out;
  out.reserve(std::size(kAllScopes) * std::size(kAllConditions) * std::size(kAllTimings));
  for (ScopeKind s : kAllScopes) {
    for (ConditionKind c : kAllConditions) {
      for (TimingKind t : kAllTimings) {
        Requirement r;
        r.scope.kind = s;
        if (s != ScopeKind::Global) r.scope.mode = "Scope";
        r.condition.kind = c;
        if (c != ConditionKind::None) r.condition.expr = atom("Condition");
        r.component = "MyComponent";
        r.timing.kind = t;
        if (t == TimingKind::Within || t == TimingKind::For || t == TimingKind::After) {
          r.timing.ticks = k;
        }
        if (t == TimingKind::Until || t == TimingKind::Before) r.timing.stop = atom(stop_name);
        r.response = atom("Response");
        out.push_back(std::move(r));
      }
    }
  }
  return out;
}

std::vector<Requirement> parse_requirement_file(std::string_view body) {
  std::vector<Requirement> out;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < body.size()) {
    std::size_t end = body.find('\n', start);
    if (end == std::string_view::npos) end = body.size();
    std::string_view line = body.substr(start, end - start);
    start = end + 1;
    const std::size_t this_line = line_no++;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string_view::npos || line[first] == '#') continue;
    try {
      out.push_back(parse_requirement(line));
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(this_line + 1) + ": " + e.what(), this_line);
    }
  }
  return out;
}

}  // namespace fret2mtl
