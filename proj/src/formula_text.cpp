#include "fret2mtl/formula_text.hpp"

#include <cctype>
#include <charconv>
#include <optional>

namespace fret2mtl {

namespace {

enum class Tok {
  Ident,
  Number,
  LParen,
  RParen,
  LBracket,
  RBracket,
  Comma,
  Bang,
  Amp,
  Bar,
  Arrow,
  DoubleArrow,
  End,
};

struct Token {
  Tok kind;
  std::string_view text;
  std::size_t pos;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
      }
      if (pos_ >= text_.size()) break;
      const std::size_t start = pos_;
      const char c = text_[pos_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
          ++pos_;
        }
        out.push_back({Tok::Ident, text_.substr(start, pos_ - start), start});
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(c))) {
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
          ++pos_;
        }
        out.push_back({Tok::Number, text_.substr(start, pos_ - start), start});
        continue;
      }
      if (text_.substr(pos_, 3) == "<->") {
        pos_ += 3;
        out.push_back({Tok::DoubleArrow, text_.substr(start, 3), start});
        continue;
      }
      if (text_.substr(pos_, 2) == "->") {
        pos_ += 2;
        out.push_back({Tok::Arrow, text_.substr(start, 2), start});
        continue;
      }
      Tok kind;
      switch (c) {
        case '(': kind = Tok::LParen; break;
        case ')': kind = Tok::RParen; break;
        case '[': kind = Tok::LBracket; break;
        case ']': kind = Tok::RBracket; break;
        case ',': kind = Tok::Comma; break;
        case '!': kind = Tok::Bang; break;
        case '&': kind = Tok::Amp; break;
        case '|': kind = Tok::Bar; break;
        default:
          throw ParseError(std::string("unexpected character '") + c + "'", start);
      }
      ++pos_;
      out.push_back({kind, text_.substr(start, 1), start});
    }
    out.push_back({Tok::End, {}, text_.size()});
    return out;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

std::optional<Op> unary_op(std::string_view word) {
  if (word == "G") return Op::Globally;
  if (word == "F") return Op::Eventually;
  if (word == "X") return Op::Next;
  if (word == "H") return Op::Historically;
  if (word == "O") return Op::Once;
  if (word == "Y") return Op::Yesterday;
  if (word == "Z") return Op::WeakYesterday;
  return std::nullopt;
}

std::optional<Op> binary_temporal_op(std::string_view word) {
  if (word == "U") return Op::Until;
  if (word == "V" || word == "R") return Op::Release;
  if (word == "S") return Op::Since;
  return std::nullopt;
}

Formula make_unary(Op op, Formula f, Interval i) {
  switch (op) {
    case Op::Globally: return always(f, i);
    case Op::Eventually: return eventually(f, i);
    case Op::Next: return next(f);
    case Op::Historically: return historically(f, i);
    case Op::Once: return once(f, i);
    case Op::Yesterday: return yesterday(f);
    case Op::WeakYesterday: return weak_yesterday(f);
    default: return neg(f);
  }
}

Formula make_binary(Op op, Formula a, Formula b, Interval i) {
  switch (op) {
    case Op::Until: return until(a, b, i);
    case Op::Release: return release(a, b, i);
    case Op::Since: return since(a, b, i);
    case Op::And: return conj(a, b);
    case Op::Or: return disj(a, b);
    case Op::Implies: return implies(a, b);
    default: return iff(a, b);
  }
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  Formula parse() {
    Formula f = parse_iff();
    if (peek().kind != Tok::End) {
      throw ParseError("unexpected '" + std::string(peek().text) + "'", peek().pos);
    }
    return f;
  }

 private:
  const Token& peek() const { return toks_[idx_]; }
  const Token& advance() { return toks_[idx_++]; }

  void expect(Tok kind, const char* what) {
    if (peek().kind != kind) {
      throw ParseError(std::string("expected ") + what, peek().pos);
    }
    ++idx_;
  }

  Formula parse_iff() {
    Formula f = parse_implies();
    while (peek().kind == Tok::DoubleArrow) {
      advance();
      f = iff(f, parse_implies());
    }
    return f;
  }

  Formula parse_implies() {
    Formula f = parse_or();
    if (peek().kind == Tok::Arrow) {
      advance();
      return implies(f, parse_implies());
    }
    return f;
  }

  Formula parse_or() {
    Formula f = parse_and();
    while (peek().kind == Tok::Bar) {
      advance();
      f = disj(f, parse_and());
    }
    return f;
  }

  Formula parse_and() {
    Formula f = parse_temporal();
    while (peek().kind == Tok::Amp) {
      advance();
      f = conj(f, parse_temporal());
    }
    return f;
  }

  Formula parse_temporal() {
    Formula f = parse_unary();
    while (peek().kind == Tok::Ident) {
      auto op = binary_temporal_op(peek().text);
      if (!op) break;
      advance();
      Interval i = parse_bound();
      f = make_binary(*op, f, parse_unary(), i);
    }
    return f;
  }

  Formula parse_unary() {
    const Token& t = peek();
    if (t.kind == Tok::Bang) {
      advance();
      return neg(parse_unary());
    }
    if (t.kind == Tok::Ident) {
      if (auto op = unary_op(t.text)) {
        const std::size_t pos = t.pos;
        advance();
        Interval i = parse_bound();
        if (!has_interval(*op) && !i.is_unbounded()) {
          throw ParseError("operator " + std::string(t.text) + " does not take a bound", pos);
        }
        return make_unary(*op, parse_unary(), i);
      }
    }
    return parse_primary();
  }

  Formula parse_primary() {
    const Token& t = advance();
    switch (t.kind) {
      case Tok::LParen: {
        Formula f = parse_iff();
        expect(Tok::RParen, "')'");
        return f;
      }
      case Tok::Ident:
        if (t.text == "TRUE") return top();
        if (t.text == "FALSE") return bottom();
        if (t.text == "LAST") return last();
        if (is_reserved_word(t.text)) {
          throw ParseError("operator '" + std::string(t.text) + "' is missing an operand", t.pos);
        }
        return atom(std::string(t.text));
      case Tok::End:
        throw ParseError("unexpected end of formula", t.pos);
      default:
        throw ParseError("unexpected '" + std::string(t.text) + "'", t.pos);
    }
  }

  std::uint32_t parse_number() {
    const Token& t = peek();
    if (t.kind != Tok::Number) throw ParseError("expected a number", t.pos);
    advance();
    std::uint32_t value = 0;
    auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
    if (ec != std::errc{}) throw ParseError("bound out of range", t.pos);
    return value;
  }

  Interval parse_bound() {
    if (peek().kind != Tok::LBracket) return Interval::unbounded();
    const std::size_t pos = peek().pos;
    advance();
    const std::uint32_t lo = parse_number();
    expect(Tok::Comma, "','");
    const std::uint32_t hi = parse_number();
    expect(Tok::RBracket, "']'");
    if (lo > hi) {
      throw ParseError("bound [" + std::to_string(lo) + "," + std::to_string(hi) +
                           "] has lower end above upper end",
                       pos);
    }
    return Interval::bounded(lo, hi);
  }

  std::vector<Token> toks_;
  std::size_t idx_ = 0;
};

std::string_view op_symbol(Op op) {
  switch (op) {
    case Op::Not: return "!";
    case Op::And: return "&";
    case Op::Or: return "|";
    case Op::Implies: return "->";
    case Op::Iff: return "<->";
    case Op::Yesterday: return "Y";
    case Op::WeakYesterday: return "Z";
    case Op::Once: return "O";
    case Op::Historically: return "H";
    case Op::Since: return "S";
    case Op::Next: return "X";
    case Op::Eventually: return "F";
    case Op::Globally: return "G";
    case Op::Until: return "U";
    case Op::Release: return "V";
    case Op::Atom: return "";
    case Op::Last: return "LAST";
    case Op::True: return "TRUE";
    case Op::False: return "FALSE";
  }
  return "";
}

void print_into(const Formula& f, bool wrap_unary, std::string& out) {
  const Op op = f.op();
  switch (arity(op)) {
    case 0:
      out += op == Op::Atom ? std::string_view(f.name()) : op_symbol(op);
      return;
    case 1:
      if (wrap_unary) out += '(';
      out += op_symbol(op);
      if (has_interval(op) && !f.interval().is_unbounded()) {
        out += '[' + std::to_string(f.interval().lo()) + ',' +
               std::to_string(f.interval().hi()) + ']';
      }
      out += ' ';
      print_into(f.lhs(), wrap_unary, out);
      if (wrap_unary) out += ')';
      return;
    default:
      out += '(';
      print_into(f.lhs(), wrap_unary, out);
      out += ' ';
      out += op_symbol(op);
      if (has_interval(op) && !f.interval().is_unbounded()) {
        out += '[' + std::to_string(f.interval().lo()) + ',' +
               std::to_string(f.interval().hi()) + ']';
      }
      out += ' ';
      print_into(f.rhs(), wrap_unary, out);
      out += ')';
      return;
  }
}

Formula past_power(Formula f, std::uint32_t count, bool weak) {
  for (std::uint32_t i = 0; i < count; ++i) f = weak ? weak_yesterday(f) : yesterday(f);
  return f;
}

// X^j f holds iff position t+j exists and satisfies f; the weak form also
// holds when t+j is past the end of a finite trace.
Formula weak_next_power(const Formula& f, std::uint32_t j) {
  if (j == 0) return f;
  return neg(next_power(neg(f), j));
}

Formula fold_or(std::vector<Formula> terms) {
  if (terms.empty()) return bottom();
  Formula acc = terms.front();
  for (std::size_t i = 1; i < terms.size(); ++i) acc = disj(acc, terms[i]);
  return acc;
}

Formula fold_and(std::vector<Formula> terms) {
  if (terms.empty()) return top();
  Formula acc = terms.front();
  for (std::size_t i = 1; i < terms.size(); ++i) acc = conj(acc, terms[i]);
  return acc;
}

}  // namespace

Formula parse_formula(std::string_view text) {
  return Parser(Lexer(text).run()).parse();
}

std::string print_formula(const Formula& f, Dialect dialect) {
  std::string out;
  if (dialect == Dialect::Canonical) {
    print_into(f, false, out);
  } else {
    print_into(expand_bounds(f), true, out);
  }
  return out;
}

Formula expand_bounds(const Formula& f) {
  const Op op = f.op();
  if (arity(op) == 0) return f;
  const Formula a = expand_bounds(f.lhs());
  const Formula b = arity(op) == 2 ? expand_bounds(f.rhs()) : Formula();
  const Interval& iv = f.interval();
  const bool bounded = has_interval(op) && !iv.is_unbounded();

  if (!bounded) {
    return arity(op) == 1 ? make_unary(op, a, iv) : make_binary(op, a, b, iv);
  }

  const std::uint32_t lo = iv.lo();
  const std::uint32_t hi = iv.hi();
  std::vector<Formula> terms;
  switch (op) {
    case Op::Eventually:
      for (std::uint32_t j = lo; j <= hi; ++j) terms.push_back(next_power(a, j));
      return fold_or(terms);
    case Op::Globally:
      for (std::uint32_t j = lo; j <= hi; ++j) terms.push_back(weak_next_power(a, j));
      return fold_and(terms);
    case Op::Once:
      for (std::uint32_t j = lo; j <= hi; ++j) terms.push_back(past_power(a, j, false));
      return fold_or(terms);
    case Op::Historically:
      for (std::uint32_t j = lo; j <= hi; ++j) terms.push_back(past_power(a, j, true));
      return fold_and(terms);
    case Op::Until:
      // b at offset j, a at every offset of the interval strictly before j.
      for (std::uint32_t j = lo; j <= hi; ++j) {
        std::vector<Formula> parts;
        for (std::uint32_t i = lo; i < j; ++i) parts.push_back(next_power(a, i));
        parts.push_back(next_power(b, j));
        terms.push_back(fold_and(parts));
      }
      return fold_or(terms);
    case Op::Release: {
      std::vector<Formula> all_b;
      for (std::uint32_t j = lo; j <= hi; ++j) all_b.push_back(weak_next_power(b, j));
      terms.push_back(fold_and(all_b));
      for (std::uint32_t j = lo; j <= hi; ++j) {
        std::vector<Formula> parts;
        for (std::uint32_t i = lo; i <= j; ++i) parts.push_back(next_power(b, i));
        parts.push_back(next_power(a, j));
        terms.push_back(fold_and(parts));
      }
      return fold_or(terms);
    }
    case Op::Since:
      // b at j steps back, a at every later position up to now.
      for (std::uint32_t j = lo; j <= hi; ++j) {
        std::vector<Formula> parts;
        for (std::uint32_t i = 0; i < j; ++i) parts.push_back(past_power(a, i, false));
        parts.push_back(past_power(b, j, false));
        terms.push_back(fold_and(parts));
      }
      return fold_or(terms);
    default:
      return f;
  }
}

std::vector<Formula> parse_formula_file(std::string_view body, bool per_line) {
  std::vector<Formula> out;
  std::string joined;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= body.size()) {
    std::size_t end = body.find('\n', start);
    if (end == std::string_view::npos) end = body.size();
    std::string_view line = body.substr(start, end - start);
    const std::size_t first = line.find_first_not_of(" \t\r");
    if (first != std::string_view::npos && line[first] != '#') {
      if (per_line) {
        try {
          out.push_back(parse_formula(line));
        } catch (const ParseError& e) {
          throw ParseError("line " + std::to_string(line_no + 1) + ": " + e.what(), line_no);
        }
      } else {
        joined.append(line);
        joined.push_back(' ');
      }
    }
    ++line_no;
    start = end + 1;
  }
  if (!per_line) {
    if (joined.find_first_not_of(' ') == std::string::npos) {
      throw ParseError("no formula found", 0);
    }
    out.push_back(parse_formula(joined));
  }
  return out;
}

}  // namespace fret2mtl
