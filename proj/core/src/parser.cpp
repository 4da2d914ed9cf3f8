#include "tptpnc/parser.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "tptpnc/diagnostics.hpp"
#include "tptpnc/lexer.hpp"

namespace tptpnc {

namespace {

bool is_binary_connective(TokenKind k) {
  switch (k) {
    case TokenKind::And:
    case TokenKind::Or:
    case TokenKind::Implies:
    case TokenKind::Implied:
    case TokenKind::Iff:
    case TokenKind::Xor:
      return true;
    default:
      return false;
  }
}

BinaryOp to_binary_op(TokenKind k) {
  switch (k) {
    case TokenKind::And: return BinaryOp::And;
    case TokenKind::Or: return BinaryOp::Or;
    case TokenKind::Implies: return BinaryOp::Implies;
    case TokenKind::Implied: return BinaryOp::Implied;
    case TokenKind::Iff: return BinaryOp::Iff;
    default: return BinaryOp::Xor;
  }
}

bool is_number(TokenKind k) {
  return k == TokenKind::Integer || k == TokenKind::Rational || k == TokenKind::Real;
}

bool is_short_form(TokenKind k) {
  switch (k) {
    case TokenKind::ShortBoxDot:
    case TokenKind::ShortDiamondDot:
    case TokenKind::ShortSlashDot:
    case TokenKind::ShortBoxIndexed:
    case TokenKind::ShortDiamondIndexed:
    case TokenKind::ShortSlashIndexed:
    case TokenKind::ShortBoxOpen:
    case TokenKind::ShortDiamondOpen:
    case TokenKind::ShortSlashOpen:
      return true;
    default:
      return false;
  }
}

// An unapplied connective is carried as an NcApply with no arguments until
// the enclosing @-chain supplies them (THF only).
bool is_pending_connective(const FormulaPtr& f) {
  auto* nc = std::get_if<NcApplyFormula>(&f->node);
  return nc && nc->args.empty();
}

TermPtr index_term_from_lexeme(TokenKind kind, const std::string& lexeme) {
  if (is_number(kind)) return make_number_term(classify_number(lexeme), lexeme);
  if (kind == TokenKind::UpperWord) return make_variable_term(lexeme);
  return make_function_term(lexeme);
}

class Parser {
 public:
  Parser(std::string_view text, std::vector<Token> tokens) : text_(text), toks_(std::move(tokens)) {
    eof_.kind = TokenKind::EndOfInput;
    eof_.offset = text.size();
    eof_.pos = end_position();
  }

  SourceFile file() {
    SourceFile out;
    while (!at(TokenKind::EndOfInput)) {
      const Token& kw = peek();
      if (kw.kind != TokenKind::LowerWord) fail("a unit keyword (tff, thf, fof, cnf, include)");
      if (kw.lexeme == "include") {
        out.items.emplace_back(include());
      } else {
        out.items.emplace_back(unit());
      }
    }
    return out;
  }

  FormulaPtr single_formula(Language lang) {
    ho_ = is_higher_order(lang);
    FormulaPtr f = logic();
    expect(TokenKind::EndOfInput, "end of input");
    return f;
  }

  TypePtr single_type(Language lang) {
    ho_ = is_higher_order(lang);
    TypePtr t = type();
    expect(TokenKind::EndOfInput, "end of input");
    return t;
  }

 private:
  std::string_view text_;
  std::vector<Token> toks_;
  std::size_t at_ = 0;
  Token eof_;
  bool ho_ = false;

  SourcePos end_position() const {
    SourcePos p{1, 1};
    for (char c : text_) {
      if (c == '\n') {
        ++p.line;
        p.column = 1;
      } else {
        ++p.column;
      }
    }
    // Stay inside the input: point at the last character when there is one.
    if (!text_.empty() && p.column > 1) --p.column;
    return p;
  }

  const Token& peek(std::size_t k = 0) const { return at_ + k < toks_.size() ? toks_[at_ + k] : eof_; }
  bool at(TokenKind k) const { return peek().kind == k; }
  const Token& take() {
    const Token& t = peek();
    if (at_ < toks_.size()) ++at_;
    return t;
  }
  bool accept(TokenKind k) {
    if (!at(k)) return false;
    take();
    return true;
  }

  [[noreturn]] void fail(const std::string& expected) const {
    const Token& t = peek();
    std::string found = t.kind == TokenKind::EndOfInput ? "end of input" : "'" + t.lexeme + "'";
    throw ParseError(t.pos, expected, found, "expected " + expected + ", found " + found);
  }

  [[noreturn]] void fail_at(const Token& t, const std::string& message) const {
    throw ParseError(t.pos, "", t.lexeme, message);
  }

  const Token& expect(TokenKind k, const std::string& what) {
    if (!at(k)) fail(what);
    return take();
  }

  // ---- top level -------------------------------------------------------

  IncludeDirective include() {
    const Token& kw = take();
    IncludeDirective inc;
    inc.pos = kw.pos;
    inc.begin_offset = kw.offset;
    expect(TokenKind::LParen, "'('");
    const Token& path = expect(TokenKind::SingleQuoted, "a quoted file name");
    inc.path = path.lexeme.substr(1, path.lexeme.size() - 2);
    if (accept(TokenKind::Comma)) {
      expect(TokenKind::LBracket, "'['");
      if (!at(TokenKind::RBracket)) {
        do {
          const Token& n = take();
          if (n.kind != TokenKind::LowerWord && n.kind != TokenKind::SingleQuoted && n.kind != TokenKind::Integer)
            fail_at(n, "expected a formula name in include selection");
          inc.selection.push_back(n.lexeme);
        } while (accept(TokenKind::Comma));
      }
      expect(TokenKind::RBracket, "']'");
    }
    expect(TokenKind::RParen, "')'");
    inc.end_offset = expect(TokenKind::Dot, "'.'").end_offset();
    return inc;
  }

  AnnotatedFormula unit() {
    const Token& kw = take();
    AnnotatedFormula u;
    u.pos = kw.pos;
    u.begin_offset = kw.offset;
    if (kw.lexeme == "tff") {
      u.language = Language::Tff;
    } else if (kw.lexeme == "thf") {
      u.language = Language::Thf;
    } else if (kw.lexeme == "fof") {
      u.language = Language::Fof;
    } else if (kw.lexeme == "cnf") {
      u.language = Language::Cnf;
    } else {
      fail_at(kw, "unknown unit keyword '" + kw.lexeme + "'");
    }
    ho_ = is_higher_order(u.language);
    expect(TokenKind::LParen, "'('");

    const Token& name = take();
    if (name.kind != TokenKind::LowerWord && name.kind != TokenKind::SingleQuoted &&
        name.kind != TokenKind::Integer)
      fail_at(name, "expected a formula name, found '" + name.lexeme + "'");
    if (name.lexeme.find('-') != std::string::npos) fail_at(name, "malformed formula name '" + name.lexeme + "'");
    u.name = name.lexeme;
    expect(TokenKind::Comma, "','");

    const Token& role = expect(TokenKind::LowerWord, "a formula role");
    auto parsed_role = parse_role(role.lexeme);
    if (!parsed_role) fail_at(role, "unknown formula role '" + role.lexeme + "'");
    u.role = *parsed_role;
    expect(TokenKind::Comma, "','");

    if (u.role.base == RoleBase::Type) {
      u.payload = type_decl();
    } else if (u.role.base == RoleBase::Logic) {
      u.payload = logic_spec();
    } else {
      FormulaPtr f = logic();
      u.payload = f;
    }

    if (accept(TokenKind::Comma)) {
      u.source = annotation_text();
      if (accept(TokenKind::Comma)) u.useful_info = annotation_text();
    }
    expect(TokenKind::RParen, "')'");
    u.end_offset = expect(TokenKind::Dot, "'.'").end_offset();
    return u;
  }

  // A general term kept verbatim: everything up to the next top-level ',' or ')'.
  std::string annotation_text() {
    int depth = 0;
    std::size_t begin = peek().offset;
    std::size_t end = begin;
    while (true) {
      const Token& t = peek();
      if (t.kind == TokenKind::EndOfInput) fail("')'");
      if (depth == 0 && (t.kind == TokenKind::Comma || t.kind == TokenKind::RParen)) break;
      if (t.kind == TokenKind::LParen || t.kind == TokenKind::LBracket || t.kind == TokenKind::LBrace) ++depth;
      if (t.kind == TokenKind::RParen || t.kind == TokenKind::RBracket || t.kind == TokenKind::RBrace) --depth;
      end = t.end_offset();
      take();
    }
    if (end == begin) fail("an annotation");
    return std::string(text_.substr(begin, end - begin));
  }

  TypeDecl type_decl() {
    if (accept(TokenKind::LParen)) {
      TypeDecl d = type_decl();
      expect(TokenKind::RParen, "')'");
      return d;
    }
    const Token& sym = take();
    if (sym.kind != TokenKind::LowerWord && sym.kind != TokenKind::SingleQuoted &&
        sym.kind != TokenKind::DollarWord && sym.kind != TokenKind::DollarDollarWord)
      fail_at(sym, "expected a symbol in type declaration, found '" + sym.lexeme + "'");
    expect(TokenKind::Colon, "':'");
    return TypeDecl{sym.lexeme, type()};
  }

  // ---- logic specifications ----------------------------------------------

  LogicSpec logic_spec() {
    LogicSpec spec;
    const Token& name = take();
    if (name.kind != TokenKind::DollarWord && name.kind != TokenKind::DollarDollarWord)
      fail_at(name, "expected a logic name such as $modal, found '" + name.lexeme + "'");
    spec.logic_name = name.lexeme;
    expect(TokenKind::Identical, "'=='");
    expect(TokenKind::LBracket, "'['");
    if (!at(TokenKind::RBracket)) {
      do {
        const Token& prop = take();
        if (prop.kind != TokenKind::DollarWord && prop.kind != TokenKind::DollarDollarWord)
          fail_at(prop, "expected a property name, found '" + prop.lexeme + "'");
        expect(TokenKind::Identical, "'=='");
        spec.properties.push_back(LogicProperty{prop.lexeme, property_value()});
      } while (accept(TokenKind::Comma));
    }
    expect(TokenKind::RBracket, "']'");
    return spec;
  }

  std::optional<OverrideKey> short_form_key() {
    const Token& t = peek();
    std::optional<Surface> surface;
    switch (t.kind) {
      case TokenKind::ShortBoxIndexed:
      case TokenKind::ShortBoxOpen:
        surface = Surface::ShortBox;
        break;
      case TokenKind::ShortDiamondIndexed:
      case TokenKind::ShortDiamondOpen:
        surface = Surface::ShortDiamond;
        break;
      case TokenKind::ShortSlashIndexed:
      case TokenKind::ShortSlashOpen:
        surface = Surface::ShortSlash;
        break;
      default:
        return std::nullopt;
    }
    return OverrideKey{short_form_index(), surface};
  }

  PropertyValuePtr property_value() {
    if (!at(TokenKind::LBracket)) {
      return std::make_shared<const PropertyValue>(PropertyValue{spec_term()});
    }
    const Token& open = take();
    std::vector<TermPtr> plain;
    std::vector<PropertyOverride> overrides;
    bool plain_after_override = false;
    if (!at(TokenKind::RBracket)) {
      do {
        std::optional<OverrideKey> key = short_form_key();
        if (!key) {
          TermPtr t = spec_term();
          if (at(TokenKind::Identical)) {
            key = OverrideKey{t, std::nullopt};
          } else {
            if (!overrides.empty()) plain_after_override = true;
            plain.push_back(t);
            continue;
          }
        }
        expect(TokenKind::Identical, "'=='");
        overrides.push_back(PropertyOverride{*key, property_value()});
      } while (accept(TokenKind::Comma));
    }
    expect(TokenKind::RBracket, "']'");

    if (overrides.empty() && plain.size() != 1) {
      return std::make_shared<const PropertyValue>(PropertyValue{make_tuple_term(std::move(plain))});
    }
    if (plain.size() > 1 || plain_after_override)
      fail_at(open, "only the first element of a property list may be a plain default value");
    ListValue list;
    if (!plain.empty()) list.default_value = plain.front();
    list.overrides = std::move(overrides);
    return std::make_shared<const PropertyValue>(PropertyValue{std::move(list)});
  }

  TermPtr spec_term() {
    if (at(TokenKind::LBracket)) return tuple();
    return arg_term();
  }

  // ---- types ---------------------------------------------------------------

  TypePtr atomic_type() {
    const Token& t = take();
    if (t.kind != TokenKind::LowerWord && t.kind != TokenKind::DollarWord && t.kind != TokenKind::SingleQuoted &&
        t.kind != TokenKind::DollarDollarWord)
      fail_at(t, "expected a type, found '" + t.lexeme + "'");
    return make_base_type(t.lexeme);
  }

  TypePtr type() { return ho_ ? thf_type() : tff_type(); }

  TypePtr thf_type() {
    TypePtr lhs;
    if (accept(TokenKind::LParen)) {
      lhs = thf_type();
      expect(TokenKind::RParen, "')'");
    } else {
      lhs = atomic_type();
    }
    if (accept(TokenKind::Arrow)) return make_curried_type(lhs, thf_type());
    return lhs;
  }

  TypePtr tff_type() {
    if (accept(TokenKind::LParen)) {
      TypePtr first = tff_type();
      if (at(TokenKind::Star)) {
        std::vector<TypePtr> args{first};
        while (accept(TokenKind::Star)) args.push_back(tff_type());
        expect(TokenKind::RParen, "')'");
        expect(TokenKind::Arrow, "'>'");
        return make_mapping_type(std::move(args), atomic_type());
      }
      expect(TokenKind::RParen, "')'");
      if (accept(TokenKind::Arrow)) return make_mapping_type({first}, atomic_type());
      return first;
    }
    TypePtr a = atomic_type();
    if (accept(TokenKind::Arrow)) return make_mapping_type({a}, atomic_type());
    return a;
  }

  // ---- formulas --------------------------------------------------------------

  FormulaPtr logic() {
    FormulaPtr lhs = unit_formula();
    if (ho_ && at(TokenKind::Apply)) {
      std::vector<TermPtr> args;
      while (accept(TokenKind::Apply)) args.push_back(unit_term());
      if (is_pending_connective(lhs)) {
        auto nc = std::get<NcApplyFormula>(lhs->node);
        lhs = make_nc_apply(nc.conn, std::move(args), nc.pos);
      } else {
        lhs = make_apply(lhs, args);
      }
      if (is_binary_connective(peek().kind) || at(TokenKind::Equals) || at(TokenKind::NotEquals))
        fail_at(peek(), "an application chain must be parenthesized before '" + peek().lexeme + "'");
      return lhs;
    }
    reject_pending(lhs);
    if (!is_binary_connective(peek().kind)) return lhs;

    TokenKind op = take().kind;
    FormulaPtr rhs = unit_formula();
    reject_pending(rhs);
    lhs = make_binary(to_binary_op(op), lhs, rhs);
    if (op == TokenKind::And || op == TokenKind::Or) {
      while (accept(op)) {
        rhs = unit_formula();
        reject_pending(rhs);
        lhs = make_binary(to_binary_op(op), lhs, rhs);
      }
    }
    if (is_binary_connective(peek().kind))
      fail_at(peek(), "binary connectives do not associate; add parentheses before '" + peek().lexeme + "'");
    return lhs;
  }

  void reject_pending(const FormulaPtr& f) {
    if (is_pending_connective(f)) fail_at(peek(), "non-classical connective without arguments");
  }

  FormulaPtr unit_formula() {
    if (accept(TokenKind::Tilde)) {
      FormulaPtr operand = unit_formula();
      reject_pending(operand);
      return make_not(operand);
    }
    if (is_number(peek().kind) || at(TokenKind::DistinctObject)) {
      TermPtr lhs = literal_term();
      if (!at(TokenKind::Equals) && !at(TokenKind::NotEquals)) fail("'=' or '!=' after a non-logical constant");
      bool negated = take().kind == TokenKind::NotEquals;
      return make_equality(lhs, unitary_term(), negated);
    }
    FormulaPtr u = unitary();
    if (at(TokenKind::Equals) || at(TokenKind::NotEquals)) {
      reject_pending(u);
      bool negated = take().kind == TokenKind::NotEquals;
      return make_equality(to_term(u), unitary_term(), negated);
    }
    return u;
  }

  std::vector<Binding> bindings() {
    expect(TokenKind::LBracket, "'['");
    std::vector<Binding> out;
    do {
      const Token& v = expect(TokenKind::UpperWord, "a variable");
      Binding b{v.lexeme, nullptr};
      if (accept(TokenKind::Colon)) b.type = type();
      out.push_back(std::move(b));
    } while (accept(TokenKind::Comma));
    expect(TokenKind::RBracket, "']'");
    expect(TokenKind::Colon, "':'");
    return out;
  }

  FormulaPtr unitary() {
    const Token& t = peek();
    switch (t.kind) {
      case TokenKind::LParen: {
        take();
        FormulaPtr f = logic();
        expect(TokenKind::RParen, "')'");
        return f;
      }
      case TokenKind::Forall:
      case TokenKind::Exists: {
        Quantifier q = take().kind == TokenKind::Forall ? Quantifier::Forall : Quantifier::Exists;
        auto bs = bindings();
        FormulaPtr body = unit_formula();
        reject_pending(body);
        return make_quantified(q, std::move(bs), body);
      }
      case TokenKind::Lambda: {
        if (!ho_) fail_at(t, "lambda abstraction is only allowed in thf units");
        take();
        auto bs = bindings();
        FormulaPtr body = unit_formula();
        reject_pending(body);
        return make_lambda(std::move(bs), body);
      }
      case TokenKind::UpperWord:
        return make_variable_formula(take().lexeme);
      case TokenKind::LBrace:
        return connective_application(long_connective(), t.pos);
      case TokenKind::DollarWord:
        if (t.lexeme == "$true" || t.lexeme == "$false") return make_bool(take().lexeme == "$true");
        if (t.lexeme == "$ite") return conditional();
        if (t.lexeme == "$let") return let();
        return atom();
      case TokenKind::LowerWord:
      case TokenKind::SingleQuoted:
      case TokenKind::DollarDollarWord:
        return atom();
      default:
        if (is_short_form(t.kind)) return connective_application(short_connective(), t.pos);
        fail("a formula");
    }
  }

  FormulaPtr connective_application(NcConnective conn, SourcePos pos) {
    if (ho_) return make_nc_apply(std::move(conn), {}, pos);
    std::vector<TermPtr> args = arguments();
    return make_nc_apply(std::move(conn), std::move(args), pos);
  }

  FormulaPtr atom() {
    std::string symbol = take().lexeme;
    if (at(TokenKind::LParen)) return make_atom(std::move(symbol), arguments());
    return make_atom(std::move(symbol));
  }

  std::vector<TermPtr> arguments() {
    expect(TokenKind::LParen, "'('");
    std::vector<TermPtr> args;
    do {
      args.push_back(arg_term());
    } while (accept(TokenKind::Comma));
    expect(TokenKind::RParen, "')'");
    return args;
  }

  FormulaPtr conditional() {
    take();
    expect(TokenKind::LParen, "'('");
    FormulaPtr cond = logic();
    expect(TokenKind::Comma, "','");
    TermPtr then_branch = arg_term();
    expect(TokenKind::Comma, "','");
    TermPtr else_branch = arg_term();
    expect(TokenKind::RParen, "')'");
    return make_conditional(cond, then_branch, else_branch);
  }

  FormulaPtr let() {
    take();
    expect(TokenKind::LParen, "'('");
    std::vector<LetTyping> typings;
    auto one_typing = [&] {
      TypeDecl d = type_decl();
      typings.push_back(LetTyping{d.symbol, d.type});
    };
    if (accept(TokenKind::LBracket)) {
      do one_typing();
      while (accept(TokenKind::Comma));
      expect(TokenKind::RBracket, "']'");
    } else {
      one_typing();
    }
    expect(TokenKind::Comma, "','");
    std::vector<LetDefinition> defs;
    auto one_def = [&] {
      TermPtr lhs = unitary_term();
      expect(TokenKind::Assign, "':='");
      defs.push_back(LetDefinition{lhs, arg_term()});
    };
    if (accept(TokenKind::LBracket)) {
      do one_def();
      while (accept(TokenKind::Comma));
      expect(TokenKind::RBracket, "']'");
    } else {
      one_def();
    }
    expect(TokenKind::Comma, "','");
    TermPtr body = arg_term();
    expect(TokenKind::RParen, "')'");
    return make_let(std::move(typings), std::move(defs), body);
  }

  // ---- connectives ------------------------------------------------------------

  NcConnective long_connective() {
    expect(TokenKind::LBrace, "'{'");
    NcConnective conn;
    conn.surface = Surface::LongForm;
    const Token& name = take();
    if (name.kind != TokenKind::DollarWord && name.kind != TokenKind::DollarDollarWord)
      fail_at(name, "a connective name must start with $ or $$, found '" + name.lexeme + "'");
    conn.name = name.lexeme;
    if (accept(TokenKind::LParen)) {
      do {
        if (at(TokenKind::Hash)) {
          const Token& hash = take();
          if (conn.index) fail_at(hash, "a connective takes at most one index");
          conn.index = unitary_term();
        } else {
          const Token& key = take();
          if (key.kind != TokenKind::DollarWord && key.kind != TokenKind::DollarDollarWord)
            fail_at(key, "expected an index '#..' or a parameter name starting with $, found '" + key.lexeme + "'");
          expect(TokenKind::Assign, "':='");
          TermPtr value = at(TokenKind::LBracket) ? tuple() : unitary_term();
          conn.params.push_back(KeyParam{key.lexeme, value});
        }
      } while (accept(TokenKind::Comma));
      expect(TokenKind::RParen, "')'");
    }
    expect(TokenKind::RBrace, "'}'");
    return conn;
  }

  // Index of an indexed short form; consumes the whole short form.
  TermPtr short_form_index() {
    const Token& t = take();
    switch (t.kind) {
      case TokenKind::ShortBoxIndexed:
      case TokenKind::ShortDiamondIndexed:
      case TokenKind::ShortSlashIndexed:
        return index_term_from_lexeme(t.index_kind, t.index);
      case TokenKind::ShortBoxOpen: {
        TermPtr idx = unitary_term();
        expect(TokenKind::RBracket, "']'");
        return idx;
      }
      case TokenKind::ShortDiamondOpen: {
        TermPtr idx = unitary_term();
        expect(TokenKind::Arrow, "'>'");
        return idx;
      }
      case TokenKind::ShortSlashOpen: {
        TermPtr idx = unitary_term();
        expect(TokenKind::Backslash, "'\\'");
        return idx;
      }
      default:
        fail_at(t, "expected an indexed short form");
    }
  }

  NcConnective short_connective() {
    NcConnective conn;
    switch (peek().kind) {
      case TokenKind::ShortBoxDot:
        take();
        conn.surface = Surface::ShortBox;
        return conn;
      case TokenKind::ShortDiamondDot:
        take();
        conn.surface = Surface::ShortDiamond;
        return conn;
      case TokenKind::ShortSlashDot:
        take();
        conn.surface = Surface::ShortSlash;
        return conn;
      case TokenKind::ShortBoxIndexed:
      case TokenKind::ShortBoxOpen:
        conn.surface = Surface::ShortBox;
        break;
      case TokenKind::ShortDiamondIndexed:
      case TokenKind::ShortDiamondOpen:
        conn.surface = Surface::ShortDiamond;
        break;
      default:
        conn.surface = Surface::ShortSlash;
        break;
    }
    conn.index = short_form_index();
    return conn;
  }

  // ---- terms ---------------------------------------------------------------------

  TermPtr literal_term() {
    const Token& t = take();
    if (t.kind == TokenKind::DistinctObject) return make_distinct_object_term(t.lexeme);
    return make_number_term(classify_number(t.lexeme), t.lexeme);
  }

  TermPtr tuple() {
    expect(TokenKind::LBracket, "'['");
    std::vector<TermPtr> elems;
    if (!at(TokenKind::RBracket)) {
      do elems.push_back(at(TokenKind::LBracket) ? tuple() : arg_term());
      while (accept(TokenKind::Comma));
    }
    expect(TokenKind::RBracket, "']'");
    return make_tuple_term(std::move(elems));
  }

  TermPtr checked_to_term(const FormulaPtr& f) {
    reject_pending(f);
    return to_term(f);
  }

  // Function argument / connective argument: any logic formula or term.
  TermPtr arg_term() {
    if ((is_number(peek().kind) || at(TokenKind::DistinctObject)) && peek(1).kind != TokenKind::Equals &&
        peek(1).kind != TokenKind::NotEquals)
      return literal_term();
    if (at(TokenKind::LBracket)) return tuple();
    return checked_to_term(logic());
  }

  // Operand of = / != and of indices.
  TermPtr unitary_term() {
    if (is_number(peek().kind) || at(TokenKind::DistinctObject)) return literal_term();
    if (at(TokenKind::LBracket)) return tuple();
    return checked_to_term(unitary());
  }

  // Argument of @ in THF: a unit formula without an infix equality, so that
  // `f @ a = b` is rejected rather than read as f @ (a = b).
  TermPtr unit_term() {
    if (is_number(peek().kind) || at(TokenKind::DistinctObject)) return literal_term();
    if (at(TokenKind::LBracket)) return tuple();
    if (accept(TokenKind::Tilde)) {
      FormulaPtr operand = checked_formula(unit_term());
      return to_term(make_not(operand));
    }
    return checked_to_term(unitary());
  }

  FormulaPtr checked_formula(const TermPtr& t) {
    FormulaPtr f = to_formula(t);
    if (!f) fail_at(peek(), "expected a formula operand for '~'");
    return f;
  }
};

}  // namespace

SourceFile parse_source(std::string_view text) { return Parser(text, tokenize(text)).file(); }

Problem parse_problem(std::string_view text) {
  SourceFile file = parse_source(text);
  Problem out;
  for (auto& item : file.items) {
    if (auto* inc = std::get_if<IncludeDirective>(&item))
      throw ParseError(inc->pos, "an annotated formula", "include", "include directives need a file context");
    out.push_back(std::move(std::get<AnnotatedFormula>(item)));
  }
  return out;
}

FormulaPtr parse_formula(std::string_view text, Language language) {
  return Parser(text, tokenize(text)).single_formula(language);
}

TypePtr parse_type(std::string_view text, Language language) {
  return Parser(text, tokenize(text)).single_type(language);
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IncludeError, {}, "cannot read file '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace {

std::filesystem::path resolve_include(const std::filesystem::path& including, const IncludeDirective& inc,
                                      const LoadOptions& options) {
  std::filesystem::path rel(inc.path);
  if (rel.is_absolute() && std::filesystem::exists(rel)) return rel;
  std::filesystem::path local = including.parent_path() / rel;
  if (std::filesystem::exists(local)) return local;
  if (options.include_root) {
    std::filesystem::path rooted = *options.include_root / rel;
    if (std::filesystem::exists(rooted)) return rooted;
  }
  throw Error(ErrorKind::IncludeError, inc.pos, "cannot resolve include '" + inc.path + "'");
}

bool selected(const IncludeDirective& inc, const std::string& name) {
  return inc.selection.empty() || std::find(inc.selection.begin(), inc.selection.end(), name) != inc.selection.end();
}

constexpr int kMaxIncludeDepth = 32;

void load_into(const std::filesystem::path& file, const LoadOptions& options, const IncludeDirective* filter,
               int depth, Problem& out) {
  if (depth > kMaxIncludeDepth) throw Error(ErrorKind::IncludeError, {}, "include nesting too deep at " + file.string());
  std::string text = read_text_file(file);
  SourceFile src = parse_source(text);
  for (auto& item : src.items) {
    if (auto* inc = std::get_if<IncludeDirective>(&item)) {
      load_into(resolve_include(file, *inc, options), options, inc, depth + 1, out);
    } else {
      auto& u = std::get<AnnotatedFormula>(item);
      if (!filter || selected(*filter, u.name)) out.push_back(std::move(u));
    }
  }
}

std::string inline_into(const std::filesystem::path& file, const LoadOptions& options,
                        const IncludeDirective* filter, int depth) {
  if (depth > kMaxIncludeDepth) throw Error(ErrorKind::IncludeError, {}, "include nesting too deep at " + file.string());
  std::string text = read_text_file(file);
  SourceFile src = parse_source(text);
  std::string out;
  std::size_t copied = 0;
  for (const auto& item : src.items) {
    if (auto* inc = std::get_if<IncludeDirective>(&item)) {
      out.append(text, copied, inc->begin_offset - copied);
      out += "% included from " + inc->path + "\n";
      out += inline_into(resolve_include(file, *inc, options), options, inc, depth + 1);
      copied = inc->end_offset;
    } else if (filter && !selected(*filter, std::get<AnnotatedFormula>(item).name)) {
      const auto& u = std::get<AnnotatedFormula>(item);
      out.append(text, copied, u.begin_offset - copied);
      copied = u.end_offset;
    }
  }
  out.append(text, copied, std::string::npos);
  if (!out.empty() && out.back() != '\n') out += '\n';
  return out;
}

}  // namespace

Problem load_problem(const std::filesystem::path& file, const LoadOptions& options) {
  Problem out;
  load_into(file, options, nullptr, 0, out);
  return out;
}

std::string inline_includes(const std::filesystem::path& file, const LoadOptions& options) {
  return inline_into(file, options, nullptr, 0);
}

}  // namespace tptpnc
