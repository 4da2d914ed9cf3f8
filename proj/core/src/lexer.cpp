#include "tptpnc/lexer.hpp"

#include <cctype>
#include <optional>

#include "tptpnc/diagnostics.hpp"

namespace tptpnc {

std::string_view token_kind_name(TokenKind kind) {
  switch (kind) {
    case TokenKind::LowerWord: return "lower word";
    case TokenKind::UpperWord: return "variable";
    case TokenKind::SingleQuoted: return "quoted atom";
    case TokenKind::DollarWord: return "defined symbol";
    case TokenKind::DollarDollarWord: return "system symbol";
    case TokenKind::Integer: return "integer";
    case TokenKind::Rational: return "rational";
    case TokenKind::Real: return "real";
    case TokenKind::DistinctObject: return "distinct object";
    case TokenKind::LParen: return "'('";
    case TokenKind::RParen: return "')'";
    case TokenKind::LBracket: return "'['";
    case TokenKind::RBracket: return "']'";
    case TokenKind::LBrace: return "'{'";
    case TokenKind::RBrace: return "'}'";
    case TokenKind::Comma: return "','";
    case TokenKind::Dot: return "'.'";
    case TokenKind::Colon: return "':'";
    case TokenKind::Assign: return "':='";
    case TokenKind::Identical: return "'=='";
    case TokenKind::Equals: return "'='";
    case TokenKind::NotEquals: return "'!='";
    case TokenKind::Forall: return "'!'";
    case TokenKind::Exists: return "'?'";
    case TokenKind::Lambda: return "'^'";
    case TokenKind::Apply: return "'@'";
    case TokenKind::Tilde: return "'~'";
    case TokenKind::Or: return "'|'";
    case TokenKind::And: return "'&'";
    case TokenKind::Implies: return "'=>'";
    case TokenKind::Implied: return "'<='";
    case TokenKind::Iff: return "'<=>'";
    case TokenKind::Xor: return "'<~>'";
    case TokenKind::Arrow: return "'>'";
    case TokenKind::Star: return "'*'";
    case TokenKind::Hash: return "'#'";
    case TokenKind::Backslash: return "'\\'";
    case TokenKind::ShortBoxDot: return "'[.]'";
    case TokenKind::ShortDiamondDot: return "'<.>'";
    case TokenKind::ShortSlashDot: return "'/.\\'";
    case TokenKind::ShortBoxIndexed: return "indexed '[#..]'";
    case TokenKind::ShortDiamondIndexed: return "indexed '<#..>'";
    case TokenKind::ShortSlashIndexed: return "indexed '/#..\\'";
    case TokenKind::ShortBoxOpen: return "'[#'";
    case TokenKind::ShortDiamondOpen: return "'<#'";
    case TokenKind::ShortSlashOpen: return "'/#'";
    case TokenKind::EndOfInput: return "end of input";
  }
  return "token";
}

namespace {

bool is_alnum(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool is_lower(char c) { return c >= 'a' && c <= 'z'; }
bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

class Scanner {
 public:
  explicit Scanner(std::string_view in) : in_(in) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_layout();
      if (at_ >= in_.size()) break;
      out.push_back(next());
    }
    return out;
  }

 private:
  std::string_view in_;
  std::size_t at_ = 0;
  int line_ = 1;
  int col_ = 1;

  char peek(std::size_t k = 0) const { return at_ + k < in_.size() ? in_[at_ + k] : '\0'; }

  SourcePos here() const { return {line_, col_}; }

  void advance(std::size_t n) {
    for (std::size_t i = 0; i < n && at_ < in_.size(); ++i) {
      if (in_[at_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
      ++at_;
    }
  }

  [[noreturn]] void fail(SourcePos pos, const std::string& found, const std::string& msg) const {
    throw ParseError(pos, "a token", found, msg);
  }

  void skip_layout() {
    while (at_ < in_.size()) {
      char c = peek();
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance(1);
      } else if (c == '%') {
        while (at_ < in_.size() && peek() != '\n') advance(1);
      } else if (c == '/' && peek(1) == '*') {
        SourcePos start = here();
        advance(2);
        while (at_ < in_.size() && !(peek() == '*' && peek(1) == '/')) advance(1);
        if (at_ >= in_.size()) fail(start, "end of input", "unterminated comment");
        advance(2);
      } else {
        break;
      }
    }
  }

  // Length of a word/number/quoted token starting at `from`, without consuming.
  struct Atomic {
    TokenKind kind;
    std::size_t length;
  };

  std::optional<Atomic> scan_word(std::size_t from) const {
    auto get = [&](std::size_t i) { return i < in_.size() ? in_[i] : '\0'; };
    std::size_t i = from;
    char c = get(i);
    if (is_lower(c) || is_upper(c)) {
      while (is_alnum(get(i))) ++i;
      return Atomic{is_lower(c) ? TokenKind::LowerWord : TokenKind::UpperWord, i - from};
    }
    if (c == '$') {
      TokenKind kind = TokenKind::DollarWord;
      ++i;
      if (get(i) == '$') {
        kind = TokenKind::DollarDollarWord;
        ++i;
      }
      if (!is_alnum(get(i))) return std::nullopt;
      while (is_alnum(get(i))) ++i;
      return Atomic{kind, i - from};
    }
    if (c == '\'') {
      ++i;
      while (i < in_.size() && get(i) != '\'') {
        if (get(i) == '\\') ++i;
        if (get(i) == '\n') return std::nullopt;
        ++i;
      }
      if (i >= in_.size()) return std::nullopt;
      ++i;
      return Atomic{TokenKind::SingleQuoted, i - from};
    }
    return scan_number(from);
  }

  std::optional<Atomic> scan_number(std::size_t from) const {
    auto get = [&](std::size_t i) { return i < in_.size() ? in_[i] : '\0'; };
    std::size_t i = from;
    if ((get(i) == '+' || get(i) == '-') && is_digit(get(i + 1))) ++i;
    if (!is_digit(get(i))) return std::nullopt;
    while (is_digit(get(i))) ++i;
    TokenKind kind = TokenKind::Integer;
    if (get(i) == '/' && is_digit(get(i + 1))) {
      ++i;
      while (is_digit(get(i))) ++i;
      return Atomic{TokenKind::Rational, i - from};
    }
    if (get(i) == '.' && is_digit(get(i + 1))) {
      ++i;
      while (is_digit(get(i))) ++i;
      kind = TokenKind::Real;
    }
    if ((get(i) == 'e' || get(i) == 'E') &&
        (is_digit(get(i + 1)) || ((get(i + 1) == '+' || get(i + 1) == '-') && is_digit(get(i + 2))))) {
      i += 2;
      while (is_digit(get(i))) ++i;
      kind = TokenKind::Real;
    }
    return Atomic{kind, i - from};
  }

  Token make(TokenKind kind, std::size_t length) {
    Token t;
    t.kind = kind;
    t.pos = here();
    t.offset = at_;
    t.lexeme = std::string(in_.substr(at_, length));
    advance(length);
    return t;
  }

  // Recognizes [.], <.>, /.\ and the single-token indexed forms; otherwise the
  // opener tokens [#, <#, /#.
  std::optional<Token> short_form(char close, TokenKind dot, TokenKind indexed, TokenKind opener) {
    if (peek(1) == '.' && peek(2) == close) return make(dot, 3);
    if (peek(1) != '#') return std::nullopt;
    if (auto atom = scan_word(at_ + 2)) {
      std::size_t close_at = at_ + 2 + atom->length;
      if (close_at < in_.size() && in_[close_at] == close) {
        std::string index(in_.substr(at_ + 2, atom->length));
        Token t = make(indexed, atom->length + 3);
        t.index = std::move(index);
        t.index_kind = atom->kind;
        return t;
      }
    }
    return make(opener, 2);
  }

  Token next() {
    char c = peek();
    SourcePos pos = here();

    if (c == '"') {
      std::size_t i = at_ + 1;
      while (i < in_.size() && in_[i] != '"') {
        if (in_[i] == '\\') ++i;
        ++i;
      }
      if (i >= in_.size()) fail(pos, "end of input", "unterminated distinct object");
      return make(TokenKind::DistinctObject, i + 1 - at_);
    }
    if (c == '\'') {
      auto atom = scan_word(at_);
      if (!atom) fail(pos, "'", "unterminated quoted atom");
      return make(TokenKind::SingleQuoted, atom->length);
    }
    if (is_lower(c)) {
      auto atom = scan_word(at_);
      std::size_t len = atom->length;
      // Role with subrole, e.g. axiom-local.
      std::size_t after = at_ + len;
      if (after + 1 < in_.size() && in_[after] == '-' && is_lower(in_[after + 1])) {
        auto sub = scan_word(after + 1);
        len += 1 + sub->length;
      }
      return make(TokenKind::LowerWord, len);
    }
    if (is_upper(c) || c == '$') {
      auto atom = scan_word(at_);
      if (!atom) fail(pos, std::string(1, c), "malformed defined symbol");
      return make(atom->kind, atom->length);
    }
    if (is_digit(c) || ((c == '+' || c == '-') && is_digit(peek(1)))) {
      auto num = scan_number(at_);
      return make(num->kind, num->length);
    }

    switch (c) {
      case '(': return make(TokenKind::LParen, 1);
      case ')': return make(TokenKind::RParen, 1);
      case ']': return make(TokenKind::RBracket, 1);
      case '{': return make(TokenKind::LBrace, 1);
      case '}': return make(TokenKind::RBrace, 1);
      case ',': return make(TokenKind::Comma, 1);
      case '.': return make(TokenKind::Dot, 1);
      case '^': return make(TokenKind::Lambda, 1);
      case '@': return make(TokenKind::Apply, 1);
      case '~': return make(TokenKind::Tilde, 1);
      case '|': return make(TokenKind::Or, 1);
      case '&': return make(TokenKind::And, 1);
      case '>': return make(TokenKind::Arrow, 1);
      case '*': return make(TokenKind::Star, 1);
      case '#': return make(TokenKind::Hash, 1);
      case '?': return make(TokenKind::Exists, 1);
      case '\\': return make(TokenKind::Backslash, 1);
      case ':': return peek(1) == '=' ? make(TokenKind::Assign, 2) : make(TokenKind::Colon, 1);
      case '!': return peek(1) == '=' ? make(TokenKind::NotEquals, 2) : make(TokenKind::Forall, 1);
      case '=':
        if (peek(1) == '=') return make(TokenKind::Identical, 2);
        if (peek(1) == '>') return make(TokenKind::Implies, 2);
        return make(TokenKind::Equals, 1);
      case '[': {
        if (auto t = short_form(']', TokenKind::ShortBoxDot, TokenKind::ShortBoxIndexed,
                                TokenKind::ShortBoxOpen))
          return *t;
        return make(TokenKind::LBracket, 1);
      }
      case '<': {
        if (peek(1) == '=' && peek(2) == '>') return make(TokenKind::Iff, 3);
        if (peek(1) == '=') return make(TokenKind::Implied, 2);
        if (peek(1) == '~' && peek(2) == '>') return make(TokenKind::Xor, 3);
        if (auto t = short_form('>', TokenKind::ShortDiamondDot, TokenKind::ShortDiamondIndexed,
                                TokenKind::ShortDiamondOpen))
          return *t;
        fail(pos, "<", "unexpected '<'");
      }
      case '/': {
        if (auto t = short_form('\\', TokenKind::ShortSlashDot, TokenKind::ShortSlashIndexed,
                                TokenKind::ShortSlashOpen))
          return *t;
        fail(pos, "/", "unexpected '/'");
      }
      default:
        break;
    }
    fail(pos, std::string(1, c), std::string("illegal character '") + c + "'");
  }
};

}  // namespace

std::vector<Token> tokenize(std::string_view input) { return Scanner(input).run(); }

}  // namespace tptpnc
