// Tokenizer for TPTP text including the non-classical connective short forms.

#ifndef TPTPNC_LEXER_HPP_
#define TPTPNC_LEXER_HPP_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "tptpnc/ast.hpp"

namespace tptpnc {

enum class TokenKind {
  LowerWord,
  UpperWord,
  SingleQuoted,
  DollarWord,
  DollarDollarWord,
  Integer,
  Rational,
  Real,
  DistinctObject,
  LParen,
  RParen,
  LBracket,
  RBracket,
  LBrace,
  RBrace,
  Comma,
  Dot,
  Colon,
  Assign,     // :=
  Identical,  // ==
  Equals,     // =
  NotEquals,  // !=
  Forall,     // !
  Exists,     // ?
  Lambda,     // ^
  Apply,      // @
  Tilde,      // ~
  Or,         // |
  And,        // &
  Implies,    // =>
  Implied,    // <=
  Iff,        // <=>
  Xor,        // <~>
  Arrow,      // >
  Star,       // *
  Hash,       // #
  Backslash,  // closes /#...\ when the index is not a single token
  // Complete short forms. The indexed variants carry the index in Token::index.
  ShortBoxDot,          // [.]
  ShortDiamondDot,      // <.>
  ShortSlashDot,        // /.\ .
  ShortBoxIndexed,      // [#i]
  ShortDiamondIndexed,  // <#i>
  ShortSlashIndexed,    // /#i\ .
  // Openers used when the index is a compound term; the parser reads the term
  // and the matching closer (], > or \).
  ShortBoxOpen,      // [#
  ShortDiamondOpen,  // <#
  ShortSlashOpen,    // /#
  EndOfInput,
};

std::string_view token_kind_name(TokenKind kind);

struct Token {
  TokenKind kind = TokenKind::EndOfInput;
  std::string lexeme;
  SourcePos pos;
  std::size_t offset = 0;  // byte offset of the first character
  // Indexed short forms only: the index lexeme and its own token kind.
  std::string index;
  TokenKind index_kind = TokenKind::EndOfInput;

  std::size_t end_offset() const { return offset + lexeme.size(); }
};

// Comments and whitespace produce no tokens. Throws ParseError on an
// unterminated quote or comment and on illegal characters.
std::vector<Token> tokenize(std::string_view input);

}  // namespace tptpnc

#endif  // TPTPNC_LEXER_HPP_
