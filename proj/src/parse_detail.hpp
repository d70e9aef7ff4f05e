#pragma once

// Recursive-descent pieces shared by the sentence parser and the file loaders.

#include "lexer.hpp"
#include "minspace/syntax.hpp"

#include <span>
#include <string>

namespace minspace::detail {

/// Parses the remainder of a `const|fn|rel` declaration (keyword already
/// consumed) up to, but not including, the terminating ';'.
Family parse_family(Lexer& lex, const std::string& keyword);

Term parse_term(Lexer& lex, const Signature& sig, std::span<const std::string> variables);
Atom parse_atom(Lexer& lex, const Signature& sig, std::span<const std::string> variables);
Sentence parse_sentence(Lexer& lex, const Signature& sig, std::span<const std::string> variables);

/// Parses an optionally signed integer.
long long parse_integer(Lexer& lex);

} // namespace minspace::detail
