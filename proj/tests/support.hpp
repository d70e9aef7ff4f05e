#pragma once

#include "minspace/error.hpp"
#include "minspace/generators.hpp"
#include "minspace/syntax.hpp"

#include <doctest.h>

#include <functional>
#include <string>

namespace test {

/// Code of the minspace::Error thrown by f, or "" when nothing is thrown.
inline std::string error_code(const std::function<void()>& f) {
  try {
    f();
  } catch (const minspace::Error& e) {
    return e.code();
  }
  return "";
}

inline minspace::Signature sig(const char* text) { return minspace::parse_signature(text); }
inline minspace::Term term(const minspace::Signature& s, const char* text) { return minspace::parse_term(text, s); }
inline minspace::Atom atom(const minspace::Signature& s, const char* text) { return minspace::parse_atom(text, s); }

inline std::string str(const minspace::Signature& s, const minspace::Atom& a) { return minspace::to_string(s, a); }

} // namespace test

#define CHECK_CODE(expr, code) CHECK(test::error_code([&] { (void)(expr); }) == (code))
