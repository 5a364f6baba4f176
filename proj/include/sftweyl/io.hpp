#pragma once
#include <string>

#include "sftweyl/geometry.hpp"
#include "sftweyl/series.hpp"

namespace sftweyl {

// Parsed content of a signature file: the signature itself plus any
// geometry lines (d / cup / triple) found in the same file.
struct SignatureFile {
    SignaturePtr signature;
    GeometryData geometry;
};

// Line-based signature grammar:
//   m <int>
//   orbit <id> kappa=<int> cz=<int> [underlying_cz=<int>] [end=+|end=-]
//   form <id> deg=<int> [unit] [divisor]
//   h2 <id> c1=<int> pair=<rational>
//   d <orbit-id> <rational>
//   cup <form-id> <form-id> -> <form-id> <rational>
//   triple <form-id> <form-id> <form-id> <rational>
// '#' starts a comment; tokens are whitespace-separated. Orbits with an
// underlying_cz of the wrong parity are bad and rejected.
SignatureFile parse_signature_file(const std::string& text);
SignaturePtr parse_signature(const std::string& text);

// Geometry lines only, resolved against an existing signature. Lines the
// signature grammar owns (m/orbit/form/h2) are rejected here.
GeometryData parse_geometry(const std::string& text, const AlgebraSignature& sig);

// Expression grammar:
//   expr     := ["+"|"-"] term { ("+"|"-") term }
//   term     := rational | [rational "*"] factor { "*" factor }
//   factor   := gen ["^" int]
//   gen      := "p[" id "]" | "q[" id "]" | "t[" id "," int "]" | "z[" id "]" | "h"
//   rational := ["-"] int ["/" int]
// p/q may carry an end suffix (p+[id], q-[id], ...) which asserts the
// orbit's cobordism end. Negative exponents are allowed on h only.
// A literal monomial outside the window is an error, not a silent drop.
// `mode` selects how written words are normal-formed: Weyl for elements of
// the Weyl algebra, Super for cobordism-space elements whose p and q letters
// belong to opposite ends and never contract.
Series parse_series(const std::string& text, SignaturePtr sig, const TruncationWindow& w,
                    ProductKind mode = ProductKind::Weyl);

// Deterministic canonical form; parse_series(print_canonical(f)) == f.
std::string print_canonical(const Series& f);

} // namespace sftweyl
