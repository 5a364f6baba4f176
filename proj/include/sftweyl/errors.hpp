#pragma once
#include <stdexcept>
#include <string>

namespace sftweyl {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Lexical/grammar problem in an input text; line and column point inside
// the offending token (1-based).
struct SyntaxError : Error {
    int line, column;
    SyntaxError(int line_, int column_, const std::string& msg)
        : Error("syntax error at " + std::to_string(line_) + ":" + std::to_string(column_) + ": " + msg),
          line(line_), column(column_) {}
};

struct ValidationError : Error {
    explicit ValidationError(const std::string& msg) : Error("validation error: " + msg) {}
};

struct UnknownGenerator : SyntaxError {
    UnknownGenerator(int line, int column, const std::string& name)
        : SyntaxError(line, column, "unknown generator id '" + name + "'") {}
};

struct WindowOverflow : SyntaxError {
    WindowOverflow(int line, int column, const std::string& msg)
        : SyntaxError(line, column, "monomial outside window: " + msg) {}
};

struct MixedSignature : Error {
    MixedSignature() : Error("operands belong to different signatures") {}
};

struct WindowMismatch : Error {
    WindowMismatch() : Error("operands carry different truncation windows") {}
};

struct WindowNotContained : Error {
    WindowNotContained() : Error("target window is not contained in the source window") {}
};

struct NonHomogeneous : Error {
    NonHomogeneous() : Error("series is not homogeneous") {}
};

struct HbarPresent : Error {
    HbarPresent() : Error("operand must be hbar-free") {}
};

struct EvenSummand : Error {
    EvenSummand() : Error("Hamiltonian has a summand of even parity") {}
};

struct MasterFails : Error {
    MasterFails() : Error("master equation fails for the supplied Hamiltonian") {}
};

struct NoDivisorForm : Error {
    NoDivisorForm() : Error("signature declares no divisor form") {}
};

struct NotClosed : Error {
    NotClosed() : Error("series is not closed under the differential") {}
};

struct WindowTooSmall : Error {
    explicit WindowTooSmall(const std::string& msg) : Error("window too small: " + msg) {}
};

struct NotDSpace : Error {
    explicit NotDSpace(const std::string& msg) : Error("not a D-space element: " + msg) {}
};

struct ZeroWeightMonomial : Error {
    ZeroWeightMonomial() : Error("potential contains a monomial of zero weight") {}
};

struct FundamentalFails : Error {
    FundamentalFails() : Error("fundamental identity fails for the supplied data") {}
};

struct WrongEnd : Error {
    explicit WrongEnd(const std::string& msg) : Error("wrong cobordism end: " + msg) {}
};

struct SelfTestFailed : Error {
    explicit SelfTestFailed(const std::string& msg) : Error("self-test failed: " + msg) {}
};

} // namespace sftweyl
