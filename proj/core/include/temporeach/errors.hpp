#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace temporeach {

// Malformed text input. line is 1-based, 0 when not tied to a line.
class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& what)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
          line_(line) {}
    int line() const noexcept { return line_; }

private:
    int line_;
};

// Structurally valid input that breaks a model invariant.
class InvalidInput : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A solver declined to run because a cap or precondition would be exceeded.
class Refusal : public std::runtime_error {
public:
    Refusal(std::string reason, const std::string& detail)
        : std::runtime_error(detail.empty() ? reason : reason + ": " + detail),
          reason_(std::move(reason)) {}
    const std::string& reason() const noexcept { return reason_; }

private:
    std::string reason_;
};

}  // namespace temporeach
