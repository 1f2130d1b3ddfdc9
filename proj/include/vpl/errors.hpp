#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace vpl {

// Resource limits. Overflow is always a hard error.
struct Budgets {
    std::size_t closure = 4096;     // max elements in any generated closure
    std::size_t enum_len = 16;     // max word length for enumerations
    std::size_t search_len = 12;   // max length for exhaustive witness searches
};

class BudgetExceeded : public std::runtime_error {
public:
    BudgetExceeded(std::string stage, const std::string& what)
        : std::runtime_error(stage + ": budget exceeded: " + what), stage_(std::move(stage)) {}
    const std::string& stage() const { return stage_; }

private:
    std::string stage_;
};

class InvalidInput : public std::runtime_error {
public:
    explicit InvalidInput(const std::string& what) : std::runtime_error(what) {}
};

class InternalError : public std::logic_error {
public:
    explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace vpl
