#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace motsteen {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Operands built over different primes or base modes.
class ContractError : public Error {
public:
    using Error::Error;
};

// A computation needs Milnor monomials beyond the configured first-degree window.
class WindowError : public Error {
public:
    using Error::Error;
};

// A nonzero class would have v-exponent above the truncation of the B mu_p module.
class TruncationError : public Error {
public:
    using Error::Error;
};

// Invalid module presentation (schema, homogeneity, or Q_t^2 != 0).
class ModuleError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t offset, std::vector<std::string> expected)
        : Error(format(message, offset, expected)), offset_(offset), expected_(std::move(expected))
    {
    }

    std::size_t offset() const { return offset_; }
    const std::vector<std::string>& expected() const { return expected_; }

private:
    static std::string format(const std::string& message, std::size_t offset,
                              const std::vector<std::string>& expected)
    {
        std::string out = message + " at offset " + std::to_string(offset);
        if (!expected.empty()) {
            out += "; expected one of:";
            for (const auto& e : expected)
                out += " " + e;
        }
        return out;
    }

    std::size_t offset_;
    std::vector<std::string> expected_;
};

}  // namespace motsteen
