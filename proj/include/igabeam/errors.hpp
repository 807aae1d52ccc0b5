#pragma once

#include <stdexcept>
#include <string>

namespace igabeam {

/// Invalid user input or violated precondition. The CLI maps this to exit code 1.
class InputError : public std::invalid_argument {
public:
    explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

/// Numerical breakdown: indefinite mass, non-convergence, mixed modes. Exit code 2.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace igabeam
