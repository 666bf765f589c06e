#pragma once

#include <stdexcept>
#include <string>

namespace pseudorot {

// All library failures carry a short machine-readable kind plus a human
// message. Stage drivers catch these and re-raise with a stage label.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& message)
        : std::runtime_error(kind + ": " + message), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

[[noreturn]] inline void fail(const std::string& kind, const std::string& message) {
    throw Error(kind, message);
}

}  // namespace pseudorot
