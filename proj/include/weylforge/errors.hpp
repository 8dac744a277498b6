#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace wf {

// kind is a stable identifier (e.g. "NotClosed"); tests and the CLI switch on it.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& detail)
        : std::runtime_error(kind + ": " + detail), kind_(std::move(kind)) {}
    const std::string& kind() const { return kind_; }

private:
    std::string kind_;
};

[[noreturn]] inline void fail(const std::string& kind, const std::string& detail = "") {
    throw Error(kind, detail);
}

// Global cap on stored terms, from WEYLFORGE_MAX_TERMS (default 1e6).
std::size_t max_terms();
void set_max_terms(std::size_t cap);
inline void check_terms(std::size_t n) {
    if (n > max_terms()) fail("TermCapExceeded", std::to_string(n) + " terms");
}

}  // namespace wf
