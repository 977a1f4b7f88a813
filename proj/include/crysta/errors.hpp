#pragma once

#include <stdexcept>
#include <string>

namespace crysta {

enum class ErrorCode {
    odd_order,
    fixed_point,
    not_involution,
    disconnected,
    syntax,
    not_contracted,
    non_bipartite,
    odd_genus_value,
    not_simple,
    stale_move,
    class_mismatch,
    overflow_guard,
    resource_limit,
    io,
};

const char* error_code_name(ErrorCode code);

/// Library-wide error type. `detail_a`/`detail_b` carry the color/vertex
/// (or line number) the message refers to, -1 when not meaningful.
class GemError : public std::runtime_error {
public:
    GemError(ErrorCode code, const std::string& message, int detail_a = -1, int detail_b = -1)
        : std::runtime_error(message), code_(code), a_(detail_a), b_(detail_b) {}

    ErrorCode code() const noexcept { return code_; }
    int detail_a() const noexcept { return a_; }
    int detail_b() const noexcept { return b_; }

private:
    ErrorCode code_;
    int a_;
    int b_;
};

}  // namespace crysta
