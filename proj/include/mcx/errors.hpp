#pragma once

#include <stdexcept>
#include <string>

namespace mcx {

enum class errc {
    missing_singleton,
    duplicate_singleton,
    containment_violation,
    cycle_in_order,
    singleton_relation_violation,
    vertex_out_of_range,
    owner_mismatch,
    unknown_face,
    dimension_too_high,
    not_an_edge,
    size_limit_exceeded,
    cross_check_mismatch,
    not_comparable,
    duplicate_edge,
    loop_not_allowed,
    empty_edge,
    singleton_hyperedge,
    not_downward_closed,
    malformed_incidence,
    negative_color,
    empty_face,
    parse_error,
};

const char* errc_name(errc code);

/// Thrown by every validation and size-bound failure in the library.
class Error : public std::runtime_error {
public:
    Error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    errc code() const { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw Error(code, what); }

} // namespace mcx
