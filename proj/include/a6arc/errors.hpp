#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace a6arc {

struct composite_p : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct unsupported_degree : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct no_cube_root : std::domain_error {
    using std::domain_error::domain_error;
};

struct invalid_q : std::domain_error {
    using std::domain_error::domain_error;
};

struct equal_points : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct singular_matrix : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct closure_overflow : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct word_replay_mismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct bad_index : std::out_of_range {
    using std::out_of_range::out_of_range;
};

struct zero_resultant : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct not_an_arc : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A certified postcondition failed. Never expected to fire on valid inputs.
struct internal_inconsistency : std::logic_error {
    using std::logic_error::logic_error;
};

struct cache_corrupt : std::runtime_error {
    std::size_t line_no;
    cache_corrupt(std::size_t line, const std::string& what)
        : std::runtime_error("cache line " + std::to_string(line) + ": " + what), line_no(line) {}
};

} // namespace a6arc
