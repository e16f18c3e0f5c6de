#pragma once

#include <stdexcept>
#include <string>

namespace botscope {

// Exit-code mapping for the CLI: io_error -> 1, invalid_parameter_error -> 2,
// infeasibility_error -> 3.

struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct invalid_parameter_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct infeasibility_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace botscope
