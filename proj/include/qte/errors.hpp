#pragma once

#include <stdexcept>
#include <string>

namespace qte {

// Invalid experiment configuration or construction parameters. CLI exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Dataset files missing or malformed. CLI exit code 3.
struct IngestError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Non-finite values where finite ones are required. CLI exit code 4.
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace qte
