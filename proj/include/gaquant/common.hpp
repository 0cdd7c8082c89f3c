#ifndef GAQUANT_COMMON_HPP
#define GAQUANT_COMMON_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace gaquant {

/// Failure categories surfaced by the library. Every thrown gaquant::Error
/// carries one of these so callers (and the CLI) can branch on the kind.
enum class ErrorCode {
    invalid_genome,
    invalid_argument,
    invalid_input,
    incompatible_features,
    decode_error,
    empty_dataset,
    io_error,
    config_error,
};

inline const char* to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::invalid_genome: return "invalid-genome";
    case ErrorCode::invalid_argument: return "invalid-argument";
    case ErrorCode::invalid_input: return "invalid-input";
    case ErrorCode::incompatible_features: return "incompatible-features";
    case ErrorCode::decode_error: return "decode-error";
    case ErrorCode::empty_dataset: return "empty-dataset";
    case ErrorCode::io_error: return "io-error";
    case ErrorCode::config_error: return "config-error";
    }
    return "unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

enum class Descriptor { bic, gch };

inline const char* to_string(Descriptor d) {
    return d == Descriptor::bic ? "bic" : "gch";
}

inline Descriptor parse_descriptor(std::string_view text) {
    if (text == "bic" || text == "BIC") return Descriptor::bic;
    if (text == "gch" || text == "GCH") return Descriptor::gch;
    throw Error(ErrorCode::invalid_argument, "unknown descriptor '" + std::string(text) + "'");
}

} // namespace gaquant

#endif // GAQUANT_COMMON_HPP
