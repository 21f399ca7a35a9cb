#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tilejep {

enum class ErrorCode {
    NonBijectiveOrder,
    ArityMismatch,
    BadOrderIndex,
    ParseError,
    DimsMismatch,
    FamilyTooSmall,
    BudgetExceeded,
    WrongRole,
    BadTileId,
    MisalignedBlock,
    UnknownCodeword,
    Unsupported,
    VariantMismatch,
    AlignmentInconsistent,
    NotAMember,
    InvalidTiling,
    CompletionFailed,
    SplitNotFound,
    UntiledCell,
    Usage,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

// Carries the byte offset into the input at which parsing failed.
class ParseError : public Error {
public:
    ParseError(std::size_t offset, const std::string& what)
        : Error(ErrorCode::ParseError, "at byte " + std::to_string(offset) + ": " + what),
          offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

} // namespace tilejep
