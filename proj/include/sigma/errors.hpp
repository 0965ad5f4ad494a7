#pragma once

#include <stdexcept>
#include <string>

namespace sigma {

enum class Errc {
    NotAssociative,
    NoIdentity,
    NoInverse,
    MalformedTable,
    OrderCapExceeded,
    InvalidPermutation,
    InvalidAction,
    NotNormal,
    NotContained,
    NotNormalSection,
    NotChiefFactor,
    NotSoluble,
    NotSigmaSoluble,
    TrivialGroup,
    SubgroupCapExceeded,
    CapExceeded,
    ParseError,
    ValidationError,
};

inline const char* errc_name(Errc c) {
    switch (c) {
        case Errc::NotAssociative: return "NotAssociative";
        case Errc::NoIdentity: return "NoIdentity";
        case Errc::NoInverse: return "NoInverse";
        case Errc::MalformedTable: return "MalformedTable";
        case Errc::OrderCapExceeded: return "OrderCapExceeded";
        case Errc::InvalidPermutation: return "InvalidPermutation";
        case Errc::InvalidAction: return "InvalidAction";
        case Errc::NotNormal: return "NotNormal";
        case Errc::NotContained: return "NotContained";
        case Errc::NotNormalSection: return "NotNormalSection";
        case Errc::NotChiefFactor: return "NotChiefFactor";
        case Errc::NotSoluble: return "NotSoluble";
        case Errc::NotSigmaSoluble: return "NotSigmaSoluble";
        case Errc::TrivialGroup: return "TrivialGroup";
        case Errc::SubgroupCapExceeded: return "SubgroupCapExceeded";
        case Errc::CapExceeded: return "CapExceeded";
        case Errc::ParseError: return "ParseError";
        case Errc::ValidationError: return "ValidationError";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
    Errc code() const { return code_; }

private:
    Errc code_;
};

} // namespace sigma
