#pragma once

#include <stdexcept>
#include <string>

namespace knotpos {

enum class Errc {
    MalformedSyntax,
    ArcLabelNotTwice,
    InconsistentOrientation,
    NonPlanar,
    UnpairedCrossing,
    NonRealizable,
    BasepointOffComponent,
    NoSuchCrossing,
    NegativeCrossing,
    NotInnermost,
    NotOutermost,
    InvalidAlignment,
    NoValidSite,
    DisconnectedDiagram,
    TooFewRegions,
    TooManyComponents,
    NotWeaklyPositive,
    NotWSAP,
    NoPositiveCrossing,
    ResourceLimit,
    OmegaEqualsOne,
    NotReduced,
    NotSAP,
    VanishingDeterminant,
    NotFlaggedSharp,
    Io,
    Internal,
};

inline const char* errc_name(Errc e) {
    switch (e) {
        case Errc::MalformedSyntax: return "MalformedSyntax";
        case Errc::ArcLabelNotTwice: return "ArcLabelNotTwice";
        case Errc::InconsistentOrientation: return "InconsistentOrientation";
        case Errc::NonPlanar: return "NonPlanar";
        case Errc::UnpairedCrossing: return "UnpairedCrossing";
        case Errc::NonRealizable: return "NonRealizable";
        case Errc::BasepointOffComponent: return "BasepointOffComponent";
        case Errc::NoSuchCrossing: return "NoSuchCrossing";
        case Errc::NegativeCrossing: return "NegativeCrossing";
        case Errc::NotInnermost: return "NotInnermost";
        case Errc::NotOutermost: return "NotOutermost";
        case Errc::InvalidAlignment: return "InvalidAlignment";
        case Errc::NoValidSite: return "NoValidSite";
        case Errc::DisconnectedDiagram: return "DisconnectedDiagram";
        case Errc::TooFewRegions: return "TooFewRegions";
        case Errc::TooManyComponents: return "TooManyComponents";
        case Errc::NotWeaklyPositive: return "NotWeaklyPositive";
        case Errc::NotWSAP: return "NotWSAP";
        case Errc::NoPositiveCrossing: return "NoPositiveCrossing";
        case Errc::ResourceLimit: return "ResourceLimit";
        case Errc::OmegaEqualsOne: return "OmegaEqualsOne";
        case Errc::NotReduced: return "NotReduced";
        case Errc::NotSAP: return "NotSAP";
        case Errc::VanishingDeterminant: return "VanishingDeterminant";
        case Errc::NotFlaggedSharp: return "NotFlaggedSharp";
        case Errc::Io: return "Io";
        case Errc::Internal: return "Internal";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace knotpos
