#pragma once

#include <string>

#include <mpfr.h>

namespace magicineq {

/// Three-valued verification outcome. Pass of an exact check means the
/// residual is identically zero through the working order; pass of an
/// interval check means the strict inequality holds for the whole
/// enclosure. Inconclusive means "could not decide at this resolution",
/// never "false".
enum class Status { Pass, Fail, Inconclusive };

inline const char* status_name(Status s) {
    switch (s) {
        case Status::Pass: return "pass";
        case Status::Fail: return "fail";
        case Status::Inconclusive: return "inconclusive";
    }
    return "?";
}

/// Outcome record for one named check.
struct Certificate {
    std::string id;
    Status status = Status::Inconclusive;
    std::string evidence;      // residual summary or enclosure rendering
    long order = 0;            // truncation order used (0 when not series-based)
    mpfr_prec_t precision = 0; // working precision used (0 when exact)
};

} // namespace magicineq
