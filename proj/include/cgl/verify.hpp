#pragma once
// Every exact check for one (p, delta).
//
// Identity checks are statements that must hold (cancellations, eigenrelations,
// agreement of two independent computations).  Transcription checks compare a
// printed closed form with the computed value; a mismatch there is a finding about
// the printed formula, not a failure of the computation.
#include "cgl/exactnum.hpp"

#include <string>
#include <vector>

namespace cgl {

enum class CheckKind { identity, transcription };

struct Check {
    std::string name;
    CheckKind kind = CheckKind::identity;
    bool ok = false;
    std::string detail;
};

struct VerifyReport {
    Rational p, delta;
    std::vector<Check> checks;

    bool identities_pass() const;
    int count(CheckKind kind, bool ok) const;
};

VerifyReport verify_all(const Rational& p, const Rational& delta);

// "PASS"/"FAIL" for identities, "MATCH"/"MISMATCH" for transcriptions
std::string status_word(const Check& c);

}  // namespace cgl
