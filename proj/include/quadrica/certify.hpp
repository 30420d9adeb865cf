#pragma once

#include <optional>
#include <string>
#include <vector>

#include "quadrica/brauer.hpp"
#include "quadrica/funfield.hpp"
#include "quadrica/quadform.hpp"

namespace quadrica {

inline constexpr const char* kEngineVersion = "quadrica 1.0.0";
inline constexpr const char* kBaseFactTag = "canonical-fiber-class";
inline constexpr const char* kCertSchema = "quadrica-cert/1";

enum class Outcome { Rational, NotStablyRational, Open, Unknown };

/// Which rule decided a verdict. The degeneration rules double as the
/// constructor selector.
enum class Rule {
    SumAtMostFour,
    TwoZeroDegrees,
    OpenType,
    Hpt,
    PlaneQ1,
    PlaneQ2,
    PlaneQ3,
    D2Zero,
    ConstantBlock,
    EZero,
    A1, A2, A3, A4,
    B1, B2,
    C1, C2,
    Q1, Q2,
    OutOfScope,
};

const char* to_string(Outcome o);
const char* to_string(Rule r);
Outcome parse_outcome(const std::string& s);
Rule parse_rule(const std::string& s);

struct PirutkaEntry {
    PrimeDivisor divisor;
    CurveClass alpha_residue, beta_residue;
    bool match = false;
    HenselReport hensel;
    bool passed = false;
    /// Set when the divisor could not be processed; the other fields are
    /// then meaningless.
    std::string error;
};

struct PirutkaReport {
    enum class Overall { Pass, Fail, Inconclusive };
    std::vector<PirutkaEntry> entries;
    Overall overall = Overall::Pass;
};

const char* to_string(PirutkaReport::Overall o);

/// Compares residues of alpha with those of the Clifford invariant of the
/// fiber and runs the Hensel test on its discriminant, at every divisor where
/// either class ramifies.
PirutkaReport pirutka_check(const DiagForm& fiber, const BrauerClass& alpha);

struct ArasonResult {
    bool d_nontrivial = false;
    bool alpha_nonzero = false;
    std::optional<PrimeDivisor> witness;
    std::string reason;

    bool holds() const noexcept { return d_nontrivial && alpha_nonzero; }
};

ArasonResult arason_nontriviality(const DiagForm& fiber, const BrauerClass& alpha);

struct Certificate {
    std::string schema = kCertSchema;
    std::string engine = kEngineVersion;
    std::string base_fact = kBaseFactTag;
    BundleType input_type;
    Rule rule = Rule::OutOfScope;
    DiagForm degeneration;
    bool weak_bundle = false;
    Poly gcd;
    DiagForm fiber;
    SimilarityWitness similarity;
    SquareClass discriminant;
    BrauerClass alpha;
    ResidueProfile alpha_residues;
    BrauerClass clifford;
    PirutkaReport pirutka;
    ArasonResult arason;
    std::vector<std::string> conclusion;
};

struct Verdict {
    Outcome outcome = Outcome::Unknown;
    Rule rule = Rule::OutOfScope;
    BundleType type;
    std::optional<Certificate> certificate;
    /// Reordering applied to the input, or another rule that also applies.
    std::vector<std::string> notes;
};

/// Throws DomainError on a parity violation. Unordered input is sorted and
/// the verdict carries a note.
Verdict verdict_p2(const BundleType& t);

/// Throws DomainError on parity or order violations.
Verdict verdict_p1xp1(const BundleType& t);

Verdict verdict(const BundleType& t);

/// Rule chosen for a not stably rational type, or nullopt.
std::optional<Rule> degeneration_rule(const BundleType& t);

DiagForm construct_degeneration_p2(const BundleType& t);
DiagForm construct_degeneration_p1xp1(const BundleType& t, Rule rule);
DiagForm construct_degeneration(const BundleType& t, Rule rule);

/// Runs every link of the chain; a failed link throws Error naming it.
Certificate build_certificate(const BundleType& t, Rule rule);
Certificate build_certificate(const BundleType& t);

struct ReplayResult {
    std::vector<std::string> mismatches;

    bool ok() const noexcept { return mismatches.empty(); }
};

/// Recomputes every derived field and boolean from the stored degeneration,
/// witness and alpha.
ReplayResult replay(const Certificate& c);

}  // namespace quadrica
