#pragma once

#include <array>
#include <iosfwd>
#include <map>

#include "preper/preper.hpp"

namespace preper {

enum PoonenLabel : uint8_t {
    LABEL_E0 = 1 << 0,
    LABEL_E1 = 1 << 1,
    LABEL_E2 = 1 << 2,
    LABEL_E3 = 1 << 3,
    LABEL_E4 = 1 << 4,
    LABEL_E5 = 1 << 5,
    LABEL_E6 = 1 << 6,
};

std::string labels_str(uint8_t labels);

struct CensusRow {
    Rational t;
    int count = 0;
    int excess = 0;
    std::string portrait_hash;
    uint8_t labels = 0;
    int max_cycle = 0;
    std::vector<uint64_t> bad_primes;
    PreperMethod method = PreperMethod::ExhaustiveSearch;
    bool unclassified = false;
};

struct IdentityReport {
    bool applicable = false;
    long ne_direct = 0, ne_from_classes = 0;
    Int r_direct, r_from_classes;
    bool ne_ok = false, r_ok = false;
};

struct CensusSummary {
    std::string family;
    long X = 0;
    Int A;                  // total preperiodic count
    Int R;                  // total excess over the generic count
    long NE = 0;            // parameters with excess > 0
    std::array<long, 5> NZ{}; // NZ[l] = parameters with a cycle longer than l, l = 1..4
    std::array<long, 7> class_tallies{}; // n(E0)..n(E6)
    long degenerate = 0;
    long unclassified = 0;
    long rows = 0;
    std::map<int, std::vector<Rational>> large_cycles; // l -> parameters, l = 1..3
    IdentityReport identities;
};

struct CensusOptions {
    int workers = 1;
    bool use_filters = true;
    bool classify = true; // Poonen labels (quadratic family only)
    uint64_t candidate_cap = 10'000'000;
    bool progress = false;
    std::string cache_dir; // optional portrait memo persistence
};

/// Receives rows in enumeration order (ascending denominator, then numerator).
class RowSink {
public:
    virtual ~RowSink() = default;
    virtual void accept(const CensusRow& row) = 0;
};

/// Writes the census CSV columns; byte-stable across worker counts.
class CsvRowSink : public RowSink {
public:
    explicit CsvRowSink(std::ostream& os);
    void accept(const CensusRow& row) override;

private:
    std::ostream& os_;
};

/// Collects rows in memory (tests, small X).
class CollectSink : public RowSink {
public:
    void accept(const CensusRow& row) override { rows.push_back(row); }
    std::vector<CensusRow> rows;
};

/// Height-ordered parameter sweep. Deterministic: output and summary are
/// independent of the worker count.
CensusSummary run_census(const FamilyLift& family, long X, const CensusOptions& opts = {},
                         RowSink* sink = nullptr);

/// Poonen classification of one quadratic-family row. Sets *unclassified
/// when the portrait is inconsistent with every label while excess > 0.
uint8_t poonen_classify(const Rational& t, const Portrait& portrait, int excess,
                        bool* unclassified);

/// Recomputes N(E, X) and R(X) from the class tallies via the counting
/// identities (valid X >= 29) and compares with the direct sums.
IdentityReport identity_check(const CensusSummary& s);

/// Parameters whose portrait has a cycle longer than l, for l = 1, 2, 3.
const std::vector<Rational>& large_cycle_scan(const CensusSummary& s, int l);

std::string summary_to_json(const CensusSummary& s);

} // namespace preper
