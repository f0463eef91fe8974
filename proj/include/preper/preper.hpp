#pragma once

#include <optional>
#include <string>
#include <vector>

#include "preper/family.hpp"
#include "preper/tropical.hpp"

namespace preper {

/// Candidate set exceeded the configured cap; never a wrong answer.
struct resource_limit_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Functional digraph on the rational preperiodic points. Nodes are sorted
/// (finite points ascending, infinity last); succ has out-degree one; the
/// type of a node is (eventual period l, tail length t).
struct Portrait {
    std::vector<ExtRational> nodes;
    std::vector<int> succ;
    std::vector<std::pair<int, int>> types;

    int size() const { return static_cast<int>(nodes.size()); }
    int max_cycle() const;
    bool has_node(const ExtRational& p) const;
    bool has_cycle_of_length(int l) const;
    bool has_type(int l, int tail) const;

    /// Canonical key of the isomorphism class of the digraph.
    std::string canonical_key() const;
    /// FNV-1a hex digest of the canonical key.
    std::string hash() const;
};

enum class PreperMethod { TropicalFilter, ExhaustiveSearch };

const char* method_name(PreperMethod m);

struct PrePerResult {
    Portrait portrait;
    PreperMethod method = PreperMethod::ExhaustiveSearch;
    std::optional<Int> search_bound_used;
    int count = 0;
};

struct EngineOptions {
    const FamilyLift* family = nullptr; // hint enabling tropical filters
    bool use_filters = true;
    uint64_t candidate_cap = 10'000'000;
};

/// Exact projective evaluation (F(a,b) : G(a,b)) in lowest terms.
ExtRational evaluate(const SpecializedMap& m, const ExtRational& P);

/// A height bound B with H(P) <= B for every rational preperiodic P.
/// For polynomial maps this combines the real escape radius with the forced
/// denominator structure; in general it comes from the elimination-identity
/// constant C with h(f(P)) >= d h(P) - C, giving B = exp(C/(d-1)).
Rational escape_bound(const SpecializedMap& m);

/// Exact computation of PrePer(f_t, Q) with portrait.
PrePerResult compute_preper(const SpecializedMap& m, const EngineOptions& opts = {});

/// 3 p^2 for the smallest prime p of good reduction.
long cycle_length_bound(const SpecializedMap& m);

struct CountBound {
    Int rational_bound;                     // 5 * 2^(16 s d^3) + 3
    std::optional<double> polynomial_bound; // [(d^2-2d+2)/log d + eps] s log s
};

CountBound preper_count_bound(const SpecializedMap& m, double epsilon);

/// Builds the portrait from an already-known preperiodic set (checked for
/// forward closure).
Portrait assemble_portrait(const SpecializedMap& m, const std::vector<ExtRational>& points);

/// Portrait serialization: {"t", "nodes", "edges", "types", "method"}.
std::string portrait_to_json(const Rational& t, const PrePerResult& r);

} // namespace preper
