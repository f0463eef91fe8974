#pragma once

#include <map>
#include <string>
#include <vector>

#include "preper/polyz.hpp"

namespace preper {

/// Specialization attempted at a root of the resultant polynomial.
struct degenerate_parameter_error : std::runtime_error {
    explicit degenerate_parameter_error(const std::string& t)
        : std::runtime_error("degenerate parameter t = " + t + " (resultant vanishes)"),
          parameter(t) {}
    std::string parameter;
};

/// One member of a family: a content-normalized pair of integer binary
/// forms of equal degree d with nonzero resultant.
struct SpecializedMap {
    int degree = 0;
    std::vector<Int> F; // F[i] = coeff of X^i Y^(d-i)
    std::vector<Int> G;
    Rational t;

    bool is_polynomial() const; // G proportional to Y^d
};

struct ResultantPoly {
    PolyZ poly;
    long degree = -1;
    std::vector<Rational> roots; // exact rational roots = excluded parameters
};

/// Structural shape of a family, used to pick engine strategies and
/// valuation filters. General means no special structure is assumed.
enum class FamilyShape { Polynomial, InversePoly, InversePolyDual, ThreeCycle, General };

/// Integral lift of a one-parameter family: F, G in Z[T][X,Y] homogeneous of
/// the same degree d with jointly coprime coefficients, plus the declared
/// generic portrait (constant points only).
class FamilyLift {
public:
    /// Builds and validates: joint content 1 (normalized automatically),
    /// resultant not identically zero, deg R_f <= 2dd', and every declared
    /// gamma point constant-preperiodic under formal evaluation.
    FamilyLift(std::string name, int degree, std::vector<PolyZ> F, std::vector<PolyZ> G,
               std::vector<ExtRational> gamma);

    const std::string& name() const { return name_; }
    int degree() const { return degree_; }
    const std::vector<PolyZ>& F() const { return F_; }
    const std::vector<PolyZ>& G() const { return G_; }
    const std::vector<ExtRational>& gamma() const { return gamma_; }
    const std::vector<int>& gamma_edges() const { return gamma_edges_; }

    const ResultantPoly& resultant() const { return resultant_; }
    int codegree() const { return codegree_; }

    FamilyShape shape() const { return shape_; }
    /// Lowest X-exponent with nonzero coefficient in the relevant form
    /// (e of the inverse / three-cycle templates).
    int shape_e() const { return shape_e_; }

    /// Places excluded from the denominator lemma / tropical filters:
    /// primes where the template's coefficient hypotheses fail.
    const std::vector<uint64_t>& filter_excluded_primes() const { return filter_S_; }
    /// True when the family matches a template shape with the parameter in
    /// the right slot, so a denominator lemma is registered.
    bool has_denominator_lemma() const { return lemma_ok_; }

    bool is_degenerate_at(const Rational& t) const;

    /// Evaluates the lift at t, clears denominators, divides by content.
    /// Throws degenerate_parameter_error when R_f(t) = 0.
    SpecializedMap specialize(const Rational& t) const;

private:
    void detect_shape();
    void compute_filter_places();
    void verify_gamma();

    std::string name_;
    int degree_;
    std::vector<PolyZ> F_, G_;
    std::vector<ExtRational> gamma_;
    std::vector<int> gamma_edges_;
    ResultantPoly resultant_;
    int codegree_ = 0;
    FamilyShape shape_ = FamilyShape::General;
    int shape_e_ = 0;
    bool lemma_ok_ = false;
    std::vector<uint64_t> filter_S_;
};

/// |Res(F_t, G_t)| of the normalized forms (the resultant ideal norm over Q).
Int resultant_ideal_norm(const SpecializedMap& m);

/// Primes dividing the resultant ideal norm, ascending.
std::vector<uint64_t> bad_primes(const SpecializedMap& m);

/// Bad-place count s = 1 + number of bad primes (one archimedean place).
int bad_place_count(const SpecializedMap& m);

/// True iff p does not divide the resultant ideal norm.
bool good_reduction(const SpecializedMap& m, uint64_t p);

/// Projective height of the normalized coefficient vector.
Int map_height(const SpecializedMap& m);

/// Max degree in T over all coefficients of F and G.
int codegree_of(const std::vector<PolyZ>& F, const std::vector<PolyZ>& G);

/// Exact rational preimages f^{-1}(q) under the specialized map.
std::vector<ExtRational> rational_preimages(const SpecializedMap& m, const ExtRational& q);

// Built-in families and Prop-style templates.
FamilyLift quadratic_family();             // z^2 + T
FamilyLift unicritical_family(int d);      // z^d + T
FamilyLift crit2_family();                 // T / (z^2 - z)
/// a_d z^d + ... + a_0 + T (a as ascending rational coefficients a_0..a_d).
FamilyLift additive_template(const std::vector<Rational>& a, const std::string& name = "");
/// T / (a_e z^e + ... + a_d z^d), coefficients given for exponents e..d.
FamilyLift inverse_template(int e, const std::vector<Rational>& a_e_to_d,
                            const std::string& name = "");
/// (T z^e + 1) / (1 - z)^d.
FamilyLift three_cycle_template(int d, int e, const std::string& name = "");

/// Registry of families addressable by name from the CLI.
class FamilyRegistry {
public:
    FamilyRegistry();
    const FamilyLift& get(const std::string& name) const;
    bool contains(const std::string& name) const;
    void add(FamilyLift f);
    std::vector<std::string> names() const;

private:
    std::map<std::string, FamilyLift> families_;
};

FamilyRegistry& family_registry();

/// Loads a family definition from a JSON file (see README for the schema).
FamilyLift load_family_json(const std::string& path);

} // namespace preper
