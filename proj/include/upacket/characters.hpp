#ifndef UPACKET_CHARACTERS_HPP
#define UPACKET_CHARACTERS_HPP

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "upacket/cyclic_field.hpp"

namespace upacket {

/// One character of E_i^x in multiplicative bookkeeping form:
///   n             degree [E_i : F], odd;
///   level         d >= 0;
///   beta          leading coefficient of the wild part, present iff d > 0,
///                 subject to the skew stratum condition beta^{q0^n-1} = -1;
///   tame_exponent exponent mod q0^n + 1 of the descended tame character;
///   omega         value at the uniformizer, +-1;
///   skew_sign     +-1; tied to omega in this model.
struct SkewCharacterComponent {
    int n = 1;
    int level = 0;
    std::optional<FieldElement> beta;
    std::uint64_t tame_exponent = 0;
    int omega = 1;
    int skew_sign = 1;

    FieldSpec field(std::uint64_t q0) const { return FieldSpec(q0, n); }

    bool operator==(const SkewCharacterComponent& o) const {
        return n == o.n && level == o.level && beta == o.beta &&
               tame_exponent == o.tame_exponent && omega == o.omega &&
               skew_sign == o.skew_sign;
    }
};

/// Throws ValidationError naming the violated invariant.
void validate_component(const SkewCharacterComponent& c, std::uint64_t q0);

bool is_d_regular(const SkewCharacterComponent& c, std::uint64_t q0);
bool tame_regular(const SkewCharacterComponent& c, std::uint64_t q0);
/// Regularity appropriate to the component's level (wild for d > 0, tame at
/// d = 0).
bool is_regular(const SkewCharacterComponent& c, std::uint64_t q0);

/// Applies the q^m-power Galois twist: beta -> beta^{q^m} and
/// tame_exponent -> tame_exponent * q^m mod (q0^n + 1). Fixes omega.
SkewCharacterComponent galois_twist(const SkewCharacterComponent& c,
                                    std::uint64_t q0, int m);

/// Whether the two components are Galois-conjugate (same degree and level and
/// some q^m-twist matches the wild leading coefficient for d > 0, or the tame
/// exponent for d = 0).
bool galois_conjugate(const SkewCharacterComponent& a,
                      const SkewCharacterComponent& b, std::uint64_t q0);

/// Exponent on the unit group mu_E of the base change of the norm-one tame
/// character with exponent t: t * (q0^n - 1) mod (q^n - 1).
std::uint64_t base_change_tame(std::uint64_t t, int n, std::uint64_t q0);

/// A tame unit-group exponent a mod q^n - 1 is +-skew iff it is trivial on
/// the norm-one complement, i.e. a multiple of q0^n - 1.
bool is_plus_skew_tame(std::uint64_t a, int n, std::uint64_t q0);

struct WildPart {
    int level = 0;
    std::optional<FieldElement> beta;
};
struct TamePart {
    std::uint64_t tame_exponent = 0;
    int omega = 1;
};

std::pair<WildPart, TamePart> wild_tame_split(const SkewCharacterComponent& c);
SkewCharacterComponent merge_parts(int n, int skew_sign, const WildPart& w,
                                   const TamePart& t);

/// Multiplies by the unramified quadratic character: negates omega and flips
/// skew_sign; unit-level data unchanged.
SkewCharacterComponent twist_unramified_quadratic(const SkewCharacterComponent& c);

/// The induced parameter inherits the component's skewness sign.
int skew_sign_of_induced(const SkewCharacterComponent& c);

/// An elliptic-torus character datum: base residue cardinality and one
/// component per index in I.
struct VeryCuspidalDatum {
    std::uint64_t q0 = 3;
    std::vector<SkewCharacterComponent> components;

    int total_degree() const;
    int level() const;
    /// Sign (-1)^{n+1} required of every component for a stable parameter.
    int stable_sign() const;

    /// Structural checks: nonempty, per-component validity, equal levels,
    /// regularity, pairwise Galois separation. Does not require a uniform
    /// skew sign (mixed signs route to the endoscopic splitting).
    void validate() const;
    /// True iff every component carries the stable sign (-1)^{n+1}.
    bool is_stable() const;
};

bool components_compatible(const VeryCuspidalDatum& datum);

} // namespace upacket

#endif
