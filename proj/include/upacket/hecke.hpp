#ifndef UPACKET_HECKE_HPP
#define UPACKET_HECKE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "upacket/amending.hpp"
#include "upacket/characters.hpp"
#include "upacket/embeddings.hpp"

namespace upacket {

struct Rational {
    long long num = 0;
    long long den = 1;

    Rational() = default;
    Rational(long long n, long long d);
    static Rational integer(long long n) { return Rational(n, 1); }

    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator*(const Rational& o) const;
    Rational operator/(const Rational& o) const;
    Rational operator-() const { return Rational(-num, den); }
    bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
    bool operator<(const Rational& o) const;
    std::string str() const;
};

/// Quadratic-relation exponents at the two vertices: the eigenvalue ratio at
/// vertex w is -q^{r_w}. r_y belongs to the rank-3 vertex.
struct HeckeParams {
    Rational r_y;
    Rational r_z;
};

/// Case analysis for one vertex quotient: the exponent as a multiple of the
/// component degree n. Non-self-dual data give 0; self-dual data give 1/2,
/// except at the rank-3 vertex with matching restrictions, which gives 3/2.
Rational lusztig_case(bool rho_tilde_skew, bool rho_match);

/// The exponent pair for a self-dual linear factor of odd degree n:
/// (n/2, n/2) without a match, (3n/2, n/2) with one.
HeckeParams hecke_params(bool match, int n);

/// Multiset {+-(r_y +- r_z)/(2n)}, closed under negation.
struct ReducibilityPoints {
    std::vector<Rational> points; // sorted, 4 entries
    bool contains(const Rational& r) const;
};

ReducibilityPoints reducibility_points(const HeckeParams& p, int n);

/// Whether the linear-side component matches component i0 of the datum up to
/// Galois conjugacy after the vertex-w amending correction.
bool match_test(const SkewCharacterComponent& gl_component,
                const EmbeddingClass& x, const VeryCuspidalDatum& datum, int i0,
                VertexKind w);

/// Applies a sign tag to a component: quadratic shifts the tame exponent by
/// the order-2 point of the norm-one character group.
SkewCharacterComponent apply_sign_tag(const SkewCharacterComponent& c,
                                      std::uint64_t q0, SignTag tag);

} // namespace upacket

#endif
