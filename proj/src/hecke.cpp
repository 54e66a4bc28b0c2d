#include "upacket/hecke.hpp"

#include <algorithm>
#include <numeric>

namespace upacket {

Rational::Rational(long long n, long long d) : num(n), den(d) {
    if (den == 0) throw ValidationError("rational", "zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
}

Rational Rational::operator+(const Rational& o) const {
    return Rational(num * o.den + o.num * den, den * o.den);
}
Rational Rational::operator-(const Rational& o) const {
    return Rational(num * o.den - o.num * den, den * o.den);
}
Rational Rational::operator*(const Rational& o) const {
    return Rational(num * o.num, den * o.den);
}
Rational Rational::operator/(const Rational& o) const {
    if (o.num == 0) throw ValidationError("rational", "division by zero");
    return Rational(num * o.den, den * o.num);
}
bool Rational::operator<(const Rational& o) const {
    return num * o.den < o.num * den;
}
std::string Rational::str() const {
    return den == 1 ? std::to_string(num)
                    : std::to_string(num) + "/" + std::to_string(den);
}

Rational lusztig_case(bool rho_tilde_skew, bool rho_match) {
    if (!rho_tilde_skew) return Rational(0, 1);
    return rho_match ? Rational(3, 2) : Rational(1, 2);
}

HeckeParams hecke_params(bool match, int n) {
    if (n < 1 || n % 2 == 0)
        throw ValidationError("odd component degree",
                              "Hecke exponents are defined for odd degrees");
    const Rational nn = Rational::integer(n);
    return {lusztig_case(true, match) * nn, lusztig_case(true, false) * nn};
}

bool ReducibilityPoints::contains(const Rational& r) const {
    return std::find(points.begin(), points.end(), r) != points.end();
}

ReducibilityPoints reducibility_points(const HeckeParams& p, int n) {
    const Rational scale(1, 2LL * n);
    ReducibilityPoints out;
    const Rational a = (p.r_y + p.r_z) * scale;
    const Rational b = (p.r_y - p.r_z) * scale;
    out.points = {a, -a, b, -b};
    std::sort(out.points.begin(), out.points.end());
    return out;
}

SkewCharacterComponent apply_sign_tag(const SkewCharacterComponent& c,
                                      std::uint64_t q0, SignTag tag) {
    if (tag == SignTag::Trivial) return c;
    SkewCharacterComponent r = c;
    const std::uint64_t mod = FieldSpec(q0, c.n).u1_order();
    r.tame_exponent = (r.tame_exponent + mod / 2) % mod;
    return r;
}

bool match_test(const SkewCharacterComponent& gl_component,
                const EmbeddingClass& x, const VeryCuspidalDatum& datum, int i0,
                VertexKind w) {
    if (i0 < 0 || static_cast<std::size_t>(i0) >= datum.components.size())
        throw ValidationError("component membership", "i0 out of range");
    const SkewCharacterComponent& base =
        datum.components[static_cast<std::size_t>(i0)];
    if (gl_component.n != base.n) return false;
    std::vector<int> degrees;
    for (const auto& c : datum.components) degrees.push_back(c.n);
    const SignCharacter nu =
        amending_character(w, i0, x, base.level, datum.q0, degrees);
    const SkewCharacterComponent amended = apply_sign_tag(base, datum.q0, nu.gl);
    for (int m = 0; m < base.n; ++m)
        if (galois_twist(amended, datum.q0, m) == gl_component) return true;
    return false;
}

} // namespace upacket
