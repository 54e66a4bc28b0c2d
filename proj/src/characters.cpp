#include "upacket/characters.hpp"

#include <string>

namespace upacket {

void validate_component(const SkewCharacterComponent& c, std::uint64_t q0) {
    if (c.n < 1 || c.n % 2 == 0)
        throw ValidationError("odd component degree",
                              "degree " + std::to_string(c.n) + " is not odd");
    if (c.level < 0)
        throw ValidationError("nonnegative level", "level must be >= 0");
    if (c.omega != 1 && c.omega != -1)
        throw ValidationError("omega sign", "omega must be +1 or -1");
    if (c.skew_sign != c.omega)
        throw ValidationError("skew sign tied to omega",
                              "skew_sign must equal omega in this model");
    const FieldSpec spec(q0, c.n);
    if (c.tame_exponent >= spec.u1_order())
        throw ValidationError("tame exponent range",
                              "tame_exponent must be reduced mod q0^n + 1");
    if (c.level > 0) {
        if (!c.beta || c.beta->is_zero())
            throw ValidationError("wild part presence",
                                  "positive level requires a nonzero beta");
        if (!(c.beta->spec() == spec))
            throw ValidationError("wild part presence",
                                  "beta lives in the wrong residue field");
        // beta^{q0^n - 1} = -1, the unique element of order 2.
        const std::uint64_t m = spec.unit_order();
        const std::uint64_t minus_one = m / 2;
        if (mulmod(c.beta->log(), spec.norm_index(), m) != minus_one)
            throw ValidationError("skew stratum condition",
                                  "beta^(q0^n-1) != -1");
    } else if (c.beta) {
        throw ValidationError("wild part presence",
                              "level zero admits no leading coefficient");
    }
}

bool is_d_regular(const SkewCharacterComponent& c, std::uint64_t q0) {
    if (c.level <= 0)
        throw ValidationError("positive level",
                              "d-regularity is defined for level > 0");
    return subfield_order(*c.beta) == c.n;
}

bool tame_regular(const SkewCharacterComponent& c, std::uint64_t q0) {
    if (c.level != 0)
        throw ValidationError("level zero",
                              "tame regularity is defined for level 0");
    const FieldSpec spec(q0, c.n);
    const std::uint64_t mod = spec.u1_order();
    const std::uint64_t q = spec.q();
    std::uint64_t t = c.tame_exponent % mod;
    int orbit = 1;
    std::uint64_t cur = mulmod(t, q % mod, mod);
    while (cur != t) {
        cur = mulmod(cur, q % mod, mod);
        ++orbit;
        if (orbit > c.n) break;
    }
    return orbit == c.n;
}

bool is_regular(const SkewCharacterComponent& c, std::uint64_t q0) {
    return c.level > 0 ? is_d_regular(c, q0) : tame_regular(c, q0);
}

SkewCharacterComponent galois_twist(const SkewCharacterComponent& c,
                                    std::uint64_t q0, int m) {
    SkewCharacterComponent r = c;
    const FieldSpec spec(q0, c.n);
    if (r.beta) *r.beta = frobenius(*r.beta, 2 * m);
    const std::uint64_t mod = spec.u1_order();
    r.tame_exponent = mulmod(r.tame_exponent, powmod(spec.q() % mod, static_cast<std::uint64_t>(((m % c.n) + c.n) % c.n), mod), mod);
    return r;
}

bool galois_conjugate(const SkewCharacterComponent& a,
                      const SkewCharacterComponent& b, std::uint64_t q0) {
    if (a.n != b.n || a.level != b.level) return false;
    for (int m = 0; m < a.n; ++m) {
        const SkewCharacterComponent t = galois_twist(a, q0, m);
        if (a.level > 0) {
            if (t.beta == b.beta) return true;
        } else {
            if (t.tame_exponent == b.tame_exponent) return true;
        }
    }
    return false;
}

std::uint64_t base_change_tame(std::uint64_t t, int n, std::uint64_t q0) {
    const FieldSpec spec(q0, n);
    const std::uint64_t m = spec.unit_order();
    return mulmod(t % m, spec.norm_index(), m);
}

bool is_plus_skew_tame(std::uint64_t a, int n, std::uint64_t q0) {
    const FieldSpec spec(q0, n);
    return (a % spec.unit_order()) % spec.norm_index() == 0;
}

std::pair<WildPart, TamePart> wild_tame_split(const SkewCharacterComponent& c) {
    return {WildPart{c.level, c.beta}, TamePart{c.tame_exponent, c.omega}};
}

SkewCharacterComponent merge_parts(int n, int skew_sign, const WildPart& w,
                                   const TamePart& t) {
    SkewCharacterComponent c;
    c.n = n;
    c.level = w.level;
    c.beta = w.beta;
    c.tame_exponent = t.tame_exponent;
    c.omega = t.omega;
    c.skew_sign = skew_sign;
    return c;
}

SkewCharacterComponent twist_unramified_quadratic(const SkewCharacterComponent& c) {
    SkewCharacterComponent r = c;
    r.omega = -r.omega;
    r.skew_sign = -r.skew_sign;
    return r;
}

int skew_sign_of_induced(const SkewCharacterComponent& c) { return c.skew_sign; }

int VeryCuspidalDatum::total_degree() const {
    int n = 0;
    for (const auto& c : components) n += c.n;
    return n;
}

int VeryCuspidalDatum::level() const {
    return components.empty() ? 0 : components.front().level;
}

int VeryCuspidalDatum::stable_sign() const {
    return total_degree() % 2 == 0 ? -1 : 1;
}

void VeryCuspidalDatum::validate() const {
    if (!is_odd_prime(q0))
        throw ValidationError("odd prime residue characteristic",
                              "q0 = " + std::to_string(q0) +
                                  " is not an odd prime");
    if (components.empty())
        throw ValidationError("nonempty index set",
                              "a datum needs at least one component");
    for (const auto& c : components) validate_component(c, q0);
    const int d = components.front().level;
    for (const auto& c : components)
        if (c.level != d)
            throw ValidationError("level equality",
                                  "all components must share one level");
    for (const auto& c : components)
        if (!is_regular(c, q0))
            throw ValidationError(d > 0 ? "d-regularity" : "tame regularity",
                                  "a component fails the regularity test");
    if (!components_compatible(*this))
        throw ValidationError("Galois separation",
                              "two components are Galois-conjugate");
}

bool VeryCuspidalDatum::is_stable() const {
    const int want = stable_sign();
    for (const auto& c : components)
        if (c.skew_sign != want) return false;
    return true;
}

bool components_compatible(const VeryCuspidalDatum& datum) {
    const auto& cs = datum.components;
    for (std::size_t i = 0; i < cs.size(); ++i)
        for (std::size_t j = i + 1; j < cs.size(); ++j) {
            if (cs[i].level != cs[j].level) return false;
            if (cs[i].n != cs[j].n) continue;
            if (galois_conjugate(cs[i], cs[j], datum.q0)) return false;
        }
    return true;
}

} // namespace upacket
