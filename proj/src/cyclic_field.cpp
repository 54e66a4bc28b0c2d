#include "upacket/cyclic_field.hpp"

#include <numeric>

namespace upacket {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) r = mulmod(r, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return r;
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
    while (b) {
        a %= b;
        std::swap(a, b);
    }
    return a;
}

bool is_odd_prime(std::uint64_t p) {
    if (p < 3 || p % 2 == 0) return false;
    for (std::uint64_t d = 3; d * d <= p; d += 2)
        if (p % d == 0) return false;
    return true;
}

namespace {

// q0^(2n) - 1 with overflow detection.
std::uint64_t checked_unit_order(std::uint64_t q0, int deg) {
    unsigned __int128 acc = 1;
    for (int i = 0; i < 2 * deg; ++i) {
        acc *= q0;
        if (acc > static_cast<unsigned __int128>(UINT64_MAX))
            throw ValidationError("field size",
                                  "q0^(2n) exceeds the supported range");
    }
    return static_cast<std::uint64_t>(acc) - 1;
}

} // namespace

FieldSpec::FieldSpec(std::uint64_t q0_, int deg) : q0(q0_), deg_over_F(deg) {
    if (!is_odd_prime(q0))
        throw ValidationError("odd prime residue characteristic",
                              "q0 = " + std::to_string(q0) +
                                  " is not an odd prime");
    if (deg < 1)
        throw ValidationError("positive degree", "deg_over_F must be >= 1");
    checked_unit_order(q0, deg);
}

std::uint64_t FieldSpec::unit_order() const {
    return checked_unit_order(q0, deg_over_F);
}

std::uint64_t FieldSpec::u1_order() const {
    std::uint64_t r = 1;
    for (int i = 0; i < deg_over_F; ++i) r *= q0;
    return r + 1;
}

std::uint64_t FieldSpec::norm_index() const {
    std::uint64_t r = 1;
    for (int i = 0; i < deg_over_F; ++i) r *= q0;
    return r - 1;
}

std::uint64_t FieldElement::log() const {
    if (zero_) throw ValidationError("nonzero element", "zero has no discrete log");
    return log_;
}

std::uint64_t FieldElement::order() const {
    const std::uint64_t m = spec_.unit_order();
    return m / gcd_u64(m, log());
}

FieldElement FieldElement::pow(std::uint64_t e) const {
    if (zero_) return *this;
    return from_log(spec_, mulmod(log_, e % spec_.unit_order(), spec_.unit_order()));
}

FieldElement frobenius(const FieldElement& x, std::int64_t power) {
    if (x.is_zero()) return x;
    const FieldSpec& s = x.spec();
    // q0 generates a cyclic group of order dividing 2n modulo q^n - 1.
    const std::int64_t period = 2 * s.deg_over_F;
    std::int64_t p = power % period;
    if (p < 0) p += period;
    const std::uint64_t mult = powmod(s.q0, static_cast<std::uint64_t>(p), s.unit_order());
    return FieldElement::from_log(s, mulmod(x.log(), mult, s.unit_order()));
}

int subfield_order(const FieldElement& x) {
    const FieldSpec& s = x.spec();
    const std::uint64_t m = s.unit_order();
    const std::uint64_t lg = x.log();
    std::uint64_t mult = 1;
    for (int k = 1; k <= s.deg_over_F; ++k) {
        mult = mulmod(mult, s.q(), m);
        if (mulmod(lg, mult, m) == lg) return k;
    }
    throw ValidationError("subfield order",
                          "no fixing power up to the field degree");
}

TensorShape tensor_decompose(int n1, int n2) {
    if (n1 < 1 || n2 < 1)
        throw ValidationError("positive degree", "tensor factors must have degree >= 1");
    TensorShape t;
    t.g = std::gcd(n1, n2);
    t.ell = n1 / t.g * n2;
    t.embedding_twists.resize(static_cast<std::size_t>(t.g));
    for (int j = 0; j < t.g; ++j) t.embedding_twists[static_cast<std::size_t>(j)] = j;
    return t;
}

int mult_action_sign(std::uint64_t zeta_order, std::uint64_t factor_card,
                     std::uint64_t copies) {
    if (zeta_order == 0 || (factor_card - 1) % zeta_order != 0)
        throw ValidationError("order divisibility",
                              "zeta_order must divide factor_card - 1");
    const std::uint64_t cycles = (factor_card - 1) / zeta_order;
    const std::uint64_t transpositions = ((zeta_order - 1) % 2) * (cycles % 2) * (copies % 2);
    return transpositions % 2 == 0 ? 1 : -1;
}

int mult_action_sign_literal(std::uint64_t zeta_order, std::uint64_t factor_card,
                             std::uint64_t copies, std::uint64_t cutoff) {
    if (zeta_order == 0 || (factor_card - 1) % zeta_order != 0)
        throw ValidationError("order divisibility",
                              "zeta_order must divide factor_card - 1");
    if (copies * factor_card > cutoff)
        throw ValidationError("literal oracle cutoff",
                              "point set exceeds the literal-permutation cutoff");
    // One copy: points are the formal zero plus logs 0..card-2; multiplication
    // by an element of the given order shifts logs by (card-1)/order.
    const std::uint64_t n = factor_card - 1;
    const std::uint64_t shift = n / zeta_order;
    std::vector<char> seen(n, 0);
    std::uint64_t parity = 0;
    for (std::uint64_t start = 0; start < n; ++start) {
        if (seen[start]) continue;
        std::uint64_t len = 0;
        std::uint64_t p = start;
        do {
            seen[p] = 1;
            p = p + shift >= n ? p + shift - n : p + shift;
            ++len;
        } while (p != start);
        parity += len - 1;
    }
    parity = (parity % 2) * (copies % 2);
    return parity % 2 == 0 ? 1 : -1;
}

} // namespace upacket
