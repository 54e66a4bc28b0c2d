#ifndef UPACKET_CYCLIC_FIELD_HPP
#define UPACKET_CYCLIC_FIELD_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace upacket {

/// Thrown when an input violates a documented invariant. `invariant` is a
/// short stable name suitable for diagnostics and tests.
struct ValidationError : std::runtime_error {
    std::string invariant;
    ValidationError(std::string inv, const std::string& msg)
        : std::runtime_error(inv + ": " + msg), invariant(std::move(inv)) {}
};

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);
std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b);
bool is_odd_prime(std::uint64_t p);

/// Residue field of the degree-n unramified extension E of F, where F is the
/// unramified quadratic extension of a base field with odd prime residue
/// cardinality q0. The field has q^n elements, q = q0^2. Elements are handled
/// purely multiplicatively: a cyclic unit group of order q^n - 1 written
/// relative to an abstract generator, plus a formal zero.
struct FieldSpec {
    std::uint64_t q0 = 3;
    int deg_over_F = 1;

    FieldSpec() = default;
    FieldSpec(std::uint64_t q0_, int deg);

    std::uint64_t q() const { return q0 * q0; }
    /// q^n - 1, the order of the unit group.
    std::uint64_t unit_order() const;
    /// q0^n + 1, the order of the norm-one subgroup relative to E/E0.
    std::uint64_t u1_order() const;
    /// q0^n - 1, the index of the norm-one subgroup in the unit group.
    std::uint64_t norm_index() const;

    bool operator==(const FieldSpec& o) const {
        return q0 == o.q0 && deg_over_F == o.deg_over_F;
    }
};

class FieldElement {
  public:
    static FieldElement zero(const FieldSpec& spec) { return FieldElement(spec); }
    static FieldElement from_log(const FieldSpec& spec, std::uint64_t log) {
        FieldElement e(spec);
        e.zero_ = false;
        e.log_ = log % spec.unit_order();
        return e;
    }
    static FieldElement one(const FieldSpec& spec) { return from_log(spec, 0); }

    const FieldSpec& spec() const { return spec_; }
    bool is_zero() const { return zero_; }
    std::uint64_t log() const;
    /// Multiplicative order; 1 for the identity. Rejects zero.
    std::uint64_t order() const;

    FieldElement pow(std::uint64_t e) const;
    bool operator==(const FieldElement& o) const {
        return spec_ == o.spec_ && zero_ == o.zero_ && (zero_ || log_ == o.log_);
    }

  private:
    explicit FieldElement(const FieldSpec& spec) : spec_(spec) {}
    FieldSpec spec_;
    bool zero_ = true;
    std::uint64_t log_ = 0;
};

/// x^{q0^power}; zero maps to zero. Negative powers are allowed since the
/// automorphism has order dividing 2n.
FieldElement frobenius(const FieldElement& x, std::int64_t power);

/// Smallest m >= 1 with x^{q^m} = x, i.e. the degree over the residue field
/// of F of the subfield generated by x. Rejects zero.
int subfield_order(const FieldElement& x);

/// Decomposition of k_{E_1} (x) k_{E_2} over k_F into simple factors:
/// g = gcd(n1, n2) copies of the field of degree ell = lcm(n1, n2), the j-th
/// copy receiving the second factor through the q^j-power twist.
struct TensorShape {
    int g = 1;
    int ell = 1;
    std::vector<int> embedding_twists;
};

TensorShape tensor_decompose(int n1, int n2);

/// Parity of the permutation "multiply by zeta" on `copies` disjoint copies
/// of a field with `factor_card` elements, where zeta has the given order in
/// the unit group. Closed form: per copy, (factor_card-1)/order cycles of
/// length order plus a fixed zero.
int mult_action_sign(std::uint64_t zeta_order, std::uint64_t factor_card,
                     std::uint64_t copies);

/// Same quantity by literal permutation parity (cycle traversal on the
/// actual point set). Requires copies * factor_card <= cutoff.
int mult_action_sign_literal(std::uint64_t zeta_order, std::uint64_t factor_card,
                             std::uint64_t copies,
                             std::uint64_t cutoff = 1000000);

} // namespace upacket

#endif
