#include <doctest.h>

#include "upacket/cyclic_field.hpp"

using namespace upacket;

TEST_CASE("field spec sizes") {
    FieldSpec s(3, 1);
    CHECK(s.q() == 9);
    CHECK(s.unit_order() == 8);
    CHECK(s.u1_order() == 4);
    CHECK(s.norm_index() == 2);
    FieldSpec t(3, 3);
    CHECK(t.unit_order() == 728);
    CHECK(t.u1_order() == 28);
    CHECK_THROWS_AS(FieldSpec(4, 1), ValidationError);
    CHECK_THROWS_AS(FieldSpec(2, 1), ValidationError);
}

TEST_CASE("frobenius power map") {
    FieldSpec s1(3, 1);
    // q fixes the residue field of F.
    CHECK(frobenius(FieldElement::from_log(s1, 1), 2).log() == 1);
    CHECK(frobenius(FieldElement::zero(s1), 5).is_zero());
    FieldSpec s3(3, 3);
    CHECK(frobenius(FieldElement::from_log(s3, 1), 2).log() == 9);
    // Negative powers invert.
    const auto x = FieldElement::from_log(s3, 123);
    CHECK(frobenius(frobenius(x, -1), 1) == x);
}

TEST_CASE("frobenius is a bijection of order dividing 2n") {
    for (int n : {1, 3}) {
        FieldSpec s(3, n);
        for (std::uint64_t lg = 0; lg < s.unit_order(); lg += 7) {
            const auto x = FieldElement::from_log(s, lg);
            CHECK(frobenius(x, 2 * n) == x);
        }
    }
}

TEST_CASE("subfield order") {
    FieldSpec s3(3, 3);
    CHECK(subfield_order(FieldElement::one(s3)) == 1);
    CHECK(subfield_order(FieldElement::from_log(s3, 1)) == 3);
    // g^91 has order 8, which divides q - 1 = 80, so it lies in k_F.
    CHECK(FieldElement::from_log(s3, 91).order() == 8);
    CHECK(subfield_order(FieldElement::from_log(s3, 91)) == 1);
    CHECK_THROWS_AS(subfield_order(FieldElement::zero(s3)), ValidationError);
}

TEST_CASE("subfield order divides the degree") {
    FieldSpec s(5, 3);
    for (std::uint64_t lg = 0; lg < 500; ++lg)
        CHECK(3 % subfield_order(FieldElement::from_log(s, lg)) == 0);
}

TEST_CASE("tensor decomposition") {
    auto t = tensor_decompose(1, 5);
    CHECK(t.g == 1);
    CHECK(t.ell == 5);
    t = tensor_decompose(3, 3);
    CHECK(t.g == 3);
    CHECK(t.ell == 3);
    CHECK(t.embedding_twists == std::vector<int>{0, 1, 2});
    t = tensor_decompose(3, 5);
    CHECK(t.g == 1);
    CHECK(t.ell == 15);
    CHECK(t.g * t.ell == 15);
}

TEST_CASE("multiplication-action signs") {
    CHECK(mult_action_sign(1, 9, 1) == 1);  // identity permutation
    CHECK(mult_action_sign(8, 9, 1) == -1); // one 8-cycle
    CHECK(mult_action_sign(4, 9, 1) == 1);  // two 4-cycles
    CHECK_THROWS_AS(mult_action_sign(3, 9, 1), ValidationError);
    CHECK(mult_action_sign_literal(8, 9, 1) == -1);
    CHECK(mult_action_sign_literal(4, 9, 1) == 1);
    CHECK_THROWS_AS(mult_action_sign_literal(2, 9, 1, 4), ValidationError);
}

TEST_CASE("sign is multiplicative in the number of copies") {
    for (std::uint64_t m : {2ULL, 4ULL, 8ULL})
        for (std::uint64_t c = 1; c <= 5; ++c) {
            const int one = mult_action_sign(m, 9, 1);
            int expect = 1;
            for (std::uint64_t i = 0; i < c; ++i) expect *= one;
            CHECK(mult_action_sign(m, 9, c) == expect);
        }
}

TEST_CASE("closed form matches literal parity on a sample") {
    for (std::uint64_t Q = 2; Q <= 500; ++Q)
        for (std::uint64_t m = 1; m <= Q - 1; ++m) {
            if ((Q - 1) % m != 0) continue;
            CHECK(mult_action_sign(m, Q, 1) == mult_action_sign_literal(m, Q, 1));
        }
}

TEST_CASE("norm-one actions on tensor spaces are even") {
    // An element of order dividing q0^{n_i}+1 multiplying each simple factor
    // of k_{E_i} (x) k_{E_{i0}} permutes an even number of cycles.
    for (std::uint64_t q0 : {3ULL, 5ULL})
        for (int ni : {1, 3})
            for (int n0 : {1, 3}) {
                const auto shape = tensor_decompose(ni, n0);
                const FieldSpec sl(q0, shape.ell);
                const FieldSpec si(q0, ni);
                for (std::uint64_t m = 1; m <= si.u1_order(); ++m) {
                    if (si.u1_order() % m != 0) continue;
                    CHECK(mult_action_sign(m, sl.unit_order() + 1,
                                           static_cast<std::uint64_t>(shape.g)) == 1);
                }
            }
}
