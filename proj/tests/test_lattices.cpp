#include <doctest.h>

#include "upacket/golden.hpp"
#include "upacket/lattices.hpp"

using namespace upacket;

namespace {

EmbeddingClass make_class(std::vector<int> ids, std::vector<int> even) {
    EmbeddingClass x;
    x.index_set = std::move(ids);
    for (int id : x.index_set) {
        if (std::find(even.begin(), even.end(), id) != even.end())
            x.even_part.push_back(id);
        else
            x.odd_part.push_back(id);
    }
    return x;
}

const EmbeddingClass kMixed = make_class({0, 1, 2}, {1, 2});
const std::vector<int> kDegrees{1, 1, 1};

} // namespace

TEST_CASE("standard rank-one chain") {
    const auto L = standard_chain(0, 1);
    CHECK(L.period() == 2);
    CHECK(is_self_dual(L));
    // o, o, p, p pattern around the origin.
    CHECK(L.exponent_at(0, -1) == 0);
    CHECK(L.exponent_at(0, 0) == 0);
    CHECK(L.exponent_at(0, 1) == 1);
    CHECK(L.exponent_at(0, 2) == 1);
    // Periodicity: one uniformizer step per period.
    CHECK(L.exponent_at(0, 5) == L.exponent_at(0, 3) + 1);
}

TEST_CASE("dual is an involution") {
    const auto L = build_Lambda_x(kMixed, kDegrees);
    CHECK(is_self_dual(L));
    CHECK(equal_up_to_reorder(dual(L), L));
    CHECK(equal_up_to_reorder(dual(dual(L)), L));
}

TEST_CASE("partition sequence shapes") {
    const auto L = build_Lambda_x(kMixed, kDegrees);
    CHECK(L.period() == 2);
    // Odd-side block jumps between 0 and 1, even-side between 1 and 2.
    CHECK(L.exponent_at(0, 0) == 0);
    CHECK(L.exponent_at(0, 1) == 1);
    CHECK(L.exponent_at(1, 1) == 0);
    CHECK(L.exponent_at(1, 2) == 1);

    // Odd side only: the basis lattice satisfies L* = wL.
    const auto Lo = build_Lambda_x(make_class({0}, {}), {1});
    CHECK(is_self_dual(Lo));
    CHECK(Lo.pairing_valuation(0) == 0);

    // Even side only (harness case): L* = L.
    const auto Le = build_Lambda_x(make_class({0, 1}, {0, 1}), {1, 1});
    CHECK(is_self_dual(Le));
    CHECK(Le.pairing_valuation(0) == 1);
    CHECK(equal_up_to_reorder(dual(Le), Le));
}

TEST_CASE("direct sums") {
    const auto A = build_Lambda_x(make_class({0}, {}), {1});
    const auto B = build_Lambda_x(make_class({1, 2}, {1, 2}), {1, 1});
    const auto AB = direct_sum(A, B);
    CHECK(AB.period() == 2);
    CHECK(AB.blocks().size() == 3);
    const auto BA = direct_sum(B, A);
    CHECK(equal_up_to_reorder(AB, BA));
    const auto C = standard_chain(3, 3);
    CHECK(equal_up_to_reorder(direct_sum(direct_sum(A, B), C),
                              direct_sum(A, direct_sum(B, C))));
    const auto LL = direct_sum(A, A);
    CHECK(LL.period() == 2);
    CHECK(LL.blocks().size() == 2 * A.blocks().size());
}

TEST_CASE("doubled-slot sequences") {
    const auto L = build_higher(kMixed, 0, HigherKind::Lambda, kDegrees);
    const auto My = build_higher(kMixed, 0, HigherKind::My, kDegrees);
    const auto Mz = build_higher(kMixed, 0, HigherKind::Mz, kDegrees);
    CHECK(L.period() == 6);
    CHECK(My.period() == 2);
    CHECK(Mz.period() == 2);
    CHECK(is_self_dual(L));
    CHECK(is_self_dual(My));
    CHECK(is_self_dual(Mz));
}

TEST_CASE("slot interleaving reproduces the doubled sequence") {
    const auto direct = build_higher(kMixed, 0, HigherKind::Lambda, kDegrees);
    auto sum = direct_sum(build_pm(0, 1), component_chain(1, 1, true));
    sum = direct_sum(sum, component_chain(2, 1, true));
    CHECK(equal_up_to_reorder(direct, sum));
}

TEST_CASE("restriction to V recovers the partition sequence") {
    for (HigherKind k : {HigherKind::Lambda, HigherKind::My, HigherKind::Mz}) {
        const auto L = build_higher(kMixed, 0, k, kDegrees);
        CHECK(equal_up_to_reorder(restrict_to_V(L),
                                  build_Lambda_x(kMixed, kDegrees)));
    }
}

TEST_CASE("reductive quotients") {
    using F = ReductiveQuotientType::Family;
    const auto qy = reductive_quotient(build_higher(kMixed, 0, HigherKind::My,
                                                    kDegrees));
    int u3 = 0, u1 = 0;
    for (const auto& f : qy.factors) {
        if (f.family == F::U3) ++u3;
        if (f.family == F::U1) ++u1;
    }
    CHECK(u3 == 1);
    CHECK(u1 == 2); // the components away from i0

    const auto qz = reductive_quotient(build_higher(kMixed, 0, HigherKind::Mz,
                                                    kDegrees));
    int u2 = 0;
    u1 = 0;
    for (const auto& f : qz.factors) {
        if (f.family == F::U2) ++u2;
        if (f.family == F::U1) ++u1;
    }
    CHECK(u2 == 1);
    CHECK(u1 == 3); // every component

    const auto ql = reductive_quotient(build_higher(kMixed, 0, HigherKind::Lambda,
                                                    kDegrees));
    int gl = 0;
    u1 = 0;
    for (const auto& f : ql.factors) {
        if (f.family == F::GL1) ++gl;
        if (f.family == F::U1) ++u1;
    }
    CHECK(gl == 1);
    CHECK(u1 == 3);

    const auto qx = reductive_quotient(build_Lambda_x(kMixed, kDegrees));
    for (const auto& f : qx.factors) CHECK(f.family == F::U1);
    CHECK(qx.factors.size() == 3);
}

TEST_CASE("valuation matrices") {
    const auto L = build_higher(kMixed, 0, HigherKind::Lambda, kDegrees);
    const auto m0 = valuation_matrix(L, 0);
    CHECK(m0.labels == std::vector<std::string>{"-", "Io", "Ie", "+"});
    for (std::size_t j = 0; j < 4; ++j) CHECK(m0.entries[j][j] == 0);

    // Periodicity in the ideal index.
    const auto m6 = valuation_matrix(L, 6);
    for (std::size_t j = 0; j < 4; ++j)
        for (std::size_t k = 0; k < 4; ++k)
            CHECK(m6.entries[j][k] == m0.entries[j][k] + 1);

    // Composition triangle inequality.
    for (std::int64_t r = 0; r <= 12; ++r)
        for (std::int64_t s = 0; s <= 12; ++s) {
            const auto mr = valuation_matrix(L, r);
            const auto ms = valuation_matrix(L, s);
            const auto mrs = valuation_matrix(L, r + s);
            for (std::size_t a = 0; a < 4; ++a)
                for (std::size_t b = 0; b < 4; ++b)
                    for (std::size_t c = 0; c < 4; ++c)
                        CHECK(mr.entries[a][b] + ms.entries[b][c] >=
                              mrs.entries[a][c]);
        }
}

TEST_CASE("valuation entries against a direct containment scan") {
    // Independent route: the entry is the largest exponent gap over one full
    // period of indices, scanned literally.
    for (HigherKind k : {HigherKind::Lambda, HigherKind::My, HigherKind::Mz}) {
        const auto L = build_higher(kMixed, 0, k, kDegrees);
        const auto& gs = L.display_groups();
        for (std::int64_t r = -3; r <= 13; ++r) {
            const auto m = valuation_matrix(L, r);
            for (std::size_t j = 0; j < gs.size(); ++j)
                for (std::size_t c = 0; c < gs.size(); ++c) {
                    const int bj = gs[j].block_indices.front();
                    const int bc = gs[c].block_indices.front();
                    std::int64_t need = INT64_MIN;
                    for (std::int64_t t = 0; t < L.period(); ++t)
                        need = std::max(need, L.exponent_at(bj, t + r) -
                                                  L.exponent_at(bc, t));
                    CHECK(m.entries[j][c] == need);
                }
        }
    }
}

TEST_CASE("filtration matrix spot values") {
    // d = 3 (k = 1).
    auto m = filtration_matrix(FiltrationGroup::H1, HigherKind::Lambda, 3,
                               kMixed, 0, kDegrees);
    CHECK(m.entries[0][1] == 2); // (-, Io)
    CHECK(m.entries[2][3] == 1); // (Ie, +)
    CHECK(m.entries[3][2] == 3); // (+, Ie)
    CHECK(m.entries[0][0] == BlockValuationMatrix::BULLET);
    CHECK(m.entries[1][2] == BlockValuationMatrix::BULLET);

    m = filtration_matrix(FiltrationGroup::J1, HigherKind::My, 3, kMixed, 0,
                          kDegrees);
    CHECK(m.entries[2][0] == 1); // (Ie, -) = k

    // d = 2 (k = 1).
    m = filtration_matrix(FiltrationGroup::J1, HigherKind::Mz, 2, kMixed, 0,
                          kDegrees);
    CHECK(m.entries[0][3] == 0); // (-, +) = k-1

    // J agrees with J1 away from the Levi.
    const auto mj = filtration_matrix(FiltrationGroup::J, HigherKind::Mz, 2,
                                      kMixed, 0, kDegrees);
    CHECK(mj.entries == m.entries);

    CHECK_THROWS_AS(filtration_matrix(FiltrationGroup::H1, HigherKind::Lambda, 0,
                                      kMixed, 0, kDegrees),
                    ValidationError);
}

TEST_CASE("even-side doubling switches the middle labels") {
    // With i0 on the even side the ordered basis lists that side first.
    const auto m = filtration_matrix(FiltrationGroup::H1, HigherKind::Lambda, 3,
                                     kMixed, 1, kDegrees);
    CHECK(m.labels == std::vector<std::string>{"-", "Ie", "Io", "+"});
    const auto ref = filtration_matrix(FiltrationGroup::H1, HigherKind::Lambda,
                                       3, kMixed, 0, kDegrees);
    CHECK(m.entries == ref.entries);
}

TEST_CASE("reference tables reproduce") {
    const auto res = check_appendix_tables(std::string(UPACKET_DATA_DIR) +
                                           "/appendix_tables.txt");
    CHECK(res.matrices_checked == 36);
    CHECK(res.matrices_matched == 36);
    CHECK(res.mismatches.empty());
}

TEST_CASE("quotient spaces") {
    // Equal specs produce the empty quotient.
    const auto none = quotient_space({FiltrationGroup::J1, HigherKind::My},
                                     {FiltrationGroup::J1, HigherKind::My},
                                     Region::Uminus, 3, kMixed, 0, kDegrees);
    CHECK(none.empty());

    // Rank-3 vertex, odd level: exactly the far-side cross pairs.
    const auto odd = quotient_space({FiltrationGroup::J1, HigherKind::My},
                                    {FiltrationGroup::H1, HigherKind::My},
                                    Region::Uminus, 3, kMixed, 0, kDegrees);
    CHECK(odd.size() == 2);
    for (const auto& c : odd) {
        CHECK(c.kind == QuotientConstituent::Kind::CrossPair);
        CHECK((c.component == 1 || c.component == 2));
        CHECK(c.multiplicity == 1);
    }

    // Even level: the near-side pairs plus the self-paired corner.
    const auto even = quotient_space({FiltrationGroup::J1, HigherKind::My},
                                     {FiltrationGroup::H1, HigherKind::My},
                                     Region::Uminus, 2, kMixed, 0, kDegrees);
    bool saw_hermitian = false, saw_own = false;
    for (const auto& c : even) {
        if (c.kind == QuotientConstituent::Kind::Hermitian) saw_hermitian = true;
        if (c.kind == QuotientConstituent::Kind::CrossPair) {
            CHECK(c.component == 0);
            saw_own = true;
        }
    }
    CHECK(saw_hermitian);
    CHECK(saw_own);

    // The Levi part of the relative quotient is empty at the block level.
    const auto levi = quotient_space({FiltrationGroup::J1, HigherKind::Lambda},
                                     {FiltrationGroup::J1, HigherKind::My},
                                     Region::M, 3, kMixed, 0, kDegrees);
    CHECK(levi.empty());

    CHECK_THROWS_AS(quotient_space({FiltrationGroup::H1, HigherKind::My},
                                   {FiltrationGroup::J1, HigherKind::My},
                                   Region::Uminus, 3, kMixed, 0, kDegrees),
                    ValidationError);
}
