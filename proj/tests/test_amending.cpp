#include <doctest.h>

#include "upacket/amending.hpp"

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

bool all_unitary_trivial(const SignCharacter& s) {
    for (const auto& [id, t] : s.unitary)
        if (t != SignTag::Trivial) return false;
    return true;
}

} // namespace

TEST_CASE("parity rules for the odd-side factor") {
    const auto x1 = make_class({0}, {});
    // d odd: rank-3 vertex correction is trivial.
    CHECK(amending_character(VertexKind::Y, 0, x1, 1, 3, {1}).gl ==
          SignTag::Trivial);
    // #I = 1 odd, d = 1: rank-2 vertex is quadratic.
    CHECK(amending_character(VertexKind::Z, 0, x1, 1, 3, {1}).gl ==
          SignTag::Quadratic);
    // d even: rank-2 vertex always quadratic.
    CHECK(amending_character(VertexKind::Z, 0, x1, 2, 3, {1}).gl ==
          SignTag::Quadratic);
    // d even, #I odd: rank-3 vertex trivial.
    CHECK(amending_character(VertexKind::Y, 0, x1, 2, 3, {1}).gl ==
          SignTag::Trivial);

    const auto x2 = make_class({0, 1}, {});
    // d even, #I even: rank-3 vertex quadratic.
    CHECK(amending_character(VertexKind::Y, 0, x2, 2, 3, {1, 1}).gl ==
          SignTag::Quadratic);
    // d odd, #I even: rank-2 vertex trivial.
    CHECK(amending_character(VertexKind::Z, 0, x2, 1, 3, {1, 1}).gl ==
          SignTag::Trivial);

    const auto x3 = make_class({0, 1, 2}, {});
    // d odd, #I odd: rank-2 vertex quadratic.
    CHECK(amending_character(VertexKind::Z, 0, x3, 1, 3, {1, 1, 1}).gl ==
          SignTag::Quadratic);
}

TEST_CASE("even-side factor switches the vertex roles") {
    const auto x = make_class({0, 1, 2}, {1, 2});
    for (int d = 1; d <= 4; ++d) {
        const auto y_even =
            amending_character(VertexKind::Y, 1, x, d, 3, {1, 1, 1});
        const auto z_even =
            amending_character(VertexKind::Z, 1, x, d, 3, {1, 1, 1});
        const auto y_odd =
            amending_character(VertexKind::Y, 0, x, d, 3, {1, 1, 1});
        const auto z_odd =
            amending_character(VertexKind::Z, 0, x, d, 3, {1, 1, 1});
        CHECK(y_even.gl == z_odd.gl);
        CHECK(z_even.gl == y_odd.gl);
    }
}

TEST_CASE("oracle agrees on the single-component example") {
    const auto x = make_class({0}, {});
    const auto f = amending_character(VertexKind::Z, 0, x, 2, 3, {1});
    const auto o = amending_brute_force(VertexKind::Z, 0, x, 2, 3, {1},
                                        OracleMode::Both);
    CHECK(f.gl == SignTag::Quadratic);
    CHECK(f == o);
    // Literal and cycle-count modes agree separately as well.
    const auto lit = amending_brute_force(VertexKind::Z, 0, x, 2, 3, {1},
                                          OracleMode::Literal);
    const auto cyc = amending_brute_force(VertexKind::Z, 0, x, 2, 3, {1},
                                          OracleMode::CycleCount);
    CHECK(lit == cyc);
}

TEST_CASE("formula equals oracle on a small grid") {
    const auto grid = make_grid({3}, {1, 3}, 2, 2);
    for (const auto& pt : grid) {
        const auto r = evaluate_grid_point(pt);
        CHECK(r.agree_y);
        CHECK(r.agree_z);
        CHECK(r.parity_table_ok);
        CHECK(r.transfer_ok);
        CHECK(r.nu_p_trivial);
        CHECK(r.four_factor_ok);
    }
}

TEST_CASE("transfer character depends only on the parity of #I") {
    const auto x1 = make_class({0}, {});
    CHECK(transfer_character(0, x1, 1, 3, {1}).gl == SignTag::Quadratic);
    CHECK(transfer_character(0, x1, 2, 3, {1}).gl == SignTag::Quadratic);
    const auto x2 = make_class({0, 1}, {});
    CHECK(transfer_character(0, x2, 1, 3, {1, 1}).gl == SignTag::Trivial);
    CHECK(transfer_character(0, x2, 3, 3, {3, 1}).gl == SignTag::Trivial);
    const auto x2e = make_class({0, 1}, {0, 1});
    for (int d = 1; d <= 4; ++d)
        for (int i0 : {0, 1})
            CHECK(transfer_character(i0, x2e, d, 3, {1, 1}).gl ==
                  SignTag::Trivial);
}

TEST_CASE("parabolic-restriction character is trivial") {
    const auto x = make_class({0, 1, 2}, {1, 2});
    for (int d = 1; d <= 4; ++d)
        for (int i0 : {0, 1, 2}) {
            const auto p = nu_P(x, i0, d, 3, {1, 1, 3});
            CHECK(p.gl == SignTag::Trivial);
            CHECK(all_unitary_trivial(p));
        }
}

TEST_CASE("unitary-side tags are trivial everywhere") {
    const auto x = make_class({0, 1}, {});
    for (int d = 1; d <= 4; ++d)
        for (int i0 : {0, 1})
            for (VertexKind w : {VertexKind::Y, VertexKind::Z}) {
                CHECK(all_unitary_trivial(
                    amending_character(w, i0, x, d, 3, {1, 3})));
                CHECK(all_unitary_trivial(
                    amending_brute_force(w, i0, x, d, 3, {1, 3})));
            }
}

TEST_CASE("weyl moves permute the amending tags") {
    // Swapping two same-side components with equal degrees fixes every tag.
    const auto x = make_class({0, 1, 2}, {1, 2});
    const auto a = amending_character(VertexKind::Y, 1, x, 2, 3, {1, 3, 3});
    const auto b = amending_character(VertexKind::Y, 2, x, 2, 3, {1, 3, 3});
    CHECK(a.gl == b.gl);
}

TEST_CASE("sign character product") {
    SignCharacter a, b;
    a.gl_component = b.gl_component = 0;
    a.gl = SignTag::Quadratic;
    b.gl = SignTag::Quadratic;
    a.unitary[1] = SignTag::Quadratic;
    b.unitary[1] = SignTag::Trivial;
    const auto p = sign_product(a, b);
    CHECK(p.gl == SignTag::Trivial);
    CHECK(p.unitary.at(1) == SignTag::Quadratic);
}

TEST_CASE("grid report format") {
    const auto grid = make_grid({3}, {1}, 1, 1);
    const auto outs = run_grid(grid, 1);
    const auto lines = format_grid_report(grid, outs);
    REQUIRE(lines.size() == 2);
    CHECK(lines[0] == "3 1 1 e:- 0 y T|T T|T 1");
    CHECK(lines[1] == "3 1 1 e:- 0 z Q|T Q|T 1");
}

TEST_CASE("fault injection is detected") {
    const auto grid = make_grid({3}, {1}, 1, 1);
    const auto outs = run_grid(grid, 1, OracleMode::Both, 1000000, true);
    bool any_disagree = false;
    for (const auto& r : outs) any_disagree = any_disagree || !r.agree_y || !r.agree_z;
    CHECK(any_disagree);
}

TEST_CASE("parallel grid evaluation is deterministic") {
    const auto grid = make_grid({3}, {1, 3}, 2, 2);
    const auto seq = run_grid(grid, 1);
    const auto par = run_grid(grid, 4);
    REQUIRE(seq.size() == par.size());
    for (std::size_t i = 0; i < seq.size(); ++i) {
        CHECK(seq[i].formula_y == par[i].formula_y);
        CHECK(seq[i].oracle_y == par[i].oracle_y);
        CHECK(seq[i].formula_z == par[i].formula_z);
        CHECK(seq[i].oracle_z == par[i].oracle_z);
    }
}
