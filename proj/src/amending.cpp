#include "upacket/amending.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>
#include <thread>

namespace upacket {

namespace {

SignTag tag_of_sign(int s) { return s < 0 ? SignTag::Quadratic : SignTag::Trivial; }
SignTag tag_xor(SignTag a, SignTag b) {
    return a == b ? SignTag::Trivial : SignTag::Quadratic;
}

int degree_of(const EmbeddingClass& x, const std::vector<int>& degrees, int id) {
    for (std::size_t i = 0; i < x.index_set.size(); ++i)
        if (x.index_set[i] == id) return degrees[i];
    throw ValidationError("component membership", "unknown component id");
}

/// A multiplicative orbit set: `copies` copies of a set with `points`
/// elements (one fixed zero plus a cyclic orbit structure), acted on by an
/// element of the given order.
struct OrbitSpace {
    std::uint64_t points;
    std::uint64_t order;
    std::uint64_t copies;
};

int evaluate_spaces(const std::vector<OrbitSpace>& spaces, OracleMode mode,
                    std::uint64_t cutoff) {
    int sign = 1;
    for (const auto& s : spaces) {
        if (s.order == 0) continue;
        const bool fits = s.points * s.copies <= cutoff;
        int v;
        switch (mode) {
        case OracleMode::Literal:
            v = mult_action_sign_literal(s.order, s.points, s.copies, cutoff);
            break;
        case OracleMode::CycleCount:
            v = mult_action_sign(s.order, s.points, s.copies);
            break;
        default:
            v = mult_action_sign(s.order, s.points, s.copies);
            if (fits) {
                const int lit =
                    mult_action_sign_literal(s.order, s.points, s.copies, cutoff);
                if (lit != v)
                    throw InconsistencyError(
                        "literal and cycle-count parities disagree");
            }
            break;
        }
        sign *= v;
    }
    return sign;
}

std::uint64_t order_of_power(std::uint64_t group_order, std::uint64_t exponent) {
    const std::uint64_t e = exponent % group_order;
    if (e == 0) return 1;
    return group_order / gcd_u64(group_order, e);
}

/// Orbit spaces of the doubled-factor unit group (order q^{n0}-1, evaluated
/// on a generator) on one sigma-fixed constituent.
std::vector<OrbitSpace> gl_orbit_spaces(const QuotientConstituent& c,
                                        std::uint64_t q0, int i0, int n0) {
    std::vector<OrbitSpace> out;
    const FieldSpec s0(q0, n0);
    const std::uint64_t M = s0.unit_order();     // q^{n0} - 1
    const std::uint64_t q0n0 = s0.norm_index() + 1; // q0^{n0}
    const std::uint64_t mult = static_cast<std::uint64_t>(c.multiplicity);
    if (c.kind == QuotientConstituent::Kind::Internal) // no action
        return out;
    if (c.kind == QuotientConstituent::Kind::Hermitian) {
        // One norm line of q0^{n0} points, then (n0-1)/2 full lines, with the
        // generator acting through the exponents 1 + q0^{n0} q^j.
        const std::uint64_t q = s0.q();
        std::uint64_t qj = 1;
        for (int j = 0; j <= (n0 - 1) / 2; ++j) {
            const std::uint64_t expnt = (1 + mulmod(q0n0 % M, qj % M, M)) % M;
            out.push_back({j == 0 ? q0n0 : M + 1, order_of_power(M, expnt), mult});
            qj = mulmod(qj, q % M, M);
        }
        return out;
    }
    // Cross pair for component i: g copies of the field of degree lcm, the
    // j-th copy acted through alpha * beta^{q^j} where alpha is the action on
    // the component side and beta the action on the doubled side.
    const FieldSpec sl(q0, c.shape.ell);
    const std::uint64_t Ql = sl.unit_order() + 1; // q^{ell}
    const bool own = c.component == i0;
    const std::uint64_t q = s0.q();
    for (int j : c.shape.embedding_twists) {
        const std::uint64_t qj = powmod(q % M, static_cast<std::uint64_t>(j), M);
        std::uint64_t expnt;
        if (own) // alpha = zeta^{1-q0^{n0}}, beta = zeta^{q0^{n0}}
            expnt = (1 + M - (q0n0 % M) + mulmod(q0n0 % M, qj, M)) % M;
        else // alpha = 1, beta = zeta^{q0^{n0}}
            expnt = mulmod(q0n0 % M, qj, M);
        out.push_back({Ql, order_of_power(M, expnt), mult});
    }
    return out;
}

/// Orbit spaces of the norm-one unit group of component i (order q0^{n_i}+1)
/// on one constituent. Nontrivial only on the component's own cross pair,
/// where it acts by plain multiplication on the component factor.
std::vector<OrbitSpace> unitary_orbit_spaces(int i, const QuotientConstituent& c,
                                             std::uint64_t q0, int ni) {
    std::vector<OrbitSpace> out;
    if (c.kind != QuotientConstituent::Kind::CrossPair || c.component != i)
        return out;
    const FieldSpec si(q0, ni);
    const FieldSpec sl(q0, c.shape.ell);
    const std::uint64_t Ql = sl.unit_order() + 1;
    out.push_back({Ql, si.u1_order(),
                   static_cast<std::uint64_t>(c.multiplicity) *
                       static_cast<std::uint64_t>(c.shape.g)});
    return out;
}

SignCharacter signs_of_quotient(const std::vector<QuotientConstituent>& qs,
                                int i0, const EmbeddingClass& x,
                                std::uint64_t q0, const std::vector<int>& degrees,
                                OracleMode mode, std::uint64_t cutoff,
                                bool restrict_to_single_step) {
    if (restrict_to_single_step)
        for (const auto& c : qs)
            if (c.multiplicity > 1)
                throw ValidationError("block multiplicity",
                                      "quotient step exceeds one lattice level");
    const int n0 = degree_of(x, degrees, i0);
    SignCharacter out;
    out.gl_component = i0;
    std::vector<OrbitSpace> gl;
    for (const auto& c : qs) {
        auto v = gl_orbit_spaces(c, q0, i0, n0);
        gl.insert(gl.end(), v.begin(), v.end());
    }
    out.gl = tag_of_sign(evaluate_spaces(gl, mode, cutoff));
    for (std::size_t i = 0; i < x.index_set.size(); ++i) {
        const int id = x.index_set[i];
        std::vector<OrbitSpace> un;
        for (const auto& c : qs) {
            auto v = unitary_orbit_spaces(id, c, q0, degrees[i]);
            un.insert(un.end(), v.begin(), v.end());
        }
        out.unitary[id] = tag_of_sign(evaluate_spaces(un, mode, cutoff));
    }
    return out;
}

bool gl_parity_rule(VertexKind w, bool i0_even, int d, int total) {
    // The vertex roles switch when i0 sits on the even side.
    const VertexKind weff =
        !i0_even ? w : (w == VertexKind::Y ? VertexKind::Z : VertexKind::Y);
    const bool d_even = d % 2 == 0;
    const bool count_odd = total % 2 == 1;
    if (weff == VertexKind::Y) return d_even && !count_odd;
    return d_even || count_odd;
}

} // namespace

SignCharacter sign_product(const SignCharacter& a, const SignCharacter& b) {
    if (a.gl_component != b.gl_component)
        throw ValidationError("sign character support",
                              "products need a common linear factor");
    SignCharacter r;
    r.gl_component = a.gl_component;
    r.gl = tag_xor(a.gl, b.gl);
    r.unitary = a.unitary;
    for (const auto& [id, t] : b.unitary) {
        auto it = r.unitary.find(id);
        if (it == r.unitary.end())
            r.unitary[id] = t;
        else
            it->second = tag_xor(it->second, t);
    }
    return r;
}

std::string to_string(const SignCharacter& s, const std::vector<int>& ids) {
    std::string r(s.gl == SignTag::Quadratic ? "Q" : "T");
    r += "|";
    for (int id : ids) {
        auto it = s.unitary.find(id);
        r += (it != s.unitary.end() && it->second == SignTag::Quadratic) ? 'Q' : 'T';
    }
    return r;
}

SignCharacter amending_character(VertexKind w, int i0, const EmbeddingClass& x,
                                 int d, std::uint64_t q0,
                                 const std::vector<int>& degrees) {
    if (d < 1)
        throw ValidationError("positive level",
                              "amending characters need level >= 1");
    const bool i0_even = x.in_even(i0);
    const int total = static_cast<int>(x.index_set.size());
    SignCharacter out;
    out.gl_component = i0;
    out.gl = gl_parity_rule(w, i0_even, d, total)
                 ? SignTag::Quadratic
                 : SignTag::Trivial;
    // Per-component tags from the block signature rule: a component's cross
    // pair enters the vertex quotient according to its side and the parity
    // of d, and its norm-one group then acts with the closed-form parity.
    const int n0 = degree_of(x, degrees, i0);
    for (std::size_t i = 0; i < x.index_set.size(); ++i) {
        const int id = x.index_set[i];
        const bool near = x.in_even(id) == i0_even;
        const bool d_even = d % 2 == 0;
        bool contributes;
        if (w == VertexKind::Y)
            contributes = near ? d_even : !d_even;
        else
            contributes = near ? !d_even : d_even;
        if (!contributes) {
            out.unitary[id] = SignTag::Trivial;
            continue;
        }
        const auto shape = tensor_decompose(degrees[i], n0);
        const FieldSpec si(q0, degrees[i]);
        const FieldSpec sl(q0, shape.ell);
        const int sgn = mult_action_sign(si.u1_order(), sl.unit_order() + 1,
                                         static_cast<std::uint64_t>(shape.g));
        out.unitary[id] = tag_of_sign(sgn);
    }
    return out;
}

SignCharacter amending_brute_force(VertexKind w, int i0, const EmbeddingClass& x,
                                   int d, std::uint64_t q0,
                                   const std::vector<int>& degrees,
                                   OracleMode mode, std::uint64_t cutoff) {
    const HigherKind base = w == VertexKind::Y ? HigherKind::My : HigherKind::Mz;
    const auto qs = quotient_space({FiltrationGroup::J1, base},
                                   {FiltrationGroup::H1, base}, Region::Uminus,
                                   d, x, i0, degrees);
    return signs_of_quotient(qs, i0, x, q0, degrees, mode, cutoff, true);
}

SignCharacter nu_P(const EmbeddingClass& x, int i0, int d, std::uint64_t q0,
                   const std::vector<int>& degrees, OracleMode mode,
                   std::uint64_t cutoff) {
    const auto qs = quotient_space({FiltrationGroup::J1, HigherKind::Lambda},
                                   {FiltrationGroup::H1, HigherKind::Lambda},
                                   Region::Uminus, d, x, i0, degrees);
    return signs_of_quotient(qs, i0, x, q0, degrees, mode, cutoff, true);
}

SignCharacter transfer_character(int i0, const EmbeddingClass& x, int d,
                                 std::uint64_t q0,
                                 const std::vector<int>& degrees) {
    return sign_product(amending_character(VertexKind::Y, i0, x, d, q0, degrees),
                        amending_character(VertexKind::Z, i0, x, d, q0, degrees));
}

namespace {

/// Relative signature between two groups on a region: the signature of the
/// one-sided quotient, whichever way the containment goes.
SignCharacter relative_signs(const FiltrationSpec& a, const FiltrationSpec& b,
                             Region region, int d, const EmbeddingClass& x,
                             int i0, std::uint64_t q0,
                             const std::vector<int>& degrees, OracleMode mode,
                             std::uint64_t cutoff) {
    std::vector<QuotientConstituent> qs;
    try {
        qs = quotient_space(a, b, region, d, x, i0, degrees);
    } catch (const ValidationError&) {
        qs = quotient_space(b, a, region, d, x, i0, degrees);
    }
    return signs_of_quotient(qs, i0, x, q0, degrees, mode, cutoff, false);
}

} // namespace

bool four_factor_cancellation_ok(VertexKind w, int i0, const EmbeddingClass& x,
                                 int d, std::uint64_t q0,
                                 const std::vector<int>& degrees,
                                 OracleMode mode, std::uint64_t cutoff) {
    const HigherKind base = w == VertexKind::Y ? HigherKind::My : HigherKind::Mz;
    const FiltrationSpec jL{FiltrationGroup::J1, HigherKind::Lambda};
    const FiltrationSpec jM{FiltrationGroup::J1, base};
    const FiltrationSpec hL{FiltrationGroup::H1, HigherKind::Lambda};
    const FiltrationSpec hM{FiltrationGroup::H1, base};

    // Levi factor: supported only on cross blocks against i0, where the
    // doubled factor acts trivially.
    auto levi = quotient_space(jL, jM, Region::M, d, x, i0, degrees);
    for (const auto& c : levi)
        if (c.component != i0 && c.component2 != i0) return false;

    const SignCharacter f2 =
        relative_signs(jL, jM, Region::U, d, x, i0, q0, degrees, mode, cutoff);
    const SignCharacter f4 =
        relative_signs(hL, hM, Region::Uminus, d, x, i0, q0, degrees, mode, cutoff);
    const SignCharacter prod = sign_product(f2, f4);
    if (prod.gl != SignTag::Trivial) return false;
    for (const auto& [id, t] : prod.unitary)
        if (t != SignTag::Trivial) return false;
    return true;
}

std::vector<GridPoint> make_grid(const std::vector<std::uint64_t>& q0s,
                                 const std::vector<int>& degree_choices,
                                 int d_max, int max_components) {
    std::vector<GridPoint> grid;
    for (std::uint64_t q0 : q0s) {
        for (int k = 1; k <= max_components; ++k) {
            std::vector<int> ids(static_cast<std::size_t>(k));
            for (int i = 0; i < k; ++i) ids[static_cast<std::size_t>(i)] = i;
            // all degree tuples
            std::vector<std::vector<int>> tuples{{}};
            for (int i = 0; i < k; ++i) {
                std::vector<std::vector<int>> next;
                for (const auto& t : tuples)
                    for (int deg : degree_choices) {
                        auto u = t;
                        u.push_back(deg);
                        next.push_back(std::move(u));
                    }
                tuples = std::move(next);
            }
            const auto classes = enumerate_embeddings(ids);
            for (const auto& degs : tuples)
                for (const auto& x : classes)
                    for (int i0 : ids)
                        for (int d = 1; d <= d_max; ++d)
                            grid.push_back({q0, degs, d, x, i0});
        }
    }
    return grid;
}

GridOutcome evaluate_grid_point(const GridPoint& pt, OracleMode mode,
                                std::uint64_t cutoff, bool inject_parity_fault) {
    GridOutcome r;
    r.formula_y =
        amending_character(VertexKind::Y, pt.i0, pt.x, pt.d, pt.q0, pt.degrees);
    r.formula_z =
        amending_character(VertexKind::Z, pt.i0, pt.x, pt.d, pt.q0, pt.degrees);
    if (inject_parity_fault) {
        r.formula_y.gl = tag_xor(r.formula_y.gl, SignTag::Quadratic);
        r.formula_z.gl = tag_xor(r.formula_z.gl, SignTag::Quadratic);
    }
    r.oracle_y = amending_brute_force(VertexKind::Y, pt.i0, pt.x, pt.d, pt.q0,
                                      pt.degrees, mode, cutoff);
    r.oracle_z = amending_brute_force(VertexKind::Z, pt.i0, pt.x, pt.d, pt.q0,
                                      pt.degrees, mode, cutoff);
    r.agree_y = r.formula_y == r.oracle_y;
    r.agree_z = r.formula_z == r.oracle_z;

    const bool i0_even = pt.x.in_even(pt.i0);
    const int total = static_cast<int>(pt.x.index_set.size());
    r.parity_table_ok =
        (r.oracle_y.gl ==
         (gl_parity_rule(VertexKind::Y, i0_even, pt.d, total) ? SignTag::Quadratic
                                                              : SignTag::Trivial)) &&
        (r.oracle_z.gl ==
         (gl_parity_rule(VertexKind::Z, i0_even, pt.d, total) ? SignTag::Quadratic
                                                              : SignTag::Trivial));

    const SignCharacter chi = sign_product(r.oracle_y, r.oracle_z);
    bool chi_ok = chi.gl == (total % 2 == 1 ? SignTag::Quadratic : SignTag::Trivial);
    for (const auto& [id, t] : chi.unitary) chi_ok = chi_ok && t == SignTag::Trivial;
    const SignCharacter chi_formula =
        transfer_character(pt.i0, pt.x, pt.d, pt.q0, pt.degrees);
    r.transfer_ok = chi_ok && chi == chi_formula;

    const SignCharacter p =
        nu_P(pt.x, pt.i0, pt.d, pt.q0, pt.degrees, mode, cutoff);
    r.nu_p_trivial = p.gl == SignTag::Trivial;
    for (const auto& [id, t] : p.unitary)
        r.nu_p_trivial = r.nu_p_trivial && t == SignTag::Trivial;
    for (const auto& [id, t] : r.oracle_y.unitary)
        r.nu_p_trivial = r.nu_p_trivial && t == SignTag::Trivial;
    for (const auto& [id, t] : r.oracle_z.unitary)
        r.nu_p_trivial = r.nu_p_trivial && t == SignTag::Trivial;

    r.four_factor_ok = four_factor_cancellation_ok(VertexKind::Y, pt.i0, pt.x,
                                                   pt.d, pt.q0, pt.degrees,
                                                   mode, cutoff) &&
                       four_factor_cancellation_ok(VertexKind::Z, pt.i0, pt.x,
                                                   pt.d, pt.q0, pt.degrees,
                                                   mode, cutoff);
    return r;
}

std::vector<GridOutcome> run_grid(const std::vector<GridPoint>& grid, int jobs,
                                  OracleMode mode, std::uint64_t cutoff,
                                  bool inject_parity_fault) {
    std::vector<GridOutcome> out(grid.size());
    if (jobs < 2) {
        for (std::size_t i = 0; i < grid.size(); ++i)
            out[i] = evaluate_grid_point(grid[i], mode, cutoff, inject_parity_fault);
        return out;
    }
    std::vector<std::thread> pool;
    std::size_t next = 0;
    std::mutex mu;
    for (int t = 0; t < jobs; ++t)
        pool.emplace_back([&] {
            for (;;) {
                std::size_t i;
                {
                    std::lock_guard<std::mutex> lk(mu);
                    if (next >= grid.size()) return;
                    i = next++;
                }
                out[i] = evaluate_grid_point(grid[i], mode, cutoff,
                                             inject_parity_fault);
            }
        });
    for (auto& th : pool) th.join();
    return out;
}

std::vector<std::string> format_grid_report(const std::vector<GridPoint>& grid,
                                            const std::vector<GridOutcome>& out) {
    std::vector<std::string> lines;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto& pt = grid[i];
        std::ostringstream base;
        base << pt.q0 << " ";
        for (std::size_t j = 0; j < pt.degrees.size(); ++j)
            base << (j ? "," : "") << pt.degrees[j];
        base << " " << pt.d << " e:";
        for (std::size_t j = 0; j < pt.x.even_part.size(); ++j)
            base << (j ? "," : "") << pt.x.even_part[j];
        if (pt.x.even_part.empty()) base << "-";
        base << " " << pt.i0;
        const auto& r = out[i];
        std::ostringstream y, z;
        y << base.str() << " y " << to_string(r.formula_y, pt.x.index_set) << " "
          << to_string(r.oracle_y, pt.x.index_set) << " " << (r.agree_y ? 1 : 0);
        z << base.str() << " z " << to_string(r.formula_z, pt.x.index_set) << " "
          << to_string(r.oracle_z, pt.x.index_set) << " " << (r.agree_z ? 1 : 0);
        lines.push_back(y.str());
        lines.push_back(z.str());
    }
    return lines;
}

} // namespace upacket
