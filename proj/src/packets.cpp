#include "upacket/packets.hpp"

#include <algorithm>

namespace upacket {

SkewCharacterComponent endoscopic_twist(const SkewCharacterComponent& c, int n) {
    return n % 2 == 1 ? c : twist_unramified_quadratic(c);
}

namespace {

std::vector<int> ids_of(const VeryCuspidalDatum& datum) {
    std::vector<int> ids(datum.components.size());
    for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<int>(i);
    return ids;
}

std::vector<int> degrees_of(const VeryCuspidalDatum& datum) {
    std::vector<int> d;
    for (const auto& c : datum.components) d.push_back(c.n);
    return d;
}

/// Amending tag of component i at the class x (rank-3 vertex). Depth-zero
/// data take no correction.
SignTag member_tag(const VeryCuspidalDatum& datum, const EmbeddingClass& x,
                   int i) {
    if (datum.level() == 0) return SignTag::Trivial;
    const auto nu = amending_character(VertexKind::Y, i, x, datum.level(),
                                       datum.q0, degrees_of(datum));
    return nu.gl;
}

/// Plus-normalization of one component: components of the minus skewness
/// class are twisted by the unramified quadratic character.
SkewCharacterComponent plus_normalize(const SkewCharacterComponent& c) {
    return c.skew_sign == -1 ? twist_unramified_quadratic(c) : c;
}

/// Member assembly shared by the stable and the endoscopic-factor paths:
/// the datum must have one uniform skewness class; every member twists each
/// component into the plus class and applies its amending tag.
PacketDescription build_packet(const VeryCuspidalDatum& datum) {
    PacketDescription out;
    out.parameter = datum;
    for (const auto& x : enumerate_embeddings(ids_of(datum))) {
        PacketMember m;
        m.x = x;
        for (std::size_t i = 0; i < datum.components.size(); ++i) {
            const SignTag t = member_tag(datum, x, static_cast<int>(i));
            m.amendments.push_back(t);
            m.amended_components.push_back(
                apply_sign_tag(plus_normalize(datum.components[i]), datum.q0, t));
        }
        out.members.push_back(std::move(m));
    }
    out.base_change = datum.components;
    return out;
}

} // namespace

PacketDescription assemble_packet(const VeryCuspidalDatum& datum) {
    datum.validate();
    if (!datum.is_stable())
        throw ValidationError("uniform skew sign",
                              "components must all carry the stable sign");
    return build_packet(datum);
}

std::vector<SkewCharacterComponent>
base_change_of(const EmbeddingClass& x, const VeryCuspidalDatum& datum) {
    datum.validate();
    const int n = datum.total_degree();
    std::vector<SkewCharacterComponent> out;
    for (std::size_t i = 0; i < datum.components.size(); ++i) {
        const SignTag t = member_tag(datum, x, static_cast<int>(i));
        out.push_back(apply_sign_tag(endoscopic_twist(datum.components[i], n),
                                     datum.q0, t));
    }
    return out;
}

bool base_change_equivalent(const std::vector<SkewCharacterComponent>& a,
                            const std::vector<SkewCharacterComponent>& b,
                            std::uint64_t q0) {
    if (a.size() != b.size()) return false;
    std::vector<bool> used(b.size(), false);
    // Backtracking match on componentwise Galois conjugacy. Supports are
    // small, so a greedy-with-backtrack search is enough.
    std::vector<std::size_t> choice(a.size(), 0);
    std::size_t i = 0;
    while (i < a.size()) {
        std::size_t j = choice[i];
        bool advanced = false;
        for (; j < b.size(); ++j) {
            if (used[j] || a[i].n != b[j].n || a[i].omega != b[j].omega ||
                a[i].skew_sign != b[j].skew_sign)
                continue;
            bool conj = false;
            for (int m = 0; m < a[i].n && !conj; ++m)
                conj = galois_twist(a[i], q0, m) == b[j];
            if (!conj) continue;
            used[j] = true;
            choice[i] = j + 1;
            ++i;
            advanced = true;
            break;
        }
        if (advanced) continue;
        choice[i] = 0;
        if (i == 0) return false;
        --i;
        used[choice[i] - 1] = false;
    }
    return true;
}

bool amending_unique(const VeryCuspidalDatum& datum) {
    datum.validate();
    // Enumerate the tame-twist family (all shifts of the tame exponents that
    // keep the datum valid), amend each, and check the map is injective
    // modulo the Weyl equivalence.
    std::vector<VeryCuspidalDatum> family;
    std::vector<std::uint64_t> radix;
    for (const auto& c : datum.components)
        radix.push_back(FieldSpec(datum.q0, c.n).u1_order());
    std::vector<std::uint64_t> idx(radix.size(), 0);
    for (;;) {
        VeryCuspidalDatum t = datum;
        for (std::size_t i = 0; i < idx.size(); ++i)
            t.components[i].tame_exponent =
                (datum.components[i].tame_exponent + idx[i]) % radix[i];
        bool valid = true;
        try {
            t.validate();
        } catch (const ValidationError&) {
            valid = false;
        }
        if (valid) family.push_back(std::move(t));
        std::size_t pos = 0;
        while (pos < idx.size() && ++idx[pos] == radix[pos]) idx[pos++] = 0;
        if (pos == idx.size()) break;
    }

    for (const auto& x : enumerate_embeddings(ids_of(datum))) {
        std::vector<VeryCuspidalDatum> amended;
        for (const auto& t : family) {
            VeryCuspidalDatum a = t;
            for (std::size_t i = 0; i < a.components.size(); ++i)
                a.components[i] = apply_sign_tag(
                    a.components[i], a.q0, member_tag(t, x, static_cast<int>(i)));
            amended.push_back(std::move(a));
        }
        // Bijectivity of the amending map on the family.
        for (std::size_t i = 0; i < family.size(); ++i) {
            bool found = false;
            for (std::size_t j = 0; j < amended.size() && !found; ++j)
                found = amended[j].components == family[i].components;
            if (!found) return false;
        }
        // Inequivalent inputs stay inequivalent.
        for (std::size_t i = 0; i < family.size(); ++i)
            for (std::size_t j = i + 1; j < family.size(); ++j) {
                const bool before = weyl_equivalent(x, family[i], x, family[j]);
                const bool after = weyl_equivalent(x, amended[i], x, amended[j]);
                if (before != after) return false;
            }
    }
    return true;
}

bool endoscopic_signs_legal(int n1, int n2, int sign1, int sign2) {
    if ((sign1 != 1 && sign1 != -1) || (sign2 != 1 && sign2 != -1)) return false;
    if ((n1 - n2) % 2 == 0) return sign1 != sign2;
    return sign1 == sign2;
}

EndoscopicSplit endoscopic_split(const VeryCuspidalDatum& datum, int sign1,
                                 int sign2) {
    datum.validate();
    EndoscopicSplit out;
    auto& ed = out.datum;
    ed.sign1 = sign1;
    ed.sign2 = sign2;
    for (std::size_t i = 0; i < datum.components.size(); ++i) {
        const auto& c = datum.components[i];
        if (c.skew_sign == sign1) {
            ed.n1 += c.n;
            ed.index_set1.push_back(static_cast<int>(i));
        } else if (c.skew_sign == sign2) {
            ed.n2 += c.n;
            ed.index_set2.push_back(static_cast<int>(i));
        } else {
            throw ValidationError("endoscopic sign coverage",
                                  "a component matches neither sign");
        }
    }
    if (!endoscopic_signs_legal(ed.n1, ed.n2, sign1, sign2))
        throw ValidationError("endoscopic sign parity",
                              "sign pair is illegal for the degree parities");
    if (ed.n1 == ed.n2 && ed.sign1 == -1) {
        std::swap(ed.sign1, ed.sign2);
        std::swap(ed.index_set1, ed.index_set2);
    }

    for (const auto* part : {&ed.index_set1, &ed.index_set2}) {
        if (part->empty()) continue;
        VeryCuspidalDatum factor;
        factor.q0 = datum.q0;
        for (int id : *part)
            factor.components.push_back(
                datum.components[static_cast<std::size_t>(id)]);
        factor.validate();
        out.factors.push_back(build_packet(factor));
    }
    return out;
}

} // namespace upacket
