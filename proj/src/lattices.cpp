#include "upacket/lattices.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace upacket {

namespace {

std::int64_t ceil_div(std::int64_t a, std::int64_t m) {
    return a >= 0 ? (a + m - 1) / m : -((-a) / m);
}

std::int64_t pos_mod(std::int64_t a, std::int64_t m) {
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

} // namespace

std::string BlockLabel::str() const {
    switch (kind) {
    case BlockKind::Minus: return "-";
    case BlockKind::Plus: return "+";
    default: return "c" + std::to_string(id);
    }
}

const std::vector<PairingEntry>& BlockLatticeSequence::pairing() const {
    if (!has_pairing_)
        throw ValidationError("Hermitian pairing data",
                              "sequence carries no form bookkeeping");
    return pairing_;
}

std::int64_t BlockLatticeSequence::exponent_at(int block, std::int64_t r) const {
    const Block& b = blocks_[static_cast<std::size_t>(block)];
    return ceil_div(r + b.offset, b.scale);
}

int BlockLatticeSequence::partner(int block) const {
    for (const auto& p : pairing())
        if (p.a == block) return p.b;
        else if (p.b == block) return p.a;
    throw ValidationError("Hermitian pairing data", "unpaired block");
}

int BlockLatticeSequence::pairing_valuation(int block) const {
    for (const auto& p : pairing())
        if (p.a == block || p.b == block) return p.valuation;
    throw ValidationError("Hermitian pairing data", "unpaired block");
}

/// Internal constructor access.
class SequenceBuilder {
  public:
    static BlockLatticeSequence make(std::int64_t period, std::vector<Block> blocks,
                                     std::vector<PairingEntry> pairing,
                                     std::vector<DisplayGroup> groups) {
        BlockLatticeSequence s;
        s.period_ = period;
        s.blocks_ = std::move(blocks);
        s.has_pairing_ = true;
        s.pairing_ = std::move(pairing);
        s.groups_ = std::move(groups);
        for (const auto& b : s.blocks_)
            if (b.scale != period)
                throw ValidationError("principal block chain",
                                      "block scale must equal the period");
        return s;
    }
};

BlockLatticeSequence direct_sum(const BlockLatticeSequence& a,
                                const BlockLatticeSequence& b) {
    const std::int64_t e = std::lcm(a.period_, b.period_);
    BlockLatticeSequence s;
    s.period_ = e;
    auto add_from = [&](const BlockLatticeSequence& src) {
        const std::int64_t f = e / src.period_;
        const int base = static_cast<int>(s.blocks_.size());
        for (const auto& blk : src.blocks_) {
            Block nb = blk;
            nb.offset *= f;
            nb.scale *= f;
            s.blocks_.push_back(nb);
        }
        if (s.has_pairing_)
            for (const auto& p : src.pairing_)
                s.pairing_.push_back({p.a + base, p.b + base, p.valuation});
        for (const auto& g : src.groups_) {
            auto it = std::find_if(s.groups_.begin(), s.groups_.end(),
                                   [&](const DisplayGroup& dg) { return dg.name == g.name; });
            if (it == s.groups_.end()) {
                s.groups_.push_back({g.name, {}});
                it = s.groups_.end() - 1;
            }
            for (int idx : g.block_indices) it->block_indices.push_back(idx + base);
        }
    };
    s.has_pairing_ = a.has_pairing_ && b.has_pairing_;
    add_from(a);
    add_from(b);
    if (!s.has_pairing_) s.pairing_.clear();
    return s;
}

BlockLatticeSequence dual(const BlockLatticeSequence& L) {
    const auto& pr = L.pairing();
    BlockLatticeSequence d = L;
    for (const auto& p : pr) {
        const std::int64_t oa = L.blocks_[static_cast<std::size_t>(p.a)].offset;
        const std::int64_t ob = L.blocks_[static_cast<std::size_t>(p.b)].offset;
        d.blocks_[static_cast<std::size_t>(p.b)].offset = -oa - L.period_ * p.valuation;
        d.blocks_[static_cast<std::size_t>(p.a)].offset = -ob - L.period_ * p.valuation;
    }
    return d;
}

bool is_self_dual(const BlockLatticeSequence& L) {
    for (const auto& p : L.pairing()) {
        const auto& ba = L.blocks()[static_cast<std::size_t>(p.a)];
        const auto& bb = L.blocks()[static_cast<std::size_t>(p.b)];
        if (ba.degree != bb.degree) return false;
        if (ba.offset + bb.offset != -L.period() * p.valuation) return false;
    }
    return true;
}

bool equal_up_to_reorder(const BlockLatticeSequence& a,
                         const BlockLatticeSequence& b) {
    if (a.period() != b.period() || a.blocks().size() != b.blocks().size())
        return false;
    auto key = [](const Block& blk) {
        return std::tuple<int, int, std::int64_t, std::int64_t, int>(
            static_cast<int>(blk.label.kind), blk.label.id, blk.offset,
            blk.scale, blk.degree);
    };
    std::vector<Block> va = a.blocks(), vb = b.blocks();
    auto lt = [&](const Block& x, const Block& y) { return key(x) < key(y); };
    std::sort(va.begin(), va.end(), lt);
    std::sort(vb.begin(), vb.end(), lt);
    for (std::size_t i = 0; i < va.size(); ++i)
        if (key(va[i]) != key(vb[i])) return false;
    return true;
}

BlockLatticeSequence standard_chain(int component_id, int degree) {
    Block b{{BlockKind::Component, component_id}, degree, 0, 2};
    return SequenceBuilder::make(2, {b}, {{0, 0, 0}},
                                 {{"Io", {0}}});
}

BlockLatticeSequence component_chain(int id, int degree, bool even_side) {
    Block b{{BlockKind::Component, id}, degree, even_side ? -1 : 0, 2};
    return SequenceBuilder::make(2, {b}, {{0, 0, even_side ? 1 : 0}},
                                 {{even_side ? "Ie" : "Io", {0}}});
}

BlockLatticeSequence build_Lambda_x(const EmbeddingClass& x,
                                    const std::vector<int>& degrees) {
    std::vector<Block> blocks;
    std::vector<PairingEntry> pairing;
    DisplayGroup go{"Io", {}}, ge{"Ie", {}};
    for (std::size_t i = 0; i < x.index_set.size(); ++i) {
        const int id = x.index_set[i];
        const bool even = x.in_even(id);
        const int idx = static_cast<int>(blocks.size());
        blocks.push_back({{BlockKind::Component, id}, degrees[i],
                          even ? -1 : 0, 2});
        pairing.push_back({idx, idx, even ? 1 : 0});
        (even ? ge : go).block_indices.push_back(idx);
    }
    std::vector<DisplayGroup> groups;
    if (!go.block_indices.empty()) groups.push_back(go);
    if (!ge.block_indices.empty()) groups.push_back(ge);
    return SequenceBuilder::make(2, std::move(blocks), std::move(pairing),
                                 std::move(groups));
}

namespace {

int degree_of(const EmbeddingClass& x, const std::vector<int>& degrees, int id) {
    for (std::size_t i = 0; i < x.index_set.size(); ++i)
        if (x.index_set[i] == id) return degrees[i];
    throw ValidationError("component membership", "unknown component id");
}

BlockLatticeSequence build_period6(const EmbeddingClass& x, int i0,
                                   const std::vector<int>& degrees) {
    const bool i0_even = x.in_even(i0);
    const int n0 = degree_of(x, degrees, i0);
    std::vector<Block> blocks;
    std::vector<PairingEntry> pairing;
    blocks.push_back({{BlockKind::Minus, i0}, n0, -1, 6});
    DisplayGroup gm{"-", {0}};
    DisplayGroup go{"Io", {}}, ge{"Ie", {}};
    for (std::size_t i = 0; i < x.index_set.size(); ++i) {
        const int id = x.index_set[i];
        const bool even = x.in_even(id);
        const bool near = even == i0_even; // side containing i0 is aligned
        const int idx = static_cast<int>(blocks.size());
        blocks.push_back({{BlockKind::Component, id}, degrees[i],
                          near ? 0 : -3, 6});
        pairing.push_back({idx, idx, near ? 0 : 1});
        (even ? ge : go).block_indices.push_back(idx);
    }
    const int plus_idx = static_cast<int>(blocks.size());
    blocks.push_back({{BlockKind::Plus, i0}, n0, 1, 6});
    pairing.push_back({0, plus_idx, 0});
    DisplayGroup gp{"+", {plus_idx}};
    std::vector<DisplayGroup> groups{gm};
    // Ordered basis: the side containing i0 comes first.
    DisplayGroup& first = i0_even ? ge : go;
    DisplayGroup& second = i0_even ? go : ge;
    if (!first.block_indices.empty()) groups.push_back(first);
    if (!second.block_indices.empty()) groups.push_back(second);
    groups.push_back(gp);
    return SequenceBuilder::make(6, std::move(blocks), std::move(pairing),
                                 std::move(groups));
}

BlockLatticeSequence coarsen(const BlockLatticeSequence& L, std::int64_t k0,
                             std::int64_t k1) {
    std::vector<Block> blocks = L.blocks();
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        const std::int64_t c0 = L.exponent_at(static_cast<int>(i), k0);
        const std::int64_t c1 = L.exponent_at(static_cast<int>(i), k1);
        if (c1 != c0 && c1 != c0 + 1)
            throw ValidationError("vertex coarsening",
                                  "indices do not bound one lattice step");
        blocks[i].offset = c1 == c0 ? 2 * c0 - 1 : 2 * c0;
        blocks[i].scale = 2;
    }
    auto s = SequenceBuilder::make(2, std::move(blocks), L.pairing(),
                                   L.display_groups());
    if (!is_self_dual(s))
        throw ValidationError("conjugate self-duality",
                              "coarsening broke the duality bookkeeping");
    return s;
}

} // namespace

BlockLatticeSequence build_higher(const EmbeddingClass& x, int i0,
                                  HigherKind kind,
                                  const std::vector<int>& degrees) {
    auto L6 = build_period6(x, i0, degrees);
    switch (kind) {
    case HigherKind::Lambda: return L6;
    case HigherKind::My: return coarsen(L6, -2, 3);
    case HigherKind::Mz: return coarsen(L6, 0, 1);
    }
    throw ValidationError("lattice kind", "unknown higher-lattice kind");
}

BlockLatticeSequence build_pm(int i0, int degree) {
    std::vector<Block> blocks{{{BlockKind::Minus, i0}, degree, -1, 6},
                              {{BlockKind::Component, i0}, degree, 0, 6},
                              {{BlockKind::Plus, i0}, degree, 1, 6}};
    std::vector<PairingEntry> pairing{{0, 2, 0}, {1, 1, 0}};
    return SequenceBuilder::make(6, std::move(blocks), std::move(pairing),
                                 {{"-", {0}}, {"Io", {1}}, {"+", {2}}});
}

BlockLatticeSequence restrict_to_V(const BlockLatticeSequence& L) {
    const std::int64_t f = L.period() / 2;
    std::vector<Block> blocks;
    std::vector<PairingEntry> pairing;
    std::map<int, int> remap;
    for (std::size_t i = 0; i < L.blocks().size(); ++i) {
        const Block& b = L.blocks()[i];
        if (b.label.kind != BlockKind::Component) continue;
        if (b.offset % f != 0 || b.scale % f != 0)
            throw ValidationError("restriction to V",
                                  "component block offsets are not rescalable");
        remap[static_cast<int>(i)] = static_cast<int>(blocks.size());
        blocks.push_back({b.label, b.degree, b.offset / f, b.scale / f});
    }
    for (const auto& p : L.pairing())
        if (remap.count(p.a) && remap.count(p.b))
            pairing.push_back({remap[p.a], remap[p.b], p.valuation});
    std::vector<DisplayGroup> groups;
    for (const auto& g : L.display_groups()) {
        DisplayGroup ng{g.name, {}};
        for (int idx : g.block_indices)
            if (remap.count(idx)) ng.block_indices.push_back(remap[idx]);
        if (!ng.block_indices.empty()) groups.push_back(ng);
    }
    return SequenceBuilder::make(2, std::move(blocks), std::move(pairing),
                                 std::move(groups));
}

ReductiveQuotientType reductive_quotient(const BlockLatticeSequence& L) {
    const std::int64_t e = L.period();
    // Jump residue of a block and its image under duality.
    auto rho = [&](const Block& b) { return pos_mod(1 - b.offset, e); };
    std::map<std::pair<std::int64_t, int>, std::pair<int, int>> groups;
    for (const auto& b : L.blocks()) {
        auto& g = groups[{rho(b), b.label.id}];
        g.first += 1;
        g.second = b.degree;
    }
    ReductiveQuotientType out;
    std::vector<std::pair<std::int64_t, int>> done;
    for (const auto& [key, gv] : groups) {
        const auto [r, id] = key;
        const std::int64_t rd = pos_mod(2 - r, e);
        if (rd == r) {
            ReductiveQuotientType::Factor f{ReductiveQuotientType::Family::U1,
                                            gv.second};
            switch (gv.first) {
            case 1: f.family = ReductiveQuotientType::Family::U1; break;
            case 2: f.family = ReductiveQuotientType::Family::U2; break;
            case 3: f.family = ReductiveQuotientType::Family::U3; break;
            default:
                throw ValidationError("reductive quotient shape",
                                      "unitary factor rank exceeds 3");
            }
            out.factors.push_back(f);
        } else {
            if (std::find(done.begin(), done.end(), key) != done.end()) continue;
            auto it = groups.find({rd, id});
            if (it == groups.end() || it->second.first != gv.first)
                throw ValidationError("reductive quotient shape",
                                      "unbalanced linear factor");
            if (gv.first != 1)
                throw ValidationError("reductive quotient shape",
                                      "linear factor rank exceeds 1");
            out.factors.push_back({ReductiveQuotientType::Family::GL1, gv.second});
            done.push_back({rd, id});
        }
    }
    std::sort(out.factors.begin(), out.factors.end(),
              [](const auto& a, const auto& b) {
                  return std::make_pair(static_cast<int>(a.family), a.degree) <
                         std::make_pair(static_cast<int>(b.family), b.degree);
              });
    return out;
}

std::string BlockValuationMatrix::format() const {
    auto cell = [&](std::size_t j, std::size_t k) {
        return entries[j][k] == BULLET ? std::string("*")
                                       : std::to_string(entries[j][k]);
    };
    std::size_t w = 1;
    for (const auto& l : labels) w = std::max(w, l.size());
    for (std::size_t j = 0; j < labels.size(); ++j)
        for (std::size_t k = 0; k < labels.size(); ++k)
            w = std::max(w, cell(j, k).size());
    std::ostringstream os;
    auto pad = [&](const std::string& s) {
        os << std::string(w + 1 - s.size(), ' ') << s;
    };
    pad("");
    for (const auto& l : labels) pad(l);
    os << "\n";
    for (std::size_t j = 0; j < labels.size(); ++j) {
        pad(labels[j]);
        for (std::size_t k = 0; k < labels.size(); ++k) pad(cell(j, k));
        os << "\n";
    }
    return os.str();
}

namespace {

std::int64_t group_offset(const BlockLatticeSequence& L, const DisplayGroup& g) {
    const std::int64_t o = L.blocks()[static_cast<std::size_t>(g.block_indices.front())].offset;
    for (int idx : g.block_indices)
        if (L.blocks()[static_cast<std::size_t>(idx)].offset != o)
            throw ValidationError("aggregate block",
                                  "display group mixes distinct offsets");
    return o;
}

} // namespace

BlockValuationMatrix valuation_matrix(const BlockLatticeSequence& L,
                                      std::int64_t r) {
    const auto& gs = L.display_groups();
    BlockValuationMatrix m;
    for (const auto& g : gs) m.labels.push_back(g.name);
    m.entries.assign(gs.size(), std::vector<std::int64_t>(gs.size(), 0));
    for (std::size_t j = 0; j < gs.size(); ++j)
        for (std::size_t k = 0; k < gs.size(); ++k)
            m.entries[j][k] =
                ceil_div(r + group_offset(L, gs[j]) - group_offset(L, gs[k]),
                         L.period());
    return m;
}

std::int64_t filtration_index(FiltrationGroup g, std::int64_t period, int d) {
    const std::int64_t base = (period / 2) * d;
    return g == FiltrationGroup::H1 ? base + 1 : base;
}

BlockValuationMatrix filtration_matrix(FiltrationGroup group, HigherKind base,
                                       int d, const EmbeddingClass& x, int i0,
                                       const std::vector<int>& degrees) {
    if (d < 1)
        throw ValidationError("positive level",
                              "filtration tables require level >= 1");
    const auto L = build_higher(x, i0, base, degrees);
    auto m = valuation_matrix(L, filtration_index(group, L.period(), d));
    const auto& gs = L.display_groups();
    auto is_edge = [&](std::size_t j) {
        return gs[j].name == "-" || gs[j].name == "+";
    };
    for (std::size_t j = 0; j < gs.size(); ++j)
        for (std::size_t k = 0; k < gs.size(); ++k)
            if (j == k || (!is_edge(j) && !is_edge(k)))
                m.entries[j][k] = BlockValuationMatrix::BULLET;
    return m;
}

namespace {

struct BlockIndexMap {
    int minus = -1;
    int plus = -1;
    std::map<int, int> comps; // component id -> block index
};

BlockIndexMap index_blocks(const BlockLatticeSequence& L) {
    BlockIndexMap m;
    for (std::size_t i = 0; i < L.blocks().size(); ++i) {
        const auto& b = L.blocks()[i];
        if (b.label.kind == BlockKind::Minus) m.minus = static_cast<int>(i);
        else if (b.label.kind == BlockKind::Plus) m.plus = static_cast<int>(i);
        else m.comps[b.label.id] = static_cast<int>(i);
    }
    return m;
}

std::int64_t ideal_entry(const BlockLatticeSequence& L, std::int64_t r, int j,
                         int k) {
    return ceil_div(r + L.blocks()[static_cast<std::size_t>(j)].offset -
                        L.blocks()[static_cast<std::size_t>(k)].offset,
                    L.period());
}

} // namespace

std::vector<QuotientConstituent>
quotient_space(const FiltrationSpec& numerator, const FiltrationSpec& denominator,
               Region region, int d, const EmbeddingClass& x, int i0,
               const std::vector<int>& degrees) {
    if (d < 1)
        throw ValidationError("positive level",
                              "filtration quotients require level >= 1");
    const auto Ln = build_higher(x, i0, numerator.base, degrees);
    const auto Ld = build_higher(x, i0, denominator.base, degrees);
    const std::int64_t rn = filtration_index(numerator.group, Ln.period(), d);
    const std::int64_t rd = filtration_index(denominator.group, Ld.period(), d);
    const auto bn = index_blocks(Ln);
    const auto bd = index_blocks(Ld);
    const int n0 = degree_of(x, degrees, i0);

    auto steps_at = [&](int jn, int kn, int jd, int kd) {
        const std::int64_t diff =
            ideal_entry(Ld, rd, jd, kd) - ideal_entry(Ln, rn, jn, kn);
        if (diff < 0)
            throw ValidationError("containment",
                                  "denominator not contained in numerator");
        return diff;
    };

    std::vector<QuotientConstituent> out;
    if (region == Region::M) {
        std::vector<int> ids = x.index_set;
        for (std::size_t a = 0; a < ids.size(); ++a)
            for (std::size_t b = a + 1; b < ids.size(); ++b) {
                const std::int64_t s1 =
                    steps_at(bn.comps.at(ids[a]), bn.comps.at(ids[b]),
                             bd.comps.at(ids[a]), bd.comps.at(ids[b]));
                const std::int64_t s2 =
                    steps_at(bn.comps.at(ids[b]), bn.comps.at(ids[a]),
                             bd.comps.at(ids[b]), bd.comps.at(ids[a]));
                if (s1 + s2 == 0) continue;
                QuotientConstituent c;
                c.kind = QuotientConstituent::Kind::Internal;
                c.component = ids[a];
                c.component2 = ids[b];
                c.multiplicity = static_cast<int>(s1 + s2);
                out.push_back(c);
            }
        return out;
    }

    const bool lower = region == Region::Uminus;
    for (std::size_t i = 0; i < x.index_set.size(); ++i) {
        const int id = x.index_set[i];
        // sigma pairs Hom(V_-, V_i) with Hom(V_i, V_+) and their transposes.
        const std::int64_t s1 =
            lower ? steps_at(bn.comps.at(id), bn.minus, bd.comps.at(id), bd.minus)
                  : steps_at(bn.minus, bn.comps.at(id), bd.minus, bd.comps.at(id));
        const std::int64_t s2 =
            lower ? steps_at(bn.plus, bn.comps.at(id), bd.plus, bd.comps.at(id))
                  : steps_at(bn.comps.at(id), bn.plus, bd.comps.at(id), bd.plus);
        if (s1 != s2)
            throw ValidationError("sigma pairing symmetry",
                                  "paired blocks disagree in the quotient");
        if (s1 == 0) continue;
        QuotientConstituent c;
        c.kind = QuotientConstituent::Kind::CrossPair;
        c.component = id;
        c.multiplicity = static_cast<int>(s1);
        c.shape = tensor_decompose(degrees[i], n0);
        out.push_back(c);
    }
    const std::int64_t sh =
        lower ? steps_at(bn.plus, bn.minus, bd.plus, bd.minus)
              : steps_at(bn.minus, bn.plus, bd.minus, bd.plus);
    if (sh != 0) {
        QuotientConstituent c;
        c.kind = QuotientConstituent::Kind::Hermitian;
        c.multiplicity = static_cast<int>(sh);
        c.shape = tensor_decompose(n0, n0);
        out.push_back(c);
    }
    return out;
}

} // namespace upacket
