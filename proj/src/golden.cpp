#include "upacket/golden.hpp"

#include <fstream>
#include <sstream>

namespace upacket {

std::vector<GoldenMatrix> load_golden_tables(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ValidationError("golden table file", "cannot open " + path);
    std::vector<GoldenMatrix> out;
    std::string line;
    GoldenMatrix cur;
    int row = -1; // -1: expect header
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string tok;
        std::vector<std::string> toks;
        while (ls >> tok) toks.push_back(tok);
        if (toks.empty() || toks.front()[0] == '#') continue;
        if (row == -1) {
            if (toks.size() != 3)
                throw ValidationError("golden table file",
                                      "expected `lattice group parity` header");
            cur.lattice = toks[0];
            cur.group = toks[1];
            cur.parity = toks[2];
            row = 0;
        } else {
            if (toks.size() != 4)
                throw ValidationError("golden table file",
                                      "expected 4 entries per row");
            for (int k = 0; k < 4; ++k)
                cur.entries[static_cast<std::size_t>(row)][static_cast<std::size_t>(k)] = toks[static_cast<std::size_t>(k)];
            if (++row == 4) {
                out.push_back(cur);
                row = -1;
            }
        }
    }
    if (row != -1)
        throw ValidationError("golden table file", "truncated stanza");
    return out;
}

std::int64_t eval_golden_entry(const std::string& text, int k) {
    if (text == "*") return BlockValuationMatrix::BULLET;
    if (text == "k") return k;
    if (text.size() >= 2 && text[0] == 'k' && (text[1] == '+' || text[1] == '-')) {
        const int off = std::stoi(text.substr(1));
        return k + off;
    }
    throw ValidationError("golden table file", "bad entry `" + text + "`");
}

AppendixCheck check_appendix_tables(const std::string& path) {
    const auto tables = load_golden_tables(path);
    AppendixCheck res;

    // A partition with both sides populated; the aggregated entries do not
    // depend on the degrees.
    EmbeddingClass x;
    x.index_set = {0, 1, 2};
    x.odd_part = {0};
    x.even_part = {1, 2};
    const std::vector<int> degrees{1, 1, 1};
    const int i0 = 0;

    auto kind_of = [](const std::string& s) {
        if (s == "Lambda") return HigherKind::Lambda;
        if (s == "My") return HigherKind::My;
        if (s == "Mz") return HigherKind::Mz;
        throw ValidationError("golden table file", "bad lattice " + s);
    };
    auto group_of = [](const std::string& s) {
        if (s == "H1") return FiltrationGroup::H1;
        if (s == "J1") return FiltrationGroup::J1;
        throw ValidationError("golden table file", "bad group " + s);
    };

    for (int d = 2; d <= 7; ++d) {
        const bool odd = d % 2 == 1;
        const int k = odd ? (d - 1) / 2 : d / 2;
        for (const auto& t : tables) {
            if ((t.parity == "odd") != odd) continue;
            ++res.matrices_checked;
            const auto m = filtration_matrix(group_of(t.group), kind_of(t.lattice),
                                             d, x, i0, degrees);
            bool match = m.labels ==
                         std::vector<std::string>{"-", "Io", "Ie", "+"};
            for (std::size_t r = 0; r < 4 && match; ++r)
                for (std::size_t c = 0; c < 4 && match; ++c)
                    match = m.entries[r][c] == eval_golden_entry(t.entries[r][c], k);
            if (match) {
                ++res.matrices_matched;
            } else {
                res.mismatches.push_back(t.lattice + " " + t.group + " d=" +
                                         std::to_string(d));
            }
        }
    }
    return res;
}

} // namespace upacket
