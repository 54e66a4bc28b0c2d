#ifndef UPACKET_GOLDEN_HPP
#define UPACKET_GOLDEN_HPP

#include <array>
#include <string>
#include <vector>

#include "upacket/lattices.hpp"

namespace upacket {

/// One reference stanza: symbolic 4x4 entries over the ordered blocks
/// (-, Io, Ie, +), parameterized by k with d = 2k or 2k+1.
struct GoldenMatrix {
    std::string lattice; // Lambda | My | Mz
    std::string group;   // H1 | J1
    std::string parity;  // odd | even
    std::array<std::array<std::string, 4>, 4> entries;
};

std::vector<GoldenMatrix> load_golden_tables(const std::string& path);

/// Evaluates "k", "k+1", "k+2", "k-1" or "*" at a concrete k.
std::int64_t eval_golden_entry(const std::string& text, int k);

struct AppendixCheck {
    int matrices_checked = 0;
    int matrices_matched = 0;
    std::vector<std::string> mismatches;
    bool ok() const { return matrices_checked == 36 && mismatches.empty(); }
};

/// Compares every reference stanza against the computed filtration matrices
/// for d in {2,...,7}.
AppendixCheck check_appendix_tables(const std::string& path);

} // namespace upacket

#endif
