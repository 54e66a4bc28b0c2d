#ifndef UPACKET_AMENDING_HPP
#define UPACKET_AMENDING_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "upacket/embeddings.hpp"
#include "upacket/lattices.hpp"

namespace upacket {

/// Raised when two routes that must agree produce different answers.
struct InconsistencyError : std::runtime_error {
    explicit InconsistencyError(const std::string& msg)
        : std::runtime_error(msg) {}
};

enum class SignTag { Trivial, Quadratic };

/// An at-most-quadratic tame character of the torus attached to a datum: one
/// tag per unitary component plus a tag for the doubled linear factor. The
/// value at the uniformizer is +1 by convention.
struct SignCharacter {
    int gl_component = -1;
    SignTag gl = SignTag::Trivial;
    std::map<int, SignTag> unitary;

    bool operator==(const SignCharacter& o) const {
        return gl_component == o.gl_component && gl == o.gl &&
               unitary == o.unitary;
    }
};

SignCharacter sign_product(const SignCharacter& a, const SignCharacter& b);
std::string to_string(const SignCharacter& s, const std::vector<int>& ids);

enum class VertexKind { Y, Z };

enum class OracleMode {
    Literal,    // literal permutation parity; errors beyond the cutoff
    CycleCount, // closed-form cycle counting
    Both        // run both wherever the literal mode fits and compare
};

/// Closed-form amending character at the vertex w for the linear factor i0:
/// the linear-factor tag follows the parity rule in d and #I (with the two
/// vertices switching roles when i0 lies on the even side), and the
/// per-component tags come from the block signature formula.
SignCharacter amending_character(VertexKind w, int i0, const EmbeddingClass& x,
                                 int d, std::uint64_t q0,
                                 const std::vector<int>& degrees);

/// The same character computed as the signature of the torus action on the
/// filtration quotient at the vertex, realized block by block over finite
/// fields.
SignCharacter amending_brute_force(VertexKind w, int i0, const EmbeddingClass& x,
                                   int d, std::uint64_t q0,
                                   const std::vector<int>& degrees,
                                   OracleMode mode = OracleMode::Both,
                                   std::uint64_t cutoff = 1000000);

/// Signature of the torus action on the parabolic-restriction quotient of
/// the interleaved lattice; all components are trivial.
SignCharacter nu_P(const EmbeddingClass& x, int i0, int d, std::uint64_t q0,
                   const std::vector<int>& degrees,
                   OracleMode mode = OracleMode::Both,
                   std::uint64_t cutoff = 1000000);

/// Product of the two vertex characters. The linear-factor tag is quadratic
/// iff #I is odd, independent of d, the partition and i0.
SignCharacter transfer_character(int i0, const EmbeddingClass& x, int d,
                                 std::uint64_t q0,
                                 const std::vector<int>& degrees);

/// Checks the four-factor decomposition of the relative signature between
/// the interleaved lattice and the vertex lattice: the Levi factor is
/// trivial and the two triangular factors cancel.
bool four_factor_cancellation_ok(VertexKind w, int i0, const EmbeddingClass& x,
                                 int d, std::uint64_t q0,
                                 const std::vector<int>& degrees,
                                 OracleMode mode = OracleMode::Both,
                                 std::uint64_t cutoff = 1000000);

// Verification grid.

struct GridPoint {
    std::uint64_t q0;
    std::vector<int> degrees; // one entry per component id 0..k-1
    int d;
    EmbeddingClass x;
    int i0;
};

struct GridOutcome {
    SignCharacter formula_y, oracle_y, formula_z, oracle_z;
    bool agree_y = false, agree_z = false;
    bool parity_table_ok = false;
    bool transfer_ok = false;
    bool nu_p_trivial = false;
    bool four_factor_ok = false;

    bool all_ok() const {
        return agree_y && agree_z && parity_table_ok && transfer_ok &&
               nu_p_trivial && four_factor_ok;
    }
};

std::vector<GridPoint> make_grid(const std::vector<std::uint64_t>& q0s,
                                 const std::vector<int>& degree_choices,
                                 int d_max, int max_components);

GridOutcome evaluate_grid_point(const GridPoint& pt,
                                OracleMode mode = OracleMode::Both,
                                std::uint64_t cutoff = 1000000,
                                bool inject_parity_fault = false);

/// Runs the whole grid, `jobs` points at a time, results in grid order.
std::vector<GridOutcome> run_grid(const std::vector<GridPoint>& grid, int jobs,
                                  OracleMode mode = OracleMode::Both,
                                  std::uint64_t cutoff = 1000000,
                                  bool inject_parity_fault = false);

/// One report line per point and vertex:
/// `q0 nvec d partition i0 w formula oracle agree`.
std::vector<std::string> format_grid_report(const std::vector<GridPoint>& grid,
                                            const std::vector<GridOutcome>& out);

} // namespace upacket

#endif
