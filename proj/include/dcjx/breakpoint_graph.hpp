#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dcjx/errors.hpp"
#include "dcjx/genome.hpp"

namespace dcjx {

enum class ExtremityKind : std::uint8_t { head, tail, cap };

/// A vertex of the breakpoint graph: one end of a gene occurrence, or a cap
/// closing one telomere. Every telomere gets its own cap.
struct Extremity {
    ExtremityKind kind = ExtremityKind::cap;
    Family family = 0;
    std::uint32_t occurrence = 0;
    std::uint32_t cap_id = 0;

    static Extremity head(Family f, std::uint32_t occ = 0) { return {ExtremityKind::head, f, occ, 0}; }
    static Extremity tail(Family f, std::uint32_t occ = 0) { return {ExtremityKind::tail, f, occ, 0}; }
    static Extremity cap(std::uint32_t id) { return {ExtremityKind::cap, 0, 0, id}; }

    bool is_cap() const { return kind == ExtremityKind::cap; }
    auto operator<=>(const Extremity&) const = default;
};

std::string to_string(const Extremity& e);

enum class EdgeColor : std::uint8_t { gamma, pi };

inline constexpr std::uint32_t kNoOccurrence = 0xFFFFFFFFu;

struct BpgEdge {
    std::uint32_t u = 0;
    std::uint32_t v = 0;
    EdgeColor color = EdgeColor::gamma;
    /// Occurrence index (k-th copy of the family inside the colored genome)
    /// of the gene at endpoint u and v; kNoOccurrence for caps.
    std::array<std::uint32_t, 2> occurrence{kNoOccurrence, kNoOccurrence};
};

/// How gene extremities are identified across the two genomes.
///  - occurrence: the k-th copy of family f in gamma and the k-th copy in pi
///    share a vertex. On duplicate-free genomes this is the textbook graph.
///  - family: all copies of f collapse onto one head and one tail vertex, so
///    duplicated families show up as irregular vertices of higher degree.
enum class VertexIdentity : std::uint8_t { occurrence, family };

class BreakpointGraph {
public:
    const std::vector<Extremity>& vertices() const { return vertices_; }
    const std::vector<BpgEdge>& edges() const { return edges_; }
    VertexIdentity identity() const { return identity_; }

    std::optional<std::uint32_t> find(const Extremity& e) const;
    std::span<const std::uint32_t> incident(std::uint32_t vertex) const;
    std::size_t degree(std::uint32_t vertex, EdgeColor color) const;
    /// Exactly one edge of each color.
    bool is_regular(std::uint32_t vertex) const;

private:
    friend BreakpointGraph build_bpg(const Genome&, const Genome&, VertexIdentity);

    void add_edge(std::uint32_t u, std::uint32_t v, EdgeColor color, std::uint32_t occ_u, std::uint32_t occ_v);
    void finalize();

    VertexIdentity identity_ = VertexIdentity::occurrence;
    std::vector<Extremity> vertices_;
    std::vector<BpgEdge> edges_;
    std::vector<std::uint32_t> incidence_offsets_;
    std::vector<std::uint32_t> incidence_;
};

BreakpointGraph build_bpg(const Genome& gamma, const Genome& pi,
                          VertexIdentity identity = VertexIdentity::occurrence);

/// One line per edge, `u -- v [color]`, sorted, for golden-file comparisons.
std::string dump_edges(const BreakpointGraph& bpg);

enum class OpenVertexLabel : std::uint8_t { closed, pi_open, gamma_open };

/// pi-open: the family is missing from gamma; gamma-open: missing from pi.
OpenVertexLabel open_label(const Extremity& e, const FamilyCensus& gamma, const FamilyCensus& pi);

/// Component counts of a duplicate-free breakpoint graph.
///
/// A path is even or odd by its number of edges. Path names follow their
/// end points: `p0` joins two caps, `p_pi` a cap and a pi-open vertex,
/// `p_pipi` two pi-open vertices, `p_pigam` a pi-open and a gamma-open one.
struct ComponentCensus {
    int alphabet_size = 0;  // N: families present in either genome
    int cycles = 0;
    int p0_even = 0;
    int p0_odd = 0;
    int p_pi_odd = 0;
    int p_pi_even = 0;
    int p_gamma_odd = 0;
    int p_gamma_even = 0;
    int p_pipi = 0;
    int p_gamgam = 0;
    int p_pigam_total = 0;
    /// Circular chromosomes built only from genes private to their genome.
    /// Deleting or inserting one costs an operation that the path counts miss.
    int private_circular = 0;

    bool p_pigam_odd_flag() const { return p_pigam_total % 2 == 1; }
    int path_count() const {
        return p0_even + p0_odd + p_pi_odd + p_pi_even + p_gamma_odd + p_gamma_even + p_pipi +
               p_gamgam + p_pigam_total;
    }

    ComponentCensus& operator+=(const ComponentCensus& o);
    bool operator==(const ComponentCensus&) const = default;
};

ComponentCensus classify_components(const BreakpointGraph& bpg, const Genome& gamma, const Genome& pi);

/// DCJ-indel distance from a component census.
///
///   d = N - [ c + |p_pipi| + |p_gamgam| + floor(|p_pigam| / 2)
///             + ( |p0_even| + min(|p_pi_odd|, |p_pi_even|)
///                 + min(|p_gamma_odd|, |p_gamma_even|) + delta ) / 2 ]
///       + private_circular
///
/// delta = 1 iff |p_pigam| is odd and the pi and gamma one-open-end paths
/// lean the same way (both have more odd than even paths, or both fewer).
/// Verified against exhaustive event-sorting search on small genomes.
int dcj_indel_distance(const ComponentCensus& census);

/// Convenience: build, classify and evaluate for a duplicate-free pair.
int dcj_indel_distance(const Genome& gamma, const Genome& pi);

/// Classic DCJ distance; requires equal, duplicate-free gene content.
int dcj_distance(const Genome& gamma, const Genome& pi);

}  // namespace dcjx
