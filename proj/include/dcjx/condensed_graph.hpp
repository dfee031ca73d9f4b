#pragma once

#include <cstdint>
#include <vector>

#include "dcjx/breakpoint_graph.hpp"
#include "dcjx/pair_instance.hpp"

namespace dcjx {

enum class EndKind : std::uint8_t { cap, pi_open, gamma_open };

void tally_path(ComponentCensus& census, EndKind a, EndKind b, std::uint32_t length);

/// Breakpoint graph of a labeled pair with every stable vertex bridged out.
///
/// Occurrences of families flagged dynamic may be relabeled or deleted
/// between evaluations; all other occurrences keep the labels of the base
/// labeling. Paths and cycles made only of stable vertices are counted once
/// at construction. Paths that end next to a dynamic occurrence are kept as
/// chains: two end slots plus their edge count, which is all the census
/// needs from them.
///
/// Not thread-safe: evaluation reuses internal scratch buffers.
class CondensedGraph {
public:
    struct Slot {
        bool is_port = false;
        std::uint32_t port = 0;          // when is_port
        EndKind terminal = EndKind::cap;  // otherwise
    };
    struct Chain {
        Slot ends[2];
        std::uint32_t length = 0;
    };
    struct DynamicOccurrence {
        Side side;
        std::uint32_t occurrence;
    };

    CondensedGraph(const PairInstance& inst, const Labeling& base, const std::vector<bool>& dynamic_family);

    /// Census of the pair labeled by `labeling`; only dynamic occurrences are read.
    ComponentCensus census(const Labeling& labeling) const;
    int distance(const Labeling& labeling) const { return dcj_indel_distance(census(labeling)); }

    const ComponentCensus& static_census() const { return static_census_; }
    const std::vector<Chain>& chains() const { return chains_; }
    std::uint32_t port_count() const { return port_count_; }
    const std::vector<DynamicOccurrence>& dynamic_occurrences() const { return dynamic_occurrences_; }
    /// Families whose extremities remain in the condensed graph.
    std::vector<Family> dynamic_families() const;

private:
    struct Boundary {
        bool is_port = false;  // false: chromosome end, a cap appears if anything is attached
        std::uint32_t port = 0;
    };
    struct Gap {
        Side side;
        bool circular_whole = false;  // circular chromosome without stable genes
        Boundary left, right;
        std::vector<std::uint32_t> occurrences;
    };
    struct CircularCheck {
        Side side;
        bool stable_private = true;
        std::uint32_t stable_count = 0;
        std::vector<std::uint32_t> dynamic;
    };
    struct Edge {
        std::uint32_t a, b, weight;
    };

    const PairInstance* inst_;
    std::vector<bool> dynamic_family_;
    ComponentCensus static_census_;
    std::vector<Chain> chains_;
    std::uint32_t port_count_ = 0;
    std::vector<Gap> gaps_;
    std::vector<CircularCheck> circulars_;
    std::vector<DynamicOccurrence> dynamic_occurrences_;

    // Static part of the per-evaluation graph: port nodes, then one node per
    // terminal chain end.
    std::uint32_t base_nodes_ = 0;
    std::vector<EndKind> base_terminal_kind_;  // indexed by node - port_count_
    std::vector<Edge> base_edges_;

    mutable std::vector<std::int32_t> node_of_extremity_;
    mutable std::vector<std::uint8_t> present_;  // bit 0: in gamma, bit 1: in pi
    mutable std::vector<std::uint32_t> touched_labels_;
    mutable std::vector<Edge> edges_;
    mutable std::vector<std::array<std::uint32_t, 2>> incidence_;
    mutable std::vector<std::uint8_t> degree_;
    mutable std::vector<std::int32_t> node_label_end_;  // -1 port/terminal/cap
    mutable std::vector<std::int8_t> node_kind_;        // 0 port, 1 terminal, 2 cap, 3 dynamic extremity
};

}  // namespace dcjx
