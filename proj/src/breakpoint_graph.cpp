#include "dcjx/breakpoint_graph.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace dcjx {

std::string to_string(const Extremity& e) {
    if (e.is_cap()) return "cap" + std::to_string(e.cap_id);
    std::string s = std::to_string(e.family) + (e.kind == ExtremityKind::head ? "h" : "t");
    if (e.occurrence != 0) s += "#" + std::to_string(e.occurrence);
    return s;
}

std::optional<std::uint32_t> BreakpointGraph::find(const Extremity& e) const {
    auto it = std::find(vertices_.begin(), vertices_.end(), e);
    if (it == vertices_.end()) return std::nullopt;
    return static_cast<std::uint32_t>(it - vertices_.begin());
}

std::span<const std::uint32_t> BreakpointGraph::incident(std::uint32_t vertex) const {
    return std::span<const std::uint32_t>(incidence_).subspan(
        incidence_offsets_[vertex], incidence_offsets_[vertex + 1] - incidence_offsets_[vertex]);
}

std::size_t BreakpointGraph::degree(std::uint32_t vertex, EdgeColor color) const {
    std::size_t n = 0;
    for (auto e : incident(vertex)) {
        if (edges_[e].color == color) ++n;
    }
    return n;
}

bool BreakpointGraph::is_regular(std::uint32_t vertex) const {
    return degree(vertex, EdgeColor::gamma) == 1 && degree(vertex, EdgeColor::pi) == 1;
}

void BreakpointGraph::add_edge(std::uint32_t u, std::uint32_t v, EdgeColor color, std::uint32_t occ_u,
                               std::uint32_t occ_v) {
    edges_.push_back(BpgEdge{u, v, color, {occ_u, occ_v}});
}

void BreakpointGraph::finalize() {
    incidence_offsets_.assign(vertices_.size() + 1, 0);
    for (const auto& e : edges_) {
        ++incidence_offsets_[e.u + 1];
        if (e.v != e.u) ++incidence_offsets_[e.v + 1];
    }
    for (std::size_t i = 1; i < incidence_offsets_.size(); ++i) incidence_offsets_[i] += incidence_offsets_[i - 1];
    incidence_.assign(incidence_offsets_.back(), 0);
    auto fill = incidence_offsets_;
    for (std::uint32_t i = 0; i < edges_.size(); ++i) {
        incidence_[fill[edges_[i].u]++] = i;
        if (edges_[i].v != edges_[i].u) incidence_[fill[edges_[i].v]++] = i;
    }
}

BreakpointGraph build_bpg(const Genome& gamma, const Genome& pi, VertexIdentity identity) {
    BreakpointGraph g;
    g.identity_ = identity;
    std::map<std::pair<Family, std::uint32_t>, std::uint32_t> index;
    std::uint32_t next_cap = 0;

    auto vertex_of = [&](Family f, std::uint32_t occ, ExtremityKind kind) {
        const std::uint32_t key_occ = identity == VertexIdentity::family ? 0 : occ;
        const auto key = std::make_pair(f, key_occ * 2 + (kind == ExtremityKind::tail ? 1 : 0));
        auto it = index.find(key);
        if (it != index.end()) return it->second;
        g.vertices_.push_back(Extremity{kind, f, key_occ, 0});
        const auto id = static_cast<std::uint32_t>(g.vertices_.size() - 1);
        index.emplace(key, id);
        return id;
    };

    auto add_genome = [&](const Genome& genome, EdgeColor color) {
        std::map<Family, std::uint32_t> seen;
        for (const auto& chromosome : genome.chromosomes) {
            struct Placed {
                std::uint32_t left, right, occ;
            };
            std::vector<Placed> placed;
            placed.reserve(chromosome.size());
            for (const auto& gene : chromosome.genes()) {
                const std::uint32_t occ = seen[gene.family]++;
                const auto h = vertex_of(gene.family, occ, ExtremityKind::head);
                const auto t = vertex_of(gene.family, occ, ExtremityKind::tail);
                // A forward gene is read head first.
                if (gene.strand == Strand::forward) {
                    placed.push_back({h, t, occ});
                } else {
                    placed.push_back({t, h, occ});
                }
            }
            for (std::size_t i = 0; i + 1 < placed.size(); ++i) {
                g.add_edge(placed[i].right, placed[i + 1].left, color, placed[i].occ, placed[i + 1].occ);
            }
            if (chromosome.is_circular()) {
                g.add_edge(placed.back().right, placed.front().left, color, placed.back().occ, placed.front().occ);
            } else {
                g.vertices_.push_back(Extremity::cap(next_cap++));
                const auto left_cap = static_cast<std::uint32_t>(g.vertices_.size() - 1);
                g.add_edge(left_cap, placed.front().left, color, kNoOccurrence, placed.front().occ);
                g.vertices_.push_back(Extremity::cap(next_cap++));
                const auto right_cap = static_cast<std::uint32_t>(g.vertices_.size() - 1);
                g.add_edge(placed.back().right, right_cap, color, placed.back().occ, kNoOccurrence);
            }
        }
    };

    add_genome(gamma, EdgeColor::gamma);
    add_genome(pi, EdgeColor::pi);
    g.finalize();
    return g;
}

std::string dump_edges(const BreakpointGraph& bpg) {
    std::vector<std::string> lines;
    lines.reserve(bpg.edges().size());
    for (const auto& e : bpg.edges()) {
        auto a = bpg.vertices()[e.u];
        auto b = bpg.vertices()[e.v];
        if (b < a) std::swap(a, b);
        lines.push_back(to_string(a) + " -- " + to_string(b) + (e.color == EdgeColor::gamma ? " [gamma]" : " [pi]"));
    }
    std::sort(lines.begin(), lines.end());
    std::string out;
    for (const auto& l : lines) out += l + "\n";
    return out;
}

OpenVertexLabel open_label(const Extremity& e, const FamilyCensus& gamma, const FamilyCensus& pi) {
    if (e.is_cap()) return OpenVertexLabel::closed;
    if (gamma.count(e.family) == 0) return OpenVertexLabel::pi_open;
    if (pi.count(e.family) == 0) return OpenVertexLabel::gamma_open;
    return OpenVertexLabel::closed;
}

ComponentCensus& ComponentCensus::operator+=(const ComponentCensus& o) {
    alphabet_size += o.alphabet_size;
    cycles += o.cycles;
    p0_even += o.p0_even;
    p0_odd += o.p0_odd;
    p_pi_odd += o.p_pi_odd;
    p_pi_even += o.p_pi_even;
    p_gamma_odd += o.p_gamma_odd;
    p_gamma_even += o.p_gamma_even;
    p_pipi += o.p_pipi;
    p_gamgam += o.p_gamgam;
    p_pigam_total += o.p_pigam_total;
    private_circular += o.private_circular;
    return *this;
}

namespace {

int count_private_circular(const Genome& genome, const FamilyCensus& other) {
    int n = 0;
    for (const auto& c : genome.chromosomes) {
        if (!c.is_circular()) continue;
        const bool all_private = std::all_of(c.genes().begin(), c.genes().end(),
                                             [&](const GeneMarker& g) { return other.count(g.family) == 0; });
        if (all_private) ++n;
    }
    return n;
}

}  // namespace

ComponentCensus classify_components(const BreakpointGraph& bpg, const Genome& gamma, const Genome& pi) {
    const auto gc = family_census(gamma);
    const auto pc = family_census(pi);
    for (const auto* census : {&gc, &pc}) {
        for (const auto& [family, count] : census->counts()) {
            if (count > 1) {
                throw ContractViolation("classify_components: family " + std::to_string(family) +
                                        " is duplicated; resolve duplicates with an exemplar or matching first");
            }
        }
    }

    ComponentCensus census;
    {
        std::map<Family, bool> families;
        for (const auto& [f, n] : gc.counts()) families[f] = true;
        for (const auto& [f, n] : pc.counts()) families[f] = true;
        census.alphabet_size = static_cast<int>(families.size());
    }
    census.private_circular = count_private_circular(gamma, pc) + count_private_circular(pi, gc);

    const auto& vertices = bpg.vertices();
    const auto& edges = bpg.edges();
    std::vector<bool> visited(vertices.size(), false);

    enum class End { cap, pi_open, gamma_open };
    auto end_kind = [&](std::uint32_t v) {
        const auto label = open_label(vertices[v], gc, pc);
        if (label == OpenVertexLabel::pi_open) return End::pi_open;
        if (label == OpenVertexLabel::gamma_open) return End::gamma_open;
        return End::cap;
    };

    // Walks from `start` and returns (last vertex, edge count).
    auto walk = [&](std::uint32_t start) {
        std::uint32_t current = start;
        std::uint32_t came_by = kNoOccurrence;
        int length = 0;
        visited[start] = true;
        while (true) {
            std::uint32_t next_edge = kNoOccurrence;
            for (auto e : bpg.incident(current)) {
                if (e != came_by) {
                    next_edge = e;
                    break;
                }
            }
            if (next_edge == kNoOccurrence) break;
            const auto& edge = edges[next_edge];
            const auto next = edge.u == current ? edge.v : edge.u;
            ++length;
            came_by = next_edge;
            if (visited[next]) {
                current = next;
                break;
            }
            visited[next] = true;
            current = next;
        }
        return std::make_pair(current, length);
    };

    for (std::uint32_t v = 0; v < vertices.size(); ++v) {
        if (visited[v] || bpg.incident(v).size() != 1) continue;
        const auto [last, length] = walk(v);
        const bool odd = length % 2 == 1;
        auto a = end_kind(v);
        auto b = end_kind(last);
        if (b < a) std::swap(a, b);
        if (a == End::cap && b == End::cap) {
            (odd ? census.p0_odd : census.p0_even)++;
        } else if (a == End::cap && b == End::pi_open) {
            (odd ? census.p_pi_odd : census.p_pi_even)++;
        } else if (a == End::cap && b == End::gamma_open) {
            (odd ? census.p_gamma_odd : census.p_gamma_even)++;
        } else if (a == End::pi_open && b == End::pi_open) {
            census.p_pipi++;
        } else if (a == End::gamma_open && b == End::gamma_open) {
            census.p_gamgam++;
        } else {
            census.p_pigam_total++;
        }
    }
    for (std::uint32_t v = 0; v < vertices.size(); ++v) {
        if (visited[v]) continue;
        walk(v);
        census.cycles++;
    }
    return census;
}

int dcj_indel_distance(const ComponentCensus& c) {
    const bool pi_leans_odd = c.p_pi_odd > c.p_pi_even;
    const bool pi_leans_even = c.p_pi_odd < c.p_pi_even;
    const bool gamma_leans_odd = c.p_gamma_odd > c.p_gamma_even;
    const bool gamma_leans_even = c.p_gamma_odd < c.p_gamma_even;
    const int delta =
        c.p_pigam_odd_flag() && ((pi_leans_odd && gamma_leans_odd) || (pi_leans_even && gamma_leans_even)) ? 1 : 0;
    const int halved = c.p0_even + std::min(c.p_pi_odd, c.p_pi_even) + std::min(c.p_gamma_odd, c.p_gamma_even) + delta;
    // Twice the distance keeps the arithmetic integral; `halved` is always even.
    const int twice = 2 * (c.alphabet_size - c.cycles - c.p_pipi - c.p_gamgam - c.p_pigam_total / 2) - halved +
                      2 * c.private_circular;
    return twice / 2;
}

int dcj_indel_distance(const Genome& gamma, const Genome& pi) {
    return dcj_indel_distance(classify_components(build_bpg(gamma, pi), gamma, pi));
}

int dcj_distance(const Genome& gamma, const Genome& pi) {
    const auto gc = family_census(gamma);
    const auto pc = family_census(pi);
    if (gc != pc) throw ContractViolation("dcj_distance requires genomes with equal gene content");
    for (const auto& [family, count] : gc.counts()) {
        if (count > 1) throw ContractViolation("dcj_distance requires duplicate-free genomes");
    }
    const auto census = classify_components(build_bpg(gamma, pi), gamma, pi);
    return census.alphabet_size - census.cycles - census.p0_even / 2;
}

}  // namespace dcjx
