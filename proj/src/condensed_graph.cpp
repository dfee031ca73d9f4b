#include "dcjx/condensed_graph.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace dcjx {

void tally_path(ComponentCensus& census, EndKind a, EndKind b, std::uint32_t length) {
    if (b < a) std::swap(a, b);
    const bool odd = length % 2 == 1;
    if (a == EndKind::cap && b == EndKind::cap) {
        (odd ? census.p0_odd : census.p0_even)++;
    } else if (a == EndKind::cap && b == EndKind::pi_open) {
        (odd ? census.p_pi_odd : census.p_pi_even)++;
    } else if (a == EndKind::cap && b == EndKind::gamma_open) {
        (odd ? census.p_gamma_odd : census.p_gamma_even)++;
    } else if (a == EndKind::pi_open && b == EndKind::pi_open) {
        census.p_pipi++;
    } else if (a == EndKind::gamma_open && b == EndKind::gamma_open) {
        census.p_gamgam++;
    } else {
        census.p_pigam_total++;
    }
}

namespace {

constexpr std::int32_t kNone = -1;

// Extremity end of an occurrence read left to right: a forward gene enters
// at its head (0) and leaves at its tail (1).
std::uint32_t left_end(Strand s) { return s == Strand::forward ? 0 : 1; }
std::uint32_t right_end(Strand s) { return s == Strand::forward ? 1 : 0; }

struct StaticVertex {
    bool is_cap = false;
    std::uint32_t label = 0;
    std::int32_t nbr[2] = {kNone, kNone};
    std::int32_t port[2] = {kNone, kNone};
};

}  // namespace

CondensedGraph::CondensedGraph(const PairInstance& inst, const Labeling& base, const std::vector<bool>& dynamic_family)
    : inst_(&inst), dynamic_family_(dynamic_family) {
    const auto label_count = inst.label_count();
    auto is_dynamic = [&](Side s, std::uint32_t o) {
        return dynamic_family_[inst.layout(s).occurrences[o].family_index];
    };

    std::vector<std::uint8_t> stable_presence(label_count, 0);
    for (int si = 0; si < 2; ++si) {
        const auto s = static_cast<Side>(si);
        for (std::uint32_t o = 0; o < inst.layout(s).occurrences.size(); ++o) {
            if (is_dynamic(s, o)) {
                dynamic_occurrences_.push_back({s, o});
                continue;
            }
            const auto label = base.labels[si][o];
            if (label == kDeleted) continue;  // gone for good
            stable_presence[static_cast<std::size_t>(label)] |= static_cast<std::uint8_t>(1u << si);
        }
    }

    std::vector<StaticVertex> vertices;
    std::vector<std::int32_t> vertex_of(2 * static_cast<std::size_t>(label_count), kNone);
    auto vertex = [&](std::int32_t label, std::uint32_t end) {
        auto& v = vertex_of[2 * static_cast<std::size_t>(label) + end];
        if (v == kNone) {
            v = static_cast<std::int32_t>(vertices.size());
            StaticVertex sv;
            sv.label = static_cast<std::uint32_t>(label);
            vertices.push_back(sv);
        }
        return v;
    };
    auto left_of = [&](Side s, std::uint32_t o) {
        return vertex(base.labels[s][o], left_end(inst.layout(s).occurrences[o].strand));
    };
    auto right_of = [&](Side s, std::uint32_t o) {
        return vertex(base.labels[s][o], right_end(inst.layout(s).occurrences[o].strand));
    };
    auto link = [&](std::int32_t a, std::int32_t b, Side s) {
        vertices[static_cast<std::size_t>(a)].nbr[s] = b;
        vertices[static_cast<std::size_t>(b)].nbr[s] = a;
    };
    auto cap_to = [&](std::int32_t a, Side s) {
        StaticVertex cap;
        cap.is_cap = true;
        vertices.push_back(cap);
        link(a, static_cast<std::int32_t>(vertices.size() - 1), s);
    };
    auto port_at = [&](std::int32_t v, Side s) {
        auto& p = vertices[static_cast<std::size_t>(v)].port[s];
        if (p != kNone) throw std::logic_error("CondensedGraph: port assigned twice");
        p = static_cast<std::int32_t>(port_count_++);
        return Boundary{true, static_cast<std::uint32_t>(p)};
    };
    auto is_private = [&](std::int32_t label, Side s) {
        return stable_presence[static_cast<std::size_t>(label)] == (1u << s);
    };

    for (int si = 0; si < 2; ++si) {
        const auto s = static_cast<Side>(si);
        for (const auto& cl : inst.layout(s).chromosomes) {
            std::vector<std::uint32_t> occ;
            for (auto o : cl.occurrences) {
                if (is_dynamic(s, o) || base.labels[si][o] != kDeleted) occ.push_back(o);
            }
            const std::size_t n = occ.size();
            if (n == 0) continue;
            std::vector<std::size_t> stable_pos;
            for (std::size_t i = 0; i < n; ++i) {
                if (!is_dynamic(s, occ[i])) stable_pos.push_back(i);
            }
            const bool circular = cl.topology == Topology::circular;
            if (circular) {
                bool all_private = true;
                for (auto p : stable_pos) all_private = all_private && is_private(base.labels[si][occ[p]], s);
                if (stable_pos.size() == n) {
                    if (all_private) static_census_.private_circular++;
                } else {
                    CircularCheck check{s, all_private, static_cast<std::uint32_t>(stable_pos.size()), {}};
                    for (auto o : occ) {
                        if (is_dynamic(s, o)) check.dynamic.push_back(o);
                    }
                    circulars_.push_back(std::move(check));
                }
            }
            if (stable_pos.empty()) {
                Gap gap{s, circular, {}, {}, occ};
                gaps_.push_back(std::move(gap));
                continue;
            }
            auto between = [&](std::size_t from, std::size_t count) {
                std::vector<std::uint32_t> out;
                for (std::size_t k = 1; k <= count; ++k) out.push_back(occ[(from + k) % n]);
                return out;
            };
            if (!circular) {
                const auto first = stable_pos.front();
                const auto last = stable_pos.back();
                if (first == 0) {
                    cap_to(left_of(s, occ[0]), s);
                } else {
                    gaps_.push_back(Gap{s, false, {}, port_at(left_of(s, occ[first]), s),
                                        std::vector<std::uint32_t>(occ.begin(), occ.begin() + static_cast<long>(first))});
                }
                for (std::size_t t = 0; t + 1 < stable_pos.size(); ++t) {
                    const auto p = stable_pos[t];
                    const auto q = stable_pos[t + 1];
                    if (q == p + 1) {
                        link(right_of(s, occ[p]), left_of(s, occ[q]), s);
                    } else {
                        const auto l = port_at(right_of(s, occ[p]), s);
                        const auto r = port_at(left_of(s, occ[q]), s);
                        gaps_.push_back(Gap{s, false, l, r, between(p, q - p - 1)});
                    }
                }
                if (last == n - 1) {
                    cap_to(right_of(s, occ[n - 1]), s);
                } else {
                    const auto l = port_at(right_of(s, occ[last]), s);
                    gaps_.push_back(Gap{s, false, l, {}, between(last, n - 1 - last)});
                }
            } else {
                const auto k = stable_pos.size();
                for (std::size_t t = 0; t < k; ++t) {
                    const auto p = stable_pos[t];
                    const auto q = stable_pos[(t + 1) % k];
                    const std::size_t count = k == 1 ? n - 1 : (q + n - p - 1) % n;
                    if (count == 0) {
                        link(right_of(s, occ[p]), left_of(s, occ[q]), s);
                    } else {
                        const auto l = port_at(right_of(s, occ[p]), s);
                        const auto r = port_at(left_of(s, occ[q]), s);
                        gaps_.push_back(Gap{s, false, l, r, between(p, count)});
                    }
                }
            }
        }
    }

    {
        std::set<std::uint32_t> labels;
        for (const auto& v : vertices) {
            if (!v.is_cap) labels.insert(v.label);
        }
        static_census_.alphabet_size = static_cast<int>(labels.size());
    }

    auto slot_of = [&](std::size_t v, int color) {
        const auto& sv = vertices[v];
        Slot slot;
        if (sv.is_cap) {
            slot.terminal = EndKind::cap;
        } else if (sv.port[color] != kNone) {
            slot.is_port = true;
            slot.port = static_cast<std::uint32_t>(sv.port[color]);
        } else {
            slot.terminal = color == kGamma ? EndKind::pi_open : EndKind::gamma_open;
        }
        return slot;
    };
    auto has_edge = [&](std::size_t v, int color) { return vertices[v].nbr[color] != kNone; };

    std::vector<bool> visited(vertices.size(), false);
    auto emit = [&](Slot a, Slot b, std::uint32_t length) {
        if (!a.is_port && !b.is_port) {
            tally_path(static_census_, a.terminal, b.terminal, length);
        } else {
            chains_.push_back(Chain{{a, b}, length});
        }
    };
    for (std::size_t v = 0; v < vertices.size(); ++v) {
        if (visited[v]) continue;
        const bool e0 = has_edge(v, 0);
        const bool e1 = has_edge(v, 1);
        if (e0 && e1) continue;
        visited[v] = true;
        if (!e0 && !e1) {
            emit(slot_of(v, 0), slot_of(v, 1), 0);
            continue;
        }
        const int free_color = e0 ? 1 : 0;
        int color = 1 - free_color;
        std::size_t cur = v;
        std::uint32_t length = 0;
        while (true) {
            cur = static_cast<std::size_t>(vertices[cur].nbr[color]);
            visited[cur] = true;
            ++length;
            color = 1 - color;
            if (!has_edge(cur, color)) break;
        }
        emit(slot_of(v, free_color), slot_of(cur, color), length);
    }
    for (std::size_t v = 0; v < vertices.size(); ++v) {
        if (visited[v]) continue;
        std::size_t cur = v;
        int color = 0;
        do {
            visited[cur] = true;
            cur = static_cast<std::size_t>(vertices[cur].nbr[color]);
            color = 1 - color;
        } while (cur != v);
        static_census_.cycles++;
    }

    base_nodes_ = port_count_;
    for (const auto& chain : chains_) {
        std::uint32_t ends[2];
        for (int k = 0; k < 2; ++k) {
            if (chain.ends[k].is_port) {
                ends[k] = chain.ends[k].port;
            } else {
                ends[k] = base_nodes_++;
                base_terminal_kind_.push_back(chain.ends[k].terminal);
            }
        }
        base_edges_.push_back({ends[0], ends[1], chain.length});
    }

    node_of_extremity_.assign(2 * static_cast<std::size_t>(label_count), kNone);
    present_.assign(label_count, 0);
}

std::vector<Family> CondensedGraph::dynamic_families() const {
    std::vector<Family> out;
    for (std::size_t i = 0; i < dynamic_family_.size(); ++i) {
        if (!dynamic_family_[i]) continue;
        const auto& info = inst_->families()[i];
        if (info.count[0] + info.count[1] > 0) out.push_back(info.id);
    }
    return out;
}

ComponentCensus CondensedGraph::census(const Labeling& labeling) const {
    ComponentCensus census = static_census_;

    touched_labels_.clear();
    for (const auto& d : dynamic_occurrences_) {
        const auto label = labeling.labels[d.side][d.occurrence];
        if (label == kDeleted) continue;
        auto& p = present_[static_cast<std::size_t>(label)];
        if (p == 0) touched_labels_.push_back(static_cast<std::uint32_t>(label));
        p |= static_cast<std::uint8_t>(1u << d.side);
    }
    census.alphabet_size += static_cast<int>(touched_labels_.size());

    edges_.assign(base_edges_.begin(), base_edges_.end());
    node_kind_.assign(base_nodes_, 0);
    std::fill(node_kind_.begin() + port_count_, node_kind_.end(), 1);
    node_label_end_.assign(base_nodes_, kNone);

    auto new_node = [&](std::int8_t kind, std::int32_t label_end) {
        node_kind_.push_back(kind);
        node_label_end_.push_back(label_end);
        return static_cast<std::uint32_t>(node_kind_.size() - 1);
    };
    auto extremity = [&](std::int32_t label, std::uint32_t end) {
        const auto idx = 2 * static_cast<std::size_t>(label) + end;
        if (node_of_extremity_[idx] == kNone) {
            node_of_extremity_[idx] = static_cast<std::int32_t>(new_node(3, static_cast<std::int32_t>(idx)));
        }
        return static_cast<std::uint32_t>(node_of_extremity_[idx]);
    };
    auto add_edge = [&](std::uint32_t a, std::uint32_t b) { edges_.push_back({a, b, 1}); };

    constexpr std::int64_t kPending = -1;
    for (const auto& gap : gaps_) {
        const auto& layout = inst_->layout(gap.side);
        const auto& labels = labeling.labels[gap.side];
        if (gap.circular_whole) {
            std::int64_t first = kPending;
            std::int64_t prev = kPending;
            for (auto o : gap.occurrences) {
                const auto label = labels[o];
                if (label == kDeleted) continue;
                const auto strand = layout.occurrences[o].strand;
                const auto l = extremity(label, left_end(strand));
                if (prev == kPending) {
                    first = l;
                } else {
                    add_edge(static_cast<std::uint32_t>(prev), l);
                }
                prev = extremity(label, right_end(strand));
            }
            if (prev != kPending) add_edge(static_cast<std::uint32_t>(prev), static_cast<std::uint32_t>(first));
            continue;
        }
        std::int64_t prev = gap.left.is_port ? static_cast<std::int64_t>(gap.left.port) : kPending;
        for (auto o : gap.occurrences) {
            const auto label = labels[o];
            if (label == kDeleted) continue;
            const auto strand = layout.occurrences[o].strand;
            const auto l = extremity(label, left_end(strand));
            if (prev == kPending) prev = new_node(2, kNone);
            add_edge(static_cast<std::uint32_t>(prev), l);
            prev = extremity(label, right_end(strand));
        }
        if (gap.right.is_port) {
            if (prev == kPending) prev = new_node(2, kNone);
            add_edge(static_cast<std::uint32_t>(prev), gap.right.port);
        } else if (prev != kPending) {
            add_edge(static_cast<std::uint32_t>(prev), new_node(2, kNone));
        }
    }

    const auto node_count = node_kind_.size();
    degree_.assign(node_count, 0);
    incidence_.resize(node_count);
    for (std::uint32_t e = 0; e < edges_.size(); ++e) {
        for (auto v : {edges_[e].a, edges_[e].b}) {
            if (degree_[v] >= 2) throw std::logic_error("CondensedGraph: vertex of degree above two");
            incidence_[v][degree_[v]++] = e;
        }
    }

    auto end_kind = [&](std::uint32_t v) {
        switch (node_kind_[v]) {
            case 1:
                return base_terminal_kind_[v - port_count_];
            case 2:
                return EndKind::cap;
            case 3: {
                const auto p = present_[static_cast<std::size_t>(node_label_end_[v] / 2)];
                if (!(p & 1u)) return EndKind::pi_open;
                if (!(p & 2u)) return EndKind::gamma_open;
                break;
            }
            default:
                break;
        }
        throw std::logic_error("CondensedGraph: path ends at an inner vertex");
    };

    std::vector<bool> visited(node_count, false);
    auto walk = [&](std::uint32_t start, std::uint32_t& length) {
        std::uint32_t cur = start;
        std::uint32_t came = 0xFFFFFFFFu;
        visited[cur] = true;
        while (true) {
            std::uint32_t next_edge = 0xFFFFFFFFu;
            for (std::uint8_t k = 0; k < degree_[cur]; ++k) {
                if (incidence_[cur][k] != came) {
                    next_edge = incidence_[cur][k];
                    break;
                }
            }
            if (next_edge == 0xFFFFFFFFu) return cur;
            const auto& e = edges_[next_edge];
            length += e.weight;
            came = next_edge;
            cur = e.a == cur ? e.b : e.a;
            if (visited[cur]) return cur;
            visited[cur] = true;
        }
    };
    for (std::uint32_t v = 0; v < node_count; ++v) {
        if (visited[v] || degree_[v] != 1) continue;
        std::uint32_t length = 0;
        const auto last = walk(v, length);
        tally_path(census, end_kind(v), end_kind(last), length);
    }
    for (std::uint32_t v = 0; v < node_count; ++v) {
        if (visited[v]) continue;
        std::uint32_t length = 0;
        walk(v, length);
        census.cycles++;
    }

    for (const auto& check : circulars_) {
        if (!check.stable_private) continue;
        std::uint32_t present = check.stable_count;
        bool all_private = true;
        for (auto o : check.dynamic) {
            const auto label = labeling.labels[check.side][o];
            if (label == kDeleted) continue;
            ++present;
            all_private = all_private && present_[static_cast<std::size_t>(label)] == (1u << check.side);
        }
        if (present > 0 && all_private) census.private_circular++;
    }

    for (auto label : touched_labels_) {
        present_[label] = 0;
        node_of_extremity_[2 * static_cast<std::size_t>(label)] = kNone;
        node_of_extremity_[2 * static_cast<std::size_t>(label) + 1] = kNone;
    }
    return census;
}

}  // namespace dcjx
