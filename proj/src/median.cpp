#include "dcjx/median.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <stdexcept>
#include <unordered_set>

namespace dcjx {

namespace {

constexpr std::uint16_t kCapKey = 0xFFFF;

struct UnionFind {
    std::vector<std::uint32_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }
    std::uint32_t find(std::uint32_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(std::uint32_t a, std::uint32_t b) { parent[find(a)] = find(b); }
};

std::pair<std::uint32_t, std::uint32_t> ordered(std::uint32_t a, std::uint32_t b) {
    return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
}

}  // namespace

std::uint32_t MedianContent::gene_count() const {
    std::uint32_t n = 0;
    for (const auto& [f, c] : counts) n += c;
    return n;
}

MedianContent init_median_content(const FamilyCensus& c1, const FamilyCensus& c2, const FamilyCensus& c3) {
    std::set<Family> families;
    for (const auto* c : {&c1, &c2, &c3})
        for (const auto& [f, n] : c->counts()) families.insert(f);
    MedianContent out;
    for (auto f : families) {
        std::array<std::size_t, 3> n{c1.count(f), c2.count(f), c3.count(f)};
        std::size_t pick;
        if (n[0] == n[1] || n[0] == n[2]) {
            pick = n[0];
        } else if (n[1] == n[2]) {
            pick = n[1];
        } else {
            std::sort(n.begin(), n.end());
            pick = n[1];
        }
        if (pick > 0) out.counts[f] = static_cast<std::uint32_t>(pick);
    }
    return out;
}

std::uint32_t telomere_count(const Genome& genome) {
    std::uint32_t n = 0;
    for (const auto& c : genome.chromosomes) n += c.is_circular() ? 0 : 2;
    return n;
}

MultipleBreakpointGraph::MultipleBreakpointGraph(Trio inputs, MedianContent content, std::optional<std::uint32_t> caps)
    : inputs_(std::move(inputs)), content_(std::move(content)) {
    if (caps) {
        caps_ = *caps;
    } else {
        for (const auto& g : inputs_) caps_ = std::max(caps_, telomere_count(g));
    }
    if (caps_ % 2 != 0) throw std::invalid_argument("cap count must be even");

    std::map<Family, std::array<std::uint32_t, 4>> counts;
    for (int i = 0; i < 3; ++i)
        for (const auto& c : inputs_[i].chromosomes)
            for (const auto& g : c.genes()) ++counts[g.family][i];
    for (const auto& [f, n] : content_.counts) {
        if (n > 0) counts[f][3] = n;
    }
    std::map<Family, std::uint32_t> index;
    for (const auto& [f, n] : counts) {
        index[f] = static_cast<std::uint32_t>(families_.size());
        families_.push_back(f);
        family_counts_.push_back(n);
    }

    for (const auto& [f, n] : content_.counts) {
        for (std::uint32_t k = 0; k < n; ++k) {
            gene_family_.push_back(f);
            vertex_node_.push_back(2 * index[f]);
            vertex_node_.push_back(2 * index[f] + 1);
        }
    }

    for (int i = 0; i < 3; ++i) {
        for (const auto& c : inputs_[i].chromosomes) {
            const auto& genes = c.genes();
            auto left = [&](const GeneMarker& g) { return 2 * index[g.family] + (g.strand == Strand::forward ? 0 : 1); };
            auto right = [&](const GeneMarker& g) { return 2 * index[g.family] + (g.strand == Strand::forward ? 1 : 0); };
            for (std::size_t k = 0; k + 1 < genes.size(); ++k) input_edges_[i].emplace_back(right(genes[k]), left(genes[k + 1]));
            if (c.is_circular()) {
                input_edges_[i].emplace_back(right(genes.back()), left(genes.front()));
            } else {
                input_telomeres_[i].push_back(left(genes.front()));
                input_telomeres_[i].push_back(right(genes.back()));
            }
        }
    }

    fixed_.assign(vertex_count(), false);
    // Start with every gene closed on itself and the caps paired up.
    partner_.resize(vertex_count());
    for (std::uint32_t v = 0; v < vertex_count(); ++v) partner_[v] = static_cast<std::int32_t>(v ^ 1u);
}

bool MultipleBreakpointGraph::regular(std::uint32_t v) const {
    if (is_cap(v)) return false;
    const auto& n = family_counts_[vertex_node_[v] / 2];
    return n[0] == 1 && n[1] == 1 && n[2] == 1 && n[3] == 1;
}

bool MultipleBreakpointGraph::is_valid_matching(const std::vector<std::int32_t>& partner) const {
    if (partner.size() != vertex_count()) return false;
    for (std::uint32_t v = 0; v < partner.size(); ++v) {
        const auto p = partner[v];
        if (p < 0 || static_cast<std::uint32_t>(p) >= partner.size() || static_cast<std::uint32_t>(p) == v) return false;
        if (partner[p] != static_cast<std::int32_t>(v)) return false;
    }
    for (const auto& [u, v] : fixed_edges_) {
        if (partner[u] != static_cast<std::int32_t>(v)) return false;
    }
    return true;
}

void MultipleBreakpointGraph::set_matching(std::vector<std::int32_t> partner) {
    if (!is_valid_matching(partner)) throw std::invalid_argument("not a perfect matching of the graph");
    partner_ = std::move(partner);
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> MultipleBreakpointGraph::zero_edges() const {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
    for (std::uint32_t v = 0; v < vertex_count(); ++v) {
        if (static_cast<std::uint32_t>(partner_[v]) > v) out.emplace_back(v, partner_[v]);
    }
    return out;
}

void MultipleBreakpointGraph::fix_edges(const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges) {
    for (const auto& [u, v] : edges) {
        if (u >= vertex_count() || v >= vertex_count() || u == v) throw std::invalid_argument("bad fixed edge");
        if (fixed_[u] || fixed_[v]) {
            if (partner_[u] == static_cast<std::int32_t>(v) && fixed_[u] && fixed_[v]) continue;
            throw std::invalid_argument("fixed edges overlap");
        }
        if (partner_[u] != static_cast<std::int32_t>(v)) {
            const auto pu = partner_[u];
            const auto pv = partner_[v];
            partner_[u] = static_cast<std::int32_t>(v);
            partner_[v] = static_cast<std::int32_t>(u);
            partner_[pu] = pv;
            partner_[pv] = pu;
        }
        fixed_[u] = fixed_[v] = true;
        fixed_edges_.push_back(ordered(u, v));
    }
}

std::string MultipleBreakpointGraph::key_of(const std::vector<std::int32_t>& partner) const {
    std::string out(2 * extremity_count(), '\0');
    for (std::uint32_t v = 0; v < extremity_count(); ++v) {
        const auto p = static_cast<std::uint32_t>(partner[v]);
        const std::uint16_t k = is_cap(p) ? kCapKey : static_cast<std::uint16_t>(p);
        out[2 * v] = static_cast<char>(k & 0xFF);
        out[2 * v + 1] = static_cast<char>(k >> 8);
    }
    return out;
}

std::vector<std::int32_t> init_zero_matching(const MultipleBreakpointGraph& mbg, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<std::uint32_t> free;
    for (std::uint32_t v = 0; v < mbg.vertex_count(); ++v) {
        if (!mbg.fixed(v)) free.push_back(v);
    }
    shuffle(free, rng);
    std::vector<std::int32_t> partner(mbg.vertex_count(), MultipleBreakpointGraph::kNone);
    for (const auto& [u, v] : mbg.fixed_edges()) {
        partner[u] = static_cast<std::int32_t>(v);
        partner[v] = static_cast<std::int32_t>(u);
    }
    for (std::size_t k = 0; k + 1 < free.size(); k += 2) {
        partner[free[k]] = static_cast<std::int32_t>(free[k + 1]);
        partner[free[k + 1]] = static_cast<std::int32_t>(free[k]);
    }
    return partner;
}

Genome decode_median(const MultipleBreakpointGraph& mbg, const std::vector<std::int32_t>& partner,
                     const std::string& name) {
    if (!mbg.is_valid_matching(partner)) throw std::invalid_argument("not a perfect matching of the graph");
    Genome out{name, {}};
    std::vector<bool> seen(mbg.gene_count(), false);
    // Enters a gene at extremity v and returns the extremity it leaves from.
    auto step = [&](std::uint32_t v, std::vector<GeneMarker>& genes) {
        const auto gene = v / 2;
        seen[gene] = true;
        genes.push_back({mbg.gene_family(gene), v % 2 == 0 ? Strand::forward : Strand::reverse});
        return v ^ 1u;
    };
    for (std::uint32_t v = 0; v < mbg.extremity_count(); ++v) {
        if (seen[v / 2] || !mbg.is_cap(partner[v])) continue;
        std::vector<GeneMarker> genes;
        auto x = v;
        while (true) {
            const auto exit = step(x, genes);
            const auto next = static_cast<std::uint32_t>(partner[exit]);
            if (mbg.is_cap(next)) break;
            x = next;
        }
        out.chromosomes.emplace_back(std::move(genes), Topology::linear);
    }
    for (std::uint32_t gene = 0; gene < mbg.gene_count(); ++gene) {
        if (seen[gene]) continue;
        std::vector<GeneMarker> genes;
        auto x = 2 * gene;
        do {
            x = static_cast<std::uint32_t>(partner[step(x, genes)]);
        } while (x / 2 != gene);
        out.chromosomes.emplace_back(std::move(genes), Topology::circular);
    }
    return out;
}

MedianScorer::MedianScorer(Trio inputs, Model model, SolverOptions options)
    : inputs_(std::move(inputs)), model_(model), options_(options) {}

MedianScore MedianScorer::score(const Genome& median) {
    auto canonical = median.canonical();
    canonical.name = "median";
    const Genome one[] = {canonical};
    auto key = serialize_genomes(one);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    MedianScore s;
    for (int i = 0; i < 3; ++i) {
        s.distances[i] = branch_and_bound(canonical, inputs_[i], model_, options_).distance;
        s.total += s.distances[i];
    }
    ++evaluations_;
    cache_.emplace(std::move(key), s);
    return s;
}

MedianScore median_score(const MultipleBreakpointGraph& mbg, Model model, const SolverOptions& options) {
    MedianScorer scorer(mbg.inputs(), model, options);
    return scorer.score(decode_median(mbg));
}

std::vector<std::int32_t> dcj_neighbor(const std::vector<std::int32_t>& partner, const DcjMove& move) {
    auto is_edge = [&](const std::pair<std::uint32_t, std::uint32_t>& e) {
        return e.first < partner.size() && e.second < partner.size() && e.first < e.second &&
               partner[e.first] == static_cast<std::int32_t>(e.second);
    };
    if (!is_edge(move.first) || !is_edge(move.second) || move.first == move.second)
        throw std::invalid_argument("move does not name two 0-edges");
    const auto [a, b] = move.first;
    const auto [c, d] = move.second;
    auto out = partner;
    auto join = [&](std::uint32_t x, std::uint32_t y) {
        out[x] = static_cast<std::int32_t>(y);
        out[y] = static_cast<std::int32_t>(x);
    };
    if (move.variant == 0) {
        join(a, c);
        join(b, d);
    } else {
        join(a, d);
        join(b, c);
    }
    return out;
}

std::vector<DcjMove> neighbor_moves(const MultipleBreakpointGraph& mbg, const std::vector<std::int32_t>& partner) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    for (std::uint32_t v = 0; v < partner.size(); ++v) {
        if (static_cast<std::uint32_t>(partner[v]) > v && !mbg.fixed(v)) edges.emplace_back(v, partner[v]);
    }
    // Caps are interchangeable: a move whose every extremity ends up with the
    // same partner, or a cap before and after, spells the same genome.
    auto unchanged = [&](std::uint32_t z, std::uint32_t before, std::uint32_t after) {
        return mbg.is_cap(z) || (mbg.is_cap(before) && mbg.is_cap(after));
    };
    std::vector<DcjMove> out;
    for (std::size_t i = 0; i < edges.size(); ++i) {
        for (std::size_t j = i + 1; j < edges.size(); ++j) {
            const auto [a, b] = edges[i];
            const auto [c, d] = edges[j];
            for (int variant = 0; variant < 2; ++variant) {
                const auto [x, y] = variant == 0 ? std::make_pair(c, d) : std::make_pair(d, c);
                const auto px = x == c ? d : c;
                const auto py = y == c ? d : c;
                const bool same = unchanged(a, b, x) && unchanged(b, a, y) && unchanged(x, px, a) && unchanged(y, py, b);
                if (same) continue;
                out.push_back({edges[i], edges[j], variant});
            }
        }
    }
    return out;
}

ColorComponents::ColorComponents(const MultipleBreakpointGraph& mbg, const std::vector<std::int32_t>& partner)
    : mbg_(&mbg), partner_(&partner) {
    const auto cap = 2 * mbg.family_count();
    auto node = [&](std::uint32_t v) { return mbg.is_cap(v) ? cap : mbg.family_node(v); };
    for (int color = 0; color < 3; ++color) {
        UnionFind uf(cap + 1);
        for (const auto& [x, y] : mbg.input_edges(color)) uf.unite(x, y);
        for (auto x : mbg.input_telomeres(color)) uf.unite(x, cap);
        for (std::uint32_t v = 0; v < mbg.vertex_count(); ++v) {
            const auto p = static_cast<std::uint32_t>(partner[v]);
            if (p > v) uf.unite(node(v), node(p));
        }
        root_[color].resize(cap + 1);
        for (std::uint32_t n = 0; n <= cap; ++n) root_[color][n] = uf.find(n);
    }
}

std::uint32_t ColorComponents::component(int color, std::uint32_t v) const {
    return root_[color][mbg_->is_cap(v) ? 2 * mbg_->family_count() : mbg_->family_node(v)];
}

int ColorComponents::num_pair(const DcjMove& move) const {
    int n = 0;
    for (int color = 0; color < 3; ++color) n += component(color, move.first.first) == component(color, move.second.first);
    return n;
}

int num_pair(const MultipleBreakpointGraph& mbg, const DcjMove& move) {
    return ColorComponents(mbg, mbg.matching()).num_pair(move);
}

void LKConfig::validate() const {
    if (L1 <= 0 || L1 > L2) throw std::invalid_argument("search levels need 0 < L1 <= L2");
    if (mode == SearchMode::kopt && L1 != L2) throw std::invalid_argument("K-OPT needs L1 == L2");
}

LKResult lk_search(MultipleBreakpointGraph& mbg, const LKConfig& config, MedianScorer& scorer) {
    config.validate();
    struct Node {
        std::int32_t parent;
        DcjMove move;
    };
    LKResult result;
    auto current = mbg.matching();
    result.score = scorer.score(decode_median(mbg, current));
    result.accepted_scores.push_back(result.score.total);

    bool improved = true;
    while (improved) {
        improved = false;
        std::vector<std::vector<Node>> levels(config.L2 + 1);
        levels[0].push_back({-1, {}});
        std::unordered_set<std::string> visited{mbg.key_of(current)};

        auto rebuild = [&](int level, std::size_t index) {
            std::vector<const DcjMove*> path;
            for (int l = level; l > 0; --l) {
                const auto& node = levels[l][index];
                path.push_back(&node.move);
                index = static_cast<std::size_t>(node.parent);
            }
            auto m = current;
            for (auto it = path.rbegin(); it != path.rend(); ++it) m = dcj_neighbor(m, **it);
            return m;
        };
        auto offer = [&](int level, std::size_t parent, const std::vector<std::int32_t>& from, const DcjMove& move) {
            auto child = dcj_neighbor(from, move);
            if (!visited.insert(mbg.key_of(child)).second) return;
            levels[level + 1].push_back({static_cast<std::int32_t>(parent), move});
            ++result.visited_nodes;
        };

        for (int level = 0; level <= config.L2 && !improved; ++level) {
            for (std::size_t i = 0; i < levels[level].size(); ++i) {
                const auto m = rebuild(level, i);
                if (level > 0) {
                    const auto s = scorer.score(decode_median(mbg, m));
                    if (s.total < result.score.total) {
                        current = m;
                        result.score = s;
                        result.accepted_scores.push_back(s.total);
                        improved = true;
                        break;
                    }
                }
                if (level == config.L2) continue;
                ++result.expanded_nodes;
                const ColorComponents comps(mbg, m);
                const auto moves = neighbor_moves(mbg, m);
                if (level < config.L1) {
                    for (const auto& move : moves) {
                        if (comps.num_pair(move) > config.delta) offer(level, i, m, move);
                    }
                    continue;
                }
                // Deepening: only the edge pair with the largest num_pair, both
                // recombinations. Moves come in lexicographic order, so the
                // first maximum is the smallest pair.
                int best = -1;
                const DcjMove* pick = nullptr;
                for (const auto& move : moves) {
                    const int n = comps.num_pair(move);
                    if (n > best) {
                        best = n;
                        pick = &move;
                    }
                }
                if (pick == nullptr || best <= config.delta) continue;
                for (const auto& move : moves) {
                    if (move.first == pick->first && move.second == pick->second) offer(level, i, m, move);
                }
            }
        }
    }
    mbg.set_matching(current);
    return result;
}

ShrinkResult shrink_adequate_subgraphs(MultipleBreakpointGraph& mbg) {
    ShrinkResult result;
    const auto nodes = 2 * mbg.family_count();
    std::vector<std::int32_t> vertex_of(nodes, -1);
    for (std::uint32_t v = 0; v < mbg.extremity_count(); ++v) {
        if (mbg.regular(v) && !mbg.fixed(v)) vertex_of[mbg.family_node(v)] = static_cast<std::int32_t>(v);
    }
    std::array<std::vector<std::vector<std::uint32_t>>, 3> adj;
    for (int color = 0; color < 3; ++color) {
        adj[color].resize(nodes);
        for (const auto& [x, y] : mbg.input_edges(color)) {
            adj[color][x].push_back(y);
            adj[color][y].push_back(x);
        }
    }
    auto erase_one = [](std::vector<std::uint32_t>& list, std::uint32_t x) {
        auto it = std::find(list.begin(), list.end(), x);
        if (it != list.end()) list.erase(it);
    };
    auto candidate = [&](std::uint32_t u) -> std::int64_t {
        std::map<std::uint32_t, int> colors;
        for (int color = 0; color < 3; ++color) {
            for (auto x : adj[color][u]) {
                if (x != u && vertex_of[x] >= 0) ++colors[x];
            }
        }
        for (const auto& [x, n] : colors) {
            if (n >= 2) return x;
        }
        return -1;
    };

    bool changed = true;
    while (changed) {
        changed = false;
        for (std::uint32_t u = 0; u < nodes && !changed; ++u) {
            if (vertex_of[u] < 0) continue;
            const auto found = candidate(u);
            if (found < 0) continue;
            const auto v = static_cast<std::uint32_t>(found);
            for (int color = 0; color < 3; ++color) {
                auto& list = adj[color];
                if (std::find(list[u].begin(), list[u].end(), v) != list[u].end()) {
                    erase_one(list[u], v);
                    erase_one(list[v], u);
                }
                const std::int64_t a = list[u].empty() ? std::int64_t{-1} : std::int64_t{list[u].front()};
                const std::int64_t b = list[v].empty() ? std::int64_t{-1} : std::int64_t{list[v].front()};
                if (a >= 0) erase_one(list[a], u);
                if (b >= 0) erase_one(list[b], v);
                if (a >= 0 && b >= 0) {
                    list[a].push_back(static_cast<std::uint32_t>(b));
                    list[b].push_back(static_cast<std::uint32_t>(a));
                }
                list[u].clear();
                list[v].clear();
            }
            result.fixed_edges.push_back(ordered(vertex_of[u], vertex_of[v]));
            vertex_of[u] = vertex_of[v] = -1;
            changed = true;
            ++result.rounds;
        }
    }
    std::sort(result.fixed_edges.begin(), result.fixed_edges.end());
    mbg.fix_edges(result.fixed_edges);
    return result;
}

MedianResult solve_median(const Trio& inputs, Model model, const MedianOptions& options) {
    options.lk.validate();
    MedianResult out;
    out.content = init_median_content(family_census(inputs[0]), family_census(inputs[1]), family_census(inputs[2]));
    MultipleBreakpointGraph mbg(inputs, out.content, options.caps);
    if (options.shrink) out.fixed_edges = static_cast<int>(shrink_adequate_subgraphs(mbg).fixed_edges.size());
    mbg.set_matching(init_zero_matching(mbg, options.seed));
    MedianScorer scorer(inputs, model, options.distance);
    const auto lk = lk_search(mbg, options.lk, scorer);
    out.median = decode_median(mbg).canonical();
    out.median.name = "median";
    out.score = lk.score;
    out.initial_score = lk.accepted_scores.front();
    out.accepted_scores = lk.accepted_scores;
    out.evaluations = scorer.evaluations();
    out.expanded_nodes = lk.expanded_nodes;
    return out;
}

namespace {

// Partial matchings of n points with at most t unmatched, saturating at cap.
std::uint64_t count_matchings(std::uint32_t n, std::uint32_t t, std::uint64_t cap) {
    std::vector<std::vector<std::uint64_t>> f(n + 1, std::vector<std::uint64_t>(t + 1, 0));
    for (std::uint32_t k = 0; k <= t; ++k) f[0][k] = 1;
    for (std::uint32_t m = 1; m <= n; ++m) {
        for (std::uint32_t k = 0; k <= t; ++k) {
            std::uint64_t v = k > 0 ? f[m - 1][k - 1] : 0;
            if (m >= 2) {
                const auto w = f[m - 2][k];
                v = (w != 0 && (m - 1) > (cap - v) / w) ? cap : std::min(cap, v + (m - 1) * w);
            }
            f[m][k] = std::min(cap, v);
        }
    }
    return f[n][t];
}

}  // namespace

ExhaustiveMedian exhaustive_median(const MultipleBreakpointGraph& mbg, Model model,
                                   const std::vector<std::pair<std::uint32_t, std::uint32_t>>& required,
                                   std::uint64_t limit, const SolverOptions& options) {
    const auto ext = mbg.extremity_count();
    std::vector<std::int32_t> pair(ext, -2);  // -2 open, -1 telomere
    for (const auto& [u, v] : required) {
        if (u >= ext || v >= ext || u == v || pair[u] != -2 || pair[v] != -2)
            throw std::invalid_argument("required pairs must be disjoint extremity pairs");
        pair[u] = static_cast<std::int32_t>(v);
        pair[v] = static_cast<std::int32_t>(u);
    }
    const auto open = static_cast<std::uint32_t>(std::count(pair.begin(), pair.end(), -2));
    const auto total = count_matchings(open, mbg.cap_count(), limit + 1);
    if (total > limit) throw AssignmentSpaceTooLarge(total, limit);

    MedianScorer scorer(mbg.inputs(), model, options);
    ExhaustiveMedian best;
    best.score.total = -1;
    std::uint32_t telomeres = 0;

    auto visit = [&]() {
        std::vector<std::int32_t> partner(mbg.vertex_count());
        auto cap = ext;
        for (std::uint32_t v = 0; v < ext; ++v) {
            if (pair[v] >= 0) {
                partner[v] = pair[v];
            } else {
                partner[v] = static_cast<std::int32_t>(cap);
                partner[cap] = static_cast<std::int32_t>(v);
                ++cap;
            }
        }
        for (; cap + 1 < mbg.vertex_count(); cap += 2) {
            partner[cap] = static_cast<std::int32_t>(cap + 1);
            partner[cap + 1] = static_cast<std::int32_t>(cap);
        }
        ++best.matchings;
        auto genome = decode_median(mbg, partner);
        const auto s = scorer.score(genome);
        if (best.score.total < 0 || s.total < best.score.total) {
            best.score = s;
            best.median = genome.canonical();
            best.median.name = "median";
        }
    };
    std::function<void(std::uint32_t)> rec = [&](std::uint32_t from) {
        while (from < ext && pair[from] != -2) ++from;
        if (from == ext) {
            visit();
            return;
        }
        if (telomeres < mbg.cap_count()) {
            pair[from] = -1;
            ++telomeres;
            rec(from + 1);
            --telomeres;
            pair[from] = -2;
        }
        for (auto y = from + 1; y < ext; ++y) {
            if (pair[y] != -2) continue;
            pair[from] = static_cast<std::int32_t>(y);
            pair[y] = static_cast<std::int32_t>(from);
            rec(from + 1);
            pair[from] = pair[y] = -2;
        }
    };
    rec(0);
    return best;
}

}  // namespace dcjx
