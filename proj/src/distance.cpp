#include "dcjx/distance.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "dcjx/condensed_graph.hpp"
#include "dcjx/random.hpp"

namespace dcjx {

namespace {

constexpr std::uint64_t kOptionLimit = 1'000'000;

struct ExtremityRef {
    std::uint32_t family_index;
    std::uint32_t copy;
    std::uint32_t end;  // 0 head, 1 tail
    std::uint32_t family_end() const { return 2 * family_index + end; }
};

std::vector<std::pair<ExtremityRef, ExtremityRef>> adjacencies(const PairInstance& inst, Side s) {
    std::vector<std::pair<ExtremityRef, ExtremityRef>> out;
    const auto& layout = inst.layout(s);
    auto ends = [&](std::uint32_t o) {
        const auto& r = layout.occurrences[o];
        const std::uint32_t l = r.strand == Strand::forward ? 0 : 1;
        return std::make_pair(ExtremityRef{r.family_index, r.copy, l}, ExtremityRef{r.family_index, r.copy, 1 - l});
    };
    for (const auto& cl : layout.chromosomes) {
        const auto n = cl.occurrences.size();
        for (std::size_t i = 0; i + 1 < n; ++i) {
            out.emplace_back(ends(cl.occurrences[i]).second, ends(cl.occurrences[i + 1]).first);
        }
        if (cl.topology == Topology::circular) out.emplace_back(ends(cl.occurrences[n - 1]).second, ends(cl.occurrences[0]).first);
    }
    return out;
}

std::map<std::uint32_t, std::vector<std::pair<std::uint32_t, std::uint32_t>>> required_pairs(
    const PairInstance& inst, const std::vector<FixedPair>& fixed) {
    std::map<std::uint32_t, std::vector<std::pair<std::uint32_t, std::uint32_t>>> out;
    for (const auto& f : fixed) out[*inst.family_index(f.family)].emplace_back(f.gamma_copy, f.pi_copy);
    return out;
}

std::uint64_t constrained_option_count(const FamilyInfo& info, Model model,
                                       const std::vector<std::pair<std::uint32_t, std::uint32_t>>* required) {
    if (required == nullptr || required->empty()) return family_option_count(info, model, kOptionLimit);
    return family_options(info, model, *required).size();
}

std::uint64_t branching_weight(const FamilyInfo& info) {
    return static_cast<std::uint64_t>(std::max(info.count[0], 1u)) * std::max(info.count[1], 1u);
}

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

// Per-family resolution lists after constraints, plus the default labeling.
struct Problem {
    const PairInstance* inst;
    Model model;
    std::vector<std::vector<FamilyChoice>> options;
    Labeling defaults;
};

Problem make_problem(const PairInstance& inst, Model model, const std::vector<FixedPair>& fixed) {
    Problem p{&inst, model, {}, Labeling::deleted_all(inst)};
    const auto required = required_pairs(inst, fixed);
    p.options.resize(inst.families().size());
    for (std::uint32_t fi = 0; fi < inst.families().size(); ++fi) {
        const auto& info = inst.families()[fi];
        auto it = required.find(fi);
        if (family_option_count(info, model, kOptionLimit + 1) > kOptionLimit) {
            throw std::runtime_error("family " + std::to_string(info.id) + " has too many resolutions to search");
        }
        p.options[fi] = family_options(info, model, it == required.end() ? decltype(it->second){} : it->second);
        if (p.options[fi].empty()) throw std::logic_error("fixed pairs leave no resolution for a family");
        write_choice(inst, fi, model, &p.options[fi][0], p.defaults);
    }
    return p;
}

class Search {
public:
    Search(const Problem& problem, std::vector<std::uint32_t> decision, const SolverOptions& options, SearchStats& stats,
           int group)
        : problem_(problem),
          decision_(std::move(decision)),
          options_(options),
          stats_(stats),
          group_(group),
          scratch_(problem.defaults),
          graph_(*problem.inst, problem.defaults, dynamic_mask()) {}

    // Returns the best option index per decision family and its distance.
    std::pair<int, std::vector<std::uint32_t>> run() {
        std::vector<std::uint32_t> prefix;
        const int root_lb = evaluate(prefix, false);
        int min_ub = evaluate(prefix, true);
        std::vector<std::uint32_t> best(decision_.size(), 0);

        if (options_.random_restarts > 0) {
            Rng rng(derive_seed(options_.seed, static_cast<std::uint64_t>(group_)));
            for (int r = 0; r < options_.random_restarts; ++r) {
                std::vector<std::uint32_t> pick;
                for (auto fi : decision_) {
                    pick.push_back(static_cast<std::uint32_t>(bounded(rng, problem_.options[fi].size())));
                }
                const int ub = evaluate(pick, true);
                if (ub < min_ub) {
                    min_ub = ub;
                    best = pick;
                }
            }
        }
        if (decision_.empty()) return {min_ub, best};
        if (min_ub == root_lb) {
            stats_.early_exit = true;
            return {min_ub, best};
        }

        struct Node {
            int lb, ub;
            std::uint32_t depth;
            std::int64_t parent;
            std::uint32_t option;
        };
        std::vector<Node> nodes{{root_lb, min_ub, 0, -1, 0}};
        std::vector<std::vector<std::uint32_t>> buckets(static_cast<std::size_t>(min_ub - root_lb) + 1);
        buckets[0].push_back(0);
        std::size_t lowest = 0;

        auto bucket_of = [&](int lb) { return static_cast<std::size_t>(std::max(0, lb - root_lb)); };
        auto prefix_of = [&](std::uint32_t id) {
            std::vector<std::uint32_t> out(nodes[id].depth);
            for (std::int64_t cur = id; nodes[static_cast<std::size_t>(cur)].parent >= 0;
                 cur = nodes[static_cast<std::size_t>(cur)].parent) {
                const auto& n = nodes[static_cast<std::size_t>(cur)];
                out[n.depth - 1] = n.option;
            }
            return out;
        };

        while (true) {
            while (lowest < buckets.size() && buckets[lowest].empty()) ++lowest;
            if (lowest == buckets.size()) break;
            const auto id = buckets[lowest].back();
            buckets[lowest].pop_back();
            const auto node = nodes[id];
            if (node.lb >= min_ub) {
                stats_.pruned_nodes++;
                continue;
            }
            stats_.expanded_nodes++;
            if (options_.record_trace) stats_.trace.push_back({group_, node.lb, node.ub});

            auto child = prefix_of(id);
            const auto fi = decision_[node.depth];
            const bool complete = node.depth + 1 == decision_.size();
            for (std::uint32_t opt = 0; opt < problem_.options[fi].size(); ++opt) {
                child.push_back(opt);
                const int ub = evaluate(child, true);
                const int lb = complete ? ub : evaluate(child, false);
                stats_.generated_nodes++;
                if (ub < min_ub) {
                    min_ub = ub;
                    best = child;
                    best.resize(decision_.size(), 0);
                    if (min_ub == root_lb) {
                        stats_.early_exit = true;
                        return {min_ub, best};
                    }
                }
                if (!complete && lb < min_ub && lb < ub) {
                    nodes.push_back({lb, ub, node.depth + 1, id, opt});
                    const auto b = bucket_of(lb);
                    buckets[b].push_back(static_cast<std::uint32_t>(nodes.size() - 1));
                    lowest = std::min(lowest, b);
                } else if (!complete && lb >= min_ub) {
                    stats_.pruned_nodes++;
                }
                child.pop_back();
            }
        }
        return {min_ub, best};
    }

private:
    std::vector<bool> dynamic_mask() const {
        std::vector<bool> mask(problem_.inst->families().size(), !options_.condense);
        for (auto fi : decision_) mask[fi] = true;
        return mask;
    }

    // Families past the prefix are deleted for the lower bound and take
    // their default resolution for the upper bound.
    int evaluate(const std::vector<std::uint32_t>& prefix, bool upper) {
        stats_.evaluations++;
        for (std::size_t k = 0; k < decision_.size(); ++k) {
            const auto fi = decision_[k];
            const FamilyChoice* choice = nullptr;
            if (k < prefix.size()) {
                choice = &problem_.options[fi][prefix[k]];
            } else if (upper) {
                choice = &problem_.options[fi][0];
            }
            write_choice(*problem_.inst, fi, problem_.model, choice, scratch_);
        }
        return graph_.distance(scratch_);
    }

    const Problem& problem_;
    std::vector<std::uint32_t> decision_;
    const SolverOptions& options_;
    SearchStats& stats_;
    int group_;
    Labeling scratch_;
    CondensedGraph graph_;
};

}  // namespace

std::vector<FixedPair> fix_short_cycles(const PairInstance& inst, Model model) {
    const auto& families = inst.families();
    auto is_singleton = [&](std::uint32_t fi) { return families[fi].count[0] == 1 && families[fi].count[1] == 1; };
    auto is_decision = [&](std::uint32_t fi) { return family_option_count(families[fi], model, 2) > 1; };

    std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<std::pair<ExtremityRef, ExtremityRef>>> pi_index;
    for (const auto& adj : adjacencies(inst, kPi)) {
        const auto x = adj.first.family_end();
        const auto y = adj.second.family_end();
        pi_index[{std::min(x, y), std::max(x, y)}].push_back(adj);
    }

    std::vector<FixedPair> candidates;
    for (const auto& [a, b] : adjacencies(inst, kGamma)) {
        const auto x0 = a.family_end();
        const auto y0 = b.family_end();
        auto it = pi_index.find({std::min(x0, y0), std::max(x0, y0)});
        if (it == pi_index.end()) continue;
        for (const auto& [c, d] : it->second) {
            // Orient the pi adjacency so that x matches a and y matches b.
            const bool straight = c.family_end() == a.family_end() && d.family_end() == b.family_end();
            const auto& x = straight ? c : d;
            const auto& y = straight ? d : c;
            if (is_singleton(a.family_index) && is_decision(b.family_index)) {
                candidates.push_back({families[b.family_index].id, b.copy, y.copy});
            } else if (is_singleton(b.family_index) && is_decision(a.family_index)) {
                candidates.push_back({families[a.family_index].id, a.copy, x.copy});
            }
        }
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    auto conflict = [&](const FixedPair& p, const FixedPair& q) {
        if (p.family != q.family) return false;
        if (model == Model::exemplar) return p.gamma_copy != q.gamma_copy || p.pi_copy != q.pi_copy;
        return (p.gamma_copy == q.gamma_copy) != (p.pi_copy == q.pi_copy);
    };
    std::vector<FixedPair> out;
    for (const auto& p : candidates) {
        const bool clash = std::any_of(candidates.begin(), candidates.end(), [&](const FixedPair& q) { return conflict(p, q); });
        if (!clash) out.push_back(p);
    }
    return out;
}

std::vector<ComponentGroup> decompose_components(const PairInstance& inst, Model model,
                                                 const std::vector<FixedPair>& fixed) {
    const auto& families = inst.families();
    const auto required = required_pairs(inst, fixed);
    UnionFind uf(2 * families.size());
    for (int s = 0; s < 2; ++s) {
        for (const auto& [a, b] : adjacencies(inst, static_cast<Side>(s))) uf.unite(a.family_end(), b.family_end());
    }
    for (std::uint32_t fi = 0; fi < families.size(); ++fi) {
        if (families[fi].duplicated()) uf.unite(2 * fi, 2 * fi + 1);
    }
    std::set<std::uint32_t> open_roots;
    for (std::uint32_t fi = 0; fi < families.size(); ++fi) {
        const auto& info = families[fi];
        const bool open = !info.shared() || (model == Model::matching && info.count[0] != info.count[1]);
        if (open) open_roots.insert(uf.find(2 * fi));
    }

    std::map<std::uint32_t, ComponentGroup> closed;
    ComponentGroup coupled{{}, true};
    for (std::uint32_t fi = 0; fi < families.size(); ++fi) {
        auto it = required.find(fi);
        if (constrained_option_count(families[fi], model, it == required.end() ? nullptr : &it->second) < 2) continue;
        const auto root = uf.find(2 * fi);
        if (open_roots.count(root)) {
            coupled.families.push_back(families[fi].id);
        } else {
            closed[root].families.push_back(families[fi].id);
        }
    }
    std::vector<ComponentGroup> out;
    for (auto& [root, group] : closed) out.push_back(std::move(group));
    std::sort(out.begin(), out.end(),
              [](const ComponentGroup& a, const ComponentGroup& b) { return a.families.front() < b.families.front(); });
    if (!coupled.families.empty()) out.push_back(std::move(coupled));
    return out;
}

DistanceResult branch_and_bound(const Genome& gamma, const Genome& pi, Model model, const SolverOptions& options) {
    const PairInstance inst(gamma, pi);
    DistanceResult result;
    result.model = model;

    const auto fixed = options.fix_two_cycles ? fix_short_cycles(inst, model) : std::vector<FixedPair>{};
    result.stats.fixed_pairs = static_cast<int>(fixed.size());
    const auto problem = make_problem(inst, model, fixed);

    std::vector<ComponentGroup> groups;
    if (options.decompose) {
        groups = decompose_components(inst, model, fixed);
    } else {
        ComponentGroup all{{}, true};
        for (std::uint32_t fi = 0; fi < inst.families().size(); ++fi) {
            if (problem.options[fi].size() > 1) all.families.push_back(inst.families()[fi].id);
        }
        if (!all.families.empty()) groups.push_back(std::move(all));
    }
    result.stats.groups = static_cast<int>(groups.size());

    Labeling final_labels = problem.defaults;
    std::vector<std::uint32_t> chosen(inst.families().size(), 0);
    for (std::size_t g = 0; g < groups.size(); ++g) {
        std::vector<std::uint32_t> decision;
        for (auto f : groups[g].families) decision.push_back(*inst.family_index(f));
        std::stable_sort(decision.begin(), decision.end(), [&](std::uint32_t x, std::uint32_t y) {
            const auto wx = branching_weight(inst.families()[x]);
            const auto wy = branching_weight(inst.families()[y]);
            return wx != wy ? wx > wy : inst.families()[x].id < inst.families()[y].id;
        });
        result.stats.decision_families += static_cast<int>(decision.size());
        Search search(problem, decision, options, result.stats, static_cast<int>(g));
        const auto [value, picks] = search.run();
        result.stats.group_optimum.push_back(value);
        for (std::size_t k = 0; k < decision.size(); ++k) chosen[decision[k]] = picks[k];
    }

    for (std::uint32_t fi = 0; fi < inst.families().size(); ++fi) {
        const auto& choice = problem.options[fi][chosen[fi]];
        write_choice(inst, fi, model, &choice, final_labels);
        if (family_option_count(inst.families()[fi], model, 2) > 1) result.assignment[inst.families()[fi].id] = choice;
    }
    auto [g2, p2] = materialize(inst, final_labels);
    result.distance = dcj_indel_distance(g2, p2);
    result.gamma_resolved = std::move(g2);
    result.pi_resolved = std::move(p2);
    return result;
}

DistanceResult exemplar_distance(const Genome& gamma, const Genome& pi, const SolverOptions& options) {
    return branch_and_bound(gamma, pi, Model::exemplar, options);
}

DistanceResult matching_distance(const Genome& gamma, const Genome& pi, const SolverOptions& options) {
    return branch_and_bound(gamma, pi, Model::matching, options);
}

std::pair<Genome, Genome> apply_assignment(const Genome& gamma, const Genome& pi, Model model,
                                           const Assignment& assignment) {
    const PairInstance inst(gamma, pi);
    auto labels = Labeling::deleted_all(inst);
    for (const auto& [family, choice] : assignment) {
        if (!inst.family_index(family)) throw std::invalid_argument("assignment names unknown family " + std::to_string(family));
    }
    for (std::uint32_t fi = 0; fi < inst.families().size(); ++fi) {
        const auto options = family_options(inst.families()[fi], model);
        auto it = assignment.find(inst.families()[fi].id);
        const FamilyChoice* choice = &options[0];
        if (it != assignment.end()) {
            if (std::find(options.begin(), options.end(), it->second) == options.end()) {
                throw std::invalid_argument("invalid resolution for family " + std::to_string(it->first));
            }
            choice = &it->second;
        }
        write_choice(inst, fi, model, choice, labels);
    }
    return materialize(inst, labels);
}

AssignmentSpaceTooLarge::AssignmentSpaceTooLarge(std::uint64_t size, std::uint64_t limit)
    : std::runtime_error("assignment space has " + (size > limit ? "more than " + std::to_string(limit) : std::to_string(size)) +
                         " combinations; the enumeration limit is " + std::to_string(limit)),
      size_(size) {}

std::uint64_t assignment_space_size(const PairInstance& inst, Model model, std::uint64_t cap) {
    std::uint64_t n = 1;
    for (const auto& info : inst.families()) {
        const auto k = family_option_count(info, model, cap);
        if (n > cap / k) return cap;
        n *= k;
    }
    return std::min(n, cap);
}

int oracle_distance(const Genome& gamma, const Genome& pi, Model model, std::uint64_t limit) {
    const PairInstance inst(gamma, pi);
    const auto size = assignment_space_size(inst, model, limit + 1);
    if (size > limit) throw AssignmentSpaceTooLarge(size, limit);

    std::vector<std::vector<FamilyChoice>> options;
    for (const auto& info : inst.families()) options.push_back(family_options(info, model));
    std::vector<std::size_t> digit(options.size(), 0);
    auto labels = Labeling::deleted_all(inst);
    int best = std::numeric_limits<int>::max();
    while (true) {
        for (std::uint32_t fi = 0; fi < options.size(); ++fi) write_choice(inst, fi, model, &options[fi][digit[fi]], labels);
        const auto [g2, p2] = materialize(inst, labels);
        best = std::min(best, dcj_indel_distance(g2, p2));
        std::size_t k = 0;
        while (k < digit.size() && ++digit[k] == options[k].size()) digit[k++] = 0;
        if (k == digit.size()) break;
    }
    return best;
}

}  // namespace dcjx
