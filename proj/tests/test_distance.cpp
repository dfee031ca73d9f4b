#include <random>
#include <set>

#include "doctest.h"
#include "dcjx/condensed_graph.hpp"
#include "dcjx/distance.hpp"
#include "support/brute_force.hpp"
#include "support/random_genomes.hpp"

using namespace dcjx;

namespace {

Genome genome(const char* text) { return parse_genomes(text).at(0); }

const Genome kDupGamma = genome(">G\n1 -2 3 2 -6 5 $\n");
const Genome kDupPi = genome(">P\n1 2 3 7 2 4 $\n");

std::vector<long long> signed_genes(const Genome& g) {
    std::vector<long long> out;
    for (const auto& c : g.chromosomes)
        for (const auto& m : c.genes()) out.push_back(m.to_signed());
    return out;
}

using testing::random_small_pair;

}  // namespace

TEST_CASE("exemplar relabeling of the duplicated example") {
    Assignment a;
    a[2] = FamilyChoice{{{1, 1}}};
    const auto [g, p] = apply_assignment(kDupGamma, kDupPi, Model::exemplar, a);
    CHECK(signed_genes(g) == std::vector<long long>{1, 3, 2, -6, 5});
    CHECK(signed_genes(p) == std::vector<long long>{1, 3, 7, 2, 4});
}

TEST_CASE("matching relabeling of the duplicated example") {
    Assignment a;
    a[2] = FamilyChoice{{{0, 1}, {1, 0}}};
    const auto [g, p] = apply_assignment(kDupGamma, kDupPi, Model::matching, a);
    const auto gs = signed_genes(g);
    const auto ps = signed_genes(p);
    REQUIRE(gs.size() == 6);
    REQUIRE(ps.size() == 6);
    const long long fresh = gs[3];
    CHECK(fresh > 7);
    CHECK(gs == std::vector<long long>{1, -2, 3, fresh, -6, 5});
    CHECK(ps == std::vector<long long>{1, fresh, 3, 7, 2, 4});
}

TEST_CASE("invalid assignments are rejected") {
    Assignment bad;
    bad[2] = FamilyChoice{{{5, 0}}};
    CHECK_THROWS_AS(apply_assignment(kDupGamma, kDupPi, Model::exemplar, bad), std::invalid_argument);
    Assignment unknown;
    unknown[99] = FamilyChoice{{{0, 0}}};
    CHECK_THROWS_AS(apply_assignment(kDupGamma, kDupPi, Model::exemplar, unknown), std::invalid_argument);
}

TEST_CASE("duplicated example against its four exemplar choices") {
    int best = 1 << 30;
    for (std::uint32_t i = 0; i < 2; ++i) {
        for (std::uint32_t j = 0; j < 2; ++j) {
            Assignment a;
            a[2] = FamilyChoice{{{i, j}}};
            const auto [g, p] = apply_assignment(kDupGamma, kDupPi, Model::exemplar, a);
            best = std::min(best, dcj_indel_distance(g, p));
        }
    }
    CHECK(oracle_distance(kDupGamma, kDupPi, Model::exemplar) == best);
    const auto r = exemplar_distance(kDupGamma, kDupPi);
    CHECK(r.distance == best);
    CHECK(dcj_indel_distance(r.gamma_resolved, r.pi_resolved) == best);
    CHECK(r.assignment.count(2) == 1);
}

TEST_CASE("duplicate-free pairs need no branching") {
    const auto g = genome(">G\n1 -2 3 -6 5 @\n");
    const auto p = genome(">P\n1 2 3 7 4 $\n");
    for (auto model : {Model::exemplar, Model::matching}) {
        const auto r = branch_and_bound(g, p, model);
        CHECK(r.distance == 4);
        CHECK(r.stats.expanded_nodes == 0);
        CHECK(r.stats.generated_nodes == 0);
        CHECK(oracle_distance(g, p, model) == 4);
    }
}

TEST_CASE("matching with two copies on each side") {
    const auto g = genome(">G\n1 2 3 2 $\n");
    const auto p = genome(">P\n2 1 2 3 $\n");
    const PairInstance inst(g, p);
    const auto fi = *inst.family_index(2);
    const auto options = family_options(inst.families()[fi], Model::matching);
    REQUIRE(options.size() == 2);
    int best = 1 << 30;
    for (const auto& o : options) {
        Assignment a;
        a[2] = o;
        const auto [g2, p2] = apply_assignment(g, p, Model::matching, a);
        best = std::min(best, dcj_indel_distance(g2, p2));
    }
    CHECK(oracle_distance(g, p, Model::matching) == best);
    CHECK(matching_distance(g, p).distance == best);
}

TEST_CASE("family options") {
    FamilyInfo info;
    info.count = {2, 3};
    CHECK(family_options(info, Model::exemplar).size() == 6);
    CHECK(family_options(info, Model::matching).size() == 6);
    CHECK(family_option_count(info, Model::matching, 100) == 6);
    info.count = {3, 0};
    CHECK(family_options(info, Model::exemplar).size() == 3);
    CHECK(family_options(info, Model::exemplar)[1].pairs[0] == std::make_pair(1u, kNoCopy));
    CHECK(family_options(info, Model::matching).size() == 1);
    info.count = {2, 2};
    const auto m = family_options(info, Model::matching, {{0, 1}});
    REQUIRE(m.size() == 1);
    CHECK(m[0].pairs == std::vector<std::pair<std::uint32_t, std::uint32_t>>{{0, 1}, {1, 0}});
    info.count = {3, 1};
    const auto wide = family_options(info, Model::matching);
    REQUIRE(wide.size() == 3);
    CHECK(wide[2].pairs == std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 0}});
}

TEST_CASE("short cycles next to a single-copy gene are fixed") {
    const auto g = genome(">G\n1 2 3 2 4 $\n");
    const auto p = genome(">P\n1 2 5 $\n");
    const PairInstance inst(g, p);
    const auto fixed = fix_short_cycles(inst, Model::exemplar);
    REQUIRE(fixed.size() == 1);
    CHECK(fixed[0] == FixedPair{2, 0, 0});
    CHECK(fix_short_cycles(inst, Model::matching).size() == 1);
}

TEST_CASE("no short cycles, no constraints") {
    const PairInstance inst(genome(">G\n1 2 2 $\n"), genome(">P\n2 3 1 $\n"));
    CHECK(fix_short_cycles(inst, Model::exemplar).empty());
    CHECK(fix_short_cycles(inst, Model::matching).empty());
}

TEST_CASE("conflicting short cycles are not fixed") {
    // 1t-2h joins copy 0 with copy 0; 2t-3h joins gamma copy 0 with pi copy 1.
    const PairInstance inst(genome(">G\n1 2 3 2 $\n"), genome(">P\n1 2 2 3 $\n"));
    CHECK(fix_short_cycles(inst, Model::exemplar).empty());
}

TEST_CASE("components with closed duplicated families split") {
    const auto g = genome(">G\n1 2 3 2 $\n4 5 6 5 $\n");
    const auto p = genome(">P\n2 1 3 2 $\n5 6 -4 5 $\n");
    const PairInstance inst(g, p);
    const auto groups = decompose_components(inst, Model::exemplar);
    REQUIRE(groups.size() == 2);
    CHECK(groups[0].families == std::vector<Family>{2});
    CHECK(groups[1].families == std::vector<Family>{5});
    CHECK_FALSE(groups[0].coupled);
    CHECK_FALSE(groups[1].coupled);
    for (auto model : {Model::exemplar, Model::matching}) {
        const auto whole = branch_and_bound(g, p, model, {.fix_two_cycles = false, .decompose = false});
        const auto split = branch_and_bound(g, p, model, {.fix_two_cycles = false});
        CHECK(split.stats.groups == 2);
        CHECK(whole.distance == split.distance);
        CHECK(split.distance == oracle_distance(g, p, model));
    }
}

TEST_CASE("open components are searched together") {
    const auto g = genome(">G\n1 2 3 2 $\n4 5 6 5 7 $\n");
    const auto p = genome(">P\n2 1 3 2 $\n5 6 -4 5 8 $\n");
    const auto groups = decompose_components(PairInstance(g, p), Model::exemplar);
    REQUIRE(groups.size() == 2);
    CHECK(groups[1].coupled);
    CHECK(groups[1].families == std::vector<Family>{5});
    const auto single = decompose_components(PairInstance(genome(">G\n1 2 3 2 $\n"), genome(">P\n2 3 1 2 $\n")),
                                             Model::exemplar);
    REQUIRE(single.size() == 1);
    CHECK(single[0].families == std::vector<Family>{2});
}

TEST_CASE("duplicate-free multi-chromosome census sums over components") {
    std::mt19937_64 rng(21);
    for (int i = 0; i < 100; ++i) {
        const auto g = testing::random_genome(rng, 6, 3, "G");
        const auto p = testing::random_genome(rng, 6, 3, "P");
        const auto bpg = build_bpg(g, p);
        // Recount every component on its own and add the censuses.
        ComponentCensus total;
        std::vector<bool> seen(bpg.vertices().size(), false);
        const auto whole = classify_components(bpg, g, p);
        for (std::uint32_t v = 0; v < bpg.vertices().size(); ++v) {
            if (seen[v]) continue;
            std::vector<std::uint32_t> stack{v};
            std::vector<std::uint32_t> members;
            seen[v] = true;
            while (!stack.empty()) {
                const auto u = stack.back();
                stack.pop_back();
                members.push_back(u);
                for (auto e : bpg.incident(u)) {
                    const auto w = bpg.edges()[e].u == u ? bpg.edges()[e].v : bpg.edges()[e].u;
                    if (!seen[w]) {
                        seen[w] = true;
                        stack.push_back(w);
                    }
                }
            }
            ComponentCensus part;
            std::size_t edge_ends = 0;
            bool has_end = false;
            for (auto u : members) {
                edge_ends += bpg.incident(u).size();
                has_end = has_end || bpg.incident(u).size() == 1;
            }
            if (!has_end) {
                part.cycles = 1;
            } else {
                tally_path(part, EndKind::cap, EndKind::cap, static_cast<std::uint32_t>(edge_ends / 2));
            }
            total += part;
        }
        total.alphabet_size = whole.alphabet_size;
        CHECK(total.cycles == whole.cycles);
        CHECK(total.p0_even == whole.p0_even);
        CHECK(total.p0_odd == whole.p0_odd);
        CHECK(dcj_indel_distance(total) == dcj_indel_distance(g, p));
    }
}

TEST_CASE("condensed graph of a duplicate-free pair is bookkeeping only") {
    const auto g = genome(">G\n1 -2 3 -6 5 @\n");
    const auto p = genome(">P\n1 2 3 7 4 $\n");
    const PairInstance inst(g, p);
    auto labels = Labeling::deleted_all(inst);
    for (std::uint32_t fi = 0; fi < inst.families().size(); ++fi) {
        const auto o = family_options(inst.families()[fi], Model::exemplar);
        write_choice(inst, fi, Model::exemplar, &o[0], labels);
    }
    const CondensedGraph cg(inst, labels, std::vector<bool>(inst.families().size(), false));
    CHECK(cg.chains().empty());
    CHECK(cg.port_count() == 0);
    CHECK(cg.dynamic_occurrences().empty());
    CHECK(cg.static_census() == classify_components(build_bpg(g, p), g, p));
    CHECK(cg.distance(labels) == 4);
}

TEST_CASE("condensed graph of the duplicated example keeps family 2 only") {
    const PairInstance inst(kDupGamma, kDupPi);
    auto labels = Labeling::deleted_all(inst);
    std::vector<bool> dynamic(inst.families().size(), false);
    for (std::uint32_t fi = 0; fi < inst.families().size(); ++fi) {
        const auto o = family_options(inst.families()[fi], Model::exemplar);
        write_choice(inst, fi, Model::exemplar, &o[0], labels);
        dynamic[fi] = o.size() > 1;
    }
    const CondensedGraph cg(inst, labels, dynamic);
    CHECK(cg.dynamic_families() == std::vector<Family>{2});
    CHECK(cg.dynamic_occurrences().size() == 4);
    for (const auto& d : cg.dynamic_occurrences()) {
        CHECK(inst.families()[inst.layout(d.side).occurrences[d.occurrence].family_index].id == 2);
    }
    // Each copy of 2 sits between two stable genes, so every copy leaves two ports.
    CHECK(cg.port_count() == 8);
    CHECK_FALSE(cg.chains().empty());
    for (const auto& chain : cg.chains()) CHECK((chain.ends[0].is_port || chain.ends[1].is_port));
}

TEST_CASE("condensed census equals the full census under any labeling") {
    std::mt19937_64 rng(33);
    for (int it = 0; it < 400; ++it) {
        const auto [g, p] = random_small_pair(rng);
        for (auto model : {Model::exemplar, Model::matching}) {
            const PairInstance inst(g, p);
            auto base = Labeling::deleted_all(inst);
            std::vector<bool> dynamic(inst.families().size());
            std::vector<std::vector<FamilyChoice>> options;
            for (std::uint32_t fi = 0; fi < inst.families().size(); ++fi) {
                options.push_back(family_options(inst.families()[fi], model));
                write_choice(inst, fi, model, &options.back()[0], base);
                dynamic[fi] = rng() % 2 == 0;
            }
            const CondensedGraph cg(inst, base, dynamic);
            for (int trial = 0; trial < 5; ++trial) {
                auto labels = base;
                for (std::uint32_t fi = 0; fi < inst.families().size(); ++fi) {
                    if (!dynamic[fi]) continue;
                    const auto pick = rng() % (options[fi].size() + 1);
                    write_choice(inst, fi, model, pick == options[fi].size() ? nullptr : &options[fi][pick], labels);
                }
                const auto [g2, p2] = materialize(inst, labels);
                const auto expected = classify_components(build_bpg(g2, p2), g2, p2);
                const auto got = cg.census(labels);
                CHECK(dcj_indel_distance(got) == dcj_indel_distance(expected));
                CHECK(got.cycles == expected.cycles);
                CHECK(got.alphabet_size == expected.alphabet_size);
                CHECK(got.private_circular == expected.private_circular);
                CHECK(got.path_count() == expected.path_count());
            }
        }
    }
}

TEST_CASE("branch and bound equals enumeration on random pairs") {
    std::mt19937_64 rng(101);
    for (int it = 0; it < 150; ++it) {
        const auto [g, p] = random_small_pair(rng);
        for (auto model : {Model::exemplar, Model::matching}) {
            const int expected = oracle_distance(g, p, model);
            for (int mask = 0; mask < 8; ++mask) {
                SolverOptions o;
                o.fix_two_cycles = mask & 1;
                o.condense = mask & 2;
                o.decompose = mask & 4;
                const auto r = branch_and_bound(g, p, model, o);
                CHECK(r.distance == expected);
                CHECK(dcj_indel_distance(r.gamma_resolved, r.pi_resolved) == r.distance);
            }
        }
    }
}

TEST_CASE("root lower bound never exceeds the optimum") {
    std::mt19937_64 rng(55);
    for (int it = 0; it < 150; ++it) {
        const auto [g, p] = random_small_pair(rng);
        for (auto model : {Model::exemplar, Model::matching}) {
            const PairInstance inst(g, p);
            auto labels = Labeling::deleted_all(inst);
            for (std::uint32_t fi = 0; fi < inst.families().size(); ++fi) {
                const auto o = family_options(inst.families()[fi], model);
                write_choice(inst, fi, model, o.size() > 1 ? nullptr : &o[0], labels);
            }
            CHECK(testing::labeled_distance(inst, labels) <= oracle_distance(g, p, model));
        }
    }
}

TEST_CASE("expanded nodes respect their bounds") {
    std::mt19937_64 rng(77);
    for (int it = 0; it < 100; ++it) {
        const auto [g, p] = random_small_pair(rng);
        for (auto model : {Model::exemplar, Model::matching}) {
            const auto r = branch_and_bound(g, p, model, {.decompose = false, .record_trace = true});
            const int opt = oracle_distance(g, p, model);
            for (const auto& t : r.stats.trace) {
                CHECK(t.lb <= opt);
                CHECK(opt <= t.ub);
            }
        }
    }
}

TEST_CASE("upper bound equal to lower bound returns at once") {
    const auto g = genome(">G\n1 2 1 $\n");
    const auto p = genome(">P\n1 2 $\n");
    const auto r = exemplar_distance(g, p, {.fix_two_cycles = false});
    CHECK(r.distance == 0);
    CHECK(r.stats.expanded_nodes == 0);
    CHECK(r.stats.early_exit);
}

TEST_CASE("random restarts do not change the result") {
    std::mt19937_64 rng(8);
    for (int it = 0; it < 40; ++it) {
        const auto [g, p] = random_small_pair(rng);
        SolverOptions o;
        o.random_restarts = 3;
        o.seed = 99;
        CHECK(branch_and_bound(g, p, Model::exemplar, o).distance == branch_and_bound(g, p, Model::exemplar).distance);
    }
}

TEST_CASE("oracle refuses large spaces") {
    std::string text = ">G\n";
    for (int i = 0; i < 8; ++i) text += "1 2 3 ";
    text += "$\n";
    const auto g = genome(text.c_str());
    try {
        oracle_distance(g, g, Model::matching);
        FAIL("expected AssignmentSpaceTooLarge");
    } catch (const AssignmentSpaceTooLarge& e) {
        CHECK(e.size() > 1'000'000);
        CHECK(std::string(e.what()).find("1000000") != std::string::npos);
    }
}
