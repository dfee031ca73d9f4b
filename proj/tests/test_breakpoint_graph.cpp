#include <random>

#include "doctest.h"
#include "dcjx/breakpoint_graph.hpp"
#include "support/event_oracle.hpp"
#include "support/random_genomes.hpp"

using namespace dcjx;

namespace {

Genome genome(const char* text) { return parse_genomes(text).at(0); }

const Genome kWorkedGamma = genome(">G\n1 -2 3 -6 5 @\n");
const Genome kWorkedPi = genome(">P\n1 2 3 7 4 $\n");

bool has_edge(const BreakpointGraph& g, const Extremity& a, const Extremity& b, EdgeColor color) {
    const auto u = g.find(a);
    const auto v = g.find(b);
    if (!u || !v) return false;
    for (const auto& e : g.edges()) {
        if (e.color == color && ((e.u == *u && e.v == *v) || (e.u == *v && e.v == *u))) return true;
    }
    return false;
}

}  // namespace

TEST_CASE("worked example graph") {
    const auto g = build_bpg(kWorkedGamma, kWorkedPi);
    using X = Extremity;
    // cycle 1t - 2t - 3h - 2h - 1t
    CHECK(has_edge(g, X::tail(1), X::tail(2), EdgeColor::gamma));
    CHECK(has_edge(g, X::tail(2), X::head(3), EdgeColor::pi));
    CHECK(has_edge(g, X::head(3), X::head(2), EdgeColor::gamma));
    CHECK(has_edge(g, X::head(2), X::tail(1), EdgeColor::pi));
    // the p^gamma path 5t - 1h - cap
    CHECK(has_edge(g, X::tail(5), X::head(1), EdgeColor::gamma));
    const auto h1 = *g.find(X::head(1));
    bool to_cap = false;
    for (auto e : g.incident(h1)) {
        const auto& edge = g.edges()[e];
        const auto other = edge.u == h1 ? edge.v : edge.u;
        if (edge.color == EdgeColor::pi && g.vertices()[other].is_cap()) to_cap = true;
    }
    CHECK(to_cap);
    // the p^{gamma,pi} path 6t - 3t - 7h
    CHECK(has_edge(g, X::tail(6), X::tail(3), EdgeColor::gamma));
    CHECK(has_edge(g, X::tail(3), X::head(7), EdgeColor::pi));
}

TEST_CASE("single gene graph") {
    const auto a = genome(">A\n1 $\n");
    const auto g = build_bpg(a, a);
    CHECK(g.vertices().size() == 6);
    CHECK(g.edges().size() == 4);
    CHECK(dump_edges(g) == "1h -- cap0 [gamma]\n1h -- cap2 [pi]\n1t -- cap1 [gamma]\n1t -- cap3 [pi]\n");
    CHECK(g.is_regular(*g.find(Extremity::head(1))));
}

TEST_CASE("every occurrence contributes one edge per extremity") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 200; ++i) {
        const auto a = testing::random_multigenome(rng, 1 + static_cast<int>(rng() % 10), 6);
        const auto b = testing::random_multigenome(rng, 1 + static_cast<int>(rng() % 10), 6);
        const auto g = build_bpg(a, b);
        std::size_t gamma_edges = 0;
        for (const auto& e : g.edges()) gamma_edges += e.color == EdgeColor::gamma;
        std::size_t linear_a = 0;
        for (const auto& c : a.chromosomes) linear_a += !c.is_circular();
        CHECK(gamma_edges == a.gene_count() + linear_a);
        for (std::uint32_t v = 0; v < g.vertices().size(); ++v) {
            const auto& x = g.vertices()[v];
            if (x.is_cap()) {
                CHECK(g.incident(v).size() == 1);
                continue;
            }
            const auto ca = family_census(a).count(x.family);
            const auto cb = family_census(b).count(x.family);
            CHECK(g.degree(v, EdgeColor::gamma) == (x.occurrence < ca ? 1u : 0u));
            CHECK(g.degree(v, EdgeColor::pi) == (x.occurrence < cb ? 1u : 0u));
        }
    }
}

TEST_CASE("family identity merges duplicated occurrences") {
    const auto a = genome(">A\n1 2 1 $\n");
    const auto b = genome(">B\n1 2 $\n");
    const auto occ = build_bpg(a, b);
    const auto fam = build_bpg(a, b, VertexIdentity::family);
    CHECK(occ.find(Extremity::head(1, 1)).has_value());
    CHECK_FALSE(fam.find(Extremity::head(1, 1)).has_value());
    CHECK(fam.degree(*fam.find(Extremity::head(1)), EdgeColor::gamma) == 2);
    CHECK_FALSE(fam.is_regular(*fam.find(Extremity::head(1))));
}

TEST_CASE("worked example census and distance") {
    const auto census = classify_components(build_bpg(kWorkedGamma, kWorkedPi), kWorkedGamma, kWorkedPi);
    CHECK(census.p_gamma_odd + census.p_gamma_even >= 1);
    CHECK(census.p_pigam_total == 1);
    CHECK(census.alphabet_size == 7);
    CHECK(dcj_indel_distance(census) == 4);
    CHECK(dcj_indel_distance(kWorkedGamma, kWorkedPi) == 4);
}

TEST_CASE("identical genomes") {
    const auto a = genome(">A\n1 2 3 $\n");
    const auto census = classify_components(build_bpg(a, a), a, a);
    CHECK(census.cycles == 2);
    CHECK(census.p0_even == 2);
    CHECK(census.cycles + census.path_count() == 4);
    CHECK(census.p_pi_odd + census.p_pi_even + census.p_gamma_odd + census.p_gamma_even + census.p_pipi +
              census.p_gamgam + census.p_pigam_total ==
          0);
    CHECK(dcj_indel_distance(census) == 0);
}

TEST_CASE("disjoint single genes") {
    // Gamma = (1), Pi = (2): 1 is gamma-open, 2 is pi-open; every path runs
    // from a cap to one open extremity.
    const auto a = genome(">A\n1 $\n");
    const auto b = genome(">B\n2 $\n");
    const auto census = classify_components(build_bpg(a, b), a, b);
    CHECK(census.p_gamma_odd == 2);
    CHECK(census.p_pi_odd == 2);
    CHECK(census.path_count() == 4);
    CHECK(census.cycles == 0);
    CHECK(dcj_indel_distance(census) == 2);
}

TEST_CASE("open labels") {
    const auto a = family_census(genome(">A\n1 2 $\n"));
    const auto b = family_census(genome(">B\n2 3 $\n"));
    CHECK(open_label(Extremity::head(1), a, b) == OpenVertexLabel::gamma_open);
    CHECK(open_label(Extremity::head(3), a, b) == OpenVertexLabel::pi_open);
    CHECK(open_label(Extremity::tail(2), a, b) == OpenVertexLabel::closed);
    CHECK(open_label(Extremity::cap(0), a, b) == OpenVertexLabel::closed);
}

TEST_CASE("duplicates are a contract violation") {
    const auto a = genome(">A\n1 2 1 $\n");
    const auto b = genome(">B\n1 2 $\n");
    CHECK_THROWS_AS(classify_components(build_bpg(a, b), a, b), ContractViolation);
    CHECK_THROWS_AS(dcj_distance(a, b), ContractViolation);
}

TEST_CASE("classic dcj distance") {
    CHECK(dcj_distance(genome(">A\n1 2 3 $\n"), genome(">B\n1 -2 3 $\n")) == 1);
    CHECK(dcj_distance(genome(">A\n1 2 3 $\n"), genome(">B\n1 2 3 $\n")) == 0);
    CHECK_THROWS_AS(dcj_distance(genome(">A\n1 2 $\n"), genome(">B\n1 3 $\n")), ContractViolation);
}

TEST_CASE("classic dcj distance matches event search") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 60; ++i) {
        const int n = 1 + static_cast<int>(rng() % 5);
        const auto a = testing::random_genome(rng, n, 2);
        const auto b = testing::random_genome(rng, n, 2);
        std::vector<Family> universe;
        for (int f = 1; f <= n; ++f) universe.push_back(static_cast<Family>(f));
        testing::EventOracle oracle(universe);
        CHECK(dcj_distance(a, b) == oracle.distance(a, b, false));
        CHECK(dcj_indel_distance(a, b) == dcj_distance(a, b));
    }
}

TEST_CASE("indel distance matches event search on two families") {
    testing::EventOracle oracle({1, 2});
    std::vector<Genome> all;
    for (const auto& content : std::vector<std::vector<Family>>{{1}, {2}, {1, 2}}) {
        for (auto& g : oracle.all_genomes(content)) {
            bool linear = true;
            for (const auto& c : g.chromosomes) linear = linear && !c.is_circular();
            if (linear) all.push_back(g);
        }
    }
    int checked = 0;
    for (const auto& a : all) {
        for (const auto& b : all) {
            CHECK(dcj_indel_distance(a, b) == oracle.distance(a, b));
            ++checked;
        }
    }
    CHECK(checked > 0);
}

TEST_CASE("symmetry and identity on random pairs") {
    std::mt19937_64 rng(9);
    for (int i = 0; i < 1000; ++i) {
        // Random duplicate-free pairs with partially shared content.
        auto pick = [&](const char* name) {
            auto g = testing::random_genome(rng, 2 + static_cast<int>(rng() % 8), 3, name);
            std::vector<Chromosome> kept;
            for (const auto& c : g.chromosomes) {
                std::vector<GeneMarker> genes;
                for (const auto& m : c.genes())
                    if (rng() % 4 != 0) genes.push_back(m);
                if (!genes.empty()) kept.emplace_back(std::move(genes), c.topology());
            }
            if (kept.empty()) kept.push_back(g.chromosomes.front());
            return Genome{name, kept};
        };
        const auto a = pick("A");
        const auto b = pick("B");
        const int ab = dcj_indel_distance(a, b);
        CHECK(ab == dcj_indel_distance(b, a));
        CHECK(ab >= 0);
        CHECK(dcj_indel_distance(a, a) == 0);
        CHECK((ab == 0) == a.equivalent(b));
    }
}

TEST_CASE("census sum over components") {
    ComponentCensus a;
    a.cycles = 1;
    a.p0_even = 2;
    ComponentCensus b;
    b.cycles = 2;
    b.private_circular = 1;
    a += b;
    CHECK(a.cycles == 3);
    CHECK(a.p0_even == 2);
    CHECK(a.private_circular == 1);
}
