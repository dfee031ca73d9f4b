#include "dcjx/pair_instance.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

namespace dcjx {

const char* to_string(Model m) { return m == Model::exemplar ? "exemplar" : "matching"; }

std::optional<Model> parse_model(std::string_view s) {
    if (s == "exemplar") return Model::exemplar;
    if (s == "matching") return Model::matching;
    return std::nullopt;
}

PairInstance::PairInstance(Genome gamma, Genome pi) : sources_{std::move(gamma), std::move(pi)} {
    std::map<Family, std::array<std::uint32_t, 2>> counts;
    for (int s = 0; s < 2; ++s) {
        for (const auto& c : sources_[s].chromosomes)
            for (const auto& g : c.genes()) ++counts[g.family][s];
    }
    Family max_family = 0;
    for (const auto& [f, n] : counts) {
        FamilyInfo info;
        info.id = f;
        info.count = n;
        info.label_base = label_count_;
        label_count_ += n[0] + n[1];
        families_.push_back(info);
        max_family = std::max(max_family, f);
    }
    label_family_.assign(label_count_, 0);
    Family next = max_family;
    for (const auto& info : families_) {
        label_family_[info.label_base] = info.id;
        for (std::uint32_t k = 1; k < info.count[0] + info.count[1]; ++k) label_family_[info.label_base + k] = ++next;
    }

    for (int s = 0; s < 2; ++s) {
        auto& layout = layouts_[s];
        layout.by_family.assign(families_.size(), {});
        for (const auto& c : sources_[s].chromosomes) {
            ChromosomeLayout cl;
            cl.topology = c.topology();
            for (const auto& g : c.genes()) {
                const auto fi = *family_index(g.family);
                const auto occ = static_cast<std::uint32_t>(layout.occurrences.size());
                layout.occurrences.push_back({fi, static_cast<std::uint32_t>(layout.by_family[fi].size()), g.strand});
                layout.by_family[fi].push_back(occ);
                cl.occurrences.push_back(occ);
            }
            layout.chromosomes.push_back(std::move(cl));
        }
    }
}

std::optional<std::uint32_t> PairInstance::family_index(Family f) const {
    auto it = std::lower_bound(families_.begin(), families_.end(), f,
                               [](const FamilyInfo& info, Family x) { return info.id < x; });
    if (it == families_.end() || it->id != f) return std::nullopt;
    return static_cast<std::uint32_t>(it - families_.begin());
}

Labeling Labeling::deleted_all(const PairInstance& inst) {
    Labeling l;
    for (int s = 0; s < 2; ++s) l.labels[s].assign(inst.layout(static_cast<Side>(s)).occurrences.size(), kDeleted);
    return l;
}

namespace {

// Injective sequences of length k over [0, n) in lexicographic order.
void for_each_injection(std::uint32_t k, std::uint32_t n, const std::function<void(const std::vector<std::uint32_t>&)>& fn) {
    std::vector<std::uint32_t> seq;
    std::vector<bool> used(n, false);
    std::function<void()> rec = [&]() {
        if (seq.size() == k) {
            fn(seq);
            return;
        }
        for (std::uint32_t x = 0; x < n; ++x) {
            if (used[x]) continue;
            used[x] = true;
            seq.push_back(x);
            rec();
            seq.pop_back();
            used[x] = false;
        }
    };
    rec();
}

bool contains_all(const FamilyChoice& c, const std::vector<std::pair<std::uint32_t, std::uint32_t>>& required) {
    for (const auto& r : required) {
        if (std::find(c.pairs.begin(), c.pairs.end(), r) == c.pairs.end()) return false;
    }
    return true;
}

}  // namespace

std::vector<FamilyChoice> family_options(const FamilyInfo& family, Model model,
                                         const std::vector<std::pair<std::uint32_t, std::uint32_t>>& required) {
    const auto a = family.count[0];
    const auto b = family.count[1];
    std::vector<FamilyChoice> out;
    if (model == Model::exemplar) {
        for (std::uint32_t i = 0; i < std::max(a, 1u); ++i) {
            for (std::uint32_t j = 0; j < std::max(b, 1u); ++j) {
                FamilyChoice c{{{a ? i : kNoCopy, b ? j : kNoCopy}}};
                if (contains_all(c, required)) out.push_back(std::move(c));
            }
        }
        return out;
    }
    if (a == 0 || b == 0) {
        out.push_back({});
        return out;
    }
    if (a <= b) {
        for_each_injection(a, b, [&](const std::vector<std::uint32_t>& js) {
            FamilyChoice c;
            for (std::uint32_t i = 0; i < a; ++i) c.pairs.emplace_back(i, js[i]);
            if (contains_all(c, required)) out.push_back(std::move(c));
        });
    } else {
        for_each_injection(b, a, [&](const std::vector<std::uint32_t>& is) {
            FamilyChoice c;
            for (std::uint32_t j = 0; j < b; ++j) c.pairs.emplace_back(is[j], j);
            std::sort(c.pairs.begin(), c.pairs.end());
            if (contains_all(c, required)) out.push_back(std::move(c));
        });
    }
    return out;
}

std::uint64_t family_option_count(const FamilyInfo& family, Model model, std::uint64_t cap) {
    const std::uint64_t a = family.count[0];
    const std::uint64_t b = family.count[1];
    if (model == Model::exemplar) return std::min(cap, std::max<std::uint64_t>(a, 1) * std::max<std::uint64_t>(b, 1));
    const auto hi = std::max(a, b);
    const auto lo = std::min(a, b);
    std::uint64_t n = 1;
    for (std::uint64_t k = 0; k < lo; ++k) {
        n *= hi - k;
        if (n >= cap) return cap;
    }
    return n;
}

void write_choice(const PairInstance& inst, std::uint32_t family_index, Model model, const FamilyChoice* choice,
                  Labeling& out) {
    const auto& info = inst.families()[family_index];
    const auto& occ_g = inst.layout(kGamma).by_family[family_index];
    const auto& occ_p = inst.layout(kPi).by_family[family_index];
    for (auto o : occ_g) out.labels[kGamma][o] = kDeleted;
    for (auto o : occ_p) out.labels[kPi][o] = kDeleted;
    if (choice == nullptr) return;
    const auto base = static_cast<std::int32_t>(info.label_base);

    if (model == Model::exemplar) {
        const auto [i, j] = choice->pairs.at(0);
        if (i != kNoCopy) out.labels[kGamma][occ_g.at(i)] = base;
        if (j != kNoCopy) out.labels[kPi][occ_p.at(j)] = base;
        return;
    }
    std::int32_t next = base;
    for (const auto& [i, j] : choice->pairs) {
        out.labels[kGamma][occ_g.at(i)] = next;
        out.labels[kPi][occ_p.at(j)] = next;
        ++next;
    }
    for (auto o : occ_g) {
        if (out.labels[kGamma][o] == kDeleted) out.labels[kGamma][o] = next++;
    }
    for (auto o : occ_p) {
        if (out.labels[kPi][o] == kDeleted) out.labels[kPi][o] = next++;
    }
}

std::pair<Genome, Genome> materialize(const PairInstance& inst, const Labeling& labeling) {
    std::array<Genome, 2> out;
    for (int s = 0; s < 2; ++s) {
        const auto side = static_cast<Side>(s);
        out[s].name = inst.source(side).name;
        const auto& layout = inst.layout(side);
        for (const auto& cl : layout.chromosomes) {
            std::vector<GeneMarker> genes;
            for (auto o : cl.occurrences) {
                const auto label = labeling.labels[s].at(o);
                if (label == kDeleted) continue;
                genes.push_back({inst.output_family(label), layout.occurrences[o].strand});
            }
            if (!genes.empty()) out[s].chromosomes.emplace_back(std::move(genes), cl.topology);
        }
    }
    return {std::move(out[0]), std::move(out[1])};
}

}  // namespace dcjx
