#include "motivic/theorems.hpp"

#include <algorithm>
#include <sstream>

namespace motivic {

namespace {

PageElement generator_element(const TwoColumnCouple& c, int q, std::size_t index) {
    PageElement x;
    x.page = 1;
    x.pos = {1, q};
    x.rep = Vec(c.e1_col1[q].n_generators());
    x.rep[index] = 1;
    return x;
}

// first nonzero differential of a column-1 element, scanning r = 1..q
std::optional<std::pair<int, PageElement>> first_obstruction(const PageEngine& engine,
                                                             const TwoColumnCouple& c, int q,
                                                             std::size_t index) {
    PageElement x = generator_element(c, q, index);
    for (int r = 1; r <= q; ++r) {
        auto dx = engine.differential(x, r);
        if (!dx) break;
        if (!engine.is_zero(*dx)) return std::make_pair(r, *dx);
    }
    return std::nullopt;
}

}  // namespace

ObstructionReport piecewise_obstruction(const ToyUniverse& u, const std::string& class_id,
                                        const std::string& generator) {
    auto dim = u.dimension_of(class_id);
    if (!dim) throw UnknownClass("piecewise_obstruction: unknown class " + class_id);
    auto pres = u.aut_of(class_id);
    auto git = std::find(pres.generators.begin(), pres.generators.end(), generator);
    if (git == pres.generators.end())
        throw UnknownGenerator("piecewise_obstruction: " + class_id + " has no generator " +
                               generator);

    TwoColumnCouple c = kv_couple(u);
    PageEngine engine(c);
    const int q = *dim;
    auto idx = c.e1_col1[q].label_index(class_id + "." + generator);

    ObstructionReport report;
    report.class_id = class_id;
    report.generator = generator;
    auto hit = first_obstruction(engine, c, q, *idx);
    if (!hit) {
        report.extends = true;
        return report;
    }
    report.extends = false;
    report.first_page = hit->first;
    report.value = hit->second;
    report.value_group = engine.page(hit->first, 0, q - hit->first);
    report.value_text = format_combination(report.value.rep, c.e1_col0[q - hit->first].labels());
    return report;
}

SubgroupResult psi_kernel(const ToyUniverse& u, int n) {
    if (n < 0 || n > u.max_dimension) throw DimensionMismatch("psi_kernel: n out of range");
    K0Tower t = k0_filtration(u);
    GroupHom composite = GroupHom::identity(t.a[n]);
    for (int q = n; q < u.max_dimension; ++q) composite = compose(t.iota[q], composite);
    return kernel_of_hom(composite);
}

DiffKernelReport diff_iff_kernel_report(const ToyUniverse& u) {
    DiffKernelReport report;
    TwoColumnCouple c = kv_couple(u);
    PageEngine engine(c);
    for (const auto& cls : u.classes) {
        auto pres = u.aut_of(cls.id);
        for (const auto& g : pres.generators) {
            auto idx = c.e1_col1[cls.dimension].label_index(cls.id + "." + g);
            if (first_obstruction(engine, c, cls.dimension, *idx)) {
                report.has_nonzero_diff = true;
                break;
            }
        }
        if (report.has_nonzero_diff) break;
    }
    for (int n = 0; n <= u.max_dimension && !report.has_psi_kernel; ++n)
        if (!psi_kernel(u, n).group.is_trivial()) report.has_psi_kernel = true;
    return report;
}

std::vector<StableBlockEntry> larsen_lunts_basis(const ToyUniverse& u) {
    if (!u.convenient) throw NotConvenient("larsen_lunts_basis: universe is not convenient");
    std::vector<StableBlockEntry> out;
    for (const auto& block : stable_partition(u)) {
        StableBlockEntry e;
        e.block = block;
        int best = -1;
        for (const auto& id : block) {
            int d = *u.dimension_of(id);
            if (best < 0 || d < best || (d == best && id < e.representative)) {
                best = d;
                e.representative = id;
            }
        }
        e.dimension = best;
        out.push_back(std::move(e));
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        return std::tie(a.dimension, a.representative) < std::tie(b.dimension, b.representative);
    });
    return out;
}

KernelLReport kernel_of_L(const ToyUniverse& u) {
    GroupHom lmul = l_multiplication(u);  // TruncationOverflow when D = 0
    K0Tower t = k0_filtration(u);
    const int d = u.max_dimension;
    auto ker = kernel_of_hom(lmul);

    KernelLReport report;
    report.kernel = ker.group;
    report.embedding = ker.hom;

    // diagonalize the kernel presentation: with U R V = S, the relation
    // lattice is spanned by d_j times the columns of V^{-T}, so those columns
    // are an adapted generating set with invariant-factor orders
    SNFDecomposition dec = smith_normal_form(ker.group.relations());
    const std::size_t k = ker.group.n_generators();
    IntMatrix basis = k > 0 ? unimodular_inverse(dec.v).transposed() : IntMatrix(0, 0);
    for (std::size_t j = 0; j < k; ++j) {
        Int order = j < dec.rank() ? dec.invariant_factors[j] : Int(0);
        if (order == 1) continue;  // trivial generator
        Vec in_kernel = basis.col(j);
        Vec w = ker.hom.apply(in_kernel);  // coordinates in A_{0,D-1}
        KernelWitness wit;
        wit.vector = w;
        wit.torsion_order = order;
        wit.generator_label = format_combination(w, t.a[d - 1].labels());
        Vec pos(w.size()), neg(w.size());
        for (std::size_t i = 0; i < w.size(); ++i)
            (w[i] > 0 ? pos[i] : neg[i]) = abs(w[i]);
        wit.positive = format_combination(pos, t.a[d - 1].labels());
        wit.negative = format_combination(neg, t.a[d - 1].labels());
        // minimal filtration degree whose tower stage already contains the class
        wit.filtration_degree = d - 1;
        for (int n = 0; n < d; ++n) {
            GroupHom comp = GroupHom::identity(t.a[n]);
            for (int q = n; q < d - 1; ++q) comp = compose(t.iota[q], comp);
            IntMatrix lat = lattice_sum(comp.matrix().transposed(), t.a[d - 1].relations());
            if (in_lattice(w, lat)) {
                wit.filtration_degree = n;
                break;
            }
        }
        report.witnesses.push_back(std::move(wit));
    }
    return report;
}

int stable_complexity(const ToyUniverse& u, const std::string& class_id) {
    if (!u.dimension_of(class_id)) throw UnknownClass("stable_complexity: unknown class " + class_id);
    for (const auto& block : stable_partition(u)) {
        if (std::find(block.begin(), block.end(), class_id) == block.end()) continue;
        int best = *u.dimension_of(block.front());
        for (const auto& id : block) best = std::min(best, *u.dimension_of(id));
        return best;
    }
    throw UnknownClass("stable_complexity: unreachable");
}

SurjectivityReport permanent_cycle_surjectivity(const ToyUniverse& u) {
    if (!u.convenient) throw NotConvenient("permanent_cycle_surjectivity: universe is not convenient");
    TwoColumnCouple c = kv_couple(u);
    PageEngine engine(c);
    ComparisonMap cmp = ss_comparison_map(u);
    E1Pages kvl = kvl_e1(u);

    SurjectivityReport report;
    for (int q = 0; q <= u.max_dimension; ++q) {
        // image of the KV permanent cycles in the KVL E1 coordinates
        IntMatrix perm = engine.cycle_lattice(q + 1, q);
        IntMatrix image(perm.rows(), kvl.col1[q].group.n_generators());
        for (std::size_t i = 0; i < perm.rows(); ++i) {
            Vec v = cmp.col1[q].apply(perm.row(i));
            for (std::size_t k = 0; k < v.size(); ++k) image.at(i, k) = v[k];
        }
        IntMatrix lat = lattice_sum(image, kvl.col1[q].group.relations());
        for (const auto& tag : kvl.col1[q].tags) {
            if (tag.kind == SummandTag::z_tilde) continue;  // not in the permanent component
            for (std::size_t g = 0; g < tag.count; ++g) {
                Vec e(kvl.col1[q].group.n_generators());
                e[tag.first + g] = 1;
                if (!in_lattice(e, lat)) {
                    report.surjective = false;
                    report.counterexamples.push_back(kvl.col1[q].group.labels()[tag.first + g]);
                }
            }
        }
    }
    return report;
}

RealizabilityReport realizability_check(const ToyUniverse& u) {
    if (!u.convenient) throw NotConvenient("realizability_check: universe is not convenient");
    auto coker = cokernel_of_hom(l_multiplication(u));

    std::size_t rank = 0;
    std::vector<Int> torsion;
    for (int n = 0; n <= u.max_dimension; ++n) {
        auto inv = kvl_page_infinity_closed_form(u, n).isomorphism_invariants();
        rank += inv.first;
        torsion.insert(torsion.end(), inv.second.begin(), inv.second.end());
    }

    RealizabilityReport report;
    report.coker_invariants = coker.group.isomorphism_invariants();
    report.stable_page_invariants = {rank, torsion};
    report.consistent = report.coker_invariants == report.stable_page_invariants;
    std::ostringstream os;
    os << "coker(*L) has free rank " << report.coker_invariants.first
       << ", stable column-0 pages sum to free rank " << rank << "; "
       << (report.consistent ? "necessary condition holds (not a realizability proof)"
                             : "the universe cannot arise from varieties");
    report.details = os.str();
    return report;
}

}  // namespace motivic
