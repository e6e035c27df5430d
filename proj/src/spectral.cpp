#include "motivic/spectral.hpp"

#include <algorithm>

namespace motivic {

std::size_t K0Tower::gen_index(int q, const std::string& id) const {
    if (auto i = a[q].label_index(id)) return *i;
    throw UnknownClass("tower: class " + id + " not present at dimension " + std::to_string(q));
}

namespace detail {

K0Tower build_k0_tower(const ToyUniverse& u, std::vector<Violation>* collect) {
    K0Tower t;
    const int d = u.max_dimension;
    for (int q = 0; q <= d; ++q) {
        auto gens = u.classes_up_to_dim(q);
        IntMatrix rel(0, gens.size());
        if (q > 0) {
            // previous relations, padded with zeros over the new generators
            const IntMatrix& prev = t.a[q - 1].relations();
            IntMatrix padded(prev.rows(), gens.size());
            for (std::size_t i = 0; i < prev.rows(); ++i)
                for (std::size_t j = 0; j < prev.cols(); ++j) padded.at(i, j) = prev.at(i, j);
            rel = rel.vstack(padded);
            // one relation per Aut generator: the image of its boundary
            std::vector<Vec> brows;
            for (const auto& alpha : u.classes_of_dim(q)) {
                auto pres = u.aut_of(alpha);
                std::vector<Vec> bvecs;
                for (const auto& g : pres.generators) {
                    FormalSum expr;
                    if (auto it = u.boundary.find({alpha, g}); it != u.boundary.end())
                        expr = it->second;
                    Vec v(t.a[q - 1].n_generators());
                    for (const auto& [id, c] : expr) v[t.gen_index(q - 1, id)] += c;
                    bvecs.push_back(v);
                }
                // relation-respect: Aut relations must map to zero in A_{0,q-1}
                for (std::size_t r = 0; r < pres.relations.rows(); ++r) {
                    Vec combo(t.a[q - 1].n_generators());
                    for (std::size_t g = 0; g < pres.generators.size(); ++g)
                        for (std::size_t k = 0; k < combo.size(); ++k)
                            combo[k] += pres.relations.at(r, g) * bvecs[g][k];
                    if (!t.a[q - 1].is_zero_element(combo)) {
                        if (collect)
                            collect->push_back({"relation-respect", alpha,
                                                "Aut relation row " + std::to_string(r) +
                                                    " has a nonzero boundary image"});
                        else
                            throw InconsistentBoundary("k0_filtration: Aut relation of " + alpha +
                                                       " has a nonzero boundary image");
                    }
                }
                for (auto& v : bvecs) {
                    v.resize(gens.size());
                    brows.push_back(std::move(v));
                }
            }
            rel = rel.vstack(IntMatrix::from_rows(brows, gens.size()));
        }
        t.a.emplace_back(gens, rel);
        if (q > 0) {
            IntMatrix mi(gens.size(), t.a[q - 1].n_generators());
            for (std::size_t j = 0; j < t.a[q - 1].n_generators(); ++j) mi.at(j, j) = 1;
            t.iota.emplace_back(t.a[q - 1], t.a[q], mi);
        }
        auto bq = u.classes_of_dim(q);
        t.e1_col0.push_back(FGAbelianGroup::free_group(bq));
        IntMatrix mp(bq.size(), gens.size());
        const std::size_t old = gens.size() - bq.size();
        for (std::size_t j = 0; j < bq.size(); ++j) mp.at(j, old + j) = 1;
        t.p_maps.emplace_back(t.a[q], t.e1_col0[q], mp);
    }
    return t;
}

void check_convenience(const ToyUniverse& u, const K0Tower& t, std::vector<Violation>& out) {
    for (const auto& c : u.classes) {
        const int n = c.dimension;
        auto pres = u.aut_of(c.id);
        if (pres.generators.empty()) continue;
        // image of multiplication by the Lefschetz class from dimensions <= n-2,
        // as a sublattice of A_{0,n-1}
        std::vector<Vec> rows;
        if (n >= 1) {
            for (const auto& gamma : u.classes) {
                if (gamma.dimension > n - 2) continue;
                Vec v(t.a[n - 1].n_generators());
                v[t.gen_index(n - 1, *u.l_image(gamma.id))] += 1;
                if (const FormalSum* corr = u.correction_of(gamma.id))
                    for (const auto& [id, k] : *corr) v[t.gen_index(n - 1, id)] += k;
                rows.push_back(std::move(v));
            }
        }
        IntMatrix image = IntMatrix::from_rows(rows, n >= 1 ? t.a[n - 1].n_generators() : 0);
        IntMatrix lat = n >= 1 ? lattice_sum(image, t.a[n - 1].relations()) : image;
        for (const auto& g : pres.generators) {
            FormalSum expr;
            if (auto it = u.boundary.find({c.id, g}); it != u.boundary.end()) expr = it->second;
            Vec v(n >= 1 ? t.a[n - 1].n_generators() : 0);
            for (const auto& [id, k] : expr) v[t.gen_index(n - 1, id)] += k;
            if (!in_lattice(v, lat))
                out.push_back({"convenience", c.id + "." + g,
                               "boundary is not a Lefschetz multiple from two dimensions down"});
        }
    }
}

}  // namespace detail

K0Tower k0_filtration(const ToyUniverse& u) { return detail::build_k0_tower(u, nullptr); }

E1Pages kv_e1(const ToyUniverse& u) {
    E1Pages pages;
    pages.kind = SequenceKind::kv;
    for (int q = 0; q <= u.max_dimension; ++q) {
        auto bq = u.classes_of_dim(q);
        pages.col0.push_back(FGAbelianGroup::free_group(bq));
        std::vector<std::string> labels;
        std::vector<SummandTag> tags;
        std::vector<std::pair<std::size_t, IntMatrix>> rel_blocks;  // (offset, rows)
        for (const auto& alpha : bq) {
            auto pres = u.aut_of(alpha);
            SummandTag aut_tag{SummandTag::aut_ab, alpha, labels.size(), pres.generators.size()};
            if (pres.relations.rows() > 0) rel_blocks.emplace_back(labels.size(), pres.relations);
            for (const auto& g : pres.generators) labels.push_back(alpha + "." + g);
            tags.push_back(aut_tag);
            tags.push_back({SummandTag::z2, alpha, labels.size(), 1});
            IntMatrix two(1, 1);
            two.at(0, 0) = 2;
            rel_blocks.emplace_back(labels.size(), two);
            labels.push_back("z2(" + alpha + ")");
        }
        IntMatrix rel(0, labels.size());
        for (const auto& [off, block] : rel_blocks) {
            IntMatrix padded(block.rows(), labels.size());
            for (std::size_t i = 0; i < block.rows(); ++i)
                for (std::size_t j = 0; j < block.cols(); ++j) padded.at(i, off + j) = block.at(i, j);
            rel = rel.vstack(padded);
        }
        pages.col1.push_back({FGAbelianGroup(labels, rel), tags});
    }
    return pages;
}

TwoColumnCouple kv_couple(const ToyUniverse& u) {
    K0Tower t = k0_filtration(u);
    E1Pages e1 = kv_e1(u);
    TwoColumnCouple c;
    c.a_tower = t.a;
    c.iota = t.iota;
    c.e1_col0 = t.e1_col0;
    c.p_maps = t.p_maps;
    for (int q = 0; q <= u.max_dimension; ++q) {
        c.e1_col1.push_back(e1.col1[q].group);
        const FGAbelianGroup& src = e1.col1[q].group;
        if (q == 0) {
            c.bdry.emplace_back(GroupHom::zero(src, FGAbelianGroup::trivial()));
            continue;
        }
        IntMatrix m(t.a[q - 1].n_generators(), src.n_generators());
        for (const auto& tag : e1.col1[q].tags) {
            if (tag.kind != SummandTag::aut_ab) continue;  // z2 summands bound nothing
            auto pres = u.aut_of(tag.owner);
            for (std::size_t g = 0; g < pres.generators.size(); ++g) {
                if (auto it = u.boundary.find({tag.owner, pres.generators[g]});
                    it != u.boundary.end())
                    for (const auto& [id, coeff] : it->second)
                        m.at(t.gen_index(q - 1, id), tag.first + g) += coeff;
            }
        }
        c.bdry.emplace_back(src, t.a[q - 1], m);
    }
    return c;
}

GroupHom l_multiplication(const ToyUniverse& u) {
    if (u.max_dimension < 1)
        throw TruncationOverflow("l_multiplication: needs max_dimension >= 1");
    K0Tower t = k0_filtration(u);
    const int d = u.max_dimension;
    const FGAbelianGroup& src = t.a[d - 1];
    const FGAbelianGroup& dst = t.a[d];
    IntMatrix m(dst.n_generators(), src.n_generators());
    for (std::size_t j = 0; j < src.n_generators(); ++j) {
        const std::string& beta = src.labels()[j];
        m.at(t.gen_index(d, *u.l_image(beta)), j) += 1;
        if (const FormalSum* corr = u.correction_of(beta))
            for (const auto& [id, c] : *corr) m.at(t.gen_index(d, id), j) += c;
    }
    return GroupHom(src, dst, m);
}

E1Pages kvl_e1(const ToyUniverse& u) {
    E1Pages pages;
    pages.kind = SequenceKind::kvl;
    for (int q = 0; q <= u.max_dimension; ++q) {
        auto bq = u.classes_of_dim(q);
        // column 0: classes of dimension q that are not l images
        std::vector<std::string> col0;
        for (const auto& id : bq)
            if (u.l_preimages(id).empty()) col0.push_back(id);
        pages.col0.push_back(FGAbelianGroup::free_group(col0));

        std::vector<std::string> labels;
        std::vector<SummandTag> tags;
        std::vector<std::pair<std::size_t, IntMatrix>> rel_blocks;
        for (const auto& beta : bq) {
            auto pres = u.aut_of(beta);
            auto pre = u.l_preimages(beta);
            // pi_1 of C~: Aut(beta)^ab modulo the images of the preimage Auts
            SummandTag pt{SummandTag::pi1_ctilde, beta, labels.size(), pres.generators.size()};
            IntMatrix rel = pres.relations;
            for (const auto& alpha : pre) {
                std::size_t src_gens = u.aut_of(alpha).generators.size();
                // a map from or into a trivial group is forced, no entry needed
                if (src_gens == 0 || pres.generators.empty()) continue;
                auto it = u.aut_l_induced.find(alpha);
                if (it == u.aut_l_induced.end())
                    throw MissingInducedMap("kvl_e1: aut_l_induced missing for " + alpha);
                const IntMatrix& ind = it->second;
                if (ind.rows() != pres.generators.size() || ind.cols() != src_gens)
                    throw MissingInducedMap("kvl_e1: aut_l_induced for " + alpha +
                                            " has the wrong shape");
                rel = rel.vstack(ind.transposed());
            }
            if (rel.rows() > 0) rel_blocks.emplace_back(labels.size(), rel);
            for (const auto& g : pres.generators) labels.push_back(beta + "." + g);
            tags.push_back(pt);
            if (pre.empty()) {
                tags.push_back({SummandTag::z2, beta, labels.size(), 1});
                IntMatrix two(1, 1);
                two.at(0, 0) = 2;
                rel_blocks.emplace_back(labels.size(), two);
                labels.push_back("z2(" + beta + ")");
            } else {
                // Z~ over the preimages: kernel of the coordinate sum, with the
                // consecutive differences as basis
                tags.push_back({SummandTag::z_tilde, beta, labels.size(), pre.size() - 1});
                for (std::size_t i = 0; i + 1 < pre.size(); ++i)
                    labels.push_back(pre[i] + "-" + pre[i + 1]);
            }
        }
        IntMatrix rel(0, labels.size());
        for (const auto& [off, block] : rel_blocks) {
            IntMatrix padded(block.rows(), labels.size());
            for (std::size_t i = 0; i < block.rows(); ++i)
                for (std::size_t j = 0; j < block.cols(); ++j) padded.at(i, off + j) = block.at(i, j);
            rel = rel.vstack(padded);
        }
        pages.col1.push_back({FGAbelianGroup(labels, rel), tags});
    }
    return pages;
}

namespace {

void require_convenient(const ToyUniverse& u, const char* who) {
    if (!u.convenient) throw NotConvenient(std::string(who) + ": universe is not in convenient mode");
}

// lexicographically least preimage of id under l^k
std::optional<std::string> canonical_preimage(const ToyUniverse& u, const std::string& id, int k) {
    std::vector<std::string> frontier{id};
    for (int s = 0; s < k; ++s) {
        std::vector<std::string> next;
        for (const auto& c : frontier) {
            auto pre = u.l_preimages(c);
            next.insert(next.end(), pre.begin(), pre.end());
        }
        if (next.empty()) return std::nullopt;
        std::sort(next.begin(), next.end());
        frontier = std::move(next);
    }
    return frontier.front();
}

// surviving sim_{r-1} blocks of B_n with their canonical representatives
std::vector<std::vector<std::string>> surviving_blocks(const ToyUniverse& u, int r, int n) {
    Partition part = sim_r_partition(u, n, r - 1);
    std::vector<std::string> image;  // l(B_{n-1})
    if (n >= 1)
        for (const auto& id : u.classes_of_dim(n - 1)) image.push_back(*u.l_image(id));
    std::sort(image.begin(), image.end());
    std::vector<std::vector<std::string>> out;
    for (auto& block : part) {
        bool touches = std::any_of(block.begin(), block.end(), [&](const std::string& id) {
            return std::binary_search(image.begin(), image.end(), id);
        });
        if (!touches) out.push_back(std::move(block));
    }
    return out;
}

FGAbelianGroup free_on_blocks(const std::vector<std::vector<std::string>>& blocks) {
    std::vector<std::string> labels;
    for (const auto& b : blocks) labels.push_back(b.front());
    return FGAbelianGroup::free_group(labels);
}

}  // namespace

FGAbelianGroup kvl_page_closed_form(const ToyUniverse& u, int r, int n) {
    require_convenient(u, "kvl_page_closed_form");
    if (r < 1 || n < 0) throw DimensionMismatch("kvl_page_closed_form: bad (r, n)");
    if (n + r - 1 > u.max_dimension)
        throw TruncationOverflow("kvl_page_closed_form: page " + std::to_string(r) +
                                 " needs l^" + std::to_string(r - 1) + " beyond the truncation");
    return free_on_blocks(surviving_blocks(u, r, n));
}

FGAbelianGroup kvl_page_infinity_closed_form(const ToyUniverse& u, int n) {
    require_convenient(u, "kvl_page_infinity_closed_form");
    if (n < 0 || n > u.max_dimension) throw DimensionMismatch("kvl_page_infinity_closed_form: n");
    return free_on_blocks(surviving_blocks(u, u.max_dimension - n + 1, n));
}

FGAbelianGroup kvl_col1_page_closed_form(const ToyUniverse& u, int r, int n) {
    if (r >= 2) require_convenient(u, "kvl_col1_page_closed_form");
    if (r < 1 || n < 0 || n > u.max_dimension)
        throw DimensionMismatch("kvl_col1_page_closed_form: bad (r, n)");
    E1Pages e1 = kvl_e1(u);
    const FGAbelianGroup& full = e1.col1[n].group;
    // keep the pi1 and Z/2 generators; the Z~ summands shrink to the
    // sum-zero lattice over the preimages of degree >= r-1 (always free)
    std::vector<std::string> labels;
    std::vector<std::size_t> source_col;  // index into full, npos for new free gens
    constexpr std::size_t npos = static_cast<std::size_t>(-1);
    for (const auto& tag : e1.col1[n].tags) {
        if (tag.kind != SummandTag::z_tilde) {
            for (std::size_t i = 0; i < tag.count; ++i) {
                labels.push_back(full.labels()[tag.first + i]);
                source_col.push_back(tag.first + i);
            }
            continue;
        }
        std::vector<std::string> survivors;
        for (const auto& alpha : u.l_preimages(tag.owner))
            if (line_degree(u, alpha) >= r - 1) survivors.push_back(alpha);
        for (std::size_t i = 0; i + 1 < survivors.size(); ++i) {
            labels.push_back(survivors[i] + "-" + survivors[i + 1]);
            source_col.push_back(npos);
        }
    }
    IntMatrix rel(full.relations().rows(), labels.size());
    for (std::size_t i = 0; i < full.relations().rows(); ++i)
        for (std::size_t j = 0; j < labels.size(); ++j)
            if (source_col[j] != npos) rel.at(i, j) = full.relations().at(i, source_col[j]);
    return FGAbelianGroup(labels, rel);
}

PageVector kvl_differential_closed_form(const ToyUniverse& u, const KvlElement& x, int r) {
    require_convenient(u, "kvl_differential_closed_form");
    if (r < 1) throw DimensionMismatch("kvl_differential_closed_form: r < 1");
    auto nd = u.dimension_of(x.beta);
    if (!nd) throw UnknownClass("kvl_differential_closed_form: unknown class " + x.beta);
    const int n = *nd;
    if (n - r < 0)
        throw TruncationOverflow("kvl_differential_closed_form: target below filtration 0");
    PageVector out;
    out.group = kvl_page_closed_form(u, r, n - r);
    out.coords = Vec(out.group.n_generators());
    if (x.kind != KvlElement::preimage_difference) return out;  // pi1 and Z/2 classes never bound

    auto da = u.dimension_of(x.alpha), db = u.dimension_of(x.alpha_prime);
    if (!da || !db)
        throw UnknownClass("kvl_differential_closed_form: unknown preimage class");
    if (x.alpha == x.alpha_prime || u.l_image(x.alpha) != x.beta ||
        u.l_image(x.alpha_prime) != x.beta)
        throw UnknownClass("kvl_differential_closed_form: element must be a difference of distinct preimages of " + x.beta);
    const int m = std::min(line_degree(u, x.alpha), line_degree(u, x.alpha_prime));
    if (r <= m) return out;  // vanishing range
    if (r > m + 1)
        throw NotACycle("kvl_differential_closed_form: the difference died on page " +
                        std::to_string(m + 1));
    auto blocks = surviving_blocks(u, r, n - r);
    auto add = [&](const std::string& id, int sign) {
        auto gamma = canonical_preimage(u, id, r - 1);
        if (!gamma) throw LiftFailure("kvl_differential_closed_form: missing l-preimage of " + id);
        for (std::size_t b = 0; b < blocks.size(); ++b)
            if (std::binary_search(blocks[b].begin(), blocks[b].end(), *gamma)) {
                out.coords[b] += sign;
                return;
            }
        // preimage lies in a non-surviving block: zero coordinate
    };
    add(x.alpha, +1);
    add(x.alpha_prime, -1);
    return out;
}

std::map<std::pair<int, int>, FGAbelianGroup> kvl_pages_iterated(const ToyUniverse& u) {
    require_convenient(u, "kvl_pages_iterated");
    const int d = u.max_dimension;
    E1Pages e1 = kvl_e1(u);
    std::map<std::string, int> degree;
    for (const auto& c : u.classes) degree[c.id] = line_degree(u, c.id);

    // cycle lattices at (1, n) and accumulated boundary lattices at (0, n)
    std::vector<IntMatrix> cyc, bdry;
    for (int n = 0; n <= d; ++n) {
        cyc.push_back(IntMatrix::identity(e1.col1[n].group.n_generators()));
        bdry.push_back(IntMatrix(0, e1.col0[n].n_generators()));
    }

    // closed-form d_r of a column-1 vector at (1, n), in E1_{0,n-r} coordinates
    auto d_r_of = [&](int r, int n, const Vec& x) {
        FormalSum support;
        for (const auto& tag : e1.col1[n].tags) {
            if (tag.kind != SummandTag::z_tilde) continue;
            auto pre = u.l_preimages(tag.owner);
            for (std::size_t i = 0; i < tag.count; ++i) {
                const Int& c = x[tag.first + i];
                if (c == 0) continue;
                support[pre[i]] += c;
                support[pre[i + 1]] -= c;
            }
        }
        Vec out(e1.col0[n - r].n_generators());
        for (const auto& [alpha, coeff] : support) {
            if (coeff == 0) continue;
            if (degree[alpha] < r - 1)
                throw LiftFailure("kvl_pages_iterated: a page-" + std::to_string(r) +
                                  " cycle involves " + alpha + " of degree " +
                                  std::to_string(degree[alpha]));
            auto gamma = canonical_preimage(u, alpha, r - 1);
            if (auto idx = e1.col0[n - r].label_index(*gamma)) out[*idx] += coeff;
        }
        return out;
    };

    std::map<std::pair<int, int>, FGAbelianGroup> pages;
    for (int r = 1; r <= d + 1; ++r) {
        for (int n = 0; n + r - 1 <= d; ++n)
            pages.emplace(std::make_pair(r, n),
                          FGAbelianGroup(e1.col0[n].labels(), bdry[n]));
        // page turn: differentials d_r from (1, n) to (0, n - r)
        std::vector<std::pair<int, IntMatrix>> images;  // (target n, image rows)
        std::vector<std::pair<int, IntMatrix>> refined;
        for (int n = r; n <= d; ++n) {
            const IntMatrix& basis = cyc[n];
            IntMatrix img(basis.rows(), e1.col0[n - r].n_generators());
            for (std::size_t i = 0; i < basis.rows(); ++i) {
                Vec v = d_r_of(r, n, basis.row(i));
                for (std::size_t k = 0; k < v.size(); ++k) img.at(i, k) = v[k];
            }
            images.emplace_back(n - r, img);
            // refine: combinations of basis rows whose image is an old boundary
            IntMatrix keep = preimage_rows(img.transposed(), bdry[n - r]);
            IntMatrix next(keep.rows(), basis.cols());
            for (std::size_t i = 0; i < keep.rows(); ++i) {
                Vec v = basis.transposed().apply(keep.row(i));
                for (std::size_t k = 0; k < v.size(); ++k) next.at(i, k) = v[k];
            }
            refined.emplace_back(n, hnf_rows(next));
        }
        for (auto& [n, lat] : refined) cyc[n] = std::move(lat);
        for (auto& [n, img] : images) bdry[n] = lattice_sum(bdry[n], img);
    }
    return pages;
}

ComparisonMap ss_comparison_map(const ToyUniverse& u) {
    E1Pages kv = kv_e1(u);
    E1Pages kvl = kvl_e1(u);
    ComparisonMap out;
    for (int q = 0; q <= u.max_dimension; ++q) {
        IntMatrix m0(kvl.col0[q].n_generators(), kv.col0[q].n_generators());
        for (std::size_t j = 0; j < kv.col0[q].n_generators(); ++j)
            if (auto i = kvl.col0[q].label_index(kv.col0[q].labels()[j])) m0.at(*i, j) = 1;
        out.col0.emplace_back(kv.col0[q], kvl.col0[q], m0);

        IntMatrix m1(kvl.col1[q].group.n_generators(), kv.col1[q].group.n_generators());
        for (const auto& tag : kv.col1[q].tags) {
            // locate the matching target summand for this class
            for (const auto& ttag : kvl.col1[q].tags) {
                if (ttag.owner != tag.owner) continue;
                if (tag.kind == SummandTag::aut_ab && ttag.kind == SummandTag::pi1_ctilde) {
                    for (std::size_t g = 0; g < tag.count; ++g)
                        m1.at(ttag.first + g, tag.first + g) = 1;
                } else if (tag.kind == SummandTag::z2 && ttag.kind == SummandTag::z2) {
                    m1.at(ttag.first, tag.first) = 1;
                }
            }
        }
        out.col1.emplace_back(kv.col1[q].group, kvl.col1[q].group, m1);
    }
    return out;
}

}  // namespace motivic
