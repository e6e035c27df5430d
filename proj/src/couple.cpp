#include "motivic/couple.hpp"

#include <sstream>

namespace motivic {

namespace {

std::string q_label(const char* what, int q) {
    std::ostringstream os;
    os << what << " at q=" << q;
    return os.str();
}

void check_shapes(const TwoColumnCouple& c) {
    const std::size_t n = c.a_tower.size();
    if (n == 0) throw DimensionMismatch("couple: empty tower");
    if (c.iota.size() + 1 != n || c.e1_col0.size() != n || c.e1_col1.size() != n ||
        c.p_maps.size() != n || c.bdry.size() != n)
        throw DimensionMismatch("couple: component counts disagree");
    for (std::size_t q = 0; q + 1 < n; ++q) {
        if (c.iota[q].source().n_generators() != c.a_tower[q].n_generators() ||
            c.iota[q].target().n_generators() != c.a_tower[q + 1].n_generators())
            throw DimensionMismatch(q_label("couple: iota shape", static_cast<int>(q)));
    }
    for (std::size_t q = 0; q < n; ++q) {
        if (c.p_maps[q].source().n_generators() != c.a_tower[q].n_generators() ||
            c.p_maps[q].target().n_generators() != c.e1_col0[q].n_generators())
            throw DimensionMismatch(q_label("couple: p shape", static_cast<int>(q)));
        std::size_t tgt = q == 0 ? 0 : c.a_tower[q - 1].n_generators();
        if (c.bdry[q].source().n_generators() != c.e1_col1[q].n_generators() ||
            c.bdry[q].target().n_generators() != tgt)
            throw DimensionMismatch(q_label("couple: bdry shape", static_cast<int>(q)));
    }
}

}  // namespace

std::vector<Violation> check_exactness(const TwoColumnCouple& c) {
    check_shapes(c);
    std::vector<Violation> out;
    const int d = c.max_q();
    for (int q = 0; q <= d; ++q) {
        const FGAbelianGroup& aq = c.a_tower[q];
        // im(iota) = ker(p); at q = 0 the incoming iota is from the zero group
        IntMatrix im_iota = q == 0 ? hnf_rows(aq.relations())
                                   : c.iota[q - 1].image_lattice();
        IntMatrix ker_p = preimage_rows(c.p_maps[q].matrix(), c.e1_col0[q].relations());
        if (!lattice_equal(im_iota, ker_p))
            out.push_back({"exactness", q_label("im(iota)=ker(p)", q), "stair-step fails"});
        // p surjective
        FGAbelianGroup coker_p(c.e1_col0[q].labels(),
                               c.e1_col0[q].relations().vstack(c.p_maps[q].matrix().transposed()));
        if (!coker_p.is_trivial())
            out.push_back({"exactness", q_label("p surjective", q), "p is not onto"});
        // im(bdry_{q+1}) = ker(iota_q) inside A_{0,q}
        if (q < d) {
            IntMatrix im_b = c.bdry[q + 1].image_lattice();
            IntMatrix ker_i = preimage_rows(c.iota[q].matrix(), c.a_tower[q + 1].relations());
            if (!lattice_equal(im_b, ker_i))
                out.push_back({"exactness", q_label("im(bdry)=ker(iota)", q + 1), "stair-step fails"});
        }
    }
    return out;
}

PageEngine::PageEngine(const TwoColumnCouple& c) : c_(c) { check_shapes(c); }

IntMatrix PageEngine::composite_matrix(int from, int to) const {
    auto key = std::make_pair(from, to);
    if (auto it = composites_.find(key); it != composites_.end()) return it->second;
    IntMatrix m = IntMatrix::identity(c_.a_tower[from].n_generators());
    for (int q = from; q < to; ++q) m = c_.iota[q].matrix() * m;
    composites_.emplace(key, m);
    return composites_.at(key);
}

IntMatrix PageEngine::kernel_of_composite(int from, int to) const {
    return preimage_rows(composite_matrix(from, to), c_.a_tower[to].relations());
}

IntMatrix PageEngine::cycle_lattice(int r, int q) const {
    if (r < 1) throw DimensionMismatch("cycle_lattice: r < 1");
    r = std::min(r, q + 1);  // stabilizes once differentials leave the tower
    auto key = std::make_pair(r, q);
    if (auto it = cycles_.find(key); it != cycles_.end()) return it->second;
    const std::size_t n = c_.e1_col1[q].n_generators();
    IntMatrix result;
    if (r == 1 || q == 0) {
        result = IntMatrix::identity(n);
    } else {
        // { x : bdry(x) in im(iota^{r-1}) + relations } inside A_{0,q-1}
        const int src = q - r;  // may be -1: image is then zero
        IntMatrix target = c_.a_tower[q - 1].relations();
        if (src >= 0) target = target.vstack(composite_matrix(src, q - 1).transposed());
        result = preimage_rows(c_.bdry[q].matrix(), hnf_rows(target));
    }
    cycles_.emplace(key, result);
    return cycles_.at(key);
}

IntMatrix PageEngine::boundary_lattice(int r, int q) const {
    if (r < 1) throw DimensionMismatch("boundary_lattice: r < 1");
    const int d = c_.max_q();
    int j = std::min(r - 1, d - q);  // no sources above the tower
    if (j < 0) j = 0;
    auto key = std::make_pair(j, q);
    if (auto it = boundaries_.find(key); it != boundaries_.end()) return it->second;
    // p(ker(iota^j)) + relations of E1_{0,q}
    IntMatrix ker = kernel_of_composite(q, q + j);
    IntMatrix rows(ker.rows(), c_.e1_col0[q].n_generators());
    for (std::size_t i = 0; i < ker.rows(); ++i) {
        Vec img = c_.p_maps[q].apply(ker.row(i));
        for (std::size_t k = 0; k < img.size(); ++k) rows.at(i, k) = img[k];
    }
    IntMatrix result = lattice_sum(rows, c_.e1_col0[q].relations());
    boundaries_.emplace(key, result);
    return boundaries_.at(key);
}

std::optional<PageElement> PageEngine::differential(const PageElement& x, int r) const {
    if (x.pos.p != 1) throw DimensionMismatch("differential: source must lie in column 1");
    if (r < 1) throw DimensionMismatch("differential: r < 1");
    const int q = x.pos.q;
    if (q < 0 || q > c_.max_q()) throw DimensionMismatch("differential: q out of range");
    if (x.rep.size() != c_.e1_col1[q].n_generators())
        throw DimensionMismatch("differential: representative length");
    if (q - r < 0) return std::nullopt;

    if (!in_lattice(x.rep, cycle_lattice(r, q)))
        throw NotACycle("differential: element does not survive to the requested page");

    Vec v = c_.bdry[q].apply(x.rep);
    // lift r-1 times: before step k the value sits in A_{0,q-k}
    for (int k = 1; k <= r - 1; ++k) {
        const int level = q - k;
        const IntMatrix& m_iota = c_.iota[level - 1].matrix();  // a[level-1] -> a[level]
        // slack: ker(iota^{k-1} : A_{0,level} -> A_{0,q-1}); for k = 1 this is the relation lattice
        IntMatrix slack = kernel_of_composite(level, q - 1);
        IntMatrix sys(m_iota.rows(), m_iota.cols() + slack.rows());
        for (std::size_t i = 0; i < m_iota.rows(); ++i) {
            for (std::size_t jx = 0; jx < m_iota.cols(); ++jx) sys.at(i, jx) = m_iota.at(i, jx);
            for (std::size_t js = 0; js < slack.rows(); ++js)
                sys.at(i, m_iota.cols() + js) = slack.at(js, i);
        }
        auto sol = solve_column(sys, v);
        if (!sol) throw LiftFailure(q_label("differential: iota lift failed", level));
        Vec w(m_iota.cols());
        for (std::size_t i = 0; i < w.size(); ++i) w[i] = (*sol)[i];
        v = std::move(w);
    }
    PageElement out;
    out.page = r;
    out.pos = {0, q - r};
    out.rep = c_.p_maps[q - r].apply(v);
    return out;
}

PageGroup PageEngine::page(int r, int p, int q) const {
    if (r < 1) throw DimensionMismatch("page: r < 1");
    if (q < 0 || q > c_.max_q() || (p != 0 && p != 1)) throw DimensionMismatch("page: bad position");
    PageGroup out;
    out.pos = {p, q};
    out.page = r;
    if (p == 0) {
        IntMatrix bl = boundary_lattice(r, q);
        out.group = FGAbelianGroup(c_.e1_col0[q].labels(), bl);
        out.cycle_lattice = IntMatrix::identity(c_.e1_col0[q].n_generators());
        out.boundary_lattice = bl;
    } else {
        IntMatrix cl = cycle_lattice(r, q);
        IntMatrix rel = preimage_rows(cl.transposed(), c_.e1_col1[q].relations());
        std::vector<std::string> labels;
        labels.reserve(cl.rows());
        for (std::size_t i = 0; i < cl.rows(); ++i)
            labels.push_back(format_combination(cl.row(i), c_.e1_col1[q].labels()));
        out.group = FGAbelianGroup(std::move(labels), rel);
        out.cycle_lattice = cl;
        out.boundary_lattice = hnf_rows(c_.e1_col1[q].relations());
    }
    return out;
}

std::map<std::pair<int, int>, PageGroup> PageEngine::e_infinity() const {
    std::map<std::pair<int, int>, PageGroup> out;
    const int d = c_.max_q();
    for (int q = 0; q <= d; ++q) {
        out.emplace(std::make_pair(0, q), page(std::max(1, d - q + 1), 0, q));
        out.emplace(std::make_pair(1, q), page(q + 1, 1, q));
    }
    return out;
}

bool PageEngine::is_zero(const PageElement& x) const {
    if (x.pos.p == 0) return in_lattice(x.rep, boundary_lattice(x.page, x.pos.q));
    return in_lattice(x.rep, c_.e1_col1[x.pos.q].relations());
}

std::optional<PageElement> differential(const TwoColumnCouple& c, const PageElement& x, int r) {
    return PageEngine(c).differential(x, r);
}

PageGroup page(const TwoColumnCouple& c, int r, int p, int q) { return PageEngine(c).page(r, p, q); }

std::map<std::pair<int, int>, PageGroup> e_infinity(const TwoColumnCouple& c) {
    return PageEngine(c).e_infinity();
}

}  // namespace motivic
