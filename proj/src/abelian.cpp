#include "motivic/abelian.hpp"

#include <sstream>

namespace motivic {

FGAbelianGroup::FGAbelianGroup(std::vector<std::string> labels, IntMatrix relations)
    : labels_(std::move(labels)), relations_(std::move(relations)) {
    if (relations_.rows() == 0 && relations_.cols() == 0)
        relations_ = IntMatrix(0, labels_.size());
    if (relations_.cols() != labels_.size())
        throw DimensionMismatch("relation matrix width != generator count");
    SNFDecomposition d = smith_normal_form(relations_);
    free_rank_ = labels_.size() - d.rank();
    for (const Int& f : d.invariant_factors)
        if (f > 1) torsion_.push_back(f);
}

FGAbelianGroup FGAbelianGroup::free_group(std::vector<std::string> labels) {
    std::size_t n = labels.size();
    return FGAbelianGroup(std::move(labels), IntMatrix(0, n));
}

bool FGAbelianGroup::is_zero_element(const Vec& v) const { return in_lattice(v, relations_); }

std::optional<std::size_t> FGAbelianGroup::label_index(const std::string& name) const {
    for (std::size_t i = 0; i < labels_.size(); ++i)
        if (labels_[i] == name) return i;
    return std::nullopt;
}

bool isomorphic(const FGAbelianGroup& g, const FGAbelianGroup& h) {
    return g.isomorphism_invariants() == h.isomorphism_invariants();
}

std::pair<std::size_t, std::vector<Int>> isomorphism_invariants(const FGAbelianGroup& g) {
    return g.isomorphism_invariants();
}

std::string format_combination(const Vec& v, const std::vector<std::string>& labels) {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] == 0) continue;
        Int a = abs(v[i]);
        if (first) {
            if (v[i] < 0) os << "-";
            first = false;
        } else {
            os << (v[i] < 0 ? " - " : " + ");
        }
        if (a != 1) os << a << "*";
        os << labels[i];
    }
    if (first) os << "0";
    return os.str();
}

GroupHom::GroupHom(FGAbelianGroup source, FGAbelianGroup target, IntMatrix matrix)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
    if (matrix_.rows() == 0 && matrix_.cols() == 0)
        matrix_ = IntMatrix(target_.n_generators(), source_.n_generators());
    if (matrix_.rows() != target_.n_generators() || matrix_.cols() != source_.n_generators())
        throw DimensionMismatch("hom matrix shape");
}

GroupHom GroupHom::zero(FGAbelianGroup source, FGAbelianGroup target) {
    IntMatrix m(target.n_generators(), source.n_generators());
    return GroupHom(std::move(source), std::move(target), std::move(m));
}

GroupHom GroupHom::identity(const FGAbelianGroup& g) {
    return GroupHom(g, g, IntMatrix::identity(g.n_generators()));
}

bool GroupHom::well_defined() const {
    for (std::size_t i = 0; i < source_.relations().rows(); ++i)
        if (!in_lattice(matrix_.apply(source_.relations().row(i)), target_.relations()))
            return false;
    return true;
}

IntMatrix GroupHom::image_lattice() const {
    return lattice_sum(matrix_.transposed(), target_.relations());
}

GroupHom compose(const GroupHom& g, const GroupHom& h) {
    if (g.source().n_generators() != h.target().n_generators())
        throw DimensionMismatch("compose: middle groups disagree");
    return GroupHom(h.source(), g.target(), g.matrix() * h.matrix());
}

SubgroupResult kernel_of_hom(const GroupHom& h) {
    if (!h.well_defined()) throw IllFormedHom("kernel_of_hom: hom not well-defined");
    // sublattice of the source mapping into the target relation lattice
    IntMatrix p = preimage_rows(h.matrix(), h.target().relations());
    // relations among the chosen generators, modulo source relations
    IntMatrix rel = preimage_rows(p.transposed(), h.source().relations());
    std::vector<std::string> labels;
    labels.reserve(p.rows());
    for (std::size_t i = 0; i < p.rows(); ++i)
        labels.push_back(format_combination(p.row(i), h.source().labels()));
    FGAbelianGroup kernel(std::move(labels), rel);
    GroupHom embedding(kernel, h.source(), p.transposed());
    return {std::move(kernel), std::move(embedding)};
}

SubgroupResult cokernel_of_hom(const GroupHom& h) {
    if (!h.well_defined()) throw IllFormedHom("cokernel_of_hom: hom not well-defined");
    IntMatrix rel = h.target().relations().vstack(h.matrix().transposed());
    FGAbelianGroup coker(h.target().labels(), rel);
    GroupHom projection(h.target(), coker, IntMatrix::identity(h.target().n_generators()));
    return {std::move(coker), std::move(projection)};
}

}  // namespace motivic
