#include "weylbott/cohomology.hpp"

#include <sstream>

namespace weylbott {

void GradedRepTable::add(long degree, const Weight& hw, Int mult) {
    if (mult == 0) return;
    auto& slot = entries_[degree];
    auto it = slot.find(hw);
    if (it == slot.end())
        slot.emplace(hw, std::move(mult));
    else {
        it->second += mult;
        if (it->second == 0) slot.erase(it);
    }
    if (entries_[degree].empty()) entries_.erase(degree);
}

void GradedRepTable::add(const GradedRepTable& o, const Int& mult) {
    if (!group_) group_ = o.group_;
    for (const auto& [d, ws] : o.entries_)
        for (const auto& [hw, m] : ws) add(d, hw, m * mult);
}

Int GradedRepTable::dimension_at(long degree) const {
    auto it = entries_.find(degree);
    if (it == entries_.end()) return 0;
    Int s = 0;
    const auto& full = WeightSystem::full(*group_);
    for (const auto& [hw, m] : it->second) s += m * dimension(full, hw);
    return s;
}

Int GradedRepTable::total_dimension() const {
    Int s = 0;
    for (const auto& [d, ws] : entries_) s += dimension_at(d);
    return s;
}

Int GradedRepTable::euler_characteristic() const {
    Int s = 0;
    for (const auto& [d, ws] : entries_) {
        Int v = dimension_at(d);
        s += (d % 2 == 0) ? v : -v;
    }
    return s;
}

bool GradedRepTable::is_single_trivial(long degree) const {
    if (entries_.size() != 1) return false;
    auto it = entries_.find(degree);
    if (it == entries_.end() || it->second.size() != 1) return false;
    const auto& [hw, m] = *it->second.begin();
    return hw.is_zero() && m == 1;
}

GradedRepTable GradedRepTable::serre_transformed(long n) const {
    GradedRepTable out(*group_);
    const RatMatrix& w0 = group_->w0_matrix();
    for (const auto& [d, ws] : entries_)
        for (const auto& [hw, m] : ws)
            out.add(n - d, -w0.apply(hw), m);
    return out;
}

std::string GradedRepTable::str() const {
    if (entries_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [d, ws] : entries_) {
        for (const auto& [hw, m] : ws) {
            if (!first) os << " + ";
            first = false;
            if (m != 1) os << m.str() << "*";
            if (hw.is_zero())
                os << "k";
            else {
                os << "V[";
                auto a = group_->fundamental_coords(hw);
                for (std::size_t i = 0; i < a.size(); ++i) {
                    if (i) os << ",";
                    os << a[i].str();
                }
                os << "]";
            }
            os << "[" << -d << "]";
        }
    }
    return os.str();
}

GradedRepTable cohomology(const IrreducibleBundle& b) {
    const auto& d = b.parabolic().ambient();
    GradedRepTable out(d);
    Dominantization dom = d.dominantize(b.highest_weight() + d.rho());
    if (dom.singular) return out;
    out.add(dom.length, dom.dominant - d.rho());
    return out;
}

GradedRepTable cohomology(const BundleSum& s) {
    GradedRepTable out(s.parabolic().ambient());
    for (const auto& [b, m] : s.terms()) out.add(cohomology(b), m);
    return out;
}

GradedRepTable ext_semisimple(const BundleSum& a, const BundleSum& b) {
    GradedRepTable out(a.parabolic().ambient());
    for (const auto& [ta, ma] : a.terms())
        for (const auto& [tb, mb] : b.terms())
            out.add(cohomology(tensor_bundles(BundleSum::single(tb),
                                              BundleSum::single(dual_bundle(ta)),
                                              TensorRoute::Klimyk)),
                    ma * mb);
    return out;
}

GradedRepTable ext_semisimple(const IrreducibleBundle& a, const IrreducibleBundle& b) {
    return ext_semisimple(BundleSum::single(a), BundleSum::single(b));
}

std::vector<AcyclicityVerdict> acyclicity_scan(const ParabolicDatum& p,
                                               const std::vector<long>& nonk, long lo, long hi) {
    if (lo > hi) throw std::invalid_argument("empty acyclicity scan range");
    std::vector<AcyclicityVerdict> out;
    for (long t = lo; t <= hi; ++t) {
        IrreducibleBundle b = IrreducibleBundle::from_coords(p, nonk, t);
        GradedRepTable h = cohomology(b);
        AcyclicityVerdict v;
        v.twist = t;
        v.acyclic = h.empty();
        if (!v.acyclic) {
            v.degree = h.entries().begin()->first;
            v.dim = h.dimension_at(v.degree);
        }
        out.push_back(std::move(v));
    }
    return out;
}

SerreReport serre_check(const IrreducibleBundle& b) {
    const auto& p = b.parabolic();
    long n = long(p.dim_gp());
    GradedRepTable lhs = cohomology(b);
    GradedRepTable rhs = cohomology(BundleSum::single(dual_bundle(b)).twisted(-p.fano_index()));
    GradedRepTable partner = rhs.serre_transformed(n);
    SerreReport rep;
    rep.ok = lhs == partner;
    std::ostringstream os;
    os << b.str() << ": H = " << lhs.str() << ", Serre partner = " << partner.str();
    rep.detail = os.str();
    return rep;
}

} // namespace weylbott
