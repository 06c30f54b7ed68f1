#include "weylbott/bundle.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace weylbott {

IrreducibleBundle::IrreducibleBundle(const ParabolicDatum& p, Weight hw)
    : parabolic_(&p), hw_(std::move(hw)) {
    if (!p.ambient().is_lattice_weight(hw_))
        throw std::invalid_argument("bundle weight not in the weight lattice: " + hw_.str());
    if (!p.is_levi_dominant(hw_))
        throw std::invalid_argument("bundle weight not L-dominant: " + hw_.str());
}

IrreducibleBundle IrreducibleBundle::from_coords(const ParabolicDatum& p,
                                                 const std::vector<long>& nonk, long twist) {
    const auto& d = p.ambient();
    if (nonk.size() + 1 != std::size_t(d.rank()))
        throw std::invalid_argument("bundle coordinate arity mismatch");
    std::vector<long> full(std::size_t(d.rank()), 0);
    std::size_t j = 0;
    for (int i = 0; i < d.rank(); ++i)
        full[std::size_t(i)] = (i == p.k_index()) ? twist : nonk[j++];
    return IrreducibleBundle(p, d.from_fundamental_long(full));
}

IrreducibleBundle IrreducibleBundle::structure_sheaf(const ParabolicDatum& p, long twist) {
    std::vector<long> nonk(std::size_t(p.ambient().rank()) - 1, 0);
    return from_coords(p, nonk, twist);
}

long IrreducibleBundle::twist() const {
    return to_long(to_int(parabolic_->ambient().fundamental_coord(hw_, parabolic_->k_index())));
}

std::vector<long> IrreducibleBundle::nonk_coords() const {
    std::vector<long> out;
    for (int i = 0; i < parabolic_->ambient().rank(); ++i)
        if (i != parabolic_->k_index())
            out.push_back(to_long(to_int(parabolic_->ambient().fundamental_coord(hw_, i))));
    return out;
}

bool IrreducibleBundle::is_line_bundle() const {
    for (long a : nonk_coords())
        if (a != 0) return false;
    return true;
}

IrreducibleBundle IrreducibleBundle::twisted(long t) const {
    Weight w = hw_;
    Weight omega = parabolic_->omega_k();
    omega *= Rat(t);
    w += omega;
    return IrreducibleBundle(*parabolic_, std::move(w));
}

std::string IrreducibleBundle::str() const {
    long t = twist();
    std::ostringstream os;
    if (is_line_bundle()) {
        os << "O";
        if (t != 0) os << "(" << t << ")";
        return os.str();
    }
    os << "U[";
    auto c = nonk_coords();
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i) os << ",";
        os << c[i];
    }
    os << "]";
    if (t != 0) os << "(" << t << ")";
    return os.str();
}

bool IrreducibleBundle::operator<(const IrreducibleBundle& o) const {
    return std::make_pair(twist(), nonk_coords()) < std::make_pair(o.twist(), o.nonk_coords());
}

BundleSum& BundleSum::add(const IrreducibleBundle& b, Int mult) {
    if (mult == 0) return *this;
    auto it = terms_.find(b);
    if (it == terms_.end())
        terms_.emplace(b, std::move(mult));
    else {
        it->second += mult;
        if (it->second == 0) terms_.erase(it);
    }
    return *this;
}

BundleSum& BundleSum::add(const BundleSum& o, const Int& mult) {
    for (const auto& [b, m] : o.terms_) add(b, m * mult);
    return *this;
}

BundleSum BundleSum::single(const IrreducibleBundle& b) {
    BundleSum s(b.parabolic());
    s.add(b);
    return s;
}

bool BundleSum::is_non_virtual() const {
    for (const auto& [b, m] : terms_)
        if (m < 0) return false;
    return true;
}

Int BundleSum::rank() const {
    Int r = 0;
    for (const auto& [b, m] : terms_) r += m * rank_bundle(b);
    return r;
}

BundleSum BundleSum::twisted(long t) const {
    BundleSum out(*parabolic_);
    for (const auto& [b, m] : terms_) out.add(b.twisted(t), m);
    return out;
}

BundleSum BundleSum::dual() const {
    BundleSum out(*parabolic_);
    for (const auto& [b, m] : terms_) out.add(dual_bundle(b), m);
    return out;
}

VirtualCharacter BundleSum::character() const {
    const auto& levi = WeightSystem::levi(*parabolic_);
    VirtualCharacter out;
    for (const auto& [b, m] : terms_)
        for (const auto& [w, c] : irreducible_character(levi, b.highest_weight()).entries()) {
            Int v = m * c;
            auto it = out.find(w);
            if (it == out.end())
                out.emplace(w, v);
            else {
                it->second += v;
                if (it->second == 0) out.erase(it);
            }
        }
    return out;
}

std::string BundleSum::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [b, m] : terms_) {
        if (!first) os << " + ";
        first = false;
        if (m != 1) os << m.str() << "*";
        os << b.str();
    }
    return os.str();
}

Rat central_charge(const ParabolicDatum& p, const Weight& w) { return p.central_charge(w); }

IrreducibleBundle dual_bundle(const IrreducibleBundle& b) {
    return IrreducibleBundle(b.parabolic(), -b.parabolic().longest_levi_image(b.highest_weight()));
}

Int rank_bundle(const IrreducibleBundle& b) {
    return dimension(WeightSystem::levi(b.parabolic()), b.highest_weight());
}

namespace {

// lift a decomposition over the standalone semisimple part back to the full
// Levi lattice, fixing the central coordinate to `charge`
BundleSum lift_with_charge(const ParabolicDatum& p, const WeightSystem& standalone,
                           const Decomposition& dec, const Rat& charge) {
    BundleSum out(p);
    for (const auto& [nu_prime, m] : dec.terms) {
        std::vector<std::vector<Rat>> comps{standalone.datum().fundamental_coords(nu_prime)};
        Weight nu = p.lift_from_components(comps);
        Rat correction = charge - p.central_charge(nu);
        if (!is_integer(correction))
            throw std::logic_error("non-integral central correction " + correction.str());
        Weight hw = nu;
        Weight omega = p.omega_k();
        omega *= correction;
        hw += omega;
        out.add(IrreducibleBundle(p, std::move(hw)), m);
    }
    return out;
}

const WeightSystem& single_component_system(const ParabolicDatum& p) {
    if (p.levi_components().size() != 1)
        throw std::logic_error("central-charge route needs a simple semisimple Levi part");
    return WeightSystem::full(*p.levi_components()[0].standalone);
}

Weight project_single(const ParabolicDatum& p, const Weight& hw) {
    auto comps = p.project_to_components(hw);
    return p.levi_components()[0].standalone->from_fundamental(comps[0]);
}

} // namespace

BundleSum tensor_bundles(const IrreducibleBundle& a, const IrreducibleBundle& b,
                         TensorRoute route) {
    const ParabolicDatum& p = a.parabolic();
    if (&p != &b.parabolic())
        throw std::invalid_argument("tensor of bundles over different parabolics");

    BundleSum klimyk(p), central(p);
    if (route != TensorRoute::CentralCharge) {
        const auto& levi = WeightSystem::levi(p);
        Decomposition d = tensor_decompose(levi, a.highest_weight(), b.highest_weight());
        for (const auto& [hw, m] : d.terms) klimyk.add(IrreducibleBundle(p, hw), m);
        if (route == TensorRoute::Klimyk) return klimyk;
    }
    {
        const auto& standalone = single_component_system(p);
        Decomposition d = tensor_decompose(standalone, project_single(p, a.highest_weight()),
                                           project_single(p, b.highest_weight()));
        Rat charge = p.central_charge(a.highest_weight()) + p.central_charge(b.highest_weight());
        central = lift_with_charge(p, standalone, d, charge);
        if (route == TensorRoute::CentralCharge) return central;
    }
    if (!(klimyk == central))
        throw std::logic_error("tensor route mismatch: " + klimyk.str() + " vs " + central.str());
    return klimyk;
}

BundleSum tensor_bundles(const BundleSum& a, const BundleSum& b, TensorRoute route) {
    BundleSum out(a.parabolic());
    for (const auto& [ba, ma] : a.terms())
        for (const auto& [bb, mb] : b.terms())
            out.add(tensor_bundles(ba, bb, route), ma * mb);
    return out;
}

namespace {

BundleSum power_bundle(const IrreducibleBundle& b, long k, bool exterior, TensorRoute route) {
    const ParabolicDatum& p = b.parabolic();
    if (k < 0) throw std::invalid_argument("power exponent must be non-negative");
    if (exterior && Int(k) > rank_bundle(b))
        throw std::invalid_argument("exterior power exceeds bundle rank");

    BundleSum klimyk(p), central(p);
    if (route != TensorRoute::CentralCharge) {
        const auto& levi = WeightSystem::levi(p);
        Decomposition d = exterior ? exterior_power(levi, b.highest_weight(), k)
                                   : symmetric_power(levi, b.highest_weight(), k);
        for (const auto& [hw, m] : d.terms) klimyk.add(IrreducibleBundle(p, hw), m);
        if (route == TensorRoute::Klimyk) return klimyk;
    }
    {
        const auto& standalone = single_component_system(p);
        Weight proj = project_single(p, b.highest_weight());
        Decomposition d = exterior ? exterior_power(standalone, proj, k)
                                   : symmetric_power(standalone, proj, k);
        Rat charge = Rat(k) * p.central_charge(b.highest_weight());
        central = lift_with_charge(p, standalone, d, charge);
        if (route == TensorRoute::CentralCharge) return central;
    }
    if (!(klimyk == central))
        throw std::logic_error("power route mismatch: " + klimyk.str() + " vs " + central.str());
    return klimyk;
}

} // namespace

BundleSum exterior_bundle(const IrreducibleBundle& b, long k, TensorRoute route) {
    return power_bundle(b, k, true, route);
}

BundleSum symmetric_bundle(const IrreducibleBundle& b, long k, TensorRoute route) {
    return power_bundle(b, k, false, route);
}

// ---------------------------------------------------------------------------
// grammar

namespace {

struct Cursor {
    const std::string& s;
    std::size_t i = 0;
    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool eat(char c) {
        skip_ws();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& what) const {
        throw std::invalid_argument("bundle grammar error at index " + std::to_string(i) + ": " +
                                    what + " in '" + s + "'");
    }
    long integer() {
        skip_ws();
        std::size_t start = i;
        if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (start == i) fail("expected integer");
        return std::stol(s.substr(start, i - start));
    }
    bool done() {
        skip_ws();
        return i >= s.size();
    }
};

IrreducibleBundle parse_one(const ParabolicDatum& p, Cursor& c) {
    c.skip_ws();
    std::vector<long> nonk(std::size_t(p.ambient().rank()) - 1, 0);
    if (c.i < c.s.size() && c.s[c.i] == 'O') {
        ++c.i;
    } else if (c.i < c.s.size() && c.s[c.i] == 'U') {
        ++c.i;
        if (!c.eat('[')) c.fail("expected '['");
        for (std::size_t j = 0; j < nonk.size(); ++j) {
            nonk[j] = c.integer();
            if (j + 1 < nonk.size() && !c.eat(',')) c.fail("expected ','");
        }
        if (!c.eat(']')) c.fail("expected ']'");
    } else {
        c.fail("expected 'O' or 'U'");
    }
    long t = 0;
    if (c.eat('(')) {
        t = c.integer();
        if (!c.eat(')')) c.fail("expected ')'");
    }
    return IrreducibleBundle::from_coords(p, nonk, t);
}

} // namespace

IrreducibleBundle parse_bundle(const ParabolicDatum& p, const std::string& text) {
    Cursor c{text};
    IrreducibleBundle b = parse_one(p, c);
    if (!c.done()) c.fail("trailing input");
    return b;
}

BundleSum parse_bundle_sum(const ParabolicDatum& p, const std::string& text) {
    Cursor c{text};
    BundleSum out(p);
    while (true) {
        c.skip_ws();
        Int mult = 1;
        std::size_t save = c.i;
        if (c.i < c.s.size() && (std::isdigit(static_cast<unsigned char>(c.s[c.i])) || c.s[c.i] == '-')) {
            long m = c.integer();
            if (c.eat('*'))
                mult = m;
            else
                c.i = save;
        }
        out.add(parse_one(p, c), mult);
        if (c.done()) break;
        if (!c.eat('+')) c.fail("expected '+'");
    }
    return out;
}

} // namespace weylbott
