#include "weylbott/character.hpp"

#include <algorithm>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>

namespace weylbott {

WeightSystem::WeightSystem(const RootDatum& d, std::vector<int> walls,
                           std::vector<Weight> positives, std::string key)
    : datum_(&d), walls_(std::move(walls)), positives_(std::move(positives)), key_(std::move(key)) {
    rho_ = Weight::zero(d.ambient_dim());
    for (const auto& r : positives_) rho_ += r;
    rho_ *= Rat(1, 2);
    for (const auto& r : positives_) positives_scaled_.push_back(d.to_scaled(r));
    rho_scaled_ = d.to_scaled(rho_);
}

const WeightSystem& WeightSystem::full(const RootDatum& d) {
    static std::mutex mtx;
    static std::map<std::string, std::unique_ptr<WeightSystem>> cache;
    std::lock_guard<std::mutex> lock(mtx);
    std::string key = d.name();
    auto it = cache.find(key);
    if (it == cache.end()) {
        auto sys = std::unique_ptr<WeightSystem>(
            new WeightSystem(d, d.all_walls(), d.positive_roots(), key));
        it = cache.emplace(key, std::move(sys)).first;
    }
    return *it->second;
}

const WeightSystem& WeightSystem::levi(const ParabolicDatum& p) {
    static std::mutex mtx;
    static std::map<std::string, std::unique_ptr<WeightSystem>> cache;
    std::lock_guard<std::mutex> lock(mtx);
    std::string key = p.name() + ":levi";
    auto it = cache.find(key);
    if (it == cache.end()) {
        auto sys = std::unique_ptr<WeightSystem>(
            new WeightSystem(p.ambient(), p.levi_walls(), p.levi_positive_roots(), key));
        it = cache.emplace(key, std::move(sys)).first;
    }
    return *it->second;
}

Int DominantCharacter::multiplicity_scaled(const std::vector<long>& w) const {
    std::vector<long> v = w;
    system_->datum().scaled_dominantize(v, system_->walls());
    auto it = mults_.find(v);
    return it == mults_.end() ? Int(0) : it->second;
}

Int Character::multiplicity(const Weight& w) const {
    auto it = entries_.find(w);
    return it == entries_.end() ? Int(0) : it->second;
}

Int Decomposition::total_dimension(const WeightSystem& sys) const {
    Int d = 0;
    for (const auto& [hw, m] : terms) d += m * dimension(sys, hw);
    return d;
}

namespace {

long sdot(const std::vector<long>& a, const std::vector<long>& b) {
    long s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

std::vector<long> sadd(const std::vector<long>& a, const std::vector<long>& b, long k = 1) {
    std::vector<long> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + k * b[i];
    return out;
}

// Dominant candidates hw - sum c_i alpha_i with 0 <= c <= box, where the box
// is hw - w0(hw) in the simple-root basis.
std::vector<std::vector<long>> dominant_candidates_scaled(const WeightSystem& sys,
                                                          const Weight& hw) {
    const auto& d = sys.datum();
    std::vector<long> lowest = d.to_scaled(-hw);
    d.scaled_dominantize(lowest, sys.walls());
    for (auto& x : lowest) x = -x;

    auto boxco = d.simple_root_coords(hw - d.from_scaled(lowest));
    if (!boxco) throw std::logic_error("hw - lowest not in root span");
    std::vector<long> box;
    for (int i : sys.walls()) box.push_back(to_long(to_int((*boxco)[std::size_t(i)])));

    std::vector<long> top = d.to_scaled(hw);
    std::vector<std::vector<long>> out;
    std::vector<long> c(box.size(), 0);
    while (true) {
        std::vector<long> mu = top;
        for (std::size_t j = 0; j < c.size(); ++j)
            if (c[j]) mu = sadd(mu, d.simple_roots_scaled()[std::size_t(sys.walls()[j])], -c[j]);
        if (d.scaled_is_dominant(mu, sys.walls())) out.push_back(std::move(mu));
        std::size_t j = 0;
        for (; j < c.size(); ++j) {
            if (c[j] < box[j]) { ++c[j]; break; }
            c[j] = 0;
        }
        if (j == c.size()) break;
    }
    return out;
}

} // namespace

const DominantCharacter& dominant_character(const WeightSystem& sys, const Weight& hw) {
    static std::mutex mtx;
    static std::map<std::pair<std::string, Weight>, std::unique_ptr<DominantCharacter>> cache;
    {
        std::lock_guard<std::mutex> lock(mtx);
        auto it = cache.find({sys.key(), hw});
        if (it != cache.end()) return *it->second;
    }
    if (!sys.is_dominant(hw))
        throw std::invalid_argument("highest weight not dominant for " + sys.key() + ": " + hw.str());

    auto chi = std::make_unique<DominantCharacter>();
    chi->system_ = &sys;
    chi->hw_ = hw;
    chi->dim_ = dimension(sys, hw);

    const auto& d = sys.datum();
    const auto& rho = sys.rho_scaled();
    std::vector<long> top = d.to_scaled(hw);
    std::vector<long> top_shift = sadd(top, rho);
    long top_norm = sdot(top_shift, top_shift);

    auto candidates = dominant_candidates_scaled(sys, hw);
    // process by decreasing |mu + rho|^2: Freudenthal consumes weights
    // strictly closer to hw first
    std::vector<std::pair<long, std::vector<long>>> order;
    for (auto& mu : candidates) {
        std::vector<long> s = sadd(mu, rho);
        order.emplace_back(-sdot(s, s), std::move(mu));
    }
    std::sort(order.begin(), order.end());

    for (auto& [negnorm, mu] : order) {
        if (mu == top) {
            chi->mults_[mu] = 1;
            continue;
        }
        long denom = top_norm - (-negnorm);
        if (denom == 0) continue; // shares a norm with hw + rho: not a weight
        Int rhs = 0;
        for (const auto& alpha : sys.positives_scaled()) {
            long mu_a = sdot(mu, alpha);
            long a_a = sdot(alpha, alpha);
            for (long j = 1;; ++j) {
                std::vector<long> nu = sadd(mu, alpha, j);
                std::vector<long> nu_shift = sadd(nu, rho);
                if (sdot(nu_shift, nu_shift) > top_norm) break;
                d.scaled_dominantize(nu, sys.walls());
                auto it = chi->mults_.find(nu);
                if (it != chi->mults_.end()) rhs += it->second * (mu_a + j * a_a);
            }
        }
        Int m = 2 * rhs;
        if (m % denom != 0) throw std::logic_error("inexact Freudenthal division");
        m /= denom;
        if (m < 0) throw std::logic_error("negative Freudenthal multiplicity");
        if (m > 0) chi->mults_[mu] = m;
    }

    std::lock_guard<std::mutex> lock(mtx);
    auto [it, inserted] = cache.emplace(std::make_pair(sys.key(), hw), std::move(chi));
    return *it->second;
}

const Character& irreducible_character(const WeightSystem& sys, const Weight& hw) {
    static std::mutex mtx;
    static std::map<std::pair<std::string, Weight>, std::unique_ptr<Character>> cache;
    {
        std::lock_guard<std::mutex> lock(mtx);
        auto it = cache.find({sys.key(), hw});
        if (it != cache.end()) return *it->second;
    }
    const DominantCharacter& dom = dominant_character(sys, hw);

    auto chi = std::make_unique<Character>();
    chi->system_ = &sys;
    chi->hw_ = hw;
    const auto& d = sys.datum();
    for (const auto& [mu, m] : dom.mults()) {
        Weight muw = d.from_scaled(mu);
        chi->dominant_.emplace_back(muw, m);
        // orbit expansion in scaled coordinates
        std::set<std::vector<long>> seen{mu};
        std::vector<std::vector<long>> queue{mu};
        while (!queue.empty()) {
            std::vector<long> cur = std::move(queue.back());
            queue.pop_back();
            for (int i : sys.walls()) {
                long c = d.scaled_pairing(cur, i);
                if (c == 0) continue;
                std::vector<long> img = sadd(cur, d.simple_roots_scaled()[std::size_t(i)], -c);
                if (seen.insert(img).second) queue.push_back(img);
            }
        }
        for (const auto& w : seen) {
            chi->scaled_[w] += m;
            chi->entries_[d.from_scaled(w)] += m;
            chi->mass_ += m;
        }
    }
    if (chi->mass_ != dom.dim())
        throw std::logic_error("character mass disagrees with the Weyl dimension formula");

    std::lock_guard<std::mutex> lock(mtx);
    auto [it, inserted] = cache.emplace(std::make_pair(sys.key(), hw), std::move(chi));
    return *it->second;
}

Int dimension(const WeightSystem& sys, const Weight& hw) {
    if (!sys.is_dominant(hw))
        throw std::invalid_argument("highest weight not dominant for " + sys.key() + ": " + hw.str());
    const Weight& rho = sys.rho();
    Rat num = 1, den = 1;
    Weight shifted = hw + rho;
    for (const auto& alpha : sys.positive_roots()) {
        num *= dot(shifted, alpha);
        den *= dot(rho, alpha);
    }
    return to_int(num / den);
}

Decomposition tensor_decompose(const WeightSystem& sys, const Weight& a, const Weight& b) {
    if (!sys.is_dominant(a) || !sys.is_dominant(b))
        throw std::invalid_argument("tensor factors must be dominant for " + sys.key());
    const Weight* enumerated = &a;
    const Weight* fixed = &b;
    if (dimension(sys, b) < dimension(sys, a)) std::swap(enumerated, fixed);

    const Character& chi = irreducible_character(sys, *enumerated);
    const auto& d = sys.datum();
    std::vector<long> shift = sadd(d.to_scaled(*fixed), sys.rho_scaled());
    ScaledMults acc;
    for (const auto& [nu, m] : chi.entries_scaled()) {
        std::vector<long> x = sadd(nu, shift);
        bool singular = false;
        long len = d.scaled_dominantize(x, sys.walls(), &singular);
        if (singular) continue;
        Int contrib = (len % 2 == 0) ? m : -m;
        auto it = acc.find(x);
        if (it == acc.end())
            acc.emplace(std::move(x), contrib);
        else {
            it->second += contrib;
            if (it->second == 0) acc.erase(it);
        }
    }
    Decomposition out;
    for (const auto& [x, m] : acc) {
        if (m < 0) throw std::logic_error("Klimyk produced a negative multiplicity");
        Weight hw = d.from_scaled(x) - sys.rho();
        out.terms.emplace(std::move(hw), m);
    }
    return out;
}

VirtualCharacter adams(const Character& chi, long k) {
    VirtualCharacter out;
    for (const auto& [w, m] : chi.entries()) {
        Weight s = w;
        s *= Rat(k);
        out[s] += m;
    }
    return out;
}

VirtualCharacter multiset_product(const VirtualCharacter& a, const VirtualCharacter& b) {
    VirtualCharacter out;
    for (const auto& [wa, ma] : a)
        for (const auto& [wb, mb] : b) {
            Int c = ma * mb;
            auto it = out.find(wa + wb);
            if (it == out.end())
                out.emplace(wa + wb, c);
            else {
                it->second += c;
                if (it->second == 0) out.erase(it);
            }
        }
    return out;
}

VirtualCharacter power_character(const WeightSystem& sys, const Weight& hw, long k, bool exterior) {
    if (k < 0) throw std::invalid_argument("power exponent must be non-negative");
    const Character& chi = irreducible_character(sys, hw);
    std::vector<VirtualCharacter> psi(std::size_t(k) + 1);
    for (long i = 1; i <= k; ++i) psi[std::size_t(i)] = adams(chi, i);

    std::vector<VirtualCharacter> e(std::size_t(k) + 1);
    e[0] = {{Weight::zero(sys.datum().ambient_dim()), Int(1)}};
    for (long j = 1; j <= k; ++j) {
        VirtualCharacter acc;
        for (long i = 1; i <= j; ++i) {
            VirtualCharacter term = multiset_product(psi[std::size_t(i)], e[std::size_t(j - i)]);
            bool negative = exterior && (i % 2 == 0);
            for (auto& [w, m] : term) {
                Int c = negative ? -m : m;
                auto it = acc.find(w);
                if (it == acc.end())
                    acc.emplace(w, c);
                else {
                    it->second += c;
                    if (it->second == 0) acc.erase(it);
                }
            }
        }
        // the Newton recursion divides exactly; a remainder is a logic bug
        for (auto& [w, m] : acc) {
            if (m % j != 0) throw std::logic_error("inexact division in Newton recursion");
            m /= j;
        }
        e[std::size_t(j)] = std::move(acc);
    }
    return e[std::size_t(k)];
}

Decomposition exterior_power(const WeightSystem& sys, const Weight& hw, long k) {
    Int n = dimension(sys, hw);
    if (Int(k) > n) throw std::invalid_argument("exterior power exceeds dimension");
    Decomposition d = peel(sys, power_character(sys, hw, k, true));
    if (d.total_dimension(sys) != binomial(to_long(n), k))
        throw std::logic_error("exterior power dimension mismatch");
    return d;
}

Decomposition symmetric_power(const WeightSystem& sys, const Weight& hw, long k) {
    Int n = dimension(sys, hw);
    Decomposition d = peel(sys, power_character(sys, hw, k, false));
    if (d.total_dimension(sys) != binomial(to_long(n) + k - 1, k))
        throw std::logic_error("symmetric power dimension mismatch");
    return d;
}

namespace {

// peeling works on the dominant part only; multiplicities at non-dominant
// weights of a W-invariant character are redundant
Decomposition peel_scaled(const WeightSystem& sys, ScaledMults chi) {
    const auto& d = sys.datum();
    // height functional: doubled pairing with every positive coroot
    auto height = [&](const std::vector<long>& w) {
        long h = 0;
        for (const auto& alpha : sys.positives_scaled())
            h += 2 * sdot(w, alpha) / sdot(alpha, alpha);
        return h;
    };
    Decomposition out;
    while (!chi.empty()) {
        auto best = chi.begin();
        long best_h = height(best->first);
        for (auto it = std::next(chi.begin()); it != chi.end(); ++it) {
            long h = height(it->first);
            if (h > best_h || (h == best_h && it->first > best->first)) {
                best = it;
                best_h = h;
            }
        }
        std::vector<long> top = best->first;
        Int m = best->second;
        if (m < 0 || !d.scaled_is_dominant(top, sys.walls()))
            throw std::domain_error("peeling failed at " + d.from_scaled(top).str() +
                                    " x " + m.str());
        const DominantCharacter& c = dominant_character(sys, d.from_scaled(top));
        for (const auto& [w, mc] : c.mults()) {
            auto it = chi.find(w);
            Int nv = (it == chi.end() ? Int(0) : it->second) - m * mc;
            if (nv == 0) {
                if (it != chi.end()) chi.erase(it);
            } else if (it == chi.end())
                chi.emplace(w, nv);
            else
                it->second = nv;
        }
        out.terms[d.from_scaled(top)] += m;
    }
    return out;
}

} // namespace

Decomposition peel(const WeightSystem& sys, const VirtualCharacter& chi) {
    const auto& d = sys.datum();
    ScaledMults dom;
    for (const auto& [w, m] : chi) {
        if (!sys.is_dominant(w)) continue;
        dom[d.to_scaled(w)] += m;
    }
    return peel_scaled(sys, std::move(dom));
}

Decomposition tensor_by_peeling(const WeightSystem& sys, const Weight& a, const Weight& b) {
    const Weight* enumerated = &a;
    const Weight* fixed = &b;
    if (dimension(sys, b) < dimension(sys, a)) std::swap(enumerated, fixed);
    const Character& chi_a = irreducible_character(sys, *enumerated);
    const DominantCharacter& chi_b = dominant_character(sys, *fixed);

    // dominant support of the product, as a convolution against the full
    // weight system of the enumerated factor
    ScaledMults product;
    std::vector<std::vector<long>> candidates = dominant_candidates_scaled(sys, a + b);
    for (const auto& mu : candidates) {
        Int m = 0;
        for (const auto& [x, mx] : chi_a.entries_scaled()) {
            std::vector<long> y(mu.size());
            for (std::size_t i = 0; i < mu.size(); ++i) y[i] = mu[i] - x[i];
            Int my = chi_b.multiplicity_scaled(y);
            if (my != 0) m += mx * my;
        }
        if (m != 0) product[mu] = m;
    }
    Decomposition out = peel_scaled(sys, std::move(product));
    if (out.total_dimension(sys) != chi_a.mass() * chi_b.dim())
        throw std::logic_error("peeled tensor product has wrong dimension");
    return out;
}

Weight WeightMap::apply(const Weight& w) const {
    auto a = source->fundamental_coords(w);
    Weight out = Weight::zero(target->ambient_dim());
    for (std::size_t i = 0; i < images.size(); ++i) {
        Weight t = images[i];
        t *= a[i];
        out += t;
    }
    return out;
}

WeightMap WeightMap::then(const WeightMap& next) const {
    WeightMap out;
    out.source = source;
    out.target = next.target;
    for (const auto& img : images) out.images.push_back(next.apply(img));
    return out;
}

Decomposition restrict_character(const Character& chi, const WeightMap& map,
                                 const WeightSystem& tgt) {
    VirtualCharacter pushed;
    for (const auto& [w, m] : chi.entries()) {
        Weight img = map.apply(w);
        if (!tgt.datum().is_lattice_weight(img))
            throw std::domain_error("restriction map produced a non-integral weight " + img.str());
        pushed[img] += m;
    }
    Decomposition out = peel(tgt, pushed);
    if (out.total_dimension(tgt) != chi.mass())
        throw std::domain_error("restriction does not preserve dimension");
    return out;
}

Decomposition restrict_representation(const WeightSystem& src, const Weight& hw,
                                      const WeightMap& map, const WeightSystem& tgt) {
    return restrict_character(irreducible_character(src, hw), map, tgt);
}

namespace {

WeightMap make_map(char st, int sr, char tt, int tr,
                   std::initializer_list<std::initializer_list<long>> images) {
    WeightMap m;
    m.source = &RootDatum::get(st, sr);
    m.target = &RootDatum::get(tt, tr);
    for (const auto& img : images)
        m.images.push_back(m.target->from_fundamental_long(std::vector<long>(img)));
    return m;
}

} // namespace

const WeightMap& restriction_map_f4_b4() {
    static WeightMap m = make_map('F', 4, 'B', 4,
                                  {{0, 1, 0, 0}, {1, 0, 1, 0}, {1, 0, 0, 1}, {1, 0, 0, 0}});
    return m;
}

const WeightMap& restriction_map_f4_d4() {
    static WeightMap m = make_map('F', 4, 'D', 4,
                                  {{0, 1, 0, 0}, {1, 0, 1, 1}, {1, 0, 0, 1}, {1, 0, 0, 0}});
    return m;
}

const WeightMap& restriction_map_b4_d4() {
    static WeightMap m = make_map('B', 4, 'D', 4,
                                  {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 1}, {0, 0, 0, 1}});
    return m;
}

std::string decomposition_str(const WeightSystem& sys, const Decomposition& d) {
    std::ostringstream os;
    bool first = true;
    for (const auto& [hw, m] : d.terms) {
        if (!first) os << " + ";
        first = false;
        if (m != 1) os << m.str() << "*";
        os << "V[";
        auto a = sys.datum().fundamental_coords(hw);
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (i) os << ",";
            os << a[i].str();
        }
        os << "]";
    }
    if (first) os << "0";
    return os.str();
}

} // namespace weylbott
