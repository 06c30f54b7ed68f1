#include "weylbott/root_datum.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>
#include <stdexcept>

namespace weylbott {

namespace {

Weight ev(std::size_t dim, std::initializer_list<std::pair<std::size_t, Rat>> entries) {
    Weight w = Weight::zero(dim);
    for (const auto& [i, v] : entries) w[i] = v;
    return w;
}

// simple roots and fundamental weights in the Bourbaki realizations
void bourbaki_tables(char type, int rank, std::size_t& dim,
                     std::vector<Weight>& simples, std::vector<Weight>& fundamentals) {
    const Rat h(1, 2);
    switch (type) {
    case 'A': {
        if (rank < 1) throw std::invalid_argument("A_n needs n >= 1");
        dim = std::size_t(rank) + 1;
        for (int i = 0; i < rank; ++i)
            simples.push_back(ev(dim, {{std::size_t(i), 1}, {std::size_t(i) + 1, -1}}));
        for (int i = 1; i <= rank; ++i) {
            Weight w = Weight::zero(dim);
            Rat c = Rat(i, rank + 1);
            for (std::size_t j = 0; j < dim; ++j) w[j] = (j < std::size_t(i) ? Rat(1 - c) : Rat(-c));
            fundamentals.push_back(w);
        }
        return;
    }
    case 'B': {
        if (rank < 2) throw std::invalid_argument("B_n needs n >= 2");
        dim = std::size_t(rank);
        for (int i = 0; i + 1 < rank; ++i)
            simples.push_back(ev(dim, {{std::size_t(i), 1}, {std::size_t(i) + 1, -1}}));
        simples.push_back(ev(dim, {{dim - 1, 1}}));
        for (int i = 1; i <= rank; ++i) {
            Weight w = Weight::zero(dim);
            for (int j = 0; j < i; ++j) w[j] = (i == rank) ? h : Rat(1);
            fundamentals.push_back(w);
        }
        return;
    }
    case 'C': {
        if (rank < 2) throw std::invalid_argument("C_n needs n >= 2");
        dim = std::size_t(rank);
        for (int i = 0; i + 1 < rank; ++i)
            simples.push_back(ev(dim, {{std::size_t(i), 1}, {std::size_t(i) + 1, -1}}));
        simples.push_back(ev(dim, {{dim - 1, 2}}));
        for (int i = 1; i <= rank; ++i) {
            Weight w = Weight::zero(dim);
            for (int j = 0; j < i; ++j) w[j] = 1;
            fundamentals.push_back(w);
        }
        return;
    }
    case 'D': {
        if (rank < 3) throw std::invalid_argument("D_n needs n >= 3");
        dim = std::size_t(rank);
        for (int i = 0; i + 1 < rank; ++i)
            simples.push_back(ev(dim, {{std::size_t(i), 1}, {std::size_t(i) + 1, -1}}));
        simples.push_back(ev(dim, {{dim - 2, 1}, {dim - 1, 1}}));
        for (int i = 1; i <= rank - 2; ++i) {
            Weight w = Weight::zero(dim);
            for (int j = 0; j < i; ++j) w[j] = 1;
            fundamentals.push_back(w);
        }
        {
            Weight w = Weight::zero(dim);
            for (std::size_t j = 0; j + 1 < dim; ++j) w[j] = h;
            w[dim - 1] = -h;
            fundamentals.push_back(w);
        }
        {
            Weight w = Weight::zero(dim);
            for (std::size_t j = 0; j < dim; ++j) w[j] = h;
            fundamentals.push_back(w);
        }
        return;
    }
    case 'F': {
        if (rank != 4) throw std::invalid_argument("type F has rank 4 only");
        dim = 4;
        simples = {
            ev(dim, {{1, 1}, {2, -1}}),
            ev(dim, {{2, 1}, {3, -1}}),
            ev(dim, {{3, 1}}),
            ev(dim, {{0, h}, {1, -h}, {2, -h}, {3, -h}}),
        };
        fundamentals = {
            ev(dim, {{0, 1}, {1, 1}}),
            ev(dim, {{0, 2}, {1, 1}, {2, 1}}),
            ev(dim, {{0, Rat(3, 2)}, {1, h}, {2, h}, {3, h}}),
            ev(dim, {{0, 1}}),
        };
        return;
    }
    case 'G': {
        if (rank != 2) throw std::invalid_argument("type G has rank 2 only");
        dim = 3;
        simples = {
            ev(dim, {{0, 1}, {1, -1}}),
            ev(dim, {{0, -2}, {1, 1}, {2, 1}}),
        };
        fundamentals = {
            ev(dim, {{0, 0}, {1, -1}, {2, 1}}),
            ev(dim, {{0, -1}, {1, -1}, {2, 2}}),
        };
        return;
    }
    default:
        throw std::invalid_argument(std::string("unsupported Dynkin type ") + type);
    }
}

} // namespace

RootDatum RootDatum::build(char type, int rank) {
    RootDatum d;
    d.type_ = type;
    d.rank_ = rank;
    bourbaki_tables(type, rank, d.ambient_dim_, d.simple_roots_, d.fundamental_weights_);

    // full root system as the closure of the simple roots under simple reflections
    std::set<Weight> roots(d.simple_roots_.begin(), d.simple_roots_.end());
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<Weight> snapshot(roots.begin(), roots.end());
        for (const auto& r : snapshot)
            for (const auto& s : d.simple_roots_) {
                Weight img = reflect(r, s);
                if (roots.insert(img).second) grew = true;
            }
    }

    // positives: non-negative coordinates in the simple-root basis,
    // ordered by height then lexicographically
    std::vector<std::pair<Rat, Weight>> pos;
    for (const auto& r : roots) {
        auto coords = d.simple_root_coords_impl(r);
        Rat height = 0;
        bool nonneg = true;
        for (const auto& c : coords) {
            if (c < 0) { nonneg = false; break; }
            height += c;
        }
        if (nonneg) pos.emplace_back(height, r);
    }
    std::sort(pos.begin(), pos.end());
    for (auto& [h, r] : pos) d.positive_roots_.push_back(std::move(r));

    d.rho_ = Weight::zero(d.ambient_dim_);
    for (const auto& w : d.fundamental_weights_) d.rho_ += w;
    Weight half_pos_sum = Weight::zero(d.ambient_dim_);
    for (const auto& r : d.positive_roots_) half_pos_sum += r;
    half_pos_sum *= Rat(1, 2);
    if (!(half_pos_sum == d.rho_))
        throw std::logic_error("rho mismatch for " + d.name());

    d.cartan_.assign(rank, std::vector<long>(rank, 0));
    for (int i = 0; i < rank; ++i)
        for (int j = 0; j < rank; ++j)
            d.cartan_[i][j] = to_long(to_int(coroot_pairing(d.simple_roots_[j], d.simple_roots_[i])));

    d.gram_ = RatMatrix::identity(d.ambient_dim_);

    // -rho is regular antidominant, so the reflections dominantizing it
    // compose to the longest element
    d.dominantize_tracked(-d.rho_, d.all_walls(), &d.w0_);

    // integer fast path: scale = 2 * lcm of the fundamental weight denominators
    Int lcm = 2;
    for (const auto& w : d.fundamental_weights_)
        for (const auto& c : w.coords()) {
            Int den = denominator(c);
            lcm = lcm / boost::multiprecision::gcd(lcm, den) * den;
        }
    d.scale_ = to_long(lcm);
    for (const auto& a : d.simple_roots_) {
        d.simple_scaled_.push_back(d.to_scaled(a));
        long nn = 0;
        for (long x : d.simple_scaled_.back()) nn += x * x;
        d.simple_norm_scaled_.push_back(nn);
    }
    return d;
}

std::vector<long> RootDatum::to_scaled(const Weight& w) const {
    std::vector<long> out(ambient_dim_, 0);
    for (std::size_t i = 0; i < ambient_dim_; ++i) {
        Rat c = w[i] * scale_;
        out[i] = to_long(to_int(c));
    }
    return out;
}

Weight RootDatum::from_scaled(const std::vector<long>& v) const {
    Weight w = Weight::zero(ambient_dim_);
    for (std::size_t i = 0; i < ambient_dim_; ++i) w[i] = Rat(v[i], scale_);
    return w;
}

long RootDatum::scaled_pairing(const std::vector<long>& w, int simple) const {
    const auto& a = simple_scaled_[std::size_t(simple)];
    long num = 0;
    for (std::size_t i = 0; i < a.size(); ++i) num += w[i] * a[i];
    long nn = simple_norm_scaled_[std::size_t(simple)];
    long c = 2 * num;
    if (c % nn != 0) throw std::logic_error("non-integral coroot pairing in scaled arithmetic");
    return c / nn;
}

bool RootDatum::scaled_is_dominant(const std::vector<long>& w, const std::vector<int>& walls) const {
    for (int i : walls) {
        const auto& a = simple_scaled_[std::size_t(i)];
        long num = 0;
        for (std::size_t j = 0; j < a.size(); ++j) num += w[j] * a[j];
        if (num < 0) return false;
    }
    return true;
}

long RootDatum::scaled_dominantize(std::vector<long>& w, const std::vector<int>& walls,
                                   bool* singular) const {
    long length = 0;
    bool moved = true;
    while (moved) {
        moved = false;
        for (int i : walls) {
            const auto& a = simple_scaled_[std::size_t(i)];
            long num = 0;
            for (std::size_t j = 0; j < a.size(); ++j) num += w[j] * a[j];
            if (num < 0) {
                long nn = simple_norm_scaled_[std::size_t(i)];
                if ((2 * num) % nn != 0)
                    throw std::logic_error("non-integral pairing in scaled dominantize");
                long c = 2 * num / nn;
                for (std::size_t j = 0; j < a.size(); ++j) w[j] -= c * a[j];
                ++length;
                moved = true;
                break;
            }
        }
    }
    if (singular) {
        *singular = false;
        for (int i : walls) {
            const auto& a = simple_scaled_[std::size_t(i)];
            long num = 0;
            for (std::size_t j = 0; j < a.size(); ++j) num += w[j] * a[j];
            if (num == 0) {
                *singular = true;
                break;
            }
        }
    }
    return length;
}

// private helper declared inline here to keep build() readable
std::vector<Rat> RootDatum::simple_root_coords_impl(const Weight& v) const {
    // solve sum c_i alpha_i = v by Gaussian elimination on the ambient coords
    std::size_t n = simple_roots_.size(), m = ambient_dim_;
    std::vector<std::vector<Rat>> a(m, std::vector<Rat>(n + 1, Rat(0)));
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < m; ++i) a[i][j] = simple_roots_[j][i];
    for (std::size_t i = 0; i < m; ++i) a[i][n] = v[i];

    std::vector<Rat> sol(n, Rat(0));
    std::size_t row = 0;
    std::vector<long> pivot_col(n, -1);
    for (std::size_t col = 0; col < n && row < m; ++col) {
        std::size_t p = row;
        while (p < m && a[p][col] == 0) ++p;
        if (p == m) continue;
        std::swap(a[p], a[row]);
        for (std::size_t r = 0; r < m; ++r) {
            if (r == row || a[r][col] == 0) continue;
            Rat f = a[r][col] / a[row][col];
            for (std::size_t c = col; c <= n; ++c) a[r][c] -= f * a[row][c];
        }
        pivot_col[col] = long(row);
        ++row;
    }
    for (std::size_t col = 0; col < n; ++col)
        if (pivot_col[col] >= 0)
            sol[col] = a[std::size_t(pivot_col[col])][n] / a[std::size_t(pivot_col[col])][col];
    // consistency: residual must vanish, else v is outside the span
    Weight check = Weight::zero(m);
    for (std::size_t j = 0; j < n; ++j) {
        Weight t = simple_roots_[j];
        t *= sol[j];
        check += t;
    }
    if (!(check == v)) return {};
    return sol;
}

std::optional<std::vector<Rat>> RootDatum::simple_root_coords(const Weight& v) const {
    auto c = simple_root_coords_impl(v);
    if (c.empty() && !v.is_zero()) return std::nullopt;
    if (c.empty()) return std::vector<Rat>(simple_roots_.size(), Rat(0));
    return c;
}

Rat RootDatum::fundamental_coord(const Weight& w, int i) const {
    return coroot_pairing(w, simple_roots_[std::size_t(i)]);
}

std::vector<Rat> RootDatum::fundamental_coords(const Weight& w) const {
    std::vector<Rat> a;
    a.reserve(std::size_t(rank_));
    for (int i = 0; i < rank_; ++i) a.push_back(fundamental_coord(w, i));
    return a;
}

Weight RootDatum::from_fundamental(const std::vector<Rat>& a) const {
    if (a.size() != std::size_t(rank_))
        throw std::invalid_argument("fundamental coordinate arity mismatch for " + name());
    Weight w = Weight::zero(ambient_dim_);
    for (int i = 0; i < rank_; ++i) {
        Weight t = fundamental_weights_[std::size_t(i)];
        t *= a[std::size_t(i)];
        w += t;
    }
    return w;
}

Weight RootDatum::from_fundamental_long(const std::vector<long>& a) const {
    std::vector<Rat> r(a.begin(), a.end());
    return from_fundamental(r);
}

bool RootDatum::is_lattice_weight(const Weight& w) const {
    auto a = fundamental_coords(w);
    for (const auto& c : a)
        if (!is_integer(c)) return false;
    return from_fundamental(a) == w;
}

std::vector<int> RootDatum::all_walls() const {
    std::vector<int> w(static_cast<std::size_t>(rank_), 0);
    for (int i = 0; i < rank_; ++i) w[std::size_t(i)] = i;
    return w;
}

bool RootDatum::is_dominant(const Weight& w, const std::vector<int>& walls) const {
    for (int i : walls)
        if (coroot_pairing(w, simple_roots_[std::size_t(i)]) < 0) return false;
    return true;
}

Dominantization RootDatum::dominantize(const Weight& w) const {
    return dominantize(w, all_walls());
}

Dominantization RootDatum::dominantize(const Weight& w, const std::vector<int>& walls) const {
    return dominantize_tracked(w, walls, nullptr);
}

Dominantization RootDatum::dominantize_tracked(const Weight& w, const std::vector<int>& walls,
                                               RatMatrix* accumulated) const {
    Dominantization out;
    out.dominant = w;
    if (accumulated) *accumulated = RatMatrix::identity(ambient_dim_);
    bool moved = true;
    while (moved) {
        moved = false;
        for (int i : walls) {
            const Weight& alpha = simple_roots_[std::size_t(i)];
            if (coroot_pairing(out.dominant, alpha) < 0) {
                out.dominant = reflect(out.dominant, alpha);
                ++out.length;
                if (accumulated)
                    *accumulated = reflection_matrix(alpha, ambient_dim_) * *accumulated;
                moved = true;
                break; // restart at the lowest index
            }
        }
    }
    for (int i : walls)
        if (coroot_pairing(out.dominant, simple_roots_[std::size_t(i)]) == 0) {
            out.singular = true;
            break;
        }
    return out;
}

std::vector<Weight> RootDatum::orbit(const Weight& w, const std::vector<int>& walls) const {
    std::set<Weight> seen{w};
    std::vector<Weight> queue{w};
    while (!queue.empty()) {
        Weight cur = std::move(queue.back());
        queue.pop_back();
        for (int i : walls) {
            Weight img = reflect(cur, simple_roots_[std::size_t(i)]);
            if (seen.insert(img).second) queue.push_back(img);
        }
    }
    return {seen.begin(), seen.end()};
}

Int RootDatum::weyl_order_of_type(char type, int rank) {
    switch (type) {
    case 'A': return factorial(rank + 1);
    case 'B':
    case 'C': {
        Int r = factorial(rank);
        r <<= rank;
        return r;
    }
    case 'D': {
        Int r = factorial(rank);
        r <<= (rank - 1);
        return r;
    }
    case 'G': return 12;
    case 'F': return 1152;
    case 'E':
        if (rank == 6) return 51840;
        if (rank == 7) return 2903040;
        if (rank == 8) return 696729600;
        break;
    default: break;
    }
    throw std::invalid_argument("no Weyl order table for type");
}

Int RootDatum::weyl_order() const { return weyl_order_of_type(type_, rank_); }

const RatMatrix& RootDatum::w0_matrix() const { return w0_; }

const RootDatum& RootDatum::get(char type, int rank) {
    static std::mutex mtx;
    static std::map<std::pair<char, int>, std::unique_ptr<RootDatum>> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto key = std::make_pair(type, rank);
    auto it = cache.find(key);
    if (it == cache.end()) {
        auto d = std::make_unique<RootDatum>(build(type, rank));
        it = cache.emplace(key, std::move(d)).first;
    }
    return *it->second;
}

// -------------------------------------------------------------------------
// Levi component classification

namespace {

bool try_match(const std::vector<std::vector<long>>& sub, const RootDatum& candidate,
               std::vector<int>& order) {
    const auto& std_cartan = candidate.cartan_matrix();
    std::size_t n = sub.size();
    std::vector<int> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = int(i);
    std::sort(perm.begin(), perm.end());
    do {
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i)
            for (std::size_t j = 0; j < n && ok; ++j)
                if (sub[std::size_t(perm[i])][std::size_t(perm[j])] != std_cartan[i][j]) ok = false;
        if (ok) {
            order.assign(perm.begin(), perm.end());
            return true;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

LeviComponent classify_component(const RootDatum& ambient, const std::vector<int>& nodes) {
    std::size_t n = nodes.size();
    std::vector<std::vector<long>> sub(n, std::vector<long>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            sub[i][j] = ambient.cartan_matrix()[std::size_t(nodes[i])][std::size_t(nodes[j])];

    struct Candidate { char type; int min_rank; };
    // C before rank 3 coincides with B, D before rank 4 with A
    const Candidate candidates[] = {{'A', 1}, {'B', 2}, {'C', 3}, {'D', 4}, {'G', 2}, {'F', 4}};
    for (const auto& c : candidates) {
        if (int(n) < c.min_rank) continue;
        if ((c.type == 'G' || c.type == 'F') && int(n) != (c.type == 'G' ? 2 : 4)) continue;
        const RootDatum* cand;
        try {
            cand = &RootDatum::get(c.type, int(n));
        } catch (const std::invalid_argument&) {
            continue;
        }
        std::vector<int> order;
        if (try_match(sub, *cand, order)) {
            LeviComponent comp;
            comp.type = c.type;
            comp.rank = int(n);
            comp.standalone = cand;
            for (int idx : order) comp.nodes.push_back(nodes[std::size_t(idx)]);
            return comp;
        }
    }
    throw std::logic_error("unclassifiable Levi component");
}

} // namespace

ParabolicDatum ParabolicDatum::build(const RootDatum& datum, int node) {
    if (node < 1 || node > datum.rank())
        throw std::invalid_argument("marked node out of range for " + datum.name());
    ParabolicDatum p;
    p.ambient_ = &datum;
    p.node_ = node;
    int k = node - 1;
    p.omega_k_ = datum.fundamental_weights()[std::size_t(k)];
    p.omega_k_norm2_ = dot(p.omega_k_, p.omega_k_);

    for (int i = 0; i < datum.rank(); ++i)
        if (i != k) p.levi_walls_.push_back(i);

    Weight nilradical_sum = Weight::zero(datum.ambient_dim());
    for (const auto& alpha : datum.positive_roots()) {
        auto coords = datum.simple_root_coords(alpha);
        Rat ck = (*coords)[std::size_t(k)];
        if (dot(alpha, p.omega_k_) == 0) {
            if (ck != 0) throw std::logic_error("Levi root with nonzero alpha_k coefficient");
            p.levi_positive_roots_.push_back(alpha);
        } else {
            NilradicalEntry e;
            e.weight = -alpha;
            e.degree = to_long(to_int(ck));
            e.l_dominant = true;
            for (int i : p.levi_walls_)
                if (coroot_pairing(e.weight, datum.simple_roots()[std::size_t(i)]) < 0) {
                    e.l_dominant = false;
                    break;
                }
            nilradical_sum += e.weight;
            p.nilradical_.push_back(std::move(e));
        }
    }
    std::sort(p.nilradical_.begin(), p.nilradical_.end(),
              [](const NilradicalEntry& a, const NilradicalEntry& b) {
                  return std::tie(a.degree, a.weight) < std::tie(b.degree, b.weight);
              });

    p.levi_rho_ = Weight::zero(datum.ambient_dim());
    for (const auto& r : p.levi_positive_roots_) p.levi_rho_ += r;
    p.levi_rho_ *= Rat(1, 2);

    // canonical bundle is O(fano_index * omega_k) with the sign convention
    // det(cotangent) = sum of nilradical weights
    Rat idx = coroot_pairing(nilradical_sum, datum.simple_roots()[std::size_t(k)]);
    p.fano_index_ = -to_long(to_int(idx));

    // connected components of the Levi diagram
    std::vector<bool> used(std::size_t(datum.rank()), false);
    for (int start : p.levi_walls_) {
        if (used[std::size_t(start)]) continue;
        std::vector<int> comp{start};
        used[std::size_t(start)] = true;
        for (std::size_t q = 0; q < comp.size(); ++q)
            for (int j : p.levi_walls_)
                if (!used[std::size_t(j)] && datum.cartan_matrix()[std::size_t(comp[q])][std::size_t(j)] != 0) {
                    used[std::size_t(j)] = true;
                    comp.push_back(j);
                }
        std::sort(comp.begin(), comp.end());
        p.components_.push_back(classify_component(datum, comp));
    }
    std::sort(p.components_.begin(), p.components_.end(),
              [](const LeviComponent& a, const LeviComponent& b) {
                  return *std::min_element(a.nodes.begin(), a.nodes.end()) <
                         *std::min_element(b.nodes.begin(), b.nodes.end());
              });

    // w_0^L as a linear map: -rho is regular antidominant for the Levi walls
    RatMatrix acc;
    datum.dominantize_tracked(-datum.rho(), p.levi_walls_, &acc);
    p.w0_levi_ = std::move(acc);

    return p;
}

std::string ParabolicDatum::levi_semisimple_type() const {
    std::string s;
    for (const auto& c : components_) {
        if (!s.empty()) s += "x";
        s += c.type;
        s += std::to_string(c.rank);
    }
    return s.empty() ? "1" : s;
}

Int ParabolicDatum::levi_weyl_order() const {
    Int r = 1;
    for (const auto& c : components_) r *= RootDatum::weyl_order_of_type(c.type, c.rank);
    return r;
}

Rat ParabolicDatum::central_charge(const Weight& w) const {
    return dot(w, omega_k_) / omega_k_norm2_;
}

bool ParabolicDatum::is_levi_dominant(const Weight& w) const {
    return ambient_->is_dominant(w, levi_walls_);
}

Dominantization ParabolicDatum::dominantize_levi(const Weight& w) const {
    return ambient_->dominantize(w, levi_walls_);
}

std::vector<std::vector<Rat>> ParabolicDatum::project_to_components(const Weight& w) const {
    std::vector<std::vector<Rat>> out;
    for (const auto& comp : components_) {
        std::vector<Rat> a;
        for (int nodeidx : comp.nodes) a.push_back(ambient_->fundamental_coord(w, nodeidx));
        out.push_back(std::move(a));
    }
    return out;
}

Weight ParabolicDatum::lift_from_components(const std::vector<std::vector<Rat>>& a) const {
    std::vector<Rat> fund(std::size_t(ambient_->rank()), Rat(0));
    if (a.size() != components_.size())
        throw std::invalid_argument("component arity mismatch");
    for (std::size_t c = 0; c < components_.size(); ++c) {
        if (a[c].size() != components_[c].nodes.size())
            throw std::invalid_argument("component coordinate arity mismatch");
        for (std::size_t i = 0; i < a[c].size(); ++i)
            fund[std::size_t(components_[c].nodes[i])] = a[c][i];
    }
    return ambient_->from_fundamental(fund);
}

const ParabolicDatum& ParabolicDatum::get(char type, int rank, int node) {
    static std::mutex mtx;
    static std::map<std::tuple<char, int, int>, std::unique_ptr<ParabolicDatum>> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto key = std::make_tuple(type, rank, node);
    auto it = cache.find(key);
    if (it == cache.end()) {
        auto p = std::make_unique<ParabolicDatum>(build(RootDatum::get(type, rank), node));
        it = cache.emplace(key, std::move(p)).first;
    }
    return *it->second;
}

} // namespace weylbott
