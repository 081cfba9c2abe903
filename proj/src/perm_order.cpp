#include "quotdens/perm_order.hpp"

#include <stdexcept>

namespace quotdens {

Perm perm_identity(uint32_t degree) {
    Perm p(degree);
    for (uint32_t i = 0; i < degree; ++i) p[i] = i;
    return p;
}

Perm perm_compose(const Perm& a, const Perm& b) {
    Perm c(a.size());
    for (size_t i = 0; i < a.size(); ++i) c[i] = b[a[i]];
    return c;
}

Perm perm_inverse(const Perm& a) {
    Perm inv(a.size());
    for (size_t i = 0; i < a.size(); ++i) inv[a[i]] = static_cast<uint32_t>(i);
    return inv;
}

bool perm_is_identity(const Perm& a) {
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] != i) return false;
    return true;
}

namespace {

// Stabilizer chain with strong generators kept in one flat list; the
// generator set of level i is every strong generator fixing bases 0..i-1.
// closed() runs the Schreier-generator verification sweep and feeds any
// sticking residue back in; at the fixpoint the orbit-size product is the
// exact group order.  Every insertion strictly grows the sum of orbit
// sizes, which bounds the number of sweeps.
class Chain {
public:
    Chain(uint32_t degree, uint64_t cap) : degree_(degree), cap_(cap) {}

    bool exceeded() const { return exceeded_; }

    uint64_t order() const {
        uint64_t o = 1;
        for (const LevelOrbit& l : orbits_) o *= l.orbit.size();
        return o;
    }

    void insert(const Perm& p) {
        if (exceeded_) return;
        add_gen(sift(p, 0));
    }

    // One verification sweep; false means a residue was inserted and the
    // sweep must run again.
    bool closed() {
        for (size_t i = 0; i < bases_.size(); ++i) {
            const LevelOrbit& lev = orbits_[i];
            for (uint32_t pt : lev.orbit) {
                for (const Perm& g : gens_) {
                    if (gen_level(g) < i) continue;  // not in this level's group
                    const uint32_t to = g[pt];
                    const Perm schreier =
                        perm_compose(perm_compose(lev.transversal[lev.slot[pt]], g),
                                     perm_inverse(lev.transversal[lev.slot[to]]));
                    const Perm residue = sift(schreier, i + 1);
                    if (!perm_is_identity(residue)) {
                        add_gen(residue);
                        return false;
                    }
                    if (exceeded_) return true;
                }
            }
        }
        return true;
    }

private:
    struct LevelOrbit {
        std::vector<int32_t> slot;
        std::vector<Perm> transversal;
        std::vector<uint32_t> orbit;
    };

    static uint32_t first_moved(const Perm& p) {
        for (uint32_t i = 0; i < p.size(); ++i)
            if (p[i] != i) return i;
        throw std::logic_error("first_moved: identity permutation");
    }

    // Largest i such that g fixes bases 0..i-1.
    size_t gen_level(const Perm& g) const {
        for (size_t i = 0; i < bases_.size(); ++i)
            if (g[bases_[i]] != bases_[i]) return i;
        return bases_.size();
    }

    // Divide off transversal parts from level 'from' down; the result fixes
    // every base it passed.
    Perm sift(Perm p, size_t from) const {
        for (size_t i = from; i < bases_.size(); ++i) {
            const uint32_t gamma = p[bases_[i]];
            const int32_t s = orbits_[i].slot[gamma];
            if (s < 0) return p;
            p = perm_compose(p, perm_inverse(orbits_[i].transversal[s]));
        }
        return p;
    }

    void add_gen(const Perm& residue) {
        if (perm_is_identity(residue) || exceeded_) return;
        const size_t l = gen_level(residue);
        if (l == bases_.size()) {
            bases_.push_back(first_moved(residue));
            orbits_.emplace_back();
        }
        gens_.push_back(residue);
        for (size_t i = 0; i <= l && i < bases_.size(); ++i) rebuild_orbit(i);
        check_cap();
    }

    void rebuild_orbit(size_t i) {
        LevelOrbit& lev = orbits_[i];
        lev.slot.assign(degree_, -1);
        lev.transversal.clear();
        lev.orbit.clear();
        lev.slot[bases_[i]] = 0;
        lev.transversal.push_back(perm_identity(degree_));
        lev.orbit.push_back(bases_[i]);
        for (size_t k = 0; k < lev.orbit.size(); ++k) {
            const uint32_t pt = lev.orbit[k];
            for (const Perm& g : gens_) {
                if (gen_level(g) < i) continue;  // not in this level's group
                const uint32_t to = g[pt];
                if (lev.slot[to] >= 0) continue;
                lev.slot[to] = static_cast<int32_t>(lev.transversal.size());
                lev.transversal.push_back(perm_compose(lev.transversal[lev.slot[pt]], g));
                lev.orbit.push_back(to);
            }
        }
    }

    void check_cap() {
        unsigned __int128 prod = 1;
        for (const LevelOrbit& l : orbits_) {
            prod *= l.orbit.size();
            if (prod > cap_) {
                exceeded_ = true;
                return;
            }
        }
    }

    uint32_t degree_;
    uint64_t cap_;
    bool exceeded_ = false;
    std::vector<uint32_t> bases_;
    std::vector<Perm> gens_;
    std::vector<LevelOrbit> orbits_;
};

}  // namespace

GroupOrder permutation_group_order(std::span<const Perm> gens, uint32_t degree, uint64_t cap) {
    for (const Perm& g : gens)
        if (g.size() != degree)
            throw std::invalid_argument("permutation_group_order: degree mismatch");
    Chain chain(degree, cap);
    for (const Perm& g : gens) {
        chain.insert(g);
        if (chain.exceeded()) return {true, cap};
    }
    while (!chain.exceeded() && !chain.closed()) {
    }
    if (chain.exceeded()) return {true, cap};
    return {false, chain.order()};
}

}  // namespace quotdens
