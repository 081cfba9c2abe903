#include "quotdens/low_index.hpp"

#include <algorithm>

namespace quotdens {

bool coset_table_valid(const CosetTable& t, const TriangleSignature& sig) {
    const uint32_t n = t.degree;
    if (t.x_img.size() != n || t.y_img.size() != n || n == 0) return false;
    for (uint32_t c = 0; c < n; ++c)
        if (t.x_img[c] >= n || t.y_img[c] >= n) return false;

    auto traces_to_identity = [&](auto&& step, uint32_t reps) {
        for (uint32_t c = 0; c < n; ++c) {
            uint32_t v = c;
            for (uint32_t i = 0; i < reps; ++i) v = step(v);
            if (v != c) return false;
        }
        return true;
    };
    if (!traces_to_identity([&](uint32_t c) { return t.x_img[c]; }, sig.r)) return false;
    if (!traces_to_identity([&](uint32_t c) { return t.y_img[c]; }, sig.s)) return false;
    if (!traces_to_identity([&](uint32_t c) { return t.xy(c); }, sig.t)) return false;

    // transitivity from coset 0
    std::vector<uint8_t> seen(n, 0);
    std::vector<uint32_t> stack{0};
    seen[0] = 1;
    uint32_t reached = 1;
    while (!stack.empty()) {
        const uint32_t c = stack.back();
        stack.pop_back();
        for (uint32_t to : {t.x_img[c], t.y_img[c]}) {
            if (!seen[to]) {
                seen[to] = 1;
                ++reached;
                stack.push_back(to);
            }
        }
    }
    return reached == n;
}

namespace {

constexpr int32_t kUndef = -1;

// Column layout: 0 = x, 1 = x^-1, 2 = y, 3 = y^-1 for the coset (right)
// action; regular mode adds 4..7 for the left-multiplication action in the
// same order.  inv(col) = col ^ 1.
class TableSearch {
public:
    TableSearch(const TriangleSignature& sig, uint32_t max_index, bool regular,
                const std::function<void(const CosetTable&)>& sink, uint64_t max_nodes)
        : sig_(sig),
          max_index_(max_index),
          regular_(regular),
          ncols_(regular ? 8 : 4),
          sink_(sink),
          max_nodes_(max_nodes) {
        build_relators();
        table_.assign(static_cast<size_t>(max_index_) * ncols_, kUndef);
        degree_ = 1;  // the basepoint coset
    }

    SearchStats run() {
        search();
        return {nodes_, !exhausted_};
    }

private:
    int32_t entry(uint32_t c, int col) const { return table_[c * ncols_ + col]; }

    void raw_set(uint32_t c, int col, uint32_t d) {
        table_[c * ncols_ + col] = static_cast<int32_t>(d);
        journal_.push_back(c * ncols_ + col);
    }

    // Define c.col = d together with the mirror entry d.inv(col) = c, and in
    // regular mode tie the left and right actions at the identity coset.
    // Returns false on contradiction.
    bool assign(uint32_t c, int col, uint32_t d) {
        const int32_t cur = entry(c, col);
        if (cur != kUndef) return cur == static_cast<int32_t>(d);
        const int32_t mirror = entry(d, col ^ 1);
        if (mirror != kUndef && mirror != static_cast<int32_t>(c)) return false;
        raw_set(c, col, d);
        if (mirror == kUndef) raw_set(d, col ^ 1, c);
        if (regular_) {
            // L_g and R_g agree on the identity coset, for g and g^-1 alike.
            if (c == 0 && !assign(0, col ^ 4, d)) return false;
            if (d == 0 && !assign(0, (col ^ 1) ^ 4, c)) return false;
        }
        return true;
    }

    enum class Scan { ok, deduced, dead };

    Scan scan(uint32_t a, const std::vector<int>& w) {
        const size_t len = w.size();
        uint32_t f = a;
        size_t i = 0;
        while (i < len) {
            const int32_t e = entry(f, w[i]);
            if (e == kUndef) break;
            f = static_cast<uint32_t>(e);
            ++i;
        }
        if (i == len) return f == a ? Scan::ok : Scan::dead;

        uint32_t b = a;
        size_t j = len;
        while (j > i) {
            const int32_t e = entry(b, w[j - 1] ^ 1);
            if (e == kUndef) break;
            b = static_cast<uint32_t>(e);
            --j;
        }
        if (j == i) return f == b ? Scan::ok : Scan::dead;
        if (j == i + 1) {
            if (!assign(f, w[i], b)) return Scan::dead;
            return Scan::deduced;
        }
        return Scan::ok;
    }

    bool propagate() {
        bool changed = true;
        while (changed) {
            changed = false;
            for (uint32_t c = 0; c < degree_; ++c) {
                for (const auto& w : relators_) {
                    const Scan s = scan(c, w);
                    if (s == Scan::dead) return false;
                    if (s == Scan::deduced) changed = true;
                }
            }
        }
        return true;
    }

    // Lexicographic first-in-class test against every alternative basepoint.
    // Exact on complete tables; conservative (never wrongly rejects) on
    // partial ones: comparison stops at the first undefined entry.
    bool first_in_class() const {
        std::vector<int32_t> sigma(degree_), inv_sigma(degree_);
        for (uint32_t beta = 1; beta < degree_; ++beta) {
            std::fill(sigma.begin(), sigma.end(), kUndef);
            std::fill(inv_sigma.begin(), inv_sigma.end(), kUndef);
            sigma[beta] = 0;
            inv_sigma[0] = static_cast<int32_t>(beta);
            uint32_t next = 1;
            bool decided = false;
            for (uint32_t k = 0; k < degree_ && !decided; ++k) {
                if (inv_sigma[k] == kUndef) break;  // walk stuck: inconclusive
                const auto old_k = static_cast<uint32_t>(inv_sigma[k]);
                for (int col = 0; col < 4; ++col) {
                    const int32_t t_orig = entry(k, col);
                    const int32_t t_beta = entry(old_k, col);
                    if (t_orig == kUndef || t_beta == kUndef) {
                        decided = true;  // inconclusive for this basepoint
                        break;
                    }
                    int32_t s = sigma[t_beta];
                    if (s == kUndef) {
                        s = static_cast<int32_t>(next);
                        sigma[t_beta] = s;
                        inv_sigma[next] = t_beta;
                        ++next;
                    }
                    if (s < t_orig) return false;  // renumbering is lex-smaller
                    if (s > t_orig) {
                        decided = true;
                        break;
                    }
                }
            }
        }
        return true;
    }

    void emit() {
        if (regular_) {
            // The left action must have closed along with the right one.
            for (uint32_t c = 0; c < degree_; ++c)
                for (int col = 4; col < 8; ++col)
                    if (entry(c, col) == kUndef)
                        throw InvariantViolation(
                            "regular search: left action incomplete on a complete table");
        }
        CosetTable t;
        t.degree = degree_;
        t.x_img.resize(degree_);
        t.y_img.resize(degree_);
        for (uint32_t c = 0; c < degree_; ++c) {
            t.x_img[c] = static_cast<uint32_t>(entry(c, 0));
            t.y_img[c] = static_cast<uint32_t>(entry(c, 2));
        }
        sink_(t);
    }

    void search() {
        if (exhausted_) return;

        // first undefined slot of the coset action, scan order
        uint32_t slot_c = 0;
        int slot_col = -1;
        for (uint32_t c = 0; c < degree_ && slot_col < 0; ++c) {
            for (int col = 0; col < 4; ++col) {
                if (entry(c, col) == kUndef) {
                    slot_c = c;
                    slot_col = col;
                    break;
                }
            }
        }
        if (slot_col < 0) {
            if (!regular_ && !first_in_class()) return;
            emit();
            return;
        }

        const uint32_t n_existing = degree_;
        for (uint32_t d = 0; d <= n_existing; ++d) {
            const bool fresh = d == n_existing;
            if (fresh && degree_ >= max_index_) break;
            if (!fresh && entry(d, slot_col ^ 1) != kUndef) continue;

            if (++nodes_ > max_nodes_) {
                exhausted_ = true;
                return;
            }
            const size_t mark = journal_.size();
            const uint32_t saved_degree = degree_;
            if (fresh) ++degree_;
            if (assign(slot_c, slot_col, d) && propagate() &&
                (regular_ || first_in_class())) {
                search();
            }
            while (journal_.size() > mark) {
                table_[journal_.back()] = kUndef;
                journal_.pop_back();
            }
            degree_ = saved_degree;
            if (exhausted_) return;
        }
    }

    void build_relators() {
        auto rep = [](std::initializer_list<int> block, uint32_t times) {
            std::vector<int> w;
            for (uint32_t i = 0; i < times; ++i) w.insert(w.end(), block);
            return w;
        };
        relators_.push_back(rep({0}, sig_.r));      // x^r
        relators_.push_back(rep({2}, sig_.s));      // y^s
        relators_.push_back(rep({0, 2}, sig_.t));   // (xy)^t
        if (regular_) {
            relators_.push_back(rep({4}, sig_.r));
            relators_.push_back(rep({6}, sig_.s));
            relators_.push_back(rep({6, 4}, sig_.t));  // left (xy)^t: y first
            // left and right multiplications commute
            for (int g : {4, 6})
                for (int h : {0, 2})
                    relators_.push_back({h, g, h ^ 1, g ^ 1});
        }
    }

    TriangleSignature sig_;
    uint32_t max_index_;
    bool regular_;
    int ncols_;
    const std::function<void(const CosetTable&)>& sink_;
    uint64_t max_nodes_;

    std::vector<int32_t> table_;
    std::vector<std::vector<int>> relators_;
    std::vector<size_t> journal_;
    uint32_t degree_ = 1;
    uint64_t nodes_ = 0;
    bool exhausted_ = false;
};

}  // namespace

SearchStats enumerate_coset_tables(const TriangleSignature& sig, uint32_t max_index,
                                   const std::function<void(const CosetTable&)>& sink,
                                   uint64_t max_nodes) {
    if (max_index < 1)
        throw std::invalid_argument("enumerate_coset_tables: max_index must be >= 1");
    return TableSearch(sig, max_index, /*regular=*/false, sink, max_nodes).run();
}

SearchStats enumerate_regular_tables(const TriangleSignature& sig, uint32_t max_index,
                                     const std::function<void(const CosetTable&)>& sink,
                                     uint64_t max_nodes) {
    if (max_index < 1)
        throw std::invalid_argument("enumerate_regular_tables: max_index must be >= 1");
    return TableSearch(sig, max_index, /*regular=*/true, sink, max_nodes).run();
}

std::vector<CosetTable> low_index_tables(const TriangleSignature& sig, uint32_t max_index,
                                         uint64_t max_nodes) {
    std::vector<CosetTable> tables;
    const SearchStats stats = enumerate_coset_tables(
        sig, max_index, [&](const CosetTable& t) { tables.push_back(t); }, max_nodes);
    if (!stats.complete) throw LowIndexBudgetExhausted(stats.nodes, std::move(tables));
    return tables;
}

}  // namespace quotdens
