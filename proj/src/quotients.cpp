#include "quotdens/quotients.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include <json.hpp>

#include "quotdens/errors.hpp"

namespace quotdens {

uint64_t image_order(const CosetTable& tbl) {
    const Perm gens[2] = {Perm(tbl.x_img.begin(), tbl.x_img.end()),
                          Perm(tbl.y_img.begin(), tbl.y_img.end())};
    const GroupOrder o =
        permutation_group_order(std::span<const Perm>(gens, 2), tbl.degree, UINT64_MAX);
    if (o.exceeded) throw std::overflow_error("image_order: group order exceeds 64 bits");
    return o.order;
}

bool QuotientCatalog::contains(uint64_t order) const {
    return std::binary_search(orders.begin(), orders.end(), order);
}

std::string QuotientCatalog::to_json() const {
    nlohmann::ordered_json j;
    j["signature"] = {signature.r, signature.s, signature.t};
    j["max_index"] = max_index;
    j["complete_up_to"] = complete_up_to;
    j["orders"] = orders;
    nlohmann::ordered_json prov = nlohmann::ordered_json::object();
    for (const auto& [order, degree] : provenance) prov[std::to_string(order)] = degree;
    j["provenance"] = std::move(prov);
    j["partial"] = partial;
    return j.dump();
}

QuotientCatalog quotient_orders(const TriangleSignature& sig, uint64_t max_order,
                                uint32_t max_index, uint64_t max_nodes) {
    if (max_order < 1) throw std::invalid_argument("quotient_orders: max_order must be >= 1");
    if (max_index < max_order)
        throw std::invalid_argument("quotient_orders: max_index must be >= max_order");

    // A quotient of order q is exactly the image of a regular table of
    // degree q, so degree max_order already covers the window.
    std::map<uint64_t, uint32_t> found;  // order -> least witnessing degree
    const SearchStats stats = enumerate_regular_tables(
        sig, static_cast<uint32_t>(std::min<uint64_t>(max_order, max_index)),
        [&](const CosetTable& t) {
            const Perm gens[2] = {Perm(t.x_img.begin(), t.x_img.end()),
                                  Perm(t.y_img.begin(), t.y_img.end())};
            const GroupOrder o =
                permutation_group_order(std::span<const Perm>(gens, 2), t.degree, max_order);
            if (o.exceeded || o.order != t.degree)
                throw InvariantViolation("quotient_orders: regular table image order != degree");
            found.emplace(o.order, t.degree);
        },
        max_nodes);

    QuotientCatalog cat(sig);
    cat.max_index = max_index;
    cat.partial = !stats.complete;
    cat.complete_up_to = stats.complete ? max_order : 0;
    for (const auto& [order, degree] : found) {
        cat.orders.push_back(order);
        cat.provenance.emplace_back(order, degree);
    }
    return cat;
}

std::string CrossCheckReport::to_json() const {
    nlohmann::ordered_json j;
    j["signature"] = {signature.r, signature.s, signature.t};
    j["x"] = x;
    j["delta"] = delta;
    j["max_n"] = max_n;
    j["max_index"] = max_index;
    j["activated"] = activated;
    j["partial"] = partial;
    j["quotient_orders"] = catalog.orders;
    auto flagged_json = nlohmann::ordered_json::array();
    for (const CrossCheckEntry& e : flagged) {
        nlohmann::ordered_json fe;
        fe["n"] = e.n;
        if (e.kx) fe["kx_witness"] = e.kx_witness;
        if (e.prop_b) fe["prop_b_witness"] = e.prop_b_witness;
        fe["is_quotient_order"] = e.is_quotient_order;
        flagged_json.push_back(std::move(fe));
    }
    j["flagged"] = std::move(flagged_json);
    j["violations"] = violations;
    return j.dump();
}

CrossCheckReport cross_check(const TriangleSignature& sig, const SieveParams& params,
                             uint64_t max_n, uint32_t max_index, const PrimeTable& table,
                             uint64_t max_nodes) {
    if (max_index < max_n)
        throw std::invalid_argument("cross_check: max_index must be >= max_n");
    if (params.x < max_n)
        throw std::invalid_argument("cross_check: params.x must be >= max_n");

    CrossCheckReport rep(sig);
    rep.x = params.x;
    rep.delta = params.delta;
    rep.max_n = max_n;
    rep.max_index = max_index;
    rep.activated = params.activated();
    rep.catalog = quotient_orders(sig, max_n, max_index, max_nodes);
    rep.partial = rep.catalog.partial;

    for (uint64_t n = 1; n <= max_n; ++n) {
        const KxResult kx = in_Kx(n, params, table);
        const ExclusionResult pb = prop_b_excludes(n, sig, table);
        if (!kx.member && !pb.excluded) continue;
        CrossCheckEntry e;
        e.n = n;
        e.kx = kx.member;
        e.kx_witness = kx.witness;
        e.prop_b = pb.excluded;
        e.prop_b_witness = pb.witness;
        e.is_quotient_order = rep.catalog.contains(n);
        rep.flagged.push_back(e);
        if (e.is_quotient_order) rep.violations.push_back(n);
    }
    return rep;
}

}  // namespace quotdens
