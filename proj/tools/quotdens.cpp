// quotdens: density and quotient-order diagnostics for triangle groups.
//
// Subcommands write one CSV or JSON document to stdout (or --out); all
// logging goes to stderr.  Exit codes: 0 success, 1 invariant violation,
// 2 invalid arguments, 3 search budget exhausted.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "quotdens/arith.hpp"
#include "quotdens/bertram.hpp"
#include "quotdens/density.hpp"
#include "quotdens/dirichlet.hpp"
#include "quotdens/errors.hpp"
#include "quotdens/low_index.hpp"
#include "quotdens/quotients.hpp"
#include "quotdens/triangle.hpp"
#include "quotdens/turan_kubilius.hpp"

namespace {

namespace fs = std::filesystem;
using namespace quotdens;

constexpr const char* kCacheEnvVar = "QUOTDENS_CACHE_DIR";

struct CommonOpts {
    std::string out_path;      // empty = stdout
    std::string cache_dir;     // empty = env var, then no caching
    uint64_t budget = kDefaultNodeBudget;
};

fs::path resolve_cache_dir(const CommonOpts& o) {
    if (!o.cache_dir.empty()) return o.cache_dir;
    if (const char* env = std::getenv(kCacheEnvVar); env && *env) return env;
    return {};
}

// Cache files keyed by limit; written to a temp name and renamed so readers
// never see a torn file.
PrimeTable get_table(uint64_t limit, const CommonOpts& o) {
    const fs::path dir = resolve_cache_dir(o);
    if (dir.empty()) return PrimeTable(limit);
    const fs::path file = dir / ("primes-" + std::to_string(limit) + ".tdpr");
    if (fs::exists(file)) {
        try {
            PrimeTable t = PrimeTable::load(file);
            if (t.limit() == limit) return t;
            std::cerr << "quotdens: cache file " << file << " has wrong limit; rebuilding\n";
        } catch (const std::exception& e) {
            std::cerr << "quotdens: ignoring unreadable cache file " << file << ": " << e.what()
                      << "\n";
        }
    }
    PrimeTable t(limit);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        std::cerr << "quotdens: cannot create cache dir " << dir << ": " << ec.message() << "\n";
        return t;
    }
    const fs::path tmp = file.string() + ".tmp." + std::to_string(::getpid());
    try {
        t.save(tmp);
        fs::rename(tmp, file);
    } catch (const std::exception& e) {
        std::cerr << "quotdens: cache write failed: " << e.what() << "\n";
        fs::remove(tmp, ec);
    }
    return t;
}

int write_output(const CommonOpts& o, const std::string& data) {
    if (o.out_path.empty()) {
        std::cout << data;
        return 0;
    }
    std::ofstream os(o.out_path, std::ios::binary | std::ios::trunc);
    if (!os) {
        std::cerr << "quotdens: cannot open output file " << o.out_path << "\n";
        return 2;
    }
    os << data;
    return os ? 0 : 2;
}

TriangleSignature make_signature(const std::vector<uint32_t>& rst) {
    if (rst.size() != 3)
        throw std::invalid_argument("--rst wants exactly three values r,s,t");
    return TriangleSignature(rst[0], rst[1], rst[2]);
}

void require_ascending(const std::vector<uint64_t>& checkpoints) {
    if (checkpoints.empty())
        throw std::invalid_argument("--checkpoints must not be empty");
    for (size_t i = 1; i < checkpoints.size(); ++i)
        if (checkpoints[i] <= checkpoints[i - 1])
            throw std::invalid_argument("--checkpoints must be strictly ascending");
}

int cmd_kx_series(const CommonOpts& o, const std::vector<uint32_t>& rst, double delta,
                  const std::vector<uint64_t>& checkpoints) {
    const TriangleSignature sig = make_signature(rst);
    require_ascending(checkpoints);
    if (!(delta > 0 && delta < 1)) throw std::invalid_argument("--delta must lie in (0,1)");
    const PrimeTable table = get_table(checkpoints.back(), o);
    const KxSeries series = kx_series(checkpoints, delta, sig, table);
    std::ostringstream os;
    series.write_csv(os);
    return write_output(o, os.str());
}

int cmd_tk_report(const CommonOpts& o, const std::vector<uint32_t>& rst, uint64_t m_override,
                  double delta, double epsilon, const std::vector<uint64_t>& checkpoints) {
    TriangleSignature sig = make_signature(rst);
    if (m_override != 0) {
        if (m_override > UINT32_MAX) throw std::invalid_argument("--m is too large");
        sig = TriangleSignature(1, 1, static_cast<uint32_t>(m_override));
    }
    require_ascending(checkpoints);
    const PrimeTable table = get_table(checkpoints.back(), o);
    std::vector<TKReport> reports;
    for (uint64_t x : checkpoints)
        reports.push_back(tk_statistics(SieveParams::make(x, delta, sig), epsilon, table));
    std::ostringstream os;
    write_tk_csv(os, reports);
    return write_output(o, os.str());
}

int cmd_bertram_check(const CommonOpts& o, const std::vector<uint64_t>& checkpoints,
                      double delta, double c) {
    require_ascending(checkpoints);
    if (!(delta > 0 && delta < 1)) throw std::invalid_argument("--delta must lie in (0,1)");
    const PrimeTable table = get_table(checkpoints.back(), o);
    std::ostringstream os;
    os << "x,kind,count,bound,within_bound,f,g,h,c,c_min\n";
    bool violated = false;
    for (uint64_t x : checkpoints) {
        const double f = std::pow(std::log(static_cast<double>(x)), 1.0 + delta);
        const double g = f;
        const double h = std::sqrt(static_cast<double>(x));
        const ExceptionReport reports[3] = {count_b1(x, f, table), count_b2(x, f, table),
                                            count_b3(x, g, h, c, table)};
        for (const ExceptionReport& r : reports) {
            os << r.x << ',' << to_string(r.kind) << ',' << r.count << ',' << format_sig(r.bound)
               << ',' << (r.within_bound ? 1 : 0) << ',';
            if (r.kind == BertramKind::b3)
                os << ',' << format_sig(r.g) << ',' << format_sig(r.h) << ',' << format_sig(r.c)
                   << ',' << format_sig(r.c_min);
            else
                os << format_sig(r.f) << ",,,,";
            os << '\n';
            // Lemma bounds for B1/B2 are theorems; a miss is a hard failure.
            if (r.kind != BertramKind::b3 && !r.within_bound) violated = true;
        }
    }
    const int rc = write_output(o, os.str());
    if (rc != 0) return rc;
    if (violated) {
        std::cerr << "quotdens: Bertram B1/B2 bound violated\n";
        return 1;
    }
    return 0;
}

int cmd_dirichlet_logsize(const CommonOpts& o, uint64_t residue, uint64_t modulus,
                          const std::vector<uint64_t>& checkpoints) {
    require_ascending(checkpoints);
    const ProgressionClass cls(residue, modulus);
    const PrimeTable table = get_table(checkpoints.back(), o);
    std::ostringstream os;
    os << "x,ell,predicted,ratio\n";
    for (uint64_t x : checkpoints) {
        const LogSizeReport r = logsize_vs_asymptote(cls, x, table);
        os << x << ',' << format_sig(r.ell) << ',' << format_sig(r.predicted) << ','
           << format_sig(r.ratio) << '\n';
    }
    return write_output(o, os.str());
}

int cmd_quotient_orders(const CommonOpts& o, const std::vector<uint32_t>& rst,
                        uint32_t max_index, uint64_t max_order) {
    const TriangleSignature sig = make_signature(rst);
    if (max_order == 0) max_order = max_index;
    const QuotientCatalog cat = quotient_orders(sig, max_order, max_index, o.budget);
    const int rc = write_output(o, cat.to_json() + "\n");
    if (rc != 0) return rc;
    if (cat.partial) {
        std::cerr << "quotdens: quotient-orders search budget exhausted; catalog is partial\n";
        return 3;
    }
    return 0;
}

int cmd_cross_check(const CommonOpts& o, const std::vector<uint32_t>& rst, uint64_t x,
                    double delta, uint64_t max_n, uint32_t max_index) {
    const TriangleSignature sig = make_signature(rst);
    const SieveParams params = SieveParams::make(x, delta, sig);
    const PrimeTable table = get_table(x, o);
    const CrossCheckReport rep = cross_check(sig, params, max_n, max_index, table, o.budget);
    const int rc = write_output(o, rep.to_json() + "\n");
    if (rc != 0) return rc;
    if (!rep.violations.empty()) {
        std::cerr << "quotdens: cross-check violation: an excluded n is a quotient order\n";
        return 1;
    }
    if (rep.partial) {
        std::cerr << "quotdens: cross-check catalog is partial (budget exhausted)\n";
        return 3;
    }
    return 0;
}

int cmd_euclidean_density(const CommonOpts& o, const std::string& kind,
                          const std::vector<uint64_t>& checkpoints) {
    require_ascending(checkpoints);
    EuclideanKind k;
    if (kind == "236")
        k = EuclideanKind::k236;
    else if (kind == "244")
        k = EuclideanKind::k244;
    else
        throw std::invalid_argument("--kind must be 236 or 244");
    const std::vector<uint64_t> orders = euclidean_smooth_orders(k, checkpoints.back());
    DensitySeries series;
    for (uint64_t x : checkpoints) {
        const auto it = std::upper_bound(orders.begin(), orders.end(), x);
        series.push(x, static_cast<uint64_t>(it - orders.begin()));
    }
    std::ostringstream os;
    series.write_csv(os);
    return write_output(o, os.str());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"density and quotient-order diagnostics for triangle groups"};
    app.require_subcommand(1);

    CommonOpts common;
    std::vector<uint32_t> rst;
    std::vector<uint64_t> checkpoints{10'000, 100'000, 1'000'000};
    std::vector<uint64_t> xs{10'000, 100'000, 1'000'000};
    double delta = 0.1;
    double epsilon = 0.1;
    double c_b3 = 2.0;
    uint64_t m_override = 0;
    uint64_t x_single = 1'000'000;
    uint64_t max_n = 60;
    uint32_t max_index = 12;
    uint64_t max_order = 0;
    uint64_t residue = 1, modulus = 4;
    std::string kind = "236";

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--out", common.out_path, "write the data document here instead of stdout");
        sub->add_option("--cache-dir", common.cache_dir,
                        "prime-table cache directory (default: $" + std::string(kCacheEnvVar) + ")");
        sub->add_option("--budget", common.budget, "search node budget");
    };

    CLI::App* kx = app.add_subcommand("kx-series", "K_x density series with complement decomposition");
    kx->add_option("--rst", rst, "signature r,s,t")->required()->delimiter(',');
    kx->add_option("--delta", delta, "threshold exponent offset, in (0,1)");
    kx->add_option("--checkpoints", checkpoints, "ascending x values")->delimiter(',');
    add_common(kx);

    CLI::App* tk = app.add_subcommand("tk-report", "variance statistics of the prime-counting additive function");
    tk->add_option("--rst", rst, "signature r,s,t")->required()->delimiter(',');
    tk->add_option("--m", m_override, "override m (uses signature (1,1,m))");
    tk->add_option("--delta", delta, "threshold exponent offset, in (0,1)");
    tk->add_option("--epsilon", epsilon, "bad-integer exponent, > 0");
    tk->add_option("--checkpoints", checkpoints, "ascending x values")->delimiter(',');
    add_common(tk);

    CLI::App* bc = app.add_subcommand("bertram-check", "exceptional-set counts against their bounds");
    bc->add_option("--x", xs, "ascending x values")->delimiter(',');
    bc->add_option("--delta", delta, "f(x) = (log x)^(1+delta)");
    bc->add_option("--c", c_b3, "constant for the smooth-divisor bound");
    add_common(bc);

    CLI::App* dl = app.add_subcommand("dirichlet-logsize", "logarithmic size of primes in a residue class");
    dl->add_option("--residue", residue, "residue a");
    dl->add_option("--modulus", modulus, "modulus b, coprime to a");
    dl->add_option("--checkpoints", checkpoints, "ascending x values")->delimiter(',');
    add_common(dl);

    CLI::App* qo = app.add_subcommand("quotient-orders", "enumerate quotient orders up to a cap");
    qo->add_option("--rst", rst, "signature r,s,t")->required()->delimiter(',');
    qo->add_option("--max-index", max_index, "coset-table degree cap")->required();
    qo->add_option("--max-order", max_order, "order window (default: max-index)");
    add_common(qo);

    CLI::App* cc = app.add_subcommand("cross-check", "excluded integers vs enumerated quotient orders");
    cc->add_option("--rst", rst, "signature r,s,t")->required()->delimiter(',');
    cc->add_option("--x", x_single, "scale fixing the threshold");
    cc->add_option("--delta", delta, "threshold exponent offset, in (0,1)");
    cc->add_option("--max-n", max_n, "check all n up to this");
    cc->add_option("--max-index", max_index, "coset-table degree cap")->required();
    add_common(cc);

    CLI::App* ed = app.add_subcommand("euclidean-density", "density of the euclidean smooth-order values");
    ed->add_option("--kind", kind, "236 for 6(b^2+bc+c^2), 244 for 4(b^2+c^2)");
    ed->add_option("--checkpoints", checkpoints, "ascending x values")->delimiter(',');
    add_common(ed);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    try {
        if (kx->parsed()) return cmd_kx_series(common, rst, delta, checkpoints);
        if (tk->parsed()) return cmd_tk_report(common, rst, m_override, delta, epsilon, checkpoints);
        if (bc->parsed()) return cmd_bertram_check(common, xs, delta, c_b3);
        if (dl->parsed()) return cmd_dirichlet_logsize(common, residue, modulus, checkpoints);
        if (qo->parsed()) return cmd_quotient_orders(common, rst, max_index, max_order);
        if (cc->parsed()) return cmd_cross_check(common, rst, x_single, delta, max_n, max_index);
        if (ed->parsed()) return cmd_euclidean_density(common, kind, checkpoints);
    } catch (const InvariantViolation& e) {
        std::cerr << "quotdens: invariant violation: " << e.what() << "\n";
        return 1;
    } catch (const BudgetExhausted& e) {
        std::cerr << "quotdens: " << e.what() << " (nodes: " << e.nodes_used << ")\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "quotdens: invalid arguments: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "quotdens: error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
