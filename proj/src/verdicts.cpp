#include "ospcert/verdicts.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

namespace ospcert {

namespace {

// Runs fn(0..count-1) on up to `jobs` threads. The first exception thrown by
// any worker is rethrown on the calling thread.
template <class Fn>
void parallel_for(std::size_t count, int jobs, Fn fn) {
    std::size_t workers = std::min<std::size_t>(count, static_cast<std::size_t>(std::max(jobs, 1)));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mu;
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= count || failed.load()) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mu);
                    if (!error) error = std::current_exception();
                    failed = true;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

bool vec_equal(const SparseVec& a, const SparseVec& b) {
    SparseVec d = a;
    vec_add(d, b, QuadScalar(-1));
    return d.empty();
}

std::vector<QuadScalar> apply_L(const SectorSystem& sys, const GammaStructure& gs, const std::vector<QuadScalar>& gb) {
    std::vector<QuadScalar> b(sys.rows.size(), QuadScalar(0));
    for (std::size_t r = 0; r < sys.rows.size(); ++r)
        for (const auto& [c, v] : sys.L.row(r)) b[r] += v * gb.at(static_cast<std::size_t>(gs.param_id(sys.params[c])));
    return b;
}

}  // namespace

SectorRank sector_rank(const Structures& s, const Weight& mu) {
    SectorSystem sys = assemble_sector(s.sc, s.gamma, mu);
    RankVerdict v = feasibility_rank_test(sys.A, sys.L);
    SectorRank r;
    r.mu = mu;
    r.dim = sys.fvars.size();
    r.rows = sys.rows.size();
    r.params = sys.params.size();
    r.rank_A = v.rank_A;
    r.rank_L = v.rank_L;
    r.rank_AL = v.rank_AL;
    return r;
}

std::vector<SectorRank> sector_ranks(const Structures& s, const std::vector<Weight>& sectors, int jobs) {
    std::vector<SectorRank> out(sectors.size());
    parallel_for(sectors.size(), jobs, [&](std::size_t i) { out[i] = sector_rank(s, sectors[i]); });
    return out;
}

FullSystem full_system(const Structures& s, int jobs) {
    FullSystem fs;
    fs.sectors = sector_ranks(s, all_sectors(s.sc.basis(), s.gamma), jobs);
    for (const auto& r : fs.sectors) {
        fs.fvars += r.dim;
        fs.rows += r.rows;
        fs.params += r.params;
        fs.rank_A += r.rank_A;
        fs.rank_L += r.rank_L;
        fs.rank_AL += r.rank_AL;
    }
    return fs;
}

SparseVec coboundary_of(const StructureConstants& sc, const std::vector<SparseVec>& f, int X, int Y) {
    const Basis& B = sc.basis();
    const bool px = B[X].parity != 0, py = B[Y].parity != 0;
    SparseVec out;
    vec_add(out, bracket_vec(sc, {{X, QuadScalar(1)}}, f.at(static_cast<std::size_t>(Y))), QuadScalar(px ? -1 : 1));
    // -(-1)^{(p(X)+1) p(Y)}: the sign flips exactly when X is even and Y is odd.
    const bool flip = !px && py;
    vec_add(out, bracket_vec(sc, {{Y, QuadScalar(1)}}, f.at(static_cast<std::size_t>(X))), QuadScalar(flip ? 1 : -1));
    for (const auto& [k, c] : sc.bracket(X, Y)) vec_add(out, f.at(static_cast<std::size_t>(k)), -c);
    return out;
}

SparseVec gamma_at(const GammaStructure& gs, int X, int Y, const std::vector<QuadScalar>& gb) {
    SparseVec out;
    for (int p = 0; p < gs.param_count(); ++p) {
        const QuadScalar& g = gb.at(static_cast<std::size_t>(p));
        if (!g.is_zero()) vec_add(out, gs.get(X, Y, p), g);
    }
    return out;
}

std::vector<SparseVec> b01_primitive(const Basis& b, const std::vector<QuadScalar>& gb) {
    if (b.m() != 0 || b.n() != 1) throw UsageError("the explicit primitive is defined for B(0,1) only");
    const QuadScalar& gp = gb.at(0);
    const QuadScalar& gm = gb.at(1);
    std::vector<SparseVec> f(static_cast<std::size_t>(b.size()));
    auto put = [&](const std::string& in, const std::string& out, const QuadScalar& c) {
        if (!c.is_zero()) vec_add(f[static_cast<std::size_t>(b.id(in))], {{b.id(out), QuadScalar(1)}}, c);
    };
    put("H1", "E-d1", -gp);
    put("H1", "E+d1", -gm);
    put("E+2d1", "E+d1", QuadScalar(-2) * gp);
    put("E-2d1", "E-d1", QuadScalar(-2) * gm);
    return f;
}

bool B01Report::pass() const {
    if (!(full.fvars == 12 && full.rank_A == 10 && full.rank_AL == 10)) return false;
    return std::all_of(directions.begin(), directions.end(), [](const B01Direction& d) { return d.primitive_ok && d.solver_ok; });
}

B01Report verify_b01(const Structures& s) {
    const Basis& B = s.sc.basis();
    if (B.m() != 0 || B.n() != 1) throw UsageError("verify_b01 needs the B(0,1) structures");
    B01Report rep;
    rep.full = full_system(s, 1);

    const int ip = s.gamma.param_id({Generator::a0(), Generator::boson(1, Sign::Plus)});
    const int im = s.gamma.param_id({Generator::a0(), Generator::boson(1, Sign::Minus)});
    auto make = [&](const std::string& name, QuadScalar gp, QuadScalar gm) {
        B01Direction d;
        d.name = name;
        d.gb.assign(static_cast<std::size_t>(s.gamma.param_count()), QuadScalar(0));
        d.gb[static_cast<std::size_t>(ip)] = gp;
        d.gb[static_cast<std::size_t>(im)] = gm;
        return d;
    };
    rep.directions = {make("gb[a0,b1+]", 1, 0), make("gb[a0,b1-]", 0, 1), make("gb[a0,b1+] + gb[a0,b1-]", 1, 1),
                      make("3/2 gb[a0,b1+] - 5 gb[a0,b1-]", QuadScalar(Rational(3, 2), Rational(0)), -5),
                      make("zero", 0, 0)};

    std::vector<SectorSystem> systems;
    for (const auto& mu : all_sectors(B, s.gamma)) systems.push_back(assemble_sector(s.sc, s.gamma, mu));

    for (auto& d : rep.directions) {
        std::vector<QuadScalar> local{d.gb[static_cast<std::size_t>(ip)], d.gb[static_cast<std::size_t>(im)]};
        std::vector<SparseVec> f = b01_primitive(B, local);
        d.primitive_ok = true;
        for (int x = 0; x < B.size() && d.primitive_ok; ++x)
            for (int y = 0; y < B.size(); ++y)
                if (!vec_equal(coboundary_of(s.sc, f, x, y), gamma_at(s.gamma, x, y, d.gb))) {
                    d.primitive_ok = false;
                    break;
                }
        d.solver_ok = true;
        for (const auto& sys : systems) {
            std::vector<QuadScalar> rhs = apply_L(sys, s.gamma, d.gb);
            SolveResult<QuadScalar> sol = particular_solution(sys.A, rhs);
            if (!sol.feasible || !verify_solution(sys.A, rhs, sol)) d.solver_ok = false;
        }
    }
    return rep;
}

std::size_t CertSuite::passed() const {
    return static_cast<std::size_t>(
        std::count_if(results.begin(), results.end(), [](const CertResult& r) { return r.verdict.pass; }));
}

CertSuite verify_certificates(const Structures& s, int jobs, bool check_span) {
    const Basis& B = s.sc.basis();
    CertSuite suite;
    suite.n = B.n();
    std::vector<Certificate> certs = all_certificates(B);
    suite.results.resize(certs.size());
    parallel_for(certs.size(), jobs, [&](std::size_t i) {
        SectorSystem sys = assemble_sector(s.sc, s.gamma, certs[i].sector);
        CertResult& r = suite.results[i];
        r.cert = certs[i];
        r.verdict = verify_certificate(certs[i], sys);
        if (check_span) {
            auto basis = left_nullspace(sys.A);
            r.in_nullspace_span = express_in_basis(basis, certificate_vector(certs[i], sys)).has_value();
        }
    });
    return suite;
}

BmnResult verify_bmn(int m, int n, std::size_t row_cap, int jobs, CartanFrame frame) {
    BmnResult r;
    r.m = m;
    r.n = n;
    Basis basis = build_basis(m, n);
    r.dim = basis.size();
    r.params = static_cast<int>(all_params(m, n).size());
    r.estimated_rows = full_system_row_count(basis);
    if (r.estimated_rows > row_cap) {
        r.skip_reason = "full system has " + std::to_string(r.estimated_rows) + " rows, above the row cap of " +
                        std::to_string(row_cap);
        return r;
    }
    auto s = cached_structures(m, n, frame);
    r.full = full_system(*s, jobs);
    return r;
}

std::string triviality_name(TrivialityKind k) {
    switch (k) {
        case TrivialityKind::AlwaysTrivial: return "always trivial";
        case TrivialityKind::TrivialOnlyAtZero: return "trivial iff gb = 0";
        case TrivialityKind::StrongConditionHolds: return "strong rank condition holds";
        case TrivialityKind::Undecided: return "undecided";
    }
    return "undecided";
}

TrivialityVerdict triviality_verdict(int m, int n, std::size_t row_cap, int jobs) {
    TrivialityVerdict v;
    v.m = m;
    v.n = n;
    if (m == 0) {
        if (n == 1) {
            v.b01 = verify_b01(*cached_structures(0, 1));
            if (v.b01->pass()) v.kind = TrivialityKind::AlwaysTrivial;
        } else {
            v.certs = verify_certificates(*cached_structures(0, n), jobs, true);
            bool all = v.certs->passed() == v.certs->results.size() &&
                       std::all_of(v.certs->results.begin(), v.certs->results.end(), [](const CertResult& r) { return r.in_nullspace_span; });
            if (all && v.certs->results.size() == static_cast<std::size_t>(2 * n)) v.kind = TrivialityKind::TrivialOnlyAtZero;
        }
        return v;
    }
    v.bmn = verify_bmn(m, n, row_cap, jobs);
    if (!v.bmn->full)
        throw ResourceError("B(" + std::to_string(m) + "," + std::to_string(n) + "): " + v.bmn->skip_reason);
    if (v.bmn->pass()) v.kind = TrivialityKind::StrongConditionHolds;
    return v;
}

}  // namespace ospcert
