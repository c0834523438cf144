#include "ospcert/cli_io.hpp"

#include <chrono>
#include <cstdlib>
#include <sstream>

namespace ospcert {

namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

std::string format_table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> width(header.size(), 0);
    for (std::size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
    for (const auto& r : rows)
        for (std::size_t c = 0; c < r.size() && c < width.size(); ++c) width[c] = std::max(width[c], r[c].size());
    std::ostringstream out;
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t c = 0; c < cells.size(); ++c) {
            if (c) out << "  ";
            out << cells[c];
            if (c + 1 < cells.size()) out << std::string(width[c] - cells[c].size(), ' ');
        }
        out << '\n';
    };
    line(header);
    std::size_t total = 0;
    for (auto w : width) total += w;
    out << std::string(total + 2 * (width.size() - 1), '-') << '\n';
    for (const auto& r : rows) line(r);
    return out.str();
}

std::string key_of(int m, int n) { return "B_" + std::to_string(m) + "_" + std::to_string(n); }
std::string name_of(int m, int n) { return "B(" + std::to_string(m) + "," + std::to_string(n) + ")"; }
std::string yesno(bool b) { return b ? "PASS" : "FAIL"; }

// Scalars in reports use the Q(sqrt2) pair only when they are irrational.
Json scalar_json(const QuadScalar& x) {
    return x.is_rational() ? scalar_to_json(x, FieldKind::Q) : scalar_to_json(x, FieldKind::QSqrt2);
}

struct ReportBuilder {
    Clock::time_point start = Clock::now();
    Json inputs = Json::object();
    Json args;
    std::string name;

    ReportBuilder(std::string cmd, Json a) : args(std::move(a)), name(std::move(cmd)) {}

    void note_input(int m, int n, const ObtainedStructures& o) {
        inputs[key_of(m, n)] = {{"algebra_sha256", o.hashes.algebra}, {"gamma_sha256", o.hashes.gamma}, {"source", o.source}};
    }

    Report finish(Json results, bool pass, std::string text) {
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count();
        Report r;
        r.exit_code = pass ? 0 : 1;
        r.data = {{"command", {{"name", name}, {"args", args}}},
                  {"inputs", inputs},
                  {"results", std::move(results)},
                  {"pass", pass},
                  {"exit_code", r.exit_code},
                  {"timing", {{"wall_ms", static_cast<long long>(ms)}}}};
        std::ostringstream out;
        out << text << "\n" << name << ": " << (pass ? "PASS" : "FAIL") << " (" << ms << " ms)\n";
        r.text = out.str();
        return r;
    }
};

Json common_args(const CommonOptions& opt) {
    return {{"jobs", opt.jobs}, {"row_cap", opt.row_cap}, {"gamma_frame", frame_name(opt.frame)}};
}

Json sector_json(const Basis& b, const SectorRank& r) {
    return {{"sector", weight_label(r.mu, b.n())},
            {"dim", r.dim},
            {"rows", r.rows},
            {"params", r.params},
            {"rank", r.rank_A},
            {"corank", r.corank()},
            {"rank_L", r.rank_L},
            {"rank_AL", r.rank_AL}};
}

Json full_json(const FullSystem& f) {
    return {{"dim", f.fvars},
            {"rows", f.rows},
            {"params", f.params},
            {"rank", f.rank_A},
            {"corank", f.fvars - f.rank_A},
            {"rank_L", f.rank_L},
            {"rank_AL", f.rank_AL},
            {"condition", f.condition()},
            {"strong_condition", f.strong_condition()}};
}

std::string cert_table_text(const Basis& b, const CertResult& r) {
    std::vector<std::string> header{"f-variable"};
    for (std::size_t k = 0; k < r.cert.components.size(); ++k) header.push_back("c" + std::to_string(k + 1));
    header.push_back("total");
    std::vector<std::vector<std::string>> rows;
    for (const auto& e : r.verdict.table) {
        std::vector<std::string> row{fvar_label(b, e.fvar)};
        for (const auto& v : e.per_component) row.push_back(v.is_zero() ? "" : v.to_string());
        row.push_back(e.total.to_string());
        rows.push_back(std::move(row));
    }
    std::vector<std::string> lam{"c^T L"};
    for (const auto& v : r.verdict.component_lambda) lam.push_back(v.is_zero() ? "" : v.to_string());
    lam.push_back(r.verdict.lambda.to_string());
    rows.push_back(std::move(lam));
    return format_table(header, rows);
}

}  // namespace

fs::path resolve_data_dir(const std::optional<std::string>& flag) {
    if (flag && !flag->empty()) return *flag;
    if (const char* env = std::getenv(kDataDirEnv); env && *env) return env;
    return "data";
}

std::vector<int> parse_n_range(const std::string& s) {
    auto to_int = [&](const std::string& t) {
        if (t.empty() || t.size() > 6 || t.find_first_not_of("0123456789") != std::string::npos)
            throw UsageError("malformed range '" + s + "'; expected N or A..B");
        return std::stoi(t);
    };
    std::size_t dots = s.find("..");
    int lo, hi;
    if (dots != std::string::npos) {
        lo = to_int(s.substr(0, dots));
        hi = to_int(s.substr(dots + 2));
    } else if (std::size_t dash = s.find('-'); dash != std::string::npos) {
        lo = to_int(s.substr(0, dash));
        hi = to_int(s.substr(dash + 1));
    } else {
        lo = hi = to_int(s);
    }
    if (lo > hi) throw UsageError("empty range '" + s + "'");
    if (lo < 1) throw UsageError("n must be at least 1 in '" + s + "'");
    std::vector<int> out;
    for (int k = lo; k <= hi; ++k) out.push_back(k);
    return out;
}

Json strip_timing(const Json& report) {
    Json j = report;
    j.erase("timing");
    return j;
}

std::string report_text(const Report& r) { return canonical_dump(r.data); }

ObtainedStructures obtain_structures(const CommonOptions& opt, int m, int n) {
    ObtainedStructures o;
    if (structures_exist(opt.data_dir, m, n)) {
        auto s = std::make_shared<Structures>(read_structures(opt.data_dir, m, n));
        if (s->gamma.frame() != opt.frame)
            throw UsageError("stored gamma for " + name_of(m, n) + " uses the " + frame_name(s->gamma.frame()) +
                             " frame; regenerate it or pass --gamma-frame " + frame_name(s->gamma.frame()));
        o.s = std::move(s);
        o.source = "file";
    } else {
        o.s = cached_structures(m, n, opt.frame);
        o.source = "computed";
    }
    o.hashes = structure_hashes(*o.s);
    return o;
}

std::vector<std::pair<int, int>> bmn_grid(int max_m, int max_n) {
    if (max_m < 1 || max_n < 1) throw UsageError("--max-m and --max-n must be at least 1");
    std::vector<std::pair<int, int>> out;
    for (int m = 1; m <= max_m; ++m)
        for (int n = 1; n <= max_n; ++n) out.emplace_back(m, n);
    return out;
}

Report cmd_generate(const CommonOptions& opt, int m, const std::vector<int>& ns) {
    ReportBuilder rb("generate", {{"m", m}, {"n", ns}, {"data_dir", opt.data_dir.generic_string()}, {"gamma_frame", frame_name(opt.frame)}});
    Json results = Json::array();
    std::vector<std::vector<std::string>> rows;
    bool pass = true;
    for (int n : ns) {
        if (m + n > kMaxRank || m < 0 || n < 1) {
            long long d = 2LL * (m + n) * (m + n) + (m + n) + 2LL * n * (2 * m + 1);
            throw UsageError(name_of(m, n) + " is outside the supported range (rank <= " + std::to_string(kMaxRank) +
                             "); it would need a " + std::to_string(d) + "-element basis and a " +
                             std::to_string(d * d) + "-entry bracket table");
        }
        auto s = cached_structures(m, n, opt.frame);
        WriteResult w = write_structures(opt.data_dir, *s);
        pass = pass && w.identical();
        results.push_back({{"algebra", key_of(m, n)},
                           {"algebra_file", w.algebra_file.generic_string()},
                           {"gamma_file", w.gamma_file.generic_string()},
                           {"dim", s->sc.dim()},
                           {"params", s->gamma.param_count()},
                           {"algebra_sha256", w.written.algebra},
                           {"gamma_sha256", w.written.gamma},
                           {"reload_identical", w.identical()}});
        rows.push_back({name_of(m, n), std::to_string(s->sc.dim()), std::to_string(s->gamma.param_count()),
                        w.written.algebra.substr(0, 16), w.written.gamma.substr(0, 16), w.identical() ? "identical" : "DIFFERENT"});
    }
    return rb.finish(results, pass, format_table({"algebra", "dim", "gb", "algebra sha256", "gamma sha256", "reload"}, rows));
}

Report cmd_dim_check(const CommonOptions& opt, const std::vector<int>& ns) {
    ReportBuilder rb("dim-check", {{"n", ns}});
    (void)opt;
    Json results = Json::array();
    std::vector<std::vector<std::string>> rows;
    bool pass = true;
    for (int n : ns) {
        DimReport d = dim_check(n);
        pass = pass && d.pass();
        Basis b = build_basis(0, n);
        Json sectors = Json::array();
        for (const auto& s : d.sectors) {
            sectors.push_back({{"sector", weight_label(s.mu, n)}, {"dim", s.count}, {"census", s.census}, {"pass", s.pass}});
            std::string census;
            for (std::size_t k = 0; k < s.census.size(); ++k) census += (k ? "," : "") + std::to_string(s.census[k]);
            rows.push_back({std::to_string(n), weight_label(s.mu, n), std::to_string(s.count), std::to_string(d.expected), census, yesno(s.pass)});
        }
        results.push_back({{"n", n}, {"expected_dim", d.expected}, {"expected_census", d.expected_census}, {"sectors", sectors}, {"pass", d.pass()}});
    }
    return rb.finish(results, pass, format_table({"n", "sector", "dim", "expected", "census", "verdict"}, rows));
}

Report cmd_rank(const CommonOptions& opt, int m, const std::vector<int>& ns, const std::optional<std::string>& sector) {
    Json args = common_args(opt);
    args["m"] = m;
    args["n"] = ns;
    args["sector"] = sector ? Json(*sector) : Json(nullptr);
    ReportBuilder rb("rank", args);
    Json results = Json::array();
    std::vector<std::vector<std::string>> rows;
    bool pass = true;
    for (int n : ns) {
        if (m > 0) {
            std::size_t est = full_system_row_count(build_basis(m, n));
            if (est > opt.row_cap)
                throw ResourceError(name_of(m, n) + " needs about " + std::to_string(est) + " rows, above the row cap " +
                                    std::to_string(opt.row_cap));
        }
        ObtainedStructures o = obtain_structures(opt, m, n);
        rb.note_input(m, n, o);
        const Basis& B = o.s->sc.basis();
        std::vector<Weight> sectors;
        if (sector) sectors.push_back(weight_parse(*sector, m, n));
        else if (m == 0) sectors = short_root_sectors(n);
        else sectors = all_sectors(B, o.s->gamma);
        std::vector<SectorRank> ranks = sector_ranks(*o.s, sectors, opt.jobs);

        Json entry = {{"algebra", key_of(m, n)}};
        Json js = Json::array();
        bool ok = true;
        for (const auto& r : ranks) {
            bool expect_ok = true;
            std::string expect = "-";
            if (m == 0 && n >= 2 && is_short_root(r.mu)) {
                std::size_t d = static_cast<std::size_t>(6 * n - 2);
                expect_ok = r.dim == d && r.rank_A == d - 1 && r.corank() == 1 && r.rank_AL == r.rank_A + 1;
                expect = "(" + std::to_string(d) + "," + std::to_string(d - 1) + ",1)";
            }
            ok = ok && expect_ok;
            Json sj = sector_json(B, r);
            sj["expected"] = expect == "-" ? Json(nullptr) : Json(expect);
            sj["pass"] = expect_ok;
            js.push_back(sj);
            rows.push_back({name_of(m, n), weight_label(r.mu, n), std::to_string(r.dim), std::to_string(r.rank_A),
                            std::to_string(r.corank()), std::to_string(r.rank_L), std::to_string(r.rank_AL), expect,
                            yesno(expect_ok)});
        }
        entry["sectors"] = js;
        if (n == 1 || m > 0) {
            FullSystem f = full_system(*o.s, opt.jobs);
            bool fok = true;
            std::string expect = "-";
            if (m == 0 && n == 1) {
                fok = f.fvars == 12 && f.rank_A == 10 && f.fvars - f.rank_A == 2;
                expect = "(12,10,2)";
            }
            ok = ok && fok;
            Json fj = full_json(f);
            fj["expected"] = expect == "-" ? Json(nullptr) : Json(expect);
            fj["pass"] = fok;
            entry["full"] = fj;
            rows.push_back({name_of(m, n), "full", std::to_string(f.fvars), std::to_string(f.rank_A),
                            std::to_string(f.fvars - f.rank_A), std::to_string(f.rank_L), std::to_string(f.rank_AL), expect,
                            yesno(fok)});
        }
        entry["pass"] = ok;
        pass = pass && ok;
        results.push_back(entry);
    }
    return rb.finish(results, pass,
                     format_table({"algebra", "sector", "dim", "rank", "corank", "rank L", "rank [A|L]", "expected", "verdict"}, rows));
}

Report cmd_verify_certs(const CommonOptions& opt, const std::vector<int>& ns) {
    Json args = common_args(opt);
    args["n"] = ns;
    ReportBuilder rb("verify-certs", args);
    Json results = Json::array();
    std::vector<std::vector<std::string>> rows;
    std::ostringstream tables;
    std::size_t total = 0, passed = 0;
    for (int n : ns) {
        if (n < 2) throw UsageError("certificates exist for n >= 2 only");
        ObtainedStructures o = obtain_structures(opt, 0, n);
        rb.note_input(0, n, o);
        const Basis& B = o.s->sc.basis();
        CertSuite suite = verify_certificates(*o.s, opt.jobs, true);
        Json certs = Json::array();
        for (const auto& r : suite.results) {
            bool ok = r.verdict.pass && r.in_nullspace_span;
            ++total;
            if (ok) ++passed;
            Json table = Json::array();
            for (const auto& e : r.verdict.table) {
                Json per = Json::array();
                for (const auto& v : e.per_component) per.push_back(scalar_json(v));
                table.push_back({{"fvar", fvar_label(B, e.fvar)}, {"per_component", per}, {"total", scalar_json(e.total)}});
            }
            Json comps = Json::array();
            for (std::size_t k = 0; k < r.cert.components.size(); ++k)
                comps.push_back({{"row", row_label(B, r.cert.components[k].row)},
                                 {"coeff", scalar_json(r.cert.components[k].coeff)},
                                 {"lambda_part", scalar_json(r.verdict.component_lambda.at(k))}});
            certs.push_back({{"name", r.cert.name()},
                             {"sector", weight_label(r.cert.sector, n)},
                             {"target", r.cert.target_param.label()},
                             {"components", comps},
                             {"table", table},
                             {"cTA_zero", r.verdict.null_ok},
                             {"in_left_nullspace_span", r.in_nullspace_span},
                             {"lambda", scalar_json(r.verdict.lambda)},
                             {"expected_lambda", scalar_json(r.cert.expected_lambda)},
                             {"pass", ok}});
            rows.push_back({std::to_string(n), r.cert.name(), weight_label(r.cert.sector, n), r.cert.target_param.label(),
                            r.verdict.null_ok ? "0" : "NONZERO", r.verdict.lambda.to_string(), r.cert.expected_lambda.to_string(),
                            yesno(ok)});
            if (opt.tables) tables << "\n" << r.cert.name() << " at n=" << n << "\n" << cert_table_text(B, r);
        }
        results.push_back({{"n", n}, {"certificates", certs}, {"passed", suite.passed()}, {"total", suite.results.size()}});
    }
    bool pass = passed == total;
    std::ostringstream text;
    text << format_table({"n", "certificate", "sector", "target", "c^T A", "lambda", "expected", "verdict"}, rows);
    text << tables.str();
    text << "\ncertificates passed: " << passed << "/" << total << "\n";
    Json summary = {{"per_n", results}, {"passed", passed}, {"total", total}};
    return rb.finish(summary, pass, text.str());
}

Report cmd_verify_b01(const CommonOptions& opt) {
    ReportBuilder rb("verify-b01", common_args(opt));
    ObtainedStructures o = obtain_structures(opt, 0, 1);
    rb.note_input(0, 1, o);
    B01Report r = verify_b01(*o.s);
    Json dirs = Json::array();
    std::vector<std::vector<std::string>> rows;
    for (const auto& d : r.directions) {
        Json gb = Json::array();
        for (const auto& g : d.gb) gb.push_back(scalar_json(g));
        dirs.push_back({{"name", d.name}, {"gb", gb}, {"explicit_primitive", d.primitive_ok}, {"solver", d.solver_ok}});
        rows.push_back({d.name, d.primitive_ok ? "delta f = gamma" : "MISMATCH", d.solver_ok ? "solved" : "INFEASIBLE",
                        yesno(d.primitive_ok && d.solver_ok)});
    }
    Json results = {{"full", full_json(r.full)}, {"directions", dirs}};
    std::ostringstream text;
    text << "B(0,1) full system: dim " << r.full.fvars << ", rank(A) " << r.full.rank_A << ", rank([A|L]) " << r.full.rank_AL
         << ", rank(L) " << r.full.rank_L << "\n"
         << "expected rank(A) = rank([A|L]) = 10: " << yesno(r.full.rank_A == 10 && r.full.rank_AL == 10) << "\n\n";
    text << format_table({"direction", "explicit f", "exact solver", "verdict"}, rows);
    return rb.finish(results, r.pass(), text.str());
}

Report cmd_verify_bmn(const CommonOptions& opt, const std::vector<std::pair<int, int>>& targets) {
    Json args = common_args(opt);
    Json tj = Json::array();
    for (const auto& [m, n] : targets) tj.push_back({m, n});
    args["targets"] = tj;
    ReportBuilder rb("verify-bmn", args);
    Json results = Json::array();
    std::vector<std::vector<std::string>> rows;
    bool pass = true;
    for (const auto& [m, n] : targets) {
        if (m < 1) throw UsageError("verify-bmn needs m >= 1; m = 0 is covered by rank and verify-certs");
        BmnResult r;
        Basis basis = build_basis(m, n);
        r.m = m;
        r.n = n;
        r.dim = basis.size();
        r.params = static_cast<int>(all_params(m, n).size());
        r.estimated_rows = full_system_row_count(basis);
        Json entry = {{"algebra", key_of(m, n)}, {"dim", r.dim}, {"params", r.params}, {"estimated_rows", r.estimated_rows}};
        if (r.estimated_rows > opt.row_cap) {
            r.skip_reason = "skipped: the full system has " + std::to_string(r.estimated_rows) +
                            " rows, above the row cap of " + std::to_string(opt.row_cap) + " (raise --row-cap to attempt it)";
            entry["verdict"] = "SKIP";
            entry["note"] = r.skip_reason;
            rows.push_back({name_of(m, n), std::to_string(r.dim), std::to_string(r.params), std::to_string(r.estimated_rows),
                            "-", "-", "-", "SKIP"});
        } else {
            ObtainedStructures o = obtain_structures(opt, m, n);
            rb.note_input(m, n, o);
            r.full = full_system(*o.s, opt.jobs);
            entry["field"] = field_name(o.s->sc.is_rational() ? FieldKind::Q : FieldKind::QSqrt2);
            entry["full"] = full_json(*r.full);
            entry["verdict"] = r.pass() ? "PASS" : "FAIL";
            pass = pass && r.pass();
            rows.push_back({name_of(m, n), std::to_string(r.dim), std::to_string(r.params), std::to_string(r.full->rows),
                            std::to_string(r.full->rank_A), std::to_string(r.full->rank_L), std::to_string(r.full->rank_AL),
                            yesno(r.pass())});
        }
        results.push_back(entry);
    }
    std::string text = format_table({"algebra", "dim", "gb", "rows", "rank A", "rank L", "rank [A|L]", "strong"}, rows);
    for (const auto& e : results)
        if (e.contains("note")) text += e.at("algebra").get<std::string>() + ": " + e.at("note").get<std::string>() + "\n";
    return rb.finish(results, pass, text);
}

}  // namespace ospcert
