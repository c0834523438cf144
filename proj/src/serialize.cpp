#include "ospcert/serialize.hpp"

#include <fstream>
#include <iomanip>
#include <memory>
#include <sstream>

#include <openssl/evp.h>

namespace ospcert {

namespace fs = std::filesystem;

const char* const kBasisOrderConvention =
    "Cartan H_1..H_{m+n} with H_k = h_k - h_{k+1} (k < m+n) and H_{m+n} = h_{m+n}, weight coordinates "
    "(d_1..d_n, e_1..e_m); then even root vectors in increasing lexicographic weight order; then odd root "
    "vectors a0 b_j^{+/-} (j ascending, + first) followed by a_i^{+/-} b_j^{+/-} (i, sign of a, j, sign of b)";
const char* const kRelationConvention =
    "b_j^- b_k^+ - b_k^+ b_j^- = delta_jk; a_i^+ a_i^- + a_i^- a_i^+ = 1; a0^2 = 1/2; fermions and a0 mutually "
    "anticommute; bosons commute with everything else; h_c = N_c + 1/2 (boson), N_c - 1/2 (fermion); words in "
    "the order a0 < a_1^+ < a_1^- < ... < b_1^+ < b_1^- < ...";
const char* const kWeightConvention =
    "u b - b u = gb[u,b] for odd u; gb[u,b] odd, written leftmost, products of two parameters vanish; "
    "wt(gb[u,b]) = -(wt(u) + wt(b)); identity components of gamma are discarded";

namespace {

constexpr const char* kAlgebraFormat = "ospcert.algebra.v1";
constexpr const char* kGammaFormat = "ospcert.gamma.v1";

std::string rational_text(const Rational& r) { return r.to_string(); }  // "p/q", or "p" when q = 1

Rational rational_from(const Json& j) {
    if (!j.is_string()) throw IntegrityError("rational entries must be strings");
    try {
        return Rational::parse(j.get<std::string>());
    } catch (const UsageError& e) {
        throw IntegrityError(e.what());
    }
}

FieldKind vec_field(const SparseVec& v, FieldKind acc) {
    for (const auto& [z, c] : v)
        if (!c.is_rational()) return FieldKind::QSqrt2;
    return acc;
}

Json vec_to_json(const SparseVec& v, FieldKind f) {
    Json arr = Json::array();
    for (const auto& [z, c] : v) arr.push_back(Json::array({z, scalar_to_json(c, f)}));
    return arr;
}

SparseVec vec_from_json(const Json& j, FieldKind f, int dim) {
    if (!j.is_array()) throw IntegrityError("coefficient vector must be an array");
    SparseVec v;
    for (const auto& e : j) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer()) throw IntegrityError("malformed vector entry");
        int z = e[0].get<int>();
        if (z < 0 || z >= dim) throw IntegrityError("vector index out of range");
        QuadScalar c = scalar_from_json(e[1], f);
        if (c.is_zero()) throw IntegrityError("explicit zero coefficient");
        if (!v.empty() && v.back().first >= z) throw IntegrityError("vector entries must be strictly increasing");
        v.emplace_back(z, std::move(c));
    }
    return v;
}

Monomial word_from(const std::string& s) {
    Monomial m;
    if (s == "1") return m;
    std::istringstream in(s);
    std::string tok;
    while (in >> tok) m.push_back(Generator::parse(tok));
    return m;
}

Json check_header(const Json& j, const char* format) {
    if (!j.is_object() || !j.contains("header")) throw IntegrityError("missing header");
    const Json& h = j.at("header");
    if (h.value("format", "") != format) throw IntegrityError(std::string("expected format ") + format);
    if (h.value("type", "") != "B") throw IntegrityError("only type B is supported");
    return h;
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw UsageError("cannot read " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const fs::path& p, const std::string& text) {
    std::error_code ec;
    fs::create_directories(p.parent_path(), ec);
    if (ec) throw UsageError("cannot create " + p.parent_path().string() + ": " + ec.message());
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out) throw UsageError("cannot write " + p.string());
    out << text;
    if (!out) throw UsageError("write failed for " + p.string());
}

Json parse_text(const std::string& text, const fs::path& p) {
    try {
        return Json::parse(text);
    } catch (const Json::exception& e) {
        throw IntegrityError(p.string() + ": " + e.what());
    }
}

}  // namespace

std::string field_name(FieldKind f) { return f == FieldKind::Q ? "Q" : "Q(sqrt2)"; }

FieldKind field_parse(const std::string& s) {
    if (s == "Q") return FieldKind::Q;
    if (s == "Q(sqrt2)") return FieldKind::QSqrt2;
    throw IntegrityError("unknown field '" + s + "'");
}

Json scalar_to_json(const QuadScalar& x, FieldKind f) {
    if (f == FieldKind::Q) {
        if (!x.is_rational()) throw IntegrityError("irrational coefficient in a Q file");
        return rational_text(x.a());
    }
    return Json::array({rational_text(x.a()), rational_text(x.b())});
}

QuadScalar scalar_from_json(const Json& j, FieldKind f) {
    if (f == FieldKind::Q) {
        if (!j.is_string()) throw IntegrityError("Q coefficients must be \"p/q\" strings");
        return QuadScalar(rational_from(j), Rational(0));
    }
    if (!j.is_array() || j.size() != 2) throw IntegrityError("Q(sqrt2) coefficients must be [\"p/q\", \"r/s\"] pairs");
    return QuadScalar(rational_from(j[0]), rational_from(j[1]));
}

Json algebra_to_json(const StructureConstants& sc) {
    const Basis& B = sc.basis();
    FieldKind f = FieldKind::Q;
    for (const auto& e : B.elements())
        for (const auto& [mono, c] : e.realization.terms())
            if (!c.is_rational()) f = FieldKind::QSqrt2;
    for (const auto& v : sc.table()) f = vec_field(v, f);

    Json basis = Json::array();
    for (const auto& e : B.elements()) {
        Json real = Json::array();
        for (const auto& [mono, c] : e.realization.terms())
            real.push_back({{"word", monomial_label(mono)}, {"coeff", scalar_to_json(c, f)}});
        basis.push_back({{"id", e.id},
                         {"label", e.label},
                         {"role", role_name(e.role)},
                         {"cartan_index", e.cartan_index},
                         {"weight", e.weight},
                         {"parity", e.parity},
                         {"realization", real}});
    }
    Json brackets = Json::array();
    const int N = B.size();
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            if (!sc.bracket(i, j).empty()) brackets.push_back({{"x", i}, {"y", j}, {"value", vec_to_json(sc.bracket(i, j), f)}});

    Json header = {{"format", kAlgebraFormat},
                   {"type", "B"},
                   {"m", B.m()},
                   {"n", B.n()},
                   {"field", field_name(f)},
                   {"dim", N},
                   {"even_dim", B.even_dim()},
                   {"odd_dim", B.odd_dim()},
                   {"basis_order", kBasisOrderConvention},
                   {"relations", kRelationConvention}};
    return {{"header", header}, {"basis", basis}, {"brackets", brackets}};
}

StructureConstants algebra_from_json(const Json& j) {
    try {
        const Json h = check_header(j, kAlgebraFormat);
        const int m = h.at("m").get<int>(), n = h.at("n").get<int>();
        const FieldKind f = field_parse(h.at("field").get<std::string>());
        std::vector<BasisElement> elems;
        for (const auto& e : j.at("basis")) {
            BasisElement b;
            b.id = e.at("id").get<int>();
            b.label = e.at("label").get<std::string>();
            b.role = role_parse(e.at("role").get<std::string>());
            b.cartan_index = e.at("cartan_index").get<int>();
            b.weight = e.at("weight").get<Weight>();
            b.parity = e.at("parity").get<int>();
            for (const auto& t : e.at("realization"))
                b.realization.add_term(word_from(t.at("word").get<std::string>()), scalar_from_json(t.at("coeff"), f));
            elems.push_back(std::move(b));
        }
        Basis basis(m, n, std::move(elems));
        if (h.at("dim").get<int>() != basis.size()) throw IntegrityError("header dim disagrees with the basis");
        const int N = basis.size();
        std::vector<SparseVec> table(static_cast<std::size_t>(N) * static_cast<std::size_t>(N));
        for (const auto& b : j.at("brackets")) {
            int x = b.at("x").get<int>(), y = b.at("y").get<int>();
            if (x < 0 || y < 0 || x >= N || y >= N) throw IntegrityError("bracket index out of range");
            SparseVec& slot = table[static_cast<std::size_t>(x) * static_cast<std::size_t>(N) + static_cast<std::size_t>(y)];
            if (!slot.empty()) throw IntegrityError("duplicate bracket entry");
            slot = vec_from_json(b.at("value"), f, N);
        }
        return StructureConstants(std::move(basis), std::move(table));
    } catch (const Json::exception& e) {
        throw IntegrityError(std::string("malformed algebra file: ") + e.what());
    } catch (const UsageError& e) {
        throw IntegrityError(std::string("malformed algebra file: ") + e.what());
    }
}

Json gamma_to_json(const StructureConstants& sc, const GammaStructure& gs) {
    FieldKind f = FieldKind::Q;
    for (const auto& [key, v] : gs.table()) f = vec_field(v, f);
    Json params = Json::array();
    for (int p = 0; p < gs.param_count(); ++p)
        params.push_back({{"id", p}, {"label", gs.params()[static_cast<std::size_t>(p)].label()}, {"weight", gs.weight_of(p)}});
    Json entries = Json::array();
    for (const auto& [key, v] : gs.table())
        entries.push_back({{"x", key[0]}, {"y", key[1]}, {"param", key[2]}, {"value", vec_to_json(v, f)}});
    Json header = {{"format", kGammaFormat},
                   {"type", "B"},
                   {"m", gs.m()},
                   {"n", gs.n()},
                   {"field", field_name(f)},
                   {"dim", sc.dim()},
                   {"params", params},
                   {"cartan_frame", frame_name(gs.frame())},
                   {"basis_order", kBasisOrderConvention},
                   {"relations", kRelationConvention},
                   {"weight_convention", kWeightConvention}};
    return {{"header", header}, {"entries", entries}};
}

GammaStructure gamma_from_json(const Json& j, const StructureConstants& sc) {
    try {
        const Json h = check_header(j, kGammaFormat);
        const int m = h.at("m").get<int>(), n = h.at("n").get<int>();
        if (m != sc.basis().m() || n != sc.basis().n()) throw IntegrityError("gamma file and algebra disagree on (m,n)");
        if (h.at("dim").get<int>() != sc.dim()) throw IntegrityError("gamma file dim disagrees with the algebra");
        const FieldKind f = field_parse(h.at("field").get<std::string>());
        const CartanFrame frame = frame_parse(h.at("cartan_frame").get<std::string>());
        std::vector<GbIndex> expect = all_params(m, n);
        const Json& params = h.at("params");
        if (params.size() != expect.size()) throw IntegrityError("parameter list has the wrong length");
        for (std::size_t p = 0; p < expect.size(); ++p) {
            if (params[p].at("id").get<std::size_t>() != p || GbIndex::parse(params[p].at("label").get<std::string>()) != expect[p] ||
                params[p].at("weight").get<Weight>() != param_weight(expect[p], m, n))
                throw IntegrityError("parameter " + std::to_string(p) + " does not match the convention");
        }
        std::map<std::array<int, 3>, SparseVec> table;
        const int N = sc.dim();
        for (const auto& e : j.at("entries")) {
            std::array<int, 3> key{e.at("x").get<int>(), e.at("y").get<int>(), e.at("param").get<int>()};
            if (key[0] < 0 || key[1] < 0 || key[0] >= N || key[1] >= N) throw IntegrityError("gamma index out of range");
            if (!table.emplace(key, vec_from_json(e.at("value"), f, N)).second) throw IntegrityError("duplicate gamma entry");
        }
        return GammaStructure(m, n, frame, std::move(table));
    } catch (const Json::exception& e) {
        throw IntegrityError(std::string("malformed gamma file: ") + e.what());
    } catch (const UsageError& e) {
        throw IntegrityError(std::string("malformed gamma file: ") + e.what());
    }
}

std::string canonical_dump(const Json& j) { return j.dump(2) + "\n"; }

std::string sha256_hex(const std::string& data) {
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
        EVP_DigestUpdate(ctx.get(), data.data(), data.size()) != 1 || EVP_DigestFinal_ex(ctx.get(), md, &len) != 1)
        throw ResourceError("SHA-256 computation failed");
    std::ostringstream out;
    for (unsigned int i = 0; i < len; ++i) out << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
    return out.str();
}

static std::string file_stem(int m, int n) { return "B_" + std::to_string(m) + "_" + std::to_string(n) + ".json"; }

fs::path algebra_path(const fs::path& dir, int m, int n) { return dir / "algebra_structures" / file_stem(m, n); }
fs::path gamma_path(const fs::path& dir, int m, int n) { return dir / "gamma_structures" / file_stem(m, n); }

StructureHashes structure_hashes(const Structures& s) {
    return {sha256_hex(canonical_dump(algebra_to_json(s.sc))), sha256_hex(canonical_dump(gamma_to_json(s.sc, s.gamma)))};
}

WriteResult write_structures(const fs::path& dir, const Structures& s) {
    const int m = s.sc.basis().m(), n = s.sc.basis().n();
    WriteResult r;
    r.algebra_file = algebra_path(dir, m, n);
    r.gamma_file = gamma_path(dir, m, n);
    std::string alg = canonical_dump(algebra_to_json(s.sc));
    std::string gam = canonical_dump(gamma_to_json(s.sc, s.gamma));
    r.written = {sha256_hex(alg), sha256_hex(gam)};
    write_file(r.algebra_file, alg);
    write_file(r.gamma_file, gam);

    Structures back = read_structures(dir, m, n);
    r.reloaded = structure_hashes(back);
    if (!r.identical()) throw IntegrityError("reloaded structures of B(" + std::to_string(m) + "," + std::to_string(n) + ") differ");
    return r;
}

bool structures_exist(const fs::path& dir, int m, int n) {
    return fs::exists(algebra_path(dir, m, n)) && fs::exists(gamma_path(dir, m, n));
}

Structures read_structures(const fs::path& dir, int m, int n) {
    fs::path ap = algebra_path(dir, m, n), gp = gamma_path(dir, m, n);
    Structures s;
    s.sc = algebra_from_json(parse_text(read_file(ap), ap));
    if (s.sc.basis().m() != m || s.sc.basis().n() != n) throw IntegrityError(ap.string() + " describes a different algebra");
    s.gamma = gamma_from_json(parse_text(read_file(gp), gp), s.sc);
    return s;
}

}  // namespace ospcert
