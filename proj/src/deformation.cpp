#include "ospcert/deformation.hpp"

#include <cstdlib>
#include <mutex>
#include <random>
#include <tuple>

namespace ospcert {

std::vector<GbIndex> all_params(int m, int n) {
    std::vector<GbIndex> out;
    std::vector<Generator> odd{Generator::a0()};
    for (int i = 1; i <= m; ++i)
        for (Sign s : {Sign::Plus, Sign::Minus}) odd.push_back(Generator::fermion(i, s));
    for (const auto& u : odd)
        for (int j = 1; j <= n; ++j)
            for (Sign s : {Sign::Plus, Sign::Minus}) out.push_back({u, Generator::boson(j, s)});
    return out;
}

Weight param_weight(const GbIndex& p, int m, int n) {
    Weight w(static_cast<std::size_t>(m + n), 0);
    w[static_cast<std::size_t>(p.boson.index - 1)] -= sign_value(p.boson.sign);
    if (p.odd.kind == GenKind::Fermion) w[static_cast<std::size_t>(n + p.odd.index - 1)] -= sign_value(p.odd.sign);
    return w;
}

GammaStructure::GammaStructure(int m, int n, CartanFrame frame, std::map<std::array<int, 3>, SparseVec> table)
    : m_(m), n_(n), frame_(frame), params_(all_params(m, n)), table_(std::move(table)) {
    for (const auto& p : params_) weights_.push_back(param_weight(p, m, n));
    for (const auto& [key, v] : table_)
        if (key[2] < 0 || key[2] >= param_count() || v.empty()) throw IntegrityError("malformed gamma table entry");
}

int GammaStructure::param_id(const GbIndex& p) const {
    for (std::size_t i = 0; i < params_.size(); ++i)
        if (params_[i] == p) return static_cast<int>(i);
    throw UsageError("parameter " + p.label() + " does not belong to B(" + std::to_string(m_) + "," + std::to_string(n_) + ")");
}

const SparseVec& GammaStructure::get(int i, int j, int param) const {
    static const SparseVec empty;
    auto it = table_.find({i, j, param});
    return it == table_.end() ? empty : it->second;
}

GammaStructure build_gamma(const StructureConstants& sc, CartanFrame frame) {
    const Basis& B = sc.basis();
    std::vector<GbIndex> params = all_params(B.m(), B.n());
    std::map<GbIndex, int> pid;
    for (std::size_t i = 0; i < params.size(); ++i) pid[params[i]] = static_cast<int>(i);
    std::map<std::array<int, 3>, SparseVec> table;
    for (int i = 0; i < B.size(); ++i) {
        for (int j = 0; j < B.size(); ++j) {
            DeformedTail tail = gamma_substitute(B[i].realization, B[j].realization);
            for (const auto& [p, e] : tail) {
                Projection pr = project(B, e, frame);
                if (!pr.coords.empty()) table[{i, j, pid.at(p)}] = std::move(pr.coords);
            }
        }
    }
    return GammaStructure(B.m(), B.n(), frame, std::move(table));
}

std::vector<GbIndex> gamma_sector_params(int m, int n, const Weight& mu) {
    if (static_cast<int>(mu.size()) != m + n) throw UsageError("weight has the wrong length");
    if (m == 0) {
        int nonzero = 0, coord = -1;
        for (int c = 0; c < n; ++c)
            if (mu[static_cast<std::size_t>(c)] != 0) {
                ++nonzero;
                coord = c;
            }
        if (nonzero != 1 || std::abs(mu[static_cast<std::size_t>(coord)]) != 1)
            throw UsageError("weight " + weight_label(mu, n) + " is not a short root");
    }
    std::vector<GbIndex> out;
    for (const auto& p : all_params(m, n))
        if (param_weight(p, m, n) == mu) out.push_back(p);
    return out;
}

CheckReport gamma_parity_check(const StructureConstants& sc, const GammaStructure& gs) {
    const Basis& B = sc.basis();
    CheckReport rep;
    for (const auto& [key, v] : gs.table()) {
        int want = (B[key[0]].parity + B[key[1]].parity + 1) % 2;
        for (const auto& [z, c] : v) {
            ++rep.checked;
            if (B[z].parity != want) {
                ++rep.failures;
                if (rep.offending.size() < 10) rep.offending.push_back(B[key[0]].label + "," + B[key[1]].label + " -> " + B[z].label);
            }
        }
    }
    return rep;
}

CheckReport gamma_weight_check(const StructureConstants& sc, const GammaStructure& gs) {
    const Basis& B = sc.basis();
    CheckReport rep;
    for (const auto& [key, v] : gs.table()) {
        Weight want = weight_add(weight_add(B[key[0]].weight, B[key[1]].weight), gs.weight_of(key[2]));
        for (const auto& [z, c] : v) {
            ++rep.checked;
            if (B[z].weight != want) {
                ++rep.failures;
                if (rep.offending.size() < 10) rep.offending.push_back(B[key[0]].label + "," + B[key[1]].label + " -> " + B[z].label);
            }
        }
    }
    return rep;
}

namespace {

SparseVec gamma_vec(const GammaStructure& gs, int x, const SparseVec& v, int p) {
    SparseVec out;
    for (const auto& [k, c] : v) vec_add(out, gs.get(x, k, p), c);
    return out;
}

}  // namespace

CheckReport gamma_cocycle_check(const StructureConstants& sc, const GammaStructure& gs, std::size_t samples,
                                std::uint64_t seed) {
    const Basis& B = sc.basis();
    const int N = B.size();
    CheckReport rep;
    auto sgn = [](bool neg) { return neg ? QuadScalar(-1) : QuadScalar(1); };
    auto one = [&](int x, int y, int w) {
        const int tri[3][3] = {{x, y, w}, {y, w, x}, {w, x, y}};
        for (int p = 0; p < gs.param_count(); ++p) {
            ++rep.checked;
            SparseVec total;
            for (const auto& t : tri) {
                int a = t[0], b = t[1], c = t[2];
                QuadScalar s = sgn(B[a].parity & B[c].parity);
                SparseVec g = gs.get(b, c, p);
                vec_add(total, bracket_vec(sc, {{a, QuadScalar(1)}}, g), s * sgn(B[a].parity));
                vec_add(total, gamma_vec(gs, a, sc.bracket(b, c), p), s);
            }
            if (!total.empty()) {
                ++rep.failures;
                if (rep.offending.size() < 10)
                    rep.offending.push_back("(" + B[x].label + ", " + B[y].label + ", " + B[w].label + ") along " +
                                            gs.params()[static_cast<std::size_t>(p)].label());
            }
        }
    };
    if (samples == 0) {
        for (int x = 0; x < N; ++x)
            for (int y = 0; y < N; ++y)
                for (int w = 0; w < N; ++w) one(x, y, w);
    } else {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<int> pick(0, N - 1);
        for (std::size_t s = 0; s < samples; ++s) {
            int x = pick(rng), y = pick(rng), w = pick(rng);
            one(x, y, w);
        }
    }
    return rep;
}

std::shared_ptr<const Structures> cached_structures(int m, int n, CartanFrame frame) {
    static std::mutex mu;
    static std::map<std::tuple<int, int, int>, std::shared_ptr<const Structures>> cache;
    auto key = std::make_tuple(m, n, static_cast<int>(frame));
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    auto data = std::make_shared<Structures>();
    data->sc = build_structure(m, n);
    data->gamma = build_gamma(data->sc, frame);
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(key, std::move(data)).first->second;
}

}  // namespace ospcert
