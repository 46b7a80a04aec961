#include "specdim/json_io.hpp"

#include <map>

#include "specdim/error.hpp"

namespace specdim {
namespace jio {

std::string join(const std::string& field, const char* key) {
    return field.empty() ? std::string(key) : field + "." + key;
}

const Json& need(const Json& j, const std::string& field, const char* key) {
    require(j.is_object(), Err::BadConfig,
            (field.empty() ? std::string("config") : field) + " must be an object");
    auto it = j.find(key);
    require(it != j.end(), Err::BadConfig, join(field, key) + " is missing");
    return *it;
}

double num(const Json& j, const std::string& path) {
    require(j.is_number(), Err::BadConfig, path + " must be a number");
    return j.get<double>();
}

double num_key(const Json& j, const std::string& field, const char* key) {
    return num(need(j, field, key), join(field, key));
}

double num_or(const Json& j, const std::string& field, const char* key, double dflt) {
    if (!j.is_object() || !j.contains(key)) return dflt;
    return num(j[key], join(field, key));
}

std::int64_t int_key(const Json& j, const std::string& field, const char* key) {
    const double v = num_key(j, field, key);
    require(v == static_cast<std::int64_t>(v), Err::BadConfig,
            join(field, key) + " must be an integer");
    return static_cast<std::int64_t>(v);
}

std::int64_t int_or(const Json& j, const std::string& field, const char* key,
                    std::int64_t dflt) {
    if (!j.is_object() || !j.contains(key)) return dflt;
    return int_key(j, field, key);
}

std::string str_key(const Json& j, const std::string& field, const char* key) {
    const Json& v = need(j, field, key);
    require(v.is_string(), Err::BadConfig, join(field, key) + " must be a string");
    return v.get<std::string>();
}

std::string str_or(const Json& j, const std::string& field, const char* key,
                   const std::string& dflt) {
    if (!j.is_object() || !j.contains(key)) return dflt;
    require(j[key].is_string(), Err::BadConfig, join(field, key) + " must be a string");
    return j[key].get<std::string>();
}

bool bool_or(const Json& j, const std::string& field, const char* key, bool dflt) {
    if (!j.is_object() || !j.contains(key)) return dflt;
    require(j[key].is_boolean(), Err::BadConfig, join(field, key) + " must be a boolean");
    return j[key].get<bool>();
}

std::vector<double> num_array(const Json& j, const std::string& path) {
    require(j.is_array(), Err::BadConfig, path + " must be an array");
    std::vector<double> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(num(j[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

}  // namespace jio

using jio::bool_or;
using jio::need;
using jio::num;
using jio::num_array;
using jio::num_key;
using jio::num_or;
using jio::str_key;

GaugeFunction gauge_from_json(const Json& j, const std::string& field) {
    const std::string name = str_key(j, field, "name");
    std::map<std::string, double> params;
    if (j.contains("params")) {
        const Json& p = j["params"];
        require(p.is_object(), Err::BadConfig, field + ".params must be an object");
        for (auto it = p.begin(); it != p.end(); ++it)
            params[it.key()] = num(it.value(), field + ".params." + it.key());
    }
    try {
        return build_named(name, params);
    } catch (const Error& e) {
        if (e.code() == Err::UnknownName)
            fail(Err::BadConfig, field + ".name: " + std::string(e.what()));
        fail(Err::BadConfig, field + ".params: " + std::string(e.what()));
    }
}

namespace {

Interval interval_from_json(const Json& j, const std::string& field) {
    Interval iv;
    iv.lo_unbounded = bool_or(j, field, "lo_unbounded", false);
    iv.hi_unbounded = bool_or(j, field, "hi_unbounded", false);
    if (!iv.lo_unbounded) iv.lo = num_key(j, field, "lo");
    if (!iv.hi_unbounded) iv.hi = num_key(j, field, "hi");
    iv.lo_open = bool_or(j, field, "lo_open", iv.lo_open);
    iv.hi_open = bool_or(j, field, "hi_open", iv.hi_open);
    return iv;
}

}  // namespace

CompleteFamily family_from_json(const Json& j, const std::string& field) {
    const std::string kind = str_key(j, field, "kind");
    const Interval iv = interval_from_json(need(j, field, "index"), field + ".index");
    if (kind == "power") return power_family(iv);
    if (kind == "log_power") return log_power_family(iv);
    if (kind == "stretched")
        return stretched_family(gauge_from_json(need(j, field, "base"), field + ".base"), iv);
    if (kind == "pow")
        return pow_family(gauge_from_json(need(j, field, "base"), field + ".base"), iv);
    fail(Err::BadConfig, field + ".kind: unknown family kind '" + kind + "'");
}

SpectralMeasure measure_from_json(const Json& j, const std::string& field) {
    require(j.is_object(), Err::BadConfig, field + " must be an object");
    SpectralMeasure mu;
    if (j.contains("atoms")) {
        const Json& atoms = j["atoms"];
        require(atoms.is_array(), Err::BadConfig, field + ".atoms must be an array");
        for (std::size_t i = 0; i < atoms.size(); ++i) {
            const std::string path = field + ".atoms[" + std::to_string(i) + "]";
            require(atoms[i].is_array() && atoms[i].size() == 2, Err::BadConfig,
                    path + " must be [pos, mass]");
            mu.atoms.push_back({num(atoms[i][0], path), num(atoms[i][1], path)});
        }
    }
    if (j.contains("density")) {
        const Json& dens = j["density"];
        require(dens.is_array(), Err::BadConfig, field + ".density must be an array");
        for (std::size_t i = 0; i < dens.size(); ++i) {
            const std::string path = field + ".density[" + std::to_string(i) + "]";
            const Json& pj = dens[i];
            const Json& iv = need(pj, path, "interval");
            require(iv.is_array() && iv.size() == 2, Err::BadConfig,
                    path + ".interval must be [a, b]");
            DensityPiece piece;
            piece.a = num(iv[0], path + ".interval");
            piece.b = num(iv[1], path + ".interval");
            const std::string kind = str_key(pj, path, "kind");
            if (kind == "const") {
                piece.kind = DensityPiece::Kind::Const;
                piece.value = num_key(pj, path, "value");
            } else if (kind == "semicircle") {
                piece.kind = DensityPiece::Kind::Semicircle;
                piece.value = num_key(pj, path, "value");
            } else if (kind == "table") {
                piece.kind = DensityPiece::Kind::Table;
                piece.xs = num_array(need(pj, path, "xs"), path + ".xs");
                piece.ws = num_array(need(pj, path, "ws"), path + ".ws");
            } else {
                fail(Err::BadConfig, path + ".kind: unknown density kind '" + kind + "'");
            }
            mu.density.push_back(std::move(piece));
        }
    }
    require(!mu.atoms.empty() || !mu.density.empty(), Err::BadConfig,
            field + " must carry atoms or density");
    mu.resolution_floor = num_or(j, field, "resolution_floor", 0.0);
    mu.finalize();
    return mu;
}

CoverTree tree_from_json(const Json& j, const std::string& field) {
    require(j.is_object(), Err::BadConfig, field + " must be an object");
    std::string rule;
    if (j.contains("rule")) rule = str_key(j, field, "rule");
    if (rule == "cantor") {
        const double ratio = num_or(j, field, "ratio", 1.0 / 3.0);
        const int maxg = static_cast<int>(num_or(j, field, "max_generation", 400));
        return cantor_tree(ratio, maxg);
    }
    if (rule == "log_cantor") {
        const int maxg = static_cast<int>(num_or(j, field, "max_generation", 60));
        return log_cantor_tree(maxg);
    }
    if (rule.empty() || rule == "custom_lengths" || rule == "explicit") {
        const Json& gens = need(j, field, "generations");
        require(gens.is_array() && !gens.empty(), Err::BadConfig,
                field + ".generations must be a nonempty array");
        std::vector<Generation> out;
        for (std::size_t g = 0; g < gens.size(); ++g) {
            const std::string gpath = field + ".generations[" + std::to_string(g) + "]";
            require(gens[g].is_array(), Err::BadConfig, gpath + " must be an array");
            Generation gen;
            for (std::size_t i = 0; i < gens[g].size(); ++i) {
                const std::string ipath = gpath + "[" + std::to_string(i) + "]";
                const Json& ij = gens[g][i];
                IntervalClass ic;
                ic.left = num_key(ij, ipath, "left");
                ic.log_len = num_key(ij, ipath, "log_len");
                ic.log_count = num_or(ij, ipath, "log_count", 0.0);
                gen.push_back(ic);
            }
            out.push_back(std::move(gen));
        }
        return explicit_tree(std::move(out));
    }
    fail(Err::BadConfig, field + ".rule: unknown tree rule '" + rule + "'");
}

BarrierProfile profile_from_json(const Json& j, const std::string& field) {
    const Json& beta = need(j, field, "beta");
    const std::string kind = str_key(beta, field + ".beta", "kind");
    const double eta = num_or(j, field, "eta", 1.0);
    if (kind == "exp") return exp_profile(eta);
    if (kind == "exp_scaled")
        return exp_scaled_profile(num_key(beta, field + ".beta", "c"), eta);
    if (kind == "power") return power_profile(num_key(beta, field + ".beta", "p"), eta);
    fail(Err::BadConfig, field + ".beta.kind: unknown profile kind '" + kind + "'");
}

Potential potential_from_json(const Json& j, const std::string& field) {
    const std::string kind = str_key(j, field, "kind");
    if (kind == "zero") return constant_potential(0.0);
    if (kind == "constant") return constant_potential(num_key(j, field, "value"));
    if (kind == "table") {
        std::vector<double> vals = num_array(need(j, field, "values"), field + ".values");
        return table_potential(std::move(vals), num_or(j, field, "fill", 0.0));
    }
    if (kind == "sparse_barrier") {
        const BarrierProfile p = profile_from_json(j, field);
        const double kraw = num_key(j, field, "K");
        require(kraw >= 1 && kraw == static_cast<int>(kraw), Err::BadConfig,
                field + ".K must be a positive integer");
        return barrier_potential(p, build_scales(p, static_cast<int>(kraw)));
    }
    fail(Err::BadConfig, field + ".kind: unknown potential kind '" + kind + "'");
}

std::vector<double> grid_from_json(const Json& j, const std::string& field) {
    if (j.is_array()) {
        std::vector<double> g = num_array(j, field);
        require(!g.empty(), Err::BadConfig, field + " must be nonempty");
        return g;
    }
    const double lo = num_key(j, field, "lo");
    const double hi = num_key(j, field, "hi");
    const double praw = num_key(j, field, "points");
    require(praw >= 2 && praw == static_cast<std::size_t>(praw), Err::BadConfig,
            field + ".points must be an integer >= 2");
    const std::size_t n = static_cast<std::size_t>(praw);
    std::string scale = "linear";
    if (j.contains("scale")) scale = str_key(j, field, "scale");
    if (scale == "geometric") {
        require(lo > 0.0 && hi > lo, Err::BadConfig, field + ": geometric scale needs 0 < lo < hi");
        return geometric_grid(lo, hi, n);
    }
    require(scale == "linear", Err::BadConfig, field + ".scale must be linear or geometric");
    require(hi > lo, Err::BadConfig, field + ": hi must exceed lo");
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i)
        g[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    return g;
}

}  // namespace specdim
