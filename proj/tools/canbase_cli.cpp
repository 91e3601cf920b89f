// canbase: exact Kazhdan-Lusztig, parabolic, hybrid, canonical, and
// iota-canonical basis tables, plus positivity reports for the transition
// coefficients between them.
//
// Exit codes: 0 success, 1 positivity failure, 2 configuration error,
// 3 internal invariant violation.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "canbase/json_io.hpp"

namespace fs = std::filesystem;
using namespace canbase;

namespace {

// ---------------------------------------------------------------------------
// content-addressed fixture cache, keyed by (version, config) strings

uint64_t fnv1a(const std::string& s) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

struct FileCache {
    fs::path dir;

    bool enabled() const { return !dir.empty(); }

    fs::path path_for(const std::string& key) const {
        std::ostringstream name;
        name << std::hex << fnv1a(std::string(kVersion) + ":" + key) << ".json";
        return dir / name.str();
    }

    std::optional<Json> load(const std::string& key) const {
        if (!enabled()) return std::nullopt;
        fs::path p = path_for(key);
        std::ifstream in(p);
        if (!in) return std::nullopt;
        Json j;
        in >> j;
        return j;
    }

    void store(const std::string& key, const Json& value) const {
        if (!enabled()) return;
        fs::create_directories(dir);
        std::ofstream out(path_for(key));
        out << value.dump();
    }
};

void restore_fixtures(const FileCache& cache, int n, int ambient_m) {
    if (!cache.enabled()) return;
    for (Variant v : {Variant::bw13, Variant::bao17}) {
        std::string hkey = "h0:n=" + std::to_string(n) + ":" + to_string(v);
        if (!Space::h0_cached(n, v)) {
            if (auto j = cache.load(hkey)) {
                std::vector<std::vector<LaurentPoly>> t0;
                for (const auto& row : *j) {
                    t0.emplace_back();
                    for (const auto& cell : row) t0.back().push_back(laurent_from_json(cell));
                }
                Space::preload_h0(n, v, std::move(t0));
            }
        }
        for (int m = 0; m <= ambient_m; ++m) {
            const Space& S = Space::get(n, std::vector<int>(m, 1));
            if (S.upsilon_cached(v)) continue;
            std::string ukey = "upsilon:n=" + std::to_string(n) + ":m=" + std::to_string(m) + ":" +
                               to_string(v);
            if (auto j = cache.load(ukey)) {
                OpCols cols;
                for (const auto& col : *j) cols.push_back(column_from_json(col));
                S.preload_upsilon(v, std::move(cols));
            }
        }
    }
}

void save_fixtures(const FileCache& cache, int n, int ambient_m) {
    if (!cache.enabled()) return;
    for (Variant v : {Variant::bw13, Variant::bao17}) {
        if (Space::h0_cached(n, v)) {
            const auto& t0 = Space::solve_h0(n, v);
            Json j = Json::array();
            for (const auto& row : t0) {
                Json r = Json::array();
                for (const auto& cell : row) r.push_back(to_json(cell));
                j.push_back(std::move(r));
            }
            cache.store("h0:n=" + std::to_string(n) + ":" + to_string(v), j);
        }
        for (int m = 0; m <= ambient_m; ++m) {
            const Space& S = Space::get(n, std::vector<int>(m, 1));
            if (!S.upsilon_cached(v)) continue;
            Json j = Json::array();
            for (const auto& col : S.upsilon(v)) j.push_back(column_to_json(col));
            cache.store("upsilon:n=" + std::to_string(n) + ":m=" + std::to_string(m) + ":" +
                            to_string(v),
                        j);
        }
    }
}

void restore_kl(const FileCache& cache, const HeckeAlgebra& H, const std::string& key) {
    if (auto j = cache.load(key)) {
        for (const auto& pair : *j) H.preload_kl(pair.at(0).get<int>(), column_from_json(pair.at(1)));
    }
}

void save_kl(const FileCache& cache, const HeckeAlgebra& H, const std::string& key) {
    if (!cache.enabled()) return;
    Json j = Json::array();
    for (const auto& [w, col] : H.kl_cache()) j.push_back({w, column_to_json(col)});
    cache.store(key, j);
}

// ---------------------------------------------------------------------------
// configuration

struct Options {
    std::string family = "A";
    int rank = 2;
    std::string parabolic_j, parabolic_i, element_w;
    int n = 1;
    std::string factors = "V";
    std::string kind = "canonical";
    std::string variant = "bw13";
    int split = 0;
    std::string lambda;
    std::string format = "text";
    std::string out;
    std::string cache_dir;
    bool no_cache = false;
    int limit_a = 5, limit_b = 4;
    long long size_limit = 4096;
};

CoxType parse_family(const Options& o) {
    if (o.rank < 1) throw InvalidParabolic("rank must be positive");
    if (o.family == "A" || o.family == "a") {
        if (o.rank > o.limit_a)
            throw RankLimit("type A rank " + std::to_string(o.rank) + " exceeds the limit " +
                            std::to_string(o.limit_a));
        return CoxType::type_a(o.rank);
    }
    if (o.family == "B" || o.family == "b") {
        if (o.rank > o.limit_b)
            throw RankLimit("type B rank " + std::to_string(o.rank) + " exceeds the limit " +
                            std::to_string(o.limit_b));
        return CoxType::type_b(o.rank);
    }
    throw InvalidParabolic("family must be A or B, got '" + o.family + "'");
}

ParabolicSet parse_parabolic(const CoxType& t, const std::string& text) {
    ParabolicSet out;
    std::string token;
    std::stringstream ss(text);
    while (std::getline(ss, token, ',')) {
        std::stringstream inner(token);
        std::string piece;
        while (inner >> piece) {
            if (!piece.empty() && (piece[0] == 's' || piece[0] == 'S')) piece = piece.substr(1);
            int s = 0;
            try {
                s = std::stoi(piece);
            } catch (const std::exception&) {
                throw InvalidParabolic("cannot parse generator '" + piece + "'");
            }
            if (s < t.min_gen() || s > t.max_gen())
                throw InvalidParabolic("generator index s" + std::to_string(s) + " out of range for " +
                                       t.to_string());
            out.insert(s);
        }
    }
    return out;
}

std::vector<int> parse_factors(const std::string& text) {
    std::vector<int> out;
    std::string token;
    std::stringstream ss(text);
    while (std::getline(ss, token, ',')) {
        token.erase(std::remove_if(token.begin(), token.end(), ::isspace), token.end());
        if (token.empty()) continue;
        if (token == "V" || token == "v") {
            out.push_back(1);
        } else if (token.rfind("wedge", 0) == 0) {
            out.push_back(std::stoi(token.substr(5)));
        } else if (token.rfind("w", 0) == 0 && token.size() > 1 && std::isdigit(token[1])) {
            out.push_back(std::stoi(token.substr(1)));
        } else {
            throw SizeLimit("cannot parse factor '" + token + "' (use V or wedgeK)");
        }
    }
    if (out.empty()) throw SizeLimit("factor list is empty");
    return out;
}

Variant parse_variant(const std::string& text) {
    if (text == "bw13") return Variant::bw13;
    if (text == "bao17") return Variant::bao17;
    throw SizeLimit("variant must be bw13 or bao17, got '" + text + "'");
}

void check_size(const Options& o, int n, const std::vector<int>& factors) {
    int m = 0;
    for (int k : factors) m += k;
    long long size = 1;
    for (int i = 0; i < m; ++i) {
        size *= (n + 1);
        if (size > o.size_limit)
            throw SizeLimit("standard basis of the ambient space exceeds the ceiling " +
                            std::to_string(o.size_limit));
    }
}

void emit(const Options& o, const std::string& text) {
    if (o.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(o.out);
    if (!out) throw Error("cannot open output file " + o.out);
    out << text;
}

FileCache make_cache(const Options& o) {
    if (o.no_cache) return {};
    if (!o.cache_dir.empty()) return {fs::path(o.cache_dir)};
    if (const char* env = std::getenv("CANBASE_CACHE_DIR")) return {fs::path(env)};
    return {};
}

// ---------------------------------------------------------------------------
// rendering

std::string hvec_text(const WeylGroup& W, const HVec& v, const std::string& sym) {
    if (v.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [w, c] : v) {
        if (!first) out += " + ";
        first = false;
        if (c == LaurentPoly(1))
            out += sym + W.element(w).to_string();
        else
            out += "(" + c.to_string() + ")*" + sym + W.element(w).to_string();
    }
    return out;
}

std::string tvec_text(const Space& S, const Column& v) {
    if (v.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [i, c] : v) {
        if (!first) out += " + ";
        first = false;
        if (c == LaurentPoly(1))
            out += "v[" + word_string(S.word(i)) + "]";
        else
            out += "(" + c.to_string() + ")*v[" + word_string(S.word(i)) + "]";
    }
    return out;
}

// ---------------------------------------------------------------------------
// commands

int cmd_kl(const Options& o) {
    CoxType t = parse_family(o);
    const HeckeAlgebra& H = HeckeAlgebra::get(t);
    const WeylGroup& W = H.weyl();
    FileCache cache = make_cache(o);
    const std::string key = "kl:" + t.to_string();
    restore_kl(cache, H, key);
    std::ostringstream text;
    Json elements = Json::array();
    std::ostringstream csv;
    csv << "w,y,p\n";
    text << "# Kazhdan-Lusztig basis, type " << t.to_string() << ", " << W.size() << " elements\n";
    for (int w = 0; w < W.size(); ++w) {
        const HVec& col = H.kl(w);
        text << "kl" << W.element(w).to_string() << " = " << hvec_text(W, col, "H") << "\n";
        elements.push_back(hecke_element_json(W, "kl", W.element(w).to_string(), col));
        for (const auto& [y, c] : col)
            csv << W.element(w).to_string() << "," << W.element(y).to_string() << ",\"" << c.to_string()
                << "\"\n";
    }
    save_kl(cache, H, key);
    if (o.format == "json")
        emit(o, Json{{"type", t.to_string()}, {"elements", elements}}.dump(2) + "\n");
    else if (o.format == "csv")
        emit(o, csv.str());
    else
        emit(o, text.str());
    return 0;
}

int cmd_pkl(const Options& o) {
    CoxType t = parse_family(o);
    ParabolicSet J = parse_parabolic(t, o.parabolic_j);
    const ParabolicModule& M = ParabolicModule::get_full(t, J);
    const WeylGroup& W = M.weyl();
    FileCache cache = make_cache(o);
    restore_kl(cache, M.hecke(), "kl:" + t.to_string());
    std::ostringstream text, csv;
    Json elements = Json::array();
    csv << "w,y,p_plus\n";
    text << "# parabolic canonical basis, type " << t.to_string() << ", J = {";
    for (auto it = J.begin(); it != J.end(); ++it)
        text << (it == J.begin() ? "" : ", ") << "s" << *it;
    text << "}, " << M.reps().size() << " elements\n";
    for (int w : M.reps()) {
        const auto& col = M.pkl(w);
        text << "pkl" << W.element(w).to_string() << " = " << hvec_text(W, col, "M") << "\n";
        elements.push_back(hecke_element_json(W, "parabolic", W.element(w).to_string(), col));
        for (const auto& [y, c] : col)
            csv << W.element(w).to_string() << "," << W.element(y).to_string() << ",\"" << c.to_string()
                << "\"\n";
    }
    save_kl(cache, M.hecke(), "kl:" + t.to_string());
    if (o.format == "json")
        emit(o, Json{{"type", t.to_string()}, {"elements", elements}}.dump(2) + "\n");
    else if (o.format == "csv")
        emit(o, csv.str());
    else
        emit(o, text.str());
    return 0;
}

int cmd_hybrid(const Options& o) {
    CoxType t = parse_family(o);
    ParabolicSet I = parse_parabolic(t, o.parabolic_i);
    const HeckeAlgebra& H = HeckeAlgebra::get(t);
    const WeylGroup& W = H.weyl();
    FileCache cache = make_cache(o);
    restore_kl(cache, H, "kl:" + t.to_string());
    std::vector<int> targets;
    if (!o.element_w.empty()) {
        targets.push_back(W.index_of(parse_element(t, o.element_w)));
    } else {
        for (int w = 0; w < W.size(); ++w) targets.push_back(w);
    }
    std::ostringstream text, csv;
    Json elements = Json::array();
    csv << "w,y,coefficient\n";
    text << "# hybrid basis over the standard basis, type " << t.to_string() << "\n";
    for (int w : targets) {
        HVec col = H.hybrid(I, w);
        text << "hybrid" << W.element(w).to_string() << " = " << hvec_text(W, col, "H") << "\n";
        elements.push_back(hecke_element_json(W, "hybrid", W.element(w).to_string(), col));
        for (const auto& [y, c] : col)
            csv << W.element(w).to_string() << "," << W.element(y).to_string() << ",\"" << c.to_string()
                << "\"\n";
    }
    save_kl(cache, H, "kl:" + t.to_string());
    if (o.format == "json")
        emit(o, Json{{"type", t.to_string()}, {"elements", elements}}.dump(2) + "\n");
    else if (o.format == "csv")
        emit(o, csv.str());
    else
        emit(o, text.str());
    return 0;
}

int cmd_basis(const Options& o) {
    std::vector<int> factors = parse_factors(o.factors);
    check_size(o, o.n, factors);
    Variant variant = parse_variant(o.variant);
    ModuleDescriptor desc{o.n, factors, variant};
    const Space& S = Space::get(desc);
    FileCache cache = make_cache(o);
    restore_fixtures(cache, o.n, S.ambient_length());
    std::vector<Column> cols;
    std::string name;
    if (o.kind == "canonical") {
        cols = S.canonical();
        name = "canonical";
    } else if (o.kind == "iota") {
        cols = S.iota_over_standard(variant);
        name = "iota";
    } else {
        throw SizeLimit("basis kind must be canonical or iota, got '" + o.kind + "'");
    }
    save_fixtures(cache, o.n, S.ambient_length());
    if (o.format == "json") {
        emit(o, tensor_basis_json(S, desc, name, cols).dump(2) + "\n");
        return 0;
    }
    std::ostringstream text;
    text << "# " << name << " basis, n = " << o.n << ", factors " << desc.factors_string() << ", dim "
         << S.dim() << "\n";
    for (int b = 0; b < S.dim(); ++b)
        text << (o.kind == "iota" ? "bi[" : "b[") << word_string(S.word(b))
             << "] = " << tvec_text(S, cols[b]) << "\n";
    emit(o, text.str());
    return 0;
}

int cmd_positivity(const Options& o) {
    std::vector<int> factors = parse_factors(o.factors);
    check_size(o, o.n, factors);
    Variant variant = parse_variant(o.variant);
    ModuleDescriptor desc{o.n, factors, variant};
    FileCache cache = make_cache(o);
    std::ostringstream command;
    command << "positivity --n " << o.n << " --factors " << desc.factors_string() << " --variant "
            << to_string(variant) << " --kind " << o.kind;
    TransitionMatrix tm;
    if (o.kind == "mixed" || o.kind == "pure") {
        if (o.split < 0 || o.split > static_cast<int>(factors.size()))
            throw SizeLimit("split point out of range");
        restore_fixtures(cache, o.n, Space::get(desc).ambient_length());
        command << " --split " << o.split;
        tm = o.kind == "mixed" ? expand_mixed({desc, o.split}, variant) : expand_pure({desc, o.split});
        save_fixtures(cache, o.n, Space::get(desc).ambient_length());
    } else if (o.kind == "simple") {
        std::vector<int> lambda;
        std::stringstream ss(o.lambda);
        std::string token;
        while (std::getline(ss, token, ',')) lambda.push_back(std::stoi(token));
        if (static_cast<int>(lambda.size()) != o.n)
            throw SizeLimit("lambda must list n fundamental-weight coefficients");
        auto host_factors = simple_host_factors(lambda);
        check_size(o, o.n, host_factors);
        restore_fixtures(cache, o.n, Space::get(o.n, host_factors).ambient_length());
        command << " --lambda " << o.lambda;
        tm = expand_simple(o.n, lambda, variant);
        save_fixtures(cache, o.n, Space::get(o.n, host_factors).ambient_length());
    } else {
        throw SizeLimit("positivity kind must be mixed, pure, or simple");
    }
    auto report = PositivityReport::from(command.str(), std::move(tm));
    std::string payload;
    if (o.format == "json")
        payload = report_json(report).dump(2) + "\n";
    else if (o.format == "csv")
        payload = report.to_csv();
    else {
        std::ostringstream text;
        text << "# " << report.command << "\n";
        text << report.to_csv();
        text << "# total " << report.total << ", negative " << report.negative << ", verdict "
             << (report.positive() ? "POSITIVE" : "FAILURE") << "\n";
        payload = text.str();
    }
    emit(o, payload);
    if (!report.positive()) {
        std::cerr << "positivity FAILED: " << report.negative << " negative coefficients\n";
        for (const auto* e : report.matrix.failures())
            std::cerr << "  b=" << word_string(report.matrix.whole->word(e->b))
                      << " t=" << e->t.to_string() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact canonical-basis tables for Hecke algebras and quantum symmetric pairs"};
    app.require_subcommand(1);
    Options o;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--format", o.format, "output format: text, json, csv")
            ->check(CLI::IsMember({"text", "json", "csv"}));
        cmd->add_option("--out", o.out, "output path (default stdout)");
        cmd->add_option("--cache-dir", o.cache_dir, "fixture cache directory");
        cmd->add_flag("--no-cache", o.no_cache, "disable the fixture cache");
    };
    auto add_hecke = [&](CLI::App* cmd) {
        cmd->add_option("--family", o.family, "Weyl group family: A or B")->required();
        cmd->add_option("--rank", o.rank, "Coxeter rank")->required();
        cmd->add_option("--limit-a", o.limit_a, "largest allowed type A rank");
        cmd->add_option("--limit-b", o.limit_b, "largest allowed type B rank");
        add_common(cmd);
    };

    CLI::App* kl = app.add_subcommand("kl", "Kazhdan-Lusztig basis table");
    add_hecke(kl);
    CLI::App* pkl = app.add_subcommand("pkl", "parabolic canonical basis table");
    add_hecke(pkl);
    pkl->add_option("--J", o.parabolic_j, "inducing parabolic, e.g. \"s1,s2\"");
    CLI::App* hybrid = app.add_subcommand("hybrid", "hybrid basis table");
    add_hecke(hybrid);
    hybrid->add_option("--I", o.parabolic_i, "restriction parabolic, e.g. \"s1\"");
    hybrid->add_option("--w", o.element_w, "single element (word \"s0 s1\" or window)");

    CLI::App* basis = app.add_subcommand("basis", "canonical / iota-canonical basis of a tensor space");
    basis->add_option("--n", o.n, "rank parameter of the quantum group")->required();
    basis->add_option("--factors", o.factors, "factor list, e.g. V,V or wedge2,V")->required();
    basis->add_option("--kind", o.kind, "canonical or iota");
    basis->add_option("--variant", o.variant, "bw13 or bao17");
    basis->add_option("--size-limit", o.size_limit, "ceiling on the ambient standard basis");
    add_common(basis);

    CLI::App* positivity = app.add_subcommand("positivity", "transition coefficients with verdicts");
    positivity->add_option("--n", o.n, "rank parameter of the quantum group")->required();
    positivity->add_option("--factors", o.factors, "factor list, e.g. V,V,V");
    positivity->add_option("--split", o.split, "split point 0..k");
    positivity->add_option("--variant", o.variant, "bw13 or bao17");
    positivity->add_option("--kind", o.kind, "mixed, pure, or simple")->default_val("mixed");
    positivity->add_option("--lambda", o.lambda, "fundamental-weight coefficients for --kind simple");
    positivity->add_option("--size-limit", o.size_limit, "ceiling on the ambient standard basis");
    add_common(positivity);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (kl->parsed()) return cmd_kl(o);
        if (pkl->parsed()) return cmd_pkl(o);
        if (hybrid->parsed()) return cmd_hybrid(o);
        if (basis->parsed()) return cmd_basis(o);
        if (positivity->parsed()) return cmd_positivity(o);
    } catch (const RankLimit& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const InvalidParabolic& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const SizeLimit& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const RankTooSmall& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
