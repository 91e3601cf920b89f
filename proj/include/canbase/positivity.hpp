#pragma once

// Transition matrices between the iota-canonical basis of a tensor product
// and the mixed bases attached to a split point, with per-entry N[q]
// verdicts, plus the extreme-case dictionary back to (parabolic)
// Kazhdan-Lusztig polynomials.

#include <sstream>
#include <string>
#include <vector>

#include "canbase/hecke.hpp"
#include "canbase/tensor.hpp"

namespace canbase {

struct SplitSpec {
    ModuleDescriptor desc;
    int l = 0;  // split point: factors [0, l) against [l, k)
};

struct TransitionEntry {
    int b;       // basis index in the full space
    int b_alpha; // basis index in the left half
    int b_beta;  // basis index in the right half
    LaurentPoly t;
    bool nonneg;
};

struct TransitionMatrix {
    const Space* whole = nullptr;
    const Space* alpha = nullptr;
    const Space* beta = nullptr;
    std::vector<TransitionEntry> entries;  // ordered by (b, b_alpha, b_beta)
    bool all_nonneg = true;

    std::vector<const TransitionEntry*> failures() const {
        std::vector<const TransitionEntry*> out;
        for (const auto& e : entries)
            if (!e.nonneg) out.push_back(&e);
        return out;
    }
};

namespace detail_positivity {

struct SplitContext {
    const Space* whole;
    const Space* alpha;
    const Space* beta;
    int alpha_letters;  // ambient letters in the alpha half
    std::vector<std::pair<int, int>> split_of;  // whole index -> (alpha index, beta index)
    std::vector<long long> rank;                // triangular order for mixed families
};

inline SplitContext make_split(const ModuleDescriptor& desc, int l) {
    const int k = static_cast<int>(desc.factors.size());
    if (l < 0 || l > k) throw Error("split point out of range");
    SplitContext ctx;
    ctx.whole = &Space::get(desc.n, desc.factors);
    std::vector<int> fa(desc.factors.begin(), desc.factors.begin() + l);
    std::vector<int> fb(desc.factors.begin() + l, desc.factors.end());
    ctx.alpha = &Space::get(desc.n, fa);
    ctx.beta = &Space::get(desc.n, fb);
    ctx.alpha_letters = ctx.alpha->ambient_length();
    const Space& D = *ctx.whole;
    ctx.split_of.resize(D.dim());
    ctx.rank.resize(D.dim());
    const long long ia = ctx.alpha->ambient_length() * (ctx.alpha->ambient_length() + 1) / 2 + 2;
    const long long ib = ctx.beta->ambient_length() * (ctx.beta->ambient_length() + 1) / 2 + 2;
    const long long cb = ctx.beta->dim() + 1;
    for (int d = 0; d < D.dim(); ++d) {
        const Word& w = D.word(d);
        Word wa(w.begin(), w.begin() + ctx.alpha_letters);
        Word wb(w.begin() + ctx.alpha_letters, w.end());
        const int a = ctx.alpha->index_of(wa);
        const int b = ctx.beta->index_of(wb);
        ctx.split_of[d] = {a, b};
        long long key = ctx.alpha->weight_class(a);
        key = key * ia + ctx.alpha->inversions(a);
        key = key * cb + ctx.beta->weight_class(b);
        key = key * ib + ctx.beta->inversions(b);
        ctx.rank[d] = key * (D.dim() + 1) + d;
    }
    return ctx;
}

// family column indexed by the whole-space word concat(a, b)
inline Column tensor_column(const SplitContext& ctx, const Column& ca, const Column& cb) {
    Column out;
    for (const auto& [a, xa] : ca)
        for (const auto& [b, xb] : cb) {
            Word w = ctx.alpha->word(a);
            const Word& tail = ctx.beta->word(b);
            w.insert(w.end(), tail.begin(), tail.end());
            out[ctx.whole->index_of(w)] = xa * xb;
        }
    return out;
}

inline TransitionMatrix expand_family(const SplitContext& ctx, const std::vector<Column>& left,
                                      const std::vector<Column>& right,
                                      const std::vector<Column>& targets) {
    const Space& D = *ctx.whole;
    std::map<int, Column> family;
    auto family_at = [&](int d) -> const Column* {
        auto it = family.find(d);
        if (it == family.end()) {
            const auto [a, b] = ctx.split_of[d];
            it = family.emplace(d, tensor_column(ctx, left[a], right[b])).first;
        }
        return &it->second;
    };
    TransitionMatrix out;
    out.whole = ctx.whole;
    out.alpha = ctx.alpha;
    out.beta = ctx.beta;
    for (int d = 0; d < D.dim(); ++d) {
        Column coeffs = expand_triangular(family_at, [&](int z) { return ctx.rank[z]; }, targets[d]);
        // exact resynthesis guard
        Column back;
        for (const auto& [idx, c] : coeffs) add_scaled(back, c, *family_at(idx));
        if (back != targets[d]) throw NotInSpan("mixed expansion failed to resynthesize its input");
        for (const auto& [idx, c] : coeffs) {
            const auto [a, b] = ctx.split_of[idx];
            const bool ok = is_nonneg(c);
            out.entries.push_back({d, a, b, c, ok});
            out.all_nonneg = out.all_nonneg && ok;
        }
    }
    return out;
}

}  // namespace detail_positivity

// b-iota over { b-iota_alpha (x) b_beta }
inline TransitionMatrix expand_mixed(const SplitSpec& spec, Variant variant) {
    auto ctx = detail_positivity::make_split(spec.desc, spec.l);
    return detail_positivity::expand_family(ctx, ctx.alpha->iota_over_standard(variant),
                                            ctx.beta->canonical(),
                                            ctx.whole->iota_over_standard(variant));
}

// b over { b_1 (x) b_2 }
inline TransitionMatrix expand_pure(const SplitSpec& spec) {
    auto ctx = detail_positivity::make_split(spec.desc, spec.l);
    return detail_positivity::expand_family(ctx, ctx.alpha->canonical(), ctx.beta->canonical(),
                                            ctx.whole->canonical());
}

// B-iota(lambda) over B(lambda) inside the prescribed host
inline TransitionMatrix expand_simple(int n, const std::vector<int>& lambda, Variant variant) {
    SimpleModule L = simple_extract(n, lambda, variant);
    const Space& host = *L.host;
    std::set<int> members(L.canonical_members.begin(), L.canonical_members.end());
    TransitionMatrix out;
    out.whole = &host;
    out.alpha = &host;
    out.beta = nullptr;
    const auto& rel = host.iota_over_canonical(variant);
    for (int b : L.iota_members) {
        for (const auto& [g, c] : rel[b]) {
            if (!members.count(g))
                throw SpanMismatch("iota element of L(lambda) leaves the canonical members");
            const bool ok = is_nonneg(c);
            out.entries.push_back({b, g, -1, c, ok});
            out.all_nonneg = out.all_nonneg && ok;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// extreme-case dictionaries against the Hecke-module computations

namespace detail_positivity {

inline int theta_letter(int n, int j) { return n + 2 - j; }

struct TypeBWords {
    std::vector<int> rep;     // word index -> Weyl group element index in W(B_m)
    std::vector<int> anchor;  // word index -> anchor word index
    std::map<int, ParabolicSet> stabilizer;  // anchor word index -> J(f)
};

// orbit structure of W(B_m) on words: s_0 negates (theta) the first letter,
// s_i swaps positions i, i+1; anchors carry the trivial character
inline TypeBWords type_b_words(const Space& P) {
    const int n = P.n();
    const int m = P.ambient_length();
    const WeylGroup& W = weyl_group(CoxType::type_b(m));
    auto apply = [&](const Word& w, int s) {
        Word out = w;
        if (s == 0)
            out[0] = theta_letter(n, out[0]);
        else
            std::swap(out[s - 1], out[s]);
        return out;
    };
    auto has_descent = [&](const Word& w, int s) {
        if (s == 0) return w[0] < theta_letter(n, w[0]);
        return w[s - 1] > w[s];
    };
    TypeBWords out;
    out.rep.assign(P.dim(), -1);
    out.anchor.assign(P.dim(), -1);
    for (int f = 0; f < P.dim(); ++f) {
        bool anchor = true;
        for (int s = 0; s < m; ++s)
            if (has_descent(P.word(f), s)) anchor = false;
        if (!anchor) continue;
        ParabolicSet J;
        for (int s = 0; s < m; ++s)
            if (apply(P.word(f), s) == P.word(f)) J.insert(s);
        out.stabilizer[f] = J;
        // breadth-first ascent through the orbit
        out.rep[f] = W.identity();
        out.anchor[f] = f;
        std::vector<int> frontier = {f};
        while (!frontier.empty()) {
            std::vector<int> next;
            for (int g : frontier)
                for (int s = 0; s < m; ++s) {
                    Word h = apply(P.word(g), s);
                    const int hi = P.index_of(h);
                    if (hi == g || out.rep[hi] >= 0) continue;
                    if (!has_descent(h, s)) continue;  // not an ascent from g
                    out.rep[hi] = W.mul_right(out.rep[g], s);
                    out.anchor[hi] = f;
                    next.push_back(hi);
                }
            frontier = std::move(next);
        }
    }
    for (int f = 0; f < P.dim(); ++f)
        if (out.rep[f] < 0) throw InternalError("type B orbit scan missed a word");
    return out;
}

struct TypeAWords {
    std::vector<int> rep;
    std::vector<int> anchor;
    std::map<int, ParabolicSet> stabilizer;
};

inline TypeAWords type_a_words(const Space& P) {
    const int m = P.ambient_length();
    const WeylGroup& W = weyl_group(CoxType{Family::A, m});
    auto apply = [&](const Word& w, int s) {
        Word out = w;
        std::swap(out[s - 1], out[s]);
        return out;
    };
    TypeAWords out;
    out.rep.assign(P.dim(), -1);
    out.anchor.assign(P.dim(), -1);
    for (int f = 0; f < P.dim(); ++f) {
        const Word& w = P.word(f);
        if (!std::is_sorted(w.begin(), w.end())) continue;
        ParabolicSet J;
        for (int s = 1; s < m; ++s)
            if (w[s - 1] == w[s]) J.insert(s);
        out.stabilizer[f] = J;
        out.rep[f] = W.identity();
        out.anchor[f] = f;
        std::vector<int> frontier = {f};
        while (!frontier.empty()) {
            std::vector<int> next;
            for (int g : frontier)
                for (int s = 1; s < m; ++s) {
                    Word h = apply(P.word(g), s);
                    const int hi = P.index_of(h);
                    if (hi == g || out.rep[hi] >= 0) continue;
                    if (!(h[s - 1] > h[s])) continue;
                    out.rep[hi] = W.mul_right(out.rep[g], s);
                    out.anchor[hi] = f;
                    next.push_back(hi);
                }
            frontier = std::move(next);
        }
    }
    for (int f = 0; f < P.dim(); ++f)
        if (out.rep[f] < 0) throw InternalError("type A orbit scan missed a word");
    return out;
}

}  // namespace detail_positivity

// The extreme case l = 0 of the mixed expansion for a pure tensor power:
// true iff the iota-over-canonical coefficients coincide with the type B
// parabolic KL coefficients over the hybrid basis, orbit by orbit.
inline bool kl_cross_check(int n, int m, Variant variant, std::string* diff = nullptr) {
    if (variant != Variant::bw13) throw Error("the type B dictionary is stated for the bw13 parameters");
    const Space& P = Space::get(n, std::vector<int>(m, 1));
    const auto orbits = detail_positivity::type_b_words(P);
    const auto& rel = P.iota_over_canonical(variant);
    ParabolicSet heckePart;  // the type A subalgebra inside H_{B_m}
    for (int s = 1; s < m; ++s) heckePart.insert(s);
    bool ok = true;
    std::ostringstream report;
    for (int f = 0; f < P.dim(); ++f) {
        const ParabolicSet& J = orbits.stabilizer.at(orbits.anchor[f]);
        auto hecke_coeffs = pkl_in_hybrid(CoxType::type_b(m), heckePart, J, orbits.rep[f]);
        std::map<int, LaurentPoly> tensor_coeffs;
        for (const auto& [g, c] : rel[f]) {
            if (orbits.anchor[g] != orbits.anchor[f]) {
                ok = false;
                report << "support of b-iota[" << word_string(P.word(f)) << "] leaves its orbit at "
                       << word_string(P.word(g)) << "\n";
                continue;
            }
            tensor_coeffs[orbits.rep[g]] = c;
        }
        if (tensor_coeffs != hecke_coeffs) {
            ok = false;
            report << "mismatch at word " << word_string(P.word(f)) << "\n";
        }
    }
    if (diff) *diff = report.str();
    return ok;
}

// The type A dictionary: canonical basis coefficients equal the parabolic KL
// coefficients of H_{A_{m-1}}, orbit by orbit.
inline bool canonical_cross_check(int n, int m, std::string* diff = nullptr) {
    const Space& P = Space::get(n, std::vector<int>(m, 1));
    const auto orbits = detail_positivity::type_a_words(P);
    const auto& can = P.canonical();
    const CoxType sym{Family::A, m};
    bool ok = true;
    std::ostringstream report;
    for (int f = 0; f < P.dim(); ++f) {
        const ParabolicSet& J = orbits.stabilizer.at(orbits.anchor[f]);
        const ParabolicModule& M = ParabolicModule::get_full(sym, J);
        const auto& pk = M.pkl(orbits.rep[f]);
        std::map<int, LaurentPoly> tensor_coeffs;
        for (const auto& [g, c] : can[f]) {
            if (orbits.anchor[g] != orbits.anchor[f]) {
                ok = false;
                report << "support of b-diamond[" << word_string(P.word(f)) << "] leaves its orbit\n";
                continue;
            }
            tensor_coeffs[orbits.rep[g]] = c;
        }
        std::map<int, LaurentPoly> hecke_coeffs(pk.begin(), pk.end());
        if (tensor_coeffs != hecke_coeffs) {
            ok = false;
            report << "mismatch at word " << word_string(P.word(f)) << "\n";
        }
    }
    if (diff) *diff = report.str();
    return ok;
}

// ---------------------------------------------------------------------------
// reports

struct PositivityReport {
    std::string command;     // echo of the configuration
    TransitionMatrix matrix;
    int total = 0;
    int negative = 0;

    bool positive() const { return negative == 0; }

    static PositivityReport from(std::string command, TransitionMatrix m) {
        PositivityReport r;
        r.command = std::move(command);
        r.total = static_cast<int>(m.entries.size());
        for (const auto& e : m.entries)
            if (!e.nonneg) ++r.negative;
        r.matrix = std::move(m);
        return r;
    }

    // rows (b, b_alpha, b_beta, t, verdict)
    std::string to_csv() const {
        std::ostringstream out;
        out << "b,b_alpha,b_beta,t,verdict\n";
        for (const auto& e : matrix.entries) {
            out << word_string(matrix.whole->word(e.b)) << ","
                << word_string(matrix.alpha->word(e.b_alpha)) << ",";
            if (matrix.beta && e.b_beta >= 0)
                out << word_string(matrix.beta->word(e.b_beta));
            else
                out << "-";
            out << ",\"" << e.t.to_string() << "\"," << (e.nonneg ? "nonneg" : "NEGATIVE") << "\n";
        }
        return out.str();
    }
};

}  // namespace canbase
