#pragma once

// Generic solver for the unique bar-invariant unitriangular basis of a free
// LaurentPoly-module equipped with a unitriangular bar involution.  The same
// engine drives Kazhdan-Lusztig, parabolic KL, canonical, and iota-canonical
// bases; only the index poset and the bar matrix change.

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "canbase/laurent.hpp"

namespace canbase {

// sparse vector over basis indices
using Column = std::map<int, LaurentPoly>;

inline void add_scaled(Column& target, const LaurentPoly& scale, const Column& src) {
    if (scale.is_zero()) return;
    for (const auto& [i, c] : src) {
        LaurentPoly& slot = target[i];
        slot += scale * c;
        if (slot.is_zero()) target.erase(i);
    }
}

struct BarSystem {
    int size = 0;
    // bar(e_b) expanded over the standard basis; must satisfy r_{b,b} = 1 and
    // r_{b',b} != 0 only for b' <= b
    std::function<Column(int)> bar_of_basis;
    // strict partial order on indices
    std::function<bool(int, int)> less;
};

inline Column bar_apply(const BarSystem& sys, const Column& v) {
    Column out;
    for (const auto& [i, c] : v) add_scaled(out, bar(c), sys.bar_of_basis(i));
    return out;
}

// R . bar(R) = Id, checked columnwise.
inline void check_involution(const BarSystem& sys) {
    for (int b = 0; b < sys.size; ++b) {
        Column twice = bar_apply(sys, sys.bar_of_basis(b));
        Column unit = {{b, LaurentPoly(1)}};
        if (twice != unit)
            throw NotInvolution("bar applied twice is not the identity at index " + std::to_string(b));
    }
}

// The unique column C_b with diagonal 1, strictly-lower entries in qZ[q], and
// C_b = R . bar(C_b).  Processes the maximal open support index of the defect
// d = bar(x) - x; triangularity makes its coefficient skew, so solve_skew
// gives the correction.
inline Column solve_column(const BarSystem& sys, int b) {
    Column x = {{b, LaurentPoly(1)}};
    Column d = bar_apply(sys, x);
    for (const auto& [i, c] : x) {
        LaurentPoly& slot = d[i];
        slot -= c;
        if (slot.is_zero()) d.erase(i);
    }
    while (!d.empty()) {
        int z = -1;
        for (const auto& [i, c] : d) {
            bool maximal = true;
            for (const auto& [j, cj] : d)
                if (j != i && sys.less(i, j)) {
                    maximal = false;
                    break;
                }
            if (maximal) {
                z = i;
                break;
            }
        }
        if (z < 0) throw InternalError("no maximal element in defect support");
        LaurentPoly p;
        try {
            p = solve_skew(d.at(z));
        } catch (const Error& e) {
            throw Obstruction("inconsistent bar system at entry (" + std::to_string(z) + ", " +
                              std::to_string(b) + "): " + e.what());
        }
        x[z] += p;
        if (x[z].is_zero()) x.erase(z);
        // defect update: d += bar(p) R e_z - p e_z, which cancels index z
        add_scaled(d, bar(p), sys.bar_of_basis(z));
        LaurentPoly& slot = d[z];
        slot -= p;
        if (slot.is_zero()) d.erase(z);
        if (d.count(z)) throw InternalError("defect not cancelled at index " + std::to_string(z));
    }
    return x;
}

// All canonical columns; verifies the involution axiom first.
inline std::vector<Column> canonicalize(const BarSystem& sys) {
    check_involution(sys);
    std::vector<Column> cols(sys.size);
    for (int b = 0; b < sys.size; ++b) cols[b] = solve_column(sys, b);
    return cols;
}

// Expand `vec` over a family of columns that is unitriangular with respect to
// the total preorder given by `rank`: family(b) has entry 1 at b and all other
// support at strictly smaller rank.  family returns nullptr for indices that
// are not part of the target basis (NotInSpan).
inline Column expand_triangular(const std::function<const Column*(int)>& family,
                                const std::function<long long(int)>& rank, Column vec) {
    Column out;
    while (!vec.empty()) {
        int z = vec.begin()->first;
        long long rz = rank(z);
        for (const auto& [i, c] : vec)
            if (rank(i) > rz) {
                z = i;
                rz = rank(i);
            }
        const Column* col = family(z);
        if (!col) throw NotInSpan("no target basis element with leading index " + std::to_string(z));
        LaurentPoly c = vec.at(z);
        out[z] = c;
        for (const auto& [i, ci] : *col) {
            if (i != z && rank(i) >= rz)
                throw InternalError("expansion family is not triangular for the supplied rank");
            LaurentPoly& slot = vec[i];
            slot -= c * ci;
            if (slot.is_zero()) vec.erase(i);
        }
        if (vec.count(z)) throw InternalError("leading index survived triangular elimination");
    }
    return out;
}

}  // namespace canbase
