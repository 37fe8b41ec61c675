#pragma once

#include <string>
#include <vector>

#include "fgi/gring/module.hpp"
#include "fgi/units/unit_io.hpp"

namespace fgi {

/// An externally computed class group: invariant factors and the matrices of some sigma_a.
struct ClassGroupData {
    FieldModel field;
    std::vector<Integer> invariants;
    std::vector<std::pair<long, IntMatrix>> action;  // (label a, matrix of sigma_a)
    std::string provenance;

    /// The Z[G]-module, with matrices for every element obtained by multiplying the given ones.
    FiniteGModule module() const {
        const auto& g = field.group();
        long k = static_cast<long>(invariants.size());
        IntMatrix R(k, k);
        for (long i = 0; i < k; ++i) R(i, i) = invariants[i];
        Lattice rel = Lattice::from_columns(k, R.columns());
        auto same = [&](const IntMatrix& A, const IntMatrix& B) {
            auto D = A - B;
            for (auto& c : D.columns())
                if (!rel.contains(c)) return false;
            return true;
        };
        std::vector<long> gens;
        for (auto& [a, M] : action) {
            if (M.rows() != k || M.cols() != k) throw InputError("action matrix for " + std::to_string(a) + " has wrong shape");
            if (!g->has_residue(a)) throw InputError("label " + std::to_string(a) + " is not in the Galois group");
            gens.push_back(g->from_label(a));
        }
        std::vector<std::optional<IntMatrix>> mat(g->order());
        mat[0] = IntMatrix::identity(k);
        std::vector<long> queue{0};
        for (size_t qi = 0; qi < queue.size(); ++qi) {
            long s = queue[qi];
            for (size_t j = 0; j < gens.size(); ++j) {
                long t = g->mul(gens[j], s);
                IntMatrix M = action[j].second * *mat[s];
                if (!mat[t]) {
                    mat[t] = M;
                    queue.push_back(t);
                } else if (!same(*mat[t], M)) {
                    throw InputError("action matrices are inconsistent at " + g->element_name(t) +
                                     " (they do not commute or violate a group relation)");
                }
            }
        }
        if (static_cast<long>(queue.size()) != g->order()) throw InputError("action labels do not generate the Galois group");
        std::vector<IntMatrix> A;
        for (long j = 0; j < g->rank(); ++j) A.push_back(*mat[g->generator(j)]);
        try {
            return FiniteGModule(g, R, A);
        } catch (const MathError& e) {
            throw InputError(std::string("class group data: ") + e.what());
        }
    }
};

inline json classgroup_to_json(const ClassGroupData& c) {
    json j;
    j["format"] = "fgi-classgroup-1";
    j["field"] = field_to_json(c.field);
    j["invariants"] = json::array();
    for (auto& d : c.invariants) j["invariants"].push_back(d.get_str());
    j["action"] = json::array();
    for (auto& [a, M] : c.action) {
        json rows = json::array();
        for (long i = 0; i < M.rows(); ++i) {
            json r = json::array();
            for (long jj = 0; jj < M.cols(); ++jj) r.push_back(M(i, jj).get_str());
            rows.push_back(r);
        }
        j["action"].push_back({{"label", a}, {"matrix", rows}});
    }
    j["provenance"] = c.provenance;
    return j;
}

inline Integer integer_from_json(const json& x) {
    if (x.is_number_integer()) return Integer(x.get<long>());
    if (!x.is_string()) throw InputError("integer must be a number or a decimal string");
    Integer z;
    if (z.set_str(x.get<std::string>(), 10) != 0) throw InputError("bad integer '" + x.get<std::string>() + "'");
    return z;
}

inline ClassGroupData classgroup_from_json(const json& j) {
    if (j.value("format", "") != "fgi-classgroup-1") throw InputError("class group file: missing or unknown format tag");
    if (!j.contains("provenance") || !j["provenance"].is_string() || j["provenance"].get<std::string>().empty())
        throw InputError("class group file: a provenance string is required");
    ClassGroupData c;
    c.field = field_from_json(j.at("field"));
    c.provenance = j["provenance"].get<std::string>();
    try {
        for (auto& d : j.at("invariants")) {
            Integer z = integer_from_json(d);
            if (z < 1) throw InputError("invariant factors must be positive");
            c.invariants.push_back(z);
        }
        long k = static_cast<long>(c.invariants.size());
        for (auto& a : j.at("action")) {
            long label = a.at("label").get<long>();
            const auto& rows = a.at("matrix");
            if (static_cast<long>(rows.size()) != k) throw InputError("action matrix has wrong number of rows");
            IntMatrix M(k, k);
            for (long r = 0; r < k; ++r) {
                if (static_cast<long>(rows[r].size()) != k) throw InputError("action matrix has wrong number of columns");
                for (long s = 0; s < k; ++s) M(r, s) = integer_from_json(rows[r][s]);
            }
            c.action.emplace_back(label, M);
        }
    } catch (const json::exception& e) {
        throw InputError(std::string("class group file: ") + e.what());
    }
    c.module();  // validates
    return c;
}

inline ClassGroupData load_classgroup(const std::string& path) {
    return classgroup_from_json(parse_json_text(read_text_file(path), path));
}

}  // namespace fgi
