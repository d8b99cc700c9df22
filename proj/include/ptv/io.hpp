#pragma once

#include "ptv/surface.hpp"
#include "ptv/triangulation.hpp"

#include "json.hpp"

#include <fstream>
#include <sstream>
#include <string>

namespace ptv {

using json = nlohmann::json;

namespace detail {

inline const json& require(const json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key)) throw Error(ErrorCode::Format, std::string("missing field \"") + key + "\"");
    return j.at(key);
}

template <std::size_t N>
std::array<Label, N> read_labels(const json& row)
{
    if (!row.is_array() || row.size() != N) throw Error(ErrorCode::Format, "expected " + std::to_string(N) + " vertex labels");
    std::array<Label, N> out{};
    for (std::size_t i = 0; i < N; ++i) {
        if (!row[i].is_number_integer()) throw Error(ErrorCode::Format, "vertex labels must be integers");
        out[i] = row[i].get<Label>();
    }
    return out;
}

inline int read_int(const json& v)
{
    if (!v.is_number_integer()) throw Error(ErrorCode::Format, "expected an integer");
    return v.get<int>();
}

template <typename T>
T wrap_json(const auto& fn)
{
    try {
        return fn();
    } catch (const json::exception& e) {
        throw Error(ErrorCode::Format, e.what());
    }
}

} // namespace detail

/// ptri-1: vertex mode when the labels alone reproduce the complex, otherwise
/// gluing mode (with per-slot labels and, when needed, explicit edge classes).
inline json to_json(const Triangulation& t)
{
    json j;
    j["format"] = "ptri-1";
    json tets = json::array();
    bool distinct = true;
    for (const auto& tet : t.tetrahedra()) {
        tets.push_back(tet.labels);
        for (int a = 0; a < 4; ++a) {
            for (int b = a + 1; b < 4; ++b) distinct = distinct && tet.labels[static_cast<std::size_t>(a)] != tet.labels[static_cast<std::size_t>(b)];
        }
    }
    if (distinct) {
        std::vector<std::array<Label, 4>> tuples;
        for (const auto& tet : t.tetrahedra()) tuples.push_back(tet.labels);
        try {
            if (Triangulation::from_vertex_tuples(tuples) == t) {
                j["mode"] = "vertex";
                j["tetrahedra"] = std::move(tets);
                return j;
            }
        } catch (const Error&) {
        }
    }
    j["mode"] = "gluing";
    j["tetrahedra"] = std::move(tets);
    json gl = json::array();
    for (int a = 0; a < t.tet_count(); ++a) {
        for (int f = 0; f < 4; ++f) {
            const auto& g = t.gluing(a, f);
            if (!g || std::make_pair(g->tet, g->face) < std::make_pair(a, f)) continue;
            auto p = record_perm(f, g->face, g->perm);
            gl.push_back(json::array({a, f, g->tet, g->face, p}));
        }
    }
    j["gluings"] = std::move(gl);
    if (t.has_edge_joins()) {
        json ec = json::array();
        for (int a = 0; a < t.tet_count(); ++a) {
            json row = json::array();
            for (int e = 0; e < 6; ++e) {
                std::int64_t id = t.edge_of(a, e);
                row.push_back(t.edge_aligned(a, e) ? id : ~id);
            }
            ec.push_back(std::move(row));
        }
        j["edge_classes"] = std::move(ec);
    }
    return j;
}

inline Triangulation triangulation_from_json(const json& j)
{
    return detail::wrap_json<Triangulation>([&]() {
        if (detail::require(j, "format") != "ptri-1") throw Error(ErrorCode::Format, "not a ptri-1 document");
        std::string mode = detail::require(j, "mode").get<std::string>();
        if (mode == "vertex") {
            if (j.contains("gluings") && !j.at("gluings").empty()) throw Error(ErrorCode::Format, "vertex mode takes no gluings");
            std::vector<std::array<Label, 4>> tuples;
            for (const auto& row : detail::require(j, "tetrahedra")) tuples.push_back(detail::read_labels<4>(row));
            return Triangulation::from_vertex_tuples(tuples);
        }
        if (mode != "gluing") throw Error(ErrorCode::Format, "unknown mode \"" + mode + "\"");
        std::vector<std::array<Label, 4>> labels;
        if (j.contains("tetrahedra")) {
            for (const auto& row : j.at("tetrahedra")) labels.push_back(detail::read_labels<4>(row));
        }
        std::vector<GluingRecord> gluings;
        int count = labels.empty() ? 0 : static_cast<int>(labels.size());
        if (j.contains("gluings")) {
            for (const auto& row : j.at("gluings")) {
                if (!row.is_array() || row.size() != 5 || !row[4].is_array() || row[4].size() != 3) {
                    throw Error(ErrorCode::Format, "gluing entries are [tet,face,otherTet,otherFace,[p0,p1,p2]]");
                }
                GluingRecord g{detail::read_int(row[0]), detail::read_int(row[1]), detail::read_int(row[2]), detail::read_int(row[3]),
                               {detail::read_int(row[4][0]), detail::read_int(row[4][1]), detail::read_int(row[4][2])}};
                gluings.push_back(g);
                if (labels.empty()) count = std::max({count, g.tet + 1, g.other_tet + 1});
            }
        }
        if (j.contains("tet_count")) {
            int declared = detail::read_int(j.at("tet_count"));
            if (!labels.empty() && declared != count) throw Error(ErrorCode::Format, "tet_count disagrees with tetrahedra");
            if (declared < count) throw Error(ErrorCode::InvalidId, "gluing references a tetrahedron beyond tet_count");
            count = declared;
        }
        std::vector<std::array<std::int64_t, 6>> edge_classes;
        if (j.contains("edge_classes")) {
            for (const auto& row : j.at("edge_classes")) {
                if (!row.is_array() || row.size() != 6) throw Error(ErrorCode::Format, "edge_classes rows have 6 entries");
                std::array<std::int64_t, 6> r{};
                for (std::size_t e = 0; e < 6; ++e) r[e] = row[e].get<std::int64_t>();
                edge_classes.push_back(r);
            }
        }
        return Triangulation::from_gluings(count, gluings, labels, edge_classes);
    });
}

inline json to_json(const Complex2& s)
{
    json j;
    j["format"] = "ptri2-1";
    json tris = json::array();
    bool distinct = true;
    std::vector<std::array<Label, 3>> triples;
    for (const auto& tr : s.triangles()) {
        tris.push_back(tr.labels);
        triples.push_back(tr.labels);
        distinct = distinct && tr.labels[0] != tr.labels[1] && tr.labels[0] != tr.labels[2] && tr.labels[1] != tr.labels[2];
    }
    if (distinct) {
        try {
            if (Complex2::from_vertex_triples(triples) == s) {
                j["mode"] = "vertex";
                j["triangles"] = std::move(tris);
                return j;
            }
        } catch (const Error&) {
        }
    }
    j["mode"] = "gluing";
    j["triangles"] = std::move(tris);
    json gl = json::array();
    for (int a = 0; a < s.tri_count(); ++a) {
        for (int e = 0; e < 3; ++e) {
            const auto& g = s.tri(a).gluing[static_cast<std::size_t>(e)];
            if (!g || std::make_pair(g->tri, g->edge) < std::make_pair(a, e)) continue;
            auto src = tri_edge_vertices(e);
            auto dst = tri_edge_vertices(g->edge);
            std::array<int, 2> p{};
            for (int k = 0; k < 2; ++k) p[static_cast<std::size_t>(k)] = g->perm[static_cast<std::size_t>(src[static_cast<std::size_t>(k)])] == dst[0] ? 0 : 1;
            gl.push_back(json::array({a, e, g->tri, g->edge, p}));
        }
    }
    j["gluings"] = std::move(gl);
    return j;
}

inline Complex2 complex2_from_json(const json& j)
{
    return detail::wrap_json<Complex2>([&]() {
        if (detail::require(j, "format") != "ptri2-1") throw Error(ErrorCode::Format, "not a ptri2-1 document");
        std::string mode = detail::require(j, "mode").get<std::string>();
        std::vector<std::array<Label, 3>> labels;
        if (j.contains("triangles")) {
            for (const auto& row : j.at("triangles")) labels.push_back(detail::read_labels<3>(row));
        }
        if (mode == "vertex") return Complex2::from_vertex_triples(labels);
        if (mode != "gluing") throw Error(ErrorCode::Format, "unknown mode \"" + mode + "\"");
        std::vector<TriGluingRecord> gluings;
        int count = static_cast<int>(labels.size());
        if (j.contains("gluings")) {
            for (const auto& row : j.at("gluings")) {
                if (!row.is_array() || row.size() != 5 || !row[4].is_array() || row[4].size() != 2) {
                    throw Error(ErrorCode::Format, "gluing entries are [tri,edge,otherTri,otherEdge,[p0,p1]]");
                }
                TriGluingRecord g{detail::read_int(row[0]), detail::read_int(row[1]), detail::read_int(row[2]), detail::read_int(row[3]),
                                  {detail::read_int(row[4][0]), detail::read_int(row[4][1])}};
                gluings.push_back(g);
                if (labels.empty()) count = std::max({count, g.tri + 1, g.other_tri + 1});
            }
        }
        if (j.contains("tri_count")) count = std::max(count, detail::read_int(j.at("tri_count")));
        return Complex2::from_gluings(count, gluings, labels);
    });
}

inline json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::Format, "cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::Format, path + ": " + e.what());
    }
}

inline void write_json_file(const std::string& path, const json& j)
{
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::Format, "cannot write " + path);
    out << j.dump(1) << '\n';
}

inline Triangulation load_triangulation(const std::string& path) { return triangulation_from_json(read_json_file(path)); }
inline Complex2 load_complex2(const std::string& path) { return complex2_from_json(read_json_file(path)); }
inline void save(const std::string& path, const Triangulation& t) { write_json_file(path, to_json(t)); }
inline void save(const std::string& path, const Complex2& s) { write_json_file(path, to_json(s)); }

} // namespace ptv
