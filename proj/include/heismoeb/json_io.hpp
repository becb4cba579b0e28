#pragma once

#include <json.hpp>

#include "heismoeb/conditions.hpp"

// JSON wire formats. KNum values are plain coefficient arrays (the field is
// carried by context), points are {"zeta": [...], "v": [...]} or
// {"inf": true}, maps are ordered generator lists, and reports follow the
// {config, suites, matrix?, version} layout the CLI documents.

namespace heismoeb {

using json = nlohmann::ordered_json;

// ---- low-level values --------------------------------------------------------

inline json knum_to_json(const KNum& x) {
    json a = json::array();
    for (std::size_t i = 0; i < x.dim(); ++i) a.push_back(x.c[i]);
    return a;
}

inline KNum knum_from_json(const json& j, Field f) {
    if (!j.is_array() || j.size() != field_dim(f))
        throw Error("expected a coefficient array of length " + std::to_string(field_dim(f)));
    KNum x(f);
    for (std::size_t i = 0; i < j.size(); ++i) x.c[i] = j[i].get<double>();
    return x;
}

inline json hpoint_to_json(const HPoint& p) {
    json j;
    json zeta = json::array();
    for (std::size_t i = 0; i < p.dim(); ++i) zeta.push_back(knum_to_json(p.zeta[i]));
    j["zeta"] = std::move(zeta);
    j["v"] = knum_to_json(p.v);
    return j;
}

inline HPoint hpoint_from_json(const json& j, Field f) {
    if (!j.contains("zeta") || !j.contains("v")) throw Error("point needs 'zeta' and 'v'");
    const json& zj = j["zeta"];
    if (!zj.is_array() || zj.empty()) throw Error("'zeta' must be a nonempty array");
    KVector z(f, zj.size());
    for (std::size_t i = 0; i < zj.size(); ++i) z[i] = knum_from_json(zj[i], f);
    KNum v = knum_from_json(j["v"], f);
    if (v.c[0] != 0.0) throw Error("the real coefficient of 'v' must be 0");
    return HPoint(std::move(z), std::move(v));
}

inline json boundary_to_json(const BoundaryPoint& p) {
    if (p.is_infinity()) return json{{"inf", true}};
    return hpoint_to_json(p.point());
}

inline BoundaryPoint boundary_from_json(const json& j, Field f) {
    if (j.contains("inf")) {
        if (j["inf"].get<bool>()) return BoundaryPoint::infinity();
        throw Error("'inf' may only be true");
    }
    return BoundaryPoint(hpoint_from_json(j, f));
}

// ---- Moebius maps --------------------------------------------------------------

inline json generator_to_json(const Generator& g) {
    if (const auto* t = std::get_if<Translate>(&g)) return json{{"translate", hpoint_to_json(t->offset)}};
    if (const auto* r = std::get_if<Rotate>(&g)) {
        json rows = json::array();
        for (std::size_t i = 0; i < r->u.n; ++i) {
            json row = json::array();
            for (std::size_t j = 0; j < r->u.n; ++j) row.push_back(knum_to_json(r->u.at(i, j)));
            rows.push_back(std::move(row));
        }
        return json{{"rotate", std::move(rows)}};
    }
    if (const auto* rq = std::get_if<RotateQuat>(&g)) return json{{"rotate_quat", knum_to_json(rq->mu)}};
    if (const auto* ro = std::get_if<RotateOct>(&g)) return json{{"rotate_oct", knum_to_json(ro->mu)}};
    if (const auto* d = std::get_if<Dilate>(&g)) return json{{"dilate", d->delta}};
    if (std::holds_alternative<Conjugate>(g)) return json{{"conjugate", true}};
    return json{{"invert", true}};
}

inline Generator generator_from_json(const json& j, Field f) {
    if (j.contains("translate")) return Translate{hpoint_from_json(j["translate"], f)};
    if (j.contains("rotate")) {
        const json& rows = j["rotate"];
        UnitaryMatrix u(f, rows.size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != rows.size()) throw Error("rotation matrix must be square");
            for (std::size_t k = 0; k < rows.size(); ++k) u.at(i, k) = knum_from_json(rows[i][k], f);
        }
        return Rotate{std::move(u)};
    }
    if (j.contains("rotate_quat")) return RotateQuat{knum_from_json(j["rotate_quat"], f)};
    if (j.contains("rotate_oct")) return RotateOct{knum_from_json(j["rotate_oct"], f)};
    if (j.contains("dilate")) return Dilate{j["dilate"].get<double>()};
    if (j.contains("conjugate")) return Conjugate{};
    if (j.contains("invert")) return Invert{};
    throw Error("unknown generator object: " + j.dump());
}

inline json map_to_json(const MoebiusMap& m) {
    json word = json::array();
    for (const auto& g : m.word) word.push_back(generator_to_json(g));
    return word;
}

inline MoebiusMap map_from_json(const json& j, Field f, std::size_t dim) {
    if (!j.is_array()) throw Error("a Moebius map is an array of generator objects");
    MoebiusMap m(f, dim);
    for (const auto& g : j) m.push(generator_from_json(g, f));
    return m;
}

// ---- metric models --------------------------------------------------------------

inline json metric_to_json(const MetricModel& m) {
    switch (m.kind) {
        case MetricKind::KoranyiPower:
            return json{{"kind", "koranyi_power"}, {"alpha", m.alpha}, {"beta", m.beta}};
        case MetricKind::EuclideanR:
            return json{{"kind", "euclidean_r"}, {"n", m.dim + 1}};
        case MetricKind::CCH1:
            return json{{"kind", "cc_h1"},
                        {"gauge_norm", m.gauge_norm == CcGaugeNorm::Scaled16 ? "scaled16" : "default"}};
        case MetricKind::CustomGauge:
            return json{{"kind", "custom"}, {"label", m.label()}};
    }
    throw Error("unreachable metric kind");
}

inline MetricModel metric_from_json(const json& j, Field f, std::size_t dim) {
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "koranyi_power")
        return MetricModel::koranyi_power(f, dim, j.at("alpha").get<double>(),
                                          j.at("beta").get<double>());
    if (kind == "euclidean_r") {
        std::size_t n = j.contains("n") ? j.at("n").get<std::size_t>() : dim + 1;
        if (n < 2) throw Error("euclidean_r needs n >= 2");
        return MetricModel::euclidean_r(n - 1);
    }
    if (kind == "cc_h1") {
        CcGaugeNorm norm = CcGaugeNorm::Default;
        if (j.contains("gauge_norm")) {
            std::string s = j.at("gauge_norm").get<std::string>();
            if (s == "scaled16") norm = CcGaugeNorm::Scaled16;
            else if (s != "default") throw Error("gauge_norm must be 'default' or 'scaled16'");
        }
        return MetricModel::cc_h1(norm);
    }
    throw Error("unknown metric kind '" + kind + "'");
}

// ---- reports --------------------------------------------------------------------

inline json witness_to_json(const ConditionWitness& w) {
    json pts = json::array();
    for (const auto& p : w.points) pts.push_back(boundary_to_json(p));
    return json{{"points", std::move(pts)}, {"residual", w.residual}, {"note", w.note}};
}

inline json report_to_json(const ConditionReport& r) {
    json j;
    j["condition"] = r.condition;
    j["verdict"] = verdict_name(r.verdict);
    json consts = json::object();
    for (const auto& [k, v] : r.constants) consts[k] = v;
    j["constants"] = std::move(consts);
    if (r.witness) j["witness"] = witness_to_json(*r.witness);
    j["samples"] = r.samples;
    j["seed"] = r.seed;
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

inline json matrix_to_json(const ClassificationMatrix& m) {
    json j;
    j["rows"] = m.rows;
    j["columns"] = m.columns;
    json cells = json::array();
    for (const auto& row : m.cells) {
        json jrow = json::array();
        for (const auto& rep : row) jrow.push_back(report_to_json(rep));
        cells.push_back(std::move(jrow));
    }
    j["cells"] = std::move(cells);
    j["violations"] = m.violations;
    j["seed"] = m.seed;
    j["samples"] = m.samples;
    return j;
}

/// Plain-text rendering of the verdict matrix.
inline std::string matrix_to_text(const ClassificationMatrix& m) {
    std::size_t label_w = 5;
    for (const auto& r : m.rows) label_w = std::max(label_w, r.size());
    std::vector<std::size_t> col_w;
    for (const auto& c : m.columns) col_w.push_back(std::max<std::size_t>(c.size(), 4));
    std::ostringstream os;
    os << std::string(label_w, ' ');
    for (std::size_t c = 0; c < m.columns.size(); ++c)
        os << "  " << m.columns[c] << std::string(col_w[c] - m.columns[c].size(), ' ');
    os << "\n";
    for (std::size_t r = 0; r < m.rows.size(); ++r) {
        os << m.rows[r] << std::string(label_w - m.rows[r].size(), ' ');
        for (std::size_t c = 0; c < m.cells[r].size(); ++c) {
            const char* v = verdict_name(m.cells[r][c].verdict);
            os << "  " << v << std::string(col_w[c] - std::min(col_w[c], std::string(v).size()), ' ');
        }
        os << "\n";
    }
    if (!m.violations.empty()) {
        os << "implication violations:\n";
        for (const auto& v : m.violations) os << "  " << v << "\n";
    }
    return os.str();
}

// ---- run config ------------------------------------------------------------------

struct RunConfig {
    Field field = Field::C;
    std::size_t n = 2;
    std::uint64_t seed = 0;
    std::size_t samples = 2000;
    double tol = 0.0; // 0 means per-check defaults
    std::string format = "json";

    std::size_t dim() const { return n - 1; }

    void validate() const {
        if (n < 2) throw Error("n must be at least 2");
        if (samples < 1) throw Error("samples must be positive");
        if (field == Field::O && n != 2) throw Error("over O only n = 2 is defined");
    }
};

inline json config_to_json(const RunConfig& c) {
    return json{{"field", field_name(c.field)}, {"n", c.n},       {"seed", c.seed},
                {"samples", c.samples},         {"tol", c.tol},   {"format", c.format}};
}

inline json make_report_document(const RunConfig& cfg, json suites,
                                 std::optional<json> matrix = std::nullopt) {
    json doc;
    doc["config"] = config_to_json(cfg);
    doc["suites"] = std::move(suites);
    if (matrix) doc["matrix"] = std::move(*matrix);
    doc["version"] = kVersion;
    return doc;
}

} // namespace heismoeb
