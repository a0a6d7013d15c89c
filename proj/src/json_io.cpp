#include "kproj/json_io.hpp"

namespace kproj {

json scalar_to_json(const Scalar& s) {
    json arr = json::array();
    for (int c = 0; c < real_dim(s.field); ++c) arr.push_back(s.c[c]);
    return arr;
}

Scalar scalar_from_json(const json& j, Field f) {
    if (!j.is_array() && j.is_number()) return Scalar(f, j.get<double>());
    if (!j.is_array() || j.size() > static_cast<size_t>(real_dim(f)) || j.empty())
        throw validation_error("scalar payload must be an array of at most " +
                               std::to_string(real_dim(f)) + " numbers");
    Scalar s = Scalar::zero(f);
    for (size_t c = 0; c < j.size(); ++c) s.c[c] = j[c].get<double>();
    return s;
}

json matrix_to_json(const KMatrix& m) {
    json rows = json::array();
    for (int r = 0; r < m.rows; ++r) {
        json row = json::array();
        for (int c = 0; c < m.cols; ++c) row.push_back(scalar_to_json(m.at(r, c)));
        rows.push_back(row);
    }
    return json{{"field", field_code(m.field)}, {"rows", m.rows}, {"cols", m.cols}, {"entries", rows}};
}

KMatrix matrix_from_json(const json& j) {
    const Field f = field_from_code(j.at("field").get<std::string>());
    const int rows = j.at("rows").get<int>();
    const int cols = j.at("cols").get<int>();
    const auto& entries = j.at("entries");
    if (!entries.is_array() || static_cast<int>(entries.size()) != rows)
        throw validation_error("matrix entries must have `rows` rows");
    KMatrix m(f, rows, cols);
    for (int r = 0; r < rows; ++r) {
        if (static_cast<int>(entries[r].size()) != cols)
            throw validation_error("matrix row has the wrong length");
        for (int c = 0; c < cols; ++c) m.at(r, c) = scalar_from_json(entries[r][c], f);
    }
    return m;
}

KVec coords_from_json(const json& j, Field f) {
    if (!j.is_array() || j.empty()) throw validation_error("coordinates must be a nonempty array");
    KVec v;
    v.reserve(j.size());
    for (const auto& e : j) v.push_back(scalar_from_json(e, f));
    return v;
}

json point_to_json(const ProjPoint& p) {
    json coords = json::array();
    for (const auto& s : p.rep) coords.push_back(scalar_to_json(s));
    return json{{"field", field_code(p.field)}, {"coords", coords}};
}

json dual_to_json(const DualPoint& f) {
    json coords = json::array();
    for (const auto& s : f.rep) coords.push_back(scalar_to_json(s));
    return json{{"field", field_code(f.field)}, {"coords", coords}, {"dual", true}};
}

ProjPoint point_from_json(const json& j) {
    const Field f = field_from_code(j.at("field").get<std::string>());
    return canonicalize(coords_from_json(j.at("coords"), f));
}

DualPoint dual_from_json(const json& j) {
    const Field f = field_from_code(j.at("field").get<std::string>());
    return canonicalize_dual(coords_from_json(j.at("coords"), f));
}

json expr_to_json(const ExprPtr& e) {
    if (!e) throw validation_error("null expression");
    switch (e->op) {
        case Expr::Op::Const: return json{{"op", "const"}, {"value", e->value}};
        case Expr::Op::Coord: return json{{"op", "coord"}, {"index", e->index}};
        default: break;
    }
    static const std::map<Expr::Op, std::string> names = {
        {Expr::Op::Add, "add"}, {Expr::Op::Sub, "sub"}, {Expr::Op::Mul, "mul"},
        {Expr::Op::Neg, "neg"}, {Expr::Op::Re, "re"},   {Expr::Op::Im, "im"},
        {Expr::Op::Abs, "abs"}, {Expr::Op::Abs2, "abs2"}};
    json args = json::array();
    for (const auto& a : e->args) args.push_back(expr_to_json(a));
    return json{{"op", names.at(e->op)}, {"args", args}};
}

ExprPtr expr_from_json(const json& j) {
    const std::string op = j.at("op").get<std::string>();
    auto node = std::make_shared<Expr>();
    if (op == "const") {
        node->op = Expr::Op::Const;
        node->value = j.at("value").get<double>();
        return node;
    }
    if (op == "coord") {
        node->op = Expr::Op::Coord;
        node->index = j.at("index").get<int>();
        return node;
    }
    static const std::map<std::string, Expr::Op> ops = {
        {"add", Expr::Op::Add}, {"sub", Expr::Op::Sub}, {"mul", Expr::Op::Mul},
        {"neg", Expr::Op::Neg}, {"re", Expr::Op::Re},   {"im", Expr::Op::Im},
        {"abs", Expr::Op::Abs}, {"abs2", Expr::Op::Abs2}};
    const auto it = ops.find(op);
    if (it == ops.end()) throw validation_error("unknown expression op '" + op + "'");
    node->op = it->second;
    for (const auto& a : j.at("args")) node->args.push_back(expr_from_json(a));
    return node;
}

json domain_to_json(const Domain& d) {
    json j{{"field", field_code(d.field())}, {"dim", d.dim()}};
    switch (d.kind()) {
        case DomainKind::Ball: j["kind"] = "ball"; break;
        case DomainKind::HalfSpace: j["kind"] = "halfspace"; break;
        case DomainKind::Paraboloid: j["kind"] = "paraboloid"; break;
        case DomainKind::Sec9:
            j["kind"] = "sec9";
            j["amplitude"] = d.sec9_amplitude();
            j["convention"] = d.sec9_convention() == Sec9Convention::RealPart ? "real" : "imaginary";
            break;
        case DomainKind::Graph:
            j["kind"] = "graph";
            j["expr"] = expr_to_json(d.graph_expr());
            j["chart_radius"] = d.graph_chart_radius();
            break;
    }
    return j;
}

Domain domain_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    const Field f = field_from_code(j.at("field").get<std::string>());
    if (kind == "halfspace") return Domain::half_space(f);
    const int dim = j.at("dim").get<int>();
    if (kind == "ball") return Domain::ball(f, dim);
    if (kind == "paraboloid") return Domain::paraboloid(f, dim);
    if (kind == "sec9") {
        const double amp = j.value("amplitude", 0.5);
        const std::string conv = j.value("convention", "real");
        if (conv != "real" && conv != "imaginary")
            throw validation_error("sec9 convention must be 'real' or 'imaginary'");
        return Domain::sec9(f, dim, amp,
                            conv == "real" ? Sec9Convention::RealPart : Sec9Convention::ImaginaryPart);
    }
    if (kind == "graph") {
        KVec anchor(dim, Scalar::zero(f));
        if (j.contains("anchor")) anchor = coords_from_json(j.at("anchor"), f);
        return Domain::graph(f, dim, expr_from_json(j.at("expr")), anchor,
                             j.value("chart_radius", 1.0));
    }
    throw validation_error("unknown domain kind '" + kind + "'");
}

json distance_to_json(const DistanceResult& r) {
    return json{{"value", r.value},
                {"kind", r.kind == DistanceKind::Exact ? "exact" : "lower_bound"},
                {"tolerance", r.tolerance},
                {"f", dual_to_json(r.f)},
                {"g", dual_to_json(r.g)}};
}

json proximal_to_json(const ProximalClass& c) {
    json j{{"variant", proximality_name(c.variant)},
           {"gap_top", c.gap_top},
           {"gap_bottom", c.gap_bottom},
           {"sigmas", c.sigma.sigmas}};
    if (c.x_plus) j["x_plus"] = point_to_json(*c.x_plus);
    if (c.x_minus) j["x_minus"] = point_to_json(*c.x_minus);
    return j;
}

json limit_set_to_json(const LimitSetSample& s) {
    json clusters = json::array();
    for (size_t i = 0; i < s.points.size(); ++i)
        clusters.push_back(json{{"point", point_to_json(s.points[i])}, {"count", s.multiplicity[i]}});
    return json{{"seed", s.seed}, {"clusters", clusters}, {"words", s.words}};
}

json moebius_to_json(const MoebiusMap& m) {
    return json{{"field", field_code(m.field())},
                {"a", scalar_to_json(m.a)},
                {"b", scalar_to_json(m.b)},
                {"c", scalar_to_json(m.c)},
                {"d", scalar_to_json(m.d)}};
}

MoebiusMap moebius_from_json(const json& j) {
    const Field f = field_from_code(j.at("field").get<std::string>());
    return MoebiusMap{scalar_from_json(j.at("a"), f), scalar_from_json(j.at("b"), f),
                      scalar_from_json(j.at("c"), f), scalar_from_json(j.at("d"), f)};
}

json sphereplane_to_json(const SpherePlane& s, Field f) {
    (void)f;
    return json{{"a", scalar_to_json(s.a)}, {"b", scalar_to_json(s.b)}, {"R", s.R}};
}

SpherePlane sphereplane_from_json(const json& j, Field f) {
    SpherePlane s;
    s.a = scalar_from_json(j.at("a"), f);
    s.b = scalar_from_json(j.at("b"), f);
    s.R = j.at("R").get<double>();
    if (!(s.R > 0)) throw validation_error("sphere ratio R must be positive");
    return s;
}

}  // namespace kproj
