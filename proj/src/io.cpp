#include "bt/io.hpp"

#include "bt/errors.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace bt {

namespace {

json matrix_to_json(const Matrix& a)
{
    json rows = json::array();
    for (const auto& r : a) {
        json row = json::array();
        for (const auto& x : r) row.push_back(x.str());
        rows.push_back(row);
    }
    return rows;
}

Matrix matrix_from_json(const json& j, const FieldCtx* ctx, std::int64_t m)
{
    if (!j.is_array()) throw ParseError("matrix must be an array of rows");
    Matrix out;
    for (const auto& row : j) {
        if (!row.is_array()) throw ParseError("matrix row must be an array");
        Row r;
        for (const auto& e : row) {
            if (e.is_number_integer())
                r.push_back(PR::from_int(ctx, e.get<std::int64_t>()).rescale(m));
            else if (e.is_string())
                r.push_back(parse_scalar(e.get<std::string>(), ctx, m));
            else
                throw ParseError("matrix entries must be strings or integers");
        }
        out.push_back(std::move(r));
    }
    return out;
}

template <class T>
T required(const json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw ParseError(std::string("field '") + key + "' has the wrong type");
    }
}

std::string trop_key(const Subset& s)
{
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i] + 1);
    return out;
}

Val val_from_json(const json& v)
{
    if (v.is_number_integer()) return Val(Q(v.get<long>()));
    if (!v.is_string()) throw ParseError("tropical values must be strings or integers");
    auto s = v.get<std::string>();
    if (s == "inf" || s == "+inf" || s == "infinity") return Val::infinity();
    return Val(parse_q(s));
}

}  // namespace

json point_to_json(const GrassPoint& x)
{
    json j;
    j["field"] = field_header(x.field());
    j["ramification"] = x.ramification();
    j["d"] = x.d();
    j["n"] = x.n();
    j["matrix"] = matrix_to_json(x.matrix());
    return j;
}

GrassPoint point_from_json(const json& j)
{
    const FieldCtx* ctx = parse_field_header(required<std::string>(j, "field"));
    std::int64_t m = j.contains("ramification") ? required<std::int64_t>(j, "ramification") : 1;
    if (m < 1 || m > kMaxRamification) throw RamificationBound("ramification out of range");
    int d = required<int>(j, "d");
    int n = required<int>(j, "n");
    Matrix rows = matrix_from_json(j.at("matrix"), ctx, m);
    if (static_cast<int>(rows.size()) != d) throw ParseError("matrix must have d rows");
    for (const auto& r : rows)
        if (static_cast<int>(r.size()) != n) throw ParseError("matrix rows must have n entries");
    return GrassPoint(rows, n, ctx);
}

json trop_to_json(const TropPlueckerVector& tp)
{
    json j;
    j["d"] = tp.d();
    j["n"] = tp.n();
    json map = json::object();
    const auto& subsets = tp.table().subsets;
    for (std::size_t k = 0; k < subsets.size(); ++k) map[trop_key(subsets[k])] = tp.values()[k].str();
    j["trop"] = map;
    return j;
}

bool has_trop(const json& j) { return j.is_object() && j.contains("trop"); }

TropPlueckerVector trop_from_json(const json& j)
{
    int d = required<int>(j, "d");
    int n = required<int>(j, "n");
    if (d < 0 || d > n || n < 1 || n > 20) throw ParseError("invalid (d, n)");
    const auto& table = subset_table(n, d);
    const json& t = j.at("trop");
    std::vector<Val> values;
    if (t.is_array()) {
        if (t.size() != table.subsets.size()) throw ParseError("tropical vector has the wrong length");
        for (const auto& v : t) values.push_back(val_from_json(v));
    } else if (t.is_object()) {
        values.assign(table.subsets.size(), Val::infinity());
        std::vector<bool> set(table.subsets.size(), false);
        for (auto it = t.begin(); it != t.end(); ++it) {
            Subset s;
            std::stringstream ss(it.key());
            std::string part;
            while (std::getline(ss, part, ',')) {
                try {
                    s.push_back(std::stoi(part) - 1);
                } catch (const std::exception&) {
                    throw ParseError("bad tropical key '" + it.key() + "'");
                }
            }
            if (static_cast<int>(s.size()) != d || !std::is_sorted(s.begin(), s.end()) || s.front() < 0 || s.back() >= n)
                throw ParseError("bad tropical key '" + it.key() + "'");
            int idx = table.index(s);
            if (idx < 0 || set[static_cast<std::size_t>(idx)]) throw ParseError("bad tropical key '" + it.key() + "'");
            set[static_cast<std::size_t>(idx)] = true;
            values[static_cast<std::size_t>(idx)] = val_from_json(it.value());
        }
    } else {
        throw ParseError("'trop' must be an object or array");
    }
    return TropPlueckerVector(d, n, values);
}

json building_point_to_json(const BuildingPoint& z)
{
    BuildingPoint nf = normal_form(z);
    json j;
    j["field"] = field_header(matrix_field(nf.frame));
    j["frame"] = matrix_to_json(nf.frame);
    json coords = json::array();
    for (const auto& c : nf.coords) coords.push_back(to_string(c));
    j["coords"] = coords;
    return j;
}

BuildingPoint building_point_from_json(const json& j)
{
    const FieldCtx* ctx = parse_field_header(required<std::string>(j, "field"));
    Matrix frame = matrix_from_json(j.at("frame"), ctx, 1);
    QVec coords;
    for (const auto& c : j.at("coords")) coords.push_back(c.is_string() ? parse_q(c.get<std::string>()) : Q(c.get<long>()));
    return make_point(frame, coords);
}

json newton_to_json(const NewtonPoint& v)
{
    json j = json::array();
    for (const auto& s : v.to_strings()) j.push_back(s);
    return j;
}

NewtonPoint newton_from_json(const json& j)
{
    QVec slopes;
    for (const auto& s : j) slopes.push_back(parse_q(s.get<std::string>()));
    return NewtonPoint(slopes);
}

json hasse_to_json(const std::vector<NewtonPoint>& S)
{
    json edges = json::array();
    for (auto [a, b] : hasse_edges(S)) edges.push_back(json{{"from", newton_to_json(S[a])}, {"to", newton_to_json(S[b])}});
    return edges;
}

json certificate_to_json(const ApartmentCertificate& c)
{
    json j;
    json u = json::array();
    for (const auto& x : c.u) u.push_back(to_string(x));
    j["coords"] = u;
    j["value"] = to_string(c.value);
    json support = json::array();
    for (std::size_t k = 0; k < c.support.subsets.size(); ++k) {
        json entry;
        entry["subset"] = subset_str(c.support.subsets[k]);
        if (k < c.hull.coefficients.size()) entry["coefficient"] = to_string(c.hull.coefficients[k]);
        support.push_back(entry);
    }
    j["support"] = support;
    j["hull_position"] = to_string(c.hull.position);
    j["span_rank"] = c.hull.span_rank;
    return j;
}

json retraction_to_json(const Retraction& r)
{
    json j;
    j["point"] = building_point_to_json(r.point);
    j["iterations"] = r.iterations;
    j["residually_stable"] = r.residually_stable;
    json frames = json::array();
    for (const auto& fc : r.certificate) {
        json f;
        f["frame"] = matrix_to_json(fc.frame);
        f["certificate"] = certificate_to_json(fc.cert);
        frames.push_back(f);
    }
    j["certificate"] = frames;
    return j;
}

RetractionConfig config_from_json(const json& j)
{
    RetractionConfig cfg;
    if (!j.is_object()) throw ParseError("config must be an object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        const auto& k = it.key();
        if (k == "frame_depth")
            cfg.frame_depth = it.value().get<int>();
        else if (k == "max_iterations")
            cfg.max_iterations = it.value().get<int>();
        else if (k == "verify_depth")
            cfg.verify_depth = it.value().get<int>();
        else if (k == "base_field")
            cfg.base = parse_field_header(it.value().get<std::string>());
        else
            throw ParseError("unknown config key '" + k + "'");
    }
    cfg.validate();
    return cfg;
}

json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
}

}  // namespace bt
