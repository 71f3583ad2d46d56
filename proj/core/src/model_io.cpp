#include "lbscan/model_io.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace lbscan {

namespace {

using json = nlohmann::ordered_json;

constexpr const char* kFormat = "lbscan-model";
constexpr int kVersion = 1;

json envelope(const char* type) {
    json doc;
    doc["format"] = kFormat;
    doc["version"] = kVersion;
    doc["type"] = type;
    return doc;
}

json checked_parse(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("model document is not valid JSON: ") +
                         e.what());
    }
    if (!doc.is_object() || doc.value("format", "") != kFormat)
        throw ParseError("not a model document");
    if (doc.value("version", -1) != kVersion)
        throw ParseError("unsupported model document version");
    return doc;
}

json box_to_json(const BoundingBox& b) {
    return json::array({b.x0, b.y0, b.x1, b.y1});
}

BoundingBox box_from_json(const json& j) {
    if (!j.is_array() || j.size() != 4)
        throw ParseError("region must be [x0, y0, x1, y1]");
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>(),
            j[3].get<double>()};
}

void save_text_file(const std::string& text, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << text;
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace

std::string to_json(const ClusterModel& model) {
    const AdaptiveSfc& sfc = model.sfc();
    json doc = envelope("hdbscan");
    doc["curve"] = to_string(sfc.curve());
    doc["fanout"] = sfc.fanout();
    doc["min_cell_size"] = sfc.min_cell_size();
    doc["region"] = box_to_json(sfc.requested_region());
    doc["structure"] = sfc.to_structure();
    json ranges = json::array();
    for (const DenseSegment& s : model.ranges()) {
        json r;
        r["lo"] = s.lo;
        r["hi"] = s.hi;
        r["provisional"] = s.provisional;
        ranges.push_back(std::move(r));
    }
    doc["ranges"] = std::move(ranges);
    doc["final_ids"] = model.final_ids();
    doc["merge_l"] = model.merge_l();
    doc["merge_threshold"] = model.merge_threshold();
    return doc.dump() + "\n";
}

std::string to_json(const BaselineModel& model) {
    json doc = envelope("baseline");
    doc["assign_threshold"] = model.assign_threshold();
    json pts = json::array();
    for (const Point2D& p : model.points())
        pts.push_back(json::array({p.x, p.y}));
    doc["points"] = std::move(pts);
    doc["labels"] = model.labels();
    return doc.dump() + "\n";
}

ModelKind model_kind_from_json(const std::string& text) {
    const json doc = checked_parse(text);
    const std::string type = doc.value("type", "");
    if (type == "hdbscan") return ModelKind::hdbscan;
    if (type == "baseline") return ModelKind::baseline;
    throw ParseError("unknown model type: " + type);
}

ClusterModel cluster_model_from_json(const std::string& text) {
    const json doc = checked_parse(text);
    if (doc.value("type", "") != "hdbscan")
        throw ParseError("not an hdbscan model document");
    try {
        const BoundingBox region = box_from_json(doc.at("region"));
        const CurveKind curve =
            curve_from_string(doc.at("curve").get<std::string>());
        const int fanout = doc.at("fanout").get<int>();
        const double min_cell = doc.at("min_cell_size").get<double>();
        const std::vector<int> structure =
            doc.at("structure").get<std::vector<int>>();
        AdaptiveSfc sfc = AdaptiveSfc::from_structure(region, curve, fanout,
                                                      min_cell, structure);
        std::vector<DenseSegment> ranges;
        for (const json& r : doc.at("ranges")) {
            DenseSegment s;
            s.lo = r.at("lo").get<std::size_t>();
            s.hi = r.at("hi").get<std::size_t>();
            s.provisional = r.at("provisional").get<bool>();
            ranges.push_back(s);
        }
        return ClusterModel(std::move(sfc), std::move(ranges),
                            doc.at("final_ids").get<std::vector<Label>>(),
                            doc.at("merge_l").get<std::size_t>(),
                            doc.at("merge_threshold").get<double>());
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed hdbscan model: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("inconsistent hdbscan model: ") +
                         e.what());
    }
}

BaselineModel baseline_model_from_json(const std::string& text) {
    const json doc = checked_parse(text);
    if (doc.value("type", "") != "baseline")
        throw ParseError("not a baseline model document");
    try {
        std::vector<Point2D> points;
        for (const json& p : doc.at("points")) {
            if (!p.is_array() || p.size() != 2)
                throw ParseError("points must be [x, y] pairs");
            points.push_back({p[0].get<double>(), p[1].get<double>()});
        }
        std::vector<Label> labels = doc.at("labels").get<std::vector<Label>>();
        if (labels.size() != points.size())
            throw ParseError("points and labels must have equal length");
        return BaselineModel(std::move(points), std::move(labels),
                             doc.at("assign_threshold").get<double>());
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed baseline model: ") + e.what());
    }
}

void save_model_file(const ClusterModel& model, const std::string& path) {
    save_text_file(to_json(model), path);
}

void save_model_file(const BaselineModel& model, const std::string& path) {
    save_text_file(to_json(model), path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return std::move(buf).str();
}

}  // namespace lbscan
