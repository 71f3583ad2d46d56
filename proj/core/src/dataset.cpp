#include "lbscan/dataset.hpp"

#include <charconv>
#include <fstream>
#include <limits>
#include <sstream>

namespace lbscan {

Dataset::Dataset(std::vector<Point2D> points, std::vector<Label> truth)
    : points_(std::move(points)), truth_(std::move(truth)) {
    if (!truth_.empty() && truth_.size() != points_.size())
        throw std::invalid_argument("truth labels do not match point count");
}

BoundingBox Dataset::bounds() const {
    if (points_.empty()) throw std::logic_error("bounds of empty dataset");
    BoundingBox b{points_[0].x, points_[0].y, points_[0].x, points_[0].y};
    for (const auto& p : points_) b.expand_to(p);
    return b;
}

namespace {

bool parse_double(std::string_view field, double& out) {
    const char* first = field.data();
    const char* last = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last && std::isfinite(out);
}

// csv: split on commas. tsv: split on any run of tabs/spaces, which also
// covers the whitespace-separated files common for benchmark datasets.
std::vector<std::string_view> split_row(const std::string& line,
                                        FileFormat format) {
    std::vector<std::string_view> fields;
    std::string_view s{line};
    if (format == FileFormat::csv) {
        std::size_t start = 0;
        while (true) {
            std::size_t comma = s.find(',', start);
            if (comma == std::string_view::npos) {
                fields.push_back(s.substr(start));
                break;
            }
            fields.push_back(s.substr(start, comma - start));
            start = comma + 1;
        }
    } else {
        std::size_t i = 0;
        while (i < s.size()) {
            while (i < s.size() && (s[i] == '\t' || s[i] == ' ')) ++i;
            std::size_t start = i;
            while (i < s.size() && s[i] != '\t' && s[i] != ' ') ++i;
            if (i > start) fields.push_back(s.substr(start, i - start));
        }
    }
    return fields;
}

std::string_view trim(std::string_view v) {
    while (!v.empty() && (v.front() == ' ' || v.front() == '\r')) v.remove_prefix(1);
    while (!v.empty() && (v.back() == ' ' || v.back() == '\r')) v.remove_suffix(1);
    return v;
}

}  // namespace

Dataset load_dataset(std::istream& in, FileFormat format) {
    std::vector<Point2D> points;
    std::vector<Label> truth;
    bool any_truth = false;

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto fields = split_row(line, format);
        for (auto& f : fields) f = trim(f);
        if (fields.empty() || (fields.size() == 1 && fields[0].empty()))
            continue;  // blank line
        if (fields.size() != 2 && fields.size() != 3)
            throw ParseError("line " + std::to_string(line_no) +
                             ": expected 2 or 3 fields, got " +
                             std::to_string(fields.size()));
        Point2D p;
        if (!parse_double(fields[0], p.x) || !parse_double(fields[1], p.y))
            throw ParseError("line " + std::to_string(line_no) +
                             ": malformed coordinate");
        Label lab = kNoise;
        if (fields.size() == 3) {
            int parsed = 0;
            auto f = fields[2];
            auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), parsed);
            if (ec != std::errc{} || ptr != f.data() + f.size())
                throw ParseError("line " + std::to_string(line_no) +
                                 ": malformed label");
            lab = parsed;
            any_truth = true;
        }
        points.push_back(p);
        truth.push_back(lab);
    }
    if (points.empty()) throw ParseError("no data rows");
    if (!any_truth) truth.clear();
    return Dataset(std::move(points), std::move(truth));
}

Dataset load_dataset_file(const std::string& path, FileFormat format) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    return load_dataset(in, format);
}

FileFormat format_for_path(const std::string& path) {
    if (path.size() >= 4 && path.substr(path.size() - 4) == ".csv")
        return FileFormat::csv;
    return FileFormat::tsv;
}

namespace {

void write_double(std::ostream& out, double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    out.write(buf, ptr - buf);
    (void)ec;
}

}  // namespace

void save_dataset_file(const Dataset& ds, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write " + path);
    const bool csv = format_for_path(path) == FileFormat::csv;
    const char sep = csv ? ',' : '\t';
    for (std::size_t i = 0; i < ds.size(); ++i) {
        write_double(out, ds.point(PointId(i)).x);
        out << sep;
        write_double(out, ds.point(PointId(i)).y);
        if (ds.has_truth()) out << sep << ds.truth()[i];
        out << '\n';
    }
}

void save_labels_file(const std::vector<Label>& labels,
                      const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write " + path);
    out << "id,label\n";
    for (std::size_t i = 0; i < labels.size(); ++i)
        out << i << ',' << labels[i] << '\n';
}

std::vector<Label> load_labels_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::vector<Label> labels;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line_no == 1 && line.rfind("id,", 0) == 0) continue;  // header
        if (line.empty() || line == "\r") continue;
        std::istringstream row(line);
        std::size_t id;
        char comma;
        long lab;
        if (!(row >> id >> comma >> lab) || comma != ',')
            throw ParseError("line " + std::to_string(line_no) +
                             ": malformed label row");
        if (labels.size() <= id) labels.resize(id + 1, kNoise);
        labels[id] = Label(lab);
    }
    return labels;
}

}  // namespace lbscan
