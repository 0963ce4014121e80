#include "hrcp/instance_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string_view>

#include "hrcp/format.hpp"

namespace hrcp {

namespace {

[[noreturn]] void parse_fail(int line, const std::string& what) {
    throw std::runtime_error("parse error at line " + std::to_string(line) + ": " + what);
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t pos = 0;
    while (pos < line.size()) {
        while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\r')) ++pos;
        std::size_t start = pos;
        while (pos < line.size() && line[pos] != ' ' && line[pos] != '\t' && line[pos] != '\r') ++pos;
        if (pos > start) fields.push_back(line.substr(start, pos - start));
    }
    return fields;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    return out;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return in;
}

// Reads the next non-comment line; returns false at EOF. line_no counts every
// physical line consumed.
bool next_record(std::istream& in, std::string& line, int& line_no) {
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.front() == '#') continue;
        return true;
    }
    return false;
}

}  // namespace

void write_instance(const Instance& instance, std::ostream& out) {
    out << "hrcp 1\n" << instance.n << ' ' << instance.d << '\n';
    for (int i = 0; i < instance.n; ++i) {
        for (int t = 0; t < instance.d; ++t) {
            if (t) out << ' ';
            out << format_double(instance.coord(i, t));
        }
        out << '\n';
    }
}

void write_instance(const Instance& instance, const std::string& path) {
    auto out = open_out(path);
    write_instance(instance, out);
}

Instance read_instance(std::istream& in) {
    std::string line;
    int line_no = 0;

    if (!next_record(in, line, line_no)) parse_fail(line_no, "missing header");
    {
        auto fields = split_fields(line);
        if (fields.size() != 2 || fields[0] != "hrcp" || fields[1] != "1")
            parse_fail(line_no, "expected header 'hrcp 1'");
    }

    if (!next_record(in, line, line_no)) parse_fail(line_no, "missing point/dimension counts");
    long long n = 0, d = 0;
    {
        auto fields = split_fields(line);
        auto pn = fields.size() == 2 ? parse_int(fields[0]) : std::nullopt;
        auto pd = fields.size() == 2 ? parse_int(fields[1]) : std::nullopt;
        if (!pn || !pd || *pn < 1 || *pd < 1) parse_fail(line_no, "expected '<n> <d>' with n,d >= 1");
        n = *pn;
        d = *pd;
    }

    std::vector<double> coords;
    coords.reserve(static_cast<std::size_t>(n * d));
    for (long long i = 0; i < n; ++i) {
        if (!next_record(in, line, line_no))
            parse_fail(line_no, "expected " + std::to_string(n) + " coordinate rows, found " + std::to_string(i));
        auto fields = split_fields(line);
        if (static_cast<long long>(fields.size()) != d)
            parse_fail(line_no, "expected " + std::to_string(d) + " coordinates, found " +
                                    std::to_string(fields.size()));
        for (auto field : fields) {
            auto value = parse_double(field);
            if (!value) parse_fail(line_no, "bad coordinate '" + std::string(field) + "'");
            if (!std::isfinite(*value))
                parse_fail(line_no, "non-finite coordinate '" + std::string(field) + "'");
            coords.push_back(*value);
        }
    }
    return Instance::from_flat(static_cast<int>(n), static_cast<int>(d), std::move(coords));
}

Instance read_instance(const std::string& path) {
    auto in = open_in(path);
    return read_instance(in);
}

void write_labels(const std::vector<int>& labels, std::ostream& out) {
    out << "hrcp-labels 1\n";
    for (int label : labels) out << label << '\n';
}

void write_labels(const std::vector<int>& labels, const std::string& path) {
    auto out = open_out(path);
    write_labels(labels, out);
}

std::vector<int> read_labels(std::istream& in) {
    std::string line;
    int line_no = 0;
    if (!next_record(in, line, line_no)) parse_fail(line_no, "missing header");
    {
        auto fields = split_fields(line);
        if (fields.size() != 2 || fields[0] != "hrcp-labels" || fields[1] != "1")
            parse_fail(line_no, "expected header 'hrcp-labels 1'");
    }
    std::vector<int> labels;
    while (next_record(in, line, line_no)) {
        auto fields = split_fields(line);
        if (fields.empty()) continue;
        if (fields.size() != 1) parse_fail(line_no, "expected one label per line");
        auto value = parse_int(fields[0]);
        if (!value || *value < 0) parse_fail(line_no, "bad label '" + std::string(fields[0]) + "'");
        labels.push_back(static_cast<int>(*value));
    }
    return labels;
}

std::vector<int> read_labels(const std::string& path) {
    auto in = open_in(path);
    return read_labels(in);
}

}  // namespace hrcp
