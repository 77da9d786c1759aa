#include "taustat/csv.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

#include "taustat/error.hpp"

namespace taustat {

std::vector<std::string> split_csv_record(std::string_view line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    fields.push_back(std::move(cur));
    return fields;
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::optional<double> parse_number(std::string_view s) {
    s = trim(s);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
    return v;
}

}  // namespace

CaseSet parse_cases_csv(std::string_view text) {
    if (text.size() >= 3 && text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);

    std::size_t line_no = 0;
    auto next_line = [&](std::string_view& line) {
        if (text.empty()) return false;
        const auto nl = text.find('\n');
        line = text.substr(0, nl);
        text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
        ++line_no;
        return true;
    };

    std::string_view line;
    bool have_header = false;
    while (next_line(line)) {
        if (!trim(line).empty()) {
            have_header = true;
            break;
        }
    }
    if (!have_header) throw Error(ErrorCode::MissingColumn, "input has no header row (expected id,x,y,onset)");

    constexpr std::array<std::string_view, 4> required{"id", "x", "y", "onset"};
    std::array<std::size_t, 4> col{};
    const auto header = split_csv_record(line);
    for (std::size_t r = 0; r < required.size(); ++r) {
        bool found = false;
        for (std::size_t c = 0; c < header.size(); ++c) {
            if (trim(header[c]) == required[r]) {
                col[r] = c;
                found = true;
                break;
            }
        }
        if (!found) throw Error(ErrorCode::MissingColumn, "header lacks column '" + std::string(required[r]) + "'");
    }

    std::vector<CaseRecord> rows;
    while (next_line(line)) {
        if (trim(line).empty()) continue;
        const auto fields = split_csv_record(line);
        auto fail = [&](const std::string& why) {
            return Error(ErrorCode::UnparseableRow, "line " + std::to_string(line_no) + ": " + why);
        };
        if (fields.size() != header.size()) {
            throw fail("expected " + std::to_string(header.size()) + " fields, found " + std::to_string(fields.size()));
        }
        CaseRecord rec;
        rec.id = std::string(trim(fields[col[0]]));
        if (rec.id.empty()) throw fail("empty id");
        const std::array<double*, 3> targets{&rec.x, &rec.y, &rec.onset};
        for (std::size_t r = 1; r < 4; ++r) {
            const auto v = parse_number(fields[col[r]]);
            if (!v) throw fail("field '" + std::string(required[r]) + "' is not a finite number: '" + fields[col[r]] + "'");
            *targets[r - 1] = *v;
        }
        rows.push_back(std::move(rec));
    }
    return validate_case_set(std::move(rows));
}

CaseSet ingest_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, "cannot open '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_cases_csv(buf.str());
}

std::string format_double(double v) {
    std::array<char, 64> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    (void)ec;
    return std::string(buf.data(), ptr);
}

namespace {

std::string quote_if_needed(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace

void write_cases_csv(std::ostream& out, const CaseSet& cases) {
    out << "id,x,y,onset\n";
    for (const auto& c : cases) {
        out << quote_if_needed(c.id) << ',' << format_double(c.x) << ',' << format_double(c.y) << ','
            << format_double(c.onset) << '\n';
    }
}

}  // namespace taustat
