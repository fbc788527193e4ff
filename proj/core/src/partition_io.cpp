#include "jeq/partition_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "jeq/error.hpp"

namespace jeq {

std::string to_text(const TwoPartition& p) {
    return "n=" + std::to_string(p.n()) + " w=3\n" + p.to_string() + "\n";
}

std::string to_text(const std::vector<TwoPartition>& ps) {
    if (ps.empty()) return "";
    std::string s = "n=" + std::to_string(ps.front().n()) + " w=3\n";
    for (const auto& p : ps) {
        if (p.n() != ps.front().n()) throw DomainError("partitions in one file must share n");
        s += p.to_string() + "\n";
    }
    return s;
}

std::string to_json(const TwoPartition& p) {
    nlohmann::json cells = {{"1", nlohmann::json::array()}, {"2", nlohmann::json::array()}};
    for (int r = 0; r < p.graph().order(); ++r) {
        const auto& t = p.graph().vertex(r);
        cells[p.in_cell1(r) ? "1" : "2"].push_back({t[0], t[1], t[2]});
    }
    nlohmann::json j = {{"n", p.n()}, {"cells", cells}};
    return j.dump() + "\n";
}

namespace {

struct Line {
    std::string_view text;
    std::size_t number;
};

std::vector<Line> split_lines(std::string_view text) {
    std::vector<Line> lines;
    std::size_t pos = 0, number = 1;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        lines.push_back({line, number++});
        pos = end + 1;
    }
    while (!lines.empty() && lines.back().text.find_first_not_of(" \t") == std::string_view::npos) lines.pop_back();
    return lines;
}

int parse_header(const Line& line) {
    const auto& s = line.text;
    auto fail = [&](std::size_t col, const std::string& msg) { throw ParseError(msg, line.number, col + 1); };
    if (s.substr(0, 2) != "n=") fail(0, "expected header 'n=<int> w=3'");
    int n = 0;
    auto [ptr, ec] = std::from_chars(s.data() + 2, s.data() + s.size(), n);
    const std::size_t after = static_cast<std::size_t>(ptr - s.data());
    if (ec != std::errc() || after == 2) fail(2, "expected an integer after 'n='");
    if (s.substr(after) != " w=3") fail(after, "expected ' w=3' after n");
    if (n < 6 || n > kMaxGround) fail(2, "n must be in 6.." + std::to_string(kMaxGround));
    return n;
}

std::vector<TwoPartition> parse_text(std::string_view text) {
    auto lines = split_lines(text);
    if (lines.empty()) throw ParseError("empty partition file", 1, 1);
    const int n = parse_header(lines.front());
    const auto order = static_cast<std::size_t>(binomial(n, 3));
    if (lines.size() < 2) throw ParseError("missing cell-label line", 2, 1);
    std::vector<TwoPartition> out;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& line = lines[i];
        for (std::size_t c = 0; c < line.text.size(); ++c)
            if (line.text[c] != '1' && line.text[c] != '2')
                throw ParseError(std::string("unexpected character '") + line.text[c] + "', labels are 1 or 2", line.number, c + 1);
        if (line.text.size() != order)
            throw ParseError("expected " + std::to_string(order) + " labels, found " + std::to_string(line.text.size()),
                             line.number, line.text.size() + 1);
        out.push_back(TwoPartition::from_string(n, line.text));
    }
    return out;
}

// Line/column of a byte offset.
std::pair<std::size_t, std::size_t> locate(std::string_view text, std::size_t offset) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

TwoPartition parse_json(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::parse_error& e) {
        auto [line, col] = locate(text, e.byte > 0 ? e.byte - 1 : 0);
        throw ParseError("invalid JSON", line, col);
    }
    auto fail = [](const std::string& msg) { throw ParseError(msg, 1, 1); };
    if (!j.is_object() || !j.contains("n") || !j["n"].is_number_integer()) fail("JSON partition needs an integer field \"n\"");
    const int n = j["n"].get<int>();
    if (n < 6 || n > kMaxGround) fail("n must be in 6.." + std::to_string(kMaxGround));
    if (!j.contains("cells") || !j["cells"].is_object()) fail("JSON partition needs an object field \"cells\"");
    auto g = JohnsonGraph::get(n, 3);
    std::vector<int> label(static_cast<std::size_t>(g->order()), 0);
    for (auto& [key, list] : j["cells"].items()) {
        if (key != "1" && key != "2") fail("cell keys must be \"1\" or \"2\", got \"" + key + "\"");
        if (!list.is_array()) fail("cell \"" + key + "\" must be an array of triples");
        for (const auto& v : list) {
            if (!v.is_array() || v.size() != 3) fail("cell \"" + key + "\" contains a non-triple entry " + v.dump());
            std::vector<int> e;
            for (const auto& x : v) {
                if (!x.is_number_integer()) fail("triple " + v.dump() + " has a non-integer element");
                e.push_back(x.get<int>());
            }
            int r = 0;
            try {
                r = g->index(Triple(std::span<const int>(e)));
            } catch (const Error& err) {
                fail("triple " + v.dump() + ": " + err.what());
            }
            if (label[static_cast<std::size_t>(r)] != 0) fail("triple " + v.dump() + " listed twice");
            label[static_cast<std::size_t>(r)] = key == "1" ? 1 : 2;
        }
    }
    std::string cells(label.size(), '2');
    for (std::size_t r = 0; r < label.size(); ++r) {
        if (label[r] == 0) fail("vertex " + g->vertex(static_cast<int>(r)).to_string() + " is not assigned to a cell");
        cells[r] = static_cast<char>('0' + label[r]);
    }
    return TwoPartition::from_string(n, cells);
}

bool looks_like_json(std::string_view text) {
    const auto first = text.find_first_not_of(" \t\r\n");
    return first != std::string_view::npos && text[first] == '{';
}

}  // namespace

TwoPartition parse_partition(std::string_view text) {
    if (looks_like_json(text)) return parse_json(text);
    auto ps = parse_text(text);
    if (ps.size() != 1) throw ParseError("expected exactly one partition, found " + std::to_string(ps.size()), 3, 1);
    return std::move(ps.front());
}

std::vector<TwoPartition> parse_partitions(std::string_view text) {
    if (looks_like_json(text)) return {parse_json(text)};
    return parse_text(text);
}

TwoPartition read_partition_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_partition(buf.str());
}

void write_file(const std::string& path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path + "'");
    out << contents;
    if (!out) throw Error("write to '" + path + "' failed");
}

}  // namespace jeq
