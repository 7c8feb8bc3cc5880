#ifndef MCCK_TRACE_IO_HPP
#define MCCK_TRACE_IO_HPP

#include "execution.hpp"
#include "generators.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace mcck {

inline constexpr std::string_view kTraceHeader = "mcck-trace v1";

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
        std::size_t j = i;
        while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
        if (j > i) out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

inline bool valid_loc(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
    return true;
}

inline std::uint64_t parse_uint(std::string_view s, std::size_t line, const char* what, bool positive) {
    std::uint64_t v = 0;
    if (s.empty() || s.size() > 19) throw Error(ErrorKind::SyntaxError, std::string("bad ") + what, 0, line);
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size() || (positive && v == 0))
        throw Error(ErrorKind::SyntaxError, std::string("bad ") + what + " '" + std::string(s) + "'", 0, line);
    return v;
}

inline std::uint64_t keyed(std::string_view tok, std::string_view key, std::size_t line) {
    if (tok.substr(0, key.size()) != key)
        throw Error(ErrorKind::SyntaxError, "expected " + std::string(key) + "<n>, got '" + std::string(tok) + "'", 0, line);
    return parse_uint(tok.substr(key.size()), line, key.data(), true);
}

} // namespace detail

// Parses and validates a trace; errors carry the offending line.
inline Execution parse_trace(std::string_view text) {
    ExecutionBuilder b;
    std::vector<bool> seen_thread;
    std::int64_t cur = -1;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    bool header = false;
    while (pos < text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (auto h = line.find('#'); h != std::string_view::npos) line = line.substr(0, h);
        auto tok = detail::split_ws(line);
        if (!header) {
            if (tok.size() != 2 || tok[0] != "mcck-trace" || tok[1] != "v1")
                throw Error(ErrorKind::SyntaxError, "expected header 'mcck-trace v1'", 0, line_no);
            header = true;
            continue;
        }
        if (tok.empty()) continue;
        if (tok[0] == "thread") {
            if (tok.size() != 2) throw Error(ErrorKind::SyntaxError, "expected 'thread <tid>'", 0, line_no);
            auto t = detail::parse_uint(tok[1], line_no, "thread id", false);
            if (t > 0xffffffu) throw Error(ErrorKind::BadThread, "thread id too large", 0, line_no);
            if (t >= seen_thread.size()) seen_thread.resize(t + 1, false);
            if (seen_thread[t]) throw Error(ErrorKind::SyntaxError, "duplicate thread block " + std::to_string(t), 0, line_no);
            seen_thread[t] = true;
            cur = std::int64_t(t);
            b.thread(std::uint32_t(t));
            continue;
        }
        if (cur < 0) throw Error(ErrorKind::SyntaxError, "event outside a thread block", 0, line_no);
        const std::string_view op = tok[0];
        auto ord_of = [&](std::string_view s) {
            auto o = parse_order(s);
            if (!o) throw Error(ErrorKind::SyntaxError, "unknown memory order '" + std::string(s) + "'", 0, line_no);
            return *o;
        };
        auto loc_of = [&](std::string_view s) {
            if (!detail::valid_loc(s)) throw Error(ErrorKind::SyntaxError, "bad location '" + std::string(s) + "'", 0, line_no);
            return s;
        };
        const auto t = std::uint32_t(cur);
        if (op == "w") {
            if (tok.size() != 4) throw Error(ErrorKind::SyntaxError, "expected 'w <loc> <ord> id=<n>'", 0, line_no);
            b.add(t, Op::Write, ord_of(tok[2]), loc_of(tok[1]), detail::keyed(tok[3], "id=", line_no), 0, line_no);
        } else if (op == "r" || op == "u") {
            if (tok.size() != 5)
                throw Error(ErrorKind::SyntaxError, "expected '" + std::string(op) + " <loc> <ord> id=<n> from=<m>'", 0, line_no);
            b.add(t, op == "r" ? Op::Read : Op::Rmw, ord_of(tok[2]), loc_of(tok[1]), detail::keyed(tok[3], "id=", line_no),
                  detail::keyed(tok[4], "from=", line_no), line_no);
        } else if (op == "f") {
            if (tok.size() != 3) throw Error(ErrorKind::SyntaxError, "expected 'f <ord> id=<n>'", 0, line_no);
            b.add(t, Op::Fence, ord_of(tok[1]), {}, detail::keyed(tok[2], "id=", line_no), 0, line_no);
        } else {
            throw Error(ErrorKind::SyntaxError, "unknown event kind '" + std::string(op) + "'", 0, line_no);
        }
    }
    if (!header) throw Error(ErrorKind::SyntaxError, "empty input", 0, 1);
    return b.build();
}

inline std::string serialize_trace(const Execution& x) {
    std::string out(kTraceHeader);
    out += '\n';
    for (std::uint32_t t = 0; t < x.num_threads(); ++t) {
        out += "thread " + std::to_string(t) + '\n';
        for (EventIdx e = x.thread_begin(t); e < x.thread_end(t); ++e) {
            const Event& ev = x[e];
            switch (ev.op) {
            case Op::Write: out += "w "; break;
            case Op::Read: out += "r "; break;
            case Op::Rmw: out += "u "; break;
            case Op::Fence: out += "f "; break;
            }
            if (ev.loc >= 0) out += x.loc_name(ev.loc) + ' ';
            out += to_string(ev.ord);
            out += " id=" + std::to_string(ev.id);
            if (ev.is_read()) out += " from=" + std::to_string(x[x.rf(e)].id);
            out += '\n';
        }
    }
    return out;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::SyntaxError, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline Execution load_trace(const std::string& path) { return parse_trace(read_file(path)); }

// One `u v` pair per line, 1-based nodes, '#' comments. n is the largest node named.
inline UndirectedGraph parse_edge_list(std::string_view text) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
    std::size_t pos = 0, line_no = 0;
    UndirectedGraph g;
    while (pos < text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (auto h = line.find('#'); h != std::string_view::npos) line = line.substr(0, h);
        auto tok = detail::split_ws(line);
        if (tok.empty()) continue;
        if (tok.size() != 2) throw Error(ErrorKind::SyntaxError, "expected 'u v'", 0, line_no);
        auto a = detail::parse_uint(tok[0], line_no, "node", true);
        auto b = detail::parse_uint(tok[1], line_no, "node", true);
        if (a == b || a > 0xffffffu || b > 0xffffffu) throw Error(ErrorKind::SyntaxError, "bad edge", 0, line_no);
        pairs.emplace_back(std::uint32_t(a), std::uint32_t(b));
        g.n = std::max({g.n, std::uint32_t(a), std::uint32_t(b)});
    }
    for (auto [a, b] : pairs) g.add_edge(a, b);
    return g;
}

} // namespace mcck

#endif
