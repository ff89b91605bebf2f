#ifndef DIVKIT_CORPUS_IO_HPP
#define DIVKIT_CORPUS_IO_HPP

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "divkit/core.hpp"

// Parsing and serialization of the parallel aligned dependency corpus format.
//
// A document is UTF-8 text:
//
//   #! source-language <label>
//   #! target-language <label>
//
//   # id <text>
//   ## source
//   INDEX<TAB>FORM<TAB>POS<TAB>HEAD      (HEAD 0 marks the root)
//   ...
//   ## target
//   ...
//   ## align
//   1-1 2-2                              (line absent when no links)
//
// Instances are separated by blank lines. Canonical serialization sorts
// alignment links ascending by (src, tgt) and emits one blank line after
// every instance; parse(serialize(d)) == d and serialize(parse(t)) == t for
// canonical t. Forms must not contain tabs.

namespace divkit {

class ParseError : public Error {
public:
    ParseError(int line, const std::string& reason)
        : Error("line " + std::to_string(line) + ": " + reason), line_(line), reason_(reason) {}

    int line() const { return line_; }
    const std::string& reason() const { return reason_; }

private:
    int line_;
    std::string reason_;
};

struct CorpusDocument {
    Corpus corpus;
    std::string source_language;
    std::string target_language;

    bool operator==(const CorpusDocument&) const = default;
};

namespace io_detail {

struct Line {
    int number = 0;  // 1-based
    std::string text;
};

inline std::vector<Line> split_lines(std::string_view text) {
    std::vector<Line> lines;
    int number = 1;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) {
            if (start < text.size())
                lines.push_back({number, std::string(text.substr(start))});
            break;
        }
        std::string s(text.substr(start, end - start));
        if (!s.empty() && s.back() == '\r') s.pop_back();
        lines.push_back({number, std::move(s)});
        start = end + 1;
        ++number;
    }
    return lines;
}

inline bool is_blank(const std::string& s) {
    return s.find_first_not_of(" \t") == std::string::npos;
}

inline std::vector<std::string> split_tabs(const std::string& s) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t tab = s.find('\t', start);
        if (tab == std::string::npos) {
            out.push_back(s.substr(start));
            break;
        }
        out.push_back(s.substr(start, tab - start));
        start = tab + 1;
    }
    return out;
}

inline int parse_int(const std::string& s, int line, const std::string& what) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
        throw ParseError(line, what + " \"" + s + "\" is not a non-negative integer");
    try {
        return std::stoi(s);
    } catch (const std::exception&) {
        throw ParseError(line, what + " \"" + s + "\" is out of range");
    }
}

inline std::string expect_header(const Line& line, const std::string& key) {
    const std::string prefix = "#! " + key + " ";
    if (line.text.rfind(prefix, 0) != 0)
        throw ParseError(line.number, "expected \"#! " + key + " <label>\" header");
    std::string label = line.text.substr(prefix.size());
    if (label.empty() || is_blank(label))
        throw ParseError(line.number, key + " label must be non-empty");
    return label;
}

// Reads token lines until the next "## " section marker; returns a tree.
inline DepTree parse_tree(const std::vector<Line>& block, std::size_t& i, int section_line) {
    std::vector<Token> tokens;
    std::map<int, int> heads;
    while (i < block.size() && block[i].text.rfind("## ", 0) != 0) {
        const Line& line = block[i];
        auto fields = split_tabs(line.text);
        if (fields.size() != 4)
            throw ParseError(line.number, "expected 4 tab-separated fields, got " +
                                              std::to_string(fields.size()));
        int idx = parse_int(fields[0], line.number, "token index");
        if (idx != static_cast<int>(tokens.size()) + 1)
            throw ParseError(line.number, "token index " + std::to_string(idx) +
                                              " out of sequence (expected " +
                                              std::to_string(tokens.size() + 1) + ")");
        if (fields[1].empty())
            throw ParseError(line.number, "empty token form");
        int head = parse_int(fields[3], line.number, "head");
        tokens.push_back(Token{idx, fields[1], fields[2]});
        heads[idx] = head;
        ++i;
    }
    if (tokens.empty()) throw ParseError(section_line, "section has no token lines");
    try {
        return DepTree::build(std::move(tokens), heads);
    } catch (const Error& e) {
        throw ParseError(section_line, std::string("tree invariant violated: ") + e.what());
    }
}

inline Alignment parse_align_line(const Line& line, int src_len, int tgt_len) {
    std::set<Alignment::Link> links;
    std::size_t pos = 0;
    const std::string& s = line.text;
    while (pos < s.size()) {
        std::size_t end = s.find(' ', pos);
        if (end == std::string::npos) end = s.size();
        std::string tok = s.substr(pos, end - pos);
        pos = end + 1;
        if (tok.empty()) continue;
        std::size_t dash = tok.find('-');
        if (dash == std::string::npos)
            throw ParseError(line.number, "alignment link \"" + tok + "\" is not of form i-j");
        int f = parse_int(tok.substr(0, dash), line.number, "alignment source index");
        int e = parse_int(tok.substr(dash + 1), line.number, "alignment target index");
        if (f < 1 || f > src_len)
            throw ParseError(line.number, "alignment index " + tok + " out of range: source has " +
                                              std::to_string(src_len) + " tokens");
        if (e < 1 || e > tgt_len)
            throw ParseError(line.number, "alignment index " + tok + " out of range: target has " +
                                              std::to_string(tgt_len) + " tokens");
        if (!links.emplace(f, e).second)
            throw ParseError(line.number, "duplicate alignment link " + tok);
    }
    return Alignment(std::move(links));
}

}  // namespace io_detail

inline CorpusDocument parse_corpus(std::string_view text) {
    using namespace io_detail;
    auto lines = split_lines(text);

    // Group non-blank lines into blocks.
    std::vector<std::vector<Line>> blocks;
    std::vector<Line> current;
    for (auto& line : lines) {
        if (is_blank(line.text)) {
            if (!current.empty()) blocks.push_back(std::move(current));
            current.clear();
        } else {
            current.push_back(std::move(line));
        }
    }
    if (!current.empty()) blocks.push_back(std::move(current));
    if (blocks.empty()) throw ParseError(1, "empty corpus");

    const auto& header = blocks.front();
    if (header.size() != 2)
        throw ParseError(header.front().number,
                         "document must start with the two \"#!\" language header lines");
    CorpusDocument doc;
    doc.source_language = expect_header(header[0], "source-language");
    doc.target_language = expect_header(header[1], "target-language");

    std::vector<AlignedPair> pairs;
    std::set<std::string> ids;
    for (std::size_t b = 1; b < blocks.size(); ++b) {
        const auto& block = blocks[b];
        std::size_t i = 0;
        const Line& id_line = block[i];
        if (id_line.text.rfind("# id ", 0) != 0)
            throw ParseError(id_line.number, "expected \"# id <text>\" line");
        std::string id = id_line.text.substr(5);
        if (id.empty()) throw ParseError(id_line.number, "empty instance id");
        if (!ids.insert(id).second)
            throw ParseError(id_line.number, "duplicate id \"" + id + "\"");
        ++i;

        if (i >= block.size() || block[i].text != "## source")
            throw ParseError(block[std::min(i, block.size() - 1)].number,
                             "expected \"## source\" section");
        int src_line = block[i].number;
        ++i;
        DepTree source = parse_tree(block, i, src_line);

        if (i >= block.size() || block[i].text != "## target")
            throw ParseError(block[std::min(i, block.size() - 1)].number,
                             "expected \"## target\" section");
        int tgt_line = block[i].number;
        ++i;
        DepTree target = parse_tree(block, i, tgt_line);

        if (i >= block.size() || block[i].text != "## align")
            throw ParseError(block[std::min(i, block.size() - 1)].number,
                             "expected \"## align\" section");
        int align_line = block[i].number;
        ++i;
        Alignment alignment;
        if (i < block.size()) {
            alignment = parse_align_line(block[i], source.size(), target.size());
            ++i;
        }
        if (i < block.size())
            throw ParseError(block[i].number, "unexpected content after alignment line");

        try {
            pairs.emplace_back(std::move(id), std::move(source), std::move(target),
                               std::move(alignment));
        } catch (const Error& e) {
            throw ParseError(align_line, e.what());
        }
    }
    doc.corpus = Corpus(std::move(pairs));
    return doc;
}

inline std::string serialize_corpus(const CorpusDocument& doc) {
    std::string out;
    out += "#! source-language " + doc.source_language + "\n";
    out += "#! target-language " + doc.target_language + "\n";
    out += "\n";
    auto emit_tree = [&out](const DepTree& t) {
        for (const Token& tok : t.tokens()) {
            out += std::to_string(tok.index);
            out += '\t';
            out += tok.form;
            out += '\t';
            out += tok.pos;
            out += '\t';
            out += std::to_string(t.head_of(tok.index));
            out += '\n';
        }
    };
    for (const AlignedPair& pair : doc.corpus.pairs()) {
        out += "# id " + pair.id() + "\n";
        out += "## source\n";
        emit_tree(pair.source());
        out += "## target\n";
        emit_tree(pair.target());
        out += "## align\n";
        if (!pair.alignment().empty()) {
            bool first = true;
            for (const auto& [f, e] : pair.alignment().links()) {
                if (!first) out += ' ';
                out += std::to_string(f) + "-" + std::to_string(e);
                first = false;
            }
            out += '\n';
        }
        out += '\n';
    }
    return out;
}

}  // namespace divkit

#endif  // DIVKIT_CORPUS_IO_HPP
