#include "hacert/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace hacert::io {

InputError::InputError(std::string file, std::size_t line, std::string token, const std::string& message)
    : std::runtime_error(file + ":" + std::to_string(line) + ": " + message +
                         (token.empty() ? std::string() : " (near '" + token + "')")),
      file_(std::move(file)),
      line_(line),
      token_(std::move(token)) {}

std::size_t Source::line_of(const std::string& needle) const {
    const auto at = needle.empty() ? std::string::npos : text.find(needle);
    if (at == std::string::npos) return 1;
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<long>(at), '\n'));
}

void Source::fail(const std::string& token, const std::string& message) const {
    throw InputError(path, line_of(token), token, message);
}

namespace {

std::size_t line_at(const std::string& text, std::size_t byte) {
    byte = std::min(byte, text.size());
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<long>(byte), '\n'));
}

std::string token_at(const std::string& text, std::size_t byte) {
    if (byte >= text.size()) return "<end of file>";
    std::size_t b = byte;
    while (b > 0 && !std::isspace(static_cast<unsigned char>(text[b - 1])) && text[b - 1] != ',' && text[b - 1] != ':')
        --b;
    std::size_t e = byte;
    while (e < text.size() && !std::isspace(static_cast<unsigned char>(text[e])) && text[e] != ',') ++e;
    return text.substr(b, std::max<std::size_t>(e - b, 1));
}

// Quoted rendering used to find a value in the raw text.
std::string needle(const Json& node) { return node.is_string() ? "\"" + node.get<std::string>() + "\"" : node.dump(); }

const Json& field(const Source& src, const Json& node, const std::string& key) {
    if (!node.is_object()) src.fail(needle(node), "expected an object with key \"" + key + "\"");
    auto it = node.find(key);
    if (it == node.end()) src.fail("", "missing key \"" + key + "\"");
    return *it;
}

std::size_t size_field(const Source& src, const Json& node, const std::string& key) {
    const Json& v = field(src, node, key);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
        src.fail("\"" + key + "\"", "\"" + key + "\" must be a nonnegative integer");
    return v.get<std::size_t>();
}

const Json& array_node(const Source& src, const Json& node, const std::string& what) {
    if (!node.is_array()) src.fail(needle(node), what + " must be a list");
    return node;
}

}  // namespace

Source from_string(std::string text, std::string name) {
    Source src{std::move(name), std::move(text), {}};
    try {
        src.value = Json::parse(src.text);
    } catch (const Json::parse_error& e) {
        const std::size_t byte = e.byte > 0 ? e.byte - 1 : 0;
        throw InputError(src.path, line_at(src.text, byte), token_at(src.text, byte), "malformed JSON");
    }
    return src;
}

Source load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError(path, 0, "", "cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_string(buf.str(), path);
}

RingPtr parse_ring(const Source& src, const Json& node) {
    const Json& coeffs = field(src, node, "coeffs");
    if (coeffs == "ZZ") return RingDescriptor::integers();
    if (coeffs != "QQ") src.fail(needle(coeffs), "coeffs must be \"QQ\" or \"ZZ\"");
    std::vector<std::string> vars;
    for (const Json& v : array_node(src, field(src, node, "vars"), "vars")) {
        if (!v.is_string()) src.fail(needle(v), "variable names must be strings");
        const auto name = v.get<std::string>();
        const bool ok = !name.empty() && std::isalpha(static_cast<unsigned char>(name[0])) &&
                        std::all_of(name.begin(), name.end(), [](char c) {
                            return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
                        });
        if (!ok) src.fail(needle(v), "invalid variable name");
        if (std::find(vars.begin(), vars.end(), name) != vars.end()) src.fail(needle(v), "duplicate variable");
        vars.push_back(name);
    }
    MonomialOrder order = MonomialOrder::Degrevlex;
    if (auto it = node.find("order"); it != node.end()) {
        if (*it == "lex") order = MonomialOrder::Lex;
        else if (*it != "degrevlex") src.fail(needle(*it), "order must be \"degrevlex\" or \"lex\"");
    }
    return RingDescriptor::polynomial(std::move(vars), order);
}

RingPtr parse_ring(const Source& src) { return parse_ring(src, src.value); }

Polynomial parse_polynomial(const Source& src, const Json& node, const RingPtr& ring) {
    std::string text;
    if (node.is_string()) text = node.get<std::string>();
    else if (node.is_number_integer()) text = node.dump();
    else src.fail(needle(node), "expected a polynomial string");
    try {
        return Polynomial::parse(text, ring);
    } catch (const ParseError& e) {
        throw InputError(src.path, src.line_of(needle(node)), e.token().empty() ? text : e.token(),
                         "bad polynomial \"" + text + "\" at position " + std::to_string(e.position()));
    }
}

FreeVector parse_vector(const Source& src, const Json& node, const RingPtr& ring) {
    FreeVector v;
    for (const Json& e : array_node(src, node, "vector")) v.push_back(parse_polynomial(src, e, ring));
    return v;
}

PolyMatrix parse_matrix(const Source& src, const Json& node, const RingPtr& ring) {
    const std::size_t r = size_field(src, node, "rows");
    const std::size_t c = size_field(src, node, "cols");
    const Json& entries = array_node(src, field(src, node, "entries"), "entries");
    if (entries.size() != r) src.fail("\"entries\"", "entries has " + std::to_string(entries.size()) + " rows, expected " + std::to_string(r));
    PolyMatrix m(ring, r, c);
    for (std::size_t i = 0; i < r; ++i) {
        const Json& row = array_node(src, entries[i], "matrix row");
        if (row.size() != c)
            src.fail(row.dump(), "row " + std::to_string(i) + " has " + std::to_string(row.size()) + " entries, expected " + std::to_string(c));
        for (std::size_t j = 0; j < c; ++j) m.at(i, j) = parse_polynomial(src, row[j], ring);
    }
    return m;
}

PolyMatrix parse_submodule(const Source& src, const Json& node, const RingPtr& ring, std::optional<std::size_t> rank) {
    const Json* gens = &node;
    if (node.is_object()) {
        const std::size_t q = size_field(src, node, "rank");
        if (rank && *rank != q) src.fail("\"rank\"", "rank " + std::to_string(q) + " does not match q = " + std::to_string(*rank));
        rank = q;
        gens = &field(src, node, "generators");
    }
    array_node(src, *gens, "generators");
    if (!rank) {
        if (gens->empty()) src.fail("", "empty generator list needs a rank");
        rank = array_node(src, (*gens)[0], "generator").size();
    }
    std::vector<FreeVector> cols;
    for (const Json& g : *gens) {
        FreeVector v = parse_vector(src, g, ring);
        if (v.size() != *rank) src.fail(g.dump(), "generator has " + std::to_string(v.size()) + " entries, expected " + std::to_string(*rank));
        cols.push_back(std::move(v));
    }
    return PolyMatrix::from_columns(ring, *rank, cols);
}

FPModule parse_module(const Source& src, const Json& node, const RingPtr& ring) {
    const PolyMatrix rel = parse_matrix(src, node, ring);
    return FPModule::present(rel, rel.rows());
}

Json to_json(const RingPtr& ring) {
    if (ring->is_integers()) return Json{{"coeffs", "ZZ"}};
    return Json{{"coeffs", "QQ"},
                {"vars", ring->variables()},
                {"order", ring->order() == MonomialOrder::Lex ? "lex" : "degrevlex"}};
}

Json to_json(const Polynomial& p) { return p.to_string(); }

Json to_json(const FreeVector& v) {
    Json out = Json::array();
    for (const auto& p : v) out.push_back(to_json(p));
    return out;
}

Json to_json(const PolyMatrix& m) {
    Json entries = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) entries.push_back(to_json(m.row(i)));
    return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

Json submodule_json(const PolyMatrix& generators) {
    Json gens = Json::array();
    for (const auto& c : generators.columns()) gens.push_back(to_json(c));
    return Json{{"rank", generators.rows()}, {"generators", gens}};
}

Json submodule_json(const Submodule& s) { return submodule_json(s.matrix()); }

Json module_json(const FPModule& m) { return to_json(m.relations()); }

Json grade_json(const GradeValue& g) { return g.is_infinite() ? Json("infinite") : Json(g.value()); }

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace hacert::io
