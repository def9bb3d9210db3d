#pragma once

// JSON file formats.
//
//   ring       {"coeffs":"QQ","vars":["x","y"],"order":"degrevlex"} or {"coeffs":"ZZ"}
//   matrix     {"rows":r,"cols":c,"entries":[["poly",...],...]}   (row-major)
//   submodule  {"rank":q,"generators":[["poly",...],...]}        (or a bare list of generators)
//   vector     ["poly",...]
//
// A module file is a matrix file holding the relation matrix: one row per
// generator, one column per relation.  Integer literals are accepted wherever
// a polynomial string is.

#include <optional>
#include <stdexcept>
#include <string>

#include "json.hpp"

#include "hacert/homology.hpp"

namespace hacert::io {

using Json = nlohmann::json;

/// Error in an input file: `file:line: message (near 'token')`.
class InputError : public std::runtime_error {
public:
    InputError(std::string file, std::size_t line, std::string token, const std::string& message);
    const std::string& file() const noexcept { return file_; }
    std::size_t line() const noexcept { return line_; }
    const std::string& token() const noexcept { return token_; }

private:
    std::string file_;
    std::size_t line_;
    std::string token_;
};

/// Parsed document plus the raw text, kept for locating diagnostics.
struct Source {
    std::string path;
    std::string text;
    Json value;

    /// 1-based line of the first occurrence of needle, or 1.
    std::size_t line_of(const std::string& needle) const;
    [[noreturn]] void fail(const std::string& token, const std::string& message) const;
};

Source load(const std::string& path);
Source from_string(std::string text, std::string name = "<input>");

RingPtr parse_ring(const Source& src, const Json& node);
RingPtr parse_ring(const Source& src);
Polynomial parse_polynomial(const Source& src, const Json& node, const RingPtr& ring);
FreeVector parse_vector(const Source& src, const Json& node, const RingPtr& ring);
PolyMatrix parse_matrix(const Source& src, const Json& node, const RingPtr& ring);
/// Generators as columns.  `rank` is needed for a bare list and checked otherwise.
PolyMatrix parse_submodule(const Source& src, const Json& node, const RingPtr& ring,
                           std::optional<std::size_t> rank = std::nullopt);
FPModule parse_module(const Source& src, const Json& node, const RingPtr& ring);

Json to_json(const RingPtr& ring);
Json to_json(const Polynomial& p);
Json to_json(const FreeVector& v);
Json to_json(const PolyMatrix& m);
Json submodule_json(const PolyMatrix& generators);
Json submodule_json(const Submodule& s);
/// The relation matrix.
Json module_json(const FPModule& m);
/// Integer, or the string "infinite".
Json grade_json(const GradeValue& g);

/// Sorted keys, two-space indent, trailing newline.
std::string dump(const Json& j);

}  // namespace hacert::io
