#pragma once

#include <iosfwd>
#include <string>

#include "vra/model.hpp"
#include "vra/vpa.hpp"

namespace vra {

/// JSON interchange (schema in docs/format.md). Loading validates the value
/// and throws ParseError / ValidationError; saving emits the canonical form:
/// sorted keys, sorted name lists, two-space indent, trailing newline.
Vra load_vra(std::istream& in);
Vra load_vra_file(const std::string& path);
Vra parse_vra(const std::string& text);
std::string save_vra(const Vra& v);

Vpa load_vpa(std::istream& in);
Vpa load_vpa_file(const std::string& path);
Vpa parse_vpa(const std::string& text);
std::string save_vpa(const Vpa& p);

/// Graphviz rendering: one cluster per module FA, double circles for finals,
/// parallel edges merged into comma-joined labels. Deterministic output.
std::string export_dot(const Vra& v);
std::string export_dot(const Vpa& p);

/// Parses a whitespace-separated word against the alphabet; throws
/// UnknownSymbolError for letters outside it.
Word parse_word(const std::string& text, const PushdownAlphabet& a);

}  // namespace vra
