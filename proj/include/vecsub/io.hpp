#pragma once

#include <iosfwd>
#include <string>
#include <variant>

#include "vecsub/filter.hpp"
#include "vecsub/grid.hpp"

namespace vecsub {

/// A filter with either scalar backend, as read from disk.
using AnyFilter = std::variant<MatrixFilter<Rat>, MatrixFilter<CD>>;

/// Text filter format:
///   format vecsub-filter 1
///   d <d>
///   rows <r>
///   cols <s>
///   scalar rational|complex
///   support <lo_1> <hi_1> ... <lo_d> <hi_d>
///   entry <k_1> ... <k_d>
///   <r rows of s whitespace-separated values>
///   ...
/// Rationals are written "p/q" (canonical) or "p"; complex values "re",
/// "re+imi" or "re-imi". Rational round-trips are bit exact.
void write_filter(std::ostream& os, const MatrixFilter<Rat>& f);
void write_filter(std::ostream& os, const MatrixFilter<CD>& f);
void write_filter_file(const std::string& path, const MatrixFilter<Rat>& f);
void write_filter_file(const std::string& path, const MatrixFilter<CD>& f);

AnyFilter read_filter(std::istream& is, const std::string& name = "<stream>");
AnyFilter read_filter_file(const std::string& path);

/// Rational filter or error (complex files rejected with a parse error).
MatrixFilter<Rat> read_rational_filter_file(const std::string& path);

/// Grid CSV: '#'-prefixed header block (level, m, r, box, optional beta and
/// interpretation), then "k...,x...,value..." rows.
void write_grid_csv(std::ostream& os, const Grid<CD>& g,
                    const std::string& beta = "", const std::string& interpretation = "");
void write_grid_csv_file(const std::string& path, const Grid<CD>& g,
                         const std::string& beta = "", const std::string& interpretation = "");

/// Raw binary grid: text magic line, then int64 header fields
/// {level, m, d, r, lo..., hi...}, then float64 data (point-major,
/// r per point).
void write_grid_binary_file(const std::string& path, const Grid<CD>& g);

/// Parse helpers shared with the CLI.
Rat parse_rational(const std::string& tok);
CD parse_complex(const std::string& tok);
Ix parse_multiindex(const std::string& text, int d);       // "(1,0)" or "1,0"
std::vector<Ix> parse_multiindex_list(const std::string& text, int d);  // "(0,0);(1,0)"
std::string format_complex(const CD& z);

}  // namespace vecsub
