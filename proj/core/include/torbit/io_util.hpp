#pragma once

#include <optional>
#include <string>

#include <gmpxx.h>

#include "torbit/figures.hpp"

namespace torbit::io {

// Fixed 6-decimal formatting with '.' decimal point, independent of locale.
std::string format_real(double v);

// format_real, or the empty string for absent values (empty CSV cell).
std::string format_opt(const std::optional<double>& v);

// Real decimal length log10(|v|) of a nonzero integer; 0.0 for |v| <= 1.
double digits10(const mpz_class& v);

// Write content to path via a temporary file in the same directory plus
// rename, so readers never observe a partial file.
void atomic_write(const std::string& path, const std::string& content);

// Self-contained SVG scatter of a figure dataset: points (marker classes
// rendered distinctly), horizontal reference lines with labels, axes.
// The first line is a version comment; everything else is deterministic.
std::string svg_scatter(const FigureDataset& ds, const std::string& title);

}  // namespace torbit::io
