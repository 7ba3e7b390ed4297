#include "torbit/io_util.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace torbit::io {

std::string format_real(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed, 6);
    if (res.ec != std::errc())
        throw std::runtime_error("format_real: value does not fit the buffer");
    return std::string(buf, res.ptr);
}

std::string format_opt(const std::optional<double>& v) {
    return v ? format_real(*v) : std::string();
}

double digits10(const mpz_class& v) {
    mpz_class av = abs(v);
    if (av <= 1) return 0.0;
    signed long e2 = 0;
    double mant = mpz_get_d_2exp(&e2, av.get_mpz_t());
    return (std::log(mant) + static_cast<double>(e2) * std::log(2.0)) / std::log(10.0);
}

void atomic_write(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("atomic_write: cannot open " + tmp);
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) {
            std::remove(tmp.c_str());
            throw std::runtime_error("atomic_write: write to " + tmp + " failed");
        }
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw std::runtime_error("atomic_write: rename to " + path + " failed");
    }
}

namespace {

std::string xml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string tick_label(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed, 3);
    if (res.ec != std::errc()) return "?";
    std::string s(buf, res.ptr);
    while (!s.empty() && s.back() == '0') s.pop_back();
    if (!s.empty() && s.back() == '.') s.pop_back();
    return s.empty() ? "0" : s;
}

}  // namespace

std::string svg_scatter(const FigureDataset& ds, const std::string& title) {
    const double width = 900, height = 600;
    const double x0 = 70, x1 = 870, y0 = 60, y1 = 545;  // plot rectangle

    double n_lo = 0, n_hi = 1, r_lo = 0, r_hi = 1;
    if (!ds.points.empty()) {
        n_lo = static_cast<double>(ds.points.front().n);
        n_hi = n_lo;
        r_lo = ds.points.front().ratio;
        r_hi = r_lo;
        for (const FigurePoint& p : ds.points) {
            n_lo = std::min(n_lo, static_cast<double>(p.n));
            n_hi = std::max(n_hi, static_cast<double>(p.n));
            r_lo = std::min(r_lo, p.ratio);
            r_hi = std::max(r_hi, p.ratio);
        }
    }
    for (const ReferenceLine& l : ds.reference_lines) {
        r_lo = std::min(r_lo, l.value);
        r_hi = std::max(r_hi, l.value);
    }
    if (n_hi <= n_lo) n_hi = n_lo + 1;
    double pad = 0.05 * (r_hi - r_lo);
    if (pad <= 0) pad = 0.5;
    r_lo -= pad;
    r_hi += pad;

    auto sx = [&](double n) { return x0 + (n - n_lo) / (n_hi - n_lo) * (x1 - x0); };
    auto sy = [&](double r) { return y1 - (r - r_lo) / (r_hi - r_lo) * (y1 - y0); };

    std::ostringstream svg;
    svg << "<!-- torbit figure v1 -->\n";
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
        << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " " << height
        << "\">\n";
    svg << "<rect width=\"" << width << "\" height=\"" << height
        << "\" fill=\"white\"/>\n";
    svg << "<text x=\"" << width / 2 << "\" y=\"28\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\" font-size=\"18\">"
        << xml_escape(title) << "</text>\n";
    if (!ds.notes.empty())
        svg << "<text x=\"" << width / 2 << "\" y=\"46\" text-anchor=\"middle\" "
               "font-family=\"sans-serif\" font-size=\"11\" fill=\"#555\">"
            << xml_escape(ds.notes) << "</text>\n";

    // axes
    svg << "<line x1=\"" << x0 << "\" y1=\"" << y1 << "\" x2=\"" << x1 << "\" y2=\""
        << y1 << "\" stroke=\"black\"/>\n";
    svg << "<line x1=\"" << x0 << "\" y1=\"" << y0 << "\" x2=\"" << x0 << "\" y2=\""
        << y1 << "\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 5; ++i) {
        double fn = n_lo + (n_hi - n_lo) * i / 5.0;
        double fx = sx(fn);
        svg << "<line x1=\"" << fx << "\" y1=\"" << y1 << "\" x2=\"" << fx
            << "\" y2=\"" << y1 + 5 << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << fx << "\" y=\"" << y1 + 20
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
               "font-size=\"11\">"
            << tick_label(fn) << "</text>\n";
        double fr = r_lo + (r_hi - r_lo) * i / 5.0;
        double fy = sy(fr);
        svg << "<line x1=\"" << x0 - 5 << "\" y1=\"" << fy << "\" x2=\"" << x0
            << "\" y2=\"" << fy << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << x0 - 8 << "\" y=\"" << fy + 4
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
            << tick_label(fr) << "</text>\n";
    }
    svg << "<text x=\"" << (x0 + x1) / 2 << "\" y=\"" << height - 8
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">n"
           "</text>\n";
    std::string ylabel = ds.denominator == "log_n" ? "Omega / log n"
                                                   : "Omega / log log |x y|";
    svg << "<text x=\"16\" y=\"" << (y0 + y1) / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
           "transform=\"rotate(-90 16 "
        << (y0 + y1) / 2 << ")\">" << xml_escape(ylabel) << "</text>\n";

    // reference lines
    for (const ReferenceLine& l : ds.reference_lines) {
        double fy = sy(l.value);
        svg << "<line x1=\"" << x0 << "\" y1=\"" << fy << "\" x2=\"" << x1
            << "\" y2=\"" << fy
            << "\" stroke=\"#444\" stroke-dasharray=\"6,4\"/>\n";
        svg << "<text x=\"" << x1 - 4 << "\" y=\"" << fy - 5
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\" "
               "fill=\"#444\">"
            << xml_escape(l.label) << " = " << format_real(l.value) << "</text>\n";
    }

    // points: even n as filled circles, odd n as open squares
    for (const FigurePoint& p : ds.points) {
        double fx = sx(static_cast<double>(p.n));
        double fy = sy(p.ratio);
        if (p.marker_class == "odd")
            svg << "<rect x=\"" << fx - 2.5 << "\" y=\"" << fy - 2.5
                << "\" width=\"5\" height=\"5\" fill=\"none\" stroke=\"#d62728\"/>\n";
        else
            svg << "<circle cx=\"" << fx << "\" cy=\"" << fy
                << "\" r=\"2.5\" fill=\"#1f77b4\"/>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace torbit::io
