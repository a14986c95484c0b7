#include "frogs/pointset_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace frogs {

namespace {

std::vector<std::string> split_ws(const std::string& line)
{
    std::istringstream is(line);
    std::vector<std::string> out;
    for (std::string tok; is >> tok;)
        out.push_back(tok);
    return out;
}

double to_double(const std::string& tok, int line_no)
{
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size())
        throw std::invalid_argument("line " + std::to_string(line_no) + ": bad coordinate '" + tok + "'");
    return v;
}

} // namespace

PointSet read_point_set(std::istream& in)
{
    std::string line;
    int line_no = 0;
    bool have_header = false;
    Region region;
    std::vector<Point> points;
    std::vector<Color> colors;
    bool any_color = false;

    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        auto tokens = split_ws(line);
        if (tokens.empty())
            continue;
        if (!have_header) {
            std::string kind = "box";
            double side = -1.0;
            int dim = -1;
            for (const auto& tok : tokens) {
                auto eq = tok.find('=');
                if (eq == std::string::npos)
                    throw std::invalid_argument("line " + std::to_string(line_no) + ": expected header key=value, got '" + tok + "'");
                auto key = tok.substr(0, eq);
                auto value = tok.substr(eq + 1);
                if (key == "dim")
                    dim = static_cast<int>(to_double(value, line_no));
                else if (key == "region")
                    kind = value;
                else if (key == "side")
                    side = to_double(value, line_no);
                else
                    throw std::invalid_argument("line " + std::to_string(line_no) + ": unknown header key '" + key + "'");
            }
            if (dim < 1 || side <= 0.0)
                throw std::invalid_argument("header needs dim=<d> region=<box|torus> side=<s>");
            if (kind == "box")
                region = Region::box(side, dim);
            else if (kind == "torus")
                region = Region::torus(side, dim);
            else
                throw std::invalid_argument("unknown region kind '" + kind + "'");
            have_header = true;
            continue;
        }
        Point p;
        Color c = Color::none;
        std::size_t ncoords = tokens.size();
        if (auto col = parse_color(tokens.back())) {
            c = *col;
            --ncoords;
            any_color = true;
        }
        for (std::size_t k = 0; k < ncoords; ++k)
            p.coords.push_back(to_double(tokens[k], line_no));
        points.push_back(std::move(p));
        colors.push_back(c);
    }
    if (!have_header)
        throw std::invalid_argument("missing header line");
    if (!any_color)
        colors.clear();
    return PointSet::validate(std::move(points), region, std::move(colors));
}

PointSet read_point_set_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    return read_point_set(in);
}

PointSet parse_point_set(const std::string& text)
{
    std::istringstream in(text);
    return read_point_set(in);
}

std::string format_decimal(double value)
{
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    if (ec != std::errc{})
        throw std::runtime_error("cannot format number");
    return std::string(buf, ptr);
}

void write_point_set(std::ostream& out, const PointSet& set)
{
    const auto& r = set.region();
    out << "dim=" << r.dim << " region=" << (r.kind == RegionKind::box ? "box" : "torus")
        << " side=" << format_decimal(r.side) << '\n';
    for (std::size_t i = 0; i < set.size(); ++i) {
        const auto& p = set.point(static_cast<int>(i));
        for (std::size_t k = 0; k < p.coords.size(); ++k)
            out << (k ? " " : "") << format_decimal(p.coords[k]);
        if (set.has_colors())
            out << ' ' << to_string(set.color(static_cast<int>(i)));
        out << '\n';
    }
}

std::string point_set_to_string(const PointSet& set)
{
    std::ostringstream os;
    write_point_set(os, set);
    return os.str();
}

} // namespace frogs
