#include "hrcp/lp_export.hpp"

#include <fstream>
#include <ostream>
#include <stdexcept>

#include "hrcp/format.hpp"

namespace hrcp {

namespace {

// " + c name" / " - c name" with the magnitude in shortest round-trip form.
void put_term(std::ostream& out, double coef, const std::string& name) {
    if (coef < 0.0)
        out << " - " << format_double(-coef) << ' ' << name;
    else
        out << " + " << format_double(coef) << ' ' << name;
}

std::string z(int i, int c) { return "z_" + std::to_string(i) + '_' + std::to_string(c); }
std::string l(int t, int c) { return "l_" + std::to_string(t) + '_' + std::to_string(c); }
std::string r(int t, int c) { return "r_" + std::to_string(t) + '_' + std::to_string(c); }

}  // namespace

void export_compact_model(const Instance& instance, int p, std::ostream& out) {
    if (p < 1) throw std::invalid_argument("p must be at least 1");
    const int n = instance.n, d = instance.d;

    out << "\\ hyper-rectangular clustering, compact model: n=" << n << " d=" << d << " p=" << p << '\n';
    out << "Minimize\n obj:";
    for (int c = 1; c <= p; ++c)
        for (int t = 1; t <= d; ++t) {
            out << (c == 1 && t == 1 ? " " : " + ") << r(t, c) << " - " << l(t, c);
        }
    out << '\n';

    out << "Subject To\n";
    for (int i = 1; i <= n; ++i) {
        out << " assign_" << i << ':';
        for (int c = 1; c <= p; ++c) out << (c == 1 ? " " : " + ") << z(i, c);
        out << " = 1\n";
    }
    // l_tc + (max_t - x_it) z_ic <= max_t
    for (int i = 1; i <= n; ++i)
        for (int c = 1; c <= p; ++c)
            for (int t = 1; t <= d; ++t) {
                const double x = instance.coord(i - 1, t - 1);
                out << " lo_" << i << '_' << c << '_' << t << ": " << l(t, c);
                put_term(out, instance.hi[t - 1] - x, z(i, c));
                out << " <= " << format_double(instance.hi[t - 1]) << '\n';
            }
    // r_tc + (min_t - x_it) z_ic >= min_t
    for (int i = 1; i <= n; ++i)
        for (int c = 1; c <= p; ++c)
            for (int t = 1; t <= d; ++t) {
                const double x = instance.coord(i - 1, t - 1);
                out << " hi_" << i << '_' << c << '_' << t << ": " << r(t, c);
                put_term(out, instance.lo[t - 1] - x, z(i, c));
                out << " >= " << format_double(instance.lo[t - 1]) << '\n';
            }
    for (int c = 1; c <= p; ++c)
        for (int t = 1; t <= d; ++t)
            out << " cross_" << c << '_' << t << ": " << l(t, c) << " - " << r(t, c) << " <= 0\n";

    out << "Bounds\n";
    for (int c = 1; c <= p; ++c)
        for (int t = 1; t <= d; ++t) {
            out << ' ' << format_double(instance.lo[t - 1]) << " <= " << l(t, c) << " <= "
                << format_double(instance.hi[t - 1]) << '\n';
            out << ' ' << format_double(instance.lo[t - 1]) << " <= " << r(t, c) << " <= "
                << format_double(instance.hi[t - 1]) << '\n';
        }

    out << "Binary\n";
    for (int i = 1; i <= n; ++i)
        for (int c = 1; c <= p; ++c) out << ' ' << z(i, c) << '\n';
    out << "End\n";
}

void export_compact_model(const Instance& instance, int p, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    export_compact_model(instance, p, out);
}

}  // namespace hrcp
