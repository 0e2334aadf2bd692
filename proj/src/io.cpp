#include "blf/io.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace blf {

namespace {

std::ofstream open_out(const std::filesystem::path& path)
{
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    return out;
}

std::ifstream open_in(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    return in;
}

std::string trim(const std::string& s)
{
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& line)
{
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) out.push_back(trim(field));
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

bool parse_double(const std::string& s, double& value)
{
    if (s.empty()) return false;
    if (s == "inf" || s == "+inf") {
        value = std::numeric_limits<double>::infinity();
        return true;
    }
    if (s == "-inf") {
        value = -std::numeric_limits<double>::infinity();
        return true;
    }
    char* end = nullptr;
    errno = 0;
    value = std::strtod(s.c_str(), &end);
    return end == s.c_str() + s.size() && errno != ERANGE;
}

std::string malformed(const std::filesystem::path& path, std::size_t row, const std::string& what)
{
    return path.string() + ": row " + std::to_string(row) + ": " + what;
}

void write_row(std::ostream& out, const std::string& lead, std::span<const double> values)
{
    out << lead;
    for (double v : values) out << ',' << format_double(v);
    out << '\n';
}

}  // namespace

std::string format_double(double v)
{
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

std::vector<double> read_series(const std::filesystem::path& path)
{
    std::ifstream in = open_in(path);
    std::vector<double> x;
    std::string line;
    std::size_t row = 0;
    bool first_content = true;
    while (std::getline(in, line)) {
        ++row;
        if (trim(line).empty()) continue;
        const auto fields = split(line);
        double v = 0.0;
        if (!parse_double(fields.front(), v)) {
            if (first_content) {
                first_content = false;
                continue;
            }
            throw std::runtime_error(malformed(path, row, "cannot parse '" + fields.front() + "' as a number"));
        }
        if (!std::isfinite(v)) throw std::runtime_error(malformed(path, row, "non-finite value"));
        first_content = false;
        x.push_back(v);
    }
    if (x.empty()) throw std::runtime_error(path.string() + ": no numeric rows");
    return x;
}

void write_series(const std::filesystem::path& path, std::span<const double> x)
{
    std::ofstream out = open_out(path);
    out << "x\n";
    for (double v : x) out << format_double(v) << '\n';
}

Table read_table(const std::filesystem::path& path)
{
    std::ifstream in = open_in(path);
    Table table;
    std::string line;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        ++row;
        if (trim(line).empty()) continue;
        auto fields = split(line);
        if (table.header.empty()) {
            table.header = std::move(fields);
            continue;
        }
        if (fields.size() != table.header.size())
            throw std::runtime_error(malformed(path, row, "expected " + std::to_string(table.header.size()) +
                                                              " fields, found " + std::to_string(fields.size())));
        std::vector<double> values(fields.size());
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (fields[i].empty()) {
                values[i] = std::numeric_limits<double>::quiet_NaN();
            } else if (!parse_double(fields[i], values[i])) {
                throw std::runtime_error(malformed(path, row, "cannot parse '" + fields[i] + "'"));
            }
        }
        table.rows.push_back(std::move(values));
    }
    return table;
}

void write_table(const std::filesystem::path& path, const Table& table)
{
    std::ofstream out = open_out(path);
    for (std::size_t i = 0; i < table.header.size(); ++i) out << (i ? "," : "") << table.header[i];
    out << '\n';
    for (const auto& r : table.rows) {
        for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << format_double(r[i]);
        out << '\n';
    }
}

void write_truth(const std::filesystem::path& path, const SimulatedProcess& p)
{
    std::ofstream out = open_out(path);
    const Eigen::Index order = p.true_coeffs.cols();
    const bool angles = p.root_angles.rows() == p.true_coeffs.rows() && p.root_angles.cols() > 0;
    out << 't';
    for (Eigen::Index m = 1; m <= order; ++m) out << ",a" << m;
    out << ",sigma2";
    if (angles)
        for (Eigen::Index k = 1; k <= p.root_angles.cols(); ++k) out << ",theta" << k;
    out << '\n';
    std::vector<double> row;
    for (Eigen::Index t = 0; t < p.true_coeffs.rows(); ++t) {
        row.clear();
        for (Eigen::Index m = 0; m < order; ++m) row.push_back(p.true_coeffs(t, m));
        row.push_back(p.true_sigma2[static_cast<std::size_t>(t)]);
        if (angles)
            for (Eigen::Index k = 0; k < p.root_angles.cols(); ++k) row.push_back(p.root_angles(t, k));
        write_row(out, std::to_string(t + 1), row);
    }
}

void write_log_grid(const std::filesystem::path& path, std::span<const int> times,
                    std::span<const double> freqs, const Grid& log_values)
{
    if (static_cast<std::size_t>(log_values.rows()) != times.size() ||
        static_cast<std::size_t>(log_values.cols()) != freqs.size())
        throw std::invalid_argument("write_log_grid: grid shape does not match axes");
    std::ofstream out = open_out(path);
    write_row(out, "t", freqs);
    std::vector<double> row(freqs.size());
    for (std::size_t t = 0; t < times.size(); ++t) {
        for (std::size_t l = 0; l < freqs.size(); ++l)
            row[l] = log_values(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(l));
        write_row(out, std::to_string(times[t]), row);
    }
}

void write_spectrogram(const std::filesystem::path& path, const Spectrogram& sp)
{
    write_log_grid(path, sp.times, sp.freqs, sp.values.array().log().matrix());
}

LogGrid read_log_grid(const std::filesystem::path& path)
{
    const Table table = read_table(path);
    if (table.header.size() < 2 || table.header.front() != "t")
        throw std::runtime_error(path.string() + ": expected a 't' header followed by frequencies");
    LogGrid g;
    for (std::size_t i = 1; i < table.header.size(); ++i) {
        double f = 0.0;
        if (!parse_double(table.header[i], f))
            throw std::runtime_error(malformed(path, 1, "bad frequency '" + table.header[i] + "'"));
        g.freqs.push_back(f);
    }
    g.values.resize(static_cast<Eigen::Index>(table.rows.size()), static_cast<Eigen::Index>(g.freqs.size()));
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        g.times.push_back(static_cast<int>(table.rows[r][0]));
        for (std::size_t l = 0; l < g.freqs.size(); ++l)
            g.values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(l)) = table.rows[r][l + 1];
    }
    return g;
}

void write_coefficients(const std::filesystem::path& path, const TvarFit& fit)
{
    std::ofstream out = open_out(path);
    out << 't';
    for (int m = 1; m <= fit.order; ++m) out << ",a" << m;
    out << '\n';
    std::vector<double> row(static_cast<std::size_t>(fit.order));
    for (Eigen::Index t = 0; t < fit.coeffs.rows(); ++t) {
        for (int m = 0; m < fit.order; ++m) row[static_cast<std::size_t>(m)] = fit.coeffs(t, m);
        write_row(out, std::to_string(t + 1), row);
    }
}

void write_variance(const std::filesystem::path& path, const TvarFit& fit)
{
    std::ofstream out = open_out(path);
    out << "t,sigma2\n";
    for (std::size_t t = 0; t < fit.sigma2.size(); ++t)
        out << t + 1 << ',' << format_double(fit.sigma2[t]) << '\n';
}

void write_scree(const std::filesystem::path& path, const std::vector<ScreeRow>& rows)
{
    std::ofstream out = open_out(path);
    out << "m,loglik,percent_change\n";
    for (const auto& r : rows) {
        out << r.m << ',' << format_double(r.loglik) << ',';
        if (r.percent_change) out << format_double(*r.percent_change);
        out << '\n';
    }
}

KeyValues report_entries(const SelectionReport& report)
{
    KeyValues kv;
    kv.emplace_back("method", to_string(report.method));
    kv.emplace_back("chosen_order", std::to_string(report.chosen_order));
    kv.emplace_back("saturated", report.saturated ? "true" : "false");
    kv.emplace_back("tau", format_double(report.tau));
    kv.emplace_back("stages", std::to_string(report.scree.size()));
    kv.emplace_back("T", std::to_string(report.run.x.size()));
    kv.emplace_back("prior.mean", format_double(report.run.prior.mean));
    kv.emplace_back("prior.scale", format_double(report.run.prior.scale));
    kv.emplace_back("prior.dof", format_double(report.run.prior.dof));
    kv.emplace_back("prior.kappa", format_double(report.run.prior.kappa));
    for (std::size_t i = 0; i < report.per_stage_discounts.size(); ++i) {
        const std::string key = "stage." + std::to_string(i + 1);
        kv.emplace_back(key + ".gamma", format_double(report.per_stage_discounts[i].gamma));
        kv.emplace_back(key + ".delta", format_double(report.per_stage_discounts[i].delta));
        kv.emplace_back(key + ".loglik", format_double(report.scree[i]));
        if (i < report.filtered_scree.size())
            kv.emplace_back(key + ".filtered_loglik", format_double(report.filtered_scree[i]));
    }
    return kv;
}

void write_key_values(const std::filesystem::path& path, const KeyValues& kv)
{
    std::ofstream out = open_out(path);
    for (const auto& [k, v] : kv) out << k << " = " << v << '\n';
}

std::map<std::string, std::string> read_key_values(const std::filesystem::path& path)
{
    std::ifstream in = open_in(path);
    std::map<std::string, std::string> kv;
    std::string line;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        ++row;
        const std::string t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos) throw std::runtime_error(malformed(path, row, "expected 'key = value'"));
        kv[trim(t.substr(0, eq))] = trim(t.substr(eq + 1));
    }
    return kv;
}

}  // namespace blf
